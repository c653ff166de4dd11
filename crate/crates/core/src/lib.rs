//! Phase-space complexity of spin-j quantum states and channels.
//!
//! States are represented in the Dicke basis `|j, mu>`, `mu = -j, ..., j`,
//! ground state first. The Husimi function `Q(Omega) = <Omega|rho|Omega>` over
//! spin coherent states feeds two integrals on the sphere, the Wehrl entropy
//! `S_W` and the Fisher information `I`, which combine into the complexity
//! `C = exp(S_W - 2j/(2j+1)) * I / (2j)`.

pub mod algebra;
pub mod channel;
pub mod channel_power;
pub mod closed_form;
pub mod complexity;
pub mod conjecture;
pub mod error;
pub mod factory;
pub mod linalg;
pub mod majorana;
pub mod max_wehrl;
pub mod optimize;
pub mod phase_space;
pub mod quadrature;
pub mod reference;
pub mod spin;
pub mod state;

pub use channel::QuantumChannel;
pub use channel_power::{ChannelComplexityReport, SqueezeAxis};
pub use complexity::{GridMeta, PhaseSpaceReport};
pub use error::{Error, Result};
pub use factory::RandomSeed;
pub use max_wehrl::MaxWehrlResult;
pub use optimize::OptimizationConfig;
pub use quadrature::{GridSize, SphereGrid};
pub use spin::{BlochPoint, HalfInt, SpinJ};
pub use state::{DensityMatrix, StateVector};
