//! Closed-form Wehrl entropy, Fisher information, complexity, and purity for
//! qubits, Dicke states, thermal states, and the NOON Husimi function.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::binomial;
use crate::spin::{BlochPoint, HalfInt, SpinJ};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub wehrl: f64,
    pub fisher: f64,
    pub complexity: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalClosedForm {
    pub wehrl: f64,
    pub fisher: f64,
    pub complexity: f64,
    pub purity: f64,
}

/// `exp(S_W - 2j/(2j+1)) * I / (2j)`.
pub fn complexity_from_parts(j: SpinJ, wehrl: f64, fisher: f64) -> f64 {
    (wehrl - j.coherent_wehrl()).exp() * fisher / f64::from(j.twice_j())
}

/// Harmonic number `H_n`.
pub fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / f64::from(k)).sum()
}

/// Digamma at a positive integer: `psi(n) = H_{n-1} - gamma`.
pub fn digamma_int(n: u32) -> f64 {
    assert!(n >= 1, "digamma_int needs a positive integer");
    harmonic(n - 1) - EULER_GAMMA
}

/// Qubit `(I + r sigma_3)/2`, `r` the Bloch-vector length.
///
/// The direct formulas are 0/0 at `r = 0` and `0 * inf` at `r = 1`; for
/// `r <= 1/2` the exact power series
/// `S_W = ln 2 - sum r^{2k} / (2k(4k^2 - 1))`,
/// `I = sum 2 r^{2k} / ((2k-1)(2k+1))` are summed instead.
pub fn qubit_complexity_closed(r: f64) -> Result<ClosedForm> {
    if !(0.0..=1.0).contains(&r) {
        return domain(format!("Bloch radius r = {r} must lie in [0, 1]"));
    }
    let (wehrl, fisher) = if r == 1.0 {
        (0.5, 1.0)
    } else if r <= 0.5 {
        let r2 = r * r;
        let mut pow = 1.0;
        let (mut ds, mut fi) = (0.0, 0.0);
        for k in 1..200 {
            pow *= r2;
            if pow < 1e-18 {
                break;
            }
            let kf = f64::from(k);
            ds += pow / (2.0 * kf * (4.0 * kf * kf - 1.0));
            fi += 2.0 * pow / ((2.0 * kf - 1.0) * (2.0 * kf + 1.0));
        }
        (std::f64::consts::LN_2 - ds, fi)
    } else {
        let lp = r.ln_1p();
        let lm = (-r).ln_1p();
        let wehrl = 0.5 + std::f64::consts::LN_2 - (1.0 + r * r) / (4.0 * r) * lp - 0.5 * lp
            + (1.0 - r) * (1.0 - r) / (4.0 * r) * lm;
        let fisher = 1.0 - (1.0 - r * r) / (2.0 * r) * (lp - lm);
        (wehrl, fisher)
    };
    let j = SpinJ::from_twice(1)?;
    Ok(ClosedForm { wehrl, fisher, complexity: complexity_from_parts(j, wehrl, fisher) })
}

/// Qubit closed form as a function of purity `p = (1 + r^2)/2`.
pub fn qubit_complexity_from_purity(purity: f64) -> Result<ClosedForm> {
    if !(0.5 - 1e-12..=1.0 + 1e-12).contains(&purity) {
        return domain(format!("qubit purity {purity} must lie in [1/2, 1]"));
    }
    let r = (2.0 * purity - 1.0).clamp(0.0, 1.0).sqrt();
    qubit_complexity_closed(r)
}

/// Wehrl entropy of the Dicke state `|j, mu>` via digamma values at integers.
pub fn dicke_wehrl_closed(j: SpinJ, mu: HalfInt) -> Result<f64> {
    j.index_of(mu)?;
    let tj = j.twice_j() as i32;
    let a = ((tj - mu.twice()) / 2) as u32; // j - mu
    let b = ((tj + mu.twice()) / 2) as u32; // j + mu
    let ln_binom = (binomial(j.twice_j(), a) as f64).ln();
    Ok(-ln_binom - f64::from(a) * digamma_int(a + 1) - f64::from(b) * digamma_int(b + 1)
        + f64::from(j.twice_j()) * digamma_int(j.twice_j() + 2))
}

/// Thermal state `exp(-beta J3)/Z`.
///
/// The state at `-beta` is the rotation by `pi` of the state at `beta`, so all
/// four quantities are even in `beta` and are evaluated at `|beta|`.
pub fn thermal_closed(j: SpinJ, beta: f64) -> Result<ThermalClosedForm> {
    if !beta.is_finite() {
        return domain(format!("inverse temperature must be finite, got {beta}"));
    }
    let d = j.dim() as f64;
    let tj = f64::from(j.twice_j());
    let b = beta.abs();
    if b == 0.0 {
        return Ok(ThermalClosedForm { wehrl: d.ln(), fisher: 0.0, complexity: 0.0, purity: 1.0 / d });
    }
    // ln((1 - e^{-d b}) / (1 - e^{-b})) and b e^{-d b}/(1 - e^{-d b}) = b / (e^{d b} - 1)
    let log_ratio = (-(-d * b).exp_m1()).ln() - (-(-b).exp_m1()).ln();
    let tail = b / (d * b).exp_m1();
    let wehrl = log_ratio - tj * tail + j.coherent_wehrl();
    let fisher = if j.twice_j() == 1 {
        1.0 - 2.0 * b * (-b).exp() / (-(-2.0 * b).exp_m1())
    } else {
        let m = tj - 1.0;
        tj - tj * d / m * (-b).exp() * (-(-m * b).exp_m1()) / (-(-d * b).exp_m1())
    };
    let purity = (0.5 * b).tanh() / (0.5 * d * b).tanh();
    Ok(ThermalClosedForm { wehrl, fisher, complexity: complexity_from_parts(j, wehrl, fisher), purity })
}

/// `Q(Omega | NOON)`.
pub fn noon_husimi_closed(j: SpinJ, omega: BlochPoint) -> f64 {
    let tj = j.twice_j() as i32;
    let (s, c) = (0.5 * omega.theta).sin_cos();
    let c2j = c.powi(tj);
    let s2j = s.powi(tj);
    0.5 * (c2j * c2j + s2j * s2j + 2.0 * c2j * s2j * (f64::from(j.twice_j()) * omega.phi).cos())
}
