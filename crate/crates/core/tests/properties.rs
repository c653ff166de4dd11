mod common;

use common::spin;
use proptest::prelude::*;
use spinphase::algebra::{coherent_state, displacement};
use spinphase::channel::amplitude_damping;
use spinphase::closed_form::{qubit_complexity_closed, thermal_closed};
use spinphase::complexity::{complexity, complexity_pure};
use spinphase::factory::{qubit_bloch, random_mixed, random_pure, thermal};
use spinphase::{BlochPoint, RandomSeed, SphereGrid};

fn twice_j() -> impl Strategy<Value = u32> {
    1u32..=6
}

fn bloch_point() -> impl Strategy<Value = BlochPoint> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| BlochPoint::new(t, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_states_are_valid(t in twice_j(), seed in any::<u64>()) {
        let j = spin(t);
        let rho = random_mixed(j, RandomSeed(seed));
        prop_assert!(rho.validate().is_ok());
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        prop_assert!(rho.min_eigenvalue().unwrap() > -1e-12);
        let psi = random_pure(j, RandomSeed(seed));
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_states_are_valid(t in twice_j(), beta in 0.0f64..8.0) {
        let rho = thermal(spin(t), beta).unwrap();
        prop_assert!(rho.validate().is_ok());
        let p = rho.purity();
        prop_assert!(p >= 1.0 / f64::from(t + 1) - 1e-12 && p <= 1.0 + 1e-12);
    }

    #[test]
    fn wehrl_and_fisher_bounds(t in twice_j(), seed in any::<u64>()) {
        let j = spin(t);
        let r = complexity(&random_mixed(j, RandomSeed(seed)), &SphereGrid::default_for(j)).unwrap();
        prop_assert!(r.wehrl >= j.coherent_wehrl() - 1e-9);
        prop_assert!(r.wehrl <= (f64::from(t) + 1.0).ln() + 1e-9);
        prop_assert!(r.fisher >= -1e-9 && r.fisher <= f64::from(t) + 1e-7);
        prop_assert!(r.complexity >= 0.0);
        prop_assert!((r.normalization - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pure_state_complexity_at_least_one(t in twice_j(), seed in any::<u64>()) {
        let j = spin(t);
        let r = complexity_pure(&random_pure(j, RandomSeed(seed)), &SphereGrid::default_for(j)).unwrap();
        prop_assert!(r.complexity >= 1.0 - 1e-7, "C = {}", r.complexity);
        prop_assert!((r.fisher - f64::from(t)).abs() < 1e-6 * f64::from(t));
    }

    #[test]
    fn complexity_is_displacement_invariant(t in 1u32..=4, seed in any::<u64>(), w in bloch_point()) {
        let j = spin(t);
        let grid = SphereGrid::default_for(j);
        let rho = random_mixed(j, RandomSeed(seed));
        let d = displacement(j, w).unwrap();
        let moved = rho.conjugate_by(d.entries()).unwrap();
        let a = complexity(&rho, &grid).unwrap().complexity;
        let b = complexity(&moved, &grid).unwrap().complexity;
        prop_assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }

    #[test]
    fn qubit_quadrature_matches_closed_form(r in 0.0f64..0.99, w in bloch_point()) {
        let v = w.to_cartesian();
        let rho = qubit_bloch([r * v[0], r * v[1], r * v[2]]).unwrap();
        let q = complexity(&rho, &SphereGrid::default_for(spin(1))).unwrap();
        let c = qubit_complexity_closed(r).unwrap();
        prop_assert!((q.wehrl - c.wehrl).abs() < 1e-7);
        prop_assert!((q.complexity - c.complexity).abs() < 1e-7);
    }

    #[test]
    fn qubit_complexity_increases_with_radius(r in 0.0f64..0.98, dr in 0.005f64..0.02) {
        let a = qubit_complexity_closed(r).unwrap().complexity;
        let b = qubit_complexity_closed(r + dr).unwrap().complexity;
        prop_assert!(b > a);
    }

    #[test]
    fn thermal_complexity_increases_with_beta(t in twice_j(), beta in 0.05f64..6.0, db in 0.05f64..0.5) {
        let j = spin(t);
        let a = thermal_closed(j, beta).unwrap().complexity;
        let b = thermal_closed(j, beta + db).unwrap().complexity;
        prop_assert!(b > a, "{a} vs {b}");
    }

    #[test]
    fn damping_output_is_azimuthally_symmetric(t in 1u32..=4, p in 0.0f64..=1.0, theta in 0.0f64..3.1, phi in 0.0f64..6.28) {
        let j = spin(t);
        let grid = SphereGrid::default_for(j);
        let ch = amplitude_damping(j, p).unwrap();
        let a = ch.output_complexity(BlochPoint::new(theta, 0.0), &grid).unwrap();
        let b = ch.output_complexity(BlochPoint::new(theta, phi), &grid).unwrap();
        prop_assert!((a.complexity - b.complexity).abs() < 1e-9);
        prop_assert!((a.purity - b.purity).abs() < 1e-12);
    }

    #[test]
    fn coherent_states_are_extremal(t in twice_j(), w in bloch_point()) {
        let j = spin(t);
        let r = complexity_pure(&coherent_state(j, w), &SphereGrid::default_for(j)).unwrap();
        prop_assert!((r.wehrl - j.coherent_wehrl()).abs() < 1e-9);
        prop_assert!((r.complexity - 1.0).abs() < 1e-8);
    }
}

// Hilbert-Schmidt qubits are uniform in the Bloch ball: E[r^2] = 3/5, so the
// mean purity (1 + r^2)/2 is 4/5, in line with 2d/(d^2 + 1).
#[test]
fn hilbert_schmidt_mean_qubit_purity() {
    let j = spin(1);
    let n = 10_000u64;
    let mean = (0..n).map(|i| random_mixed(j, RandomSeed(2024).for_sample(i)).purity()).sum::<f64>() / n as f64;
    assert!((mean - 0.8).abs() < 0.01, "mean purity {mean}");
}

#[test]
fn hilbert_schmidt_mean_purity_in_higher_dimensions() {
    for t in 2..=4u32 {
        let d = f64::from(t + 1);
        let n = 4_000u64;
        let mean = (0..n).map(|i| random_mixed(spin(t), RandomSeed(99).for_sample(i)).purity()).sum::<f64>() / n as f64;
        let expected = 2.0 * d / (d * d + 1.0);
        assert!((mean - expected).abs() < 0.01, "d={d}: {mean} vs {expected}");
    }
}
