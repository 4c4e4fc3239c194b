//! Invariants checked over arbitrary on-shell momenta.

use lobachevsky::amplitudes::{
    amplitude, decompose, fermion_coefficients, rotation_covariance_residual, substitution_compare, System,
};
use lobachevsky::currents::CouplingSet;
use lobachevsky::kinematics::{cms_pair, denominator_identity, half_transfer, lob_diff, sum_square};
use lobachevsky::linalg::max_abs_diff;
use lobachevsky::representations::{spinor_u, wigner_closed, wigner_oracle};
use lobachevsky::verify::{run_selected, VerifyOptions};
use lobachevsky::{FourMomentum, Spin, Vec3};
use proptest::prelude::*;

fn mass() -> impl Strategy<Value = f64> {
    0.5..2.0f64
}

fn three() -> impl Strategy<Value = [f64; 3]> {
    [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64]
}

fn on_shell(m: f64, v: [f64; 3]) -> FourMomentum {
    FourMomentum::on_shell(m, Vec3::new(v[0], v[1], v[2]) * m).unwrap()
}

/// c.m.s. momentum, cosine kept away from the forward and backward points.
fn scattering() -> impl Strategy<Value = (f64, f64, f64)> {
    (mass(), 0.1..2.0f64, -0.95..0.95f64)
}

proptest! {
    #[test]
    fn transfer_lies_on_the_hyperboloid(m in mass(), a in three(), b in three()) {
        let (p, k) = (on_shell(m, a), on_shell(m, b));
        let d = lob_diff(&k, &p).unwrap();
        let scale = d.delta0 * d.delta0;
        prop_assert!((d.delta0 * d.delta0 - d.norm_squared() - m * m).abs() <= 1e-12 * scale);
        let h = half_transfer(&d);
        prop_assert!((h.ae0 * h.ae0 - h.ae3.norm_squared() - m * m).abs() <= 1e-12 * scale);
        let s = sum_square(&p, &k).unwrap();
        prop_assert!((s - 2.0 * m * (d.delta0 + m)).abs() <= 1e-12 * s.max(p.energy() * k.energy()));
    }

    #[test]
    fn denominator_split(m in mass(), a in three(), b in three()) {
        let (p, k) = (on_shell(m, a), on_shell(m, b));
        let d = lob_diff(&k, &p).unwrap();
        prop_assume!(d.delta3.norm() > 0.05 * m);
        let (lhs, rhs) = denominator_identity(&d).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs);
    }

    #[test]
    fn closed_form_wigner_rotation_matches_boosts(m in mass(), a in three(), b in three()) {
        let (p, k) = (on_shell(m, a), on_shell(m, b));
        let oracle = wigner_oracle(&p, &k, Spin::One).unwrap();
        let closed = wigner_closed(&p, &k).unwrap();
        prop_assert!(max_abs_diff(&oracle.matrix, &closed.matrix) < 1e-10);
        prop_assert!(oracle.unitarity_defect() < 1e-10);
    }

    #[test]
    fn spinors_are_normalized(m in mass(), a in three()) {
        let p = on_shell(m, a);
        for s in [Spin::Half, Spin::One] {
            for sigma in s.projections() {
                let u = spinor_u(s, &p, sigma).unwrap();
                prop_assert!((u.gamma44_product(&u) - m).norm() <= 1e-10 * m);
            }
        }
    }

    #[test]
    fn decomposition_is_complete((m, pmag, c) in scattering(), g in 0.1..2.0f64, mu in 0.0..2.0f64) {
        let (p, k) = cms_pair(m, pmag, c).unwrap();
        let couplings = CouplingSet::uniform(g, mu);
        for system in [System::Ff, System::Bb] {
            let s = decompose(&amplitude(system, &p, &k, &couplings).unwrap()).unwrap();
            prop_assert!(s.residual < 1e-9, "{system}: residual {}", s.residual);
        }
        let projected = decompose(&amplitude(System::Ff, &p, &k, &couplings).unwrap()).unwrap();
        let closed = fermion_coefficients(&p, &k, &couplings).unwrap();
        for (x, y) in projected.as_array().iter().zip(closed.as_array()) {
            prop_assert!((x - y).norm() <= 1e-9 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn amplitudes_are_rotation_covariant(
        (m, pmag, c) in scattering(),
        axis in three(),
        angle in -3.0..3.0f64,
    ) {
        let axis = Vec3::new(axis[0], axis[1], axis[2]);
        prop_assume!(axis.norm() > 0.1);
        let (p, k) = cms_pair(m, pmag, c).unwrap();
        let couplings = CouplingSet::uniform(0.7, 0.4);
        for system in [System::Ff, System::Bb] {
            let r = rotation_covariance_residual(system, &p, &k, &couplings, &axis.normalize(), angle).unwrap();
            prop_assert!(r < 1e-9, "{system}: {r}");
        }
    }

    #[test]
    fn substituted_tensor_ratio_is_minus_one((m, pmag, c) in scattering(), g in 0.1..2.0f64) {
        let (p, k) = cms_pair(m, pmag, c).unwrap();
        let report = substitution_compare(&p, &k, &CouplingSet::uniform(g, 0.0)).unwrap();
        prop_assert!((report.tensor_ratio() + 1.0).norm() < 1e-9);
    }
}

#[test]
fn verify_is_reproducible() {
    let opts = VerifyOptions {
        seed: 17,
        trials: Some(20),
        tolerance: None,
    };
    let a = serde_json::to_string(&run_selected(&opts, None)).unwrap();
    let b = serde_json::to_string(&run_selected(&opts, None)).unwrap();
    assert_eq!(a, b);
    let other = serde_json::to_string(&run_selected(&VerifyOptions { seed: 18, ..opts }, None)).unwrap();
    assert_ne!(a, other);
}
