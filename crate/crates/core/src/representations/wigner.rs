use serde::Serialize;

use super::boost::boost;
use super::pauli_lubanski::pauli_lubanski;
use crate::kinematics::{boost_to_rest_frame, lob_diff, FourMomentum};
use crate::linalg::{identity, max_abs, max_abs_diff, re, unitarity_defect, CMat, Vec3, I};
use crate::spin_algebra::{euclidean_vector, spin_set, Spin};
use crate::{Error, Result};

/// Block-diagonality threshold for the factorized boost product.
const BLOCK_TOL: f64 = 1e-8;

/// The spin-`j` image `D^j{V⁻¹(Λ_p, k)}` of a Wigner rotation.
#[derive(Debug, Clone, Serialize)]
pub struct WignerRotation {
    pub spin: Spin,
    pub matrix: CMat,
}

impl WignerRotation {
    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }

    pub fn determinant_defect(&self) -> f64 {
        (self.matrix.determinant() - re(1.0)).norm()
    }

    /// Axis and angle `θ ∈ [0, π]` with `matrix = exp(−iθ n·S)`. The axis is
    /// the zero vector for the identity.
    pub fn axis_angle(&self) -> (Vec3, f64) {
        let s = spin_set(self.spin);
        // Tr(S_i U) is −i sin(θ/2) n_i for j = 1/2 and −2i sin θ n_i for j = 1.
        let norm = match self.spin {
            Spin::Half => 1.0,
            Spin::One => 2.0,
        };
        let v = Vec3::from_fn(|i, _| (I * (&s.j[i] * &self.matrix).trace()).re / norm);
        let tr = self.matrix.trace().re;
        let (mut angle, mut axis) = match self.spin {
            Spin::Half => (2.0 * v.norm().atan2(tr / 2.0), v),
            Spin::One => (v.norm().atan2((tr - 1.0) / 2.0), v),
        };
        if angle > std::f64::consts::PI {
            angle = 2.0 * std::f64::consts::PI - angle;
            axis = -axis;
        }
        let n = axis.norm();
        (if n > 0.0 { axis / n } else { Vec3::zeros() }, angle)
    }
}

/// Wigner rotation from the factorization `S_p⁻¹ S_k = S_{k(−)p} · 1⊗D`,
/// for any pair of masses: `frame` defines `Λ_p`, `k` the boosted vector.
pub fn wigner_rotation(frame: &FourMomentum, k: &FourMomentum, spin: Spin) -> Result<WignerRotation> {
    let delta = boost_to_rest_frame(frame, k);
    let s_frame = boost(spin, frame).chiral();
    let s_k = boost(spin, k).chiral();
    let s_delta = boost(spin, &delta).chiral();
    let inv = |m: CMat| m.try_inverse().ok_or(Error::ConventionMismatch(f64::INFINITY));
    let product = inv(s_delta)? * inv(s_frame)? * s_k;

    let n = spin.dim();
    let top = product.view((0, 0), (n, n)).into_owned();
    let bottom = product.view((n, n), (n, n)).into_owned();
    let residual = max_abs(&product.view((0, n), (n, n)).into_owned())
        .max(max_abs(&product.view((n, 0), (n, n)).into_owned()))
        .max(max_abs_diff(&top, &bottom));
    if residual > BLOCK_TOL {
        return Err(Error::ConventionMismatch(residual));
    }
    Ok(WignerRotation { spin, matrix: top })
}

/// Equal-mass Wigner rotation `D^j{V⁻¹(Λ_p, k)}` from boost composition.
pub fn wigner_oracle(p: &FourMomentum, k: &FourMomentum, spin: Spin) -> Result<WignerRotation> {
    lob_diff(k, p)?;
    wigner_rotation(p, k, spin)
}

fn eq23(p: &FourMomentum, k: &FourMomentum, orientation: f64) -> Result<WignerRotation> {
    let d = lob_diff(k, p)?;
    let m = p.mass();
    let (p0, k0) = (p.energy(), k.energy());
    let cross = p.p3().cross(k.p3());
    let a = (p0 + m) * (k0 + m) - k.p3().dot(p.p3());
    let jc = spin_set(Spin::One).dot(&cross);
    let body = identity(3) * re(cross.norm_squared() + a * a) + &jc * (I * (2.0 * a * orientation))
        - &jc * &jc * re(2.0);
    let denom = 2.0 * m * (p0 + m) * (k0 + m) * (d.delta0 + m);
    Ok(WignerRotation {
        spin: Spin::One,
        matrix: body / re(denom),
    })
}

/// Closed-form spin-1 Wigner rotation.
///
/// The linear `{J·[p×k]}` term enters with `−2i`, which is the orientation
/// of the boost-factorization block (and the one satisfying the
/// Pauli–Lubanski intertwining relations). The `+2i` form is its adjoint.
pub fn wigner_closed(p: &FourMomentum, k: &FourMomentum) -> Result<WignerRotation> {
    eq23(p, k, -1.0)
}

#[cfg(test)]
pub(crate) fn wigner_closed_as_printed(p: &FourMomentum, k: &FourMomentum) -> Result<WignerRotation> {
    eq23(p, k, 1.0)
}

/// Largest entrywise residual of
/// `W_μ(p) D = D [W_μ(k) + (p_μ + k_μ) p_ν W_ν(k) / (M(Δ0 + M))]` and
/// `k_μ W_μ(p) D = −D p_μ W_μ(k)`, Euclidean contractions throughout.
pub fn intertwine_residual(p: &FourMomentum, k: &FourMomentum, spin: Spin) -> Result<f64> {
    let d = lob_diff(k, p)?;
    let m = p.mass();
    let rot = wigner_oracle(p, k, spin)?.matrix;
    let wp = pauli_lubanski(spin, p);
    let wk = pauli_lubanski(spin, k);
    let pe = euclidean_vector(p);
    let ke = euclidean_vector(k);

    let p_wk = wk.contract_euclidean(&pe);
    let k_wp = wp.contract_euclidean(&ke);
    let wp_e = wp.euclidean();
    let wk_e = wk.euclidean();
    let scale = m * (d.delta0 + m);

    let mut residual: f64 = 0.0;
    for mu in 0..4 {
        let lhs = &wp_e[mu] * &rot;
        let rhs = &rot * (&wk_e[mu] + &p_wk * ((pe[mu] + ke[mu]) / scale));
        residual = residual.max(max_abs_diff(&lhs, &rhs));
    }
    let lhs = &k_wp * &rot;
    let rhs = -(&rot * &p_wk);
    Ok(residual.max(max_abs_diff(&lhs, &rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(m: f64, x: f64, y: f64, z: f64) -> FourMomentum {
        FourMomentum::on_shell(m, Vec3::new(x, y, z)).unwrap()
    }

    #[test]
    fn identity_at_equal_momenta() {
        let p = fm(1.3, 0.4, -0.2, 1.1);
        let w = wigner_closed(&p, &p).unwrap();
        assert!(max_abs_diff(&w.matrix, &identity(3)) < 1e-14);
        for spin in [Spin::Half, Spin::One] {
            let o = wigner_oracle(&p, &p, spin).unwrap();
            assert!(max_abs_diff(&o.matrix, &identity(spin.dim())) < 1e-13);
        }
    }

    #[test]
    fn collinear_is_identity() {
        let p = fm(1.0, 0.2, 0.4, -0.6);
        let k = fm(1.0, -0.5, -1.0, 1.5);
        assert!(max_abs_diff(&wigner_closed(&p, &k).unwrap().matrix, &identity(3)) < 1e-13);
        let o = wigner_oracle(&p, &k, Spin::One).unwrap();
        assert!(max_abs_diff(&o.matrix, &identity(3)) < 1e-12);
    }

    #[test]
    fn closed_form_matches_oracle() {
        let p = fm(1.3, 0.8, -0.3, 0.5);
        let k = fm(1.3, -0.6, 1.2, 0.9);
        let closed = wigner_closed(&p, &k).unwrap();
        let oracle = wigner_oracle(&p, &k, Spin::One).unwrap();
        assert!(max_abs_diff(&closed.matrix, &oracle.matrix) < 1e-12);
        assert!(closed.unitarity_defect() < 1e-12 && closed.determinant_defect() < 1e-12);
    }

    #[test]
    fn printed_orientation_is_the_inverse() {
        let p = fm(1.3, 0.8, -0.3, 0.5);
        let k = fm(1.3, -0.6, 1.2, 0.9);
        let printed = wigner_closed_as_printed(&p, &k).unwrap();
        let oracle = wigner_oracle(&p, &k, Spin::One).unwrap();
        assert!(max_abs_diff(&printed.matrix, &oracle.matrix.adjoint()) < 1e-12);
        assert!(max_abs_diff(&printed.matrix, &oracle.matrix) > 1e-2);
    }

    #[test]
    fn intertwining_holds_and_rejects_adjoint() {
        let p = fm(0.9, 0.5, 0.7, -0.2);
        let k = fm(0.9, -1.0, 0.3, 0.6);
        for spin in [Spin::Half, Spin::One] {
            assert!(intertwine_residual(&p, &k, spin).unwrap() < 1e-12);
        }
    }

    #[test]
    fn axis_angle_of_known_rotation() {
        let axis = Vec3::new(1.0, 2.0, -2.0) / 3.0;
        let theta = 0.7;
        for spin in [Spin::Half, Spin::One] {
            let gen = spin_set(spin).dot(&axis) * (-I * theta);
            let w = WignerRotation {
                spin,
                matrix: gen.exp(),
            };
            let (n, a) = w.axis_angle();
            assert!((a - theta).abs() < 1e-12);
            assert!((n - axis).norm() < 1e-12);
        }
    }

    #[test]
    fn mass_mismatch_is_reported() {
        let p = fm(1.0, 0.1, 0.0, 0.0);
        let k = fm(2.0, 0.0, 0.1, 0.0);
        assert!(matches!(wigner_closed(&p, &k), Err(Error::MassMismatch(..))));
        assert!(wigner_oracle(&p, &k, Spin::Half).is_err());
    }
}
