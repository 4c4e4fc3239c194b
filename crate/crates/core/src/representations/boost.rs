use crate::kinematics::FourMomentum;
use crate::linalg::{block_diag, identity, re, CMat};
use crate::spin_algebra::{pauli, spin_set, Spin};
use crate::linalg::dot_ops;

/// `α(p) = (p0 + M + σ·p) / sqrt(2M(p0 + M))`.
pub fn boost_half(p: &FourMomentum) -> CMat {
    half_boost(p, 1.0)
}

fn half_boost(p: &FourMomentum, sign: f64) -> CMat {
    let m = p.mass();
    let p0 = p.energy();
    let norm = (2.0 * m * (p0 + m)).sqrt();
    (identity(2) * re(p0 + m) + dot_ops(&pauli(), p.p3()) * re(sign)) / re(norm)
}

/// The pair `D^j(α(p))`, `D^j(α^{−1†}(p))` acting on the two chiral blocks.
#[derive(Debug, Clone)]
pub struct BoostMatrix {
    pub spin: Spin,
    pub p: FourMomentum,
    pub d_plus: CMat,
    pub d_minus: CMat,
}

impl BoostMatrix {
    /// `S_p = block-diag(D^j(α(p)), D^j(α^{−1†}(p)))`.
    pub fn chiral(&self) -> CMat {
        block_diag(&self.d_plus, &self.d_minus)
    }
}

/// `D^1(α(p)) = 1 ± (J·p)/M + (J·p)²/(M(p0 + M))`.
pub fn boost_spin1(p: &FourMomentum) -> BoostMatrix {
    let m = p.mass();
    let jp = spin_set(Spin::One).dot(p.p3());
    let quad = &jp * &jp / re(m * (p.energy() + m));
    let lin = &jp / re(m);
    BoostMatrix {
        spin: Spin::One,
        p: *p,
        d_plus: identity(3) + &lin + &quad,
        d_minus: identity(3) - &lin + &quad,
    }
}

pub fn boost(spin: Spin, p: &FourMomentum) -> BoostMatrix {
    match spin {
        Spin::Half => BoostMatrix {
            spin,
            p: *p,
            d_plus: half_boost(p, 1.0),
            // α is Hermitian, so α^{−1†} = α⁻¹ = α(−p).
            d_minus: half_boost(p, -1.0),
        },
        Spin::One => boost_spin1(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermiticity_defect, max_abs_diff, Vec3};

    fn fm(m: f64, x: f64, y: f64, z: f64) -> FourMomentum {
        FourMomentum::on_shell(m, Vec3::new(x, y, z)).unwrap()
    }

    #[test]
    fn rest_boosts_are_identity() {
        let p = FourMomentum::at_rest(2.0).unwrap();
        assert!(max_abs_diff(&boost_half(&p), &identity(2)) < 1e-15);
        for spin in [Spin::Half, Spin::One] {
            let b = boost(spin, &p);
            assert!(max_abs_diff(&b.d_plus, &identity(spin.dim())) < 1e-15);
            assert!(max_abs_diff(&b.d_minus, &identity(spin.dim())) < 1e-15);
        }
    }

    #[test]
    fn half_boost_eigenvalue_along_z() {
        let p = fm(1.0, 0.0, 0.0, 0.75);
        let a = boost_half(&p);
        // spin-up eigenvalue (p0 + M + |p|) / sqrt(2M(p0 + M)) = 3 / sqrt(4.5)
        assert!((a[(0, 0)].re - 3.0 / 4.5f64.sqrt()).abs() < 1e-15);
        assert!((a[(0, 0)].re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn half_boost_unimodular_hermitian() {
        let p = fm(0.8, 1.3, -0.4, 2.2);
        let a = boost_half(&p);
        assert!((a.determinant() - re(1.0)).norm() < 1e-12);
        assert!(hermiticity_defect(&a) < 1e-15);
    }

    #[test]
    fn spin1_boost_worked_value() {
        let b = boost_spin1(&fm(1.0, 0.0, 0.0, 0.75));
        // Jz = +1 eigenvector is the first basis vector.
        assert!((b.d_plus[(0, 0)].re - 2.0).abs() < 1e-15);
        assert!(b.d_plus[(1, 0)].norm() < 1e-15 && b.d_plus[(2, 0)].norm() < 1e-15);
    }

    #[test]
    fn chiral_blocks_are_mutually_inverse() {
        for spin in [Spin::Half, Spin::One] {
            let b = boost(spin, &fm(1.1, -0.7, 0.9, 0.4));
            assert!(max_abs_diff(&(&b.d_plus * &b.d_minus), &identity(spin.dim())) < 1e-12);
            assert!((b.d_plus.determinant() - re(1.0)).norm() < 1e-12);
            assert!(hermiticity_defect(&b.d_plus) < 1e-14);
            assert!(hermiticity_defect(&b.d_minus) < 1e-14);
            // positive definite: all eigenvalues of the Hermitian matrix > 0
            let eig = b.d_plus.clone().symmetric_eigenvalues();
            assert!(eig.iter().all(|&e| e > 0.0));
        }
    }
}
