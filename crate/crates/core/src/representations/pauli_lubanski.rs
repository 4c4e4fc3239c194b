use num_complex::Complex64;

use crate::kinematics::FourMomentum;
use crate::linalg::{re, CMat, I};
use crate::spin_algebra::{spin_set, Spin};

/// Pauli–Lubanski vector `W_μ(p) = (Λ_p)_μ^ν W_ν(0)` with `W(0) = M S`.
#[derive(Debug, Clone)]
pub struct PauliLubanski {
    pub spin: Spin,
    pub p: FourMomentum,
    /// `W_0 = S·p`.
    pub w0: CMat,
    /// `W = M S + p (S·p)/(p0 + M)`.
    pub w3: [CMat; 3],
}

pub fn pauli_lubanski(spin: Spin, p: &FourMomentum) -> PauliLubanski {
    let s = spin_set(spin);
    let m = p.mass();
    let sp = s.dot(p.p3());
    let along = &sp / re(p.energy() + m);
    let p3 = p.p3();
    let w3 = [0, 1, 2].map(|i| &s.j[i] * re(m) + &along * re(p3[i]));
    PauliLubanski {
        spin,
        p: *p,
        w0: sp,
        w3,
    }
}

impl PauliLubanski {
    /// Contravariant Minkowski components `(W^0, W^1, W^2, W^3)`.
    pub fn components(&self) -> [CMat; 4] {
        [
            self.w0.clone(),
            self.w3[0].clone(),
            self.w3[1].clone(),
            self.w3[2].clone(),
        ]
    }

    /// Euclidean components `(W1, W2, W3, W4 = i W0)`.
    pub fn euclidean(&self) -> [CMat; 4] {
        [
            self.w3[0].clone(),
            self.w3[1].clone(),
            self.w3[2].clone(),
            &self.w0 * I,
        ]
    }

    /// Minkowski contraction `a^μ W_μ = a0 W0 − a·W` for real `a`.
    pub fn contract(&self, a: &[f64; 4]) -> CMat {
        &self.w0 * re(a[0]) - &self.w3[0] * re(a[1]) - &self.w3[1] * re(a[2]) - &self.w3[2] * re(a[3])
    }

    /// Euclidean contraction `Σ_μ a_μ W_μ`.
    pub fn contract_euclidean(&self, a: &[Complex64; 4]) -> CMat {
        self.euclidean()
            .iter()
            .zip(a)
            .map(|(w, x)| w * *x)
            .fold(CMat::zeros(self.spin.dim(), self.spin.dim()), |acc, t| acc + t)
    }

    /// `W^μ W_μ` as a matrix.
    pub fn square(&self) -> CMat {
        &self.w0 * &self.w0 - self.w3.iter().map(|w| w * w).fold(CMat::zeros(self.spin.dim(), self.spin.dim()), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs, max_abs_diff, Vec3};
    use crate::spin_algebra::pauli;

    #[test]
    fn rest_frame_half() {
        let m = 1.7;
        let w = pauli_lubanski(Spin::Half, &FourMomentum::at_rest(m).unwrap());
        assert!(max_abs(&w.w0) < 1e-15);
        let s = pauli();
        for i in 0..3 {
            assert!(max_abs_diff(&w.w3[i], &(&s[i] * re(m / 2.0))) < 1e-15);
        }
    }

    #[test]
    fn transversality_and_square() {
        let p = FourMomentum::on_shell(1.0, Vec3::new(0.3, 1.4, -0.8)).unwrap();
        for (spin, jj) in [(Spin::Half, 0.75), (Spin::One, 2.0)] {
            let w = pauli_lubanski(spin, &p);
            assert!(max_abs(&w.contract(&p.components())) < 1e-13);
            assert!(max_abs_diff(&w.square(), &(identity(spin.dim()) * re(-jj))) < 1e-13);
        }
    }

    #[test]
    fn euclidean_contraction_is_minus_minkowski() {
        let p = FourMomentum::on_shell(1.3, Vec3::new(-0.5, 0.2, 0.9)).unwrap();
        let k = FourMomentum::on_shell(1.3, Vec3::new(0.7, 0.1, -0.4)).unwrap();
        let w = pauli_lubanski(Spin::One, &p);
        let ke = crate::spin_algebra::euclidean_vector(&k);
        assert!(max_abs_diff(&w.contract_euclidean(&ke), &(-w.contract(&k.components()))) < 1e-14);
    }
}
