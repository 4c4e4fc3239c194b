//! The spin-1 interaction vertex and one-particle currents with the Wigner
//! rotations separated out (spin indices referred to the momentum `p`).
//!
//! Currents carry one contravariant Minkowski index `μ = 0..3`; each
//! component is a matrix on the `(2j+1)`-dimensional spin space.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::kinematics::{half_transfer, lob_diff, FourMomentum};
use crate::linalg::{commutator, identity, re, CMat};
use crate::representations::pauli_lubanski;
use crate::spin_algebra::{euclidean_vector, gamma6_set, pauli, spin_set, Spin};
use crate::{Error, Result};

/// Coupling constants and the exchanged-boson mass. Missing fields
/// deserialize to the [`Default`] values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CouplingSet {
    pub e: f64,
    /// Magnetic-dipole parameter `λ`.
    pub lambda: f64,
    /// Electric-quadrupole parameter `κ`.
    pub kappa: f64,
    pub g_v: f64,
    pub f_v: f64,
    #[serde(rename = "g_S")]
    pub g_scalar: f64,
    #[serde(rename = "g_V")]
    pub g_vector: f64,
    #[serde(rename = "g_T")]
    pub g_tensor: f64,
    /// Exchanged-boson mass `μ ≥ 0`.
    pub mu: f64,
}

impl Default for CouplingSet {
    fn default() -> Self {
        Self {
            e: 1.0,
            lambda: 0.0,
            kappa: 0.0,
            g_v: 1.0,
            f_v: 0.0,
            g_scalar: 1.0,
            g_vector: 1.0,
            g_tensor: 1.0,
            mu: 0.0,
        }
    }
}

impl CouplingSet {
    /// Every coupling (fermion `g_v`, boson `g_S = g_V = g_T`) set to `g`.
    pub fn uniform(g: f64, mu: f64) -> Self {
        Self {
            g_v: g,
            g_scalar: g,
            g_vector: g,
            g_tensor: g,
            mu,
            ..Self::default()
        }
    }

    /// `g_M = g_v + f_v`.
    pub fn g_m(&self) -> f64 {
        self.g_v + self.f_v
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.e,
            self.lambda,
            self.kappa,
            self.g_v,
            self.f_v,
            self.g_scalar,
            self.g_vector,
            self.g_tensor,
            self.mu,
        ];
        if !all.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidCouplings("non-finite coupling".into()));
        }
        if self.mu < 0.0 {
            return Err(Error::InvalidCouplings(format!("mu = {} < 0", self.mu)));
        }
        Ok(())
    }
}

/// One Lorentz index worth of spin matrices per component.
#[derive(Debug, Clone)]
pub struct CurrentVector {
    pub spin: Spin,
    pub components: [CMat; 4],
}

impl CurrentVector {
    fn zeros(spin: Spin) -> Self {
        let n = spin.dim();
        Self {
            spin,
            components: std::array::from_fn(|_| CMat::zeros(n, n)),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            spin: self.spin,
            components: self.components.clone().map(|c| c * re(s)),
        }
    }

    pub fn add(&self, other: &CurrentVector) -> Self {
        Self {
            spin: self.spin,
            components: std::array::from_fn(|mu| &self.components[mu] + &other.components[mu]),
        }
    }
}

fn plus(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| a[i] + b[i])
}

fn minus(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| a[i] - b[i])
}

/// Spin-1 vertex with the vector potential, one 6x6 matrix per Euclidean
/// index `α`:
///
/// `−e Γ_{αβ}(p+k)_β − (ieλ/6) γ_{5,αβ} q_β + (eκ/6M²) γ_{6,αβ,μν} q_β q_μ (p+k)_ν`
///
/// with `Γ = γ + δ` and `q = k − p`, all indices contracted Euclidean.
pub fn vertex6(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<[CMat; 4]> {
    lob_diff(k, p)?;
    let g = gamma6_set();
    let (pe, ke) = (euclidean_vector(p), euclidean_vector(k));
    let sum: [Complex64; 4] = std::array::from_fn(|i| pe[i] + ke[i]);
    let q: [Complex64; 4] = std::array::from_fn(|i| ke[i] - pe[i]);
    let m2 = p.mass() * p.mass();

    let term1 = re(-c.e);
    let term2 = Complex64::new(0.0, -c.e * c.lambda / 6.0);
    let term3 = re(c.e * c.kappa / (6.0 * m2));
    Ok(std::array::from_fn(|a| {
        let mut v = CMat::zeros(6, 6);
        for b in 0..4 {
            v += g.big_gamma(a, b) * (term1 * sum[b]);
            v += &g.gamma5[a][b] * (term2 * q[b]);
            if c.kappa != 0.0 {
                for m in 0..4 {
                    for n in 0..4 {
                        v += g.gamma6(a, b, m, n) * (term3 * q[b] * q[m] * sum[n]);
                    }
                }
            }
        }
        v
    }))
}

/// Spin-1/2 current with the Wigner rotations separated out:
///
/// `j_μ = (1/m) { 2 g_v æ0 p_μ + f_v æ0 q_μ + 4 g_M W_μ(p)(σ·æ) }`.
pub fn fermion_current(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<CurrentVector> {
    let h = half_transfer(&lob_diff(k, p)?);
    let m = p.mass();
    let sigma_ae = crate::linalg::dot_ops(&pauli(), &h.ae3);
    let w = pauli_lubanski(Spin::Half, p).components();
    let pc = p.components();
    let q = minus(&k.components(), &pc);
    let one = identity(2);
    Ok(CurrentVector {
        spin: Spin::Half,
        components: std::array::from_fn(|mu| {
            (&one * re(2.0 * c.g_v * h.ae0 * pc[mu] + c.f_v * h.ae0 * q[mu])
                + &w[mu] * &sigma_ae * re(4.0 * c.g_m()))
                / re(m)
        }),
    })
}

/// `W_μ(p)(Σ·Δ) − (Σ·Δ)W_μ(p)` for each `μ`, with `W` built from the spin
/// matrices `S` and `Σ` the matrices contracted with `Δ`.
fn w_commutator(spin: Spin, p: &FourMomentum, sigma_delta: &CMat) -> [CMat; 4] {
    pauli_lubanski(spin, p)
        .components()
        .map(|w| commutator(&w, sigma_delta))
}

/// Sachs-form spin-1/2 current:
///
/// `j_μ = −(e m/æ0) { g_E (p+k)_μ + g_M [W_μ(p)(σ·Δ) − (σ·Δ)W_μ(p)] / m }`.
///
/// `g_e`, `g_m` are the form factors already evaluated at this transfer.
pub fn fermion_current_sachs(
    p: &FourMomentum,
    k: &FourMomentum,
    e: f64,
    g_e: f64,
    g_m: f64,
) -> Result<CurrentVector> {
    let d = lob_diff(k, p)?;
    let h = half_transfer(&d);
    let m = p.mass();
    let sd = crate::linalg::dot_ops(&pauli(), &d.delta3);
    let comm = w_commutator(Spin::Half, p, &sd);
    let sum = plus(&p.components(), &k.components());
    let pre = re(-e * m / h.ae0);
    Ok(CurrentVector {
        spin: Spin::Half,
        components: std::array::from_fn(|mu| {
            (identity(2) * re(g_e * sum[mu]) + &comm[mu] * re(g_m / m)) * pre
        }),
    })
}

/// The three pieces of the spin-1 current, without couplings or the
/// overall minus sign:
///
/// * S: `(p+k)_μ (1 + (J·Δ)²/(M(Δ0+M)))`
/// * V: `(p+k)_μ + [W_μ(p)(J·Δ) − (J·Δ)W_μ(p)]/M`
/// * T: `−(p+k)_μ (J·Δ)²/(M(Δ0+M)) + [W_μ(p)(J·Δ) − (J·Δ)W_μ(p)]/M`
pub fn boson_current_pieces(p: &FourMomentum, k: &FourMomentum) -> Result<[CurrentVector; 3]> {
    let d = lob_diff(k, p)?;
    let m = p.mass();
    let jd = spin_set(Spin::One).dot(&d.delta3);
    let quad = &jd * &jd / re(m * (d.delta0 + m));
    let comm = w_commutator(Spin::One, p, &jd);
    let sum = plus(&p.components(), &k.components());
    let one = identity(3);

    let mut s = CurrentVector::zeros(Spin::One);
    let mut v = CurrentVector::zeros(Spin::One);
    let mut t = CurrentVector::zeros(Spin::One);
    for mu in 0..4 {
        s.components[mu] = (&one + &quad) * re(sum[mu]);
        v.components[mu] = &one * re(sum[mu]) + &comm[mu] / re(m);
        t.components[mu] = -(&quad * re(sum[mu])) + &comm[mu] / re(m);
    }
    Ok([s, v, t])
}

/// Spin-1 current `−g_S S − g_V V − g_T T`.
pub fn boson_current(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<CurrentVector> {
    let [s, v, t] = boson_current_pieces(p, k)?;
    Ok(s.scaled(-c.g_scalar)
        .add(&v.scaled(-c.g_vector))
        .add(&t.scaled(-c.g_tensor)))
}

/// Least-squares coefficients `(c1, c2)` of a current in the two structures
/// `(p+k)_μ·1` and `W_μ(p)(Σ·Δ) − (Σ·Δ)W_μ(p)`, plus the relative residual.
/// `Σ` is `σ` for spin 1/2 and `J` for spin 1.
pub fn project_current(
    current: &CurrentVector,
    p: &FourMomentum,
    k: &FourMomentum,
) -> Result<(Complex64, Complex64, f64)> {
    let spin = current.spin;
    let d = lob_diff(k, p)?;
    let sd = crate::linalg::dot_ops(&crate::spin_algebra::amplitude_spin_matrices(spin), &d.delta3);
    let comm = w_commutator(spin, p, &sd);
    let sum = plus(&p.components(), &k.components());
    let one = identity(spin.dim());
    let b1: Vec<CMat> = (0..4).map(|mu| &one * re(sum[mu])).collect();
    let b2: Vec<CMat> = comm.to_vec();
    let target: Vec<CMat> = current.components.to_vec();

    let inner = |a: &[CMat], b: &[CMat]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| crate::linalg::frobenius_inner(x, y)).sum()
    };
    let gram = nalgebra::Matrix2::new(inner(&b1, &b1), inner(&b1, &b2), inner(&b2, &b1), inner(&b2, &b2));
    let rhs = nalgebra::Vector2::new(inner(&b1, &target), inner(&b2, &target));
    let norm_t = inner(&target, &target).re.sqrt();
    // b2 vanishes at Δ = 0
    let coeffs = if inner(&b2, &b2).re <= 1e-24 * inner(&b1, &b1).re {
        nalgebra::Vector2::new(rhs[0] / gram[(0, 0)], Complex64::new(0.0, 0.0))
    } else {
        gram.lu().solve(&rhs).ok_or_else(|| Error::InvalidCouplings("singular projection".into()))?
    };
    let resid: Vec<CMat> = (0..4)
        .map(|mu| &target[mu] - &b1[mu] * coeffs[0] - &b2[mu] * coeffs[1])
        .collect();
    let r = inner(&resid, &resid).re.sqrt();
    Ok((coeffs[0], coeffs[1], if norm_t > 0.0 { r / norm_t } else { r }))
}
