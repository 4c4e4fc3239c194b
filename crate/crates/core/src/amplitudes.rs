//! Second-order exchange T-matrices in the centre-of-momentum frame, the
//! full matrix element with Wigner rotations restored, and the projection
//! onto the four spin structures shared by the fermion and boson results.
//!
//! Two-particle operators act on `V1 ⊗ V2` with particle 1 as the slow
//! index, so `Σ1 = Σ ⊗ 1` and `Σ2 = 1 ⊗ Σ`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::currents::CouplingSet;
use crate::kinematics::{
    boost_to_rest_frame, covariant_momentum, half_transfer, lob_diff, FourMomentum, LobachevskyDelta,
    TwoParticleSystem,
};
use crate::linalg::{dot_ops, frobenius_inner, frobenius_norm, identity, kron, re, CMat, Vec3, I};
use crate::representations::wigner_rotation;
use crate::spin_algebra::{amplitude_spin_matrices, spin_set, Spin};
use crate::{Error, Result};

/// `|p × u|` below this fraction of the momentum scale counts as collinear.
const COLLINEAR_TOL: f64 = 1e-9;

/// Relative tolerance of the elastic check in [`assemble_matrix_element`].
const ELASTIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Two spin-1/2 particles.
    Ff,
    /// Two spin-1 particles.
    Bb,
}

impl System {
    pub fn spin(self) -> Spin {
        match self {
            System::Ff => Spin::Half,
            System::Bb => Spin::One,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Ff => "ff",
            System::Bb => "bb",
        })
    }
}

impl std::str::FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ff" => Ok(System::Ff),
            "bb" => Ok(System::Bb),
            other => Err(Error::InvalidCouplings(format!("unknown system `{other}`"))),
        }
    }
}

/// A T-matrix on the two-particle spin space at one c.m.s. point.
#[derive(Debug, Clone)]
pub struct AmplitudeOperator {
    pub system: System,
    pub matrix: CMat,
    pub p: FourMomentum,
    pub k: FourMomentum,
    pub couplings: CouplingSet,
}

/// `Δ0 − m` computed as `Δ²/(Δ0 + m)`, which keeps its relative accuracy
/// near the forward point.
fn excess(d: &LobachevskyDelta) -> f64 {
    d.norm_squared() / (d.delta0 + d.mass)
}

fn pair_ops(spin: Spin) -> ([CMat; 3], [CMat; 3]) {
    let s = amplitude_spin_matrices(spin);
    let one = identity(spin.dim());
    (
        s.clone().map(|m| kron(&m, &one)),
        s.map(|m| kron(&one, &m)),
    )
}

/// Fermion–fermion T-matrix (4×4), with `æ` the half-transfer of `k(−)p`:
///
/// ```text
/// T = −g_v² 4m²/(μ²+4æ²) − 4g_v² [(σ1·æ)(σ2·æ) − (σ1·σ2)æ²]/(μ²+4æ²)
///     − (8g_v² p0 æ0/m²) i(σ1+σ2)·[p×æ]/(μ²+4æ²)
///     − 8g_v² [p0²æ0² + 2p0æ0(p·æ) − m⁴]/(m²(μ²+4æ²))
///     − 8g_v² (σ1·p)(σ1·æ)(σ2·p)(σ2·æ)/(m²(μ²+4æ²))
/// ```
pub fn fermion_amplitude(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<AmplitudeOperator> {
    c.validate()?;
    let d = lob_diff(k, p)?;
    let m = p.mass();
    let m2 = m * m;
    let p0 = p.energy();
    let p3 = p.p3();
    let ae0 = (m * (d.delta0 + m) / 2.0).sqrt();
    let ae = d.direction() * (m * excess(&d) / 2.0).sqrt();
    let ae2 = ae.norm_squared();
    let den = c.mu * c.mu + 4.0 * ae2;
    if c.mu == 0.0 && d.is_forward() {
        return Err(Error::ForwardSingularity("μ² + 4æ²"));
    }
    let g2 = c.g_v * c.g_v;

    let (s1, s2) = pair_ops(Spin::Half);
    let one = identity(4);
    let s1a = dot_ops(&s1, &ae);
    let s2a = dot_ops(&s2, &ae);
    let s1s2 = (0..3).fold(CMat::zeros(4, 4), |acc, i| acc + &s1[i] * &s2[i]);
    let pxa = p3.cross(&ae);
    let so = (dot_ops(&s1, &pxa) + dot_ops(&s2, &pxa)) * I;
    let quartic = dot_ops(&s1, p3) * &s1a * dot_ops(&s2, p3) * &s2a;

    let t1 = &one * re(-g2 * 4.0 * m2 / den);
    let t2 = (&s1a * &s2a - &s1s2 * re(ae2)) * re(-4.0 * g2 / den);
    let t3 = so * re(-8.0 * g2 * p0 * ae0 / (m2 * den));
    let t4 = &one * re(-8.0 * g2 * (p0 * p0 * ae0 * ae0 + 2.0 * p0 * ae0 * p3.dot(&ae) - m2 * m2) / (m2 * den));
    let t5 = quartic * re(-8.0 * g2 / (m2 * den));
    Ok(AmplitudeOperator {
        system: System::Ff,
        matrix: t1 + t2 + t3 + t4 + t5,
        p: *p,
        k: *k,
        couplings: *c,
    })
}

/// Boson–boson T-matrix (9×9) for `g = g_S = g_V = g_T`:
///
/// ```text
/// T = g² { ([p0(Δ0+M) + p·Δ]² − M³(Δ0+M))/(M³(Δ0−M))
///        + i(J1+J2)·[p×Δ]/(Δ0−M) · [p0(Δ0+M) + p·Δ]/M³
///        + [(J1·Δ)(J2·Δ) − (J1·J2)Δ²]/(2M(Δ0−M))
///        − (J1·[p×Δ])(J2·[p×Δ]) / (M³(Δ0−M)²) }
/// ```
pub fn boson_amplitude(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<AmplitudeOperator> {
    c.validate()?;
    if c.g_scalar != c.g_vector || c.g_vector != c.g_tensor {
        return Err(Error::InvalidCouplings(format!(
            "boson amplitude needs g_S = g_V = g_T, got {}, {}, {}",
            c.g_scalar, c.g_vector, c.g_tensor
        )));
    }
    let d = lob_diff(k, p)?;
    if d.is_forward() {
        return Err(Error::ForwardSingularity("Δ0 − M"));
    }
    let m = p.mass();
    let m3 = m * m * m;
    let p0 = p.energy();
    let p3 = p.p3();
    let dm = excess(&d);
    let g2 = c.g_scalar * c.g_scalar;
    let delta = &d.delta3;
    let lead = p0 * (d.delta0 + m) + p3.dot(delta);

    let (j1, j2) = pair_ops(Spin::One);
    let one = identity(9);
    let j1d = dot_ops(&j1, delta);
    let j2d = dot_ops(&j2, delta);
    let j1j2 = (0..3).fold(CMat::zeros(9, 9), |acc, i| acc + &j1[i] * &j2[i]);
    let pxd = p3.cross(delta);
    let j1x = dot_ops(&j1, &pxd);
    let j2x = dot_ops(&j2, &pxd);

    let t1 = &one * re((lead * lead - m3 * (d.delta0 + m)) / (m3 * dm));
    let t2 = (&j1x + &j2x) * (I * (lead / (m3 * dm)));
    let t3 = (&j1d * &j2d - &j1j2 * re(d.norm_squared())) / re(2.0 * m * dm);
    let t4 = &j1x * &j2x * re(-1.0 / (m3 * dm * dm));
    Ok(AmplitudeOperator {
        system: System::Bb,
        matrix: (t1 + t2 + t3 + t4) * re(g2),
        p: *p,
        k: *k,
        couplings: *c,
    })
}

/// The exchange channel with `k → −k`.
pub fn crossed_boson_amplitude(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<AmplitudeOperator> {
    boson_amplitude(p, &k.reflected(), c)
}

/// Direct plus crossed boson amplitude. The operator carries the direct
/// kinematics, so [`decompose`] projects it on the direct-channel basis.
pub fn full_boson_amplitude(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<AmplitudeOperator> {
    let mut direct = boson_amplitude(p, k, c)?;
    let crossed = crossed_boson_amplitude(p, k, c)?;
    direct.matrix += crossed.matrix;
    Ok(direct)
}

pub fn amplitude(system: System, p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<AmplitudeOperator> {
    match system {
        System::Ff => fermion_amplitude(p, k, c),
        System::Bb => boson_amplitude(p, k, c),
    }
}

/// Full matrix element between external two-particle states:
///
/// `(D†{V⁻¹(Λ_𝒫,p1)} ⊗ D†{V⁻¹(Λ_𝒫,p2)}) · T(p̌1, ǩ1) ·
///  (D{V⁻¹(Λ_p̌1,ǩ1)} D{V⁻¹(Λ_𝒫,k1)} ⊗ D{V⁻¹(Λ_p̌2,ǩ2)} D{V⁻¹(Λ_𝒫,k2)})`
///
/// where `p̌ = Λ_𝒫⁻¹ p` are the covariant momenta.
pub fn assemble_matrix_element(
    sys: &TwoParticleSystem,
    k1: &FourMomentum,
    k2: &FourMomentum,
    c: &CouplingSet,
    system: System,
) -> Result<CMat> {
    let out0 = k1.energy() + k2.energy();
    let out3 = k1.p3() + k2.p3();
    let mismatch = (out0 - sys.total.p0).abs().max((out3 - sys.total.p3).amax());
    if mismatch > ELASTIC_TOL * sys.total.p0 {
        return Err(Error::KinematicsMismatch(mismatch));
    }
    if (k1.mass() - sys.p1.mass()).abs() > 1e-12 * sys.p1.mass() {
        return Err(Error::MassMismatch(sys.p1.mass(), k1.mass()));
    }

    let spin = system.spin();
    let frame = sys.total.as_four_momentum();
    let cp1 = covariant_momentum(sys, &sys.p1)?;
    let cp2 = covariant_momentum(sys, &sys.p2)?;
    let ck1 = covariant_momentum(sys, k1)?;
    let ck2 = covariant_momentum(sys, k2)?;

    let t = amplitude(system, &cp1, &ck1, c)?.matrix;
    let w = |a: &FourMomentum, b: &FourMomentum| wigner_rotation(a, b, spin).map(|r| r.matrix);
    let left = kron(&w(&frame, &sys.p1)?.adjoint(), &w(&frame, &sys.p2)?.adjoint());
    let right = kron(
        &(w(&cp1, &ck1)? * w(&frame, k1)?),
        &(w(&cp2, &ck2)? * w(&frame, k2)?),
    );
    Ok(left * t * right)
}

/// Coefficients of `T` in the basis
/// `{1⊗1, (Σ1·u)(Σ2·u) − Σ1·Σ2, i(Σ1+Σ2)·[p×u], (Σ1·[p×u])(Σ2·[p×u])}`
/// with `u = n_Δ`, plus the relative norm of the part outside the span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureCoefficients {
    pub c_scalar: Complex64,
    pub c_tensor: Complex64,
    pub c_spinorbit: Complex64,
    pub c_quartic: Complex64,
    pub residual: f64,
}

impl StructureCoefficients {
    pub const NAMES: [&'static str; 4] = ["scalar", "tensor", "spinorbit", "quartic"];

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.c_scalar, self.c_tensor, self.c_spinorbit, self.c_quartic]
    }

    fn from_slice(c: &[Complex64], residual: f64) -> Self {
        let get = |i: usize| c.get(i).copied().unwrap_or_default();
        Self {
            c_scalar: get(0),
            c_tensor: get(1),
            c_spinorbit: get(2),
            c_quartic: get(3),
            residual,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            c_scalar: self.c_scalar * s,
            c_tensor: self.c_tensor * s,
            c_spinorbit: self.c_spinorbit * s,
            c_quartic: self.c_quartic * s,
            residual: self.residual,
        }
    }
}

/// The four structure operators for `system` at the given `p` and unit `u`.
pub fn structure_basis(system: System, p: &Vec3, u: &Vec3) -> [CMat; 4] {
    let spin = system.spin();
    let n = spin.dim() * spin.dim();
    let (s1, s2) = pair_ops(spin);
    let v = p.cross(u);
    let s1s2 = (0..3).fold(CMat::zeros(n, n), |acc, i| acc + &s1[i] * &s2[i]);
    [
        identity(n),
        dot_ops(&s1, u) * dot_ops(&s2, u) - s1s2,
        (dot_ops(&s1, &v) + dot_ops(&s2, &v)) * I,
        dot_ops(&s1, &v) * dot_ops(&s2, &v),
    ]
}

/// Least-squares coefficients of `target` over `basis` (Frobenius inner
/// product) and the relative residual norm.
fn project(target: &CMat, basis: &[CMat]) -> Result<(Vec<Complex64>, f64)> {
    let n = basis.len();
    let gram = nalgebra::DMatrix::from_fn(n, n, |i, j| frobenius_inner(&basis[i], &basis[j]));
    let rhs = nalgebra::DVector::from_fn(n, |i, _| frobenius_inner(&basis[i], target));
    let coeffs = gram
        .lu()
        .solve(&rhs)
        .ok_or(Error::ForwardSingularity("structure Gram determinant"))?;
    let mut rest = target.clone();
    for (b, c) in basis.iter().zip(coeffs.iter()) {
        rest -= b * *c;
    }
    let norm = frobenius_norm(target);
    let r = frobenius_norm(&rest);
    Ok((coeffs.iter().copied().collect(), if norm > 0.0 { r / norm } else { r }))
}

/// Project an amplitude onto the four spin structures.
///
/// Collinear or forward kinematics (`p × n_Δ = 0`) return
/// [`Error::DegenerateBasis`] carrying the reduced decomposition over the
/// scalar and tensor structures; at `Δ = 0` the tensor structure reduces
/// to `−Σ1·Σ2`.
pub fn decompose(amp: &AmplitudeOperator) -> Result<StructureCoefficients> {
    let d = lob_diff(&amp.k, &amp.p)?;
    let u = d.direction();
    let p = amp.p.p3();
    let scale = p.norm().max(amp.p.mass());
    let v = p.cross(&u);
    let vn = v.norm();
    if d.is_forward() || vn <= COLLINEAR_TOL * scale {
        let basis = structure_basis(amp.system, p, &u);
        let (c, r) = project(&amp.matrix, &basis[..2])?;
        return Err(Error::DegenerateBasis(Box::new(StructureCoefficients::from_slice(&c, r))));
    }
    // Project on the unit-normal structures for conditioning, then rescale.
    let basis = structure_basis(amp.system, &(p / vn), &u);
    let (c, r) = project(&amp.matrix, &basis)?;
    Ok(StructureCoefficients::from_slice(&[c[0], c[1], c[2] / vn, c[3] / (vn * vn)], r))
}

/// Like [`decompose`] but returning the reduced decomposition instead of an
/// error on degenerate kinematics; the flag reports whether it was reduced.
pub fn decompose_lenient(amp: &AmplitudeOperator) -> Result<(StructureCoefficients, bool)> {
    match decompose(amp) {
        Ok(s) => Ok((s, false)),
        Err(Error::DegenerateBasis(s)) => Ok((*s, true)),
        Err(e) => Err(e),
    }
}

/// Closed-form structure coefficients of the fermion amplitude.
pub fn fermion_coefficients(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<StructureCoefficients> {
    let d = lob_diff(k, p)?;
    let h = half_transfer(&d);
    let m = p.mass();
    let m2 = m * m;
    let p0 = p.energy();
    let a = (m * excess(&d) / 2.0).sqrt();
    let pa = p.p3().dot(&h.ae3);
    let den = c.mu * c.mu + 4.0 * a * a;
    if c.mu == 0.0 && d.is_forward() {
        return Err(Error::ForwardSingularity("μ² + 4æ²"));
    }
    let g2 = c.g_v * c.g_v;
    let scalar = -4.0 * g2 * m2 / den
        - 8.0 * g2 * (p0 * p0 * h.ae0 * h.ae0 + 2.0 * p0 * h.ae0 * pa - m2 * m2) / (m2 * den)
        - 8.0 * g2 * pa * pa / (m2 * den);
    Ok(StructureCoefficients {
        c_scalar: re(scalar),
        c_tensor: re(-4.0 * g2 * a * a / den),
        c_spinorbit: re(-8.0 * g2 * a * (p0 * h.ae0 + pa) / (m2 * den)),
        c_quartic: re(8.0 * g2 * a * a / (m2 * den)),
        residual: 0.0,
    })
}

/// Closed-form structure coefficients of the boson amplitude.
pub fn boson_coefficients(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<StructureCoefficients> {
    let d = lob_diff(k, p)?;
    if d.is_forward() {
        return Err(Error::ForwardSingularity("Δ0 − M"));
    }
    let m = p.mass();
    let m3 = m * m * m;
    let dm = excess(&d);
    let d2 = d.norm_squared();
    let dn = d2.sqrt();
    let g2 = c.g_scalar * c.g_scalar;
    let lead = p.energy() * (d.delta0 + m) + p.p3().dot(&d.delta3);
    Ok(StructureCoefficients {
        c_scalar: re(g2 * (lead * lead - m3 * (d.delta0 + m)) / (m3 * dm)),
        c_tensor: re(g2 * d2 / (2.0 * m * dm)),
        c_spinorbit: re(g2 * dn * lead / (m3 * dm)),
        c_quartic: re(-g2 * d2 / (m3 * dm * dm)),
        residual: 0.0,
    })
}

/// `max |T(Rp, Rk) − U T(p,k) U†|` relative to `max |T|`, with
/// `U = exp(−iθ n·S) ⊗ exp(−iθ n·S)` and `R` the rotation by `θ` about `n`.
pub fn rotation_covariance_residual(
    system: System,
    p: &FourMomentum,
    k: &FourMomentum,
    c: &CouplingSet,
    axis: &Vec3,
    angle: f64,
) -> Result<f64> {
    let spin = system.spin();
    let n = axis.normalize();
    let r = crate::linalg::rotation_matrix(&n, angle);
    let u1 = (spin_set(spin).dot(&n) * (-I * angle)).exp();
    let u = kron(&u1, &u1);
    let t = amplitude(system, p, k, c)?.matrix;
    let rotated = amplitude(system, &p.rotated(&r), &k.rotated(&r), c)?.matrix;
    let expect = &u * &t * u.adjoint();
    let scale = crate::linalg::max_abs(&t).max(f64::MIN_POSITIVE);
    Ok(crate::linalg::max_abs_diff(&rotated, &expect) / scale)
}

/// Per-structure comparison of the boson amplitude with the fermion
/// amplitude at `μ = 0`, after replacing `1/(2M(Δ0−M))` by `1/Δ²` in the
/// boson coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub p: [f64; 4],
    pub k: [f64; 4],
    pub fermion: StructureCoefficients,
    pub boson: StructureCoefficients,
    pub boson_substituted: StructureCoefficients,
    /// `boson_substituted / fermion` per structure, in [`StructureCoefficients::NAMES`] order.
    pub ratios: [Complex64; 4],
}

impl ComparisonReport {
    pub fn tensor_ratio(&self) -> Complex64 {
        self.ratios[1]
    }
}

pub fn substitution_compare(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<ComparisonReport> {
    let fermion = decompose(&fermion_amplitude(p, k, &CouplingSet { mu: 0.0, ..*c })?)?;
    let boson = decompose(&boson_amplitude(p, k, c)?)?;
    let d = lob_diff(k, p)?;
    let factor = 2.0 * d.mass * excess(&d) / d.norm_squared();
    let boson_substituted = boson.scaled(factor);
    let f = fermion.as_array();
    let b = boson_substituted.as_array();
    Ok(ComparisonReport {
        p: p.components(),
        k: k.components(),
        fermion,
        boson,
        boson_substituted,
        ratios: std::array::from_fn(|i| b[i] / f[i]),
    })
}

/// Quantified comparison of the fermion amplitude (`μ = 0`) with the boson
/// amplitude once the crossed channel is added.
#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub p: [f64; 4],
    pub k: [f64; 4],
    pub fermion: StructureCoefficients,
    /// Direct + crossed, projected on the direct-channel basis.
    pub full_boson: StructureCoefficients,
    /// `|c_B − c_F| / |c_F|` per structure, boson coefficients substituted
    /// with the direct-channel factor.
    pub relative_differences: [f64; 4],
    /// Tensor coefficient of the crossed channel in its own basis.
    pub crossed_tensor: Complex64,
    /// `g² Δ′²/(2M(Δ0′ − M))` for the crossed transfer.
    pub crossed_tensor_expected: f64,
    /// `1/(2M(Δ0−M)) − 1/(2M(Δ0+M))` and `1/Δ²` for the direct transfer.
    pub denominator_combination: (f64, f64),
    /// `k · p = 0`, where `Δ0′ = Δ0`.
    pub perpendicular: bool,
}

pub fn coincidence_report(p: &FourMomentum, k: &FourMomentum, c: &CouplingSet) -> Result<CoincidenceReport> {
    let fermion = decompose(&fermion_amplitude(p, k, &CouplingSet { mu: 0.0, ..*c })?)?;
    let (full_boson, _) = decompose_lenient(&full_boson_amplitude(p, k, c)?)?;
    let (crossed, _) = decompose_lenient(&crossed_boson_amplitude(p, k, c)?)?;

    let d = lob_diff(k, p)?;
    let dc = lob_diff(&k.reflected(), p)?;
    let m = d.mass;
    let factor = 2.0 * m * excess(&d) / d.norm_squared();
    let f = fermion.as_array();
    let b = full_boson.scaled(factor).as_array();
    let g2 = c.g_scalar * c.g_scalar;
    Ok(CoincidenceReport {
        p: p.components(),
        k: k.components(),
        fermion,
        full_boson,
        relative_differences: std::array::from_fn(|i| (b[i] - f[i]).norm() / f[i].norm()),
        crossed_tensor: crossed.c_tensor,
        crossed_tensor_expected: g2 * dc.norm_squared() / (2.0 * m * excess(&dc)),
        denominator_combination: (
            1.0 / (2.0 * m * excess(&d)) - 1.0 / (2.0 * m * (d.delta0 + m)),
            1.0 / d.norm_squared(),
        ),
        perpendicular: k.p3().dot(p.p3()).abs() <= 1e-12 * p.p3().norm() * k.p3().norm(),
    })
}

/// Lab-frame pair obtained by boosting c.m.s. momenta with `Λ_𝒫`.
pub fn boost_from_cms(total: &FourMomentum, k: &FourMomentum) -> FourMomentum {
    boost_to_rest_frame(&total.reflected(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::cms_pair;
    use crate::linalg::{max_abs, max_abs_diff};

    fn fm(m: f64, x: f64, y: f64, z: f64) -> FourMomentum {
        FourMomentum::on_shell(m, Vec3::new(x, y, z)).unwrap()
    }

    fn close(a: Complex64, b: f64, tol: f64) -> bool {
        (a - re(b)).norm() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn fermion_threshold_is_minus_four() {
        let p = FourMomentum::at_rest(1.0).unwrap();
        let c = CouplingSet::uniform(1.0, 1.0);
        let t = fermion_amplitude(&p, &p, &c).unwrap();
        assert!(max_abs_diff(&t.matrix, &(identity(4) * re(-4.0))) < 1e-14);
        match decompose(&t) {
            Err(Error::DegenerateBasis(s)) => {
                assert!(close(s.c_scalar, -4.0, 1e-14));
                assert!(s.c_tensor.norm() < 1e-14 && s.residual < 1e-14);
            }
            other => panic!("expected a reduced decomposition, got {other:?}"),
        }
    }

    #[test]
    fn forward_poles() {
        let p = fm(1.0, 0.3, 0.1, -0.2);
        let c = CouplingSet::uniform(1.0, 0.0);
        assert!(matches!(fermion_amplitude(&p, &p, &c), Err(Error::ForwardSingularity(_))));
        assert!(matches!(boson_amplitude(&p, &p, &c), Err(Error::ForwardSingularity(_))));
        assert!(matches!(crossed_boson_amplitude(&p, &p.reflected(), &c), Err(Error::ForwardSingularity(_))));
    }

    #[test]
    fn zero_coupling_is_zero_operator() {
        let (p, k) = cms_pair(1.0, 0.8, 0.3).unwrap();
        let c = CouplingSet::uniform(0.0, 0.5);
        for t in [
            fermion_amplitude(&p, &k, &c).unwrap(),
            boson_amplitude(&p, &k, &c).unwrap(),
            crossed_boson_amplitude(&p, &k, &c).unwrap(),
        ] {
            assert_eq!(max_abs(&t.matrix), 0.0);
            let s = decompose(&t).unwrap();
            assert!(s.as_array().iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn boson_rejects_unequal_couplings() {
        let (p, k) = cms_pair(1.0, 0.8, 0.3).unwrap();
        let c = CouplingSet { g_tensor: 0.5, ..CouplingSet::uniform(1.0, 0.0) };
        assert!(matches!(boson_amplitude(&p, &k, &c), Err(Error::InvalidCouplings(_))));
    }

    #[test]
    fn boson_scalar_term_worked_value() {
        // M = 1, p at rest, Δ0 = 1.5: the scalar coefficient is 3.75/0.5.
        let p = FourMomentum::at_rest(1.0).unwrap();
        let k = fm(1.0, 0.0, 0.0, 1.25f64.sqrt());
        let s = boson_coefficients(&p, &k, &CouplingSet::uniform(1.0, 0.0)).unwrap();
        assert!(close(s.c_scalar, 7.5, 1e-13));
        let t = boson_amplitude(&p, &k, &CouplingSet::uniform(1.0, 0.0)).unwrap();
        let Err(Error::DegenerateBasis(r)) = decompose(&t) else { panic!() };
        // At p = 0 the tensor structure is the only spin dependence.
        assert!(close(r.c_scalar, 7.5, 1e-12) && r.residual < 1e-12);
    }

    #[test]
    fn decomposition_matches_closed_forms() {
        let p = fm(1.2, 0.4, -0.9, 0.5);
        let k = fm(1.2, -0.3, 0.7, 1.0);
        let c = CouplingSet::uniform(0.8, 0.6);
        for (amp, exact) in [
            (fermion_amplitude(&p, &k, &c).unwrap(), fermion_coefficients(&p, &k, &c).unwrap()),
            (boson_amplitude(&p, &k, &c).unwrap(), boson_coefficients(&p, &k, &c).unwrap()),
        ] {
            let s = decompose(&amp).unwrap();
            assert!(s.residual < 1e-12, "{:?}", amp.system);
            for (a, b) in s.as_array().iter().zip(exact.as_array()) {
                assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "{:?} {a} {b}", amp.system);
            }
        }
    }

    #[test]
    fn fermion_tensor_scales_with_exchange_mass() {
        let p = fm(1.0, 0.6, 0.2, -0.3);
        let k = fm(1.0, -0.2, 0.5, 0.6);
        let d = lob_diff(&k, &p).unwrap();
        let ae2 = d.mass * excess(&d) / 2.0;
        let mu = 0.7;
        let massive = decompose(&fermion_amplitude(&p, &k, &CouplingSet::uniform(1.3, mu)).unwrap()).unwrap();
        let massless = decompose(&fermion_amplitude(&p, &k, &CouplingSet::uniform(1.3, 0.0)).unwrap()).unwrap();
        let ratio = massive.c_tensor / massless.c_tensor;
        assert!(close(ratio, 4.0 * ae2 / (mu * mu + 4.0 * ae2), 1e-12));
        assert!(close(massless.c_tensor, -1.3 * 1.3, 1e-12));
    }

    #[test]
    fn rotational_covariance() {
        let p = fm(1.1, 0.5, -0.4, 0.8);
        let k = fm(1.1, -0.6, 0.9, 0.2);
        let axis = Vec3::new(0.3, -1.0, 0.4);
        let c = CouplingSet::uniform(1.0, 0.4);
        for system in [System::Ff, System::Bb] {
            let r = rotation_covariance_residual(system, &p, &k, &c, &axis, 1.1).unwrap();
            assert!(r < 1e-12, "{system}: {r}");
        }
    }

    #[test]
    fn cms_forward_matrix_element_is_bare_amplitude() {
        let (p, _) = cms_pair(1.0, 0.9, 1.0).unwrap();
        let sys = TwoParticleSystem::cms(p).unwrap();
        let c = CouplingSet::uniform(1.0, 0.5);
        let m = assemble_matrix_element(&sys, &p, &p.reflected(), &c, System::Ff).unwrap();
        let t = fermion_amplitude(&p, &p, &c).unwrap();
        assert!(max_abs_diff(&m, &t.matrix) < 1e-13);
    }

    #[test]
    fn cms_matrix_element_keeps_singular_values() {
        let (p, k) = cms_pair(1.0, 1.3, -0.4).unwrap();
        let sys = TwoParticleSystem::cms(p).unwrap();
        let c = CouplingSet::uniform(1.0, 0.5);
        for system in [System::Ff, System::Bb] {
            let m = assemble_matrix_element(&sys, &k, &k.reflected(), &c, system).unwrap();
            let t = amplitude(system, &p, &k, &c).unwrap().matrix;
            let mut a: Vec<f64> = m.singular_values().iter().copied().collect();
            let mut b: Vec<f64> = t.singular_values().iter().copied().collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9 * y.max(1.0));
            }
        }
    }

    #[test]
    fn boosted_frame_matches_cms_through_rotations() {
        let (p, k) = cms_pair(1.0, 0.8, 0.25).unwrap();
        let total = FourMomentum::on_shell(2.0 * p.energy(), Vec3::new(0.7, -0.4, 0.9)).unwrap();
        let lab = |q: &FourMomentum| boost_from_cms(&total, q);
        let (p1, p2, k1, k2) = (lab(&p), lab(&p.reflected()), lab(&k), lab(&k.reflected()));
        let sys = TwoParticleSystem::new(p1, p2).unwrap();
        let c = CouplingSet::uniform(0.9, 0.3);
        for system in [System::Ff, System::Bb] {
            let spin = system.spin();
            let m_lab = assemble_matrix_element(&sys, &k1, &k2, &c, system).unwrap();
            let cms = TwoParticleSystem::cms(p).unwrap();
            let m_cms = assemble_matrix_element(&cms, &k, &k.reflected(), &c, system).unwrap();
            let w = |a: &FourMomentum, b: &FourMomentum| wigner_rotation(a, b, spin).unwrap().matrix;
            let frame = sys.total.as_four_momentum();
            let left = kron(&w(&frame, &p1).adjoint(), &w(&frame, &p2).adjoint());
            let right = kron(&w(&frame, &k1), &w(&frame, &k2));
            let expect = left * m_cms * right;
            assert!(max_abs_diff(&m_lab, &expect) < 1e-9 * max_abs(&m_lab), "{system}");
        }
    }

    #[test]
    fn inelastic_input_is_rejected() {
        let (p, k) = cms_pair(1.0, 0.8, 0.25).unwrap();
        let sys = TwoParticleSystem::cms(p).unwrap();
        let k2 = fm(1.0, 0.0, 0.0, 0.1);
        let r = assemble_matrix_element(&sys, &k, &k2, &CouplingSet::default(), System::Ff);
        assert!(matches!(r, Err(Error::KinematicsMismatch(_))));
    }

    #[test]
    fn substitution_tensor_ratio() {
        let c = CouplingSet::uniform(1.7, 0.0);
        let a = substitution_compare(&fm(1.0, 0.4, 0.1, 0.3), &fm(1.0, -0.2, 0.6, 0.1), &c).unwrap();
        let b = substitution_compare(&fm(1.0, 1.5, -0.8, 0.2), &fm(1.0, 0.1, 0.9, -1.4), &c).unwrap();
        assert!((a.tensor_ratio() - b.tensor_ratio()).norm() < 1e-10);
        assert!(close(a.tensor_ratio(), -1.0, 1e-10));
    }

    #[test]
    fn crossed_tensor_at_perpendicular_kinematics() {
        let (p, k) = cms_pair(1.0, 0.9, 0.0).unwrap();
        let r = coincidence_report(&p, &k, &CouplingSet::uniform(1.0, 0.0)).unwrap();
        assert!(r.perpendicular);
        assert!(close(r.crossed_tensor, r.crossed_tensor_expected, 1e-10));
        let (lhs, rhs) = r.denominator_combination;
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
    }

    #[test]
    fn system_parsing() {
        assert_eq!("FF".parse::<System>().unwrap(), System::Ff);
        assert_eq!(System::Bb.to_string(), "bb");
        assert!("fb".parse::<System>().is_err());
    }
}
