//! Boost sandwiches of the gamma-type matrices and the bilinears of the
//! Pauli–Lubanski vector,
//!
//! ```text
//! χ_[μν] = p_μ W_ν − p_ν W_μ        Σ_[μν] = ½ (W_μ W_ν − W_ν W_μ)
//! χ_(μν) = p_μ W_ν + p_ν W_μ        Σ_(μν) = ½ (W_μ W_ν + W_ν W_μ)
//! ```
//!
//! Spin 1 (6x6, Euclidean indices):
//!
//! ```text
//! S_p⁻¹ γ_{μν} S_p    = γ_44 { δ_μν − χ·γ5 / M² − 2 Σ / M² }
//! S_p⁻¹ γ_{5,μν} S_p  = 6i { −χ·γ5 / M² + 2 Σ / M² }
//! ```
//!
//! Spin 1/2 (4x4, Minkowski):
//!
//! ```text
//! S_p⁻¹ γ_μ S_p   = γ_0 { p_μ + 2 γ5 W_μ } / m
//! S_p⁻¹ σ_μν S_p  = −4 Σ / m² + 2 γ5 χ / m²
//! ```
//!
//! The bracket type (symmetric or antisymmetric) of each bilinear, the sign
//! of the chirality matrix and the treatment of the time component are not
//! fixed by the formulas alone. [`probe_conventions`] evaluates every
//! reading and requires exactly one to hold.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boost::boost;
use super::pauli_lubanski::pauli_lubanski;
use crate::kinematics::FourMomentum;
use crate::linalg::{block_diag, identity, max_abs, re, CMat, I};
use crate::spin_algebra::{chirality, dirac_set, gamma6_set, Spin};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChiralitySign {
    Plus,
    Minus,
}

/// Which bilinears multiply which identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BracketReading {
    /// Index symmetry of the bilinears matches that of the sandwiched
    /// matrix: `(μν)` for `γ_{μν}`, `[μν]` for `γ_{5,μν}` and `σ_{μν}`.
    Matched,
    /// The opposite assignment: `[μν]` for `γ_{μν}`, `(μν)` for
    /// `γ_{5,μν}` and `σ_{μν}`.
    Crossed,
}

/// How the time component of `p` and `W` enters the index sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeComponent {
    /// Real Minkowski component `x0`.
    Real,
    /// Euclidean `x4 = i x0`.
    PlusI,
    /// Euclidean `x4 = −i x0`.
    MinusI,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionVariant {
    pub chirality: ChiralitySign,
    pub brackets: BracketReading,
    pub time: TimeComponent,
}

impl ConventionVariant {
    pub fn all() -> Vec<ConventionVariant> {
        let mut out = Vec::with_capacity(12);
        for chirality in [ChiralitySign::Plus, ChiralitySign::Minus] {
            for brackets in [BracketReading::Matched, BracketReading::Crossed] {
                for time in [TimeComponent::Real, TimeComponent::PlusI, TimeComponent::MinusI] {
                    out.push(ConventionVariant {
                        chirality,
                        brackets,
                        time,
                    });
                }
            }
        }
        out
    }
}

/// Reading selected by the prober for the spin-1/2 identities.
pub const FROZEN_SPIN_HALF: ConventionVariant = ConventionVariant {
    chirality: ChiralitySign::Plus,
    brackets: BracketReading::Matched,
    time: TimeComponent::Real,
};

/// Reading selected by the prober for the spin-1 identities.
pub const FROZEN_SPIN_ONE: ConventionVariant = ConventionVariant {
    chirality: ChiralitySign::Plus,
    brackets: BracketReading::Matched,
    time: TimeComponent::PlusI,
};

/// Relative residuals of the two sandwich identities of a spin at one `p`:
/// `γ_{μν}` and `γ_{5,μν}` for spin 1, `γ_μ` and `σ_{μν}` for spin 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichResiduals {
    pub first: f64,
    pub second: f64,
}

impl SandwichResiduals {
    pub fn max(&self) -> f64 {
        self.first.max(self.second)
    }
}

struct Bilinears {
    p: [Complex64; 4],
    w: [CMat; 4],
}

impl Bilinears {
    fn chi(&self, a: usize, b: usize, symmetric: bool) -> CMat {
        let s = if symmetric { 1.0 } else { -1.0 };
        &self.w[b] * self.p[a] + &self.w[a] * (self.p[b] * s)
    }

    fn sigma(&self, a: usize, b: usize, symmetric: bool) -> CMat {
        let ab = &self.w[a] * &self.w[b];
        let ba = &self.w[b] * &self.w[a];
        if symmetric {
            (ab + ba) * re(0.5)
        } else {
            (ab - ba) * re(0.5)
        }
    }
}

fn time_factor(t: TimeComponent) -> Complex64 {
    match t {
        TimeComponent::Real => re(1.0),
        TimeComponent::PlusI => I,
        TimeComponent::MinusI => -I,
    }
}

/// Components laid out the way the spin's gamma matrices are indexed: for
/// spin 1 spatial `0..3` then time at index 3; for spin 1/2 time at index 0.
fn bilinears(spin: Spin, p: &FourMomentum, time: TimeComponent) -> Bilinears {
    let w = pauli_lubanski(spin, p);
    let t = time_factor(time);
    let [p0, p1, p2, p3] = p.components();
    match spin {
        Spin::One => Bilinears {
            p: [re(p1), re(p2), re(p3), t * p0],
            w: [w.w3[0].clone(), w.w3[1].clone(), w.w3[2].clone(), &w.w0 * t],
        },
        Spin::Half => Bilinears {
            p: [t * p0, re(p1), re(p2), re(p3)],
            w: [&w.w0 * t, w.w3[0].clone(), w.w3[1].clone(), w.w3[2].clone()],
        },
    }
}

fn rel_residual(lhs: &CMat, rhs: &CMat) -> f64 {
    max_abs(&(lhs - rhs)) / max_abs(lhs).max(1.0)
}

pub fn sandwich_residuals(p: &FourMomentum, spin: Spin, v: ConventionVariant) -> SandwichResiduals {
    let n = spin.dim();
    let bm = boost(spin, p);
    let s = bm.chiral();
    let s_inv = block_diag(&bm.d_minus, &bm.d_plus);
    let g5 = match v.chirality {
        ChiralitySign::Plus => chirality(n),
        ChiralitySign::Minus => -chirality(n),
    };
    let bl = bilinears(spin, p, v.time);
    let m2 = p.mass() * p.mass();
    let lift = |x: &CMat| block_diag(x, x);
    let matched = v.brackets == BracketReading::Matched;

    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    match spin {
        Spin::One => {
            let g = gamma6_set();
            let g44 = &g.gamma[3][3];
            for a in 0..4 {
                for b in 0..4 {
                    let sym = matched;
                    let delta = if a == b { identity(6) } else { CMat::zeros(6, 6) };
                    let rhs = g44
                        * (delta
                            - lift(&bl.chi(a, b, sym)) * &g5 / re(m2)
                            - lift(&bl.sigma(a, b, sym)) * re(2.0 / m2));
                    first = first.max(rel_residual(&(&s_inv * &g.gamma[a][b] * &s), &rhs));

                    let sym = !matched;
                    let rhs = (lift(&bl.sigma(a, b, sym)) * re(2.0 / m2)
                        - lift(&bl.chi(a, b, sym)) * &g5 / re(m2))
                        * Complex64::new(0.0, 6.0);
                    second = second.max(rel_residual(&(&s_inv * &g.gamma5[a][b] * &s), &rhs));
                }
            }
        }
        Spin::Half => {
            let d = dirac_set();
            let m = p.mass();
            for mu in 0..4 {
                let rhs = &d.gamma[0] * (identity(4) * bl.p[mu] + &g5 * lift(&bl.w[mu]) * re(2.0)) / re(m);
                first = first.max(rel_residual(&(&s_inv * &d.gamma[mu] * &s), &rhs));
            }
            let sym = !matched;
            for a in 0..4 {
                for b in 0..4 {
                    let rhs = lift(&bl.sigma(a, b, sym)) * re(-4.0 / m2)
                        + &g5 * lift(&bl.chi(a, b, sym)) * re(2.0 / m2);
                    second = second.max(rel_residual(&(&s_inv * d.sigma(a, b) * &s), &rhs));
                }
            }
        }
    }
    SandwichResiduals { first, second }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantResult {
    pub variant: ConventionVariant,
    pub residuals: SandwichResiduals,
    pub pass: bool,
}

/// Per-variant worst-case residuals over a sample of momenta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub spin: Spin,
    pub tolerance: f64,
    pub samples: usize,
    pub variants: Vec<VariantResult>,
}

impl ProbeOutcome {
    pub fn passing(&self) -> Vec<ConventionVariant> {
        self.variants.iter().filter(|r| r.pass).map(|r| r.variant).collect()
    }

    /// The unique passing reading, if there is exactly one.
    pub fn selected(&self) -> Option<&VariantResult> {
        let mut it = self.variants.iter().filter(|r| r.pass);
        match (it.next(), it.next()) {
            (Some(r), None) => Some(r),
            _ => None,
        }
    }
}

/// Evaluates every reading over `samples` and requires exactly one to keep
/// both identities within `tolerance` (relative, entrywise).
pub fn probe_conventions(spin: Spin, samples: &[FourMomentum], tolerance: f64) -> Result<ProbeOutcome> {
    let variants = ConventionVariant::all()
        .into_iter()
        .map(|variant| {
            let residuals = samples.iter().fold(
                SandwichResiduals {
                    first: 0.0,
                    second: 0.0,
                },
                |acc, p| {
                    let r = sandwich_residuals(p, spin, variant);
                    SandwichResiduals {
                        first: acc.first.max(r.first),
                        second: acc.second.max(r.second),
                    }
                },
            );
            VariantResult {
                variant,
                pass: residuals.max() <= tolerance,
                residuals,
            }
        })
        .collect();
    let outcome = ProbeOutcome {
        spin,
        tolerance,
        samples: samples.len(),
        variants,
    };
    if outcome.selected().is_some() {
        Ok(outcome)
    } else {
        Err(Error::SandwichConvention(Box::new(outcome)))
    }
}

/// Single-momentum report at the default tolerance `1e−8`.
pub fn sandwich_identities(p: &FourMomentum, spin: Spin) -> Result<ProbeOutcome> {
    probe_conventions(spin, std::slice::from_ref(p), 1e-8)
}
