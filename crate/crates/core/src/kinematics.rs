//! Geometry of the mass hyperboloid `p0² − p² = m²`.
//!
//! All quantities are real and use the Minkowski metric `(+,-,-,-)`.

use serde::{Deserialize, Serialize};

use crate::linalg::Vec3;
use crate::{Error, Result};

/// Relative tolerance for mass equality checks.
const MASS_TOL: f64 = 1e-12;

/// On-shell four-momentum. The energy is fixed at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourMomentum {
    mass: f64,
    p3: Vec3,
    p0: f64,
}

impl FourMomentum {
    pub fn on_shell(mass: f64, p3: Vec3) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !p3.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            mass,
            p3,
            p0: (mass * mass + p3.norm_squared()).sqrt(),
        })
    }

    pub fn at_rest(mass: f64) -> Result<Self> {
        Self::on_shell(mass, Vec3::zeros())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn energy(&self) -> f64 {
        self.p0
    }

    pub fn p3(&self) -> &Vec3 {
        &self.p3
    }

    /// Contravariant components `(p0, p1, p2, p3)`.
    pub fn components(&self) -> [f64; 4] {
        [self.p0, self.p3.x, self.p3.y, self.p3.z]
    }

    pub fn minkowski_square(&self) -> f64 {
        self.p0 * self.p0 - self.p3.norm_squared()
    }

    pub fn minkowski_dot(&self, other: &FourMomentum) -> f64 {
        self.p0 * other.p0 - self.p3.dot(&other.p3)
    }

    /// Same mass, spatial momentum reflected (`p → −p`).
    pub fn reflected(&self) -> Self {
        Self {
            p3: -self.p3,
            ..*self
        }
    }

    /// Spatial momentum rotated by `r`; the energy is unchanged.
    pub fn rotated(&self, r: &nalgebra::Matrix3<f64>) -> Self {
        Self {
            p3: r * self.p3,
            ..*self
        }
    }
}

fn same_mass(a: f64, b: f64) -> Result<()> {
    if (a - b).abs() <= MASS_TOL * a.abs().max(b.abs()) {
        Ok(())
    } else {
        Err(Error::MassMismatch(a, b))
    }
}

/// `Λ_frame⁻¹ k` for a frame four-vector of invariant mass `frame_mass`:
/// the spatial momentum of `k` seen from the rest frame of `frame`.
fn to_rest_frame(frame_p0: f64, frame_p3: &Vec3, frame_mass: f64, k0: f64, k3: &Vec3) -> Vec3 {
    k3 - frame_p3 * ((k0 - k3.dot(frame_p3) / (frame_p0 + frame_mass)) / frame_mass)
}

/// `k` boosted to the rest frame of `frame` (any masses). The result keeps
/// the mass of `k`.
pub fn boost_to_rest_frame(frame: &FourMomentum, k: &FourMomentum) -> FourMomentum {
    let d3 = to_rest_frame(frame.p0, &frame.p3, frame.mass, k.p0, &k.p3);
    FourMomentum {
        mass: k.mass,
        p0: (k.mass * k.mass + d3.norm_squared()).sqrt(),
        p3: d3,
    }
}

/// Relative size of `|Δ|` below which a transfer counts as forward. The
/// Lobachevsky difference of two equal inputs carries rounding noise of a
/// few ulps, and the pole formulas turn that noise into huge values.
const FORWARD_EPS: f64 = 1e-10;

/// Momentum transfer in the Lobachevsky space, `Δ = Λ_p⁻¹ k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LobachevskyDelta {
    pub delta3: Vec3,
    pub delta0: f64,
    pub mass: f64,
}

impl LobachevskyDelta {
    /// Unit vector along `Δ`; the zero vector when `Δ = 0`.
    pub fn direction(&self) -> Vec3 {
        let n = self.delta3.norm();
        if n > 0.0 {
            self.delta3 / n
        } else {
            Vec3::zeros()
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.delta3.norm_squared()
    }

    /// `k = p` up to rounding: `|Δ| ≤ 1e−10·m` or `Δ0 ≤ m`.
    pub fn is_forward(&self) -> bool {
        self.delta3.norm() <= FORWARD_EPS * self.mass || self.delta0 <= self.mass
    }
}

/// The Lobachevsky difference `k(−)p`.
///
/// `delta3` is the spatial part of `Λ_p⁻¹ k` and `delta0 = (k0 p0 − k·p)/m`
/// is evaluated independently of `delta3`, so that `delta0² = m² + Δ²`
/// remains a genuine check.
pub fn lob_diff(k: &FourMomentum, p: &FourMomentum) -> Result<LobachevskyDelta> {
    same_mass(k.mass, p.mass)?;
    let m = p.mass;
    Ok(LobachevskyDelta {
        delta3: to_rest_frame(p.p0, &p.p3, m, k.p0, &k.p3),
        delta0: (k.p0 * p.p0 - k.p3.dot(&p.p3)) / m,
        mass: m,
    })
}

/// Four-vector of the momentum half-transfer `(æ0, æ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfTransfer {
    pub ae0: f64,
    pub ae3: Vec3,
    pub mass: f64,
}

pub fn half_transfer(d: &LobachevskyDelta) -> HalfTransfer {
    let m = d.mass;
    // Δ0 may round to slightly below m at the forward point.
    let excess = (d.delta0 - m).max(0.0);
    HalfTransfer {
        ae0: (m * (d.delta0 + m) / 2.0).sqrt(),
        ae3: d.direction() * (m * excess / 2.0).sqrt(),
        mass: m,
    }
}

/// Both sides of `1/Δ² = 1/(2m(Δ0−m)) − 1/(2m(Δ0+m))`.
pub fn denominator_identity(d: &LobachevskyDelta) -> Result<(f64, f64)> {
    if d.is_forward() {
        return Err(Error::ForwardSingularity("Δ0 − m"));
    }
    let m = d.mass;
    let lhs = 1.0 / d.norm_squared();
    let rhs = 1.0 / (2.0 * m * (d.delta0 - m)) - 1.0 / (2.0 * m * (d.delta0 + m));
    Ok((lhs, rhs))
}

/// Minkowski square `(p + k)²`; equals `2m(Δ0 + m)` on shell.
pub fn sum_square(p: &FourMomentum, k: &FourMomentum) -> Result<f64> {
    same_mass(p.mass, k.mass)?;
    let e = p.p0 + k.p0;
    Ok(e * e - (p.p3 + k.p3).norm_squared())
}

/// Total momentum `𝒫` of a two-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TotalMomentum {
    pub p0: f64,
    pub p3: Vec3,
    /// `sqrt(𝒫²)`.
    pub invariant_mass: f64,
}

impl TotalMomentum {
    /// `𝒫` viewed as an on-shell vector of mass `sqrt(𝒫²)`.
    pub fn as_four_momentum(&self) -> FourMomentum {
        FourMomentum {
            mass: self.invariant_mass,
            p3: self.p3,
            p0: self.p0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoParticleSystem {
    pub p1: FourMomentum,
    pub p2: FourMomentum,
    pub total: TotalMomentum,
}

impl TwoParticleSystem {
    pub fn new(p1: FourMomentum, p2: FourMomentum) -> Result<Self> {
        same_mass(p1.mass, p2.mass)?;
        let p0 = p1.p0 + p2.p0;
        let p3 = p1.p3 + p2.p3;
        let s = p0 * p0 - p3.norm_squared();
        if !(s > 0.0) {
            return Err(Error::InvalidSystem(s));
        }
        Ok(Self {
            p1,
            p2,
            total: TotalMomentum {
                p0,
                p3,
                invariant_mass: s.sqrt(),
            },
        })
    }

    /// c.m.s. pair `p1 = −p2 = p`.
    pub fn cms(p: FourMomentum) -> Result<Self> {
        Self::new(p, p.reflected())
    }
}

/// Covariant momentum `ǩ = Λ_𝒫⁻¹ k` (footnote generalization to arbitrary
/// frames). In the c.m.s. (`𝒫3 = 0`) this returns `k` unchanged.
pub fn covariant_momentum(sys: &TwoParticleSystem, k: &FourMomentum) -> Result<FourMomentum> {
    let t = &sys.total;
    if !(t.invariant_mass > 0.0) {
        return Err(Error::InvalidSystem(t.invariant_mass));
    }
    if t.p3.norm() == 0.0 {
        return Ok(*k);
    }
    Ok(boost_to_rest_frame(&t.as_four_momentum(), k))
}

/// Elastic c.m.s. kinematics: `p = pmag ẑ`, `k = pmag (sinθ, 0, cosθ)`.
pub fn cms_pair(mass: f64, pmag: f64, costheta: f64) -> Result<(FourMomentum, FourMomentum)> {
    if !(costheta.abs() <= 1.0) || !(pmag >= 0.0) {
        return Err(Error::NonFinite);
    }
    let sintheta = (1.0 - costheta * costheta).max(0.0).sqrt();
    let p = FourMomentum::on_shell(mass, Vec3::new(0.0, 0.0, pmag))?;
    let k = FourMomentum::on_shell(mass, Vec3::new(pmag * sintheta, 0.0, pmag * costheta))?;
    Ok((p, k))
}
