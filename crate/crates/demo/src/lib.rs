//! Browser bindings for the `lobachevsky` crate.
//!
//! Each export samples one quantity along the scattering angle at fixed
//! c.m.s. momentum and returns a flat `Float64Array`, row-major, with the
//! cosine of the angle in the first column. Points where the quantity is
//! undefined (a forward pole, say) come back as `NaN` so the page can
//! leave a gap in the plot.

use lobachevsky::amplitudes::{boson_coefficients, fermion_coefficients, substitution_compare};
use lobachevsky::currents::CouplingSet;
use lobachevsky::kinematics::cms_pair;
use lobachevsky::representations::wigner_rotation;
use lobachevsky::Spin;
use wasm_bindgen::prelude::*;

/// Sample points `cos θ` from `−1` to `1` inclusive.
fn cosines(n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
}

fn rows<const W: usize>(n: usize, f: impl Fn(f64) -> Option<[f64; W]>) -> Vec<f64> {
    let mut out = Vec::with_capacity(n.max(2) * (W + 1));
    for c in cosines(n) {
        out.push(c);
        out.extend(f(c).unwrap_or([f64::NAN; W]));
    }
    out
}

/// Wigner rotation of a spin-1/2 rest frame, `V⁻¹(Λ_p, k)`, for `p` and `k`
/// of equal length `pmag` separated by angle `θ`.
///
/// Columns: `cos θ`, rotation angle in radians, and the `y` component of
/// the rotation axis. The axis is `±ŷ` for every `θ` because `p` and `k`
/// span the `xz` plane.
#[wasm_bindgen]
pub fn wigner_curve(mass: f64, pmag: f64, n: usize) -> Vec<f64> {
    rows(n, |c| {
        let (p, k) = cms_pair(mass, pmag, c).ok()?;
        let (axis, angle) = wigner_rotation(&p, &k, Spin::Half).ok()?.axis_angle();
        Some([angle, axis.y])
    })
}

/// Real parts of the four structure coefficients (scalar, tensor,
/// spin-orbit, quartic) of the one-exchange amplitude. `system` is `"ff"`
/// for two spin-1/2 particles or `"bb"` for two spin-1 particles.
#[wasm_bindgen]
pub fn structure_curve(system: &str, mass: f64, pmag: f64, g: f64, mu: f64, n: usize) -> Vec<f64> {
    let couplings = CouplingSet::uniform(g, mu);
    let coefficients = match system {
        "bb" => boson_coefficients,
        _ => fermion_coefficients,
    };
    rows(n, |c| {
        let (p, k) = cms_pair(mass, pmag, c).ok()?;
        let s = coefficients(&p, &k, &couplings).ok()?;
        Some(s.as_array().map(|z| z.re))
    })
}

/// Per-structure ratio of the spin-1 amplitude, with its `Δ0 − M` pole
/// traded for `Δ²`, to the massless-exchange spin-1/2 amplitude.
#[wasm_bindgen]
pub fn substitution_curve(mass: f64, pmag: f64, g: f64, n: usize) -> Vec<f64> {
    let couplings = CouplingSet::uniform(g, 0.0);
    rows(n, |c| {
        let (p, k) = cms_pair(mass, pmag, c).ok()?;
        let report = substitution_compare(&p, &k, &couplings).ok()?;
        Some(report.ratios.map(|z| z.re))
    })
}
