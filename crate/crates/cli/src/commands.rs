use std::fmt::Write as _;

use lobachevsky::amplitudes::{
    amplitude, coincidence_report, decompose_lenient, substitution_compare, StructureCoefficients, System,
};
use lobachevsky::currents::CouplingSet;
use lobachevsky::kinematics::cms_pair;
use lobachevsky::verify::{run_verify, VerifyOptions, VerifyReport};
use lobachevsky::Error;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, Grid, RunConfig};
use crate::Failure;

pub const DEFAULT_PMAG_GRID: Grid = Grid {
    start: 0.2,
    stop: 2.0,
    n: 10,
};

pub const DEFAULT_COSTHETA_GRID: Grid = Grid {
    start: -0.9,
    stop: 0.9,
    n: 10,
};

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidCouplings(_) | Error::InvalidMass(_) | Error::Unsupported(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Kinematic(e.to_string()),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn mass_for(cfg: &RunConfig, system: System) -> f64 {
    match system {
        System::Ff => cfg.masses.m,
        System::Bb => cfg.masses.big_m,
    }
}

/// Returns the rendered report and whether every identity passed.
pub fn cmd_verify(cfg: &RunConfig) -> (String, bool) {
    let report = run_verify(&VerifyOptions {
        seed: cfg.run.seed,
        trials: cfg.run.trials,
        tolerance: cfg.run.tol,
    });
    let text = match cfg.output.format.unwrap_or_default() {
        Format::Text => render_verify_text(&report),
        _ => to_json(&report),
    };
    (text, report.overall_pass)
}

fn render_verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for r in &report.identities {
        let _ = writeln!(
            out,
            "{} {:<32} trials={:<6} residual={:.3e} tol={:.1e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.trials,
            r.max_residual,
            r.tolerance
        );
    }
    for c in &report.conventions {
        let _ = writeln!(
            out,
            "conventions j={}: selected={:?} ({} of {} readings pass)",
            c.spin.value(),
            c.selected,
            c.passing_variants,
            c.variants_probed
        );
    }
    if let Some([re, im]) = report.substitution_tensor_ratio {
        let _ = writeln!(out, "substitution tensor ratio: {re:.12} {im:+.3e}i");
    }
    let _ = writeln!(out, "overall: {}", if report.overall_pass { "PASS" } else { "FAIL" });
    out
}

#[derive(Serialize)]
struct Point {
    pmag: f64,
    costheta: f64,
    p: [f64; 4],
    k: [f64; 4],
}

#[derive(Serialize)]
struct AmplitudeOutput<'a> {
    v: u32,
    system: System,
    mass: f64,
    point: Point,
    couplings: &'a CouplingSet,
    /// Row-major `[re, im]` entries, particle 1 as the slow index.
    matrix: Vec<Vec<[f64; 2]>>,
    structure: StructureCoefficients,
    /// The kinematics are collinear or forward; only the scalar and tensor
    /// structures were fitted.
    reduced_basis: bool,
}

pub fn cmd_amplitude(cfg: &RunConfig, system: System) -> Result<String, Failure> {
    let pmag = cfg.kinematics.pmag.unwrap_or(0.5);
    let costheta = cfg.kinematics.costheta.unwrap_or(0.5);
    let mass = mass_for(cfg, system);
    let (p, k) = cms_pair(mass, pmag, costheta)?;
    let amp = amplitude(system, &p, &k, &cfg.couplings)?;
    let (structure, reduced_basis) = decompose_lenient(&amp)?;
    let m = &amp.matrix;
    let matrix = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    Ok(to_json(&AmplitudeOutput {
        v: 1,
        system,
        mass,
        point: Point {
            pmag,
            costheta,
            p: p.components(),
            k: k.components(),
        },
        couplings: &cfg.couplings,
        matrix,
        structure,
        reduced_basis,
    }))
}

enum ScanPoint {
    Full(StructureCoefficients),
    Reduced(StructureCoefficients),
    Singular(String),
}

fn scan_point(cfg: &RunConfig, system: System, pmag: f64, costheta: f64) -> Result<ScanPoint, Failure> {
    let (p, k) = cms_pair(mass_for(cfg, system), pmag, costheta)?;
    match amplitude(system, &p, &k, &cfg.couplings) {
        Ok(amp) => Ok(match decompose_lenient(&amp)? {
            (s, false) => ScanPoint::Full(s),
            (s, true) => ScanPoint::Reduced(s),
        }),
        Err(e @ Error::ForwardSingularity(_)) => Ok(ScanPoint::Singular(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn grid_or(grid: Option<Grid>, single: Option<f64>, default: Grid) -> Vec<f64> {
    match (grid, single) {
        (Some(g), _) => g.values(),
        (None, Some(x)) => vec![x],
        (None, None) => default.values(),
    }
}

/// CSV rows `pmag,costheta,structure,re,im,residual`, ordered by `|p|`,
/// then `cos θ`, then structure. Points on a pole give `nan` rows; at
/// collinear points the spin-orbit and quartic structures are `nan`.
/// Warnings go to the returned list.
pub fn cmd_scan(cfg: &RunConfig, system: System) -> Result<(String, Vec<String>), Failure> {
    let pmags = grid_or(cfg.kinematics.pmag_grid, cfg.kinematics.pmag, DEFAULT_PMAG_GRID);
    let cosines = grid_or(cfg.kinematics.costheta_grid, cfg.kinematics.costheta, DEFAULT_COSTHETA_GRID);
    let points: Vec<(f64, f64)> = pmags
        .iter()
        .flat_map(|&p| cosines.iter().map(move |&c| (p, c)))
        .collect();
    let results: Vec<Result<ScanPoint, Failure>> = points
        .par_iter()
        .map(|&(p, c)| scan_point(cfg, system, p, c))
        .collect();

    let mut out = String::from("pmag,costheta,structure,re,im,residual\n");
    let mut warnings = Vec::new();
    let nan = f64::NAN;
    for (&(pmag, costheta), result) in points.iter().zip(results) {
        let values: [(f64, f64, f64); 4] = match result? {
            ScanPoint::Full(s) => s.as_array().map(|c| (c.re, c.im, s.residual)),
            ScanPoint::Reduced(s) => {
                warnings.push(format!("pmag={pmag} costheta={costheta}: collinear, reduced basis"));
                let a = s.as_array();
                [
                    (a[0].re, a[0].im, s.residual),
                    (a[1].re, a[1].im, s.residual),
                    (nan, nan, s.residual),
                    (nan, nan, s.residual),
                ]
            }
            ScanPoint::Singular(msg) => {
                warnings.push(format!("pmag={pmag} costheta={costheta}: {msg}"));
                [(nan, nan, nan); 4]
            }
        };
        for (name, (re, im, res)) in StructureCoefficients::NAMES.iter().zip(values) {
            let _ = writeln!(out, "{},{},{name},{},{},{}", num(pmag), num(costheta), num(re), num(im), num(res));
        }
    }
    Ok((out, warnings))
}

/// 17 significant digits, `nan` for NaN.
fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Serialize)]
struct RatioStats {
    structure: &'static str,
    mean: Complex64,
    /// `max |r − mean| / |mean|` over the grid.
    relative_spread: f64,
}

#[derive(Serialize)]
struct CoincidenceSummary {
    /// Largest `|c_B − c_F|/|c_F|` per structure over the grid, direct plus
    /// crossed boson amplitude against the fermion amplitude.
    max_relative_differences: [f64; 4],
    /// Grid points with `k ⊥ p`, where the crossed tensor coefficient is
    /// checked against `g² Δ′²/(2M(Δ0′ − M))`.
    perpendicular_points: usize,
    perpendicular_max_residual: f64,
    /// Largest relative gap between `1/(2M(Δ0−M)) − 1/(2M(Δ0+M))` and `1/Δ²`.
    denominator_split_max_residual: f64,
}

#[derive(Serialize)]
struct CompareOutput {
    v: u32,
    mass: f64,
    couplings: CouplingSet,
    points: usize,
    skipped: usize,
    ratios: Vec<RatioStats>,
    tensor_ratio_tolerance: f64,
    tensor_ratio_pass: bool,
    coincidence: CoincidenceSummary,
}

/// Substitution-rule statistics over the grid plus the coincidence
/// summary. The flag is the tensor-ratio constancy check.
pub fn cmd_compare(cfg: &RunConfig) -> Result<(String, bool, Vec<String>), Failure> {
    let pmags = grid_or(cfg.kinematics.pmag_grid, cfg.kinematics.pmag, DEFAULT_PMAG_GRID);
    let cosines = grid_or(cfg.kinematics.costheta_grid, cfg.kinematics.costheta, DEFAULT_COSTHETA_GRID);
    let tol = cfg.run.tol.unwrap_or(1e-8);
    let mass = cfg.masses.big_m;
    let couplings = cfg.couplings;

    let points: Vec<(f64, f64)> = pmags
        .iter()
        .flat_map(|&p| cosines.iter().map(move |&c| (p, c)))
        .collect();
    let evaluated: Vec<_> = points
        .par_iter()
        .map(|&(pmag, costheta)| -> Result<_, Error> {
            let (p, k) = cms_pair(mass, pmag, costheta)?;
            Ok((substitution_compare(&p, &k, &couplings)?, coincidence_report(&p, &k, &couplings)?))
        })
        .collect();

    let mut warnings = Vec::new();
    let mut comparisons = Vec::new();
    let mut coincidences = Vec::new();
    for (&(pmag, costheta), r) in points.iter().zip(evaluated) {
        match r {
            Ok((cmp, coin)) => {
                comparisons.push(cmp);
                coincidences.push(coin);
            }
            Err(e @ (Error::ForwardSingularity(_) | Error::DegenerateBasis(_))) => {
                warnings.push(format!("pmag={pmag} costheta={costheta}: skipped ({e})"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if comparisons.is_empty() {
        return Err(Failure::Kinematic("no admissible grid point (all forward or collinear)".into()));
    }

    let ratios: Vec<RatioStats> = (0..4)
        .map(|i| {
            let values: Vec<Complex64> = comparisons.iter().map(|c| c.ratios[i]).collect();
            let mean = values.iter().sum::<Complex64>() / values.len() as f64;
            let relative_spread = values
                .iter()
                .map(|r| (r - mean).norm() / mean.norm())
                .fold(0.0, f64::max);
            RatioStats {
                structure: StructureCoefficients::NAMES[i],
                mean,
                relative_spread,
            }
        })
        .collect();
    let tensor_ratio_pass = ratios[1].relative_spread <= tol;

    let mut max_rel = [0.0f64; 4];
    let mut perpendicular_points = 0;
    let mut perpendicular_max_residual: f64 = 0.0;
    let mut denominator_split_max_residual: f64 = 0.0;
    for c in &coincidences {
        for (m, d) in max_rel.iter_mut().zip(c.relative_differences) {
            *m = m.max(d);
        }
        if c.perpendicular {
            perpendicular_points += 1;
            let e = c.crossed_tensor_expected;
            perpendicular_max_residual = perpendicular_max_residual.max((c.crossed_tensor - e).norm() / e.abs());
        }
        let (lhs, rhs) = c.denominator_combination;
        denominator_split_max_residual = denominator_split_max_residual.max((lhs - rhs).abs() / rhs);
    }

    let out = CompareOutput {
        v: 1,
        mass,
        couplings,
        points: comparisons.len(),
        skipped: points.len() - comparisons.len(),
        ratios,
        tensor_ratio_tolerance: tol,
        tensor_ratio_pass,
        coincidence: CoincidenceSummary {
            max_relative_differences: max_rel,
            perpendicular_points,
            perpendicular_max_residual,
            denominator_split_max_residual,
        },
    };
    Ok((to_json(&out), tensor_ratio_pass, warnings))
}
