//! Run configuration: a JSON file merged with command-line overrides.
//!
//! ```json
//! {
//!   "masses": {"m": 1.0, "M": 1.0},
//!   "couplings": {"e": 1.0, "lambda": 0.0, "kappa": 0.0, "g_v": 1.0, "f_v": 0.0,
//!                 "g_S": 1.0, "g_V": 1.0, "g_T": 1.0, "mu": 0.0},
//!   "kinematics": {"pmag": 0.5, "costheta": 0.3,
//!                  "pmag_grid": "0.2:2:10", "costheta_grid": "-0.9:0.9:10"},
//!   "run": {"seed": 0, "trials": null, "tol": null},
//!   "output": {"path": null, "format": "json"}
//! }
//! ```
//!
//! Every field is optional. Units are natural, with momenta measured in
//! the same units as the masses.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use lobachevsky::currents::CouplingSet;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Masses {
    #[serde(default = "one")]
    pub m: f64,
    #[serde(rename = "M", default = "one")]
    pub big_m: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for Masses {
    fn default() -> Self {
        Self { m: 1.0, big_m: 1.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Kinematics {
    pub pmag: Option<f64>,
    pub costheta: Option<f64>,
    pub pmag_grid: Option<Grid>,
    pub costheta_grid: Option<Grid>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Run {
    #[serde(default)]
    pub seed: u64,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub masses: Masses,
    #[serde(default)]
    pub couplings: CouplingSet,
    #[serde(default)]
    pub kinematics: Kinematics,
    #[serde(default)]
    pub run: Run,
    #[serde(default)]
    pub output: Output,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), Failure> {
        for (name, m) in [("m", self.masses.m), ("M", self.masses.big_m)] {
            if !(m.is_finite() && m > 0.0) {
                return Err(Failure::Config(format!("mass {name} = {m} must be positive")));
            }
        }
        self.couplings.validate().map_err(|e| Failure::Config(e.to_string()))?;
        if let Some(c) = self.kinematics.costheta {
            check_costheta(c)?;
        }
        if let Some(p) = self.kinematics.pmag {
            check_pmag(p)?;
        }
        if let Some(g) = &self.kinematics.costheta_grid {
            g.values().into_iter().try_for_each(check_costheta)?;
        }
        if let Some(g) = &self.kinematics.pmag_grid {
            g.values().into_iter().try_for_each(check_pmag)?;
        }
        if self.run.trials == Some(0) {
            return Err(Failure::Config("trials must be at least 1".into()));
        }
        if let Some(t) = self.run.tol {
            if !(t >= 0.0) {
                return Err(Failure::Config(format!("tolerance {t} must be non-negative")));
            }
        }
        Ok(())
    }
}

fn check_costheta(c: f64) -> Result<(), Failure> {
    if c.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Failure::Config(format!("|cos θ| = {} exceeds 1", c.abs())))
    }
}

fn check_pmag(p: f64) -> Result<(), Failure> {
    if p.is_finite() && p >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Config(format!("|p| = {p} must be finite and non-negative")))
    }
}

/// Inclusive linear grid `start:stop:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub n: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        // Symmetric in the endpoints, so a reversed grid yields the same values.
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| match i {
                0 => self.start,
                i if i + 1 == self.n => self.stop,
                i => (self.start * (last - i as f64) + self.stop * i as f64) / last,
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("grid `{s}` is not of the form start:stop:n"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("grid `{s}`: {e}"));
        let (start, stop) = (num(a)?, num(b)?);
        let n: usize = n.trim().parse().map_err(|e| format!("grid `{s}`: {e}"))?;
        if n == 0 {
            return Err(format!("grid `{s}` is empty"));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(format!("grid `{s}` has non-finite bounds"));
        }
        Ok(Grid { start, stop, n })
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "-1:1:5".parse().unwrap();
        assert_eq!(g.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!("0.3:9:1".parse::<Grid>().unwrap().values(), vec![0.3]);
        assert!("1:2".parse::<Grid>().is_err());
        assert!("1:2:0".parse::<Grid>().is_err());
        assert!("a:2:3".parse::<Grid>().is_err());
    }

    #[test]
    fn config_json_round() {
        let c: RunConfig = serde_json::from_str(
            r#"{"masses":{"M":2.0},"couplings":{"g_S":0.5,"g_V":0.5,"g_T":0.5,"mu":0.1},
                "kinematics":{"pmag":0.4,"costheta_grid":"-0.5:0.5:3"},"run":{"seed":9},
                "output":{"format":"csv"}}"#,
        )
        .unwrap();
        assert_eq!(c.masses.m, 1.0);
        assert_eq!(c.masses.big_m, 2.0);
        assert_eq!(c.couplings.g_tensor, 0.5);
        assert_eq!(c.couplings.g_v, 1.0);
        assert_eq!(c.kinematics.costheta_grid.unwrap().n, 3);
        assert_eq!(c.output.format, Some(Format::Csv));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn invalid_configs() {
        let bad = |s: &str| {
            serde_json::from_str::<RunConfig>(s)
                .map_err(|_| ())
                .and_then(|c| c.validate().map_err(|_| ()))
                .is_err()
        };
        assert!(bad(r#"{"kinematics":{"costheta":1.5}}"#));
        assert!(bad(r#"{"masses":{"m":-1}}"#));
        assert!(bad(r#"{"run":{"trials":0}}"#));
        assert!(bad(r#"{"kinematics":{"pmag_grid":"1:2:0"}}"#));
        assert!(bad(r#"{"unknown":1}"#));
    }
}
