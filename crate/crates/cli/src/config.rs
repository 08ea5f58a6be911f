//! Scenario files.
//!
//! A scenario names a group by its invariant factors, the two lattices by
//! generator tuples, and the window by a tagged spec:
//!
//! ```json
//! {"group": [8],
//!  "lambda": {"generators": [[2]]},
//!  "gamma": {"generators": [[4]]},
//!  "window": {"kind": "delta"}}
//! ```
//!
//! Errors carry the JSON path of the offending value.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use gaborlab_core::numerics::DEFAULT_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    /// JSON path such as `window.values` or `lambda.generators[0]`.
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Invariant factors `n_1, ..., n_k`.
    pub group: Vec<usize>,
    pub lambda: LatticeSpec,
    pub gamma: LatticeSpec,
    pub window: WindowSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_window: Option<WindowSpec>,
    #[serde(default = "CheckName::all")]
    pub checks: Vec<CheckName>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    /// Each generator is a coordinate tuple with one entry per factor.
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WindowSpec {
    /// Values in canonical index order; `im` defaults to zero.
    Explicit {
        re: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        im: Option<Vec<f64>>,
    },
    /// Unit mass at `at` (the origin if omitted).
    Delta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        at: Option<Vec<usize>>,
    },
    Constant {
        #[serde(default = "one")]
        value: f64,
    },
    /// SplitMix64 stream, real then imaginary part, each uniform in `[-1, 1)`.
    Random { seed: u64 },
    /// Parseval window for `Lambda` built from `order` positive factors given
    /// on the transversal of `Lambda`.
    Bspline { order: usize, factors: Vec<Vec<f64>> },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Bounds,
    Walnut,
    Janssen,
    Figa,
    WexlerRaz,
    Duality,
    Calderon,
    Critical,
    BesselEstimate,
    Zz,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::Bounds,
        CheckName::Walnut,
        CheckName::Janssen,
        CheckName::Figa,
        CheckName::WexlerRaz,
        CheckName::Duality,
        CheckName::Calderon,
        CheckName::Critical,
        CheckName::BesselEstimate,
        CheckName::Zz,
    ];

    pub fn all() -> Vec<CheckName> {
        Self::ALL.to_vec()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Bounds => "bounds",
            CheckName::Walnut => "walnut",
            CheckName::Janssen => "janssen",
            CheckName::Figa => "figa",
            CheckName::WexlerRaz => "wexler_raz",
            CheckName::Duality => "duality",
            CheckName::Calderon => "calderon",
            CheckName::Critical => "critical",
            CheckName::BesselEstimate => "bessel_estimate",
            CheckName::Zz => "zz",
        }
    }

    pub fn parse(name: &str) -> Option<CheckName> {
        Self::ALL.into_iter().find(|c| c.as_str() == name)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parses and validates a scenario.
///
/// Everything that can be checked without building the group happens here;
/// the order cap and the B-spline construction are checked when the
/// scenario is built.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "(root)".to_string() } else { path };
        ConfigError::new(path, e.into_inner().to_string())
    })?;
    config.validate()?;
    Ok(config)
}

impl ScenarioConfig {
    /// Product of the invariant factors, if it fits in `usize`.
    pub fn group_order(&self) -> Option<usize> {
        self.group.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.group.is_empty() {
            return Err(ConfigError::new("group", "needs at least one invariant factor"));
        }
        for (i, &n) in self.group.iter().enumerate() {
            if n == 0 {
                return Err(ConfigError::new(format!("group[{i}]"), "invariant factors must be >= 1"));
            }
        }
        let order = self
            .group_order()
            .ok_or_else(|| ConfigError::new("group", "group order overflows"))?;
        self.check_tuples("lambda.generators", &self.lambda.generators)?;
        self.check_tuples("gamma.generators", &self.gamma.generators)?;
        self.check_window("window", &self.window, order)?;
        if let Some(d) = &self.dual_window {
            self.check_window("dual_window", d, order)?;
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(ConfigError::new("tolerance", "must be a positive finite number"));
        }
        if self.checks.is_empty() {
            return Err(ConfigError::new("checks", "at least one check is required"));
        }
        if self.max_order == Some(0) {
            return Err(ConfigError::new("max_order", "must be positive"));
        }
        Ok(())
    }

    fn check_tuple(&self, path: &str, coords: &[usize]) -> Result<(), ConfigError> {
        if coords.len() != self.group.len() {
            return Err(ConfigError::new(
                path,
                format!("expected {} coordinates, got {}", self.group.len(), coords.len()),
            ));
        }
        for (j, (&c, &n)) in coords.iter().zip(&self.group).enumerate() {
            if c >= n {
                return Err(ConfigError::new(format!("{path}[{j}]"), format!("coordinate {c} is not below {n}")));
            }
        }
        Ok(())
    }

    fn check_tuples(&self, path: &str, gens: &[Vec<usize>]) -> Result<(), ConfigError> {
        for (i, g) in gens.iter().enumerate() {
            self.check_tuple(&format!("{path}[{i}]"), g)?;
        }
        Ok(())
    }

    fn check_window(&self, path: &str, spec: &WindowSpec, order: usize) -> Result<(), ConfigError> {
        match spec {
            WindowSpec::Explicit { re, im } => {
                let im_len = im.as_ref().map_or(re.len(), Vec::len);
                if re.len() != order || im_len != order {
                    return Err(ConfigError::new(
                        format!("{path}.values"),
                        format!("expected {order} values (the group order), got re {} and im {im_len}", re.len()),
                    ));
                }
                let finite = re.iter().chain(im.iter().flatten()).all(|v| v.is_finite());
                if !finite {
                    return Err(ConfigError::new(format!("{path}.values"), "values must be finite"));
                }
            }
            WindowSpec::Delta { at: Some(at) } => self.check_tuple(&format!("{path}.at"), at)?,
            WindowSpec::Delta { at: None } | WindowSpec::Random { .. } => {}
            WindowSpec::Constant { value } => {
                if !value.is_finite() {
                    return Err(ConfigError::new(format!("{path}.value"), "must be finite"));
                }
            }
            WindowSpec::Bspline { order: r, factors } => {
                if *r == 0 {
                    return Err(ConfigError::new(format!("{path}.order"), "must be at least 1"));
                }
                if factors.len() != *r {
                    return Err(ConfigError::new(
                        format!("{path}.factors"),
                        format!("order {r} needs {r} factors, got {}", factors.len()),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Parses `"n1,n2,..."` into invariant factors.
pub fn parse_group_list(text: &str) -> Result<Vec<usize>, ConfigError> {
    let mut out = Vec::new();
    for (i, part) in text.split(',').enumerate() {
        let part = part.trim();
        let n: usize = part
            .parse()
            .map_err(|_| ConfigError::new(format!("group[{i}]"), format!("{part:?} is not a positive integer")))?;
        if n == 0 {
            return Err(ConfigError::new(format!("group[{i}]"), "invariant factors must be >= 1"));
        }
        out.push(n);
    }
    Ok(out)
}
