//! Run configuration shared by every command.

use std::collections::BTreeMap;
use std::path::PathBuf;

use normexp_core::group::DEFAULT_ORDER_CAP;
use normexp_core::growth::RANDOM_SWEEP_SIZE;
use normexp_core::spectral::DEFAULT_DENSE_CAP;
use normexp_core::{Error, Result};

/// Named tolerances and their defaults.
pub const TOLERANCES: &[(&str, f64)] = &[
    ("slack", 1e-9),
    ("specchi", 1e-6),
    ("frobenius", 1e-6),
    ("orthogonality", 1e-8),
    ("integrality", 1e-6),
    ("wlambda", 1e-8),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances(TOLERANCES.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }
}

impl Tolerances {
    /// Applies `name=value` overrides; unknown names and non-positive
    /// values are rejected.
    pub fn with_overrides(overrides: &[String]) -> Result<Self> {
        let mut t = Self::default();
        for item in overrides {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("tolerance {item:?} is not name=value")))?;
            let name = name.trim();
            if !t.0.contains_key(name) {
                let known: Vec<&str> = TOLERANCES.iter().map(|(k, _)| *k).collect();
                return Err(Error::Parse(format!("unknown tolerance {name:?}; known: {}", known.join(", "))));
            }
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("tolerance value {value:?} is not a number")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse(format!("tolerance {name} must be positive")));
            }
            t.0.insert(name.to_string(), v);
        }
        Ok(t)
    }

    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn map(&self) -> &BTreeMap<String, f64> {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub group: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub order_cap: usize,
    pub dense_cap: usize,
    /// Random draws used when a sweep cannot be exhaustive.
    pub sweep_cap: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: "A:5".into(),
            seed: 0,
            tolerances: Tolerances::default(),
            order_cap: DEFAULT_ORDER_CAP,
            dense_cap: DEFAULT_DENSE_CAP,
            sweep_cap: RANDOM_SWEEP_SIZE,
            out: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("order cap", self.order_cap), ("dense cap", self.dense_cap), ("sweep cap", self.sweep_cap)] {
            if v == 0 {
                return Err(Error::Parse(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let t = Tolerances::with_overrides(&["specchi=1e-5".into()]).unwrap();
        assert_eq!(t.get("specchi"), 1e-5);
        assert_eq!(t.get("slack"), 1e-9);
        assert!(Tolerances::with_overrides(&["nope=1".into()]).is_err());
        assert!(Tolerances::with_overrides(&["slack".into()]).is_err());
        assert!(Tolerances::with_overrides(&["slack=-1".into()]).is_err());
    }

    #[test]
    fn caps_must_be_positive() {
        let cfg = RunConfig {
            dense_cap: 0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }
}
