use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("resolution {0} must be even and at least 8")]
    Resolution(usize),
    #[error("resolution {resolution} is below 8 x {modes} modes")]
    TooFewSamples { resolution: usize, modes: usize },
    #[error("at least one Fourier mode is required")]
    NoModes,
    #[error("{name} = {value} must lie in (0, 1e-2)")]
    Step { name: &'static str, value: f64 },
    #[error("tolerance override `{0}` is not of the form id=value")]
    TolSyntax(String),
    #[error("tolerance for `{id}` must be positive, got {value}")]
    TolValue { id: String, value: f64 },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Spectral,
    Jetforms,
    Circlemaps,
    Curves,
    Cohomology,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Spectral, Suite::Jetforms, Suite::Circlemaps, Suite::Curves, Suite::Cohomology];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Spectral => "spectral",
            Suite::Jetforms => "jetforms",
            Suite::Circlemaps => "circlemaps",
            Suite::Curves => "curves",
            Suite::Cohomology => "cohomology",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tree,
    Csv,
}

/// `id=value` tolerance override.
#[derive(Debug, Clone, PartialEq)]
pub struct TolOverride {
    pub id: String,
    pub value: f64,
}

impl FromStr for TolOverride {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (id, value) = s.split_once('=').ok_or_else(|| ConfigError::TolSyntax(s.to_owned()))?;
        let value: f64 = value.trim().parse().map_err(|_| ConfigError::TolSyntax(s.to_owned()))?;
        Ok(Self { id: id.trim().to_owned(), value })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub resolution: usize,
    pub modes: usize,
    pub eps: f64,
    pub eta: f64,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub out: PathBuf,
    pub format: Format,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            resolution: jetmoment::DEFAULT_RESOLUTION,
            modes: 4,
            eps: jetmoment::DEFAULT_EPS,
            eta: jetmoment::jetforms::DEFAULT_ETA,
            suites: Suite::ALL.to_vec(),
            seed: 42,
            out: PathBuf::from("jetmoment-out"),
            format: Format::Tree,
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.resolution < 8 || !self.resolution.is_multiple_of(2) {
            return Err(ConfigError::Resolution(self.resolution));
        }
        if self.modes == 0 {
            return Err(ConfigError::NoModes);
        }
        if self.resolution < 8 * self.modes {
            return Err(ConfigError::TooFewSamples { resolution: self.resolution, modes: self.modes });
        }
        for (name, value) in [("eps", self.eps), ("eta", self.eta)] {
            if !(value > 0.0 && value < 1e-2) {
                return Err(ConfigError::Step { name, value });
            }
        }
        for (id, &value) in &self.tolerances {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::TolValue { id: id.clone(), value });
            }
        }
        Ok(())
    }

    pub fn with_overrides(mut self, overrides: &[TolOverride]) -> Self {
        for o in overrides {
            self.tolerances.insert(o.id.clone(), o.value);
        }
        self
    }

    /// Tolerance for a check, honoring overrides.
    pub fn tolerance(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        assert!(matches!(RunConfig { eps: 0.0, ..ok.clone() }.validate(), Err(ConfigError::Step { name: "eps", .. })));
        assert!(RunConfig { eta: 0.05, ..ok.clone() }.validate().is_err());
        assert!(matches!(
            RunConfig { resolution: 16, modes: 3, ..ok.clone() }.validate(),
            Err(ConfigError::TooFewSamples { .. })
        ));
        assert!(RunConfig { resolution: 15, ..ok.clone() }.validate().is_err());
        let bad_tol = ok.with_overrides(&["cohomology.cocycle=-1".parse().unwrap()]);
        assert!(bad_tol.validate().is_err());
    }

    #[test]
    fn parses_overrides_and_suites() {
        let o: TolOverride = "curves.f1 = 1e-3".parse().unwrap();
        assert_eq!(o, TolOverride { id: "curves.f1".into(), value: 1e-3 });
        assert!("nonsense".parse::<TolOverride>().is_err());
        assert_eq!("cohomology".parse::<Suite>().unwrap(), Suite::Cohomology);
        assert!("sections".parse::<Suite>().is_err());
    }
}
