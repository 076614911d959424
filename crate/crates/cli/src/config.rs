//! Run configuration: one declarative file, flag overrides on top.

use std::path::Path;

use mcgdensity_core::certify::ClassifierConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub genus: usize,
    /// `humphries` for the standard chain, or the path of a surface fixture.
    pub alphabet: String,
    pub radius: usize,
    /// Ball enumeration stops after this many elements.
    pub ball_cap: usize,
    pub classifier: Classifier,
    /// Requested twist exponents; raised to a multiple of at least 7.
    pub k_a: u64,
    pub k_b: u64,
    /// Longest word searched for a filling partner curve.
    pub pair_search: usize,
    pub subgroup: Subgroup,
    pub outputs: Outputs,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            genus: 2,
            alphabet: "humphries".into(),
            radius: 3,
            ball_cap: 20_000,
            classifier: Classifier::default(),
            k_a: 1,
            k_b: 1,
            pair_search: 6,
            subgroup: Subgroup::default(),
            outputs: Outputs::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Classifier {
    pub iter_cap: usize,
    pub epsilon: f64,
    pub window: usize,
    pub tolerance: f64,
    pub fathi_depth: usize,
}

impl Default for Classifier {
    fn default() -> Self {
        let c = ClassifierConfig::default();
        Classifier { iter_cap: c.iter_cap, epsilon: c.epsilon, window: c.window, tolerance: c.tolerance, fathi_depth: c.fathi_depth }
    }
}

impl From<&Classifier> for ClassifierConfig {
    fn from(c: &Classifier) -> Self {
        ClassifierConfig { iter_cap: c.iter_cap, epsilon: c.epsilon, window: c.window, tolerance: c.tolerance, fathi_depth: c.fathi_depth }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Generators must act trivially on homology.
    TorelliKernel,
    /// The twist powers must themselves be generators.
    Words,
}

/// The subgroup for `subgroup-density`. Curves `d` and `e` (separating,
/// filling) are appended to the alphabet before names are resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Subgroup {
    pub mode: Mode,
    /// Generator words such as `T6` or `T1^2 T3`; empty means `T_a, T_b`.
    pub generators: Vec<String>,
    pub a: String,
    pub b: String,
}

impl Default for Subgroup {
    fn default() -> Self {
        Subgroup { mode: Mode::TorelliKernel, generators: Vec::new(), a: "d".into(), b: "e".into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub report: Option<String>,
    pub csv: Option<String>,
    pub certificates_dir: Option<String>,
}

impl RunConfig {
    /// Reads TOML, or JSON when the extension is `.json`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let shown = path.display();
        if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| {
                CliError::Config(format!("{shown}: line {}, column {}: {e}", e.line(), e.column()))
            })
        } else {
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{shown}: {e}")))
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let field = |name: &str, why: &str| Err(CliError::Config(format!("field `{name}`: {why}")));
        if self.genus < 2 {
            return field("genus", "must be at least 2");
        }
        if self.alphabet.is_empty() {
            return field("alphabet", "must be `humphries` or a fixture path");
        }
        if self.ball_cap == 0 {
            return field("ball_cap", "must be positive");
        }
        if self.k_a == 0 {
            return field("k_a", "must be positive");
        }
        if self.k_b == 0 {
            return field("k_b", "must be positive");
        }
        if self.pair_search == 0 {
            return field("pair_search", "must be positive");
        }
        let c = &self.classifier;
        if c.iter_cap < 8 {
            return field("classifier.iter_cap", "must be at least 8");
        }
        if !(c.epsilon > 0.0 && c.epsilon.is_finite()) {
            return field("classifier.epsilon", "must be positive");
        }
        if c.window == 0 {
            return field("classifier.window", "must be positive");
        }
        if !(c.tolerance > 0.0 && c.tolerance.is_finite()) {
            return field("classifier.tolerance", "must be positive");
        }
        if c.fathi_depth == 0 {
            return field("classifier.fathi_depth", "must be positive");
        }
        if self.subgroup.a == self.subgroup.b {
            return field("subgroup.b", "must differ from subgroup.a");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let mut c = RunConfig::default();
        c.outputs.report = Some("out.json".into());
        c.subgroup.generators = vec!["T6".into(), "T7".into()];
        let text = toml::to_string(&c).unwrap();
        assert_eq!(toml::from_str::<RunConfig>(&text).unwrap(), c);
    }

    #[test]
    fn partial_files_take_defaults() {
        let c: RunConfig = toml::from_str("radius = 1\n[classifier]\nwindow = 3\n").unwrap();
        assert_eq!(c.radius, 1);
        assert_eq!(c.classifier.window, 3);
        assert_eq!(c.classifier.iter_cap, Classifier::default().iter_cap);
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let e = toml::from_str::<RunConfig>("radius = 1\nradios = 2\n").unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("radios"), "{e}");
        let e = toml::from_str::<RunConfig>("radius = \"three\"\n").unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
        let c = RunConfig { ball_cap: 0, ..RunConfig::default() };
        assert!(c.validate().unwrap_err().to_string().contains("ball_cap"));
    }
}
