//! Report JSON, per-class CSV and plot series.

use std::io::Write;

use mcgdensity_core::certify::VerdictClass;
use mcgdensity_core::density::{ConditionStar, CurvePair, Generators, MultiplierSet, RadiusRow};
use mcgdensity_core::mapping_class::SurfaceFixture;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;

pub const REPORT_SCHEMA: &str = "mcgdensity-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    /// The effective configuration, overrides applied.
    pub config: RunConfig,
    pub surface: SurfaceFixture,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_star: Option<ConditionStar>,
    pub generators: Generators,
    pub curve_pair: CurvePair,
    pub multiplier_set: MultiplierSet,
    pub per_radius: Vec<RadiusRow>,
    /// False when the ball cap cut enumeration short.
    pub complete: bool,
    pub certificates_dir: Option<String>,
}

impl Report {
    /// Every radius up to the configured one is present and exact.
    pub fn is_complete(&self) -> bool {
        self.complete && self.per_radius.last().map(|r| r.radius) == Some(self.config.radius)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let r: Report = serde_json::from_str(text)
            .map_err(|e| CliError::Precondition(format!("report: line {}, column {}: {e}", e.line(), e.column())))?;
        if r.schema != REPORT_SCHEMA {
            return Err(CliError::Precondition(format!("report schema `{}` is not `{REPORT_SCHEMA}`", r.schema)));
        }
        Ok(r)
    }

    /// One row per radius and verdict class, plus exceptional counts.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(["R", "class", "count", "density"]).map_err(err)?;
        for row in &self.per_radius {
            let total = row.counts.total as f64;
            let classes = VerdictClass::ALL.iter().map(|&c| (c.name(), row.counts.of_class(c)));
            for (name, n) in classes.chain([("exceptional", row.counts.exceptional)]) {
                w.write_record([row.radius.to_string(), name.to_string(), n.to_string(), (n as f64 / total).to_string()])
                    .map_err(err)?;
            }
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    /// `R, certified_density, combined_density, paper_bound`; refuses
    /// incomplete reports.
    pub fn write_plot<W: Write>(&self, out: W) -> Result<(), CliError> {
        if !self.is_complete() {
            return Err(CliError::Precondition("report is incomplete; refusing to emit plot data".into()));
        }
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(["R", "certified_density", "combined_density", "paper_bound"]).map_err(err)?;
        for row in &self.per_radius {
            w.write_record([
                row.radius.to_string(),
                row.densities.certified.to_string(),
                row.densities.combined.to_string(),
                format!("{:e}", row.bound.value),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}
