use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bohr::{CoefficientClass, FunctionalId};
use crate::error::Result;
use crate::extremals::Witness;
use crate::theorem::TheoremId;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Process exit code for the verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Violated => 1,
            Self::Certified | Self::Inconclusive => 0,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Certified => "Certified",
            Self::Violated => "Violated",
            Self::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    /// `None` for theorems that do not read `m`.
    pub m: Option<f64>,
    pub n: usize,
    pub d: Vec<f64>,
    pub class: CoefficientClass,
    pub functional: FunctionalId,
    pub weight: String,
    /// `L(d)`, reported for the area-term functional only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportGrid {
    pub r: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub order: usize,
    pub a_ladder: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxArg {
    pub r: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub theorem_id: TheoremId,
    pub params: ReportParams,
    pub radius: f64,
    pub grid: ReportGrid,
    /// Largest functional value below the radius, at the point where value
    /// plus tail is largest.
    pub max_value: Option<f64>,
    pub max_arg: Option<MaxArg>,
    pub tail_bound: Option<f64>,
    pub extremal_limit_at_radius: Option<f64>,
    pub witness: Option<Witness>,
    pub verdict: Verdict,
    pub explanation: String,
}

impl VerificationReport {
    /// `max_value + tail_bound`.
    pub fn certified_bound(&self) -> Option<f64> {
        Some(self.max_value? + self.tail_bound?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!("{:<4}", self.theorem_id.label());
        if let Some(m) = self.params.m {
            s += &format!(" m={m}");
        }
        if self.params.n > 0 {
            s += &format!(" N={}", self.params.n);
        }
        s += &format!("  radius={:.12}", self.radius);
        if let Some(b) = self.certified_bound() {
            s += &format!("  max+tail={b:.12}");
        }
        if let Some(w) = &self.witness {
            s += &format!("  witness={:.6}@{:.4}", w.value, w.r);
        }
        s += &format!("  {}", self.verdict);
        s
    }
}

/// Writes one report as a JSON object, several as an array.
pub fn write_reports_json(path: impl AsRef<Path>, reports: &[VerificationReport]) -> Result<()> {
    let text = match reports {
        [one] => serde_json::to_string_pretty(one)?,
        many => serde_json::to_string_pretty(many)?,
    };
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Overall exit code: 1 if any report is violated.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    reports
        .iter()
        .map(|r| r.verdict.exit_code())
        .max()
        .unwrap_or(0)
}
