use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bohr::{BohrParams, WeightFamily};
use crate::error::{Error, Result};
use crate::extremals::{self, ExtremalSpec};
use crate::quaternion::Quaternion;
use crate::radii;
use crate::series::QSeries;
use crate::theorem::TheoremId;

/// A JSON configuration document.
///
/// `d` takes precedence over `n`; with only `n` given, the coefficients are
/// the boundary choice `L(d) = m` split evenly.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesConfig>,
}

/// `"monomial"`, or a full weight family such as `{"monomial": [0,1,0,0]}`
/// or `{"user_series": [[[0,0,0,0],[1,0,0,0]], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightConfig {
    Name(String),
    Family(WeightFamily),
}

impl WeightConfig {
    pub fn resolve(&self) -> Result<WeightFamily> {
        match self {
            Self::Name(n) if n == "monomial" => Ok(WeightFamily::Monomial(Quaternion::ONE)),
            Self::Name(n) => Err(Error::UnknownName {
                kind: "weight family",
                name: n.clone(),
            }),
            Self::Family(w) => Ok(w.clone()),
        }
    }
}

/// A coefficient literal or an extremal family spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesConfig {
    Literal(QSeries),
    Extremal(ExtremalSpec),
}

impl SeriesConfig {
    pub fn resolve(&self) -> Result<QSeries> {
        match self {
            Self::Literal(s) => Ok(s.clone()),
            Self::Extremal(spec) => extremals::build(spec),
        }
    }
}

impl Config {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn params(&self) -> Result<BohrParams> {
        let m = self.m.unwrap_or(1.0);
        let d = match (&self.d, self.n) {
            (Some(d), Some(n)) if d.len() != n => {
                return Err(Error::InvalidArgument(format!(
                    "n = {n} but d has {} entries",
                    d.len()
                )))
            }
            (Some(d), _) => d.clone(),
            (None, Some(n)) => radii::boundary_d(n, m)?,
            (None, None) => Vec::new(),
        };
        let weight = match &self.weight {
            Some(w) => w.resolve()?,
            None => WeightFamily::default(),
        };
        Ok(BohrParams::new(m, d)?.with_weight(weight))
    }
}
