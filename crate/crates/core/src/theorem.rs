//! Catalogue of the certified inequalities: for each one, the coefficient
//! class, the functional, the radius and the extremal family used for
//! sharpness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bohr::{BohrParams, CoefficientClass, FunctionalId};
use crate::error::{Error, Result};
use crate::extremals::Family;
use crate::radii;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Bounded functions, `Σ |qᵏ p_k| ≤ 1` up to `1/3`.
    B,
    /// Starlike, `(3 − √5)/2`.
    T1_1,
    /// `q f′ ∈ 𝒮*`, `1/2`.
    T1_2,
    /// Close-to-convex, `(3 − √5)/2`.
    T1_3,
    /// Weighted `𝒦`, `m/(2+m)`.
    T1_4,
    /// Refined `ℒ`, `m/(2+m)`.
    T1_5,
    /// `𝓜` with the area term, `m/(2+m)` under `L(d) ≤ m`.
    T1_6,
    /// Half-space `𝒩`, `R*`.
    T1_7,
}

/// Ladder approaching `a → 1⁻`.
pub const LADDER_TO_ONE: [f64; 3] = [0.9, 0.99, 0.999];
/// Ladder approaching `a → 0⁺`.
pub const LADDER_TO_ZERO: [f64; 3] = [0.1, 0.01, 0.001];

impl TheoremId {
    pub const ALL: [Self; 8] = [
        Self::B,
        Self::T1_1,
        Self::T1_2,
        Self::T1_3,
        Self::T1_4,
        Self::T1_5,
        Self::T1_6,
        Self::T1_7,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::B => "B",
            Self::T1_1 => "1.1",
            Self::T1_2 => "1.2",
            Self::T1_3 => "1.3",
            Self::T1_4 => "1.4",
            Self::T1_5 => "1.5",
            Self::T1_6 => "1.6",
            Self::T1_7 => "1.7",
        }
    }

    pub fn class(self) -> CoefficientClass {
        match self {
            Self::T1_1 | Self::T1_3 => CoefficientClass::Starlike,
            Self::T1_2 => CoefficientClass::DerivStarlike,
            Self::B | Self::T1_4 | Self::T1_5 | Self::T1_6 => CoefficientClass::Bounded,
            Self::T1_7 => CoefficientClass::HalfSpace,
        }
    }

    pub fn functional(self) -> FunctionalId {
        match self {
            Self::B | Self::T1_1 | Self::T1_2 | Self::T1_3 => FunctionalId::Bohr,
            Self::T1_4 => FunctionalId::K,
            Self::T1_5 => FunctionalId::L,
            Self::T1_6 => FunctionalId::M,
            Self::T1_7 => FunctionalId::N,
        }
    }

    pub fn family(self) -> Family {
        match self {
            Self::T1_1 | Self::T1_3 => Family::StarlikeKoebe,
            Self::T1_2 => Family::GeomCayley,
            Self::B | Self::T1_4 | Self::T1_5 | Self::T1_6 => Family::MobiusLike,
            Self::T1_7 => Family::HalfSpaceMap,
        }
    }

    /// Whether the result depends on the exponent `m`.
    pub fn uses_m(self) -> bool {
        matches!(self, Self::T1_4 | Self::T1_5 | Self::T1_6)
    }

    /// Upper end of the admissible `m` range.
    pub fn m_max(self) -> f64 {
        match self {
            Self::T1_4 => 2.0,
            _ => 1.0,
        }
    }

    /// Values of `a` approaching the extremal limit; empty for families
    /// without a parameter. Sharpness for the half-space map is reached as
    /// `a → 0⁺`, where `Q(α, r)` is smallest.
    pub fn a_ladder(self) -> &'static [f64] {
        match self.family() {
            Family::StarlikeKoebe | Family::GeomCayley => &[],
            Family::MobiusLike => &LADDER_TO_ONE,
            Family::HalfSpaceMap => &LADDER_TO_ZERO,
        }
    }

    /// Endpoint of the ladder, where the closed forms extend continuously.
    pub fn a_limit(self) -> Option<f64> {
        match self.family() {
            Family::StarlikeKoebe | Family::GeomCayley => None,
            Family::MobiusLike => Some(1.0),
            Family::HalfSpaceMap => Some(0.0),
        }
    }

    /// The sharp radius.
    pub fn radius(self, params: &BohrParams) -> Result<f64> {
        Ok(match self {
            Self::B => radii::radius_classical().value,
            Self::T1_1 | Self::T1_3 => radii::radius_starlike().value,
            Self::T1_2 => radii::radius_deriv_starlike().value,
            Self::T1_4 => radii::radius_rm(params.m)?.value,
            Self::T1_5 | Self::T1_6 => {
                crate::bohr::check_m(params.m, 1.0)?;
                radii::radius_rm(params.m)?.value
            }
            Self::T1_7 => radii::radius_rstar().value,
        })
    }

    /// Parameters the functional is evaluated with. Only `𝒦`, `ℒ` and `𝓜`
    /// read `m`; theorem B is `𝒦` at `m = 1`.
    pub fn effective_params(self, params: &BohrParams) -> BohrParams {
        match self {
            Self::B | Self::T1_1 | Self::T1_2 | Self::T1_3 | Self::T1_7 => BohrParams {
                m: 1.0,
                d: Vec::new(),
                weight: params.weight.clone(),
            },
            Self::T1_4 | Self::T1_5 => BohrParams {
                d: Vec::new(),
                ..params.clone()
            },
            Self::T1_6 => params.clone(),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix("thm")
            .or_else(|| t.strip_prefix("Thm"))
            .unwrap_or(t)
            .trim_start_matches(['-', '_', ' ']);
        match t {
            "B" | "b" => Ok(Self::B),
            "1.1" => Ok(Self::T1_1),
            "1.2" => Ok(Self::T1_2),
            "1.3" => Ok(Self::T1_3),
            "1.4" => Ok(Self::T1_4),
            "1.5" => Ok(Self::T1_5),
            "1.6" => Ok(Self::T1_6),
            "1.7" => Ok(Self::T1_7),
            _ => Err(Error::UnknownTheorem(s.to_string())),
        }
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
