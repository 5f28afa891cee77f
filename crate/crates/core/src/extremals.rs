//! Extremal families as explicit coefficient sequences, with exact
//! closed-form functional values.
//!
//! Coefficients come from the closed forms. `build_by_star_algebra` rebuilds
//! each family from regular reciprocals and star products and serves as a
//! cross-check of the series module.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bohr::{check_m, check_radius, BohrParams, FunctionalId};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::series::{power_tail, QSeries};
use crate::theorem::TheoremId;

pub const DEFAULT_ORDER: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `q(1 − qu)^{−*2}`, `p_k = k u^{k−1}`.
    StarlikeKoebe,
    /// `q(1 − qu)^{−*}`, `p_k = u^{k−1}`.
    GeomCayley,
    /// `p₀ = a`, `p_k = −(1 − a²) a^{k−1} u`.
    MobiusLike,
    /// `a − 2(1 − a) q(1 − q)^{−*} u`, `p_k = −2(1 − a) u`.
    HalfSpaceMap,
}

impl Family {
    pub const ALL: [Self; 4] = [
        Self::StarlikeKoebe,
        Self::GeomCayley,
        Self::MobiusLike,
        Self::HalfSpaceMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::StarlikeKoebe => "starlike_koebe",
            Self::GeomCayley => "geom_cayley",
            Self::MobiusLike => "mobius_like",
            Self::HalfSpaceMap => "half_space_map",
        }
    }

    pub fn has_parameter(self) -> bool {
        matches!(self, Self::MobiusLike | Self::HalfSpaceMap)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "starlike_koebe" | "koebe" => Ok(Self::StarlikeKoebe),
            "geom_cayley" | "cayley" | "geometric" => Ok(Self::GeomCayley),
            "mobius_like" | "mobius" => Ok(Self::MobiusLike),
            "half_space_map" | "half_space" | "halfspace" => Ok(Self::HalfSpaceMap),
            _ => Err(Error::UnknownName {
                kind: "extremal family",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub family: Family,
    /// Ignored by the parameter-free families.
    #[serde(default)]
    pub a: f64,
    #[serde(default = "default_u")]
    pub u: Quaternion,
    #[serde(default = "default_order")]
    pub order: usize,
}

fn default_u() -> Quaternion {
    Quaternion::ONE
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

impl ExtremalSpec {
    pub fn new(family: Family, a: f64, u: Quaternion, order: usize) -> Self {
        Self {
            family,
            a,
            u,
            order,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if (self.u.modulus() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(format!(
                "|u| = {} is not 1",
                self.u.modulus()
            )));
        }
        if self.order < 1 {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        check_a(self.family, self.a)
    }
}

/// `a ∈ [0, 1)` for the Möbius family; the half-space map also admits the
/// degenerate `a = 1`, the constant 1.
fn check_a(family: Family, a: f64) -> Result<()> {
    let ok = match family {
        Family::StarlikeKoebe | Family::GeomCayley => true,
        Family::MobiusLike => (0.0..1.0).contains(&a),
        Family::HalfSpaceMap => (0.0..=1.0).contains(&a),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!(
            "a = {a} out of range for {family}"
        )))
    }
}

/// Truncated coefficients from the closed forms.
pub fn build(spec: &ExtremalSpec) -> Result<QSeries> {
    spec.validate()?;
    let (a, u) = (spec.a, spec.u);
    let tail = |k: usize| -> Quaternion {
        match spec.family {
            Family::StarlikeKoebe => u.powi(k as u32 - 1) * k as f64,
            Family::GeomCayley => u.powi(k as u32 - 1),
            Family::MobiusLike => u * (-(1.0 - a * a) * a.powi(k as i32 - 1)),
            Family::HalfSpaceMap => u * (-2.0 * (1.0 - a)),
        }
    };
    let p0 = match spec.family {
        Family::StarlikeKoebe | Family::GeomCayley => Quaternion::ZERO,
        Family::MobiusLike | Family::HalfSpaceMap => Quaternion::real(a),
    };
    let mut coeffs = Vec::with_capacity(spec.order + 1);
    coeffs.push(p0);
    coeffs.extend((1..=spec.order).map(tail));
    Ok(QSeries::new(coeffs))
}

/// The same coefficients assembled from regular reciprocals and star
/// products.
pub fn build_by_star_algebra(spec: &ExtremalSpec) -> Result<QSeries> {
    spec.validate()?;
    let (a, u, order) = (spec.a, spec.u, spec.order);
    let one_minus = |c: Quaternion| QSeries::new(vec![Quaternion::ONE, -c]);
    let out = match spec.family {
        Family::StarlikeKoebe => {
            let g = one_minus(u).regular_reciprocal(order - 1)?;
            g.star_truncated(&g, order - 1).shift()
        }
        Family::GeomCayley => one_minus(u).regular_reciprocal(order - 1)?.shift(),
        Family::MobiusLike => one_minus(Quaternion::real(a))
            .regular_reciprocal(order - 1)?
            .shift()
            .mul_right(u * -(1.0 - a * a))
            .add(&QSeries::constant(Quaternion::real(a))),
        Family::HalfSpaceMap => one_minus(Quaternion::ONE)
            .regular_reciprocal(order - 1)?
            .shift()
            .mul_right(u * (-2.0 * (1.0 - a)))
            .add(&QSeries::constant(Quaternion::real(a))),
    };
    Ok(out)
}

/// Exact value of `functional` on the untruncated member of `family`.
///
/// Only `m` and `d` of `params` are read; the weights are monomial.
pub fn closed_form_value(
    family: Family,
    functional: FunctionalId,
    r: f64,
    a: f64,
    params: &BohrParams,
) -> Result<f64> {
    check_radius(r)?;
    check_a(family, a).or_else(|e| {
        if a == 1.0 && family == Family::MobiusLike {
            Ok(())
        } else {
            Err(e)
        }
    })?;
    if let Some(hi) = functional.m_range() {
        check_m(params.m, hi)?;
    }
    let undefined = || Error::UndefinedPairing {
        family: family.name().into(),
        functional: functional.name().into(),
    };
    let x = r * r;
    use FunctionalId as F;
    let v = match (family, functional) {
        (Family::StarlikeKoebe, F::Bohr | F::K) => r / ((1.0 - r) * (1.0 - r)),
        (Family::StarlikeKoebe, F::SStar) => power_tail(x, 0, 3),
        (Family::GeomCayley, F::Bohr | F::K) => r / (1.0 - r),
        (Family::GeomCayley, F::SStar) => x / ((1.0 - x) * (1.0 - x)),
        (Family::MobiusLike, F::Bohr) => a + mobius_sum(a, r),
        (Family::MobiusLike, F::K) => a.powf(params.m) + mobius_sum(a, r),
        (Family::MobiusLike, F::L) => a.powf(params.m) + (1.0 - a * a) * r / (1.0 - r),
        (Family::MobiusLike, F::M) => {
            a.powf(params.m) + mobius_sum(a, r) + params.q_poly(mobius_area(a, r))
        }
        (Family::MobiusLike, F::SStar) => mobius_area(a, r),
        (Family::HalfSpaceMap, F::Bohr) => a + 2.0 * (1.0 - a) * r / (1.0 - r),
        (Family::HalfSpaceMap, F::N) => {
            a + 2.0 * (1.0 - a) * r / (1.0 - r)
                + (1.0 / (1.0 + a) + r / (1.0 - r)) * 4.0 * (1.0 - a) * (1.0 - a) * x / (1.0 - x)
        }
        (Family::HalfSpaceMap, F::SStar) => {
            4.0 * (1.0 - a) * (1.0 - a) * x / ((1.0 - x) * (1.0 - x))
        }
        _ => return Err(undefined()),
    };
    Ok(v)
}

/// `(1 − a²) r/(1 − a r)`.
fn mobius_sum(a: f64, r: f64) -> f64 {
    (1.0 - a * a) * r / (1.0 - a * r)
}

/// `(1 − a²)² r²/(1 − a² r²)²`.
fn mobius_area(a: f64, r: f64) -> f64 {
    let s = (1.0 - a * a) * r / (1.0 - a * a * r * r);
    s * s
}

/// An extremal member whose functional value exceeds 1 at `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub spec: ExtremalSpec,
    pub r: f64,
    pub value: f64,
}

/// Searches the theorem's extremal family, along its `a`-ladder, for a
/// member whose functional exceeds 1 at `r > radius`. The rung with the
/// largest value is returned.
pub fn sharpness_witness(theorem: TheoremId, r: f64, params: &BohrParams) -> Result<Witness> {
    let params = theorem.effective_params(params);
    let radius = theorem.radius(&params)?;
    check_radius(r)?;
    if r <= radius {
        return Err(Error::WitnessBelowRadius { r, radius });
    }
    let family = theorem.family();
    let functional = theorem.functional();
    let ladder: &[f64] = if theorem.a_ladder().is_empty() {
        &[0.0]
    } else {
        theorem.a_ladder()
    };
    let mut best: Option<Witness> = None;
    for &a in ladder {
        let value = closed_form_value(family, functional, r, a, &params)?;
        if best.is_none_or(|b| value > b.value) {
            best = Some(Witness {
                spec: ExtremalSpec::new(family, a, Quaternion::ONE, DEFAULT_ORDER),
                r,
                value,
            });
        }
    }
    match best {
        Some(w) if w.value > 1.0 => Ok(w),
        _ => Err(Error::NoWitness {
            theorem: theorem.label().into(),
            r,
        }),
    }
}
