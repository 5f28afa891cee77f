//! Bohr-type majorant functionals, weight families and coefficient classes.
//!
//! Every functional depends on the point `q` only through `r = |q|` once the
//! weights are majorised, so the public entry points take a real radius.
//! Coefficient classes are described by the necessary coefficient bounds the
//! inequalities consume, not by full geometric membership: certifying over
//! the bound-defined superclass is the stronger statement.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric;
use crate::quaternion::{on_slice, random_unit, sample_sphere, Quaternion, ZERO_GUARD};
use crate::series::{power_tail, QSeries, TailBound};

/// Slack allowed on every coefficient bound.
pub const CLASS_SLACK: f64 = 1e-12;

/// A coefficient-bound regime for `|p_k|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientClass {
    /// `p₀ = 0`, `p₁ = 1`, `|p_k| ≤ k`.
    Starlike,
    /// `p₀ = 0`, `p₁ = 1`, `|p_k| ≤ 1`.
    DerivStarlike,
    /// `|p_k| ≤ 1 − |p₀|²`.
    Bounded,
    /// `p₀ ∈ [0, 1)` real, `|p_k| ≤ 2(1 − p₀)`.
    HalfSpace,
}

/// Outcome of a class check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCheck {
    pub valid: bool,
    pub first_violation: Option<usize>,
}

/// How `sample_class` picks coefficient moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Uniform in `[0, bound_k]`.
    Interior,
    /// Exactly `bound_k`.
    Boundary,
}

impl CoefficientClass {
    pub const ALL: [Self; 4] = [
        Self::Starlike,
        Self::DerivStarlike,
        Self::Bounded,
        Self::HalfSpace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Starlike => "starlike",
            Self::DerivStarlike => "deriv_starlike",
            Self::Bounded => "bounded",
            Self::HalfSpace => "half_space",
        }
    }

    /// True for the normalised classes with `p₀ = 0`, `p₁ = 1`.
    pub fn is_normalized(self) -> bool {
        matches!(self, Self::Starlike | Self::DerivStarlike)
    }

    /// `(c, j)` with `|p_k| ≤ c·kʲ` for `k ≥ 1`, given `t = |p₀|` (or `p₀`).
    pub fn bound_shape(self, t: f64) -> (f64, u32) {
        match self {
            Self::Starlike => (1.0, 1),
            Self::DerivStarlike => (1.0, 0),
            Self::Bounded => ((1.0 - t * t).max(0.0), 0),
            Self::HalfSpace => ((2.0 * (1.0 - t)).max(0.0), 0),
        }
    }

    /// Bound on `|p_k|` for `k ≥ 1`.
    pub fn bound(self, k: usize, t: f64) -> f64 {
        let (c, j) = self.bound_shape(t);
        c * (k as f64).powi(j as i32)
    }

    /// `t` as it enters the bounds: `|p₀|`, or `Re p₀` for the half-space class.
    fn p0_parameter(self, p0: Quaternion) -> f64 {
        match self {
            Self::HalfSpace => p0.re(),
            _ => p0.modulus(),
        }
    }

    pub fn validate(self, f: &QSeries) -> ClassCheck {
        let bad = |index| ClassCheck {
            valid: false,
            first_violation: Some(index),
        };
        let p0 = f.coeff(0);
        match self {
            Self::Starlike | Self::DerivStarlike => {
                if p0.modulus() > CLASS_SLACK {
                    return bad(0);
                }
                if f.coeff(1).max_abs_diff(Quaternion::ONE) > CLASS_SLACK {
                    return bad(1);
                }
            }
            Self::Bounded => {
                if p0.modulus() >= 1.0 {
                    return bad(0);
                }
            }
            Self::HalfSpace => {
                if p0.im_modulus() > CLASS_SLACK || !(0.0..1.0).contains(&p0.re()) {
                    return bad(0);
                }
            }
        }
        let t = self.p0_parameter(p0);
        let start = if self.is_normalized() { 2 } else { 1 };
        for (k, c) in f.coeffs().iter().enumerate().skip(start) {
            if c.modulus() > self.bound(k, t) + CLASS_SLACK {
                return bad(k);
            }
        }
        ClassCheck {
            valid: true,
            first_violation: None,
        }
    }

    /// Random member of the bound-defined class with order `order`.
    pub fn sample(self, order: usize, seed: u64, mode: SampleMode) -> QSeries {
        assert!(order >= 1, "sample_class needs order >= 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = Vec::with_capacity(order + 1);
        let t = match self {
            Self::Starlike | Self::DerivStarlike => {
                coeffs.push(Quaternion::ZERO);
                coeffs.push(Quaternion::ONE);
                0.0
            }
            Self::Bounded => {
                let t: f64 = rng.random();
                let p0 = random_unit(&mut rng) * t;
                coeffs.push(p0);
                p0.modulus()
            }
            Self::HalfSpace => {
                let t: f64 = rng.random();
                coeffs.push(Quaternion::real(t));
                t
            }
        };
        for k in coeffs.len()..=order {
            let bound = self.bound(k, t);
            let modulus = match mode {
                SampleMode::Interior => bound * rng.random::<f64>(),
                SampleMode::Boundary => bound,
            };
            coeffs.push(random_unit(&mut rng) * modulus);
        }
        QSeries::new(coeffs)
    }
}

impl fmt::Display for CoefficientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoefficientClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "starlike" | "close_to_convex" => Ok(Self::Starlike),
            "deriv_starlike" | "derivstarlike" => Ok(Self::DerivStarlike),
            "bounded" => Ok(Self::Bounded),
            "half_space" | "halfspace" => Ok(Self::HalfSpace),
            _ => Err(Error::UnknownName {
                kind: "coefficient class",
                name: s.to_string(),
            }),
        }
    }
}

pub fn validate_class(f: &QSeries, class: CoefficientClass) -> ClassCheck {
    class.validate(f)
}

pub fn sample_class(class: CoefficientClass, order: usize, seed: u64) -> QSeries {
    class.sample(order, seed, SampleMode::Interior)
}

/// Weight functions `ω_k`, `k ≥ 1`, vanishing to order `k` at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFamily {
    /// `ω_k(q) = qᵏ u` with `|u| = 1`.
    Monomial(Quaternion),
    /// Explicit series; entry `k − 1` is `ω_k`.
    UserSeries(Vec<QSeries>),
}

impl Default for WeightFamily {
    fn default() -> Self {
        Self::Monomial(Quaternion::ONE)
    }
}

const SUP_SLICES: u64 = 64;
const SUP_ANGLES: usize = 64;

impl WeightFamily {
    pub fn is_monomial(&self) -> bool {
        matches!(self, Self::Monomial(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Monomial(_) => "monomial",
            Self::UserSeries(_) => "user_series",
        }
    }

    /// `ω_k(q)`.
    pub fn eval(&self, k: usize, q: Quaternion) -> Result<Quaternion> {
        match self {
            Self::Monomial(u) => Ok(q.powi(k as u32) * *u),
            Self::UserSeries(ws) => {
                ws.get(k.wrapping_sub(1))
                    .map(|w| w.eval(q))
                    .ok_or_else(|| Error::InvalidWeight {
                        k,
                        reason: "no weight function supplied".into(),
                    })
            }
        }
    }

    /// Checks vanishing order and the Schwarz bound `|ω_k(q)| ≤ |q|ᵏ` on a
    /// sampled grid.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Monomial(u) => {
                if (u.modulus() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidWeight {
                        k: 0,
                        reason: format!("|u| = {} is not 1", u.modulus()),
                    });
                }
                Ok(())
            }
            Self::UserSeries(ws) => {
                for (idx, w) in ws.iter().enumerate() {
                    let k = idx + 1;
                    if let Some(n) = (0..k).find(|&n| w.coeff(n).modulus() > ZERO_GUARD) {
                        return Err(Error::InvalidWeight {
                            k,
                            reason: format!("coefficient {n} does not vanish"),
                        });
                    }
                    if w.coeff(k).modulus() <= ZERO_GUARD {
                        return Err(Error::InvalidWeight {
                            k,
                            reason: format!("coefficient {k} vanishes"),
                        });
                    }
                    for j in 1..=8 {
                        let r = j as f64 / 8.0;
                        for s in 0..16u64 {
                            let unit = sample_sphere(s);
                            for a in 0..32 {
                                let theta = std::f64::consts::TAU * a as f64 / 32.0;
                                let q = on_slice(r * theta.cos(), r * theta.sin(), unit);
                                let v = w.eval(q).modulus();
                                let cap = r.powi(k as i32);
                                if v > cap * (1.0 + 1e-12) + 1e-15 {
                                    return Err(Error::InvalidWeight {
                                        k,
                                        reason: format!(
                                            "|omega(q)| = {v} exceeds |q|^{k} = {cap} at |q| = {r}"
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// `W_k(r) = sup_{|q|=r} |ω_k(q)|`; exact for the monomial family,
    /// sampled over 64 slices × 64 angles otherwise.
    pub fn sup_modulus(&self, k: usize, r: f64) -> Result<f64> {
        match self {
            Self::Monomial(_) => Ok(r.powi(k as i32)),
            Self::UserSeries(ws) => {
                let w = ws
                    .get(k.wrapping_sub(1))
                    .ok_or_else(|| Error::InvalidWeight {
                        k,
                        reason: "no weight function supplied".into(),
                    })?;
                let mut best = 0.0f64;
                for s in 0..SUP_SLICES {
                    let unit = sample_sphere(s);
                    for a in 0..SUP_ANGLES {
                        let theta = std::f64::consts::TAU * a as f64 / SUP_ANGLES as f64;
                        let q = on_slice(r * theta.cos(), r * theta.sin(), unit);
                        best = best.max(w.eval(q).modulus());
                    }
                }
                Ok(best)
            }
        }
    }

    /// `W_1(r), …, W_len(r)`.
    fn sup_profile(&self, r: f64, len: usize) -> Result<Vec<f64>> {
        (1..=len).map(|k| self.sup_modulus(k, r)).collect()
    }
}

/// Parameters of the generalised functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BohrParams {
    /// Exponent on `|p₀|`.
    pub m: f64,
    /// `d₁, …, d_N` of `Q_N(w) = Σ dᵢ wⁱ`.
    pub d: Vec<f64>,
    pub weight: WeightFamily,
}

impl Default for BohrParams {
    fn default() -> Self {
        Self {
            m: 1.0,
            d: Vec::new(),
            weight: WeightFamily::default(),
        }
    }
}

impl BohrParams {
    pub fn new(m: f64, d: Vec<f64>) -> Result<Self> {
        let p = Self {
            m,
            d,
            weight: WeightFamily::default(),
        };
        p.check_d()?;
        Ok(p)
    }

    pub fn with_m(m: f64) -> Self {
        Self {
            m,
            ..Self::default()
        }
    }

    pub fn with_weight(mut self, weight: WeightFamily) -> Self {
        self.weight = weight;
        self
    }

    /// Degree `N`.
    pub fn degree(&self) -> usize {
        self.d.len()
    }

    pub fn check_d(&self) -> Result<()> {
        match self.d.iter().position(|&x| !(x >= 0.0)) {
            Some(index) => Err(Error::NegativeCoefficient {
                index: index + 1,
                value: self.d[index],
            }),
            None => Ok(()),
        }
    }

    /// `Q_N(w)`.
    pub fn q_poly(&self, w: f64) -> f64 {
        self.d.iter().rev().fold(0.0, |acc, &di| (acc + di) * w)
    }
}

/// Identifier of a functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalId {
    /// `Σ |qᵏ p_k|` (also the `𝒜` and `ℬ` functionals of the normalised classes).
    Bohr,
    K,
    L,
    M,
    N,
    SStar,
}

impl FunctionalId {
    pub fn name(self) -> &'static str {
        match self {
            Self::Bohr => "bohr",
            Self::K => "k",
            Self::L => "l",
            Self::M => "m",
            Self::N => "n",
            Self::SStar => "s_star",
        }
    }

    /// Admissible range `(0, hi]` of the exponent `m`, if `m` is used.
    pub fn m_range(self) -> Option<f64> {
        match self {
            Self::K => Some(2.0),
            Self::L | Self::M => Some(1.0),
            _ => None,
        }
    }

    /// Value of the functional on `f` at radius `r`.
    pub fn evaluate(self, f: &QSeries, r: f64, params: &BohrParams) -> Result<f64> {
        check_radius(r)?;
        if let Some(hi) = self.m_range() {
            check_m(params.m, hi)?;
        }
        if self == Self::M {
            params.check_d()?;
        }
        let moduli = f.moduli();
        match self {
            Self::Bohr => Ok(horner(&moduli, r)),
            Self::SStar => Ok(s_star_moduli(&moduli, r)),
            Self::N => {
                let p0 = half_space_p0(f)?;
                Ok(n_moduli(&moduli, p0, r))
            }
            Self::K | Self::L | Self::M => {
                let weights = Weights::new(&params.weight, r, f)?;
                let k = k_moduli(&moduli, params.m, &weights);
                Ok(match self {
                    Self::K => k,
                    Self::L => k + l_refinement(&moduli, r, &weights),
                    _ => k + params.q_poly(s_star_moduli(&moduli, r)),
                })
            }
        }
    }

    /// Value plus a bound on the discarded tail, assuming `f` is the
    /// truncation of a member of `class`.
    pub fn evaluate_with_tail(
        self,
        f: &QSeries,
        r: f64,
        params: &BohrParams,
        class: CoefficientClass,
    ) -> Result<(f64, TailBound)> {
        let value = self.evaluate(f, r, params)?;
        let t = class.p0_parameter(f.coeff(0));
        let tail = self.tail(class, t, f.order(), r, params, f);
        Ok((value, tail))
    }

    fn tail(
        self,
        class: CoefficientClass,
        t: f64,
        order: usize,
        r: f64,
        params: &BohrParams,
        f: &QSeries,
    ) -> TailBound {
        let (c, j) = class.bound_shape(t);
        let lin = c * power_tail(r, order, j);
        let sq = c * c * power_tail(r * r, order, 2 * j);
        let area = c * c * power_tail(r * r, order, 2 * j + 1);
        let p0_mod = f.coeff(0).modulus();
        let value = match self {
            Self::Bohr | Self::K => lin,
            Self::L => lin + (1.0 / (1.0 + p0_mod) + r / (1.0 - r)) * sq,
            Self::N => lin + (1.0 / (1.0 + f.coeff(0).re()) + r / (1.0 - r)) * sq,
            Self::SStar => area,
            Self::M => {
                let s = s_star_moduli(&f.moduli(), r);
                lin + (params.q_poly(s + area) - params.q_poly(s)).max(0.0)
            }
        };
        TailBound::new(value)
    }

    /// The functional evaluated on the coefficient-bound majorant of `class`
    /// with `t = |p₀|` (or `p₀` for the half-space class): an infinite-sum
    /// closed form, monomial weights.
    pub fn class_majorant(
        self,
        class: CoefficientClass,
        t: f64,
        r: f64,
        params: &BohrParams,
    ) -> Result<f64> {
        check_radius(r)?;
        if let Some(hi) = self.m_range() {
            check_m(params.m, hi)?;
        }
        let t = if class.is_normalized() { 0.0 } else { t };
        let (c, j) = class.bound_shape(t);
        let lin = c * power_tail(r, 0, j);
        let sq = c * c * power_tail(r * r, 0, 2 * j);
        let area = c * c * power_tail(r * r, 0, 2 * j + 1);
        let head = |e: f64| if t == 0.0 { 0.0 } else { t.powf(e) };
        Ok(match self {
            Self::Bohr => t + lin,
            Self::K => head(params.m) + lin,
            Self::L => head(params.m) + lin + (1.0 / (1.0 + t) + r / (1.0 - r)) * sq,
            Self::M => head(params.m) + lin + params.q_poly(area),
            Self::N => t + lin + (1.0 / (1.0 + t) + r / (1.0 - r)) * sq,
            Self::SStar => area,
        })
    }

    /// Supremum of `class_majorant` over the free parameter `t ∈ [0, 1)`,
    /// returned with its location. The endpoint `t = 1` is the continuous
    /// limit of the majorant.
    pub fn class_supremum(
        self,
        class: CoefficientClass,
        r: f64,
        params: &BohrParams,
    ) -> Result<(f64, f64)> {
        if class.is_normalized() {
            return Ok((self.class_majorant(class, 0.0, r, params)?, 0.0));
        }
        self.class_majorant(class, 0.0, r, params)?;
        let (t, v) = numeric::maximize(
            |t| self.class_majorant(class, t, r, params).unwrap_or(f64::NAN),
            0.0,
            1.0,
            2000,
        );
        Ok((v, t))
    }
}

impl fmt::Display for FunctionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionalId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "bohr" | "a" | "b" | "sum" => Ok(Self::Bohr),
            "k" => Ok(Self::K),
            "l" => Ok(Self::L),
            "m" => Ok(Self::M),
            "n" => Ok(Self::N),
            "s_star" | "sstar" | "s" => Ok(Self::SStar),
            _ => Err(Error::UnknownName {
                kind: "functional",
                name: s.to_string(),
            }),
        }
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::RadiusOutOfRange(r))
    }
}

pub(crate) fn check_m(m: f64, hi: f64) -> Result<()> {
    if m > 0.0 && m <= hi {
        Ok(())
    } else {
        Err(Error::ExponentOutOfRange { m, lo: 0.0, hi })
    }
}

fn half_space_p0(f: &QSeries) -> Result<f64> {
    let p0 = f.coeff(0);
    if p0.im_modulus() > CLASS_SLACK || !(0.0..1.0).contains(&p0.re()) {
        return Err(Error::ClassViolation {
            index: 0,
            reason: format!("p0 = {p0} is not a real number in [0, 1)"),
        });
    }
    Ok(p0.re())
}

/// `Σ c_k xᵏ`.
fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

/// Weight moduli at a fixed radius.
enum Weights {
    Monomial(f64),
    Sampled(Vec<f64>),
}

impl Weights {
    fn new(family: &WeightFamily, r: f64, f: &QSeries) -> Result<Self> {
        match family {
            WeightFamily::Monomial(_) => Ok(Self::Monomial(r)),
            WeightFamily::UserSeries(ws) => {
                let moduli = f.moduli();
                if let Some(k) = (ws.len() + 1..moduli.len()).find(|&k| moduli[k] > 0.0) {
                    return Err(Error::InvalidWeight {
                        k,
                        reason: "no weight function for a nonzero coefficient".into(),
                    });
                }
                let len = ws.len().min(f.order());
                Ok(Self::Sampled(family.sup_profile(r, len)?))
            }
        }
    }

    fn first(&self) -> f64 {
        match self {
            Self::Monomial(r) => *r,
            Self::Sampled(w) => w.first().copied().unwrap_or(0.0),
        }
    }
}

fn k_moduli(moduli: &[f64], m: f64, weights: &Weights) -> f64 {
    let head = if moduli[0] == 0.0 {
        0.0
    } else {
        moduli[0].powf(m)
    };
    let rest = match weights {
        Weights::Monomial(r) => r * horner(&moduli[1..], *r),
        Weights::Sampled(w) => w.iter().zip(&moduli[1..]).map(|(a, b)| a * b).sum(),
    };
    head + rest
}

/// `(1/(1+|p₀|) + W₁/(1−W₁)) Σ_{k≥1} (W_k |p_k|)²`.
fn l_refinement(moduli: &[f64], r: f64, weights: &Weights) -> f64 {
    let w1 = weights.first();
    let squares = match weights {
        Weights::Monomial(_) => {
            let sq: Vec<f64> = moduli[1..].iter().map(|v| v * v).collect();
            r * r * horner(&sq, r * r)
        }
        Weights::Sampled(w) => w
            .iter()
            .zip(&moduli[1..])
            .map(|(a, b)| (a * b) * (a * b))
            .sum(),
    };
    (1.0 / (1.0 + moduli[0]) + w1 / (1.0 - w1)) * squares
}

/// `Σ_{k≥1} k r^{2k} |p_k|²`.
fn s_star_moduli(moduli: &[f64], r: f64) -> f64 {
    let x = r * r;
    let c: Vec<f64> = moduli
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| k as f64 * v * v)
        .collect();
    x * horner(&c, x)
}

fn n_moduli(moduli: &[f64], p0: f64, r: f64) -> f64 {
    let sq: Vec<f64> = moduli[1..].iter().map(|v| v * v).collect();
    let squares = r * r * horner(&sq, r * r);
    horner(moduli, r) + (1.0 / (1.0 + p0) + r / (1.0 - r)) * squares
}

/// `Σ_{k=0}^{K} rᵏ |p_k|`.
pub fn bohr_sum(f: &QSeries, r: f64) -> Result<f64> {
    FunctionalId::Bohr.evaluate(f, r, &BohrParams::default())
}

/// `|p₀|^m + Σ_{k≥1} W_k(r) |p_k|`, `m ∈ (0, 2]`.
pub fn functional_k(f: &QSeries, r: f64, m: f64, weight: &WeightFamily) -> Result<f64> {
    FunctionalId::K.evaluate(f, r, &BohrParams::with_m(m).with_weight(weight.clone()))
}

/// `𝒦` plus the quadratic refinement, `m ∈ (0, 1]`.
pub fn functional_l(f: &QSeries, r: f64, m: f64, weight: &WeightFamily) -> Result<f64> {
    FunctionalId::L.evaluate(f, r, &BohrParams::with_m(m).with_weight(weight.clone()))
}

/// `S*_q = Σ_{k≥1} k r^{2k} |p_k|²`.
pub fn s_star(f: &QSeries, r: f64) -> Result<f64> {
    FunctionalId::SStar.evaluate(f, r, &BohrParams::default())
}

/// `𝒦 + Q_N(S*)`, `m ∈ (0, 1]`. Admissibility of `d` is not required.
pub fn functional_m(f: &QSeries, r: f64, params: &BohrParams) -> Result<f64> {
    FunctionalId::M.evaluate(f, r, params)
}

/// The refined half-space functional; `p₀` must be real in `[0, 1)`.
pub fn functional_n(f: &QSeries, r: f64) -> Result<f64> {
    FunctionalId::N.evaluate(f, r, &BohrParams::default())
}

/// `|p₀|^m + Σ_{k≥1} |ω_k(q) p_k|` at a quaternion point, for any weight family.
pub fn functional_k_at(f: &QSeries, q: Quaternion, m: f64, weight: &WeightFamily) -> Result<f64> {
    check_radius(q.modulus())?;
    check_m(m, 2.0)?;
    let p0 = f.coeff(0).modulus();
    let head = if p0 == 0.0 { 0.0 } else { p0.powf(m) };
    let mut sum = head;
    for (k, p) in f.coeffs().iter().enumerate().skip(1) {
        if p.modulus() == 0.0 {
            continue;
        }
        sum += (weight.eval(k, q)? * *p).modulus();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::sample_boundary;

    fn mobius(a: f64, u: Quaternion, order: usize) -> QSeries {
        let mut c = vec![Quaternion::real(a)];
        for k in 1..=order {
            c.push(u * (-(1.0 - a * a) * a.powi(k as i32 - 1)));
        }
        QSeries::new(c)
    }

    #[test]
    fn bohr_sum_examples() {
        let u = sample_boundary(1);
        let f = mobius(0.5, u, 400);
        assert!((bohr_sum(&f, 1.0 / 3.0).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(bohr_sum(&f, 0.0).unwrap(), 0.5);
        let r = (3.0 - 5f64.sqrt()) / 2.0;
        let koebe = QSeries::new(
            (0..=2048)
                .map(|k| u.powi((k as u32).saturating_sub(1)) * k as f64)
                .collect(),
        );
        assert!((bohr_sum(&koebe, r).unwrap() - 1.0).abs() < 1e-13);
        assert!(matches!(bohr_sum(&f, 1.0), Err(Error::RadiusOutOfRange(_))));
        assert!(matches!(
            bohr_sum(&f, -0.1),
            Err(Error::RadiusOutOfRange(_))
        ));
    }

    #[test]
    fn k_reduces_to_bohr_sum_at_m_one() {
        let f = sample_class(CoefficientClass::Bounded, 30, 4);
        for r in [0.0, 0.1, 0.3, 0.6] {
            let a = functional_k(&f, r, 1.0, &WeightFamily::default()).unwrap();
            let b = bohr_sum(&f, r).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn k_on_mobius_family() {
        let u = sample_boundary(2);
        for (a, m, r) in [(0.5, 1.0, 1.0 / 3.0), (0.8, 0.5, 0.2), (0.3, 2.0, 0.45)] {
            let f = mobius(a, u, 2048);
            let want = f64::powf(a, m) + (1.0 - a * a) * r / (1.0 - a * r);
            let got = functional_k(&f, r, m, &WeightFamily::Monomial(u)).unwrap();
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_p0_ignores_exponent() {
        let f = QSeries::new(vec![
            Quaternion::ZERO,
            Quaternion::J * 0.5,
            Quaternion::K * 0.1,
        ]);
        let w = WeightFamily::default();
        assert_eq!(
            functional_k(&f, 0.4, 2.0, &w).unwrap(),
            functional_k(&f, 0.4, 1.0, &w).unwrap()
        );
    }

    #[test]
    fn l_examples() {
        let w = WeightFamily::default();
        let c = QSeries::constant(Quaternion::new(0.3, 0.4, 0.0, 0.0));
        assert!((functional_l(&c, 0.3, 0.5, &w).unwrap() - 0.5f64.powf(0.5)).abs() < 1e-15);
        let f = mobius(0.7, Quaternion::ONE, 2048);
        for (m, r) in [(1.0, 0.2), (0.5, 0.1), (0.25, 0.3)] {
            let want = f64::powf(0.7, m) + (1.0 - 0.49) * r / (1.0 - r);
            let got = functional_l(&f, r, m, &w).unwrap();
            assert!((got - want).abs() < 1e-14);
            assert!(got >= functional_k(&f, r, m, &w).unwrap());
        }
        assert!(functional_l(&f, 0.2, 1.5, &w).is_err());
    }

    #[test]
    fn s_star_examples() {
        let a: f64 = 0.5;
        let r: f64 = 0.25;
        let f = mobius(a, Quaternion::I, 600);
        let closed = (1.0 - a * a).powi(2) * r * r / (1.0 - a * a * r * r).powi(2);
        assert!((s_star(&f, r).unwrap() - closed).abs() < 1e-16);
        assert!(s_star(&f, r).unwrap() <= (1.0 - a * a).powi(2) * r * r / (1.0 - r * r).powi(2));
        assert_eq!(s_star(&QSeries::constant(Quaternion::J), 0.5).unwrap(), 0.0);
    }

    #[test]
    fn m_examples() {
        let f = sample_class(CoefficientClass::Bounded, 40, 8);
        let zeros = BohrParams::new(1.0, vec![0.0, 0.0]).unwrap();
        assert_eq!(
            functional_m(&f, 0.3, &zeros).unwrap(),
            functional_k(&f, 0.3, 1.0, &WeightFamily::default()).unwrap()
        );
        assert!(matches!(
            BohrParams::new(1.0, vec![0.5, -0.1]),
            Err(Error::NegativeCoefficient { index: 2, .. })
        ));
        // as a → 1⁻ the value at r = 1/3 tends to 1
        let p = BohrParams::new(1.0, vec![8.0 / 9.0]).unwrap();
        let mut prev_gap = f64::INFINITY;
        for a in [0.9, 0.99, 0.999, 0.9999] {
            let g = mobius(a, Quaternion::ONE, 4000);
            let v = functional_m(&g, 1.0 / 3.0, &p).unwrap();
            let gap = (1.0 - v).abs();
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-7);
    }

    #[test]
    fn n_examples() {
        let u = sample_boundary(6);
        let a: f64 = 0.4;
        let mut c = vec![Quaternion::real(a)];
        c.extend((1..=2048).map(|_| u * (-2.0 * (1.0 - a))));
        let g = QSeries::new(c);
        for r in [0.1, 0.2, 0.3] {
            let want = a
                + 2.0 * (1.0 - a) * r / (1.0 - r)
                + (1.0 / (1.0 + a) + r / (1.0 - r)) * 4.0 * (1.0 - a).powi(2) * r * r
                    / (1.0 - r * r);
            assert!((functional_n(&g, r).unwrap() - want).abs() < 1e-14);
        }
        assert_eq!(
            functional_n(&QSeries::constant(Quaternion::real(0.3)), 0.5).unwrap(),
            0.3
        );
        assert!(matches!(
            functional_n(&QSeries::constant(Quaternion::I * 0.3), 0.1),
            Err(Error::ClassViolation { index: 0, .. })
        ));
        assert!(functional_n(&QSeries::constant(Quaternion::real(1.0)), 0.1).is_err());
    }

    #[test]
    fn class_validation_examples() {
        let u = sample_boundary(3);
        let koebe = QSeries::new(
            (0..=20)
                .map(|k| u.powi((k as u32).saturating_sub(1)) * k as f64)
                .collect(),
        );
        assert!(validate_class(&koebe, CoefficientClass::Starlike).valid);
        assert!(!validate_class(&koebe, CoefficientClass::DerivStarlike).valid);
        assert!(validate_class(&mobius(0.6, u, 50), CoefficientClass::Bounded).valid);

        let bad = QSeries::new(vec![Quaternion::ZERO, Quaternion::ONE, u * 3.0]);
        assert_eq!(
            validate_class(&bad, CoefficientClass::Starlike),
            ClassCheck {
                valid: false,
                first_violation: Some(2)
            }
        );
        let unnormalised = QSeries::new(vec![Quaternion::ZERO, Quaternion::I]);
        assert_eq!(
            validate_class(&unnormalised, CoefficientClass::Starlike).first_violation,
            Some(1)
        );
        let complex_p0 = QSeries::new(vec![Quaternion::new(0.5, 0.1, 0.0, 0.0)]);
        assert_eq!(
            validate_class(&complex_p0, CoefficientClass::HalfSpace).first_violation,
            Some(0)
        );
    }

    #[test]
    fn samples_are_members_and_deterministic() {
        for class in CoefficientClass::ALL {
            for seed in 0..3 {
                let f = sample_class(class, 64, seed);
                assert!(validate_class(&f, class).valid, "{class} seed {seed}");
                assert_eq!(f, sample_class(class, 64, seed));
                let b = class.sample(64, seed, SampleMode::Boundary);
                assert!(validate_class(&b, class).valid);
            }
            assert_ne!(sample_class(class, 8, 1), sample_class(class, 8, 2));
        }
    }

    #[test]
    fn boundary_sample_matches_majorant() {
        let r = 0.3;
        let params = BohrParams::with_m(0.5);
        for class in CoefficientClass::ALL {
            let f = class.sample(2048, 17, SampleMode::Boundary);
            let t = class.p0_parameter(f.coeff(0));
            for id in [
                FunctionalId::Bohr,
                FunctionalId::K,
                FunctionalId::L,
                FunctionalId::SStar,
            ] {
                let (v, tail) = id.evaluate_with_tail(&f, r, &params, class).unwrap();
                let closed = id.class_majorant(class, t, r, &params).unwrap();
                assert!(
                    (v - closed).abs() <= tail.value + 1e-13 * closed.max(1.0),
                    "{class} {id}: {v} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn tails_shrink_with_order() {
        let f = CoefficientClass::Starlike.sample(10, 1, SampleMode::Boundary);
        let g = CoefficientClass::Starlike.sample(40, 1, SampleMode::Boundary);
        let p = BohrParams::default();
        let (_, t10) = FunctionalId::Bohr
            .evaluate_with_tail(&f, 0.4, &p, CoefficientClass::Starlike)
            .unwrap();
        let (_, t40) = FunctionalId::Bohr
            .evaluate_with_tail(&g, 0.4, &p, CoefficientClass::Starlike)
            .unwrap();
        assert!(t10.value > t40.value && t40.value > 0.0);
    }

    #[test]
    fn monomial_weight_attains_schwarz_bound() {
        let u = sample_boundary(12);
        let w = WeightFamily::Monomial(u);
        w.validate().unwrap();
        for k in 1..6 {
            let q = Quaternion::new(0.1, -0.3, 0.2, 0.15);
            let v = w.eval(k, q).unwrap().modulus();
            assert!((v - q.modulus().powi(k as i32)).abs() < 1e-15);
            assert!((w.sup_modulus(k, 0.4).unwrap() - 0.4f64.powi(k as i32)).abs() < 1e-16);
        }
        assert!(WeightFamily::Monomial(Quaternion::ONE * 2.0)
            .validate()
            .is_err());
    }

    #[test]
    fn user_weights_are_checked() {
        // ω_k(q) = qᵏ · c with |c| = 1/2: valid, sup equals rᵏ/2
        let c = Quaternion::J * 0.5;
        let ws: Vec<QSeries> = (1..=3)
            .map(|k| {
                let mut v = vec![Quaternion::ZERO; k + 1];
                v[k] = c;
                QSeries::new(v)
            })
            .collect();
        let family = WeightFamily::UserSeries(ws.clone());
        family.validate().unwrap();
        assert!((family.sup_modulus(2, 0.5).unwrap() - 0.125).abs() < 1e-15);

        let f = QSeries::new(vec![Quaternion::real(0.5), Quaternion::I, Quaternion::K]);
        let k = functional_k(&f, 0.4, 1.0, &family).unwrap();
        assert!((k - (0.5 + 0.5 * 0.4 + 0.5 * 0.16)).abs() < 1e-14);
        let q = crate::quaternion::on_slice(0.0, 0.4, Quaternion::J);
        assert!((functional_k_at(&f, q, 1.0, &family).unwrap() - k).abs() < 1e-14);

        // ω₁(q) = 2q breaks the Schwarz bound
        let too_big = WeightFamily::UserSeries(vec![QSeries::new(vec![
            Quaternion::ZERO,
            Quaternion::real(2.0),
        ])]);
        assert!(matches!(
            too_big.validate(),
            Err(Error::InvalidWeight { k: 1, .. })
        ));
        // ω₂ must vanish to order 2
        let low = WeightFamily::UserSeries(vec![
            QSeries::variable(),
            QSeries::new(vec![
                Quaternion::ZERO,
                Quaternion::real(0.1),
                Quaternion::real(0.1),
            ]),
        ]);
        assert!(matches!(
            low.validate(),
            Err(Error::InvalidWeight { k: 2, .. })
        ));
        // too few weights for the series
        let long = QSeries::new(
            vec![Quaternion::ZERO; 6]
                .into_iter()
                .chain([Quaternion::ONE])
                .collect(),
        );
        assert!(functional_k(&long, 0.2, 1.0, &family).is_err());
    }

    #[test]
    fn k_at_quaternion_matches_radius_form() {
        let f = sample_class(CoefficientClass::Bounded, 20, 3);
        let u = sample_boundary(4);
        let w = WeightFamily::Monomial(u);
        let q = Quaternion::new(0.1, 0.2, -0.05, 0.1);
        let a = functional_k_at(&f, q, 0.7, &w).unwrap();
        let b = functional_k(&f, q.modulus(), 0.7, &w).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn class_supremum_hits_one_at_radius() {
        let rm = |m: f64| m / (2.0 + m);
        for m in [0.5, 1.0, 2.0] {
            let p = BohrParams::with_m(m);
            let (v, t) = FunctionalId::K
                .class_supremum(CoefficientClass::Bounded, rm(m), &p)
                .unwrap();
            assert!((v - 1.0).abs() < 1e-12, "m = {m}: {v} at t = {t}");
            let (below, _) = FunctionalId::K
                .class_supremum(CoefficientClass::Bounded, 0.9 * rm(m), &p)
                .unwrap();
            assert!(below <= 1.0 + 1e-15);
        }
    }
}
