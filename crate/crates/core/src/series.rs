//! Truncated left power series `Σ qᵏ p_k` with quaternion coefficients and
//! the regular (star) algebra on them.
//!
//! Powers of the variable always sit on the left of the coefficients. The
//! star product is the Cauchy convolution with the left factor's
//! coefficients on the left; it coincides with the pointwise product only
//! after the twist `q ↦ f(q)⁻¹ q f(q)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, ZERO_GUARD};

/// `Σ_{k=0}^{K} qᵏ p_k`. Trailing zeros are allowed and inert.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QSeries {
    coeffs: Vec<Quaternion>,
}

impl QSeries {
    /// An empty coefficient list is read as the zero constant.
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Quaternion::ZERO);
        }
        Self { coeffs }
    }

    pub fn constant(c: Quaternion) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(Quaternion::ONE)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Quaternion::ZERO; order + 1],
        }
    }

    /// The series `q`.
    pub fn variable() -> Self {
        Self::new(vec![Quaternion::ZERO, Quaternion::ONE])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().copied().map(Quaternion::real).collect())
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Quaternion {
        self.coeffs.get(k).copied().unwrap_or(Quaternion::ZERO)
    }

    /// Truncation degree `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.modulus()).collect()
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    /// Pads with zeros or drops high coefficients so that the order is `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Quaternion::ZERO);
        Self { coeffs }
    }

    /// `Σ qᵏ p_k`, accumulated right to left as `a ← q·a + p_k`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &p| q * acc + p)
    }

    /// Full-length star product; the order is the sum of both orders.
    pub fn star(&self, other: &Self) -> Self {
        self.star_truncated(other, self.order() + other.order())
    }

    /// `c_k = Σ_{n≤k} p_n a_{k−n}` for `k ≤ order`, left factor on the left.
    pub fn star_truncated(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Quaternion::ZERO; order + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let lo = k.saturating_sub(other.order());
            let hi = k.min(self.order());
            let mut acc = Quaternion::ZERO;
            for n in lo..=hi {
                acc += self.coeffs[n] * other.coeffs[k - n];
            }
            *slot = acc;
        }
        Self { coeffs: out }
    }

    /// `f^c = Σ qᵏ p̄_k`.
    pub fn regular_conjugate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `f^s = f * f^c`; every coefficient is real up to rounding.
    pub fn symmetrization(&self) -> Self {
        self.star(&self.regular_conjugate())
    }

    /// `f^{−*} = (f^s)⁻¹ f^c`, truncated at `order`.
    ///
    /// The real series `f^s` is inverted by the usual recursion; being real,
    /// its inverse is central and the star with `f^c` is a plain convolution.
    pub fn regular_reciprocal(&self, order: usize) -> Result<Self> {
        let p0 = self.coeffs[0].modulus();
        if p0 < ZERO_GUARD {
            return Err(Error::ReciprocalUndefined { modulus: p0 });
        }
        let sym: Vec<f64> = self
            .truncate(order)
            .symmetrization()
            .coeffs
            .iter()
            .take(order + 1)
            .map(|c| c.re())
            .collect();
        let inv = invert_real_series(&sym);
        let inv = Self::from_real(&inv);
        Ok(inv.star_truncated(&self.regular_conjugate(), order))
    }

    /// `p_k ↦ (k+1) p_{k+1}`; a constant maps to the zero constant.
    pub fn slice_derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::constant(Quaternion::ZERO);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    /// Multiplies by `q` on the left: `p_k ↦ p_{k−1}`.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Quaternion::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// `f(q)·c`, i.e. every coefficient multiplied by `c` on the right.
    pub fn mul_right(&self, c: Quaternion) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&p| p * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeff(k) + other.coeff(k))
                .collect(),
        }
    }

    /// `T_f(q) = f^c(q)⁻¹ q f^c(q)`.
    pub fn transform(&self, q: Quaternion) -> Result<Quaternion> {
        let fc = self.regular_conjugate().eval(q);
        let modulus = fc.modulus();
        if modulus < ZERO_GUARD {
            return Err(Error::TransformUndefined { modulus });
        }
        Ok(fc.inverse()? * q * fc)
    }

    /// Largest coefficient distance after scaling both series by the larger
    /// max-coefficient modulus (no scaling when that is below one).
    pub fn scaled_distance(&self, other: &Self) -> f64 {
        let scale = self
            .max_coeff_modulus()
            .max(other.max_coeff_modulus())
            .max(1.0);
        let order = self.order().max(other.order());
        (0..=order)
            .map(|k| self.coeff(k).max_abs_diff(other.coeff(k)))
            .fold(0.0, f64::max)
            / scale
    }

    /// Per-coefficient equality at `1e−10` after normalisation.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.scaled_distance(other) <= 1e-10
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite coefficients serialise")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let coeffs: Vec<Quaternion> = serde_json::from_str(s)?;
        Ok(Self::new(coeffs))
    }
}

/// Inverse of a real power series with nonzero constant term, same length.
fn invert_real_series(s: &[f64]) -> Vec<f64> {
    let mut g = Vec::with_capacity(s.len());
    g.push(1.0 / s[0]);
    for k in 1..s.len() {
        let acc: f64 = (1..=k).map(|j| s[j] * g[k - j]).sum();
        g.push(-acc / s[0]);
    }
    g
}

/// Upper bound on the part of a majorant sum discarded by truncation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TailBound {
    pub value: f64,
}

impl TailBound {
    pub const ZERO: Self = Self { value: 0.0 };

    pub fn new(value: f64) -> Self {
        debug_assert!(value >= 0.0);
        Self { value }
    }
}

/// `Σ_{k>order} k^power x^k` for `0 ≤ x < 1`, `power ≤ 3`.
///
/// Written as `x^{n} Σ_j (n+j)^power x^j` with `n = order + 1`, which keeps
/// every term positive and avoids cancellation against the full sum.
pub fn power_tail(x: f64, order: usize, power: u32) -> f64 {
    assert!((0.0..1.0).contains(&x), "power_tail needs 0 <= x < 1");
    assert!(power <= 3, "power_tail supports powers up to 3");
    if x == 0.0 {
        return 0.0;
    }
    let n = (order + 1) as f64;
    let lead = x.powf(n);
    if lead == 0.0 {
        return 0.0;
    }
    let y = 1.0 - x;
    // Σ_j j^i x^j for i = 0..3
    let s = [
        1.0 / y,
        x / (y * y),
        x * (1.0 + x) / (y * y * y),
        x * (1.0 + 4.0 * x + x * x) / (y * y * y * y),
    ];
    let binom = [
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0],
        [1.0, 3.0, 3.0, 1.0],
    ];
    let p = power as usize;
    let inner: f64 = (0..=p)
        .map(|i| binom[p][i] * n.powi((p - i) as i32) * s[i])
        .sum();
    lead * inner
}
