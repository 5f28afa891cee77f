//! Quaternion arithmetic in binary64.
//!
//! Products follow `i² = j² = k² = ijk = −1`. Multiplication is associative
//! but not commutative, so every routine in this crate keeps the order of
//! factors explicit.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Below this imaginary magnitude a quaternion is treated as real when
/// extracting its slice.
pub const NEAR_REAL: f64 = 1e-9;

/// Threshold on the modulus below which a quaternion counts as zero for
/// every "≠ 0" precondition.
pub const ZERO_GUARD: f64 = 1e-12;

/// `q = x0 + x1 i + x2 j + x3 k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    #[inline]
    pub const fn real(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.x0
    }

    /// Imaginary part as a pure quaternion.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x1, self.x2, self.x3)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn im_modulus(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// `q⁻¹ = |q|⁻² q̄`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.sqrt() < ZERO_GUARD {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn as_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Largest componentwise distance.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.x0.abs().max(d.x1.abs()).max(d.x2.abs()).max(d.x3.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// Writes `q = x + yI` with `y ≥ 0` and `I` a unit imaginary quaternion.
    ///
    /// Quaternions with `|Im q| < NEAR_REAL` are treated as real and get the
    /// default unit `I = i`.
    pub fn slice_decompose(self) -> SliceForm {
        let y = self.im_modulus();
        if y < NEAR_REAL {
            SliceForm {
                x: self.x0,
                y: 0.0,
                unit: Self::I,
            }
        } else {
            SliceForm {
                x: self.x0,
                y,
                unit: self.im() / y,
            }
        }
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}k",
            self.x0, self.x1, self.x2, self.x3
        )
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Self::from)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(
            self.x0 + o.x0,
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.x0 - o.x0,
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
        )
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
            a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
            a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
            a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

/// `q = x + y·unit`, the position of `q` inside the slice `ℂ_unit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceForm {
    pub x: f64,
    pub y: f64,
    pub unit: Quaternion,
}

impl SliceForm {
    pub fn recompose(&self) -> Quaternion {
        Quaternion::real(self.x) + self.unit * self.y
    }
}

/// Point on the slice `ℂ_unit`: `x + y·unit`.
#[inline]
pub fn on_slice(x: f64, y: f64, unit: Quaternion) -> Quaternion {
    Quaternion::real(x) + unit * y
}

/// Uniform random unit imaginary quaternion (a point of 𝕊).
pub fn random_unit_imaginary<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let [a, b, c]: [f64; 3] = UnitSphere.sample(rng);
    Quaternion::new(0.0, a, b, c)
}

/// Uniform random quaternion of modulus one (a point of ∂𝔹).
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::new(
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        );
        let n = q.modulus();
        if n > 1e-6 {
            return q / n;
        }
    }
}

/// Deterministic point of 𝕊 for `seed`.
pub fn sample_sphere(seed: u64) -> Quaternion {
    random_unit_imaginary(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Deterministic point of ∂𝔹 for `seed`.
pub fn sample_boundary(seed: u64) -> Quaternion {
    random_unit(&mut ChaCha8Rng::seed_from_u64(seed))
}
