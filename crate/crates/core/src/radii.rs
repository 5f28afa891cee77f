//! Bohr radii, admissibility constants and the independent infimum / cubic
//! oracles behind them.

use serde::{Deserialize, Serialize};

use crate::bohr::check_m;
use crate::error::{Error, Result};
use crate::numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    ClosedForm,
    RootFind,
    Infimum,
}

/// A radius in `(0, 1)` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub value: f64,
    pub method: RadiusMethod,
    /// `|defining equation|` at `value`.
    pub residual: f64,
    /// Where the infimum was approached, for `Infimum` results.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmin: Option<f64>,
}

impl RadiusResult {
    fn closed(value: f64, residual: f64) -> Self {
        Self {
            value,
            method: RadiusMethod::ClosedForm,
            residual,
            argmin: None,
        }
    }
}

fn starlike_equation(r: f64) -> f64 {
    -1.0 + 3.0 * r - r * r
}

/// `(3 − √5)/2`, the root in `(0, 1)` of `r² − 3r + 1`.
pub fn radius_starlike() -> RadiusResult {
    // 2/(3 + √5) avoids the cancellation in 3 − √5
    let v = 2.0 / (3.0 + 5f64.sqrt());
    RadiusResult::closed(v, starlike_equation(v).abs())
}

pub fn radius_deriv_starlike() -> RadiusResult {
    RadiusResult::closed(0.5, 0.0)
}

pub fn radius_classical() -> RadiusResult {
    RadiusResult::closed(1.0 / 3.0, 0.0)
}

/// `R_m = m/(2+m)` for `m ∈ (0, 2]`.
pub fn radius_rm(m: f64) -> Result<RadiusResult> {
    check_m(m, 2.0)?;
    let v = m / (2.0 + m);
    Ok(RadiusResult::closed(v, (v * (2.0 + m) - m).abs()))
}

/// `ℱ(t) = (1 − tᵐ)/(2 − t² − tᵐ)` written in `h = 1 − t` so that it stays
/// accurate as `t → 1⁻`.
fn infimum_objective(m: f64, h: f64) -> f64 {
    let one_minus_tm = -(m * (-h).ln_1p()).exp_m1();
    let one_minus_t2 = h * (2.0 - h);
    one_minus_tm / (one_minus_t2 + one_minus_tm)
}

/// `inf_{t∈[0,1)} ℱ(t)` by direct minimisation.
///
/// A uniform grid on `[0, 1)` is followed by golden-section refinement of
/// the best interior point and by a geometric approach `t = 1 − 10⁻ʲ` to
/// the open endpoint; the smallest value seen is returned.
pub fn radius_rm_via_infimum(m: f64) -> Result<RadiusResult> {
    check_m(m, 2.0)?;
    let neg = |t: f64| -infimum_objective(m, 1.0 - t);
    let points = 2000;
    let hi = 1.0 - 1.0 / points as f64;
    let (mut arg, mut best) = {
        let (x, v) = numeric::maximize(neg, 0.0, hi, points - 1);
        (x, -v)
    };
    for j in 4..=13 {
        let h = 10f64.powi(-j);
        let v = infimum_objective(m, h);
        if v < best {
            best = v;
            arg = 1.0 - h;
        }
    }
    Ok(RadiusResult {
        value: best,
        method: RadiusMethod::Infimum,
        residual: (best - m / (2.0 + m)).abs(),
        argmin: Some(arg),
    })
}

fn cubic(r: f64) -> f64 {
    ((3.0 * r - 5.0) * r - 3.0) * r + 1.0
}

fn cubic_prime(r: f64) -> f64 {
    (9.0 * r - 10.0) * r - 3.0
}

/// Unique root in `(0, 1)` of `3r³ − 5r² − 3r + 1`.
pub fn radius_rstar() -> RadiusResult {
    let v = numeric::bisect_newton(cubic, cubic_prime, 0.0, 1.0, 1e-6)
        .expect("cubic changes sign on [0, 1]");
    RadiusResult {
        value: v,
        method: RadiusMethod::RootFind,
        residual: cubic(v).abs(),
        argmin: None,
    }
}

/// `Q(α, r) = 4r³α² − (7r³ + 3r² − 3r + 1)α + 6r³ − 2r² − 6r + 2`.
pub fn q_alpha_r(alpha: f64, r: f64) -> f64 {
    let r2 = r * r;
    let r3 = r2 * r;
    4.0 * r3 * alpha * alpha - (7.0 * r3 + 3.0 * r2 - 3.0 * r + 1.0) * alpha + 6.0 * r3
        - 2.0 * r2
        - 6.0 * r
        + 2.0
}

/// `∂Q/∂α`.
pub fn q_alpha_r_dalpha(alpha: f64, r: f64) -> f64 {
    let r2 = r * r;
    let r3 = r2 * r;
    8.0 * r3 * alpha - (7.0 * r3 + 3.0 * r2 - 3.0 * r + 1.0)
}

/// Details of the `c_k` maximisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CkResult {
    pub value: f64,
    pub argmax: f64,
    pub grid_value: f64,
    pub grid_argmax: f64,
}

fn ck_objective(k: u32, x: f64) -> f64 {
    let s = 1.0 - x * x;
    x * (1.0 + x) * (1.0 + x) * s.powi(2 * k as i32 - 2)
}

/// `max_{x∈[0,1]} x(1+x)²(1−x²)^{2k−2}` by a 10⁵-point grid plus
/// golden-section refinement.
pub fn c_k_detailed(k: u32) -> Result<CkResult> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("c_k needs k >= 1, got {k}")));
    }
    let f = |x| ck_objective(k, x);
    let (gx, gv) = numeric::grid_max(f, 0.0, 1.0, 100_000);
    let (x, v) = numeric::maximize(f, 0.0, 1.0, 100_000);
    Ok(CkResult {
        value: v,
        argmax: x,
        grid_value: gv,
        grid_argmax: gx,
    })
}

pub fn c_k(k: u32) -> Result<f64> {
    c_k_detailed(k).map(|c| c.value)
}

/// `M_m = m(2+m)/(4(m+1))`, equal to `R_m/(1 − R_m²)`.
pub fn m_m(m: f64) -> Result<f64> {
    check_m(m, 1.0)?;
    Ok(m * (2.0 + m) / (4.0 * (m + 1.0)))
}

/// Value of `L(d₁, …, d_N)` and whether it is at most `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LCondition {
    pub value: f64,
    pub admissible: bool,
}

/// Rounding allowance on `L ≤ m`, so that coefficients on the boundary
/// `L = m` (such as `d₁ = 8/9` at `m = 1`) stay admissible.
pub const L_SLACK: f64 = 1e-12;

/// `L = Σ_k 2(2k−1) c_k d_k M_m^{2k}`; admissible iff `L ≤ m` up to `L_SLACK`.
pub fn l_condition(d: &[f64], m: f64) -> Result<LCondition> {
    if let Some(i) = d.iter().position(|&x| !(x >= 0.0)) {
        return Err(Error::NegativeCoefficient {
            index: i + 1,
            value: d[i],
        });
    }
    let mm = m_m(m)?;
    let mut value = 0.0;
    for (i, &dk) in d.iter().enumerate() {
        if dk == 0.0 {
            continue;
        }
        let k = i as u32 + 1;
        value += 2.0 * (2 * k - 1) as f64 * c_k(k)? * dk * mm.powi(2 * k as i32);
    }
    Ok(LCondition {
        value,
        admissible: value <= m + L_SLACK,
    })
}

/// Coefficients with `L(d) = m` exactly, the budget split evenly over
/// `d₁, …, d_N`.
pub fn boundary_d(n: usize, m: f64) -> Result<Vec<f64>> {
    let mm = m_m(m)?;
    (1..=n as u32)
        .map(|k| {
            let unit = 2.0 * (2 * k - 1) as f64 * c_k(k)? * mm.powi(2 * k as i32);
            Ok(m / (n as f64 * unit))
        })
        .collect()
}
