//! Scalar root finding and univariate maximisation.

use crate::error::{Error, Result};

/// Root of `f` on `[lo, hi]`: bisection until the bracket is narrower than
/// `bracket_tol`, then Newton steps that are kept only while they stay in
/// the bracket and reduce `|f|`.
pub fn bisect_newton<F, D>(f: F, df: D, lo: f64, hi: f64, bracket_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    while b - a > bracket_tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    for _ in 0..50 {
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - fx / d;
        if !(lo..=hi).contains(&next) {
            break;
        }
        let fn_ = f(next);
        if fn_.abs() >= fx.abs() {
            if fn_.abs() == fx.abs() {
                x = next;
            }
            break;
        }
        x = next;
        fx = fn_;
        if fx == 0.0 {
            break;
        }
    }
    Ok(x)
}

/// Maximiser of a unimodal `f` on `[lo, hi]` by golden-section search.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Best point of `f` on the uniform grid with `points` intervals over
/// `[lo, hi]`, endpoints included.
pub fn grid_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let step = (hi - lo) / points as f64;
    (0..=points)
        .map(|i| {
            let x = if i == points {
                hi
            } else {
                lo + step * i as f64
            };
            (x, f(x))
        })
        .fold((lo, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

/// Grid search followed by golden-section refinement around the best grid
/// point. Returns `(argmax, max)`; the refined point is used only if it
/// improves on the grid.
pub fn maximize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let (gx, gv) = grid_max(&f, lo, hi, points);
    let step = (hi - lo) / points as f64;
    let a = (gx - step).max(lo);
    let b = (gx + step).min(hi);
    let (rx, rv) = golden_section_max(&f, a, b, 1e-13 * (hi - lo).max(1.0));
    if rv > gv {
        (rx, rv)
    } else {
        (gx, gv)
    }
}
