//! Bisection on monotone functions.
//!
//! Every one-dimensional search in this crate runs on a function whose
//! monotonicity (or single sign change) on the bracket is known in advance,
//! so plain bisection is all that is needed.

use crate::error::{Error, Result};

/// Stopping rules for [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectOptions {
    /// Stop once the bracket is at most this wide.
    pub x_tol: f64,
    /// Stop once `|f(mid)|` is at most this value.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for BisectOptions {
    fn default() -> Self {
        BisectOptions {
            x_tol: 1e-12,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

impl BisectOptions {
    /// Residual-driven search: keep halving until `|f| < f_tol` or the
    /// bracket collapses to adjacent floats.
    pub fn residual(f_tol: f64) -> Self {
        BisectOptions {
            x_tol: 0.0,
            f_tol,
            max_iter: 200,
        }
    }

    pub fn width(x_tol: f64) -> Self {
        BisectOptions {
            x_tol,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[lo, hi]`.
///
/// `f(lo)` and `f(hi)` must not have the same strict sign. An endpoint where
/// `f` vanishes exactly is returned as is.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, opts: BisectOptions) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
    }
    let lo_negative = f_lo < 0.0;

    for _ in 0..opts.max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid.abs() <= opts.f_tol || f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= opts.x_tol {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
