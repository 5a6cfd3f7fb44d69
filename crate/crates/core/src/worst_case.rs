//! The worst-case extra length `Dub(d) = sup ℓ(d, α, β) − d`.
//!
//! For `d < √2` the supremum is the common value `A(d)` of the LRL and RLR
//! lengths at a point of case A. For `√2 ≤ d < d*` it is approached, but not
//! reached, along the LSR existence boundary where LRL and RSL lengths meet
//! (`B(d)`). From `d*` on it is `2π`, reached at `(π, π)`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bisect::{bisect, BisectOptions};
use crate::error::{Error, Result};
use crate::geometry::{reduce_to_triangle, PairSpec};
use crate::paths::{csc_arcs, lrl_closed_form_ab, CccRect, Headings, Word};
use crate::regions::{beta_lr, beta_rl, critical_angles};

/// Which case realizes the supremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    A,
    B,
    C,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DubPoint {
    pub d: f64,
    pub dub: f64,
    pub case: Case,
    pub alpha: f64,
    pub beta: f64,
    pub attained: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseAWitness {
    pub sigma_a: f64,
    pub delta_a: f64,
    /// `A(d)`, the common LRL/RLR length.
    pub value: f64,
    /// The witness as headings, reduced to the canonical triangle.
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseBWitness {
    pub alpha_b: f64,
    pub beta_b: f64,
    /// `B(d)`, the common LRL/RSL length at the witness.
    pub value: f64,
}

/// RSL length on `B° = {0 ≤ α ≤ α*, β_RL(α) ≤ β ≤ 2π − α}` (raw headings,
/// `β` up to `2π`), replaced by its limits at the two points where the
/// length jumps: `d + 2π` at `(0, 2π)` and `2α* + 2π` at `(α*, 2π − α*)`.
pub fn rsl_prime(d: f64, alpha: f64, beta: f64) -> Result<f64> {
    const TOL: f64 = 1e-9;
    let a_star = critical_angles(d)?.alpha_star;
    if alpha < -TOL || alpha > a_star + TOL || beta > TAU - alpha + TOL {
        return Err(Error::domain("rsl_prime", format!("({alpha}, {beta}) is outside B°")));
    }
    let alpha = alpha.clamp(0.0, a_star);
    if beta < beta_rl(d, alpha)? - TOL {
        return Err(Error::domain(
            "rsl_prime",
            format!("({alpha}, {beta}) is below beta_rl"),
        ));
    }
    if alpha.abs() < 1e-12 && (beta - TAU).abs() < 1e-12 {
        return Ok(d + TAU);
    }
    if (alpha - a_star).abs() < 1e-12 && (beta - (TAU - a_star)).abs() < 1e-12 {
        return Ok(2.0 * a_star + TAU);
    }
    let arcs = csc_arcs(&Headings::new(d, alpha, beta), Word::Rsl)
        .ok_or_else(|| Error::domain("rsl_prime", "RSL does not exist"))?;
    Ok(arcs.iter().sum())
}

/// The maximizer of `min(L, R)` over case A, for `0 < d < 2`.
pub fn case_a_witness(d: f64) -> Result<CaseAWitness> {
    if !(d > 0.0 && d < 2.0) {
        return Err(Error::domain("case_a_witness", format!("d = {d} is not in (0, 2)")));
    }
    let rect = CccRect::new(d)?;
    let a_star = rect.alpha_star;
    let top = PI - a_star;
    let diff = |s: f64, t: f64| rect.l(s, t).unwrap_or(f64::NAN) - rect.r(s, t).unwrap_or(f64::NAN);
    let opts = BisectOptions::residual(1e-13);
    let (sigma, delta) = if d <= SQRT_2 {
        // L − R increases along σ = π.
        let t = match bisect(|t| diff(PI, t), FRAC_PI_2, top, opts) {
            Ok(t) => t,
            Err(Error::NoBracket { .. }) => top,
            Err(e) => return Err(e),
        };
        (PI, t)
    } else {
        // L − R decreases along δ = π − α*.
        let s = match bisect(|s| diff(s, top), FRAC_PI_2, PI, opts) {
            Ok(s) => s,
            Err(Error::NoBracket { .. }) => PI,
            Err(e) => return Err(e),
        };
        (s, top)
    };
    let value = rect.l(sigma, delta)?;
    let p = reduce_to_triangle(&PairSpec::from_sigma_delta(d, sigma, delta)?);
    Ok(CaseAWitness {
        sigma_a: sigma,
        delta_a: delta,
        value,
        alpha: p.alpha,
        beta: p.beta,
    })
}

fn lrl_on_lr_curve(d: f64, alpha: f64) -> Result<(f64, f64)> {
    let beta = beta_lr(d, alpha)?;
    Ok((beta, lrl_closed_form_ab(d, alpha, beta)?))
}

/// The point of the LSR boundary curve in case B where LRL and RSL (with
/// its limit values) have equal length, for `√2 ≤ d < 2`.
pub fn case_b_witness(d: f64) -> Result<CaseBWitness> {
    if !(SQRT_2..2.0).contains(&d) {
        return Err(Error::domain(
            "case_b_witness",
            format!("d = {d} is not in [sqrt 2, 2)"),
        ));
    }
    let a_star = critical_angles(d)?.alpha_star;
    // LRL − RSL along the curve decreases in α.
    let g = |alpha: f64| -> f64 {
        let Ok((beta, lrl)) = lrl_on_lr_curve(d, alpha) else {
            return f64::NAN;
        };
        rsl_prime(d, alpha, beta).map_or(f64::NAN, |rsl| lrl - rsl)
    };
    let alpha_b = if g(a_star) >= 0.0 {
        a_star
    } else if g(0.0) <= 0.0 {
        0.0
    } else {
        bisect(g, 0.0, a_star, BisectOptions::width(1e-14))?
    };
    let (beta_b, value) = lrl_on_lr_curve(d, alpha_b)?;
    Ok(CaseBWitness { alpha_b, beta_b, value })
}

fn dub_b(d: f64) -> Result<f64> {
    Ok(case_b_witness(d)?.value - d)
}

/// Root of `Dub_B(d) = 2π` on `[√2, 2)`, computed afresh. Prefer [`d_star`].
pub fn compute_d_star() -> f64 {
    let f = |d: f64| dub_b(d).map_or(f64::NAN, |v| v - TAU);
    bisect(f, SQRT_2, 2.0 - 1e-9, BisectOptions::width(1e-14)).expect("Dub_B - 2π changes sign on [√2, 2)")
}

/// The distance from which on `Dub(d) = 2π`. Computed once per process.
pub fn d_star() -> f64 {
    static D_STAR: OnceLock<f64> = OnceLock::new();
    *D_STAR.get_or_init(compute_d_star)
}

/// Evaluates `Dub` with a fixed breakpoint `d*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DubSolver {
    pub d_star: f64,
}

impl Default for DubSolver {
    fn default() -> Self {
        DubSolver { d_star: d_star() }
    }
}

impl DubSolver {
    pub fn with_d_star(d_star: f64) -> Self {
        DubSolver { d_star }
    }

    pub fn dub(&self, d: f64) -> Result<DubPoint> {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::domain("dub", format!("d = {d} must be >= 0")));
        }
        if d == 0.0 {
            return Ok(DubPoint {
                d,
                dub: 7.0 * PI / 3.0,
                case: Case::A,
                alpha: 0.0,
                beta: PI,
                attained: true,
            });
        }
        if d >= self.d_star {
            return Ok(DubPoint {
                d,
                dub: TAU,
                case: Case::C,
                alpha: PI,
                beta: PI,
                attained: true,
            });
        }
        if d < SQRT_2 {
            let w = case_a_witness(d)?;
            return Ok(DubPoint {
                d,
                dub: w.value - d,
                case: Case::A,
                alpha: w.alpha,
                beta: w.beta,
                attained: true,
            });
        }
        let w = case_b_witness(d)?;
        Ok(DubPoint {
            d,
            dub: w.value - d,
            case: Case::B,
            alpha: w.alpha_b,
            beta: w.beta_b,
            attained: false,
        })
    }
}

pub fn dub(d: f64) -> Result<DubPoint> {
    DubSolver::default().dub(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioConstants {
    /// `1 + π`.
    pub a: f64,
    /// `2 + 2π`.
    pub b: f64,
    /// `max(a, π/2 + b/π) = 2 + 2/π + π/2`.
    pub ratio: f64,
    /// `1 + max Dub(d)/d` over sampled `d ≥ 2`.
    pub a_sampled: f64,
    /// `max (Dub(d) + d)` over sampled `d ≤ 2`.
    pub b_sampled: f64,
}

pub fn approx_ratio_constants() -> RatioConstants {
    let a = 1.0 + PI;
    let b = 2.0 + TAU;
    let ratio = a.max(FRAC_PI_2 + b / PI);
    let solver = DubSolver::default();
    let value = |d: f64| solver.dub(d).map(|p| p.dub).unwrap_or(f64::NAN);

    let mut a_sampled = f64::NEG_INFINITY;
    for k in 0..=1000 {
        let d = 2.0 + k as f64 * 0.1;
        a_sampled = a_sampled.max(1.0 + value(d) / d);
    }
    let mut b_sampled = f64::NEG_INFINITY;
    for k in 0..=2000 {
        let d = k as f64 * 1e-3;
        b_sampled = b_sampled.max(value(d) + d);
    }
    RatioConstants {
        a,
        b,
        ratio,
        a_sampled,
        b_sampled,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rsl_prime_special_points() {
        let d = 1.5;
        let a = (d / 2.0f64).asin();
        assert_abs_diff_eq!(rsl_prime(d, 0.0, TAU).unwrap(), d + TAU);
        assert_abs_diff_eq!(rsl_prime(d, a, TAU - a).unwrap(), 2.0 * a + TAU);
        assert!(rsl_prime(d, a + 0.1, 5.0).is_err());
        assert!(rsl_prime(d, 0.0, 3.2).is_err());
    }

    #[test]
    fn a_at_sqrt2() {
        let w = case_a_witness(SQRT_2).unwrap();
        assert_abs_diff_eq!(w.value, 2.5 * PI, epsilon = 1e-9);
        assert_abs_diff_eq!(w.sigma_a, PI, epsilon = 1e-9);
        assert_abs_diff_eq!(w.delta_a, 0.75 * PI, epsilon = 1e-9);
    }

    #[test]
    fn a_is_balanced() {
        for d in [0.01, 0.5, 1.0, 1.3, 1.5, 1.9] {
            let w = case_a_witness(d).unwrap();
            let r = CccRect::new(d).unwrap();
            let l = r.l(w.sigma_a, w.delta_a).unwrap();
            let rr = r.r(w.sigma_a, w.delta_a).unwrap();
            assert!((l - rr).abs() < 1e-10, "d = {d}: {l} vs {rr}");
            assert!(w.sigma_a + w.delta_a > PI);
        }
        assert!((case_a_witness(1e-9).unwrap().value - 7.0 * PI / 3.0).abs() < 1e-6);
    }

    #[test]
    fn b_matches_a_at_sqrt2() {
        let w = case_b_witness(SQRT_2).unwrap();
        assert_abs_diff_eq!(w.value, 2.5 * PI, epsilon = 1e-9);
    }

    #[test]
    fn d_star_value() {
        let ds = d_star();
        assert!((ds - 1.5874).abs() < 5e-4, "d* = {ds}");
        assert!((dub_b(ds).unwrap() - TAU).abs() < 1e-9);
    }

    #[test]
    fn dub_pieces() {
        let p0 = dub(0.0).unwrap();
        assert_abs_diff_eq!(p0.dub, 7.0 * PI / 3.0);
        assert_eq!((p0.alpha, p0.beta), (0.0, PI));
        let p = dub(SQRT_2).unwrap();
        assert_abs_diff_eq!(p.dub, 2.5 * PI - SQRT_2, epsilon = 1e-9);
        assert!(!p.attained);
        let p3 = dub(3.0).unwrap();
        assert_eq!((p3.dub, p3.alpha, p3.beta, p3.attained), (TAU, PI, PI, true));
        assert!(dub(-1.0).is_err());
    }

    #[test]
    fn injected_d_star() {
        let s = DubSolver::with_d_star(1.5);
        assert_eq!(s.dub(1.55).unwrap().dub, TAU);
    }

    #[test]
    fn ratio_constants() {
        let r = approx_ratio_constants();
        assert_abs_diff_eq!(r.ratio, 2.0 + 2.0 / PI + FRAC_PI_2, epsilon = 1e-15);
        assert!((r.a_sampled - r.a).abs() < 5e-3);
        assert!((r.b_sampled - r.b).abs() < 5e-3);
    }
}
