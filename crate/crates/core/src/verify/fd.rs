//! Finite-difference checks of the closed-form partial derivatives.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{center_distances_sd, PairSpec};
use crate::paths::{csc_arcs, lrl_gradient_ab, rsl_gradient, word_length, CccRect, Headings, Word};

pub const DEFAULT_STEP: f64 = 1e-5;

/// Analytic and numeric gradients at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdResult {
    pub analytic: (f64, f64),
    pub numeric: (f64, f64),
    /// Step actually used (smaller than requested near the domain edge).
    pub step: f64,
    pub richardson: bool,
}

impl FdResult {
    pub fn max_error(&self) -> f64 {
        (self.analytic.0 - self.numeric.0)
            .abs()
            .max((self.analytic.1 - self.numeric.1).abs())
    }

    /// Agreement within `max(1e-5, 10 h²)` per component.
    pub fn passes(&self) -> bool {
        self.max_error() < tolerance(self.step)
    }
}

pub fn tolerance(h: f64) -> f64 {
    1e-5_f64.max(10.0 * h * h)
}

fn central<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central difference with step `h` when `x` is far from the nearest
/// singularity (at distance `radius`). Closer in, the higher derivatives
/// blow up, so use Richardson extrapolation on a step scaled to `radius`.
fn derivative<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64, radius: f64) -> (f64, f64, bool) {
    if radius >= 1000.0 * h {
        return (central(f, x, h), h, false);
    }
    let h1 = h.min(radius / 8.0);
    (richardson(f, x, h1), h1, true)
}

fn richardson<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (4.0 * central(f, x, h / 2.0) - central(f, x, h)) / 3.0
}

/// Gradient of the RSL length in `(α, β)` against `(1 − cos γ_R, 1 − cos γ_L)`.
///
/// Requires RSL to exist at `p` with both arcs at least `1e-6` long and
/// shorter than a full turn by the same margin.
pub fn fd_check_rsl(p: &PairSpec, h: f64) -> Result<FdResult> {
    let hd = Headings::from_pair(p);
    let arcs = csc_arcs(&hd, Word::Rsl).ok_or_else(|| Error::domain("fd_check_rsl", "RSL does not exist"))?;
    let (gr, gl) = (arcs[0], arcs[2]);
    let arc_room = gr.min(gl).min(TAU - gr).min(TAU - gl);
    if arc_room < 1e-6 {
        return Err(Error::domain("fd_check_rsl", "an arc has near-zero length"));
    }
    let d_rl = center_distances_sd(p.d, p.sigma(), p.delta())[3];
    // Each center moves at unit speed with its heading, so both the arcs
    // and the inner-tangent condition change at most at unit rate.
    let radius = arc_room.min(d_rl - 2.0) * 0.5;
    if radius < 1e-6 {
        return Err(Error::domain("fd_check_rsl", "on the RSL existence boundary"));
    }
    let analytic = rsl_gradient(p).expect("RSL exists");
    let len = |a: f64, b: f64| csc_arcs(&Headings::new(p.d, a, b), Word::Rsl).map_or(f64::NAN, |x| x.iter().sum());
    let (na, step, r1) = derivative(&|a| len(a, p.beta), p.alpha, h, radius);
    let (nb, _, r2) = derivative(&|b| len(p.alpha, b), p.beta, h, radius);
    Ok(FdResult {
        analytic,
        numeric: (na, nb),
        step,
        richardson: r1 || r2,
    })
}

/// Both gradients `(∂/∂σ, ∂/∂δ)` of `L` and of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdLr {
    pub l: FdResult,
    pub r: FdResult,
}

impl FdLr {
    pub fn passes(&self) -> bool {
        self.l.passes() && self.r.passes()
    }

    pub fn max_error(&self) -> f64 {
        self.l.max_error().max(self.r.max_error())
    }
}

/// Checks the four partials of `L` and `R` at an interior point of the
/// rectangle `0 ≤ σ ≤ π, α* ≤ δ ≤ π − α*`.
pub fn fd_check_lr(d: f64, sigma: f64, delta: f64, h: f64) -> Result<FdLr> {
    let rect = CccRect::new(d)?;
    let a_star = rect.alpha_star;
    let edge = sigma.min(PI - sigma).min(delta - a_star).min(PI - a_star - delta);
    if edge <= 0.0 {
        return Err(Error::domain("fd_check_lr", "point is not interior"));
    }
    let v = center_distances_sd(d, sigma, delta);
    let big_d = |x: f64| x * (1.0 - (x / 4.0).powi(2)).max(0.0).sqrt();
    let (dl, dr) = (big_d(v[0]), big_d(v[1]));
    if dl < 1e-6 || dr < 1e-6 {
        return Err(Error::domain("fd_check_lr", "D_L or D_R vanishes"));
    }
    // L and R extend smoothly past the rectangle; only the zeros of D_L and
    // D_R limit the step. The center distances move at rate at most 2 + d.
    let radius = dl.min(dr) / (2.0 * (2.0 + d));
    if radius < 1e-6 {
        return Err(Error::domain("fd_check_lr", "too close to a zero of D_L or D_R"));
    }
    let l = |s: f64, t: f64| {
        let x = center_distances_sd(d, s, t)[0];
        4.0 * (PI - (x / 4.0).min(1.0).asin()) + 2.0 * t - TAU
    };
    let r = |s: f64, t: f64| {
        let x = center_distances_sd(d, s, t)[1];
        4.0 * (PI - (x / 4.0).min(1.0).asin()) - 2.0 * t
    };
    let check = |f: &dyn Fn(f64, f64) -> f64, analytic: (f64, f64)| {
        let (ns, step, r1) = derivative(&|s| f(s, delta), sigma, h, radius);
        let (nd, _, r2) = derivative(&|t| f(sigma, t), delta, h, radius);
        FdResult {
            analytic,
            numeric: (ns, nd),
            step,
            richardson: r1 || r2,
        }
    };
    Ok(FdLr {
        l: check(&l, rect.l_gradient(sigma, delta)?),
        r: check(&r, rect.r_gradient(sigma, delta)?),
    })
}

/// Gradient of the constructed LRL length in `(α, β)` against the closed
/// form, at a point where LRL exists and its outer arcs stay away from
/// zero and a full turn.
pub fn fd_check_lrl(d: f64, alpha: f64, beta: f64, h: f64) -> Result<FdResult> {
    let hd = Headings::new(d, alpha, beta);
    let arcs =
        crate::paths::ccc_arcs(&hd, Word::Lrl).ok_or_else(|| Error::domain("fd_check_lrl", "LRL does not exist"))?;
    let room = arcs[0].min(arcs[2]).min(TAU - arcs[0]).min(TAU - arcs[2]);
    let dl = center_distances_sd(d, 0.5 * (alpha + beta), 0.5 * (beta - alpha))[0];
    let big_d = dl * (1.0 - (dl / 4.0).powi(2)).max(0.0).sqrt();
    // The gradient grows like 1/D_L near the edge of existence, and a fixed
    // step cannot resolve it there.
    if room < 1e-6 || big_d < 0.05 {
        return Err(Error::domain("fd_check_lrl", "arc length or D_L near zero"));
    }
    // Richardson always: the third derivative is large even at moderate D_L.
    let step = h.min(room / 8.0).min(big_d / 16.0);
    let analytic = lrl_gradient_ab(d, alpha, beta)?;
    let len = |a: f64, b: f64| word_length(&Headings::new(d, a, b), Word::Lrl).unwrap_or(f64::NAN);
    Ok(FdResult {
        analytic,
        numeric: (
            richardson(&|a| len(a, beta), alpha, step),
            richardson(&|b| len(alpha, b), beta, step),
        ),
        step,
        richardson: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn rsl_generic_point() {
        let p = PairSpec::new(1.5, 0.3, 5.3).unwrap();
        let r = fd_check_rsl(&p, DEFAULT_STEP).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn rsl_half_turn_last_arc() {
        // Last arc of exactly π gives ∂/∂β = 2.
        let p = PairSpec::new(3.0, 0.0, PI).unwrap();
        let arcs = csc_arcs(&Headings::from_pair(&p), Word::Rsl).unwrap();
        let g = rsl_gradient(&p).unwrap();
        assert!((g.1 - (1.0 - arcs[2].cos())).abs() < 1e-15);
        let q = PairSpec::new(3.0, 0.2, TAU - 0.4).unwrap();
        assert!(fd_check_rsl(&q, DEFAULT_STEP).unwrap().passes());
    }

    #[test]
    fn rsl_zero_arc_is_rejected() {
        // Straight ahead: RSL's arcs both vanish.
        let p = PairSpec::new(3.0, 0.0, 0.0).unwrap();
        assert!(fd_check_rsl(&p, DEFAULT_STEP).is_err());
    }

    #[test]
    fn lr_generic_point() {
        let r = fd_check_lr(1.0, 1.3, 1.9, DEFAULT_STEP).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r.l.analytic.0 < 0.0 && r.r.analytic.0 > 0.0);
        assert!(r.l.analytic.1 > 0.0 && r.r.analytic.1 < 0.0);
    }

    #[test]
    fn lr_rejects_boundary() {
        assert!(fd_check_lr(1.0, PI, 2.0, DEFAULT_STEP).is_err());
    }

    #[test]
    fn lrl_generic_point() {
        let r = fd_check_lrl(1.0, 0.2, 4.5, DEFAULT_STEP).unwrap();
        assert!(r.passes(), "{r:?}");
    }
}
