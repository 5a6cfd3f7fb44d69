//! Cases A/B/C by which inner tangents exist, and the curves bounding them.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::bisect::{bisect, BisectOptions};
use crate::error::{Error, Result};
use crate::geometry::{center_distances, center_distances_sq_ab, center_distances_sq_sd, PairSpec};
use crate::EPS_GEOM;

/// Subregions of case C for `0 < d < 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CSub {
    C1,
    C2,
    C3,
    Unresolved,
}

/// A: neither inner tangent exists. B: only RSL exists. C: LSR exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    A,
    B,
    C(Option<CSub>),
}

impl CaseLabel {
    pub fn is_a(&self) -> bool {
        matches!(self, CaseLabel::A)
    }

    pub fn is_b(&self) -> bool {
        matches!(self, CaseLabel::B)
    }

    pub fn is_c(&self) -> bool {
        matches!(self, CaseLabel::C(_))
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::A => f.write_str("A"),
            CaseLabel::B => f.write_str("B"),
            CaseLabel::C(None) => f.write_str("C"),
            CaseLabel::C(Some(CSub::Unresolved)) => f.write_str("C"),
            CaseLabel::C(Some(CSub::C1)) => f.write_str("C1"),
            CaseLabel::C(Some(CSub::C2)) => f.write_str("C2"),
            CaseLabel::C(Some(CSub::C3)) => f.write_str("C3"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalAngles {
    /// `arcsin(d/2)`: the start and goal right disks coincide at
    /// `(α*, 2π − α*)`.
    pub alpha_star: f64,
    /// `arcsin(d/4)`.
    pub sigma_star: f64,
}

pub fn critical_angles(d: f64) -> Result<CriticalAngles> {
    if !(d > 0.0 && d < 2.0) {
        return Err(Error::domain("critical_angles", format!("d = {d} is not in (0, 2)")));
    }
    Ok(CriticalAngles {
        alpha_star: (d / 2.0).asin(),
        sigma_star: (d / 4.0).asin(),
    })
}

pub fn classify(p: &PairSpec) -> CaseLabel {
    let cd = center_distances(p);
    if cd.d_lr >= 2.0 - EPS_GEOM {
        let sub = if p.d > 0.0 && p.d < 2.0 {
            Some(c_subregion(p))
        } else {
            None
        };
        CaseLabel::C(sub)
    } else if cd.d_rl >= 2.0 - EPS_GEOM {
        CaseLabel::B
    } else {
        CaseLabel::A
    }
}

fn c_subregion(p: &PairSpec) -> CSub {
    const TOL: f64 = 1e-9;
    // Exchanging the headings keeps all center distances, and one of the
    // two orders always has a representative in [0, π]².
    let Some((sigma, delta)) = p.gamma_coords().or_else(|| p.swapped().gamma_coords()) else {
        return CSub::Unresolved;
    };
    let d = p.d;
    let Ok(ca) = critical_angles(d) else {
        return CSub::Unresolved;
    };
    if delta_lr_curve(d, sigma).is_ok_and(|c| delta <= c + TOL) {
        return CSub::C1;
    }
    // The distance functions are symmetric under σ ↦ π − σ, so the curve
    // defined on [0, σ*] is mirrored onto [π − σ*, π].
    if sigma >= PI - ca.sigma_star - TOL {
        let s = (PI - sigma).clamp(0.0, ca.sigma_star);
        if delta_rl_curve(d, s).is_ok_and(|c| delta >= PI - c - TOL) {
            return CSub::C2;
        }
    }
    if sigma <= ca.sigma_star + TOL {
        let s = sigma.clamp(0.0, ca.sigma_star);
        if delta_rl_curve(d, s).is_ok_and(|c| delta >= PI - c - TOL) {
            return CSub::C3;
        }
    }
    CSub::Unresolved
}

fn curve_opts() -> BisectOptions {
    BisectOptions::residual(1e-13)
}

/// The `δ ∈ [α*, π/2]` with `d_lr(σ, δ) = 2`.
pub fn delta_lr_curve(d: f64, sigma: f64) -> Result<f64> {
    let ca = critical_angles(d)?;
    if !(0.0..=PI).contains(&sigma) {
        return Err(Error::domain(
            "delta_lr_curve",
            format!("sigma = {sigma} is not in [0, pi]"),
        ));
    }
    if sigma == 0.0 || sigma == PI {
        return Ok(ca.alpha_star);
    }
    let f = |delta: f64| center_distances_sq_sd(d, sigma, delta)[2] - 4.0;
    bisect(f, ca.alpha_star, FRAC_PI_2, curve_opts())
}

/// The `δ ∈ [0, α*]` with `d_rl(σ, δ) = 2`, for `0 ≤ σ ≤ σ*`.
pub fn delta_rl_curve(d: f64, sigma: f64) -> Result<f64> {
    let ca = critical_angles(d)?;
    if !(0.0..=ca.sigma_star).contains(&sigma) {
        return Err(Error::domain(
            "delta_rl_curve",
            format!("sigma = {sigma} is not in [0, {}]", ca.sigma_star),
        ));
    }
    if sigma == 0.0 {
        return Ok(ca.alpha_star);
    }
    if sigma == ca.sigma_star {
        return Ok(0.0);
    }
    let f = |delta: f64| center_distances_sq_sd(d, sigma, delta)[3] - 4.0;
    bisect(f, 0.0, ca.alpha_star, curve_opts())
}

fn beta_curve(d: f64, alpha: f64, which: usize, op: &'static str) -> Result<f64> {
    let ca = critical_angles(d)?;
    if !(0.0..=ca.alpha_star).contains(&alpha) {
        return Err(Error::domain(
            op,
            format!("alpha = {alpha} is not in [0, {}]", ca.alpha_star),
        ));
    }
    if alpha == ca.alpha_star {
        return Ok(TAU - ca.alpha_star);
    }
    let f = |beta: f64| center_distances_sq_ab(d, alpha, beta)[which] - 4.0;
    // Just below α* the root merges into the upper end within rounding.
    if f(TAU - alpha).abs() <= 1e-13 {
        return Ok(TAU - alpha);
    }
    bisect(f, alpha + PI, TAU - alpha, curve_opts())
}

/// The `β ∈ (α + π, 2π − α)` with `d_lr(α, β) = 2`, for `0 ≤ α ≤ α*`.
pub fn beta_lr(d: f64, alpha: f64) -> Result<f64> {
    beta_curve(d, alpha, 2, "beta_lr")
}

/// The `β ∈ (α + π, 2π − α)` with `d_rl(α, β) = 2`, for `0 ≤ α ≤ α*`.
pub fn beta_rl(d: f64, alpha: f64) -> Result<f64> {
    beta_curve(d, alpha, 3, "beta_rl")
}
