//! Canonical instances, tangent-disk centers and the symmetries of the
//! heading square.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference `a - b` wrapped into `(-π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let r = (a - b).rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// A planar pose. `theta` is kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Configuration {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Configuration {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Configuration {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    /// Largest of the position error and the wrapped heading error.
    pub fn distance_to(&self, other: &Configuration) -> f64 {
        let pos = (self.x - other.x).hypot(self.y - other.y);
        pos.max(angle_diff(self.theta, other.theta).abs())
    }
}

/// Canonical instance: start `(0, 0, alpha)`, goal `(d, 0, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSpec {
    pub d: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl PairSpec {
    pub fn new(d: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::domain("PairSpec::new", format!("d = {d} must be >= 0")));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::domain("PairSpec::new", "angles must be finite"));
        }
        Ok(PairSpec {
            d,
            alpha: normalize_angle(alpha),
            beta: normalize_angle(beta),
        })
    }

    /// Builds the instance with `alpha = sigma - delta`, `beta = sigma + delta`.
    pub fn from_sigma_delta(d: f64, sigma: f64, delta: f64) -> Result<Self> {
        PairSpec::new(d, sigma - delta, sigma + delta)
    }

    pub fn sigma(&self) -> f64 {
        0.5 * (self.beta + self.alpha)
    }

    pub fn delta(&self) -> f64 {
        0.5 * (self.beta - self.alpha)
    }

    /// The pair with headings exchanged. Center distances are unchanged.
    pub fn swapped(&self) -> PairSpec {
        PairSpec {
            d: self.d,
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// A representative `(σ, δ)` of this instance inside `[0, π]²`, if one
    /// exists. Shifting `(σ, δ)` by `(π, ±π)` does not change the headings
    /// modulo 2π, so only half of all instances have such a representative.
    pub fn gamma_coords(&self) -> Option<(f64, f64)> {
        const TOL: f64 = 1e-12;
        let (s0, d0) = (self.sigma(), self.delta());
        for (ks, kd) in [(0, 0), (-1, 1), (-1, -1), (1, 1), (1, -1), (0, 2), (0, -2), (-2, 0)] {
            let s = s0 + ks as f64 * PI;
            let t = d0 + kd as f64 * PI;
            if (-TOL..=PI + TOL).contains(&s) && (-TOL..=PI + TOL).contains(&t) {
                return Some((s.clamp(0.0, PI), t.clamp(0.0, PI)));
            }
        }
        None
    }
}

/// Translation followed by a rotation about the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RigidMotion {
    pub tx: f64,
    pub ty: f64,
    pub rotation: f64,
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion {
            tx: 0.0,
            ty: 0.0,
            rotation: 0.0,
        }
    }

    pub fn apply(&self, c: &Configuration) -> Configuration {
        let (s, co) = self.rotation.sin_cos();
        let x = c.x + self.tx;
        let y = c.y + self.ty;
        Configuration::new(co * x - s * y, s * x + co * y, c.theta + self.rotation)
    }

    /// Maps a canonical-frame pose back to the original frame.
    pub fn apply_inverse(&self, c: &Configuration) -> Configuration {
        let (s, co) = self.rotation.sin_cos();
        let x = co * c.x + s * c.y;
        let y = -s * c.x + co * c.y;
        Configuration::new(x - self.tx, y - self.ty, c.theta - self.rotation)
    }
}

/// Moves `start` to the origin and `goal` onto the positive x-axis.
pub fn canonicalize(start: &Configuration, goal: &Configuration) -> (PairSpec, RigidMotion) {
    let dx = goal.x - start.x;
    let dy = goal.y - start.y;
    let d = dx.hypot(dy);
    let phi = if d == 0.0 { 0.0 } else { dy.atan2(dx) };
    let motion = RigidMotion {
        tx: -start.x,
        ty: -start.y,
        rotation: -phi,
    };
    let p = PairSpec {
        d,
        alpha: normalize_angle(start.theta - phi),
        beta: normalize_angle(goal.theta - phi),
    };
    (p, motion)
}

/// Centers of the unit disks tangent to the start and goal poses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleCenters {
    pub l_s: (f64, f64),
    pub r_s: (f64, f64),
    pub l_f: (f64, f64),
    pub r_f: (f64, f64),
}

pub fn circle_centers(p: &PairSpec) -> CircleCenters {
    let (sa, ca) = p.alpha.sin_cos();
    let (sb, cb) = p.beta.sin_cos();
    CircleCenters {
        l_s: (-sa, ca),
        r_s: (sa, -ca),
        l_f: (p.d - sb, cb),
        r_f: (p.d + sb, -cb),
    }
}

/// Distances between same-side (`d_l`, `d_r`) and opposite-side
/// (`d_lr` = left start to right goal, `d_rl`) tangent disks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterDistances {
    pub d_l: f64,
    pub d_r: f64,
    pub d_lr: f64,
    pub d_rl: f64,
}

/// Squared center distances from the heading-pair formulas.
pub fn center_distances_sq_ab(d: f64, alpha: f64, beta: f64) -> [f64; 4] {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let sq = |x: f64, y: f64| x * x + y * y;
    [
        sq(d - sb + sa, cb - ca),
        sq(d + sb - sa, ca - cb),
        sq(d + sb + sa, cb + ca),
        sq(d - sb - sa, cb + ca),
    ]
}

/// Center distances from the half-sum/half-difference parameterization.
///
/// Each distance is the length of a difference vector such as
/// `(d − 2 cos σ sin δ, −2 sin σ sin δ)` for `d_l`; its square expands to
/// `d² − 4d sin δ cos σ + 4 sin² δ`. Taking `hypot` of the components avoids
/// the cancellation the expanded form suffers near coincident disks.
pub fn center_distances_sd(d: f64, sigma: f64, delta: f64) -> [f64; 4] {
    let (ss, cs) = sigma.sin_cos();
    let (sd, cd) = delta.sin_cos();
    let (a, b) = (2.0 * cs * sd, 2.0 * ss * sd);
    let (c, e) = (2.0 * ss * cd, 2.0 * cs * cd);
    [(d - a).hypot(b), (d + a).hypot(b), (d + c).hypot(e), (d - c).hypot(e)]
}

/// Squares of [`center_distances_sd`].
pub fn center_distances_sq_sd(d: f64, sigma: f64, delta: f64) -> [f64; 4] {
    center_distances_sd(d, sigma, delta).map(|x| x * x)
}

pub fn center_distances(p: &PairSpec) -> CenterDistances {
    let v = center_distances_sd(p.d, p.sigma(), p.delta());
    #[cfg(debug_assertions)]
    {
        let ab = center_distances_sq_ab(p.d, p.alpha, p.beta);
        for (x, y) in v.iter().zip(ab.iter()) {
            let x2 = x * x;
            debug_assert!(
                (x2 - y).abs() <= 1e-12 * x2.max(1.0) * (p.d + 2.0),
                "center distance forms disagree: {x2} vs {y} for {p:?}"
            );
        }
    }
    CenterDistances {
        d_l: v[0],
        d_r: v[1],
        d_lr: v[2],
        d_rl: v[3],
    }
}

/// `|p(θ−φ) q(θ+φ)|²` with `p(t) = (cos t, sin t)` and `q(t) = (d − cos t, sin t)`.
pub fn equal_angle_distance(d: f64, theta: f64, phi: f64) -> f64 {
    let ct = theta.cos();
    d * d - 4.0 * d * ct * phi.cos() + 4.0 * ct * ct
}

/// The `(θ, φ)` arguments for which [`equal_angle_distance`] reproduces the
/// squared `d_l`, `d_r`, `d_lr`, `d_rl`, in that order.
pub fn equal_angle_substitutions(sigma: f64, delta: f64) -> [(f64, f64); 4] {
    let h = 0.5 * PI;
    [
        (h - delta, -sigma),
        (h - delta, PI - sigma),
        (PI - delta, h - sigma),
        (-delta, h - sigma),
    ]
}

/// Whether `(alpha, beta)` lies in the triangle
/// `0 ≤ α ≤ π, α ≤ β ≤ 2π − α` (with a small tolerance).
pub fn in_triangle(alpha: f64, beta: f64, tol: f64) -> bool {
    let a = if alpha > TAU - tol { alpha - TAU } else { alpha };
    a >= -tol && a <= PI + tol && beta >= a - tol && beta <= TAU - a + tol
}

/// The orbit of `p` under `(α, β) ↦ (−α, −β)` and `(α, β) ↦ (2π − β, 2π − α)`.
///
/// The identity comes first, so the first element is always `p` itself.
pub fn symmetry_images(p: &PairSpec) -> Vec<PairSpec> {
    let (a, b) = (p.alpha, p.beta);
    let candidates = [(a, b), (-a, -b), (TAU - b, TAU - a), (b, a)];
    let mut out: Vec<PairSpec> = Vec::with_capacity(4);
    for (x, y) in candidates {
        let q = PairSpec {
            d: p.d,
            alpha: normalize_angle(x),
            beta: normalize_angle(y),
        };
        let dup = out
            .iter()
            .any(|o| angle_diff(o.alpha, q.alpha).abs() < 1e-12 && angle_diff(o.beta, q.beta).abs() < 1e-12);
        if !dup {
            out.push(q);
        }
    }
    out
}

/// The first symmetry image of `p` that lies in the canonical triangle.
pub fn reduce_to_triangle(p: &PairSpec) -> PairSpec {
    let images = symmetry_images(p);
    for q in &images {
        if in_triangle(q.alpha, q.beta, 1e-12) {
            return *q;
        }
    }
    // Reached only through rounding right on an edge of the triangle.
    images
        .into_iter()
        .min_by(|x, y| triangle_excess(x).total_cmp(&triangle_excess(y)))
        .unwrap_or(*p)
}

fn triangle_excess(p: &PairSpec) -> f64 {
    let a = if p.alpha > PI * 1.5 { p.alpha - TAU } else { p.alpha };
    let e = [-a, a - PI, a - p.beta, p.beta - (TAU - a)];
    e.into_iter().fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn canonical_already() {
        let (p, m) = canonicalize(&Configuration::new(0.0, 0.0, 0.0), &Configuration::new(1.0, 0.0, 0.0));
        assert_eq!((p.d, p.alpha, p.beta), (1.0, 0.0, 0.0));
        assert_eq!(m.tx, 0.0);
        assert_eq!(m.ty, 0.0);
        assert_eq!(m.rotation, 0.0);
    }

    #[test]
    fn canonicalize_vertical_pair() {
        let s = Configuration::new(1.0, 1.0, FRAC_PI_2);
        let g = Configuration::new(1.0, 2.0, FRAC_PI_2);
        let (p, m) = canonicalize(&s, &g);
        assert_abs_diff_eq!(p.d, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(angle_diff(p.alpha, 0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(angle_diff(p.beta, 0.0), 0.0, epsilon = 1e-15);
        assert!(m.apply(&s).distance_to(&Configuration::new(0.0, 0.0, p.alpha)) < 1e-12);
        assert!(m.apply(&g).distance_to(&Configuration::new(1.0, 0.0, p.beta)) < 1e-12);
    }

    #[test]
    fn canonicalize_3_4_5() {
        let s = Configuration::new(0.0, 0.0, PI / 4.0);
        let g = Configuration::new(3.0, 4.0, PI / 4.0);
        let (p, m) = canonicalize(&s, &g);
        let expected = normalize_angle(PI / 4.0 - 4f64.atan2(3.0));
        assert_abs_diff_eq!(p.d, 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.alpha, expected, epsilon = 1e-14);
        assert_abs_diff_eq!(p.beta, expected, epsilon = 1e-14);
        assert!(m.apply(&g).distance_to(&Configuration::new(5.0, 0.0, p.beta)) < 1e-12);
        assert!(m.apply_inverse(&m.apply(&g)).distance_to(&g) < 1e-12);
    }

    #[test]
    fn centers_for_straight_pair() {
        let c = circle_centers(&PairSpec::new(2.0, 0.0, 0.0).unwrap());
        assert_eq!(c.l_s, (-0.0, 1.0));
        assert_eq!(c.r_s, (0.0, -1.0));
        assert_eq!(c.l_f, (2.0, 1.0));
        assert_eq!(c.r_f, (2.0, -1.0));
    }

    #[test]
    fn centers_for_upward_pair() {
        let c = circle_centers(&PairSpec::new(1.0, FRAC_PI_2, FRAC_PI_2).unwrap());
        let close = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15;
        assert!(close(c.l_s, (-1.0, 0.0)));
        assert!(close(c.r_s, (1.0, 0.0)));
        assert!(close(c.l_f, (0.0, 0.0)));
        assert!(close(c.r_f, (2.0, 0.0)));
    }

    #[test]
    fn distances_at_zero_headings() {
        for d in [0.0, 0.5, 1.0, 3.0] {
            let cd = center_distances(&PairSpec::new(d, 0.0, 0.0).unwrap());
            assert_abs_diff_eq!(cd.d_l, d, epsilon = 1e-12);
            assert_abs_diff_eq!(cd.d_r, d, epsilon = 1e-12);
            assert_abs_diff_eq!(cd.d_lr, (d * d + 4.0).sqrt(), epsilon = 1e-12);
            assert_abs_diff_eq!(cd.d_rl, (d * d + 4.0).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn distances_at_pi_pi() {
        let cd = center_distances(&PairSpec::new(1.0, PI, PI).unwrap());
        assert_abs_diff_eq!(cd.d_rl, 5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn distances_at_centre_of_gamma() {
        let p = PairSpec::from_sigma_delta(1.0, FRAC_PI_2, FRAC_PI_2).unwrap();
        let cd = center_distances(&p);
        assert_abs_diff_eq!(cd.d_lr, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cd.d_rl, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn equal_angle_examples() {
        assert_abs_diff_eq!(equal_angle_distance(1.7, FRAC_PI_2, 0.3), 1.7 * 1.7, epsilon = 1e-12);
        assert_abs_diff_eq!(equal_angle_distance(0.0, 0.4, 2.0), 4.0 * 0.4f64.cos().powi(2));
    }

    #[test]
    fn symmetry_fixed_point() {
        let imgs = symmetry_images(&PairSpec::new(1.0, 0.0, 0.0).unwrap());
        assert_eq!(imgs.len(), 1);
    }

    #[test]
    fn symmetry_orbit_contents() {
        let imgs = symmetry_images(&PairSpec::new(1.0, FRAC_PI_2, PI).unwrap());
        let has = |a: f64, b: f64| {
            imgs.iter()
                .any(|q| angle_diff(q.alpha, a).abs() < 1e-12 && angle_diff(q.beta, b).abs() < 1e-12)
        };
        assert!(has(1.5 * PI, PI));
        assert!(has(PI, 1.5 * PI));
    }

    #[test]
    fn reduce_examples() {
        let q = reduce_to_triangle(&PairSpec::new(1.0, 1.5 * PI, FRAC_PI_2).unwrap());
        assert_abs_diff_eq!(q.alpha, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(q.beta, 1.5 * PI, epsilon = 1e-12);
        let p = PairSpec::new(1.0, PI / 4.0, FRAC_PI_2).unwrap();
        assert_eq!(reduce_to_triangle(&p), p);
    }

    #[test]
    fn gamma_coords_of_triangle_points() {
        let p = PairSpec::new(1.0, 0.3, 5.0).unwrap();
        let (s, t) = p.gamma_coords().unwrap();
        assert_abs_diff_eq!(s, 2.65, epsilon = 1e-12);
        assert_abs_diff_eq!(t, 2.35, epsilon = 1e-12);
        // β < α maps outside of [0, π]², the swapped pair maps inside.
        let q = PairSpec::new(1.0, 2.0, 1.0).unwrap();
        assert!(q.gamma_coords().is_none());
        assert!(q.swapped().gamma_coords().is_some());
    }
}
