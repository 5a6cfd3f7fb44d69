//! Seeded samplers for the regions the checks run on.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::regions::{beta_lr, beta_rl, critical_angles, delta_lr_curve};

/// Points closer than this to a region boundary are not drawn, since the
/// shortest length jumps across some of those boundaries.
pub const BOUNDARY_BAND: f64 = 1e-7;

/// Deterministic sampler. The stream for a check depends only on the seed
/// and the check's name, not on which other checks run.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: &str) -> Self {
        // FNV-1a of the stream name, mixed into the seed.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in stream.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed ^ h),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        self.rng.random_range(lo..hi)
    }

    /// `d` in `(lo, hi)`.
    pub fn d(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo, hi)
    }

    /// Any heading pair.
    pub fn square(&mut self) -> (f64, f64) {
        (self.uniform(0.0, TAU), self.uniform(0.0, TAU))
    }

    /// Uniform on the triangle `0 ≤ α ≤ π, α ≤ β ≤ 2π − α`.
    pub fn triangle(&mut self) -> (f64, f64) {
        loop {
            let a = self.uniform(0.0, PI);
            let b = self.uniform(0.0, TAU);
            if b >= a && b <= TAU - a {
                return (a, b);
            }
        }
    }

    /// `(σ, δ)` uniform in σ, then uniform in δ over the part of case A
    /// above σ, for `0 < d < 2`.
    pub fn case_a_gamma(&mut self, d: f64) -> (f64, f64) {
        let sigma = self.uniform(0.0, PI);
        let lo = delta_lr_curve(d, sigma).expect("0 < d < 2");
        let delta = self.uniform(lo + BOUNDARY_BAND, PI - lo - BOUNDARY_BAND);
        (sigma, delta)
    }

    /// `(α, β)` in case B inside the canonical triangle, for `0 < d < 2`.
    pub fn case_b_triangle(&mut self, d: f64) -> (f64, f64) {
        let a_star = critical_angles(d).expect("0 < d < 2").alpha_star;
        let alpha = self.uniform(0.0, a_star - BOUNDARY_BAND);
        let lo = beta_rl(d, alpha).expect("alpha in range");
        let hi = beta_lr(d, alpha).expect("alpha in range");
        let beta = self.uniform(lo + BOUNDARY_BAND, hi - BOUNDARY_BAND);
        (alpha, beta)
    }

    /// `(α, β)` in `B° = {0 ≤ α ≤ α*, β_RL(α) ≤ β ≤ 2π − α}`, away from
    /// its boundary.
    pub fn b_circ(&mut self, d: f64) -> (f64, f64) {
        let a_star = critical_angles(d).expect("0 < d < 2").alpha_star;
        let alpha = self.uniform(BOUNDARY_BAND, a_star - BOUNDARY_BAND);
        let lo = beta_rl(d, alpha).expect("alpha in range");
        let beta = self.uniform(lo + BOUNDARY_BAND, TAU - alpha - BOUNDARY_BAND);
        (alpha, beta)
    }

    /// `(σ, δ)` in the rectangle `0 ≤ σ ≤ π, α* ≤ δ ≤ π − α*`.
    pub fn rect(&mut self, d: f64) -> (f64, f64) {
        let a_star = (d / 2.0).asin();
        (self.uniform(0.0, PI), self.uniform(a_star, PI - a_star))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PairSpec;
    use crate::regions::classify;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = Sampler::new(42, "x");
        let mut b = Sampler::new(42, "x");
        let mut c = Sampler::new(42, "y");
        let (x, y, z) = (a.uniform(0.0, 1.0), b.uniform(0.0, 1.0), c.uniform(0.0, 1.0));
        assert_eq!(x, y);
        assert_ne!(x, z);
    }

    #[test]
    fn region_samplers_hit_their_regions() {
        let mut s = Sampler::new(7, "regions");
        for _ in 0..500 {
            let d = s.d(0.05, 1.95);
            let (sg, dl) = s.case_a_gamma(d);
            assert!(classify(&PairSpec::from_sigma_delta(d, sg, dl).unwrap()).is_a());
            let (a, b) = s.case_b_triangle(d);
            assert!(classify(&PairSpec::new(d, a, b).unwrap()).is_b());
        }
    }
}
