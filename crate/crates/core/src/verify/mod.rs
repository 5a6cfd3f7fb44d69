//! Brute-force oracle for `sup ℓ − d` and numeric checks of the structural
//! facts the solver relies on.

pub mod fd;
mod lemmas;
mod sampling;

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::paths::{shortest_length_h, Headings};

pub use lemmas::{lemma_suite, run_lemma, DEFAULT_GRID, LEMMA_IDS};
pub use sampling::Sampler;

/// Result of a grid search over the canonical triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridReport {
    pub d: f64,
    pub n: usize,
    /// Largest `ℓ − d` on the grid. A lower bound for `Dub(d)`.
    pub sup_est: f64,
    pub argmax: (f64, f64),
    /// Wall-clock time; not part of the deterministic payload.
    #[serde(skip)]
    pub runtime_hint: Duration,
}

/// Grid point `(i, j)` of the `n × n` grid on the triangle
/// `0 ≤ α ≤ π, α ≤ β ≤ 2π − α`: row `i` has `α = iπ/(n−1)` and its `n`
/// points spread evenly over `[α, 2π − α]`. The grid for `2n − 1` contains
/// the grid for `n`.
pub fn grid_point(n: usize, i: usize, j: usize) -> (f64, f64) {
    let m = (n - 1) as f64;
    let alpha = i as f64 * PI / m;
    let beta = alpha + j as f64 * (TAU - 2.0 * alpha) / m;
    (alpha, beta)
}

/// Max of `ℓ(d, α, β) − d` over the grid of [`grid_point`]. Ties go to the
/// lowest `(i, j)`, so the result does not depend on scheduling.
pub fn grid_sup(d: f64, n: usize) -> GridReport {
    assert!(n >= 2, "grid_sup needs n >= 2");
    let start = Instant::now();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::NEG_INFINITY, i, 0usize);
            for j in 0..n {
                let (a, b) = grid_point(n, i, j);
                let v = shortest_length_h(&Headings::new(d, a, b)) - d;
                if v > best.0 {
                    best = (v, i, j);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX, usize::MAX),
            |x, y| {
                if y.0 > x.0 || (y.0 == x.0 && (y.1, y.2) < (x.1, x.2)) {
                    y
                } else {
                    x
                }
            },
        );
    GridReport {
        d,
        n,
        sup_est: best.0,
        argmax: grid_point(n, best.1, best.2),
        runtime_hint: start.elapsed(),
    }
}

/// Outcome of one numeric check battery.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub samples: usize,
    pub violations: usize,
    /// Smallest slack seen: `rhs − lhs` for inequalities `lhs ≤ rhs`, and
    /// `−|lhs − rhs|` for identities. Negative beyond the tolerance means
    /// a violation.
    pub worst_margin: f64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.samples > 0
    }
}

/// Accumulates checks for one [`LemmaReport`].
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    id: &'static str,
    samples: usize,
    violations: usize,
    worst: f64,
}

impl Tally {
    pub(crate) fn new(id: &'static str) -> Self {
        Tally {
            id,
            samples: 0,
            violations: 0,
            worst: f64::INFINITY,
        }
    }

    pub(crate) fn sample(&mut self) {
        self.samples += 1;
    }

    fn record(&mut self, margin: f64, ok: bool) {
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if margin < self.worst {
            self.worst = margin;
        }
        if !ok {
            self.violations += 1;
        }
    }

    /// Requires `lhs ≤ rhs + tol`.
    pub(crate) fn le(&mut self, lhs: f64, rhs: f64, tol: f64) {
        let m = rhs - lhs;
        self.record(m, m >= -tol);
    }

    /// Requires `lhs < rhs` strictly.
    pub(crate) fn lt(&mut self, lhs: f64, rhs: f64) {
        let m = rhs - lhs;
        self.record(m, m > 0.0);
    }

    /// Requires `|lhs − rhs| ≤ tol`.
    pub(crate) fn eq(&mut self, lhs: f64, rhs: f64, tol: f64) {
        let e = (lhs - rhs).abs();
        self.record(-e, e <= tol);
    }

    pub(crate) fn truth(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { -1.0 }, ok);
    }

    pub(crate) fn finish(self) -> LemmaReport {
        LemmaReport {
            lemma_id: self.id.to_string(),
            samples: self.samples,
            violations: self.violations,
            worst_margin: if self.worst.is_finite() || self.worst < 0.0 {
                self.worst
            } else {
                0.0
            },
        }
    }
}
