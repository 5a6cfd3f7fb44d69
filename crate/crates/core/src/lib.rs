//! Shortest bounded-curvature (Dubins) paths and the worst-case extra length
//! they cost over straight-line distance.
//!
//! All lengths are in units of the minimum turning radius and all angles are
//! in radians. The canonical instance of a query is a [`PairSpec`]: start at
//! `(0, 0, alpha)`, goal at `(d, 0, beta)`.
//!
//! ```
//! use dubins_cost::{shortest_path, PairSpec};
//! use std::f64::consts::PI;
//!
//! let p = PairSpec::new(1.0, PI, PI).unwrap();
//! let (_, len) = shortest_path(&p);
//! assert!((len - (1.0 + 2.0 * PI)).abs() < 1e-12);
//! ```

pub mod bisect;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod paths;
pub mod regions;
pub mod verify;
pub mod worst_case;

pub use error::{Error, Result};
pub use geometry::{
    canonicalize, center_distances, circle_centers, equal_angle_distance, reduce_to_triangle, symmetry_images,
    CenterDistances, Configuration, PairSpec, RigidMotion,
};
pub use paths::{
    ccc_length_closed_form, mu, mu_pair, path_ccc, path_csc, sample, shortest_length, shortest_path, CccRect,
    DubinsPath, MuPair, Segment, SegmentKind, Word,
};
pub use regions::{
    beta_lr, beta_rl, classify, critical_angles, delta_lr_curve, delta_rl_curve, CSub, CaseLabel, CriticalAngles,
};
pub use worst_case::{
    approx_ratio_constants, case_a_witness, case_b_witness, d_star, dub, rsl_prime, Case, CaseAWitness, CaseBWitness,
    DubPoint, DubSolver, RatioConstants,
};

/// Slack used when comparing center distances against existence thresholds.
/// A distance within `EPS_GEOM` of the threshold counts as touching, which
/// keeps boundary configurations constructible.
pub const EPS_GEOM: f64 = 1e-12;
