//! The six Dubins words, their lengths, and the closed-form CCC lengths.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{center_distances, center_distances_sd, Configuration, PairSpec};
use crate::regions::CaseLabel;
use crate::EPS_GEOM;

/// Arc lengths this close to a full turn are treated as zero.
const FULL_TURN_SNAP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SegmentKind {
    LeftTurn,
    RightTurn,
    Straight,
}

impl SegmentKind {
    fn from_sign(s: f64) -> Self {
        if s > 0.0 {
            SegmentKind::LeftTurn
        } else {
            SegmentKind::RightTurn
        }
    }

    pub fn letter(self) -> char {
        match self {
            SegmentKind::LeftTurn => 'L',
            SegmentKind::RightTurn => 'R',
            SegmentKind::Straight => 'S',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Word {
    Lsl,
    Rsr,
    Lsr,
    Rsl,
    Lrl,
    Rlr,
}

impl Word {
    /// Tie-break order used by [`shortest_path`].
    pub const ALL: [Word; 6] = [Word::Lsl, Word::Rsr, Word::Lsr, Word::Rsl, Word::Lrl, Word::Rlr];

    pub fn as_str(self) -> &'static str {
        match self {
            Word::Lsl => "LSL",
            Word::Rsr => "RSR",
            Word::Lsr => "LSR",
            Word::Rsl => "RSL",
            Word::Lrl => "LRL",
            Word::Rlr => "RLR",
        }
    }

    pub fn is_ccc(self) -> bool {
        matches!(self, Word::Lrl | Word::Rlr)
    }

    /// Turning signs (+1 left, -1 right) of the first and last arcs.
    fn signs(self) -> (f64, f64) {
        match self {
            Word::Lsl | Word::Lrl => (1.0, 1.0),
            Word::Rsr | Word::Rlr => (-1.0, -1.0),
            Word::Lsr => (1.0, -1.0),
            Word::Rsl => (-1.0, 1.0),
        }
    }

    pub fn kinds(self) -> [SegmentKind; 3] {
        let (s1, s2) = self.signs();
        let mid = if self.is_ccc() {
            SegmentKind::from_sign(-s1)
        } else {
            SegmentKind::Straight
        };
        [SegmentKind::from_sign(s1), mid, SegmentKind::from_sign(s2)]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DubinsPath {
    pub word: Word,
    pub segments: [Segment; 3],
    pub total_length: f64,
}

impl DubinsPath {
    fn from_arcs(word: Word, lengths: [f64; 3]) -> Self {
        let kinds = word.kinds();
        DubinsPath {
            word,
            segments: [0, 1, 2].map(|i| Segment {
                kind: kinds[i],
                length: lengths[i],
            }),
            total_length: lengths.iter().sum(),
        }
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.segments.map(|s| s.length)
    }
}

/// An instance with the heading trig values computed once.
#[derive(Debug, Clone, Copy)]
pub struct Headings {
    pub d: f64,
    pub alpha: f64,
    pub beta: f64,
    pub sa: f64,
    pub ca: f64,
    pub sb: f64,
    pub cb: f64,
}

impl Headings {
    pub fn new(d: f64, alpha: f64, beta: f64) -> Self {
        let (sa, ca) = alpha.sin_cos();
        let (sb, cb) = beta.sin_cos();
        Headings {
            d,
            alpha,
            beta,
            sa,
            ca,
            sb,
            cb,
        }
    }

    pub fn from_pair(p: &PairSpec) -> Self {
        Headings::new(p.d, p.alpha, p.beta)
    }

    /// Centers of the start disk turning `s1` and the goal disk turning `s2`.
    fn centers(&self, s1: f64, s2: f64) -> ((f64, f64), (f64, f64)) {
        ((-s1 * self.sa, s1 * self.ca), (self.d - s2 * self.sb, s2 * self.cb))
    }
}

fn arc(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU - FULL_TURN_SNAP {
        0.0
    } else {
        r
    }
}

/// Segment lengths of a CSC word, or `None` when the tangent does not exist.
pub fn csc_arcs(h: &Headings, word: Word) -> Option<[f64; 3]> {
    let (s1, s2) = word.signs();
    let (c1, c2) = h.centers(s1, s2);
    let (vx, vy) = (c2.0 - c1.0, c2.1 - c1.1);
    let dist2 = vx * vx + vy * vy;
    let (straight, psi) = if s1 == s2 {
        let dist = dist2.sqrt();
        let psi = if dist == 0.0 { h.alpha } else { vy.atan2(vx) };
        (dist, psi)
    } else {
        let dist = dist2.sqrt();
        if dist < 2.0 - EPS_GEOM {
            return None;
        }
        let ls = (dist2 - 4.0).max(0.0).sqrt();
        (ls, vy.atan2(vx) + (s1 - s2).atan2(ls))
    };
    Some([arc(s1 * (psi - h.alpha)), straight, arc(s2 * (h.beta - psi))])
}

/// Segment lengths of a CCC word (first and last arcs turn `s`), or `None`
/// when the end disks are more than 4 apart.
pub fn ccc_arcs(h: &Headings, word: Word) -> Option<[f64; 3]> {
    let (s, _) = word.signs();
    let (c1, c3) = h.centers(s, s);
    let (vx, vy) = (c3.0 - c1.0, c3.1 - c1.1);
    let dist = vx.hypot(vy);
    if dist > 4.0 + EPS_GEOM {
        return None;
    }
    let theta0 = (dist / 4.0).min(1.0).acos();
    // Heading at the switch onto the middle arc. The middle center sits at
    // angle atan2(v) + s·θ0 from the first center.
    let psi1 = if dist == 0.0 {
        h.alpha
    } else {
        vy.atan2(vx) + s * (theta0 + FRAC_PI_2)
    };
    let middle = PI + 2.0 * theta0;
    let psi2 = psi1 - s * middle;
    Some([arc(s * (psi1 - h.alpha)), middle, arc(s * (h.beta - psi2))])
}

pub fn word_arcs(h: &Headings, word: Word) -> Option<[f64; 3]> {
    if word.is_ccc() {
        ccc_arcs(h, word)
    } else {
        csc_arcs(h, word)
    }
}

pub fn word_length(h: &Headings, word: Word) -> Option<f64> {
    word_arcs(h, word).map(|a| a[0] + a[1] + a[2])
}

/// One of the four CSC paths; `None` iff the tangent does not exist.
pub fn path_csc(p: &PairSpec, word: Word) -> Option<DubinsPath> {
    if word.is_ccc() {
        return None;
    }
    csc_arcs(&Headings::from_pair(p), word).map(|a| DubinsPath::from_arcs(word, a))
}

/// The LRL or RLR path; `None` iff the end disks are more than 4 apart.
pub fn path_ccc(p: &PairSpec, word: Word) -> Option<DubinsPath> {
    if !word.is_ccc() {
        return None;
    }
    ccc_arcs(&Headings::from_pair(p), word).map(|a| DubinsPath::from_arcs(word, a))
}

pub fn path(p: &PairSpec, word: Word) -> Option<DubinsPath> {
    word_arcs(&Headings::from_pair(p), word).map(|a| DubinsPath::from_arcs(word, a))
}

/// All existing paths in tie-break order.
pub fn all_paths(p: &PairSpec) -> Vec<DubinsPath> {
    let h = Headings::from_pair(p);
    Word::ALL
        .iter()
        .filter_map(|&w| word_arcs(&h, w).map(|a| DubinsPath::from_arcs(w, a)))
        .collect()
}

/// The shortest path; equal lengths go to the earlier word in [`Word::ALL`].
pub fn shortest_path(p: &PairSpec) -> (DubinsPath, f64) {
    let h = Headings::from_pair(p);
    let mut best: Option<DubinsPath> = None;
    for w in Word::ALL {
        if let Some(a) = word_arcs(&h, w) {
            let cand = DubinsPath::from_arcs(w, a);
            if best.is_none_or(|b| cand.total_length < b.total_length) {
                best = Some(cand);
            }
        }
    }
    let best = best.expect("LSL always exists");
    (best, best.total_length)
}

pub fn shortest_length_h(h: &Headings) -> f64 {
    let mut best = f64::INFINITY;
    for w in Word::ALL {
        if let Some(l) = word_length(h, w) {
            best = best.min(l);
        }
    }
    best
}

pub fn shortest_length(p: &PairSpec) -> f64 {
    shortest_length_h(&Headings::from_pair(p))
}

/// Pose after driving arclength `s` along `path` from `(0, 0, alpha)`.
pub fn sample(path: &DubinsPath, s: f64, p: &PairSpec) -> Result<Configuration> {
    let total = path.total_length;
    if !(s >= -1e-12 && s <= total + 1e-12) {
        return Err(Error::Range {
            what: "arclength",
            value: s,
            lo: 0.0,
            hi: total,
        });
    }
    let mut rest = s.clamp(0.0, total);
    let (mut x, mut y, mut th) = (0.0_f64, 0.0_f64, p.alpha);
    for seg in &path.segments {
        let t = rest.min(seg.length);
        rest -= t;
        match seg.kind {
            SegmentKind::Straight => {
                x += t * th.cos();
                y += t * th.sin();
            }
            kind => {
                let sg = if kind == SegmentKind::LeftTurn { 1.0 } else { -1.0 };
                let next = th + sg * t;
                x += sg * (next.sin() - th.sin());
                y += sg * (th.cos() - next.cos());
                th = next;
            }
        }
        if rest <= 0.0 {
            break;
        }
    }
    Ok(Configuration::new(x, y, th))
}

/// `π − arcsin(dist / 4)`, half the middle arc of a CCC path whose end disks
/// are `dist` apart.
pub fn mu(dist: f64) -> Result<f64> {
    if !(0.0..=4.0 + EPS_GEOM).contains(&dist) {
        return Err(Error::domain("mu", format!("center distance {dist} is not in [0, 4]")));
    }
    Ok(PI - (dist / 4.0).min(1.0).asin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuPair {
    pub mu_l: Option<f64>,
    pub mu_r: Option<f64>,
}

impl MuPair {
    pub fn l(&self) -> Result<f64> {
        self.mu_l.ok_or_else(|| Error::domain("MuPair::l", "d_l exceeds 4"))
    }

    pub fn r(&self) -> Result<f64> {
        self.mu_r.ok_or_else(|| Error::domain("MuPair::r", "d_r exceeds 4"))
    }
}

pub fn mu_pair(cd: &crate::geometry::CenterDistances) -> MuPair {
    MuPair {
        mu_l: mu(cd.d_l).ok(),
        mu_r: mu(cd.d_r).ok(),
    }
}

/// `(λ_LRL, λ_RLR)` from the region-specific closed forms.
///
/// The instance must have a representative in `[0, π]²` in half-sum /
/// half-difference coordinates, and `case` must be `A` or `B`.
pub fn ccc_length_closed_form(p: &PairSpec, case: &CaseLabel) -> Result<(f64, f64)> {
    let b_case = match case {
        CaseLabel::A => false,
        CaseLabel::B => true,
        CaseLabel::C(_) => {
            return Err(Error::UnsupportedRegion {
                op: "ccc_length_closed_form",
                region: case.to_string(),
            })
        }
    };
    let (_, delta) = p.gamma_coords().ok_or_else(|| {
        Error::domain(
            "ccc_length_closed_form",
            "headings have no representative with 0 <= sigma, delta <= pi",
        )
    })?;
    let mp = mu_pair(&center_distances(p));
    let lrl = 4.0 * mp.l()? + 2.0 * delta - TAU;
    let rlr = 4.0 * mp.r()? - 2.0 * delta + if b_case { TAU } else { 0.0 };
    Ok((lrl, rlr))
}

/// The functions `L = 4μ_L + 2δ − 2π`, `R = 4μ_R − 2δ` and `C = min(L, R)`
/// on the rectangle `0 ≤ σ ≤ π, α* ≤ δ ≤ π − α*` for a fixed `d < 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CccRect {
    pub d: f64,
    pub alpha_star: f64,
}

impl CccRect {
    const TOL: f64 = 1e-12;

    pub fn new(d: f64) -> Result<Self> {
        if !(0.0..2.0).contains(&d) {
            return Err(Error::domain("CccRect::new", format!("d = {d} is not in [0, 2)")));
        }
        Ok(CccRect {
            d,
            alpha_star: (d / 2.0).asin(),
        })
    }

    fn check(&self, sigma: f64, delta: f64) -> Result<()> {
        let t = Self::TOL;
        if sigma < -t || sigma > PI + t || delta < self.alpha_star - t || delta > PI - self.alpha_star + t {
            return Err(Error::domain(
                "CccRect",
                format!("({sigma}, {delta}) is outside the rectangle"),
            ));
        }
        Ok(())
    }

    fn dists(&self, sigma: f64, delta: f64) -> (f64, f64) {
        let v = center_distances_sd(self.d, sigma, delta);
        (v[0], v[1])
    }

    pub fn l(&self, sigma: f64, delta: f64) -> Result<f64> {
        self.check(sigma, delta)?;
        let (dl, _) = self.dists(sigma, delta);
        Ok(4.0 * mu(dl)? + 2.0 * delta - TAU)
    }

    pub fn r(&self, sigma: f64, delta: f64) -> Result<f64> {
        self.check(sigma, delta)?;
        let (_, dr) = self.dists(sigma, delta);
        Ok(4.0 * mu(dr)? - 2.0 * delta)
    }

    pub fn c(&self, sigma: f64, delta: f64) -> Result<f64> {
        Ok(self.l(sigma, delta)?.min(self.r(sigma, delta)?))
    }

    /// `(∂L/∂σ, ∂L/∂δ)`.
    pub fn l_gradient(&self, sigma: f64, delta: f64) -> Result<(f64, f64)> {
        self.check(sigma, delta)?;
        let (dl, _) = self.dists(sigma, delta);
        let big_d = dl * (1.0 - (dl / 4.0).powi(2)).max(0.0).sqrt();
        if big_d < 1e-9 {
            return Err(Error::domain("CccRect::l_gradient", "D_L vanishes"));
        }
        let (ss, cs) = sigma.sin_cos();
        let (sd, cd) = delta.sin_cos();
        let d = self.d;
        Ok((
            -2.0 * d * sd * ss / big_d,
            2.0 + (-4.0 * cd * sd + 2.0 * d * cd * cs) / big_d,
        ))
    }

    /// `(∂R/∂σ, ∂R/∂δ)`.
    pub fn r_gradient(&self, sigma: f64, delta: f64) -> Result<(f64, f64)> {
        self.check(sigma, delta)?;
        let (_, dr) = self.dists(sigma, delta);
        let big_d = dr * (1.0 - (dr / 4.0).powi(2)).max(0.0).sqrt();
        if big_d < 1e-9 {
            return Err(Error::domain("CccRect::r_gradient", "D_R vanishes"));
        }
        let (ss, cs) = sigma.sin_cos();
        let (sd, cd) = delta.sin_cos();
        let d = self.d;
        Ok((
            2.0 * d * sd * ss / big_d,
            -2.0 + (-4.0 * cd * sd - 2.0 * d * cd * cs) / big_d,
        ))
    }
}

/// `4μ_L + (β − α) − 2π` at raw (unnormalized) headings.
pub fn lrl_closed_form_ab(d: f64, alpha: f64, beta: f64) -> Result<f64> {
    let dl = lrl_dl(d, alpha, beta);
    Ok(4.0 * mu(dl)? + (beta - alpha) - TAU)
}

fn lrl_dl(d: f64, alpha: f64, beta: f64) -> f64 {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    (d - sb + sa).hypot(cb - ca)
}

/// `(∂λ_LRL/∂α, ∂λ_LRL/∂β)` where the LRL length is `4μ_L + (β − α) + const`.
pub fn lrl_gradient_ab(d: f64, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let u = d - sb + sa;
    let v = cb - ca;
    let dl = u.hypot(v);
    let big_d = dl * (1.0 - (dl / 4.0).powi(2)).max(0.0).sqrt();
    if big_d < 1e-9 {
        return Err(Error::domain("lrl_gradient_ab", "D_L vanishes"));
    }
    Ok((-(u * ca + v * sa) / big_d - 1.0, (u * cb + v * sb) / big_d + 1.0))
}

/// `(∂λ_RSL/∂α, ∂λ_RSL/∂β) = (1 − cos γ_R, 1 − cos γ_L)` where `γ_R`, `γ_L`
/// are the first and last arcs of the RSL path.
pub fn rsl_gradient(p: &PairSpec) -> Option<(f64, f64)> {
    let a = csc_arcs(&Headings::from_pair(p), Word::Rsl)?;
    Some((1.0 - a[0].cos(), 1.0 - a[2].cos()))
}
