//! Brute-force strip search over every direction through two points.
//!
//! For a direction `d` and a pair of heights `vb ≤ vt` taken from the
//! points, the best rectangle inside the strip is the narrowest run of
//! consecutive points in `u` order. Integer-mode input is handled with
//! `i64`/`i128` arithmetic of its own, and areas from different directions
//! are compared as fractions by continued-fraction expansion.

use std::cmp::Ordering;
use std::ops::{Mul, Sub};

use super::{check_solve_preconditions, SolveMode, SolveReport, SolveStats};
use crate::error::{Error, Result};
use crate::geom::{Area, Frame, OrientedRectangle, PointSet};

/// Largest point set the oracles accept.
pub const ORACLE_LIMIT: usize = 64;

trait Scalar: Copy + PartialOrd + Sub<Output = Self> {
    type Wide: Copy + PartialOrd + Mul<Output = Self::Wide>;
    fn of(c: f64) -> Self;
    fn cross_dot(dx: Self, dy: Self, wx: Self, wy: Self) -> (Self, Self);
    fn widen(self) -> Self::Wide;
    fn to_f64(self) -> f64;
    /// Compares `n1 / d1` with `n2 / d2`; denominators are positive.
    fn ratio_cmp(n1: Self::Wide, d1: Self::Wide, n2: Self::Wide, d2: Self::Wide) -> Ordering;
}

impl Scalar for i64 {
    type Wide = i128;
    fn of(c: f64) -> i64 {
        c as i64
    }
    fn cross_dot(dx: i64, dy: i64, wx: i64, wy: i64) -> (i64, i64) {
        (dx * wx + dy * wy, dx * wy - dy * wx)
    }
    fn widen(self) -> i128 {
        self as i128
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn ratio_cmp(n1: i128, d1: i128, n2: i128, d2: i128) -> Ordering {
        fraction_cmp(n1 as u128, d1 as u128, n2 as u128, d2 as u128)
    }
}

impl Scalar for f64 {
    type Wide = f64;
    fn of(c: f64) -> f64 {
        c
    }
    fn cross_dot(dx: f64, dy: f64, wx: f64, wy: f64) -> (f64, f64) {
        (dx * wx + dy * wy, dx * wy - dy * wx)
    }
    fn widen(self) -> f64 {
        self
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn ratio_cmp(n1: f64, d1: f64, n2: f64, d2: f64) -> Ordering {
        Area::from_value(n1 / d1).compare(&Area::from_value(n2 / d2))
    }
}

/// Compares non-negative fractions `a / b` and `c / d` without overflow.
fn fraction_cmp(a: u128, b: u128, c: u128, d: u128) -> Ordering {
    let (qa, qc) = (a / b, c / d);
    if qa != qc {
        return qa.cmp(&qc);
    }
    let (ra, rc) = (a % b, c % d);
    match (ra == 0, rc == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // a/b = q + ra/b; compare ra/b with rc/d via their reciprocals
        (false, false) => fraction_cmp(d, rc, b, ra),
    }
}

/// One strip rectangle in the coordinates of direction `(i, j)`.
#[derive(Clone, Copy)]
struct StripBox<S: Scalar> {
    i: usize,
    j: usize,
    u: (S, S),
    v: (S, S),
    supports: [usize; 5],
    strips: u64,
}

struct Direction<S> {
    i: usize,
    j: usize,
    /// `(u, v, index)` for every point.
    proj: Vec<(S, S, usize)>,
    /// Distinct `v` values, ascending.
    levels: Vec<S>,
    norm2: S,
}

fn directions<S: Scalar>(ps: &PointSet) -> Vec<Direction<S>> {
    let coords: Vec<(S, S)> = ps.points().iter().map(|p| (S::of(p.x), S::of(p.y))).collect();
    let mut out = Vec::new();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if coords[i] == coords[j] {
                continue;
            }
            let (dx, dy) = (coords[j].0 - coords[i].0, coords[j].1 - coords[i].1);
            let proj: Vec<(S, S, usize)> = coords
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| {
                    let (u, v) = S::cross_dot(dx, dy, x - coords[i].0, y - coords[i].1);
                    (u, v, k)
                })
                .collect();
            let mut levels: Vec<S> = proj.iter().map(|p| p.1).collect();
            levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
            levels.dedup();
            let (norm2, _) = S::cross_dot(dx, dy, dx, dy);
            out.push(Direction { i, j, proj, levels, norm2 });
        }
    }
    out
}

/// Points of the strip `vb ≤ v ≤ vt`, sorted by `u`.
fn strip<S: Scalar>(dir: &Direction<S>, vb: S, vt: S) -> Vec<(S, S, usize)> {
    let mut s: Vec<(S, S, usize)> = dir.proj.iter().copied().filter(|p| p.1 >= vb && p.1 <= vt).collect();
    s.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.2.cmp(&b.2)));
    s
}

fn oracle_search<S: Scalar>(ps: &PointSet, keep: usize) -> Option<StripBox<S>> {
    let mut best: Option<(StripBox<S>, S::Wide)> = None;
    let mut strips = 0u64;
    for dir in directions::<S>(ps) {
        let mut dir_best: Option<(StripBox<S>, S::Wide)> = None;
        for (a, &vb) in dir.levels.iter().enumerate() {
            for &vt in &dir.levels[a..] {
                let s = strip(&dir, vb, vt);
                strips += 1;
                if s.len() < keep {
                    continue;
                }
                let height = (vt - vb).widen();
                for w in 0..=s.len() - keep {
                    let (lo, hi) = (s[w], s[w + keep - 1]);
                    let num = (hi.0 - lo.0).widen() * height;
                    if dir_best.as_ref().is_some_and(|(_, b)| num >= *b) {
                        continue;
                    }
                    let bottom = s.iter().find(|p| p.1 == vb).unwrap().2;
                    let top = s.iter().rev().find(|p| p.1 == vt).unwrap().2;
                    let cand = StripBox {
                        i: dir.i,
                        j: dir.j,
                        u: (lo.0, hi.0),
                        v: (vb, vt),
                        supports: [bottom, bottom, top, lo.2, hi.2],
                        strips: 0,
                    };
                    dir_best = Some((cand, num));
                }
            }
        }
        let Some((cand, num)) = dir_best else { continue };
        let norm2 = dir.norm2.widen();
        let replace = match &best {
            None => true,
            Some((b, bnum)) => {
                let bnorm = best_norm::<S>(ps, b);
                S::ratio_cmp(num, norm2, *bnum, bnorm) == Ordering::Less
            }
        };
        if replace {
            best = Some((cand, num));
        }
    }
    best.map(|(mut b, _)| {
        b.strips = strips;
        b
    })
}

fn best_norm<S: Scalar>(ps: &PointSet, b: &StripBox<S>) -> S::Wide {
    let (p, q) = (ps.get(b.i), ps.get(b.j));
    let (dx, dy) = (S::of(q.x) - S::of(p.x), S::of(q.y) - S::of(p.y));
    S::cross_dot(dx, dy, dx, dy).0.widen()
}

fn to_rect<S: Scalar>(ps: &PointSet, b: &StripBox<S>) -> OrientedRectangle {
    let frame = Frame::new(ps, b.i, b.j).expect("oracle directions use distinct points");
    OrientedRectangle::from_extents(
        frame,
        (b.u.0.to_f64(), b.u.1.to_f64()),
        (b.v.0.to_f64(), b.v.1.to_f64()),
        b.supports,
        ps.integer_mode(),
    )
}

fn point_rectangle(ps: &PointSet) -> OrientedRectangle {
    let frame = Frame { i1: 0, i2: 0, origin: ps.get(0), d: (1.0, 0.0) };
    OrientedRectangle::from_extents(frame, (0.0, 0.0), (0.0, 0.0), [0; 5], ps.integer_mode())
}

/// Brute-force optimum by strip search; `O(n⁵ log n)`.
///
/// Supports are reported as `[bottom, bottom, top, left, right]`.
pub fn solve_oracle(ps: &PointSet, t: usize) -> Result<SolveReport> {
    let n = ps.len();
    if n > ORACLE_LIMIT {
        return Err(Error::SizeGuard { n, limit: ORACLE_LIMIT });
    }
    check_solve_preconditions(n, t)?;
    let keep = n - t;
    let (rect, strips) = if ps.integer_mode() {
        oracle_search::<i64>(ps, keep).map(|b| (to_rect(ps, &b), b.strips))
    } else {
        oracle_search::<f64>(ps, keep).map(|b| (to_rect(ps, &b), b.strips))
    }
    .unwrap_or_else(|| (point_rectangle(ps), 0));
    let stats = SolveStats { triples_examined: strips, ..Default::default() };
    Ok(SolveReport::assemble(ps, rect, t, SolveMode::Oracle, stats))
}

fn kappa_search<S: Scalar>(ps: &PointSet, fits: impl Fn(S::Wide, S::Wide) -> bool) -> usize {
    let mut best = 1;
    for dir in directions::<S>(ps) {
        let norm2 = dir.norm2.widen();
        for (a, &vb) in dir.levels.iter().enumerate() {
            for &vt in &dir.levels[a + 1..] {
                let s = strip(&dir, vb, vt);
                if s.len() <= best {
                    continue;
                }
                let height = (vt - vb).widen();
                // widest window from each left end, by two pointers
                let mut hi = 0;
                for lo in 0..s.len() {
                    hi = hi.max(lo);
                    while hi + 1 < s.len() && fits((s[hi + 1].0 - s[lo].0).widen() * height, norm2) {
                        hi += 1;
                    }
                    if s[hi].0 > s[lo].0 {
                        best = best.max(hi - lo + 1);
                    }
                }
            }
        }
    }
    best
}

/// Largest number of points covered by a non-degenerate rectangle of area
/// at most `alpha` (closed comparison); at least 1.
pub fn kappa_oracle(ps: &PointSet, alpha: &Area) -> Result<usize> {
    let n = ps.len();
    if n > ORACLE_LIMIT {
        return Err(Error::SizeGuard { n, limit: ORACLE_LIMIT });
    }
    if ps.integer_mode() && alpha.exact {
        let an = (alpha.width as i128) * (alpha.height as i128);
        let ad = alpha.scale as i128;
        Ok(kappa_search::<i64>(ps, |num, den| i64::ratio_cmp(num, den, an, ad) != Ordering::Greater))
    } else {
        let a = alpha.value();
        Ok(kappa_search::<f64>(ps, |num, den| Area::from_value(num / den).compare(&Area::from_value(a)) != Ordering::Greater))
    }
}
