//! Valid pairs: point pairs whose line leaves at most `t` points strictly on
//! one side.
//!
//! For each pivot `P1` a line through `P1` makes a half turn clockwise,
//! starting at the lexicographically smallest other point `P0`. The points
//! strictly left and right of the starting ray are kept in two lists sorted
//! by the angle at which the line meets them, and the side counts change by
//! one batch each time the line meets the next direction. Points that share
//! a direction with the line are handled as one batch: they are taken off
//! both sides, emitted as pairs against the counts without them, and then
//! counted on the opposite side.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{cross, dot, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A base-side candidate. `excluded_side` is taken relative to the ray
/// `i1 → i2`, and `i1 < i2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ValidPair {
    pub i1: usize,
    pub i2: usize,
    pub excluded_side: Side,
    pub excluded_count: usize,
}

impl ValidPair {
    fn canonical(pivot: usize, other: usize, side: Side, count: usize) -> Self {
        if pivot < other {
            ValidPair { i1: pivot, i2: other, excluded_side: side, excluded_count: count }
        } else {
            ValidPair { i1: other, i2: pivot, excluded_side: side.flip(), excluded_count: count }
        }
    }
}

/// One stop of the rotating line around a pivot.
#[derive(Clone, Debug)]
pub struct SweepStep<'a> {
    pub pivot: usize,
    /// Points met by the line at this stop.
    pub on_line: &'a [usize],
    /// Side counts of the rotating ray just before this stop.
    pub left_before: usize,
    pub right_before: usize,
    /// Side counts while the batch lies on the line.
    pub left: usize,
    pub right: usize,
    /// How many batch points came from each side.
    pub from_left: usize,
    pub from_right: usize,
    /// Points coinciding with the pivot; they lie on every line through it.
    pub coincident: usize,
}

#[derive(Clone, Copy)]
struct Entry {
    idx: usize,
    /// Direction folded into the half turn `[0, π)` clockwise from the start.
    w: (f64, f64),
    /// Monotone pseudo-angle of `w`; orders float-mode input.
    key: f64,
}

fn pseudo_angle(r: (f64, f64), w: (f64, f64)) -> f64 {
    // clockwise coordinates: x along r, y ≥ 0 clockwise from r
    let x = dot(r, w);
    let y = -cross(r, w);
    if x >= 0.0 {
        y / (x + y)
    } else {
        1.0 + (-x) / (y - x)
    }
}

pub fn valid_pairs(ps: &PointSet, t: usize, collinear_robust: bool) -> Result<Vec<ValidPair>> {
    check_pair_preconditions(ps, t)?;
    let per_pivot: Vec<Result<Vec<ValidPair>>> = (0..ps.len())
        .into_par_iter()
        .map(|p| sweep_pivot(ps, p, t, collinear_robust, &mut |_| {}))
        .collect();
    let mut all = Vec::new();
    for r in per_pivot {
        all.extend(r?);
    }
    all.sort();
    all.dedup_by(|a, b| (a.i1, a.i2, a.excluded_side) == (b.i1, b.i2, b.excluded_side));
    Ok(all)
}

pub(crate) fn check_pair_preconditions(ps: &PointSet, t: usize) -> Result<()> {
    if ps.len() < 2 {
        return Err(Error::TooFewPoints { n: ps.len() });
    }
    if 2 * t >= ps.len() {
        return Err(Error::InvalidT { t: t as i64, n: ps.len() });
    }
    Ok(())
}

/// Runs the half-turn sweep around `pivot`, reporting every stop to
/// `observer` and returning the valid pairs through `pivot` in canonical
/// form (one entry per qualifying side).
pub fn sweep_pivot(
    ps: &PointSet,
    pivot: usize,
    t: usize,
    collinear_robust: bool,
    observer: &mut dyn FnMut(&SweepStep),
) -> Result<Vec<ValidPair>> {
    let o = ps.get(pivot);
    let n = ps.len();
    let mut coincident = 0;
    let mut cand = Vec::with_capacity(n.saturating_sub(1));
    for i in (0..n).filter(|&i| i != pivot) {
        if ps.get(i) == o {
            if !collinear_robust {
                let c = (0..n).find(|&c| c != pivot && c != i).unwrap_or(i);
                return Err(collinear(pivot, i, c));
            }
            coincident += 1;
        } else {
            cand.push(i);
        }
    }
    let Some(&p0) = cand.iter().min_by(|&&a, &&b| {
        let (pa, pb) = (ps.get(a), ps.get(b));
        pa.x.total_cmp(&pb.x).then(pa.y.total_cmp(&pb.y)).then(a.cmp(&b))
    }) else {
        return Ok(Vec::new());
    };
    let r = ps.get(p0).minus(o);

    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut forward0 = Vec::new();
    let mut backward0 = Vec::new();
    for &i in &cand {
        let w = ps.get(i).minus(o);
        let c = cross(r, w);
        if c < 0.0 {
            right.push(Entry { idx: i, w, key: pseudo_angle(r, w) });
        } else if c > 0.0 {
            let w = (-w.0, -w.1);
            left.push(Entry { idx: i, w, key: pseudo_angle(r, w) });
        } else if dot(r, w) > 0.0 {
            forward0.push(i);
        } else {
            backward0.push(i);
        }
    }

    let exact = ps.integer_mode();
    let order = |a: &Entry, b: &Entry| -> Ordering {
        if exact {
            let c = cross(a.w, b.w);
            if c < 0.0 {
                Ordering::Less
            } else if c > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        } else {
            a.key.total_cmp(&b.key)
        }
    };
    left.sort_by(|a, b| order(a, b).then(a.idx.cmp(&b.idx)));
    right.sort_by(|a, b| order(a, b).then(a.idx.cmp(&b.idx)));

    let mut out = Vec::new();
    let mut emit = |q: usize, forward: bool, n_left: usize, n_right: usize| {
        // left/right refer to the rotating ray; a backward point sees them swapped
        let (own_left, own_right) = if forward { (n_left, n_right) } else { (n_right, n_left) };
        if own_left <= t {
            out.push(ValidPair::canonical(pivot, q, Side::Left, own_left));
        }
        if own_right <= t {
            out.push(ValidPair::canonical(pivot, q, Side::Right, own_right));
        }
    };

    let mut batch: Vec<usize> = Vec::new();
    let (mut n_left, mut n_right) = (left.len(), right.len());

    batch.extend(&forward0);
    batch.extend(&backward0);
    if !collinear_robust && batch.len() > 1 {
        return Err(collinear(pivot, batch[0], batch[1]));
    }
    // just before the start the forward run lay right of the ray, the
    // backward run left of it
    observer(&SweepStep {
        pivot,
        on_line: &batch,
        left_before: n_left + backward0.len(),
        right_before: n_right + forward0.len(),
        left: n_left,
        right: n_right,
        from_left: backward0.len(),
        from_right: forward0.len(),
        coincident,
    });
    for &q in &forward0 {
        emit(q, true, n_left, n_right);
    }
    for &q in &backward0 {
        emit(q, false, n_left, n_right);
    }
    n_left += forward0.len();
    n_right += backward0.len();

    let (mut i, mut j) = (0, 0);
    while i < left.len() || j < right.len() {
        let take = match (left.get(i), right.get(j)) {
            (Some(a), Some(b)) => order(a, b),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        let (i0, j0) = (i, j);
        if take != Ordering::Greater {
            let head = left[i];
            while i < left.len() && order(&left[i], &head) == Ordering::Equal {
                i += 1;
            }
        }
        if take != Ordering::Less {
            let head = right[j];
            while j < right.len() && order(&right[j], &head) == Ordering::Equal {
                j += 1;
            }
        }
        let (from_left, from_right) = (i - i0, j - j0);
        batch.clear();
        batch.extend(left[i0..i].iter().map(|e| e.idx));
        batch.extend(right[j0..j].iter().map(|e| e.idx));
        if !collinear_robust && batch.len() > 1 {
            return Err(collinear(pivot, batch[0], batch[1]));
        }

        let (left_before, right_before) = (n_left, n_right);
        n_left -= from_left;
        n_right -= from_right;
        observer(&SweepStep {
            pivot,
            on_line: &batch,
            left_before,
            right_before,
            left: n_left,
            right: n_right,
            from_left,
            from_right,
            coincident,
        });
        for e in &right[j0..j] {
            emit(e.idx, true, n_left, n_right);
        }
        for e in &left[i0..i] {
            emit(e.idx, false, n_left, n_right);
        }
        n_left += from_right;
        n_right += from_left;
    }
    Ok(out)
}

fn collinear(a: usize, b: usize, c: usize) -> Error {
    let mut v = [a, b, c];
    v.sort_unstable();
    Error::CollinearInput { a: v[0], b: v[1], c: v[2] }
}

/// Points of `ps` not strictly on the excluded side of the pair's line,
/// and the number that are.
pub fn enclosed_side_points(ps: &PointSet, vp: &ValidPair) -> (Vec<usize>, usize) {
    let (a, b) = (ps.get(vp.i1), ps.get(vp.i2));
    let d = b.minus(a);
    let mut inside = Vec::with_capacity(ps.len());
    for (i, &p) in ps.points().iter().enumerate() {
        let v = cross(d, p.minus(a));
        let excluded = match vp.excluded_side {
            Side::Left => v > 0.0,
            Side::Right => v < 0.0,
        };
        if !excluded {
            inside.push(i);
        }
    }
    let m = ps.len() - inside.len();
    debug_assert!(!ps.integer_mode() || m == vp.excluded_count);
    (inside, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::orientation;

    fn set(c: &[(f64, f64)]) -> PointSet {
        PointSet::from_xy(c).unwrap()
    }

    /// Every ordered pair checked by counting both open half-planes.
    fn brute_force(ps: &PointSet, t: usize) -> Vec<ValidPair> {
        let n = ps.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if ps.get(i) == ps.get(j) {
                    continue;
                }
                let (mut l, mut r) = (0, 0);
                for k in 0..n {
                    match orientation(ps.get(i), ps.get(j), ps.get(k)) {
                        1 => l += 1,
                        -1 => r += 1,
                        _ => {}
                    }
                }
                if l <= t {
                    out.push(ValidPair { i1: i, i2: j, excluded_side: Side::Left, excluded_count: l });
                }
                if r <= t {
                    out.push(ValidPair { i1: i, i2: j, excluded_side: Side::Right, excluded_count: r });
                }
            }
        }
        out.sort();
        out
    }

    fn octagon() -> PointSet {
        set(&[(3., 0.), (7., 0.), (10., 3.), (10., 7.), (7., 10.), (3., 10.), (0., 7.), (0., 3.)])
    }

    #[test]
    fn convex_octagon_has_n_times_t_plus_one_pairs() {
        assert_eq!(valid_pairs(&octagon(), 1, false).unwrap().len(), 16);
        assert_eq!(valid_pairs(&octagon(), 2, false).unwrap().len(), 24);
    }

    #[test]
    fn square_with_center_t0_gives_hull_edges() {
        let ps = set(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.), (1., 2.)]);
        let pairs = valid_pairs(&ps, 0, false).unwrap();
        let got: Vec<(usize, usize)> = pairs.iter().map(|p| (p.i1, p.i2)).collect();
        assert_eq!(got, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(pairs.iter().all(|p| p.excluded_count == 0));
        assert_eq!(pairs, brute_force(&ps, 0));
    }

    #[test]
    fn hull_edges_are_valid_on_outward_side() {
        let ps = set(&[(0., 0.), (5., 1.), (6., 4.), (2., 6.), (-1., 3.), (2., 3.), (4., 2.)]);
        let pairs = valid_pairs(&ps, 1, false).unwrap();
        let hull = crate::layers::convex_hull(&ps);
        for k in 0..hull.len() {
            let (a, b) = (hull[k], hull[(k + 1) % hull.len()]);
            // counterclockwise hull: outward is the right of a → b
            let want = ValidPair::canonical(a, b, Side::Right, 0);
            assert!(pairs.contains(&want), "missing hull edge {a}-{b}");
        }
    }

    #[test]
    fn matches_brute_force_on_fixed_instance() {
        let ps = set(&[
            (0., 0.), (9., 1.), (4., 7.), (2., 3.), (7., 4.), (5., 2.), (1., 8.), (8., 8.), (3., 6.),
        ]);
        for t in 0..4 {
            assert_eq!(valid_pairs(&ps, t, false).unwrap(), brute_force(&ps, t), "t={t}");
        }
    }

    #[test]
    fn collinear_input_is_rejected_in_general_position_mode() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 0.), (0., 1.), (3., 3.)]);
        assert_eq!(
            valid_pairs(&ps, 1, false).unwrap_err(),
            Error::CollinearInput { a: 0, b: 1, c: 2 }
        );
        let dup = set(&[(0., 0.), (0., 0.), (2., 1.), (0., 1.)]);
        assert!(matches!(valid_pairs(&dup, 1, false), Err(Error::CollinearInput { .. })));
    }

    #[test]
    fn collinear_robust_matches_brute_force() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 0.), (0., 1.), (1., 1.), (2., 2.), (0., 2.), (1., 1.)]);
        for t in 0..4 {
            assert_eq!(valid_pairs(&ps, t, true).unwrap(), brute_force(&ps, t), "t={t}");
        }
    }

    #[test]
    fn invalid_t_and_tiny_sets() {
        let ps = set(&[(0., 0.), (1., 0.), (0., 1.), (1., 1.)]);
        assert_eq!(valid_pairs(&ps, 2, false).unwrap_err(), Error::InvalidT { t: 2, n: 4 });
        let one = set(&[(0., 0.)]);
        assert_eq!(valid_pairs(&one, 0, false).unwrap_err(), Error::TooFewPoints { n: 1 });
    }

    #[test]
    fn enclosed_side_examples() {
        let ps = set(&[(0., 0.), (2., 0.), (2., 2.), (0., 2.), (1., 1.)]);
        let vp = ValidPair { i1: 0, i2: 1, excluded_side: Side::Right, excluded_count: 0 };
        assert_eq!(enclosed_side_points(&ps, &vp), (vec![0, 1, 2, 3, 4], 0));

        let ps = set(&[(0., 0.), (4., 0.), (4., 3.), (0., 3.), (2., 1.), (10., 10.)]);
        let pairs = valid_pairs(&ps, 1, false).unwrap();
        let top = pairs.iter().find(|p| (p.i1, p.i2) == (2, 3) && p.excluded_count == 1).unwrap();
        // ray (4,3) → (0,3) points left; the outlier above is on its right
        assert_eq!(top.excluded_side, Side::Right);
        assert_eq!(enclosed_side_points(&ps, top), (vec![0, 1, 2, 3, 4], 1));

        let ps = set(&[(0., 0.), (1., 0.), (2., 0.), (0., 1.)]);
        let vp = ValidPair { i1: 0, i2: 2, excluded_side: Side::Right, excluded_count: 0 };
        assert!(enclosed_side_points(&ps, &vp).0.contains(&1));
    }

    #[test]
    fn rotation_bookkeeping() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 0.), (0., 1.), (1., 1.), (3., 2.), (0., 2.), (1., 1.), (5., 1.)]);
        let n = ps.len();
        for pivot in 0..n {
            let mut prev_after: Option<(usize, usize)> = None;
            let mut stops = 0;
            sweep_pivot(&ps, pivot, 2, true, &mut |s| {
                stops += 1;
                assert_eq!(s.left + s.right + s.on_line.len() + s.coincident, n - 1);
                assert_eq!(s.left, s.left_before - s.from_left);
                assert_eq!(s.right, s.right_before - s.from_right);
                if let Some(after) = prev_after {
                    assert_eq!(after, (s.left_before, s.right_before));
                }
                prev_after = Some((s.left + s.from_right, s.right + s.from_left));
            })
            .unwrap();
            assert!(stops >= 1);
        }
    }
}
