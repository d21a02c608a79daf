//! Minimum-area rectangle leaving out at most `t` points.

mod oracle;
mod sampling;

use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enclose::EncloseContext;
use crate::error::{Error, Result};
use crate::geom::{count_enclosed, rect_from_supports, Area, Frame, OrientedRectangle, PointSet};
use crate::layers::k_first_layers;
use crate::pairs::{enclosed_side_points, valid_pairs};

pub use oracle::{kappa_oracle, solve_oracle, ORACLE_LIMIT};
pub use sampling::{solve_sampled, SampleParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Exact,
    Sampled,
    Oracle,
}

/// Wall-clock seconds per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub valid_pairs: f64,
    pub enclose: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SolveStats {
    /// Points on the first `t + 1` convex layers.
    pub k: Option<usize>,
    pub valid_pair_count: Option<usize>,
    /// Candidate rectangles scored.
    pub triples_examined: u64,
    pub timings: PhaseTimings,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub rectangle: OrientedRectangle,
    pub enclosed_indices: Vec<usize>,
    pub outlier_indices: Vec<usize>,
    pub mode: SolveMode,
    pub t: usize,
    pub stats: SolveStats,
    pub sample_params: Option<SampleParams>,
}

impl SolveReport {
    fn assemble(ps: &PointSet, mut rectangle: OrientedRectangle, t: usize, mode: SolveMode, stats: SolveStats) -> Self {
        let (count, flags) = count_enclosed(ps, &rectangle);
        rectangle.enclosed_count = Some(count);
        let (enclosed_indices, outlier_indices) = (0..ps.len()).partition(|&i| flags[i]);
        SolveReport { rectangle, enclosed_indices, outlier_indices, mode, t, stats, sample_params: None }
    }

    pub fn area(&self) -> &Area {
        &self.rectangle.area
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub enclosed: usize,
    pub excluded: usize,
    pub feasible: bool,
}

/// Recounts `r` against `ps`; feasible when at most `t` points fall outside.
pub fn verify(ps: &PointSet, r: &OrientedRectangle, t: usize) -> VerifyReport {
    let (enclosed, _) = count_enclosed(ps, r);
    let excluded = ps.len() - enclosed;
    VerifyReport { enclosed, excluded, feasible: excluded <= t }
}

pub(crate) fn check_solve_preconditions(n: usize, t: usize) -> Result<()> {
    if 2 * t >= n {
        return Err(Error::InvalidT { t: t as i64, n });
    }
    if n - t < 3 {
        return Err(Error::Infeasible { n, t });
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Best {
    area: Area,
    supports: [usize; 5],
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        match self.area.compare(&other.area) {
            Ordering::Less => true,
            Ordering::Equal => self.supports < other.supports,
            Ordering::Greater => false,
        }
    }
}

fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.better_than(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Zero-area answer when at least `n − t` points share one location.
fn stacked_point(ps: &PointSet, t: usize) -> Option<OrientedRectangle> {
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (ps.get(a), ps.get(b));
        p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)).then(a.cmp(&b))
    });
    let mut start = 0;
    let mut best: Option<(usize, usize)> = None;
    for end in 1..=order.len() {
        if end == order.len() || ps.get(order[end]) != ps.get(order[start]) {
            let run = end - start;
            if run >= ps.len() - t && best.is_none_or(|(_, len)| run > len) {
                best = Some((order[start], run));
            }
            start = end;
        }
    }
    let (i, _) = best?;
    let frame = Frame { i1: i, i2: i, origin: ps.get(i), d: (1.0, 0.0) };
    Some(OrientedRectangle::from_extents(frame, (0.0, 0.0), (0.0, 0.0), [i; 5], ps.integer_mode()))
}

/// Exact minimum-area rectangle enclosing at least `n − t` points.
///
/// Every valid pair is a candidate base; its enclosed side is scanned for
/// support triples leaving out exactly `t` or `t − 1` points. In
/// collinear-robust mode every smaller budget is scanned as well, since
/// boundary runs can make the optimum leave out fewer points.
pub fn solve_exact(ps: &PointSet, t: usize, collinear_robust: bool) -> Result<SolveReport> {
    let start = Instant::now();
    let n = ps.len();
    check_solve_preconditions(n, t)?;

    if collinear_robust {
        if let Some(rect) = stacked_point(ps, t) {
            let stats = SolveStats {
                timings: PhaseTimings { total: start.elapsed().as_secs_f64(), ..Default::default() },
                ..Default::default()
            };
            return Ok(SolveReport::assemble(ps, rect, t, SolveMode::Exact, stats));
        }
    }

    let pairs = valid_pairs(ps, t, collinear_robust)?;
    let t_pairs = start.elapsed().as_secs_f64();

    let targets: Vec<usize> = if collinear_robust { (0..=t).rev().collect() } else { (t.saturating_sub(1)..=t).rev().collect() };
    let exact = ps.integer_mode();

    let (best, examined) = pairs
        .par_iter()
        .map(|vp| {
            let (inside, m) = enclosed_side_points(ps, vp);
            let frame = Frame::new(ps, vp.i1, vp.i2).expect("valid pair endpoints are distinct");
            let ctx = EncloseContext::new(ps, frame, &inside, m, t, collinear_robust);
            let scale = frame.norm2();
            let mut best: Option<Best> = None;
            let mut examined = 0u64;
            for &target in &targets {
                ctx.scan(
                    target,
                    |p3, p4, p5| {
                        examined += 1;
                        let cand = Best {
                            area: Area::new(p5.u - p4.u, p3.h, scale, exact),
                            supports: [vp.i1, vp.i2, p3.idx, p4.idx, p5.idx],
                        };
                        if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                            best = Some(cand);
                        }
                    },
                    None,
                );
            }
            (best, examined)
        })
        .reduce(|| (None, 0), |(a, ea), (b, eb)| (pick(a, b), ea + eb));
    let t_enclose = start.elapsed().as_secs_f64() - t_pairs;

    // Every instance with a feasible t has at least one candidate: the hull
    // edges are valid pairs and the bounding rectangle on each is emitted.
    let best = best.ok_or(Error::Infeasible { n, t })?;
    let rect = rect_from_supports(ps, best.supports, collinear_robust)?;
    let stats = SolveStats {
        k: Some(k_first_layers(ps, t)),
        valid_pair_count: Some(pairs.len()),
        triples_examined: examined,
        timings: PhaseTimings { valid_pairs: t_pairs, enclose: t_enclose, total: start.elapsed().as_secs_f64() },
    };
    Ok(SolveReport::assemble(ps, rect, t, SolveMode::Exact, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(c: &[(f64, f64)]) -> PointSet {
        PointSet::from_xy(c).unwrap()
    }

    #[test]
    fn square_with_outlier() {
        let ps = set(&[(0., 0.), (4., 0.), (4., 3.), (0., 3.), (2., 1.), (10., 10.)]);
        let r = solve_exact(&ps, 1, false).unwrap();
        assert_eq!(r.area().value(), 12.0);
        assert_eq!(r.outlier_indices, vec![5]);
        assert_eq!(r.enclosed_indices, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.rectangle.enclosed_count, Some(5));
        assert_eq!(r.mode, SolveMode::Exact);
    }

    #[test]
    fn right_triangle() {
        let ps = set(&[(0., 0.), (2., 0.), (0., 2.)]);
        assert_eq!(solve_exact(&ps, 0, false).unwrap().area().value(), 4.0);
    }

    #[test]
    fn axis_square() {
        let ps = set(&[(0., 0.), (5., 0.), (5., 5.), (0., 5.)]);
        let r = solve_exact(&ps, 0, false).unwrap();
        assert_eq!(r.area().value(), 25.0);
        assert!(r.outlier_indices.is_empty());
    }

    #[test]
    fn preconditions() {
        let five = set(&[(0., 0.), (4., 0.), (4., 3.), (0., 3.), (2., 1.)]);
        assert_eq!(solve_exact(&five, 3, false).unwrap_err(), Error::InvalidT { t: 3, n: 5 });
        let three = set(&[(0., 0.), (2., 0.), (0., 2.)]);
        assert_eq!(solve_exact(&three, 1, false).unwrap_err(), Error::Infeasible { n: 3, t: 1 });
        let line = set(&[(0., 0.), (1., 1.), (2., 2.), (5., 0.)]);
        assert!(matches!(solve_exact(&line, 0, false), Err(Error::CollinearInput { .. })));
    }

    #[test]
    fn collinear_inliers_give_zero_area() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 0.), (3., 0.), (1., 5.)]);
        let r = solve_exact(&ps, 1, true).unwrap();
        assert_eq!(r.area().value(), 0.0);
        assert!(r.rectangle.degenerate);
        assert_eq!(r.outlier_indices, vec![4]);
    }

    #[test]
    fn stacked_points_give_point_rectangle() {
        let ps = set(&[(1., 1.), (1., 1.), (1., 1.), (0., 5.), (7., 2.)]);
        let r = solve_exact(&ps, 2, true).unwrap();
        assert_eq!(r.area().value(), 0.0);
        assert_eq!(r.enclosed_indices, vec![0, 1, 2]);
    }

    #[test]
    fn verify_examples() {
        let ps = set(&[(0., 0.), (1., 0.), (1., 1.), (5., 5.), (6., 6.)]);
        let r = rect_from_supports(&ps, [0, 1, 2, 0, 1], false).unwrap();
        assert_eq!(verify(&ps, &r, 1), VerifyReport { enclosed: 3, excluded: 2, feasible: false });
        assert!(verify(&ps, &r, 2).feasible);
    }

    #[test]
    fn report_partitions_points() {
        let ps = set(&[(0., 0.), (9., 1.), (4., 7.), (2., 3.), (8., 8.), (5., 2.), (1., 6.), (7., 4.)]);
        for t in 0..4 {
            let r = solve_exact(&ps, t, false).unwrap();
            assert_eq!(r.enclosed_indices.len() + r.outlier_indices.len(), ps.len());
            assert!(r.outlier_indices.len() <= t);
            assert!(verify(&ps, &r.rectangle, t).feasible);
        }
    }
}
