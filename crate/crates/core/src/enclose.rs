//! Support triples for a fixed base pair.
//!
//! Points on the enclosed side are projected into the pair's frame as
//! `(u, h)`: `u` along the ray `P1 → P2`, `h ≥ 0` the distance from the base
//! line (both scaled by `|d|`). A rectangle on this base is fixed by its left
//! side `u4`, right side `u5` and top `h3`; the points it cuts are those left
//! of `u4`, right of `u5`, or inside `[u4, u5]` and above `h3`.
//!
//! For each left support the scan walks right supports left to right. Moving
//! the right side outwards releases points from the right cut, so the top
//! must come down to cut as many again; the top pointer therefore only moves
//! down, and each left support costs `O(|H| + |G|)`.

use std::cmp::Ordering;

use crate::geom::{Frame, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateTriple {
    /// Opposite-side support.
    pub i3: usize,
    /// Left perpendicular support.
    pub i4: usize,
    /// Right perpendicular support.
    pub i5: usize,
    pub target_excluded: usize,
}

/// Candidate lists for the three free supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidates {
    /// Leftmost points, left to right.
    pub left: Vec<usize>,
    /// Rightmost points, left to right.
    pub right: Vec<usize>,
    /// Farthest points from the base line, farthest first.
    pub far: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Proj {
    pub idx: usize,
    pub u: f64,
    pub h: f64,
}

fn by_u(a: &Proj, b: &Proj) -> Ordering {
    a.u.total_cmp(&b.u).then(a.idx.cmp(&b.idx))
}

fn by_far(a: &Proj, b: &Proj) -> Ordering {
    b.h.total_cmp(&a.h).then(a.idx.cmp(&b.idx))
}

/// The first `k` items under `order` (all when `k ≥ len`), sorted. In
/// collinear-robust mode every item whose key ties with the k-th is kept too.
fn select_first(
    items: &[Proj],
    k: usize,
    order: fn(&Proj, &Proj) -> Ordering,
    key: fn(&Proj) -> f64,
    extend_ties: bool,
) -> Vec<Proj> {
    let mut v = items.to_vec();
    if k < v.len() && k > 0 {
        v.select_nth_unstable_by(k - 1, order);
        let boundary = key(&v[k - 1]);
        let (head, tail) = v.split_at_mut(k);
        let mut chosen = head.to_vec();
        if extend_ties {
            chosen.extend(tail.iter().filter(|p| key(p) == boundary));
        }
        v = chosen;
    } else if k == 0 {
        v.clear();
    }
    v.sort_by(order);
    v
}

/// Prefix of a sorted candidate list sized for `target`.
fn prefix_for(list: &[Proj], target: usize, key: fn(&Proj) -> f64, extend_ties: bool) -> usize {
    let mut len = (target + 1).min(list.len());
    if extend_ties && len > 0 {
        let boundary = key(&list[len - 1]);
        while len < list.len() && key(&list[len]) == boundary {
            len += 1;
        }
    }
    len
}

/// Enclosed-side points of one base pair in frame coordinates, with the
/// candidate lists sized for the largest target.
pub(crate) struct EncloseContext {
    pub m: usize,
    /// `u` of `P2`; `P1` sits at `u = 0`.
    pub base_end: f64,
    left: Vec<Proj>,
    right: Vec<Proj>,
    far: Vec<Proj>,
    robust: bool,
}

/// One stop of the right support, reported to the scan trace.
#[derive(Clone, Copy, Debug)]
#[allow(dead_code)]
pub(crate) struct ScanStop {
    pub left_pos: usize,
    pub u5: f64,
    pub top_level: usize,
}

impl EncloseContext {
    pub fn new(
        ps: &PointSet,
        frame: Frame,
        enclosed: &[usize],
        m: usize,
        max_target: usize,
        robust: bool,
    ) -> Self {
        let projs: Vec<Proj> = enclosed
            .iter()
            .map(|&idx| {
                let (u, v) = frame.project(ps.get(idx));
                Proj { idx, u, h: v.abs() }
            })
            .collect();
        let k = max_target + 1;
        let left = select_first(&projs, k, by_u, |p| p.u, robust);
        let mut right = select_first(&projs, k, |a, b| by_u(b, a), |p| p.u, robust);
        right.reverse();
        let far = select_first(&projs, k, by_far, |p| p.h, robust);
        EncloseContext { m, base_end: frame.norm2(), left, right, far, robust }
    }

    fn lists(&self, target: usize) -> (&[Proj], &[Proj], &[Proj]) {
        let jl = prefix_for(&self.left, target, |p| p.u, self.robust);
        let gl = prefix_for(&self.far, target, |p| p.h, self.robust);
        // the right list is a suffix in left-to-right order
        let rev: Vec<Proj> = self.right.iter().rev().copied().collect();
        let hl = prefix_for(&rev, target, |p| p.u, self.robust);
        (&self.left[..jl], &self.right[self.right.len() - hl..], &self.far[..gl])
    }

    pub fn candidates(&self, target: usize) -> Candidates {
        let (j, h, g) = self.lists(target);
        let ids = |s: &[Proj]| s.iter().map(|p| p.idx).collect();
        Candidates { left: ids(j), right: ids(h), far: ids(g) }
    }

    /// Calls `emit(P3, P4, P5)` for every support triple whose rectangle cuts
    /// exactly `target` points in total, counting the `m` beyond the base.
    pub fn scan(
        &self,
        target: usize,
        mut emit: impl FnMut(Proj, Proj, Proj),
        mut trace: Option<&mut dyn FnMut(ScanStop)>,
    ) {
        if self.m > target {
            return;
        }
        let budget = (target - self.m) as isize;
        let (left, right, far) = self.lists(target);
        if left.is_empty() || right.is_empty() || far.is_empty() {
            return;
        }

        // height levels of the far list
        let mut level_of = vec![0usize; far.len()];
        let mut level_start = vec![0usize];
        for k in 1..far.len() {
            if far[k].h != far[k - 1].h {
                level_start.push(k);
            }
            level_of[k] = level_start.len() - 1;
        }
        let levels = level_start.len();
        level_start.push(far.len());
        let mut far_by_u: Vec<usize> = (0..far.len()).collect();
        far_by_u.sort_by(|&a, &b| by_u(&far[a], &far[b]));

        let mut in_window = vec![0usize; levels];
        let mut a = 0usize;
        for (pos, &p4) in left.iter().enumerate() {
            if pos > 0 && p4.u != left[pos - 1].u {
                a = pos;
            }
            // P1 must stay inside the rectangle
            if p4.u > 0.0 {
                break;
            }
            if a as isize > budget {
                break;
            }
            in_window.iter_mut().for_each(|c| *c = 0);
            let mut above = 0usize;
            let mut top = 0usize;
            let mut next_far = far_by_u.partition_point(|&k| far[k].u < p4.u);

            let mut g0 = right.partition_point(|p| p.u < p4.u);
            while g0 < right.len() {
                let u5 = right[g0].u;
                let mut g1 = g0 + 1;
                while g1 < right.len() && right[g1].u == u5 {
                    g1 += 1;
                }
                let group = &right[g0..g1];
                g0 = g1;

                let cut_right = right.len() - g1;
                let need = budget - a as isize - cut_right as isize;
                if need < 0 {
                    continue;
                }
                while next_far < far_by_u.len() && far[far_by_u[next_far]].u <= u5 {
                    let lvl = level_of[far_by_u[next_far]];
                    in_window[lvl] += 1;
                    if lvl < top {
                        above += 1;
                    }
                    next_far += 1;
                }
                let need = need as usize;
                while top < levels && (above < need || (above == need && in_window[top] == 0)) {
                    above += in_window[top];
                    top += 1;
                }
                if let Some(tr) = trace.as_deref_mut() {
                    tr(ScanStop { left_pos: pos, u5, top_level: top });
                }
                if top == levels || above != need || u5 < self.base_end {
                    continue;
                }
                let h3 = far[level_start[top]].h;
                if p4.h > h3 {
                    continue;
                }
                for &p3 in &far[level_start[top]..level_start[top + 1]] {
                    if p3.u < p4.u || p3.u > u5 {
                        continue;
                    }
                    for &p5 in group.iter().filter(|p5| p5.h <= h3) {
                        emit(p3, p4, p5);
                    }
                }
            }
        }
    }
}

fn frame_context(
    ps: &PointSet,
    enclosed: &[usize],
    f: &Frame,
    max_target: usize,
    m: usize,
    robust: bool,
) -> EncloseContext {
    EncloseContext::new(ps, *f, enclosed, m, max_target, robust)
}

/// The leftmost, rightmost and farthest `t + 1` points of `enclosed` in the
/// frame `f`, extended over ties in collinear-robust mode.
pub fn extreme_candidates(
    ps: &PointSet,
    enclosed: &[usize],
    f: &Frame,
    t: usize,
    collinear_robust: bool,
) -> Candidates {
    frame_context(ps, enclosed, f, t, 0, collinear_robust).candidates(t)
}

/// All support triples on the base `f` whose rectangle leaves out exactly
/// `target_t` points, `m` of them beyond the base line. Sorted by
/// `(i4, i5, i3)`.
pub fn enclose(
    ps: &PointSet,
    enclosed: &[usize],
    target_t: usize,
    f: &Frame,
    m: usize,
    collinear_robust: bool,
) -> Vec<CandidateTriple> {
    let ctx = frame_context(ps, enclosed, f, target_t, m, collinear_robust);
    let mut out = Vec::new();
    ctx.scan(
        target_t,
        |p3, p4, p5| {
            out.push(CandidateTriple { i3: p3.idx, i4: p4.idx, i5: p5.idx, target_excluded: target_t })
        },
        None,
    );
    out.sort_by_key(|c| (c.i4, c.i5, c.i3));
    out
}
