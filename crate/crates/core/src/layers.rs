//! Convex hull and onion peeling.
//!
//! Hulls are boundary-inclusive: points in the interior of a hull edge and
//! repeated coordinates belong to the hull, so they peel with the outer layer.

use std::collections::HashMap;

use crate::geom::{dot, orientation, Point, PointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    /// Outermost first; each layer counterclockwise.
    pub layers: Vec<Vec<usize>>,
    /// 1-based layer of every point; `max_layers + 1` for unpeeled points.
    pub layer_of: Vec<usize>,
}

impl LayerDecomposition {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

/// All points on the hull boundary of `ps`, counterclockwise from the
/// lexicographically smallest one.
pub fn convex_hull(ps: &PointSet) -> Vec<usize> {
    let all: Vec<usize> = (0..ps.len()).collect();
    hull_of(ps.points(), &all)
}

fn coord_key(p: Point) -> (u64, u64) {
    // +0.0 folds -0.0 into 0.0
    ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits())
}

pub(crate) fn hull_of(points: &[Point], indices: &[usize]) -> Vec<usize> {
    if indices.is_empty() {
        return Vec::new();
    }
    let mut sorted = indices.to_vec();
    sorted.sort_by(|&a, &b| {
        let (pa, pb) = (points[a], points[b]);
        pa.x.total_cmp(&pb.x).then(pa.y.total_cmp(&pb.y)).then(a.cmp(&b))
    });
    let mut distinct = sorted.clone();
    distinct.dedup_by(|a, b| points[*a] == points[*b]);

    let vertices = strict_hull(points, &distinct);
    let vertex_at: HashMap<(u64, u64), usize> =
        vertices.iter().enumerate().map(|(k, &i)| (coord_key(points[i]), k)).collect();

    let h = vertices.len();
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); h];
    let mut on_edge: Vec<Vec<(f64, usize)>> = vec![Vec::new(); h];
    for &i in &sorted {
        let p = points[i];
        if let Some(&k) = vertex_at.get(&coord_key(p)) {
            at_vertex[k].push(i);
            continue;
        }
        if h < 2 {
            continue;
        }
        for k in 0..h {
            let a = points[vertices[k]];
            let b = points[vertices[(k + 1) % h]];
            if orientation(a, b, p) != 0 {
                continue;
            }
            let along = dot(p.minus(a), b.minus(a));
            if along > 0.0 && along < dot(b.minus(a), b.minus(a)) {
                on_edge[k].push((along, i));
                break;
            }
        }
    }

    let mut out = Vec::new();
    for k in 0..h {
        out.extend(at_vertex[k].iter().copied());
        on_edge[k].sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        out.extend(on_edge[k].iter().map(|&(_, i)| i));
    }
    out
}

/// Andrew's monotone chain on lexicographically sorted distinct points,
/// dropping collinear points. Returns counterclockwise vertices.
fn strict_hull(points: &[Point], distinct: &[usize]) -> Vec<usize> {
    if distinct.len() <= 2 {
        return distinct.to_vec();
    }
    let mut hull: Vec<usize> = Vec::with_capacity(distinct.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> =
            if pass == 0 { Box::new(distinct.iter()) } else { Box::new(distinct.iter().rev()) };
        for &i in iter {
            while hull.len() >= start + 2
                && orientation(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    if hull.len() < 2 {
        // all points collinear: the chain collapses to its two endpoints
        return vec![distinct[0], distinct[distinct.len() - 1]];
    }
    hull
}

pub fn convex_layers(ps: &PointSet, max_layers: usize) -> LayerDecomposition {
    let n = ps.len();
    let mut layer_of = vec![max_layers + 1; n];
    let mut layers = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() && layers.len() < max_layers {
        let hull = hull_of(ps.points(), &remaining);
        for &i in &hull {
            layer_of[i] = layers.len() + 1;
        }
        remaining.retain(|&i| layer_of[i] > layers.len() + 1);
        layers.push(hull);
    }
    LayerDecomposition { layers, layer_of }
}

/// Number of points on the first `t + 1` convex layers.
pub fn k_first_layers(ps: &PointSet, t: usize) -> usize {
    convex_layers(ps, t + 1).layers.iter().map(Vec::len).sum()
}
