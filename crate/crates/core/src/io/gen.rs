//! Seeded synthetic point sets.
//!
//! All randomness comes from ChaCha8 seeded with a 64-bit seed; independent
//! streams of the same seed (see [`rng_for`]) give independent instances.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};

use crate::error::{Error, Result};
use crate::geom::{orientation, Point};

/// Side of the `uniform-square` grid.
pub const SQUARE_SIDE: i64 = 1_000_000;

const ELLIPSE_RADIUS: f64 = 524_288.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    /// Distinct integer points in `[0, 10^6]²`.
    UniformSquare,
    /// Float points from an isotropic normal with σ = 1000.
    Gaussian,
    /// Points in strictly convex position on a jittered ellipse.
    ConvexPosition,
    /// Points on a small lattice with planted collinear triples.
    GridCollinear,
}

impl FromStr for Distribution {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform-square" => Ok(Distribution::UniformSquare),
            "gaussian" => Ok(Distribution::Gaussian),
            "convex-position" => Ok(Distribution::ConvexPosition),
            "grid-collinear" => Ok(Distribution::GridCollinear),
            _ => Err(format!(
                "unknown distribution '{s}' (expected uniform-square, gaussian, convex-position or grid-collinear)"
            )),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::UniformSquare => "uniform-square",
            Distribution::Gaussian => "gaussian",
            Distribution::ConvexPosition => "convex-position",
            Distribution::GridCollinear => "grid-collinear",
        })
    }
}

/// Stream `stream` of the generator seeded with `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n` points from `dist` followed by `outliers` far-away points.
pub fn generate(dist: Distribution, n: usize, outliers: usize, seed: u64) -> Result<Vec<Point>> {
    generate_with(dist, n, outliers, &mut rng_for(seed, 0))
}

pub fn generate_with<R: Rng>(dist: Distribution, n: usize, outliers: usize, rng: &mut R) -> Result<Vec<Point>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 points, got {n}")));
    }
    let mut pts = match dist {
        Distribution::UniformSquare => uniform_square(n, rng),
        Distribution::Gaussian => gaussian(n, rng),
        Distribution::ConvexPosition => convex_position(n, rng),
        Distribution::GridCollinear => grid_collinear(n, rng),
    };
    add_outliers(&mut pts, outliers, rng);
    Ok(pts)
}

fn uniform_square<R: Rng>(n: usize, rng: &mut R) -> Vec<Point> {
    let mut seen = HashSet::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let (x, y) = (rng.random_range(0..=SQUARE_SIDE), rng.random_range(0..=SQUARE_SIDE));
        if seen.insert((x, y)) {
            pts.push(Point::new(x as f64, y as f64));
        }
    }
    pts
}

fn gaussian<R: Rng>(n: usize, rng: &mut R) -> Vec<Point> {
    let normal = Normal::new(0.0, 1000.0).expect("valid deviation");
    (0..n).map(|_| Point::new(normal.sample(rng), normal.sample(rng))).collect()
}

fn strictly_convex(pts: &[Point]) -> bool {
    let n = pts.len();
    (0..n).all(|k| orientation(pts[k], pts[(k + 1) % n], pts[(k + 2) % n]) > 0)
}

fn convex_position<R: Rng>(n: usize, rng: &mut R) -> Vec<Point> {
    let phase = rng.random::<f64>() * TAU;
    let exact: Vec<Point> = (0..n)
        .map(|k| {
            let jitter = rng.random::<f64>() * 0.5;
            let a = phase + TAU * (k as f64 + jitter) / n as f64;
            Point::new(ELLIPSE_RADIUS * a.cos(), 0.6 * ELLIPSE_RADIUS * a.sin())
        })
        .collect();
    let rounded: Vec<Point> = exact.iter().map(|p| Point::new(p.x.round(), p.y.round())).collect();
    if strictly_convex(&rounded) {
        rounded
    } else {
        exact
    }
}

fn grid_collinear<R: Rng>(n: usize, rng: &mut R) -> Vec<Point> {
    let g = ((2 * n) as f64).sqrt().ceil() as i64 + 2;
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    let runs = (n / 6).max(1);
    for _ in 0..runs {
        let (dx, dy) = [(1, 0), (0, 1), (1, 1), (1, -1)][rng.random_range(0..4)];
        let x = rng.random_range(0..g - 2);
        let y = if dy < 0 { rng.random_range(2..g) } else { rng.random_range(0..g - 2 * dy.max(0)) };
        for s in 0..3 {
            let p = (x + s * dx, y + s * dy);
            if pts.len() < n && seen.insert(p) {
                pts.push(p);
            }
        }
    }
    while pts.len() < n {
        let p = (rng.random_range(0..g), rng.random_range(0..g));
        if seen.insert(p) {
            pts.push(p);
        }
    }
    pts.shuffle(rng);
    pts.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect()
}

fn add_outliers<R: Rng>(pts: &mut Vec<Point>, k: usize, rng: &mut R) {
    if k == 0 {
        return;
    }
    let integral = pts.iter().all(|p| p.x.fract() == 0.0 && p.y.fract() == 0.0);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts.iter() {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let extent = (x1 - x0).max(y1 - y0).max(1.0);
    for _ in 0..k {
        let a = rng.random::<f64>() * TAU;
        let r = extent * (10.0 + 10.0 * rng.random::<f64>());
        let mut p = Point::new(cx + r * a.cos(), cy + r * a.sin());
        if integral {
            p = Point::new(p.x.round(), p.y.round());
        }
        pts.push(p);
    }
}
