//! Timing runs of the exact solver over generated instances.

use std::io::Write;

use serde::Serialize;

use super::gen::{generate_with, rng_for, Distribution};
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::solver::{solve_exact, SolveReport};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub ts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub dist: Distribution,
    pub collinear_robust: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub t: usize,
    pub trial: usize,
    pub k: usize,
    pub valid_pairs: usize,
    pub time_valid_pairs: f64,
    pub time_enclose: f64,
    pub time_total: f64,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MedianRow {
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub k: f64,
    pub valid_pairs: f64,
    pub time_valid_pairs: f64,
    pub time_enclose: f64,
    pub time_total: f64,
}

const REDRAWS: u64 = 16;

/// Instance `trial` of size `n`. In general-position mode an instance with
/// a collinear triple is redrawn from a fresh stream.
pub fn bench_instance(cfg: &BenchConfig, n: usize, t: usize, trial: usize) -> Result<(PointSet, SolveReport)> {
    let mut last = None;
    for redraw in 0..REDRAWS {
        let stream = ((n as u64) << 32) | ((trial as u64) << 8) | redraw;
        let pts = generate_with(cfg.dist, n, 0, &mut rng_for(cfg.seed, stream))?;
        let ps = PointSet::new(pts)?;
        match solve_exact(&ps, t, cfg.collinear_robust) {
            Ok(r) => return Ok((ps, r)),
            Err(e @ Error::CollinearInput { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one draw"))
}

pub fn run_bench(cfg: &BenchConfig, mut progress: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        for &t in &cfg.ts {
            for trial in 0..cfg.trials {
                let (_, r) = bench_instance(cfg, n, t, trial)?;
                let row = BenchRow {
                    n,
                    t,
                    trial,
                    k: r.stats.k.unwrap_or(0),
                    valid_pairs: r.stats.valid_pair_count.unwrap_or(0),
                    time_valid_pairs: r.stats.timings.valid_pairs,
                    time_enclose: r.stats.timings.enclose,
                    time_total: r.stats.timings.total,
                    area: r.rectangle.area.value(),
                };
                progress(&row);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Per-`(n, t)` medians, in first-seen order.
pub fn medians(rows: &[BenchRow]) -> Vec<MedianRow> {
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.n, r.t)) {
            keys.push((r.n, r.t));
        }
    }
    keys.into_iter()
        .map(|(n, t)| {
            let group: Vec<&BenchRow> = rows.iter().filter(|r| (r.n, r.t) == (n, t)).collect();
            let col = |f: fn(&BenchRow) -> f64| median(group.iter().map(|r| f(r)).collect());
            MedianRow {
                n,
                t,
                trials: group.len(),
                k: col(|r| r.k as f64),
                valid_pairs: col(|r| r.valid_pairs as f64),
                time_valid_pairs: col(|r| r.time_valid_pairs),
                time_enclose: col(|r| r.time_enclose),
                time_total: col(|r| r.time_total),
            }
        })
        .collect()
}

pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
