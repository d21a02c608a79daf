//! Point files, result documents, plots, generators and the bench runner.

pub mod bench;
pub mod gen;
mod svg;

use std::fs::File;
use std::io::{BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::solver::{PhaseTimings, SampleParams, SolveMode, SolveReport};

pub use svg::render_svg;

/// Reads `x,y` records. A non-numeric first record is taken as a header;
/// blank lines and lines starting with `#` are skipped.
pub fn read_points<R: Read>(reader: R) -> Result<Vec<Point>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);
    let mut points = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse { line: e.position().map_or(k + 1, |p| p.line() as usize), msg: e.to_string() })?;
        let line = rec.position().map_or(k + 1, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected 2 fields, found {}", rec.len()) });
        }
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => {
                if !v.iter().all(|c| c.is_finite()) {
                    return Err(Error::Parse { line, msg: "coordinates must be finite".into() });
                }
                points.push(Point::new(v[0], v[1]));
            }
            Err(_) if points.is_empty() && k == 0 => continue,
            Err(e) => return Err(Error::Parse { line, msg: format!("bad number: {e}") }),
        }
    }
    if points.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no points".into() });
    }
    Ok(points)
}

/// Loads a point set from `path`, or standard input for `-`.
pub fn load_point_set(path: &str) -> Result<PointSet> {
    let points = if path == "-" {
        read_points(std::io::stdin().lock())?
    } else {
        read_points(BufReader::new(File::open(path).map_err(|e| Error::Io(format!("{path}: {e}")))?))?
    };
    PointSet::new(points)
}

/// Writes `x,y` rows under a header. Shortest round-trip formatting keeps
/// integers integral and floats exact.
pub fn write_points<W: Write>(out: W, points: &[Point]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["x", "y"]).map_err(io)?;
    for p in points {
        w.write_record([p.x.to_string(), p.y.to_string()]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocumentStats {
    pub k: Option<usize>,
    pub valid_pair_count: Option<usize>,
    pub triples_examined: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
}

/// Serialized form of a solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub mode: SolveMode,
    pub n: usize,
    pub t: usize,
    pub area: f64,
    /// Counterclockwise.
    pub corners: [[f64; 2]; 4],
    pub support_indices: [usize; 5],
    pub enclosed_count: usize,
    pub outlier_indices: Vec<usize>,
    pub stats: DocumentStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_params: Option<SampleParams>,
}

impl ResultDocument {
    /// Timings are wall-clock noise; they are left out unless asked for so
    /// that repeated runs serialize identically.
    pub fn from_report(report: &SolveReport, n: usize, with_timings: bool) -> Self {
        let r = &report.rectangle;
        ResultDocument {
            mode: report.mode,
            n,
            t: report.t,
            area: r.area.value(),
            corners: r.corners.map(|p| [p.x, p.y]),
            support_indices: r.supports,
            enclosed_count: report.enclosed_indices.len(),
            outlier_indices: report.outlier_indices.clone(),
            stats: DocumentStats {
                k: report.stats.k,
                valid_pair_count: report.stats.valid_pair_count,
                triples_examined: report.stats.triples_examined,
                timings: with_timings.then_some(report.stats.timings),
            },
            sample_params: report.sample_params,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_exact;

    #[test]
    fn parses_header_comments_and_blanks() {
        let text = "x,y\n# a comment\n0,0\n\n 4 , 0\n4,3.5\n-1e3,2\n";
        let pts = read_points(text.as_bytes()).unwrap();
        assert_eq!(pts, vec![Point::new(0., 0.), Point::new(4., 0.), Point::new(4., 3.5), Point::new(-1000., 2.)]);
        assert_eq!(read_points("1,2\n3,4\n".as_bytes()).unwrap().len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(read_points("0,0\nnan,1\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_points("0,0\ninf,1\n".as_bytes()), Err(Error::Parse { .. })));
        assert!(matches!(read_points("0,0\n1,2,3\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_points("0,0\nabc,1\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_points("x,y\n".as_bytes()), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_is_exact() {
        let pts = vec![Point::new(1., -2.), Point::new(0.1, 1e-300), Point::new(123456.789, 2f64.sqrt())];
        let mut buf = Vec::new();
        write_points(&mut buf, &pts).unwrap();
        assert!(String::from_utf8(buf.clone()).unwrap().starts_with("x,y\n1,-2\n"));
        assert_eq!(read_points(buf.as_slice()).unwrap(), pts);
    }

    #[test]
    fn document_fields() {
        let ps = PointSet::from_xy(&[(0., 0.), (4., 0.), (4., 3.), (0., 3.), (2., 1.), (10., 10.)]).unwrap();
        let report = solve_exact(&ps, 1, false).unwrap();
        let doc = ResultDocument::from_report(&report, ps.len(), false);
        assert_eq!(doc.area, 12.0);
        assert_eq!(doc.outlier_indices, vec![5]);
        assert_eq!(doc.enclosed_count, 5);
        let json = doc.to_json();
        let keys = ["mode", "n", "t", "area", "corners", "support_indices", "enclosed_count", "outlier_indices", "stats"];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(!json.contains("sample_params"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["mode"], "exact");
        assert!(v["stats"].get("timings").is_none());
        let with = ResultDocument::from_report(&report, ps.len(), true);
        assert!(with.stats.timings.is_some());
        assert_eq!(serde_json::from_str::<ResultDocument>(&doc.to_json()).unwrap(), doc);
    }
}
