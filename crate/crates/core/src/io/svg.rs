use std::fmt::Write;

use crate::geom::PointSet;
use crate::solver::SolveReport;

/// SVG 1.1 plot: one polygon for the rectangle and one circle per point,
/// inliers and outliers in different colours. The y axis points up.
pub fn render_svg(ps: &PointSet, report: &SolveReport) -> String {
    let corners = &report.rectangle.corners;
    let xs = ps.points().iter().map(|p| p.x).chain(corners.iter().map(|c| c.x));
    let ys = ps.points().iter().map(|p| p.y).chain(corners.iter().map(|c| c.y));
    let (x0, x1) = xs.fold((f64::MAX, f64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.fold((f64::MAX, f64::MIN), |(a, b), y| (a.min(y), b.max(y)));
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.05 * extent;
    let r = 0.006 * extent;
    let stroke = 0.002 * extent;

    let mut outlier = vec![false; ps.len()];
    for &i in &report.outlier_indices {
        outlier[i] = true;
    }

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="{} {} {} {}">"#,
        x0 - pad,
        0.0 - y1 - pad,
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    );
    let pts: Vec<String> = corners.iter().map(|c| format!("{},{}", c.x, 0.0 - c.y)).collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#4c72b0" fill-opacity="0.15" stroke="#4c72b0" stroke-width="{stroke}"/>"##,
        pts.join(" ")
    );
    for (i, p) in ps.points().iter().enumerate() {
        let fill = if outlier[i] { "#c44e52" } else { "#222222" };
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{r}" fill="{fill}"/>"#, p.x, 0.0 - p.y);
    }
    s.push_str("</svg>\n");
    s
}
