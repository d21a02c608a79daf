//! Planar primitives shared by every stage of the solver.
//!
//! Coordinates are stored as `f64`. When every coordinate of a [`PointSet`] is
//! an integer with magnitude at most [`INTEGER_BOUND`], the set runs in
//! *integer mode*: every difference fits in 21 bits and every cross or dot
//! product in 43 bits, so the `f64` predicates below are exact without any
//! special arithmetic. Areas are kept as the triple `(Δu, Δv, |d|²)` and
//! compared with wide integer products in that mode.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest coordinate magnitude accepted in integer mode (2^20).
pub const INTEGER_BOUND: f64 = 1_048_576.0;

/// Default float-mode tolerance, relative to the bounding-box diagonal.
pub const DEFAULT_TOLERANCE_FACTOR: f64 = 1e-9;

/// Relative tolerance under which two float areas compare equal.
pub const AREA_REL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn minus(self, o: Point) -> (f64, f64) {
        (self.x - o.x, self.y - o.y)
    }

    fn is_small_integer(self) -> bool {
        let ok = |c: f64| c.fract() == 0.0 && c.abs() <= INTEGER_BOUND;
        ok(self.x) && ok(self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

#[inline]
pub(crate) fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

#[inline]
pub(crate) fn dot(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

#[inline]
fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign of the turn a → b → c: +1 counterclockwise, −1 clockwise, 0 collinear.
#[inline]
pub fn orientation(a: Point, b: Point, c: Point) -> i8 {
    sign(cross(b.minus(a), c.minus(a)))
}

/// Whether the clockwise angle from ray `origin→reference` to `origin→p` is
/// strictly smaller than the one to `origin→q`. Angles live in `[0, 2π)`.
pub fn clockwise_less(origin: Point, reference: Point, p: Point, q: Point) -> Result<bool> {
    let r = reference.minus(origin);
    let a = p.minus(origin);
    let b = q.minus(origin);
    if a == (0.0, 0.0) || b == (0.0, 0.0) || r == (0.0, 0.0) {
        return Err(Error::UndefinedOrder);
    }
    Ok(clockwise_cmp(r, a, b) == Ordering::Less)
}

/// Half of the turn a vector falls in, measured clockwise from `r`:
/// 0 for `[0, π)`, 1 for `[π, 2π)`.
#[inline]
fn clockwise_half(r: (f64, f64), w: (f64, f64)) -> u8 {
    let c = cross(r, w);
    if c < 0.0 || (c == 0.0 && dot(r, w) > 0.0) {
        0
    } else {
        1
    }
}

/// Orders two nonzero vectors by clockwise angle from `r`.
pub(crate) fn clockwise_cmp(r: (f64, f64), a: (f64, f64), b: (f64, f64)) -> Ordering {
    let (ha, hb) = (clockwise_half(r, a), clockwise_half(r, b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // Inside one half-turn the angular order is the cross-product sign; the
    // exact-zero angle needs no special case because it is the half's start.
    let c = cross(a, b);
    if c < 0.0 {
        Ordering::Less
    } else if c > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

#[derive(Clone, Debug)]
pub struct PointSet {
    points: Vec<Point>,
    integer_mode: bool,
    tolerance: f64,
}

impl PointSet {
    /// Builds a point set, switching to integer mode when every coordinate
    /// is an integer within [`INTEGER_BOUND`].
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::validate(&points)?;
        let integer_mode = points.iter().all(|p| p.is_small_integer());
        Ok(Self::assemble(points, integer_mode, DEFAULT_TOLERANCE_FACTOR))
    }

    /// Builds a point set that always uses float predicates.
    pub fn new_float(points: Vec<Point>) -> Result<Self> {
        Self::validate(&points)?;
        Ok(Self::assemble(points, false, DEFAULT_TOLERANCE_FACTOR))
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    fn validate(points: &[Point]) -> Result<()> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if let Some(index) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(())
    }

    fn assemble(points: Vec<Point>, integer_mode: bool, factor: f64) -> Self {
        let mut set = PointSet { points, integer_mode, tolerance: 0.0 };
        set.set_tolerance_factor(factor);
        set
    }

    /// Float-mode membership tolerance as a fraction of the bounding-box
    /// diagonal. Ignored in integer mode.
    pub fn with_tolerance_factor(mut self, factor: f64) -> Self {
        self.set_tolerance_factor(factor);
        self
    }

    fn set_tolerance_factor(&mut self, factor: f64) {
        self.tolerance = if self.integer_mode { 0.0 } else { factor * self.diagonal() };
    }

    fn diagonal(&self) -> f64 {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in &self.points {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        (x1 - x0).hypot(y1 - y0)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn integer_mode(&self) -> bool {
        self.integer_mode
    }

    /// Absolute membership tolerance in coordinate units (0 in integer mode).
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// The points at `indices`, keeping this set's arithmetic mode.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        let points = indices.iter().map(|&i| self.points[i]).collect();
        PointSet { points, integer_mode: self.integer_mode, tolerance: self.tolerance }
    }
}

/// A direction given by an ordered point pair, with `(u, v)` coordinates
/// measured from the first point in units scaled by `|d|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub i1: usize,
    pub i2: usize,
    pub origin: Point,
    pub d: (f64, f64),
}

impl Frame {
    pub fn new(ps: &PointSet, i1: usize, i2: usize) -> Result<Self> {
        let (p1, p2) = (ps.get(i1), ps.get(i2));
        if i1 == i2 || p1 == p2 {
            return Err(Error::DegenerateFrame { i1, i2 });
        }
        Ok(Frame { i1, i2, origin: p1, d: p2.minus(p1) })
    }

    /// `(dot(d, p − P1), cross(d, p − P1))`.
    #[inline]
    pub fn project(&self, p: Point) -> (f64, f64) {
        let w = p.minus(self.origin);
        (dot(self.d, w), cross(self.d, w))
    }

    #[inline]
    pub fn norm2(&self) -> f64 {
        dot(self.d, self.d)
    }

    fn unproject(&self, u: f64, v: f64) -> Point {
        let s = self.norm2();
        let (dx, dy) = self.d;
        Point::new(self.origin.x + (dx * u - dy * v) / s, self.origin.y + (dy * u + dx * v) / s)
    }
}

pub fn project(f: &Frame, p: Point) -> (f64, f64) {
    f.project(p)
}

/// Rectangle area held as `width · height / scale` in frame units.
///
/// With `exact` set, all three factors are integers below 2^53 and
/// comparisons are done on wide integer products.
#[derive(Clone, Copy, Debug)]
pub struct Area {
    pub width: f64,
    pub height: f64,
    pub scale: f64,
    pub exact: bool,
}

impl Area {
    pub fn new(width: f64, height: f64, scale: f64, exact: bool) -> Self {
        Area { width: width.abs(), height: height.abs(), scale, exact }
    }

    /// A plain floating-point area.
    pub fn from_value(value: f64) -> Self {
        Area { width: value, height: 1.0, scale: 1.0, exact: false }
    }

    pub fn value(&self) -> f64 {
        if self.exact {
            (self.numerator() as f64) / self.scale
        } else {
            self.width * self.height / self.scale
        }
    }

    pub fn is_zero(&self) -> bool {
        self.width == 0.0 || self.height == 0.0
    }

    fn numerator(&self) -> u128 {
        (self.width as u128) * (self.height as u128)
    }

    /// Total order on exact areas; float areas within a relative
    /// [`AREA_REL_TOLERANCE`] compare equal.
    pub fn compare(&self, other: &Area) -> Ordering {
        if self.exact && other.exact {
            let lhs = widening_mul(self.numerator(), other.scale as u64);
            let rhs = widening_mul(other.numerator(), self.scale as u64);
            return lhs.cmp(&rhs);
        }
        let (a, b) = (self.value(), other.value());
        if (a - b).abs() <= AREA_REL_TOLERANCE * a.abs().max(b.abs()) {
            Ordering::Equal
        } else {
            a.total_cmp(&b)
        }
    }
}

/// `a · b` as `(high, low)` limbs of a 192-bit product, ordered like the
/// product itself.
fn widening_mul(a: u128, b: u64) -> (u128, u64) {
    let b = b as u128;
    let lo = (a & u64::MAX as u128) * b;
    let hi = (a >> 64) * b + (lo >> 64);
    (hi, lo as u64)
}

#[derive(Clone, Debug)]
pub struct OrientedRectangle {
    /// `(P1, P2, P3, P4, P5)`: two base points, the opposite-side point and
    /// the two perpendicular-side points.
    pub supports: [usize; 5],
    pub frame: Frame,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    /// Counterclockwise.
    pub corners: [Point; 4],
    pub area: Area,
    pub enclosed_count: Option<usize>,
    pub degenerate: bool,
}

impl OrientedRectangle {
    pub fn from_extents(
        frame: Frame,
        u_range: (f64, f64),
        v_range: (f64, f64),
        supports: [usize; 5],
        exact: bool,
    ) -> Self {
        let (u0, u1) = u_range;
        let (v0, v1) = v_range;
        debug_assert!(u0 <= u1 && v0 <= v1);
        let corners = [
            frame.unproject(u0, v0),
            frame.unproject(u1, v0),
            frame.unproject(u1, v1),
            frame.unproject(u0, v1),
        ];
        let area = Area::new(u1 - u0, v1 - v0, frame.norm2(), exact);
        OrientedRectangle {
            supports,
            frame,
            u_range,
            v_range,
            corners,
            area,
            enclosed_count: None,
            degenerate: area.is_zero(),
        }
    }

    /// Closed-boundary membership in the rectangle's own frame.
    pub fn contains(&self, ps: &PointSet, p: Point) -> bool {
        let tol = ps.tolerance() * self.frame.norm2().sqrt();
        let (u, v) = self.frame.project(p);
        u >= self.u_range.0 - tol
            && u <= self.u_range.1 + tol
            && v >= self.v_range.0 - tol
            && v <= self.v_range.1 + tol
    }

    pub fn side_lengths(&self) -> (f64, f64) {
        let s = self.frame.norm2().sqrt();
        ((self.u_range.1 - self.u_range.0) / s, (self.v_range.1 - self.v_range.0) / s)
    }
}

/// Rectangle with base line `P1P2`, opposite side through `P3` and
/// perpendicular sides through `P4` and `P5`.
pub fn rect_from_supports(
    ps: &PointSet,
    supports: [usize; 5],
    allow_degenerate: bool,
) -> Result<OrientedRectangle> {
    let [i1, i2, i3, i4, i5] = supports;
    let frame = Frame::new(ps, i1, i2)?;
    let (_, v3) = frame.project(ps.get(i3));
    if v3 == 0.0 && !allow_degenerate {
        return Err(Error::DegenerateRectangle);
    }
    let v_range = (v3.min(0.0), v3.max(0.0));
    let tol = ps.tolerance() * frame.norm2().sqrt();
    let (u4, v4) = frame.project(ps.get(i4));
    let (u5, v5) = frame.project(ps.get(i5));
    for (index, v) in [(i4, v4), (i5, v5)] {
        if v < v_range.0 - tol || v > v_range.1 + tol {
            return Err(Error::InvalidSupports { index });
        }
    }
    let rect = OrientedRectangle::from_extents(
        frame,
        (u4.min(u5), u4.max(u5)),
        v_range,
        supports,
        ps.integer_mode(),
    );
    if rect.degenerate && !allow_degenerate {
        return Err(Error::DegenerateRectangle);
    }
    Ok(rect)
}

pub fn count_enclosed(ps: &PointSet, r: &OrientedRectangle) -> (usize, Vec<bool>) {
    let flags: Vec<bool> = ps.points().iter().map(|&p| r.contains(ps, p)).collect();
    (flags.iter().filter(|&&f| f).count(), flags)
}

pub fn compare_areas(r1: &OrientedRectangle, r2: &OrientedRectangle) -> Ordering {
    r1.area.compare(&r2.area)
}
