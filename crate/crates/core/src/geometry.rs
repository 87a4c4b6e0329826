//! Closed, counterclockwise, piecewise-straight boundaries.
//!
//! Unknowns live on segments and are collocated at segment midpoints.
//! Polygon vertices are always segment endpoints, so no collocation point
//! ever sits on a corner.

use crate::{Error, Result};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn mirror_y(self) -> Point {
        Point::new(self.x, -self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
    pub midpoint: Point,
    pub length: f64,
    /// Outward unit normal.
    pub normal: Point,
    /// Unit tangent along the traversal, `z x normal`.
    pub tangent: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self> {
        let d = end - start;
        let length = d.norm();
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Geometry(format!(
                "degenerate segment from {start:?} to {end:?}"
            )));
        }
        let tangent = d * (1.0 / length);
        Ok(Self {
            start,
            end,
            midpoint: (start + end) * 0.5,
            length,
            normal: Point::new(tangent.y, -tangent.x),
            tangent,
        })
    }

    /// Point at local coordinate `s in [-length/2, length/2]` from the midpoint.
    pub fn at(&self, s: f64) -> Point {
        self.midpoint + self.tangent * s
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        let s = (p - self.start).dot(self.tangent).clamp(0.0, self.length);
        p.distance(self.start + self.tangent * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Interior,
    Exterior,
    NearBoundary,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::Interior => "interior",
            Region::Exterior => "exterior",
            Region::NearBoundary => "near_boundary",
        }
    }
}

/// Fraction of the local segment length defining the near-boundary band.
pub const NEAR_BOUNDARY_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    segments: Vec<Segment>,
    perimeter: f64,
}

impl Contour {
    /// Closed contour through `vertices` (already oriented), no subdivision.
    fn from_closed_vertices(vertices: &[Point]) -> Result<Self> {
        let n = vertices.len();
        let segments = (0..n)
            .map(|i| Segment::new(vertices[i], vertices[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        let perimeter = segments.iter().map(|s| s.length).sum();
        Ok(Self {
            segments,
            perimeter,
        })
    }

    /// `ceil(2 pi r / max_seg_len)` equal chords, counterclockwise from angle 0.
    pub fn circle(center: Point, radius: f64, max_seg_len: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("circle radius must be > 0, got {radius}")));
        }
        let circumference = 2.0 * PI * radius;
        if !(max_seg_len > 0.0 && max_seg_len < circumference) {
            return Err(Error::invalid(format!(
                "max segment length must lie in (0, {circumference}), got {max_seg_len}"
            )));
        }
        let n = (circumference / max_seg_len).ceil() as usize;
        let n = n.max(3);
        let vertices: Vec<Point> = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                center + Point::new(t.cos(), t.sin()) * radius
            })
            .collect();
        Self::from_closed_vertices(&vertices)
    }

    /// Simple polygon with every edge split into `ceil(len / max_seg_len)`
    /// equal segments. Orientation is normalized to counterclockwise while
    /// keeping the first vertex.
    pub fn polygon(vertices: &[Point], max_seg_len: f64) -> Result<Self> {
        if !(max_seg_len > 0.0 && max_seg_len.is_finite()) {
            return Err(Error::invalid(format!(
                "max segment length must be > 0, got {max_seg_len}"
            )));
        }
        let mut verts = vertices.to_vec();
        check_simple_polygon(&verts)?;
        if signed_area_of(&verts) < 0.0 {
            verts[1..].reverse();
        }
        let n = verts.len();
        let mut points = Vec::new();
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let pieces = ((b - a).norm() / max_seg_len).ceil().max(1.0) as usize;
            for k in 0..pieces {
                let t = k as f64 / pieces as f64;
                points.push(a + (b - a) * t);
            }
        }
        Self::from_closed_vertices(&points)
    }

    /// Axis-aligned rectangle, vertices counterclockwise from the lower-left corner.
    pub fn rectangle(center: Point, width: f64, height: f64, max_seg_len: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0) {
            return Err(Error::invalid(format!(
                "rectangle sides must be > 0, got {width} x {height}"
            )));
        }
        let (hw, hh) = (0.5 * width, 0.5 * height);
        let v = [
            center + Point::new(-hw, -hh),
            center + Point::new(hw, -hh),
            center + Point::new(hw, hh),
            center + Point::new(-hw, hh),
        ];
        Self::polygon(&v, max_seg_len)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn max_segment_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).fold(0.0, f64::max)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.segments.iter().map(|s| s.start)
    }

    pub fn signed_area(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.start.cross(s.end))
            .sum::<f64>()
            * 0.5
    }

    pub fn centroid(&self) -> Point {
        let a = self.signed_area();
        let (mut cx, mut cy) = (0.0, 0.0);
        for s in &self.segments {
            let c = s.start.cross(s.end);
            cx += (s.start.x + s.end.x) * c;
            cy += (s.start.y + s.end.y) * c;
        }
        Point::new(cx / (6.0 * a), cy / (6.0 * a))
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in self.vertices() {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Even-odd containment against the discretized polygon.
    pub fn contains(&self, p: Point) -> bool {
        let mut inside = false;
        for s in &self.segments {
            let (a, b) = (s.start, s.end);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Whether `p` lies within the near-boundary band of any segment.
    pub fn is_near_boundary(&self, p: Point) -> bool {
        self.segments
            .iter()
            .any(|s| s.distance_to(p) < NEAR_BOUNDARY_FRACTION * s.length)
    }

    pub fn classify_point(&self, p: Point) -> Region {
        if self.is_near_boundary(p) {
            Region::NearBoundary
        } else if self.contains(p) {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    /// Checks closure, orientation and unit frames; returns a description of
    /// the first violation.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.segments.len();
        if n < 3 {
            return Err(Error::Geometry(format!("contour has {n} segments")));
        }
        for (i, s) in self.segments.iter().enumerate() {
            let next = &self.segments[(i + 1) % n];
            let tol = 1e-12 * (1.0 + s.end.norm());
            if s.end.distance(next.start) > tol {
                return Err(Error::Geometry(format!("gap after segment {i}")));
            }
            if (s.normal.norm() - 1.0).abs() > 1e-12
                || (s.tangent.norm() - 1.0).abs() > 1e-12
                || s.normal.dot(s.tangent).abs() > 1e-12
            {
                return Err(Error::Geometry(format!("bad frame on segment {i}")));
            }
        }
        if self.signed_area() <= 0.0 {
            return Err(Error::Geometry("contour is not counterclockwise".into()));
        }
        Ok(())
    }

    /// Whether the interiors of two contours overlap (edge crossing or nesting).
    pub fn overlaps(&self, other: &Contour) -> bool {
        let crossing = self.segments.iter().any(|a| {
            other
                .segments
                .iter()
                .any(|b| segments_intersect(a.start, a.end, b.start, b.end))
        });
        crossing
            || self.contains(other.segments[0].midpoint)
            || other.contains(self.segments[0].midpoint)
    }
}

fn signed_area_of(v: &[Point]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() * 0.5
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |a: Point, b: Point, c: Point, d: f64| {
        d == 0.0
            && c.x >= a.x.min(b.x)
            && c.x <= a.x.max(b.x)
            && c.y >= a.y.min(b.y)
            && c.y <= a.y.max(b.y)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

fn check_simple_polygon(v: &[Point]) -> Result<()> {
    let n = v.len();
    if n < 3 {
        return Err(Error::Geometry(format!("polygon needs >= 3 vertices, got {n}")));
    }
    if v.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::Geometry("non-finite vertex".into()));
    }
    for i in 0..n {
        if v[i] == v[(i + 1) % n] {
            return Err(Error::Geometry(format!("repeated vertex at index {i}")));
        }
    }
    let scale = v.iter().map(|p| p.norm()).fold(1.0, f64::max);
    if signed_area_of(v).abs() <= 1e-14 * scale * scale {
        return Err(Error::Geometry("polygon has zero area".into()));
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return Err(Error::Geometry(format!(
                    "polygon edges {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_square() -> Vec<Point> {
        vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ]
    }

    #[test]
    fn circle_segment_count_and_area() {
        let c = Contour::circle(Point::ORIGIN, 1.0, 0.1).unwrap();
        assert_eq!(c.len(), 63);
        let n = 63.0;
        let area = 0.5 * n * (2.0 * PI / n).sin();
        assert!((c.signed_area() - area).abs() < 1e-12);
        assert!((area - 3.1364).abs() < 1e-4);
        for s in c.segments() {
            assert!(s.normal.dot(s.midpoint) > 0.0);
        }
        c.check_invariants().unwrap();
    }

    #[test]
    fn circle_area_converges_to_pi() {
        let mut last = 0.0;
        for h in [0.5, 0.1, 0.02, 0.004] {
            let a = Contour::circle(Point::ORIGIN, 1.0, h).unwrap().signed_area();
            assert!(a > last && a < PI);
            last = a;
        }
        assert!((PI - last) < 1e-4);
    }

    #[test]
    fn circle_rejects_bad_input() {
        assert!(Contour::circle(Point::ORIGIN, 0.0, 0.1).is_err());
        assert!(Contour::circle(Point::ORIGIN, 1.0, 0.0).is_err());
        assert!(Contour::circle(Point::ORIGIN, 1.0, 7.0).is_err());
        assert!(Contour::circle(Point::ORIGIN, -1.0, 0.1).is_err());
    }

    #[test]
    fn square_subdivision() {
        let c = Contour::polygon(&unit_square(), 0.05).unwrap();
        assert_eq!(c.len(), 80);
        assert!((c.perimeter() - 4.0).abs() < 1e-12);
        c.check_invariants().unwrap();
        let corners = unit_square();
        for s in c.segments() {
            assert!(corners.iter().all(|v| v.distance(s.midpoint) > 1e-3));
        }
        for v in &corners {
            assert!(c.vertices().any(|p| p.distance(*v) < 1e-15));
        }
    }

    #[test]
    fn clockwise_input_is_normalized() {
        let ccw = Contour::polygon(&unit_square(), 0.05).unwrap();
        let cw_input = vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ];
        let cw = Contour::polygon(&cw_input, 0.05).unwrap();
        assert_eq!(ccw, cw);
    }

    #[test]
    fn rejects_bad_polygons() {
        let bowtie = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        assert!(matches!(Contour::polygon(&bowtie, 0.1), Err(Error::Geometry(_))));
        let line = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
        assert!(Contour::polygon(&line, 0.1).is_err());
        assert!(Contour::polygon(&line[..2], 0.1).is_err());
        let dup = [Point::new(0.0, 0.0), Point::new(0.0, 0.0), Point::new(1.0, 1.0)];
        assert!(Contour::polygon(&dup, 0.1).is_err());
    }

    #[test]
    fn classify_simple_points() {
        let c = Contour::circle(Point::ORIGIN, 1.0, 0.1).unwrap();
        assert_eq!(c.classify_point(Point::ORIGIN), Region::Interior);
        assert_eq!(c.classify_point(Point::new(5.0, 0.0)), Region::Exterior);
        let s = c.segments()[10];
        let p = s.midpoint + s.normal * (0.01 * s.length);
        assert_eq!(c.classify_point(p), Region::NearBoundary);
    }

    #[test]
    fn classification_matches_disk_away_from_boundary() {
        let c = Contour::circle(Point::ORIGIN, 1.0, 0.1).unwrap();
        let h = c.max_segment_length();
        for i in -50..=50 {
            for j in -50..=50 {
                let p = Point::new(i as f64 * 0.04, j as f64 * 0.04);
                let r = p.norm();
                if (r - 1.0).abs() <= h {
                    continue;
                }
                let want = if r < 1.0 { Region::Interior } else { Region::Exterior };
                assert_eq!(c.classify_point(p), want, "{p:?}");
            }
        }
    }

    #[test]
    fn overlap_detection() {
        let a = Contour::circle(Point::ORIGIN, 1.0, 0.2).unwrap();
        let b = Contour::circle(Point::new(1.5, 0.0), 1.0, 0.2).unwrap();
        let c = Contour::circle(Point::new(3.0, 0.0), 1.0, 0.2).unwrap();
        let inner = Contour::circle(Point::ORIGIN, 0.3, 0.2).unwrap();
        assert!(a.overlaps(&b));
        assert!(!a.overlaps(&c));
        assert!(a.overlaps(&inner));
    }

    proptest! {
        #[test]
        fn generated_contours_satisfy_invariants(
            r in 0.05f64..5.0,
            frac in 0.01f64..0.5,
            cx in -3.0f64..3.0,
            w in 0.1f64..3.0,
            h in 0.1f64..3.0,
        ) {
            let circle = Contour::circle(Point::new(cx, 0.5), r, frac * r).unwrap();
            let rect = Contour::rectangle(Point::new(cx, -1.0), w, h, frac).unwrap();
            for c in [circle, rect] {
                prop_assert!(c.check_invariants().is_ok());
                let sum: f64 = c.segments().iter().map(|s| s.length).sum();
                prop_assert!((sum - c.perimeter()).abs() < 1e-12 * sum);
                for s in c.segments() {
                    prop_assert!(s.midpoint.distance((s.start + s.end) * 0.5) < 1e-14);
                    prop_assert!((s.normal.cross(s.tangent) - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
