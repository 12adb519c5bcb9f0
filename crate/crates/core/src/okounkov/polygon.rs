//! Exact convex polygons in the plane, possibly degenerate (a segment, a
//! point, or empty).
//!
//! Canonical form: counterclockwise, no collinear vertices, starting at the
//! lexicographically smallest vertex. Equality is structural on that form.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::rational::{format_rational, parse_rational, ratio};
use crate::exactlin::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Self::new(ratio(x, 1), ratio(y, 1))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let p = |s: &str| parse_rational(s).map_err(serde::de::Error::custom);
        Ok(Point::new(p(&x)?, p(&y)?))
    }
}

/// `(b − a) × (c − a)`.
fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Convex hull (monotone chain) in canonical form.
    pub fn hull(points: impl IntoIterator<Item = Point>) -> Self {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self { vertices: lower }
    }

    /// `{x ≥ 0, y ≥ 0, x + y ≤ 1}`.
    pub fn unit_simplex() -> Self {
        Self::hull([Point::ints(0, 0), Point::ints(1, 0), Point::ints(0, 1)])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// 2 for a proper polygon, 1 for a segment, 0 for a point.
    pub fn dimension(&self) -> Option<usize> {
        match self.vertices.len() {
            0 => None,
            1 => Some(0),
            2 => Some(1),
            _ => Some(2),
        }
    }

    pub fn area(&self) -> Rational {
        let k = self.vertices.len();
        if k < 3 {
            return Rational::zero();
        }
        let twice: Rational = (0..k)
            .map(|i| {
                let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % k]);
                &a.x * &b.y - &b.x * &a.y
            })
            .sum();
        twice / ratio(2, 1)
    }

    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Self {
        Self::hull(self.vertices.iter().map(f))
    }

    /// Homogeneous scaling about the origin.
    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|p| Point::new(&p.x * s, &p.y * s))
    }

    fn edges(&self) -> Vec<(&Point, &Point)> {
        let k = self.vertices.len();
        match k {
            0 | 1 => vec![],
            2 => vec![(&self.vertices[0], &self.vertices[1])],
            _ => (0..k).map(|i| (&self.vertices[i], &self.vertices[(i + 1) % k])).collect(),
        }
    }

    /// Closed containment of a point.
    pub fn contains_point(&self, p: &Point) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == *p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                cross(a, b, p).is_zero()
                    && p.x >= a.x.clone().min(b.x.clone())
                    && p.x <= a.x.clone().max(b.x.clone())
                    && p.y >= a.y.clone().min(b.y.clone())
                    && p.y <= a.y.clone().max(b.y.clone())
            }
            _ => self.edges().iter().all(|(a, b)| !cross(a, b, p).is_negative()),
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Polygon) -> bool {
        other.vertices.iter().all(|p| self.contains_point(p))
    }

    /// Exact intersection of two convex polygons.
    pub fn intersect(&self, other: &Polygon) -> Polygon {
        let mut pts: Vec<Point> = Vec::new();
        pts.extend(self.vertices.iter().filter(|p| other.contains_point(p)).cloned());
        pts.extend(other.vertices.iter().filter(|p| self.contains_point(p)).cloned());
        for (p1, p2) in self.edges() {
            for (q1, q2) in other.edges() {
                if let Some(x) = segment_crossing(p1, p2, q1, q2) {
                    pts.push(x);
                }
            }
        }
        Polygon::hull(pts)
    }
}

fn segment_crossing(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Option<Point> {
    let r = Point::new(&p2.x - &p1.x, &p2.y - &p1.y);
    let s = Point::new(&q2.x - &q1.x, &q2.y - &q1.y);
    let denom = &r.x * &s.y - &r.y * &s.x;
    if denom.is_zero() {
        // parallel; overlaps are covered by the vertex-containment points
        return None;
    }
    let qp = Point::new(&q1.x - &p1.x, &q1.y - &p1.y);
    let t = (&qp.x * &s.y - &qp.y * &s.x) / &denom;
    let u = (&qp.x * &r.y - &qp.y * &r.x) / &denom;
    let unit = |v: &Rational| !v.is_negative() && *v <= Rational::one();
    (unit(&t) && unit(&u)).then(|| Point::new(&p1.x + &t * &r.x, &p1.y + &t * &r.y))
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

/// JSON payload `{"n", "conjectural", "vertices": [["p/q","p/q"], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub n: usize,
    pub conjectural: bool,
    pub vertices: Vec<Point>,
}

impl PolygonRecord {
    pub fn new(n: usize, polygon: &Polygon) -> Self {
        Self {
            n,
            conjectural: false,
            vertices: polygon.vertices.clone(),
        }
    }

    /// Rebuilds the polygon, rejecting payloads that are not in canonical form.
    pub fn polygon(&self) -> Result<Polygon> {
        let p = Polygon::hull(self.vertices.iter().cloned());
        if p.vertices != self.vertices {
            return Err(Error::parse(format!("{:?}", self.vertices), "vertices are not a canonical convex polygon"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(ratio(x.0, x.1), ratio(y.0, y.1))
    }

    #[test]
    fn canonical_form() {
        let a = Polygon::hull([Point::ints(0, 1), Point::ints(1, 0), Point::ints(0, 0), pt((1, 2), (0, 1))]);
        assert_eq!(a.vertices(), &[Point::ints(0, 0), Point::ints(1, 0), Point::ints(0, 1)]);
        assert_eq!(a, Polygon::unit_simplex());
        assert_eq!(a.area(), ratio(1, 2));
        let seg = Polygon::hull([Point::ints(0, 1), Point::ints(0, 0), pt((0, 1), (1, 2))]);
        assert_eq!(seg.vertices(), &[Point::ints(0, 0), Point::ints(0, 1)]);
        assert_eq!(seg.dimension(), Some(1));
    }

    #[test]
    fn containment() {
        let t = Polygon::unit_simplex();
        assert!(t.contains_point(&pt((1, 2), (1, 2))));
        assert!(!t.contains_point(&pt((2, 3), (2, 3))));
        let seg = Polygon::hull([Point::ints(0, 0), Point::ints(0, 1)]);
        assert!(t.contains(&seg));
        assert!(seg.contains_point(&pt((0, 1), (1, 3))));
        assert!(!seg.contains_point(&pt((1, 10), (1, 3))));
        assert!(!seg.contains(&t));
    }

    #[test]
    fn intersections() {
        let t = Polygon::unit_simplex();
        let shifted = t.map(|p| Point::new(&p.x + ratio(1, 2), p.y.clone()));
        assert_eq!(
            t.intersect(&shifted),
            Polygon::hull([pt((1, 2), (0, 1)), Point::ints(1, 0), pt((1, 2), (1, 2))])
        );
        let far = t.map(|p| Point::new(&p.x + ratio(3, 1), p.y.clone()));
        assert!(t.intersect(&far).is_empty());
        // a segment on the boundary
        let seg = Polygon::hull([Point::ints(0, 0), Point::ints(0, 2)]);
        assert_eq!(t.intersect(&seg), Polygon::hull([Point::ints(0, 0), Point::ints(0, 1)]));
    }

    #[test]
    fn record_round_trip() {
        let rec = PolygonRecord::new(2, &Polygon::unit_simplex());
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"n":2,"conjectural":false,"vertices":[["0","0"],["1","0"],["0","1"]]}"#);
        let back: PolygonRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.polygon().unwrap(), Polygon::unit_simplex());
        let bad: PolygonRecord =
            serde_json::from_str(r#"{"n":2,"conjectural":false,"vertices":[["1","0"],["0","0"],["0","1"]]}"#).unwrap();
        assert!(bad.polygon().is_err());
    }

    fn points() -> impl Strategy<Value = Vec<Point>> {
        proptest::collection::vec(((-8i64..8), (1i64..4), (-8i64..8), (1i64..4)), 1..9)
            .prop_map(|v| v.into_iter().map(|(a, b, c, d)| pt((a, b), (c, d))).collect())
    }

    proptest! {
        #[test]
        fn hull_contains_inputs_and_is_idempotent(ps in points()) {
            let h = Polygon::hull(ps.clone());
            for p in &ps { prop_assert!(h.contains_point(p)); }
            prop_assert_eq!(Polygon::hull(h.vertices().to_vec()), h.clone());
            prop_assert!(!h.area().is_negative());
        }

        #[test]
        fn intersection_is_contained_in_both(a in points(), b in points()) {
            let (a, b) = (Polygon::hull(a), Polygon::hull(b));
            let i = a.intersect(&b);
            prop_assert!(a.contains(&i));
            prop_assert!(b.contains(&i));
            prop_assert_eq!(i.clone(), b.intersect(&a));
            if a.contains(&b) { prop_assert_eq!(i, b); }
        }

        #[test]
        fn json_round_trip(a in points(), n in 0usize..10) {
            let rec = PolygonRecord::new(n, &Polygon::hull(a));
            let back: PolygonRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
            prop_assert_eq!(back, rec);
        }
    }
}
