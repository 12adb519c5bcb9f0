//! Vertical strips `hull{(0,0), (d − √n·m, 0), (d − √n·m, √n·m), (0,d)}`:
//! the bodies of `L_{n,d,m}` for `n ≥ 9` under `εₙ = 1/√n`. Exact for
//! perfect squares (Nagata holds there); a prediction otherwise.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::quadratic::{is_perfect_square, QuadraticNumber};
use crate::exactlin::Rational;

use super::polygon::{Point, Polygon};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPoint {
    pub x: QuadraticNumber,
    pub y: QuadraticNumber,
}

impl QuadPoint {
    fn new(x: QuadraticNumber, y: QuadraticNumber) -> Self {
        Self { x, y }
    }
}

/// JSON shape: `{"n", "conjectural", "vertices": [[{"a","b","n"}, {…}], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NagataStrip {
    pub n: usize,
    pub conjectural: bool,
    #[serde(with = "quad_vertices")]
    pub vertices: Vec<QuadPoint>,
}

mod quad_vertices {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[QuadPoint], s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[&QuadraticNumber; 2]> = v.iter().map(|p| [&p.x, &p.y]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<QuadPoint>, D::Error> {
        let pairs = Vec::<[QuadraticNumber; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[x, y]| QuadPoint::new(x, y)).collect())
    }
}

fn cross(a: &QuadPoint, b: &QuadPoint, c: &QuadPoint) -> QuadraticNumber {
    let l = &(&b.x - &a.x) * &(&c.y - &a.y);
    let r = &(&b.y - &a.y) * &(&c.x - &a.x);
    &l - &r
}

/// Drops repeated and collinear vertices from a counterclockwise cycle.
fn simplify(mut pts: Vec<QuadPoint>) -> Vec<QuadPoint> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let k = pts.len();
        for i in 0..k {
            let (a, b, c) = (&pts[(i + k - 1) % k], &pts[i], &pts[(i + 1) % k]);
            if cross(a, b, c).signum() == Ordering::Equal {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    if pts.len() == 2 && pts[0] == pts[1] {
        pts.pop();
    }
    pts
}

pub fn nagata_strip(n: usize, d: &Rational, m: &Rational) -> Result<NagataStrip> {
    if n < 9 {
        return Err(Error::out_of_range("n (strips need n >= 9)", n));
    }
    if m.is_negative() {
        return Err(Error::out_of_range("m", m));
    }
    let root = QuadraticNumber::sqrt(n as u64)?;
    let height = &root * m;
    let width = &QuadraticNumber::from(d.clone()) - &height;
    if width.signum() == Ordering::Less {
        return Err(Error::PredictedNonBig);
    }
    let zero = QuadraticNumber::from(Rational::zero());
    let vertices = simplify(vec![
        QuadPoint::new(zero.clone(), zero.clone()),
        QuadPoint::new(width.clone(), zero.clone()),
        QuadPoint::new(width, height),
        QuadPoint::new(zero, QuadraticNumber::from(d.clone())),
    ]);
    Ok(NagataStrip {
        n,
        conjectural: !is_perfect_square(n as u64),
        vertices,
    })
}

impl NagataStrip {
    /// The same polygon with rational coordinates, when it has them.
    pub fn to_rational(&self) -> Option<Polygon> {
        let pts: Option<Vec<Point>> = self
            .vertices
            .iter()
            .map(|p| Some(Point::new(p.x.as_rational()?.clone(), p.y.as_rational()?.clone())))
            .collect();
        Some(Polygon::hull(pts?))
    }
}
