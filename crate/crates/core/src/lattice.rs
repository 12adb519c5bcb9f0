//! Picard lattice of the blow-up of the plane in `n ≤ 9` points.
//!
//! A class is stored as `(d; m₁,…,mₙ)` and stands for `d·e₀ − Σ mᵢ·eᵢ`.
//! The intersection form is `e₀² = 1`, `eᵢ² = −1`, all mixed products zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::rational::{format_rational, int, parse_rational, serde_rational, serde_rational_vec};
use crate::exactlin::Rational;

pub const MAX_POINTS: usize = 9;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DivisorClassJson", into = "DivisorClassJson")]
pub struct DivisorClass {
    d: Rational,
    m: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct DivisorClassJson {
    n: usize,
    #[serde(with = "serde_rational")]
    d: Rational,
    #[serde(with = "serde_rational_vec")]
    m: Vec<Rational>,
}

impl TryFrom<DivisorClassJson> for DivisorClass {
    type Error = Error;
    fn try_from(j: DivisorClassJson) -> Result<Self> {
        if j.m.len() != j.n {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                found: j.m.len(),
            });
        }
        DivisorClass::new(j.d, j.m)
    }
}

impl From<DivisorClass> for DivisorClassJson {
    fn from(c: DivisorClass) -> Self {
        DivisorClassJson {
            n: c.n(),
            d: c.d,
            m: c.m,
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        return Err(Error::out_of_range("n", n));
    }
    Ok(())
}

impl DivisorClass {
    pub fn new(d: Rational, m: Vec<Rational>) -> Result<Self> {
        check_n(m.len())?;
        Ok(Self { d, m })
    }

    pub fn from_ints(d: i64, m: &[i64]) -> Result<Self> {
        Self::new(int(d), m.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(Rational::zero(), vec![Rational::zero(); n])
    }

    /// Basis class `e_i`; `e_0` is the pulled-back line.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        let mut c = Self::zero(n)?;
        match i {
            0 => c.d = int(1),
            i if i <= n => c.m[i - 1] = int(-1),
            _ => return Err(Error::out_of_range("basis index", i)),
        }
        Ok(c)
    }

    /// `d·e₀ − m·Σ eᵢ`.
    pub fn symmetric(n: usize, d: Rational, m: Rational) -> Result<Self> {
        Self::new(d, vec![m; n])
    }

    /// Parses the shorthand `"d,m1,m2,..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        let d = parse_rational(parts[0])?;
        let m = parts[1..]
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>>>()?;
        if m.len() > MAX_POINTS {
            return Err(Error::parse(s, format!("at most {MAX_POINTS} multiplicities")));
        }
        Self::new(d, m)
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn degree(&self) -> &Rational {
        &self.d
    }

    pub fn multiplicities(&self) -> &[Rational] {
        &self.m
    }

    /// Coordinates `[d, m₁, …, mₙ]`, as used by the cone LPs.
    pub fn coords(&self) -> Vec<Rational> {
        std::iter::once(self.d.clone()).chain(self.m.iter().cloned()).collect()
    }

    pub fn from_coords(coords: &[Rational]) -> Result<Self> {
        let (d, m) = coords
            .split_first()
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        Self::new(d.clone(), m.to_vec())
    }

    pub fn is_integral(&self) -> bool {
        self.d.is_integer() && self.m.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.m.iter().all(Zero::is_zero)
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self {
            d: &self.d + &other.d,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self {
            d: &self.d - &other.d,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            d: &self.d * s,
            m: self.m.iter().map(|x| x * s).collect(),
        }
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: &Rational, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self {
            d: &self.d + s * &other.d,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + s * b).collect(),
        })
    }

    /// Self-intersection.
    pub fn square(&self) -> Rational {
        intersect_unchecked(self, self)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(format_rational).collect();
        if m.is_empty() {
            write!(f, "({})", format_rational(&self.d))
        } else {
            write!(f, "({}; {})", format_rational(&self.d), m.join(","))
        }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn intersect_unchecked(a: &DivisorClass, b: &DivisorClass) -> Rational {
    let mut acc = &a.d * &b.d;
    for (x, y) in a.m.iter().zip(&b.m) {
        acc -= x * y;
    }
    acc
}

pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<Rational> {
    a.same_n(b)?;
    Ok(intersect_unchecked(a, b))
}

/// `k = −3e₀ + e₁ + ⋯ + eₙ`, i.e. `(−3; −1,…,−1)`.
pub fn canonical_class(n: usize) -> Result<DivisorClass> {
    check_n(n)?;
    DivisorClass::from_ints(-3, &vec![-1; n])
}

/// Integral class, cheap to hash and compare. Same `(d; m)` convention.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    d: i64,
    m: Vec<i64>,
}

impl CurveClass {
    pub fn new(d: i64, m: Vec<i64>) -> Result<Self> {
        check_n(m.len())?;
        Ok(Self { d, m })
    }

    pub fn from_divisor(c: &DivisorClass) -> Result<Self> {
        if !c.is_integral() {
            return Err(Error::NotIntegral);
        }
        let conv = |r: &Rational| -> Result<i64> {
            r.to_integer().to_i64().ok_or_else(|| Error::out_of_range("coefficient", r))
        };
        Self::new(conv(&c.d)?, c.m.iter().map(conv).collect::<Result<_>>()?)
    }

    pub fn basis(n: usize, i: usize) -> Result<Self> {
        Self::from_divisor(&DivisorClass::basis(n, i)?)
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.m
    }

    pub(crate) fn multiplicities_mut(&mut self) -> &mut Vec<i64> {
        &mut self.m
    }

    pub(crate) fn set_degree(&mut self, d: i64) {
        self.d = d;
    }

    pub fn to_divisor(&self) -> DivisorClass {
        DivisorClass {
            d: int(self.d),
            m: self.m.iter().map(|&x| int(x)).collect(),
        }
    }

    pub fn square(&self) -> i64 {
        self.d * self.d - self.m.iter().map(|x| x * x).sum::<i64>()
    }

    pub fn dot(&self, other: &CurveClass) -> i64 {
        self.d * other.d - self.m.iter().zip(&other.m).map(|(a, b)| a * b).sum::<i64>()
    }

    /// `C·k = −3d + Σ mᵢ`.
    pub fn canonical_degree(&self) -> i64 {
        -3 * self.d + self.m.iter().sum::<i64>()
    }

    /// Intersection with a rational class of the same `n` (unchecked).
    pub(crate) fn dot_divisor(&self, c: &DivisorClass) -> Rational {
        let mut acc = &c.d * BigInt::from(self.d);
        for (x, &y) in c.m.iter().zip(&self.m) {
            if y != 0 {
                acc -= x * BigInt::from(y);
            }
        }
        acc
    }

    pub fn is_exceptional_numerically(&self) -> bool {
        self.square() == -1 && self.canonical_degree() == -1
    }

    /// Ordering used for every returned list: by degree, then
    /// lexicographically on the multiplicities.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.d, &self.m).cmp(&(other.d, &other.m))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.d, m.join(","))
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rational class over a common denominator, for repeated intersection
/// with integral classes in the hot loops.
pub(crate) struct ScaledClass {
    den: BigInt,
    // (d, m₁, …, mₙ) times `den`; `small` when every entry fits in an i64
    num: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl ScaledClass {
    pub fn new(c: &DivisorClass) -> Self {
        let den = std::iter::once(&c.d)
            .chain(&c.m)
            .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let num: Vec<BigInt> = std::iter::once(&c.d)
            .chain(&c.m)
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        let small = num.iter().map(|x| x.to_i64()).collect();
        Self { den, num, small }
    }

    /// `den · (g·c)`, which has the sign of `g·c`.
    pub fn scaled_dot(&self, g: &CurveClass) -> BigInt {
        if let Some(v) = &self.small {
            let fast = v[1..].iter().zip(&g.m).try_fold(v[0] as i128 * g.d as i128, |acc, (&x, &y)| {
                acc.checked_sub(x as i128 * y as i128)
            });
            if let Some(acc) = fast {
                return BigInt::from(acc);
            }
        }
        let mut acc = &self.num[0] * g.d;
        for (x, &y) in self.num[1..].iter().zip(&g.m) {
            acc -= x * y;
        }
        acc
    }

    pub fn dot(&self, g: &CurveClass) -> Rational {
        Rational::new(self.scaled_dot(g), self.den.clone())
    }
}

/// Arithmetic genus predicted by adjunction, `(C² + C·k)/2 + 1`.
pub fn expected_genus(c: &CurveClass) -> Rational {
    let twice = c.square() + c.canonical_degree();
    Rational::new(BigInt::from(twice), BigInt::from(2)) + int(1)
}
