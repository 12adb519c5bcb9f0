//! Numbers `a + b·√n` with rational `a`, `b` and a square-free radicand.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, serde_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// Exact element of ℚ(√n). The radicand is kept square-free; a perfect
/// square radicand collapses the value to a pure rational (`n = 1`, `b = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadraticJson")]
pub struct QuadraticNumber {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    n: u64,
}

/// Wire form; deserialization normalizes through [`QuadraticNumber::new`].
#[derive(Deserialize)]
struct QuadraticJson {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    n: u64,
}

impl TryFrom<QuadraticJson> for QuadraticNumber {
    type Error = Error;

    fn try_from(j: QuadraticJson) -> Result<Self> {
        QuadraticNumber::new(j.a, j.b, j.n)
    }
}

/// Splits `n = s²·f` with `f` square-free.
pub fn square_free_split(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = n;
    let mut p = 2u64;
    while p <= f / p {
        while f.is_multiple_of(p * p) {
            f /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, f)
}

pub fn is_perfect_square(n: u64) -> bool {
    square_free_split(n).1 == 1
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::out_of_range("radicand", n));
        }
        let (s, f) = square_free_split(n);
        let b = b * int(s as i64);
        Ok(if f == 1 {
            Self::rational(a + b)
        } else if b.is_zero() {
            Self::rational(a)
        } else {
            Self { a, b, n: f }
        })
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            n: 1,
        }
    }

    /// `√n` itself.
    pub fn sqrt(n: u64) -> Result<Self> {
        Self::new(Rational::zero(), int(1), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.n
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            n: self.n,
        }
    }

    /// `a² − n·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.n as i64)
    }

    /// Exact sign, decided by comparing `a²` with `n·b²`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: whichever term has the larger square wins
        let a2 = &self.a * &self.a;
        let nb2 = &self.b * &self.b * int(self.n as i64);
        match a2.cmp(&nb2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * (self.n as f64).sqrt()
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.n,
            (_, true) => self.n,
            _ => {
                assert_eq!(self.n, other.n, "mixing different quadratic fields");
                self.n
            }
        }
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let n = self.common_radicand(rhs);
        let b = &self.b + &rhs.b;
        if b.is_zero() {
            QuadraticNumber::rational(&self.a + &rhs.a)
        } else {
            QuadraticNumber { a: &self.a + &rhs.a, b, n }
        }
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self + &(-rhs)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            n: self.n,
        }
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let n = self.common_radicand(rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * int(n as i64);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        if b.is_zero() {
            QuadraticNumber::rational(a)
        } else {
            QuadraticNumber { a, b, n }
        }
    }
}

impl Mul<&Rational> for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &Rational) -> QuadraticNumber {
        if rhs.is_zero() {
            return QuadraticNumber::rational(Rational::zero());
        }
        QuadraticNumber {
            a: &self.a * rhs,
            b: &self.b * rhs,
            n: self.n,
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let (sign, mag) = if self.b.is_negative() {
            ("-", -self.b.clone())
        } else {
            ("+", self.b.clone())
        };
        let coeff = if mag == int(1) {
            String::new()
        } else {
            format!("{}*", format_rational(&mag))
        };
        if self.a.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.n)
        } else {
            write!(f, "{} {sign} {coeff}sqrt({})", format_rational(&self.a), self.n)
        }
    }
}
