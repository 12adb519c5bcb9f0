//! Exact Zariski decomposition `D = P + N` on `Xₙ`, `n ≤ 8`.
//!
//! The support of `N` is grown from the candidate curves (the negative
//! generators of the effective cone): every round adds all curves meeting
//! the current positive part negatively and re-solves
//! `Gram_S · x = (D·C_j)_j`, until no candidate is met negatively.
//!
//! On a class outside the pseudo-effective cone the loop breaks down (a
//! singular or indefinite Gram matrix, a negative coefficient, or a
//! positive part that is not nef), and on a pseudo-effective class it
//! cannot. That makes the decomposition its own membership test.
//!
//! The same loop also runs on a germ `D + η·V` with `η` a positive
//! infinitesimal. Scalars then become pairs `v + h·η` compared
//! lexicographically, and the result is the decomposition that holds on
//! `D + s·V` for all sufficiently small `s > 0`. The chamber walk in
//! [`crate::okounkov`] is built on that.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::Sign;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cones::{cone_model, is_nef};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{is_negative_definite, solve_linear_multi, RationalMatrix};
use crate::exactlin::rational::format_rational;
use crate::exactlin::Rational;
use crate::lattice::{intersect, CurveClass, DivisorClass, ScaledClass};

/// `v + h·η`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Germ {
    pub v: Rational,
    pub h: Rational,
}

impl Germ {
    fn sign(&self) -> Ordering {
        match self.v.cmp(&Rational::zero()) {
            Ordering::Equal => self.h.cmp(&Rational::zero()),
            s => s,
        }
    }
}

/// Decomposition of `base + η·dir` for infinitesimal `η > 0`.
#[derive(Clone, Debug)]
pub(crate) struct GermDecomposition {
    pub support: Vec<CurveClass>,
    pub coeffs: Vec<Germ>,
    pub positive: DivisorClass,
    pub positive_slope: DivisorClass,
}

fn gram_of(curves: &[CurveClass]) -> RationalMatrix {
    RationalMatrix::from_fn(curves.len(), curves.len(), |i, j| {
        Rational::from_integer(curves[i].dot(&curves[j]).into())
    })
}

/// `None` when the loop breaks down, i.e. the germ is not pseudo-effective.
pub(crate) fn decompose_germ(
    base: &DivisorClass,
    dir: &DivisorClass,
    candidates: &[CurveClass],
) -> Result<Option<GermDecomposition>> {
    let mut in_support = vec![false; candidates.len()];
    let mut support: Vec<usize> = Vec::new();
    let mut coeffs: Vec<Germ> = Vec::new();
    let mut pos = base.clone();
    let mut slope = dir.clone();

    loop {
        let (pos_s, slope_s) = (ScaledClass::new(&pos), ScaledClass::new(&slope));
        let violators: Vec<usize> = (0..candidates.len())
            .filter(|&i| !in_support[i])
            .filter(|&i| {
                let c = &candidates[i];
                match pos_s.scaled_dot(c).sign() {
                    Sign::Minus => true,
                    Sign::NoSign => slope_s.scaled_dot(c).sign() == Sign::Minus,
                    Sign::Plus => false,
                }
            })
            .collect();
        if violators.is_empty() {
            break;
        }
        for i in violators {
            in_support[i] = true;
            support.push(i);
        }
        support.sort_unstable();
        let curves: Vec<CurveClass> = support.iter().map(|&i| candidates[i].clone()).collect();
        let gram = gram_of(&curves);
        let rhs_v: Vec<Rational> = curves.iter().map(|c| c.dot_divisor(base)).collect();
        let rhs_h: Vec<Rational> = curves.iter().map(|c| c.dot_divisor(dir)).collect();
        let sol = match solve_linear_multi(&gram, &[&rhs_v, &rhs_h]) {
            Ok(sol) => sol,
            Err(Error::SingularSystem) => return Ok(None),
            Err(e) => return Err(e),
        };
        coeffs = sol[0]
            .iter()
            .zip(&sol[1])
            .map(|(v, h)| Germ { v: v.clone(), h: h.clone() })
            .collect();
        pos = base.clone();
        slope = dir.clone();
        for (c, x) in curves.iter().zip(&coeffs) {
            let cd = c.to_divisor();
            pos = pos.add_scaled(&-x.v.clone(), &cd)?;
            slope = slope.add_scaled(&-x.h.clone(), &cd)?;
        }
    }

    let mut kept = Vec::new();
    let mut kept_coeffs = Vec::new();
    for (&i, x) in support.iter().zip(coeffs) {
        match x.sign() {
            Ordering::Greater => {
                kept.push(candidates[i].clone());
                kept_coeffs.push(x);
            }
            // wall-hitting input: the curve carries no weight
            Ordering::Equal => {}
            Ordering::Less => return Ok(None),
        }
    }
    if !kept.is_empty() && !is_negative_definite(&gram_of(&kept))? {
        return Ok(None);
    }
    Ok(Some(GermDecomposition {
        support: kept,
        coeffs: kept_coeffs,
        positive: pos,
        positive_slope: slope,
    }))
}

#[derive(Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    input: DivisorClass,
    positive: DivisorClass,
    negative: Vec<(CurveClass, Rational)>,
    gram: RationalMatrix,
}

impl ZariskiDecomposition {
    pub fn input(&self) -> &DivisorClass {
        &self.input
    }

    pub fn positive(&self) -> &DivisorClass {
        &self.positive
    }

    /// Support curves with their (positive) coefficients, canonically sorted.
    pub fn negative(&self) -> &[(CurveClass, Rational)] {
        &self.negative
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn negative_class(&self) -> Result<DivisorClass> {
        let mut acc = DivisorClass::zero(self.input.n())?;
        for (c, x) in &self.negative {
            acc = acc.add_scaled(x, &c.to_divisor())?;
        }
        Ok(acc)
    }

    /// `vol(D) = P²`.
    pub fn volume(&self) -> Rational {
        self.positive.square()
    }

    pub fn support(&self) -> ChamberSupport {
        ChamberSupport {
            curves: self.negative.iter().map(|(c, _)| c.clone()).collect(),
        }
    }

    /// Re-checks every defining property; used by the randomized suites.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        if self.positive.add(&self.negative_class()?)? != self.input {
            return fail("P + N does not reproduce D".into());
        }
        if !crate::cones::is_nef(&self.positive)? {
            return fail(format!("positive part {} is not nef", self.positive));
        }
        for (c, x) in &self.negative {
            if !x.is_positive() {
                return fail(format!("coefficient {} on {c} is not positive", format_rational(x)));
            }
            if !c.dot_divisor(&self.positive).is_zero() {
                return fail(format!("P·{c} is not zero"));
            }
        }
        if !self.negative.is_empty() && !is_negative_definite(&self.gram)? {
            return fail("support Gram matrix is not negative definite".into());
        }
        Ok(())
    }
}

impl fmt::Debug for ZariskiDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.input, self.positive)?;
        for (c, x) in &self.negative {
            write!(f, " + {}·{}", format_rational(x), c)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct NegativeTermJson {
    curve: DivisorClass,
    #[serde(with = "crate::exactlin::rational::serde_rational")]
    coeff: Rational,
}

#[derive(Serialize)]
struct ZariskiJson {
    input: DivisorClass,
    positive: DivisorClass,
    negative: Vec<NegativeTermJson>,
}

impl ZariskiDecomposition {
    pub fn to_json(&self) -> serde_json::Value {
        let j = ZariskiJson {
            input: self.input.clone(),
            positive: self.positive.clone(),
            negative: self
                .negative
                .iter()
                .map(|(c, x)| NegativeTermJson {
                    curve: c.to_divisor(),
                    coeff: x.clone(),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

/// The set `Neg(D)` of curves in the support of the negative part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChamberSupport {
    pub curves: Vec<CurveClass>,
}

impl ChamberSupport {
    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }
}

/// Decomposes with the candidate curves taken in the given order. The
/// candidates must include every negative curve that can occur.
pub fn zariski_decompose_with(d: &DivisorClass, candidates: &[CurveClass]) -> Result<ZariskiDecomposition> {
    let zero = DivisorClass::zero(d.n())?;
    let germ = match decompose_germ(d, &zero, candidates)? {
        Some(g) if is_nef(&g.positive)? => g,
        _ => return Err(Error::NotPseudoEffective),
    };
    let mut negative: Vec<(CurveClass, Rational)> = germ
        .support
        .into_iter()
        .zip(germ.coeffs.into_iter().map(|g| g.v))
        .collect();
    negative.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let curves: Vec<CurveClass> = negative.iter().map(|(c, _)| c.clone()).collect();
    Ok(ZariskiDecomposition {
        input: d.clone(),
        positive: germ.positive,
        negative,
        gram: gram_of(&curves),
    })
}

pub fn zariski_decompose(d: &DivisorClass) -> Result<ZariskiDecomposition> {
    let cone = cone_model(d.n())?;
    let candidates: Vec<CurveClass> = cone.negative_curves().cloned().collect();
    let z = zariski_decompose_with(d, &candidates)?;
    // flag line never enters a negative part
    debug_assert!(z.negative.iter().all(|(c, _)| c.square() < 0));
    Ok(z)
}

pub fn neg_support(d: &DivisorClass) -> Result<ChamberSupport> {
    Ok(zariski_decompose(d)?.support())
}

/// `Null(P)`: generators orthogonal to the nef class `P`.
pub fn null_set(p: &DivisorClass) -> Result<Vec<CurveClass>> {
    let cone = cone_model(p.n())?;
    if !crate::cones::is_nef(p)? {
        return Err(Error::NotNef);
    }
    Ok(cone
        .generators()
        .iter()
        .filter(|g| g.dot_divisor(p).is_zero())
        .cloned()
        .collect())
}

/// Convenience for tests and reports: `(D − N)·C` for every support curve.
pub fn support_products(z: &ZariskiDecomposition) -> Result<Vec<Rational>> {
    z.negative
        .iter()
        .map(|(c, _)| intersect(&z.positive, &c.to_divisor()))
        .collect()
}
