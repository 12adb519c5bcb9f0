//! Positivity on `Xₙ`, `n ≤ 8`: the effective cone through its finitely
//! many extremal classes, and the nef/big/ample predicates built on it.
//! `n = 9` is refused everywhere except [`seshadri`].

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::lp::{cone_exit_threshold, cone_membership, ConeMembership};
use crate::exactlin::rational::{int, ratio};
use crate::exactlin::Rational;
use crate::lattice::{CurveClass, DivisorClass, ScaledClass};
use crate::weyl::exceptional_classes;
use crate::zariski::zariski_decompose;

#[derive(Clone, Debug)]
pub struct ConeModel {
    n: usize,
    generators: Vec<CurveClass>,
    coords: Vec<Vec<Rational>>,
}

impl ConeModel {
    fn build(n: usize) -> Result<Self> {
        let generators = match n {
            0 => vec![CurveClass::new(1, vec![])?],
            1 => vec![CurveClass::basis(1, 1)?, CurveClass::new(1, vec![1])?],
            2..=8 => exceptional_classes(n)?.to_vec(),
            9 => return Err(Error::ConeNotFinitelyGenerated { n }),
            _ => return Err(Error::out_of_range("n", n)),
        };
        let coords = generators.iter().map(|g| g.to_divisor().coords()).collect();
        Ok(Self { n, generators, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Extremal rays of the effective cone.
    pub fn generators(&self) -> &[CurveClass] {
        &self.generators
    }

    /// The generators of negative self-intersection: the only curves that
    /// can appear in a negative part.
    pub fn negative_curves(&self) -> impl Iterator<Item = &CurveClass> {
        self.generators.iter().filter(|g| g.square() < 0)
    }

    pub(crate) fn generator_coords(&self) -> &[Vec<Rational>] {
        &self.coords
    }
}

/// Cached cone for `0 ≤ n ≤ 8`.
pub fn cone_model(n: usize) -> Result<&'static ConeModel> {
    static CACHE: [OnceLock<ConeModel>; 9] = [const { OnceLock::new() }; 9];
    if n > 8 {
        return Err(if n == 9 {
            Error::ConeNotFinitelyGenerated { n }
        } else {
            Error::out_of_range("n", n)
        });
    }
    if let Some(c) = CACHE[n].get() {
        return Ok(c);
    }
    let model = ConeModel::build(n)?;
    Ok(CACHE[n].get_or_init(|| model))
}

#[derive(Clone, Debug, PartialEq)]
pub enum PsefCertificate {
    /// `D = Σ weightᵢ·Cᵢ` with nonnegative weights.
    Combination(Vec<(CurveClass, Rational)>),
    /// A nef class with negative intersection against `D`.
    Separator(DivisorClass),
}

pub fn pseudoeffective_certificate(d: &DivisorClass) -> Result<PsefCertificate> {
    let cone = cone_model(d.n())?;
    match cone_membership(&d.coords(), cone.generator_coords())? {
        ConeMembership::Member { weights } => Ok(PsefCertificate::Combination(
            cone.generators
                .iter()
                .cloned()
                .zip(weights)
                .filter(|(_, w)| !w.is_zero())
                .collect(),
        )),
        ConeMembership::Separated { functional } => {
            // y·coords(g) = N·g for N = (y₀; −y₁, …, −yₙ)
            let (y0, ys) = functional.split_first().expect("nonempty functional");
            let sep = DivisorClass::new(y0.clone(), ys.iter().map(|y| -y.clone()).collect())?;
            Ok(PsefCertificate::Separator(sep))
        }
    }
}

/// Decided by attempting the Zariski decomposition, which is much cheaper
/// than the cone LP; [`pseudoeffective_certificate`] gives the same answer.
pub fn is_pseudoeffective(d: &DivisorClass) -> Result<bool> {
    match zariski_decompose(d) {
        Ok(_) => Ok(true),
        Err(Error::NotPseudoEffective) => Ok(false),
        Err(e) => Err(e),
    }
}

/// First generator meeting `d` negatively, if any.
pub fn nef_violation(d: &DivisorClass) -> Result<Option<CurveClass>> {
    let cone = cone_model(d.n())?;
    let scaled = ScaledClass::new(d);
    Ok(cone
        .generators
        .iter()
        .find(|g| scaled.scaled_dot(g).is_negative())
        .cloned())
}

pub fn is_nef(d: &DivisorClass) -> Result<bool> {
    Ok(nef_violation(d)?.is_none())
}

/// Big iff pseudo-effective with positive volume `P²`.
pub fn is_big(d: &DivisorClass) -> Result<bool> {
    match zariski_decompose(d) {
        Ok(z) => Ok(z.positive().square().is_positive()),
        Err(Error::NotPseudoEffective) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AmpleFailure {
    NonPositiveSquare(Rational),
    Orthogonal(CurveClass, Rational),
}

/// Nakai–Moishezon on the generators: `D² > 0` and `D·g > 0` for all `g`.
pub fn ample_failure(d: &DivisorClass) -> Result<Option<AmpleFailure>> {
    let cone = cone_model(d.n())?;
    let sq = d.square();
    if !sq.is_positive() {
        return Ok(Some(AmpleFailure::NonPositiveSquare(sq)));
    }
    Ok(cone.generators.iter().find_map(|g| {
        let v = g.dot_divisor(d);
        (!v.is_positive()).then(|| AmpleFailure::Orthogonal(g.clone(), v))
    }))
}

pub fn is_ample(d: &DivisorClass) -> Result<bool> {
    Ok(ample_failure(d)?.is_none())
}

/// Multi-point Seshadri constant `εₙ` of a line, `1 ≤ n ≤ 9`.
pub fn seshadri(n: usize) -> Result<Rational> {
    match n {
        1..=8 => {
            let cone = cone_model(n)?;
            cone.generators
                .iter()
                .filter_map(|g| {
                    let total: i64 = g.multiplicities().iter().sum();
                    (total > 0).then(|| ratio(g.degree(), total))
                })
                .min()
                .ok_or_else(|| Error::InvariantViolation("no generator bounds the nef threshold".into()))
        }
        // Nagata holds for n = 9
        9 => Ok(ratio(1, 3)),
        _ => Err(Error::out_of_range("n (Seshadri constants need 1..=9)", n)),
    }
}

/// `μ(D; flag) = sup { s : D − s·flag big }` for the line flag `e₀`.
pub fn mu_threshold(d: &DivisorClass, flag: &DivisorClass) -> Result<Rational> {
    if *flag != DivisorClass::basis(d.n(), 0)? {
        return Err(Error::Unsupported("the flag curve must be the line class e0".into()));
    }
    if !is_big(d)? {
        return Err(Error::NotBig);
    }
    let cone = cone_model(d.n())?;
    let mu = cone_exit_threshold(&d.coords(), &flag.coords(), cone.generator_coords())?;
    // the pseudo-effective and big thresholds agree; spot-check just inside
    let inside = d.add_scaled(&-(&mu * ratio(63, 64)), flag)?;
    if !zariski_decompose(&inside)?.positive().square().is_positive() {
        return Err(Error::InvariantViolation(format!(
            "class not big just below the threshold {mu}"
        )));
    }
    Ok(mu)
}

/// `e₀ − ε·Σ eᵢ`.
pub fn line_minus(n: usize, epsilon: &Rational) -> Result<DivisorClass> {
    DivisorClass::symmetric(n, int(1), epsilon.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::ratio;

    fn e0(n: usize) -> DivisorClass {
        DivisorClass::basis(n, 0).unwrap()
    }

    #[test]
    fn generator_sets() {
        assert_eq!(cone_model(0).unwrap().generators().len(), 1);
        assert_eq!(cone_model(1).unwrap().generators().len(), 2);
        assert_eq!(cone_model(1).unwrap().negative_curves().count(), 1);
        for n in 2..=8 {
            assert!(cone_model(n).unwrap().generators().iter().all(|g| g.square() < 0));
        }
        assert_eq!(cone_model(9).unwrap_err(), Error::ConeNotFinitelyGenerated { n: 9 });
    }

    #[test]
    fn pseudoeffective_examples() {
        for n in 0..=8 {
            assert!(is_pseudoeffective(&e0(n)).unwrap());
            assert!(!is_pseudoeffective(&e0(n).scale(&int(-1))).unwrap());
        }
        let d = DivisorClass::symmetric(2, ratio(2, 3), ratio(1, 3)).unwrap();
        assert!(is_pseudoeffective(&d).unwrap());
        assert!(is_pseudoeffective(&e0(9)).is_err());
    }

    #[test]
    fn separator_certifies_non_membership() {
        let d = DivisorClass::symmetric(5, int(1), int(1)).unwrap();
        match pseudoeffective_certificate(&d).unwrap() {
            PsefCertificate::Separator(nef) => {
                assert!(is_nef(&nef).unwrap());
                assert!(crate::lattice::intersect(&nef, &d).unwrap().is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nef_examples() {
        assert!(is_nef(&e0(3)).unwrap());
        assert!(!is_nef(&DivisorClass::basis(3, 1).unwrap()).unwrap());
        assert!(is_nef(&line_minus(5, &ratio(2, 5)).unwrap()).unwrap());
        assert!(!is_nef(&line_minus(5, &ratio(401, 1000)).unwrap()).unwrap());
        assert!(is_nef(&e0(9)).is_err());
    }

    #[test]
    fn big_and_ample_examples() {
        assert!(is_big(&e0(3)).unwrap());
        assert!(!is_ample(&e0(3)).unwrap());
        assert!(is_big(&line_minus(4, &ratio(1, 3)).unwrap()).unwrap());
        assert!(!is_big(&line_minus(4, &ratio(1, 2)).unwrap()).unwrap());
        assert!(is_ample(&line_minus(4, &ratio(1, 3)).unwrap()).unwrap());
        assert!(is_ample(&e0(0)).unwrap());
    }

    #[test]
    fn seshadri_table() {
        let expected = [
            ratio(1, 1),
            ratio(1, 2),
            ratio(1, 2),
            ratio(1, 2),
            ratio(2, 5),
            ratio(2, 5),
            ratio(3, 8),
            ratio(6, 17),
            ratio(1, 3),
        ];
        for (n, e) in (1..=9).zip(expected) {
            assert_eq!(seshadri(n).unwrap(), e, "n = {n}");
        }
        assert!(seshadri(0).is_err());
        assert!(seshadri(10).is_err());
    }

    #[test]
    fn seshadri_is_the_nef_threshold() {
        for n in 1..=8 {
            let eps = seshadri(n).unwrap();
            assert!(is_nef(&line_minus(n, &eps).unwrap()).unwrap());
            for bump in [ratio(1, 1000), ratio(1, 10)] {
                assert!(!is_nef(&line_minus(n, &(&eps + bump)).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_threshold(&e0(0), &e0(0)).unwrap(), int(1));
        let d = line_minus(2, &ratio(1, 3)).unwrap();
        assert_eq!(mu_threshold(&d, &e0(2)).unwrap(), ratio(2, 3));
        let d = line_minus(8, &ratio(1, 3)).unwrap();
        assert_eq!(mu_threshold(&d, &e0(8)).unwrap(), ratio(1, 17));
        let flat = line_minus(4, &ratio(1, 2)).unwrap();
        assert_eq!(mu_threshold(&flat, &e0(4)), Err(Error::NotBig));
    }

    #[test]
    fn delta_consistency() {
        for n in 1..=8 {
            let eps = seshadri(n).unwrap();
            let mu = mu_threshold(&line_minus(n, &ratio(1, 3)).unwrap(), &e0(n)).unwrap();
            assert_eq!(mu, int(1) - int(n as i64) * eps / int(3), "n = {n}");
        }
    }
}
