//! Seeded random inputs for the randomized checks. The same seed always
//! yields the same sequence, on every platform.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::cone_model;
use crate::error::{Error, Result};
use crate::exactlin::rational::{int, ratio};
use crate::exactlin::Rational;
use crate::lattice::{canonical_class, CurveClass, DivisorClass};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream `i` of `seed`, for checks run in parallel.
    pub fn stream(seed: u64, i: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        Self { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, k: usize) -> usize {
        self.rng.gen_range(0..k)
    }

    /// `p/q` with `1 ≤ q ≤ max_den` and `lo ≤ p/q ≤ hi`.
    pub fn rational(&mut self, lo: i64, hi: i64, max_den: i64) -> Rational {
        let q = self.rng.gen_range(1..=max_den);
        let p = self.rng.gen_range(lo * q..=hi * q);
        ratio(p, q)
    }

    /// A point of the open interval `(lo, hi)`, with a small denominator when possible.
    pub fn rational_between(&mut self, lo: &Rational, hi: &Rational, max_den: i64) -> Rational {
        let q = int(self.rng.gen_range(2..=max_den));
        let w = ratio(self.rng.gen_range(1..=999), 1000);
        let t = lo + (hi - lo) * &w;
        // snap to a coarser grid when that stays strictly inside
        let snapped = (&t * &q).round() / &q;
        if &snapped > lo && &snapped < hi { snapped } else { t }
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        v.shuffle(&mut self.rng);
    }

    /// Sparse nonnegative combination of effective-cone generators, never zero.
    pub fn psef_class(&mut self, n: usize) -> Result<DivisorClass> {
        let gens = cone_model(n)?.generators();
        let k = self.rng.gen_range(1..=gens.len().min(4));
        let mut acc = DivisorClass::zero(n)?;
        for _ in 0..k {
            let g = &gens[self.below(gens.len())];
            let w = self.rational(0, 3, 7);
            acc = acc.add_scaled(&w, &g.to_divisor())?;
        }
        if acc.is_zero() {
            acc = gens[self.below(gens.len())].to_divisor();
        }
        if self.rng.gen_bool(0.3) {
            // a nef summand so that some inputs are big
            let a = self.rational(0, 1, 5);
            acc = acc.add_scaled(&a, &anticanonical_or_line(n)?)?;
        }
        Ok(acc)
    }

    /// `a·(−K) + Σ λ·C` with `a > 0`: ample plus effective, hence big.
    pub fn big_class(&mut self, n: usize) -> Result<DivisorClass> {
        let a = &self.rational(0, 2, 6) + ratio(1, 12);
        let mut acc = anticanonical_or_line(n)?.scale(&a);
        let gens = cone_model(n)?.generators();
        let k = self.rng.gen_range(0..=gens.len().min(3));
        for _ in 0..k {
            let g = &gens[self.below(gens.len())];
            let w = self.rational(0, 2, 5);
            acc = acc.add_scaled(&w, &g.to_divisor())?;
        }
        Ok(acc)
    }

    /// `0 < ε ≤ ε′ < τ`, where `e₀ − τ·Σ eᵢ` leaves the effective cone.
    pub fn epsilon_pair(&mut self, n: usize) -> Result<(Rational, Rational)> {
        let tau = line_threshold(n)?;
        let a = self.rational_between(&Rational::zero(), &tau, 40);
        let b = self.rational_between(&Rational::zero(), &tau, 40);
        Ok(if a <= b { (a, b) } else { (b, a) })
    }

    /// Integral class with entries in `[-bound, bound]`.
    pub fn integral_class(&mut self, n: usize, bound: i64) -> Result<CurveClass> {
        let d = self.rng.gen_range(-bound..=bound);
        let m = (0..n).map(|_| self.rng.gen_range(-bound..=bound)).collect();
        CurveClass::new(d, m)
    }

    pub fn rational_class(&mut self, n: usize, bound: i64, max_den: i64) -> Result<DivisorClass> {
        let d = self.rational(-bound, bound, max_den);
        let m = (0..n).map(|_| self.rational(-bound, bound, max_den)).collect();
        DivisorClass::new(d, m)
    }
}

/// `−K` for `1 ≤ n ≤ 8` and `e₀` on the plane; ample in every case.
fn anticanonical_or_line(n: usize) -> Result<DivisorClass> {
    if n == 0 {
        DivisorClass::basis(0, 0)
    } else {
        Ok(canonical_class(n)?.scale(&int(-1)))
    }
}

/// Supremum of `ε` with `e₀ − ε·Σ eᵢ` pseudo-effective; `1` for `n = 0`.
///
/// Symmetric classes in the (permutation-invariant) effective cone are the
/// symmetrizations of its elements, so the threshold is the largest
/// `(Σ mᵢ)/(n·d)` over generators of positive degree.
pub fn line_threshold(n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(int(1));
    }
    cone_model(n)?
        .generators()
        .iter()
        .filter(|g| g.degree() > 0)
        .map(|g| ratio(g.multiplicities().iter().sum(), g.degree() * n as i64))
        .max()
        .ok_or_else(|| Error::InvariantViolation("no generator of positive degree".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{is_big, is_pseudoeffective};
    use num_traits::Signed;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..5 {
            assert_eq!(a.rational(-3, 3, 9), b.rational(-3, 3, 9));
        }
        let mut s1 = Sampler::stream(7, 1);
        let mut s2 = Sampler::stream(7, 1);
        assert_eq!(s1.psef_class(5).unwrap(), s2.psef_class(5).unwrap());
    }

    #[test]
    fn thresholds_for_lines() {
        assert_eq!(line_threshold(1).unwrap(), int(1));
        assert_eq!(line_threshold(2).unwrap(), int(1));
        // (3; 2,1,…,1) averaged over the seven points
        assert_eq!(line_threshold(7).unwrap(), ratio(8, 21));
        // the LP along the ray agrees
        for n in 1..=8 {
            let gens = cone_model(n).unwrap().generator_coords();
            let e0 = DivisorClass::basis(n, 0).unwrap();
            let dir = DivisorClass::symmetric(n, int(0), int(-1)).unwrap();
            let lp = crate::exactlin::lp::cone_exit_threshold(&e0.coords(), &dir.coords(), gens).unwrap();
            assert_eq!(line_threshold(n).unwrap(), lp, "n = {n}");
        }
    }

    #[test]
    fn samples_have_their_advertised_positivity() {
        let mut s = Sampler::new(3);
        for n in 0..=8 {
            for _ in 0..5 {
                assert!(is_pseudoeffective(&s.psef_class(n).unwrap()).unwrap());
                assert!(is_big(&s.big_class(n).unwrap()).unwrap());
                let (e, f) = s.epsilon_pair(n).unwrap();
                assert!(e.is_positive() && e <= f);
                assert!(is_big(&DivisorClass::symmetric(n, int(1), f).unwrap()).unwrap());
            }
        }
    }
}
