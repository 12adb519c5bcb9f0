use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::rational::format_rational;
use crate::exactlin::Rational;

/// Continuous piecewise-linear function given by its values at strictly
/// increasing breakpoints. Collinear interior breakpoints are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinearFn {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl PiecewiseLinearFn {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvariantViolation("piecewise-linear function without points".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvariantViolation(format!(
                "breakpoints not increasing at {}",
                format_rational(&w[1].0)
            )));
        }
        let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while kept.len() >= 2 {
                let (a, b) = (&kept[kept.len() - 2], &kept[kept.len() - 1]);
                let s1 = (&b.1 - &a.1) / (&b.0 - &a.0);
                let s2 = (&p.1 - &b.1) / (&p.0 - &b.0);
                if s1 == s2 {
                    kept.pop();
                } else {
                    break;
                }
            }
            kept.push(p);
        }
        let (breakpoints, values) = kept.into_iter().unzip();
        Ok(Self { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.breakpoints[0], self.breakpoints.last().expect("nonempty"))
    }

    /// Breakpoints strictly inside the domain.
    pub fn interior_breakpoints(&self) -> &[Rational] {
        let k = self.breakpoints.len();
        if k <= 2 {
            &[]
        } else {
            &self.breakpoints[1..k - 1]
        }
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, v)| (&v[1] - &v[0]) / (&t[1] - &t[0]))
            .collect()
    }

    pub fn is_concave(&self) -> bool {
        self.slopes().windows(2).all(|s| s[0] >= s[1])
    }

    /// Value at `t`; `None` outside the domain.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let (lo, hi) = self.domain();
        if t < lo || t > hi {
            return None;
        }
        let i = self.breakpoints.partition_point(|b| b <= t);
        if i == self.breakpoints.len() {
            return self.values.last().cloned();
        }
        let (t0, t1) = (&self.breakpoints[i - 1], &self.breakpoints[i]);
        let (v0, v1) = (&self.values[i - 1], &self.values[i]);
        let w = (t - t0) / (t1 - t0);
        Some(v0 + w * (v1 - v0))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}
