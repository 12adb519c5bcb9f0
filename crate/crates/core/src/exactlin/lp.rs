//! Exact two-phase simplex over the rationals, Bland's rule throughout.
//!
//! Sized for cone problems: at most ten equality rows and a few hundred
//! columns, so a dense tableau is fine.

use num_traits::{Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// `maximize c·x  subject to  A·x = b, x ≥ 0`, with `A` given column-wise.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub columns: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    /// `y` with `y·A_j ≥ 0` for every column and `y·b < 0`.
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

struct Tableau {
    // rows × (cols + 1); last column is the right-hand side
    t: Vec<Vec<Rational>>,
    // z_j − c_j for each column, last entry is the objective value
    z: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, pv) in line.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.z[col].is_zero() {
            let f = self.z[col].clone();
            for (v, pv) in self.z.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations over the columns in `allowed`. Returns false
    /// when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            // Bland: lowest-index improving column
            let Some(col) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(usize, Rational)> = None;
            for (r, line) in self.t.iter().enumerate() {
                if !line[col].is_positive() {
                    continue;
                }
                let ratio = &line[rhs] / &line[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let rhs = self.cols;
        let mut z = vec![Rational::zero(); rhs + 1];
        for (j, zj) in z.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for (r, line) in self.t.iter().enumerate() {
                let cb = &costs[self.basis[r]];
                if !cb.is_zero() && !line[j].is_zero() {
                    acc += cb * &line[j];
                }
            }
            if j < rhs {
                acc -= &costs[j];
            }
            *zj = acc;
        }
        self.z = z;
    }
}

impl StandardLp {
    pub fn solve(&self) -> Result<LpOutcome> {
        let m = self.rhs.len();
        let k = self.columns.len();
        if self.objective.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: self.objective.len(),
            });
        }
        if let Some(bad) = self.columns.iter().find(|c| c.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        // original columns 0..k, artificials k..k+m
        let cols = k + m;
        let signs: Vec<bool> = self.rhs.iter().map(|b| b.is_negative()).collect();
        let t: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                let mut line = Vec::with_capacity(cols + 1);
                for col in &self.columns {
                    line.push(if signs[i] { -col[i].clone() } else { col[i].clone() });
                }
                for a in 0..m {
                    line.push(if a == i { Rational::from_integer(1.into()) } else { Rational::zero() });
                }
                line.push(if signs[i] { -self.rhs[i].clone() } else { self.rhs[i].clone() });
                line
            })
            .collect();
        let mut tab = Tableau {
            t,
            z: Vec::new(),
            basis: (k..k + m).collect(),
            cols,
        };

        // phase 1: maximize −Σ artificials
        let mut phase1 = vec![Rational::zero(); cols];
        for c in phase1.iter_mut().skip(k) {
            *c = -Rational::from_integer(1.into());
        }
        tab.set_objective(&phase1);
        let bounded = tab.optimize(cols);
        debug_assert!(bounded, "phase 1 is bounded by construction");
        let w = tab.z[cols].clone();
        if w.is_negative() {
            // y_i = (z_{k+i} − c_{k+i}) + c_{k+i} with c = −1
            let farkas = (0..m)
                .map(|i| {
                    let y = &tab.z[k + i] - Rational::from_integer(1.into());
                    if signs[i] {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            return Ok(LpOutcome::Infeasible { farkas });
        }

        // drive leftover zero-level artificials out of the basis
        let mut r = 0;
        while r < tab.t.len() {
            if tab.basis[r] >= k {
                match (0..k).find(|&j| !tab.t[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        // redundant equality
                        tab.t.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }

        let mut phase2 = self.objective.clone();
        phase2.extend(std::iter::repeat_n(Rational::zero(), m));
        tab.set_objective(&phase2);
        if !tab.optimize(k) {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![Rational::zero(); k];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < k {
                x[b] = tab.t[r][cols].clone();
            }
        }
        let value = tab.z[cols].clone();
        Ok(LpOutcome::Optimal { x, value })
    }
}

fn check_dims(x: &[Rational], generators: &[Vec<Rational>]) -> Result<()> {
    if let Some(g) = generators.iter().find(|g| g.len() != x.len()) {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: g.len(),
        });
    }
    Ok(())
}

/// Outcome of a cone membership query, with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum ConeMembership {
    /// Nonnegative weights, one per generator, reproducing the point.
    Member { weights: Vec<Rational> },
    /// A linear functional nonnegative on every generator and negative on the point.
    Separated { functional: Vec<Rational> },
}

impl ConeMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeMembership::Member { .. })
    }
}

pub fn cone_membership(x: &[Rational], generators: &[Vec<Rational>]) -> Result<ConeMembership> {
    check_dims(x, generators)?;
    let lp = StandardLp {
        columns: generators.to_vec(),
        rhs: x.to_vec(),
        objective: vec![Rational::zero(); generators.len()],
    };
    match lp.solve()? {
        LpOutcome::Optimal { x, .. } => Ok(ConeMembership::Member { weights: x }),
        LpOutcome::Infeasible { farkas } => Ok(ConeMembership::Separated { functional: farkas }),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// True iff `x` is a nonnegative combination of `generators`.
pub fn cone_member(x: &[Rational], generators: &[Vec<Rational>]) -> Result<bool> {
    Ok(cone_membership(x, generators)?.is_member())
}

/// `sup { t ≥ 0 : start − t·direction ∈ cone(generators) }`.
pub fn cone_exit_threshold(
    start: &[Rational],
    direction: &[Rational],
    generators: &[Vec<Rational>],
) -> Result<Rational> {
    check_dims(start, generators)?;
    check_dims(start, std::slice::from_ref(&direction.to_vec()))?;
    // Σ λ_g g + t·direction = start
    let mut columns = generators.to_vec();
    columns.push(direction.to_vec());
    let mut objective = vec![Rational::zero(); generators.len()];
    objective.push(Rational::from_integer(1.into()));
    let lp = StandardLp {
        columns,
        rhs: start.to_vec(),
        objective,
    };
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Unbounded => Err(Error::UnboundedThreshold),
        LpOutcome::Infeasible { .. } => Err(Error::StartNotInCone),
    }
}
