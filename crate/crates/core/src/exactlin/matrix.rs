use std::fmt;

use num_traits::{Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::from_integer(1.into());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Leading `k × k` block.
    pub fn leading_minor(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)].clone())
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::from_integer(1.into());
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for c in col..n {
                    let delta = &f * &a[(col, c)];
                    a[(r, c)] -= delta;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Solves `gram · x = rhs` exactly. Fails on singular systems.
pub fn solve_linear(gram: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    let mut sols = solve_linear_multi(gram, &[rhs])?;
    Ok(sols.pop().expect("one right-hand side"))
}

/// Solves against several right-hand sides sharing one elimination.
pub fn solve_linear_multi(gram: &RationalMatrix, rhss: &[&[Rational]]) -> Result<Vec<Vec<Rational>>> {
    let n = gram.rows;
    if !gram.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: gram.cols,
        });
    }
    for rhs in rhss {
        if rhs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.len(),
            });
        }
    }
    let k = rhss.len();
    // augmented [gram | rhs_1 .. rhs_k]
    let mut a = RationalMatrix::from_fn(n, n + k, |i, j| {
        if j < n {
            gram[(i, j)].clone()
        } else {
            rhss[j - n][i].clone()
        }
    });
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[(r, col)].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap_rows(piv, col);
        let p = a[(col, col)].clone();
        for c in col..n + k {
            a[(col, c)] /= &p;
        }
        for r in 0..n {
            if r == col || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for c in col..n + k {
                let delta = &f * &a[(col, c)];
                a[(r, c)] -= delta;
            }
        }
    }
    Ok((0..k)
        .map(|s| (0..n).map(|i| a[(i, n + s)].clone()).collect())
        .collect())
}

/// Sylvester-style test: `(−1)^k · det(minor_k) > 0` for every leading minor.
pub fn is_negative_definite(gram: &RationalMatrix) -> Result<bool> {
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    for k in 1..=gram.rows {
        let det = gram.leading_minor(k).determinant()?;
        let signed = if k % 2 == 1 { -det } else { det };
        if !signed.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{int, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_linear(&m(&[&[-1]]), &[int(-2)]).unwrap(), vec![int(2)]);
        let v = vec![ratio(1, 3), int(-4), int(7)];
        assert_eq!(solve_linear(&RationalMatrix::identity(3), &v).unwrap(), v);
        let g = m(&[&[-1, 1], &[1, -2]]);
        let x = solve_linear(&g, &[int(1), int(0)]).unwrap();
        assert_eq!(x, vec![int(-2), int(-1)]);
        assert_eq!(g.mul_vec(&x).unwrap(), vec![int(1), int(0)]);
    }

    #[test]
    fn singular_system_is_reported() {
        let g = m(&[&[-1, 1], &[1, -1]]);
        assert_eq!(solve_linear(&g, &[int(1), int(0)]), Err(Error::SingularSystem));
    }

    #[test]
    fn negative_definite_examples() {
        assert!(is_negative_definite(&m(&[&[-1]])).unwrap());
        assert!(!is_negative_definite(&m(&[&[-1, 1], &[1, -1]])).unwrap());
        // Gram of {e0-e1-e2, e1, e2}; second leading minor (-1)(-1) - 1 = 0
        let g = m(&[&[-1, 1, 1], &[1, -1, 0], &[1, 0, -1]]);
        assert_eq!(g.leading_minor(2).determinant().unwrap(), int(0));
        assert!(!is_negative_definite(&g).unwrap());
        assert!(is_negative_definite(&m(&[&[-2, 1], &[1, -2]])).unwrap());
        assert_eq!(is_negative_definite(&m(&[&[-1, 1], &[0, -1]])), Err(Error::NotSymmetric));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n)
    }

    proptest! {
        #[test]
        fn solution_substitutes_back(rows in small_matrix(4), rhs in proptest::collection::vec(-9i64..9, 4)) {
            let g = RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap();
            let rhs: Vec<Rational> = rhs.into_iter().map(int).collect();
            match solve_linear(&g, &rhs) {
                Ok(x) => prop_assert_eq!(g.mul_vec(&x).unwrap(), rhs),
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularSystem);
                    prop_assert!(g.determinant().unwrap().is_zero());
                }
            }
        }

        // necessary condition: a negative definite form is negative on every nonzero vector
        #[test]
        fn negative_definite_has_no_nonnegative_vector(
            rows in small_matrix(3),
            probes in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 40),
        ) {
            // symmetrize
            let g = RationalMatrix::from_fn(3, 3, |i, j| int(rows[i][j] + rows[j][i]));
            if is_negative_definite(&g).unwrap() {
                for p in probes.iter().filter(|p| p.iter().any(|&v| v != 0)) {
                    let x: Vec<Rational> = p.iter().map(|&v| int(v)).collect();
                    let gx = g.mul_vec(&x).unwrap();
                    let q: Rational = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
                    prop_assert!(q.is_negative());
                }
            }
        }
    }
}
