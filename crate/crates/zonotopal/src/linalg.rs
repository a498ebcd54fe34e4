//! Exact dense linear algebra over arbitrary-precision rationals.
//!
//! Everything in this crate reduces to the four operations here: determinant,
//! rank, linear solve, and nullspace extraction. All of them run plain
//! Gaussian elimination with exact rational arithmetic, so there are no
//! tolerances anywhere. Pivoting is deterministic (first non-zero entry in
//! column order), which makes every downstream output reproducible.

use num::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar type of the whole crate: an arbitrary-precision rational in
/// canonical form (reduced, positive denominator, zero is `0/1`).
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the fraction `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"p/q"` or `"p"` into a canonical rational. A zero denominator is
/// a parse error, not a panic.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: num::BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {text:?}")))?;
    let den: num::BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_to_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        let ncols = columns.len();
        let nrows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let mut m = Matrix::zeros(nrows, ncols);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    /// Reduces in place to reduced row-echelon form and returns the pivot
    /// columns. Pivots are chosen as the first non-zero entry scanning
    /// columns left to right, so the result is canonical.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(src) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if src != row {
                for j in 0..self.cols {
                    self.data
                        .swap(row * self.cols + j, src * self.cols + j);
                }
            }
            let inv = self.get(row, col).recip();
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i != row && !self.get(i, col).is_zero() {
                    let factor = self.get(i, col).clone();
                    for j in col..self.cols {
                        let v = self.get(i, j) - &factor * self.get(row, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Exact determinant by elimination with row swaps.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Ok(Rational::zero());
            };
            if src != col {
                for j in 0..n {
                    a.data.swap(col * n + j, src * n + j);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det *= &pivot;
            for i in col + 1..n {
                if !a.get(i, col).is_zero() {
                    let factor = a.get(i, col) / &pivot;
                    for j in col..n {
                        let v = a.get(i, j) - &factor * a.get(col, j);
                        a.set(i, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {} entries",
                self.rows,
                rhs.len()
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularMatrix);
        }
        Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
    }

    /// Canonical basis of the right nullspace: reduced echelon form with
    /// lowest-index pivots, one basis vector per free column in index order
    /// (entry 1 at the free column, minus the echelon coefficients at the
    /// pivot columns).
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in pivot_set.iter().enumerate() {
                v[p] = -a.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinant_of_identity() {
        assert_eq!(Matrix::identity(2).determinant().unwrap(), rat(1));
    }

    #[test]
    fn determinant_of_unit_and_diagonal_columns() {
        // columns (0,1) and (1,1)
        let a = m(&[&[0, 1], &[1, 1]]);
        assert_eq!(a.determinant().unwrap(), rat(-1));
    }

    #[test]
    fn determinant_with_repeated_column_is_zero() {
        let a = m(&[&[2, 2, 5], &[3, 3, 7], &[1, 1, 9]]);
        assert_eq!(a.determinant().unwrap(), rat(0));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(a.determinant(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn rank_examples() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let rhs = vec![rat(3), rat(-5)];
        assert_eq!(Matrix::identity(2).solve(&rhs).unwrap(), rhs);
    }

    #[test]
    fn solve_triangular_columns() {
        // columns (1,0) and (1,1); rhs (1,1) -> coefficients (0,1)
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.solve(&[rat(1), rat(1)]).unwrap(), vec![rat(0), rat(1)]);
    }

    #[test]
    fn solve_zero_rhs_gives_zero() {
        let a = Matrix::identity(2);
        assert_eq!(a.solve(&[rat(0), rat(0)]).unwrap(), vec![rat(0), rat(0)]);
    }

    #[test]
    fn solve_singular_errors() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.solve(&[rat(1), rat(2)]), Err(Error::SingularMatrix));
    }

    #[test]
    fn nullspace_of_full_rank_square_is_empty() {
        assert!(m(&[&[1, 2], &[3, 4]]).nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_of_single_row() {
        let basis = m(&[&[1, 1]]).nullspace_basis();
        assert_eq!(basis, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn nullspace_orthogonal_to_flat_rows() {
        // rows e3 and (1,2,3): the normal of their common hyperplane
        let a = m(&[&[0, 0, 1], &[1, 2, 3]]);
        let basis = a.nullspace_basis();
        assert_eq!(basis.len(), 1);
        let eta = &basis[0];
        assert_eq!(dot(eta, &[rat(0), rat(0), rat(1)]), rat(0));
        assert_eq!(dot(eta, &[rat(1), rat(2), rat(3)]), rat(0));
        assert!(eta.iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn parse_and_render_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_to_string(&frac(1, 2)), "1/2");
        assert_eq!(rational_to_string(&rat(-7)), "-7");
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-6i64..=6, rows * cols).prop_map(move |vals| Matrix {
            rows,
            cols,
            data: vals.into_iter().map(rat).collect(),
        })
    }

    proptest! {
        #[test]
        fn solve_round_trips(a in small_matrix(3, 3), rhs in proptest::collection::vec(-6i64..=6, 3)) {
            let rhs: Vec<Rational> = rhs.into_iter().map(rat).collect();
            if let Ok(x) = a.solve(&rhs) {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), rhs);
            }
        }

        #[test]
        fn rank_plus_nullity_is_cols(a in small_matrix(3, 4)) {
            prop_assert_eq!(a.rank() + a.nullspace_basis().len(), a.cols());
        }

        #[test]
        fn determinant_alternates_under_column_swap(a in small_matrix(3, 3)) {
            let mut swapped = a.clone();
            for i in 0..3 {
                let x = swapped.get(i, 0).clone();
                let y = swapped.get(i, 1).clone();
                swapped.set(i, 0, y);
                swapped.set(i, 1, x);
            }
            prop_assert_eq!(a.determinant().unwrap(), -swapped.determinant().unwrap());
        }

        #[test]
        fn nullspace_vectors_are_in_kernel(a in small_matrix(3, 5)) {
            for v in a.nullspace_basis() {
                prop_assert!(a.mul_vec(&v).unwrap().iter().all(Rational::is_zero));
            }
        }
    }
}
