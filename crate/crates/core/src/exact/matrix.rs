use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::ring::{ExactDiv, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
}

/// Square matrix with entries from a commutative ring, stored row-major.
#[derive(Clone, PartialEq, Serialize)]
pub struct SquareMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Ring> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let order = rows.len();
        if order == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(MatrixError::NotSquare { row, len: r.len(), order });
            }
            entries.extend(r);
        }
        Ok(SquareMatrix { order, entries })
    }

    pub fn identity(order: usize) -> Self {
        assert!(order > 0);
        let entries = (0..order * order).map(|k| if k / order == k % order { T::one() } else { T::zero() }).collect();
        SquareMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.order + col]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.order).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix { order: self.order, entries: self.entries.iter().map(f).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Determinant by Laplace expansion along the first row. Exponential in
    /// the order, but needs no division.
    pub fn determinant_laplace(&self) -> T {
        let idx: Vec<usize> = (0..self.order).collect();
        laplace(self, 0, &idx)
    }

    /// Sum of the principal `k x k` minors.
    pub fn principal_minor_sum(&self, k: usize) -> T {
        let mut total = T::zero();
        for subset in subsets(self.order, k) {
            let rows = subset.iter().map(|&i| subset.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
            let minor = SquareMatrix::from_rows(rows).expect("square minor");
            total = total + minor.determinant_laplace();
        }
        total
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn laplace<T: Ring>(m: &SquareMatrix<T>, row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = T::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.clone() * laplace(m, row + 1, &rest);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

impl<T: ExactDiv> SquareMatrix<T> {
    /// Fraction-free (Bareiss) elimination. Every division is exact in the
    /// entry ring, so this works unchanged for rationals and for polynomials.
    pub fn determinant(&self) -> T {
        let n = self.order;
        let mut a: Vec<Vec<T>> = self.rows();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign_flip {
            -det
        } else {
            det
        }
    }
}

/// Exact determinant (fraction-free elimination).
pub fn determinant<T: ExactDiv>(m: &SquareMatrix<T>) -> T {
    m.determinant()
}

impl<T: fmt::Debug> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.order)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};

    fn m(rows: &[&[i64]]) -> SquareMatrix<Rational> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&SquareMatrix::<Rational>::identity(5)), rat(1, 1));
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])), rat(-2, 1));
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = m(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        assert_eq!(determinant(&a), a.determinant_laplace());
        assert_eq!(determinant(&a), rat(7, 1));
        let singular = m(&[&[0, 1], &[0, 2]]);
        assert_eq!(determinant(&singular), rat(0, 1));
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = SquareMatrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1)]]);
        assert!(matches!(err, Err(MatrixError::NotSquare { row: 1, .. })));
    }

    #[test]
    fn minor_sums_of_identity() {
        let i3 = SquareMatrix::<Rational>::identity(3);
        assert_eq!(i3.principal_minor_sum(1), rat(3, 1));
        assert_eq!(i3.principal_minor_sum(2), rat(3, 1));
        assert_eq!(i3.principal_minor_sum(3), rat(1, 1));
    }
}
