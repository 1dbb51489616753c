//! Sylvester matrices and resultants.

use thiserror::Error;

use super::matrix::SquareMatrix;
use super::ring::Ring;
use super::{Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultantError {
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least 1 (got constant)")]
    ConstantPolynomial,
}

/// Sylvester matrix from coefficient lists (lowest degree first), taking
/// the list lengths as the formal degrees.
///
/// Layout: `deg q` rows of `p`'s coefficients, highest degree first and
/// shifted one column per row, followed by `deg p` rows of `q`'s.
pub fn sylvester_from_coeffs<T: Ring>(p: &[T], q: &[T]) -> SquareMatrix<T> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(p, n), (q, m)] {
        for shift in 0..shifts {
            let mut row = vec![T::zero(); size];
            for (k, c) in coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    SquareMatrix::from_rows(rows).expect("Sylvester matrix is square")
}

fn check_degree(p: &UniPoly) -> Result<usize, ResultantError> {
    match p.degree() {
        None => Err(ResultantError::ZeroPolynomial),
        Some(0) => Err(ResultantError::ConstantPolynomial),
        Some(d) => Ok(d),
    }
}

/// Sylvester matrix of two nonzero polynomials of degree at least one.
pub fn sylvester_matrix(p: &UniPoly, q: &UniPoly) -> Result<SquareMatrix<Rational>, ResultantError> {
    check_degree(p)?;
    check_degree(q)?;
    Ok(sylvester_from_coeffs(p.coeffs(), q.coeffs()))
}

/// `Res(p, q)` as the determinant of the Sylvester matrix.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational, ResultantError> {
    Ok(sylvester_matrix(p, q)?.determinant())
}

/// `Res(p, q)` through the subresultant pseudo-remainder sequence.
///
/// Shares no code with the Sylvester route beyond polynomial arithmetic, so
/// the two serve as cross-checks of each other.
pub fn resultant_prs(p: &UniPoly, q: &UniPoly) -> Result<Rational, ResultantError> {
    check_degree(p)?;
    check_degree(q)?;
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = Rational::one();
    let deg = |x: &UniPoly| x.degree().expect("nonzero");
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
    }
    let mut g = Rational::one();
    let mut h = Rational::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(Rational::zero());
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.scale(&divisor.recip().expect("nonzero"));
        g = a.leading_coeff();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 { h } else { &g.pow(delta) / &h.pow(delta - 1) };
        let da = deg(&a);
        if deg(&b) == 0 {
            let lb = b.leading_coeff();
            let hh = if da == 0 { h } else { &lb.pow(da as u32) / &h.pow(da as u32 - 1) };
            return Ok(sign * hh);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn two_by_two() {
        let m = sylvester_matrix(&UniPoly::from_ints(&[-1, 1]), &UniPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(m.rows(), vec![vec![rat(1, 1), rat(-1, 1)], vec![rat(1, 1), rat(1, 1)]]);
    }

    #[test]
    fn shared_root_gives_zero() {
        let p = UniPoly::from_ints(&[0, 0, 0, 1]);
        let q = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), rat(0, 1));
        assert_eq!(resultant_prs(&p, &q).unwrap(), rat(0, 1));
    }

    #[test]
    fn product_of_root_differences() {
        // prod (alpha_i - beta_j) over roots {1,2,3} x {4,5}
        let p = UniPoly::from_roots(&[rat(1, 1), rat(2, 1), rat(3, 1)]);
        let q = UniPoly::from_roots(&[rat(4, 1), rat(5, 1)]);
        assert_eq!(resultant(&p, &q).unwrap(), rat(144, 1));
        assert_eq!(resultant_prs(&p, &q).unwrap(), rat(144, 1));
        // Res(q, p) = (-1)^(2*3) Res(p, q)
        assert_eq!(resultant_prs(&q, &p).unwrap(), rat(144, 1));
    }

    #[test]
    fn odd_degree_swap_sign() {
        let p = UniPoly::from_roots(&[rat(0, 1)]);
        let q = UniPoly::from_roots(&[rat(2, 1), rat(3, 1), rat(5, 1)]);
        let pq = resultant(&p, &q).unwrap();
        let qp = resultant(&q, &p).unwrap();
        assert_eq!(pq, -qp.clone());
        assert_eq!(resultant_prs(&p, &q).unwrap(), pq);
        assert_eq!(resultant_prs(&q, &p).unwrap(), qp);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let p = UniPoly::from_ints(&[1, 1]);
        assert_eq!(resultant(&p, &UniPoly::zero()), Err(ResultantError::ZeroPolynomial));
        assert_eq!(resultant(&UniPoly::from_ints(&[3]), &p), Err(ResultantError::ConstantPolynomial));
    }
}
