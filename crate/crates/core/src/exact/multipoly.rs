//! Sparse polynomials in the three Chen parameters `a'`, `b'`, `c'`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ring::{ExactDiv, Ring};
use super::Rational;

pub const NVARS: usize = 3;
const VAR_NAMES: [&str; NVARS] = ["a'", "b'", "c'"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("not divisible")]
    NotDivisible,
}

/// Exponent triple on `(a', b', c')`, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        Monomial(e)
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; NVARS];
        for (slot, (x, y)) in e.iter_mut().zip(self.0.iter().zip(other.0)) {
            *slot = x.checked_sub(y)?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Serialized form of one term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: [u32; NVARS],
    pub coeff: Rational,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::from_terms([(Monomial::default(), c)])
    }

    /// The variable with index `i` (0 = a', 1 = b', 2 = c').
    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        MultiPoly::from_terms([(Monomial(e), Rational::one())])
    }

    /// The three variables `(a', b', c')`.
    pub fn vars() -> [MultiPoly; NVARS] {
        [MultiPoly::var(0), MultiPoly::var(1), MultiPoly::var(2)]
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn from_int_terms(terms: &[([u32; NVARS], i64)]) -> Self {
        MultiPoly::from_terms(terms.iter().map(|(e, c)| (Monomial(*e), Rational::from(*c))))
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        let mut powers: [Vec<Rational>; NVARS] = Default::default();
        for m in self.terms.keys() {
            for i in 0..NVARS {
                let need = m.0[i] as usize;
                while powers[i].len() <= need {
                    let next = match powers[i].last() {
                        Some(last) => last * &point[i],
                        None => Rational::one(),
                    };
                    powers[i].push(next);
                }
            }
        }
        self.terms.iter().map(|(m, c)| (0..NVARS).fold(c.clone(), |acc, i| acc * &powers[i][m.0[i] as usize])).sum()
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c * k)))
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        (0..exp).fold(MultiPoly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Exact quotient `q` with `self == divisor * q`.
    ///
    /// Repeated leading-term division under graded-lex order; an exact
    /// quotient exists iff the remainder reaches zero.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, DivisionError> {
        let (lm, lc) = divisor.leading_term().ok_or(DivisionError::ZeroDivisor)?;
        let (lm, lc_inv) = (*lm, lc.recip().expect("stored coefficients are nonzero"));
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(&lm).ok_or(DivisionError::NotDivisible)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), &-(&qc * dc));
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms().map(|(m, c)| TermRecord { exponents: m.0, coeff: c.clone() }).collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Self {
        MultiPoly::from_terms(records.iter().map(|t| (Monomial(t.exponents), t.coeff.clone())))
    }
}

/// Exact multivariate division; `Err(NotDivisible)` when `g` does not divide `f`.
pub fn mpoly_divide_exact(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, DivisionError> {
    f.divide_exact(g)
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        Ok(MultiPoly::from_records(&records))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(VAR_NAMES[i].to_string()),
                    _ => factors.push(format!("{}^{e}", VAR_NAMES[i])),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
}

impl ExactDiv for MultiPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.divide_exact(divisor).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn xy() -> (MultiPoly, MultiPoly) {
        (MultiPoly::var(0), MultiPoly::var(1))
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = xy();
        let f = &(&x * &x) - &(&y * &y);
        let g = &x - &y;
        assert_eq!(mpoly_divide_exact(&f, &g).unwrap(), &x + &y);
    }

    #[test]
    fn not_divisible() {
        let (x, _) = xy();
        let f = &(&x * &x) + &MultiPoly::constant(rat(1, 1));
        assert_eq!(mpoly_divide_exact(&f, &x), Err(DivisionError::NotDivisible));
        assert_eq!(mpoly_divide_exact(&f, &MultiPoly::zero()), Err(DivisionError::ZeroDivisor));
    }

    #[test]
    fn cancellation_removes_terms() {
        let (x, _) = xy();
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).num_terms(), 0);
    }

    #[test]
    fn eval_and_display() {
        let [a, b, c] = MultiPoly::vars();
        let p = &(&(&a * &a) * &b) - &(&c.scale(&rat(3, 2)) + &MultiPoly::constant(rat(1, 1)));
        assert_eq!(p.to_string(), "a'^2*b' - 3/2*c' - 1");
        assert_eq!(p.eval(&[rat(2, 1), rat(3, 1), rat(4, 1)]), rat(5, 1));
    }

    #[test]
    fn records_are_descending_grlex() {
        let p = MultiPoly::from_int_terms(&[([0, 0, 0], 5), ([0, 1, 0], 2), ([1, 0, 0], -1), ([0, 0, 2], 3)]);
        let exps: Vec<_> = p.to_records().into_iter().map(|r| r.exponents).collect();
        assert_eq!(exps, vec![[0, 0, 2], [1, 0, 0], [0, 1, 0], [0, 0, 0]]);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"[{"exponents":[0,0,2],"coeff":"3"}"#), "{json}");
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
