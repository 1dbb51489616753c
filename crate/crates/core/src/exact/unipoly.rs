//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::Rational;

/// Dense polynomial, coefficients lowest degree first. The zero polynomial
/// is the empty coefficient list; otherwise the last coefficient is nonzero.
#[derive(Clone, Serialize)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    #[serde(skip)]
    var: String,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    /// Builds from coefficients (lowest degree first), trimming trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs, var: "b".into() };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly::new(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear_root(root: &Rational) -> Self {
        UniPoly::new(vec![-root, Rational::one()])
    }

    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(UniPoly::constant(Rational::one()), |acc, r| acc * UniPoly::linear_root(r))
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Floating-point evaluation, for reporting only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn scale(&self, k: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect()).with_var(self.var.clone())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff().recip() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from(i)).collect())
            .with_var(self.var.clone())
    }

    /// Euclidean division over the rationals: `self = q * d + r`, `deg r < deg d`.
    ///
    /// Panics if `d` is the zero polynomial.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.leading_coeff().recip().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (dd..n).rev() {
            let coef = &rem[i] * &lc_inv;
            if coef.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] -= &(&coef * dc);
            }
            quot[i - dd] = coef;
        }
        rem.truncate(dd);
        (UniPoly::new(quot).with_var(self.var.clone()), UniPoly::new(rem).with_var(self.var.clone()))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`,
    /// computed without leaving the coefficient ring of the inputs.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("pseudo-division by the zero polynomial");
        let Some(n) = self.degree() else {
            return UniPoly::zero();
        };
        if n < dd {
            return self.clone();
        }
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut steps = n - dd + 1;
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let lead = rem[top].clone();
            for r in rem.iter_mut() {
                *r *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[top - dd + j] -= &(&lead * dc);
            }
            rem.pop();
            while rem.last().is_some_and(Rational::is_zero) {
                rem.pop();
            }
            steps -= 1;
        }
        let fix = lc.pow(steps as u32);
        UniPoly::new(rem.into_iter().map(|c| c * &fix).collect()).with_var(self.var.clone())
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is the zero polynomial.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic().with_var(self.var.clone())
    }

    /// `p / gcd(p, p')`, made monic. The zero polynomial maps to itself.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

/// Monic gcd over the rationals.
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    p.gcd(q)
}

/// Horner evaluation of `p` at `x`.
pub fn poly_eval(p: &UniPoly, x: &Rational) -> Rational {
    p.eval(x)
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect()).with_var(self.var.clone())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect()).with_var(self.var.clone())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero().with_var(self.var.clone());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out).with_var(self.var.clone())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect()).with_var(self.var.clone())
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}
