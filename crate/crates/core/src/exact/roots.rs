//! Real-root isolation by Sturm sequences and bisection.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::rational::lcm_denominators;
use super::{Rational, UniPoly};

/// Reporting width for isolating intervals.
pub fn default_refinement_width() -> Rational {
    Rational::new(1, 1_000_000_000_000i64)
}

/// One real root: an isolating interval `(lower, upper]` with rational
/// endpoints, plus the exact value when the root is rational.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealRoot {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: Option<Rational>,
    pub midpoint: f64,
}

impl RealRoot {
    fn exact(r: Rational) -> Self {
        RealRoot { midpoint: r.to_f64(), lower: r.clone(), upper: r.clone(), exact: Some(r) }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }
}

/// Sturm sequence `p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)`.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut count = 0;
        let mut last = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.eval(x).signum()))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.leading_coeff().signum();
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if positive || !odd {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`, for a squarefree chain head.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Cauchy bound: every root satisfies `|x| < 1 + max |a_i / a_n|`.
fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.leading_coeff();
    let n = p.degree().unwrap_or(0);
    let max = p.coeffs()[..n].iter().map(|c| (c / &lc).abs()).max().unwrap_or_else(Rational::zero);
    max + Rational::one()
}

/// Number of distinct real roots according to the Sturm chain of the
/// squarefree part.
pub fn sturm_count(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    SturmChain::new(&p.squarefree_part()).count_all()
}

/// Isolates every distinct real root of `p`, in increasing order.
///
/// Rational roots come back exactly. A rational root `r/s` of the
/// primitive integer form of `p` has `s | lc`, so once an interval is
/// narrower than `1 / lc^2` the simplest rational inside it is the only
/// candidate with a small enough denominator; testing it exactly decides
/// rationality.
pub fn real_roots(p: &UniPoly) -> Vec<RealRoot> {
    real_roots_with_width(p, &default_refinement_width())
}

pub fn real_roots_with_width(p: &UniPoly, width: &Rational) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.squarefree_part();
    let chain = SturmChain::new(&sf);
    let bound = cauchy_bound(&sf);

    let denom_lcm = lcm_denominators(sf.coeffs());
    let lc_int: BigInt = (sf.leading_coeff() * Rational::from_integer(denom_lcm)).numer().abs();
    let rational_width = Rational::new(BigInt::one(), &lc_int * &lc_int * 2);

    let mut out = Vec::new();
    let mut pending = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = pending.pop() {
        let count = chain.count_in(&lo, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine(&sf, &chain, lo, hi, width, &rational_width));
            continue;
        }
        let mid = midpoint(&lo, &hi);
        if sf.eval(&mid).is_zero() {
            out.push(RealRoot::exact(mid.clone()));
        }
        pending.push((lo, mid.clone()));
        pending.push((mid, hi));
    }
    // an exact root found at a split point is found again as an interval endpoint
    let mut unique: Vec<RealRoot> = Vec::with_capacity(out.len());
    for r in out {
        if r.exact.is_none() || !unique.iter().any(|u| u.exact == r.exact) {
            unique.push(r);
        }
    }
    unique.sort_by(|a, b| a.lower.cmp(&b.lower));
    unique
}

fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) / Rational::from(2)
}

fn refine(
    sf: &UniPoly,
    chain: &SturmChain,
    mut lo: Rational,
    mut hi: Rational,
    width: &Rational,
    rational_width: &Rational,
) -> RealRoot {
    if sf.eval(&hi).is_zero() {
        return RealRoot::exact(hi);
    }
    let mut tried_rational = false;
    loop {
        let w = &hi - &lo;
        if !tried_rational && &w <= rational_width {
            tried_rational = true;
            let candidate = Rational::simplest_between(&lo, &hi);
            if candidate > lo && sf.eval(&candidate).is_zero() {
                return RealRoot::exact(candidate);
            }
        }
        if tried_rational && &w <= width {
            let mid = midpoint(&lo, &hi);
            return RealRoot { midpoint: mid.to_f64(), lower: lo, upper: hi, exact: None };
        }
        let mid = midpoint(&lo, &hi);
        if sf.eval(&mid).is_zero() {
            return RealRoot::exact(mid);
        }
        if chain.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}
