//! Spectral matching between a Chen system and a hypothetical Lorenz system.
//!
//! If a Lorenz system `(a, b, c)` were smoothly equivalent to a Chen system
//! `(a', b', c')` with three equilibria each, the Jacobians at corresponding
//! equilibria would be similar, so their characteristic polynomials would
//! agree. Matching the origin polynomials gives
//!
//! ```text
//! a + b + 1 = u,   a + ab - ac + b = v,   -ab(c - 1) = w
//! ```
//!
//! with `u, v, w` read off the Chen origin polynomial, and matching the
//! first-order coefficients at the wing points gives `ab + bc = k = b'c'`.
//! Eliminating `a` and `c` leaves a cubic and a quadratic in `b`; they must
//! share a root, so their resultant `M0` must vanish. `M0 != 0` is therefore a
//! certificate of non-equivalence.

use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::exact::{
    real_roots_with_width, resultant, sylvester_from_coeffs, Monomial, MultiPoly, Rational, RealRoot, Ring, UniPoly,
};
use crate::systems::{charpoly_at, ChenParams, EquilibriumLabel, LorenzParams, ParamSystem};

/// The Chen parameters of the published non-equivalence certificate.
pub fn certificate_point() -> ChenParams {
    ChenParams::new(45, 5, 28)
}

/// Coefficients of the Chen characteristic polynomials that a Lorenz system
/// would have to reproduce.
///
/// `(u, v, w)` are the coefficients of the origin polynomial
/// `λ³ + uλ² + vλ + w`; `k` is the first-order coefficient at the wing points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantTriple {
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub k: Rational,
}

impl InvariantTriple {
    pub fn new(u: Rational, v: Rational, w: Rational, k: Rational) -> Self {
        InvariantTriple { u, v, w, k }
    }

    /// Invariants a Lorenz system itself produces; used to build inputs with
    /// a known answer.
    pub fn from_lorenz(p: &LorenzParams) -> Self {
        let origin = p.origin_charpoly();
        let wing = p.wing_charpoly_closed_form();
        InvariantTriple { u: origin.c2, v: origin.c1, w: origin.c0, k: wing.c1 }
    }
}

pub fn invariants_from_chen(p: &ChenParams) -> InvariantTriple {
    let (a, b, c) = (&p.a, &p.b, &p.c);
    let two = Rational::from(2);
    let t = InvariantTriple {
        u: a + b - c,
        v: a * a + a * b - &two * a * c - b * c,
        w: -(a * b * (&two * c - a)),
        k: b * c,
    };
    let origin = p.origin_charpoly();
    debug_assert_eq!((&t.u, &t.v, &t.w), (&origin.c2, &origin.c1, &origin.c0));
    t
}

/// The cubic `b³ - ub² + vb - w` and the quadratic
/// `(u-1)b² + (u+v-u²-k)b + (u-1)k`, both in the unknown Lorenz `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingSystem {
    #[serde(serialize_with = "display_string")]
    pub cubic: UniPoly,
    /// Trimmed to its true degree; it drops below 2 exactly when `u = 1`.
    #[serde(serialize_with = "display_string")]
    pub quadratic: UniPoly,
}

fn display_string<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Coefficient lists (lowest degree first) of the matching pair, over any
/// ring. The quadratic keeps its formal degree 2.
fn matching_coeffs<T: Ring>(u: &T, v: &T, w: &T, k: &T) -> ([T; 4], [T; 3]) {
    let one = T::one();
    let um1 = u.clone() - one.clone();
    let cubic = [-w.clone(), v.clone(), -u.clone(), one];
    let quad = [um1.clone() * k.clone(), u.clone() + v.clone() - u.clone() * u.clone() - k.clone(), um1];
    (cubic, quad)
}

pub fn matching_system(t: &InvariantTriple) -> MatchingSystem {
    let (cubic, quad) = matching_coeffs(&t.u, &t.v, &t.w, &t.k);
    MatchingSystem { cubic: UniPoly::new(cubic.to_vec()), quadratic: UniPoly::new(quad.to_vec()) }
}

/// Conditions under which the obstruction is not the plain 5×5 determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DegenerateFlag {
    /// `u = 1`: the quadratic lost its leading term; the resultant is taken
    /// of the trimmed pair.
    #[serde(rename = "degenerate-degree")]
    DegenerateDegree,
    /// `u = 1` and `v = k`: the quadratic is identically zero, so every root
    /// of the cubic is a common root.
    #[serde(rename = "quadratic-vanishes-identically")]
    QuadraticVanishes,
    /// A common root is irrational; candidate parameters are intervals.
    #[serde(rename = "irrational-common-root")]
    IrrationalCommonRoot,
}

/// `M0` with the degeneracies met while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub m0: Rational,
    pub flags: Vec<DegenerateFlag>,
}

/// `M0` and degeneracy flags for explicit invariants.
pub fn obstruction_from_invariants(t: &InvariantTriple) -> Obstruction {
    let (cubic, quad) = matching_coeffs(&t.u, &t.v, &t.w, &t.k);
    if !quad[2].is_zero() {
        let m0 = sylvester_from_coeffs(&cubic, &quad).determinant();
        return Obstruction { m0, flags: Vec::new() };
    }
    let cubic = UniPoly::new(cubic.to_vec());
    let trimmed = UniPoly::new(quad.to_vec());
    let mut flags = vec![DegenerateFlag::DegenerateDegree];
    let m0 = match trimmed.degree() {
        None => {
            flags.push(DegenerateFlag::QuadraticVanishes);
            Rational::zero()
        }
        // Res(p, c) = c^deg(p) for a nonzero constant c
        Some(0) => trimmed.leading_coeff().pow(3),
        Some(_) => resultant(&cubic, &trimmed).expect("both factors have positive degree"),
    };
    Obstruction { m0, flags }
}

pub fn obstruction(p: &ChenParams) -> Obstruction {
    obstruction_from_invariants(&invariants_from_chen(p))
}

/// The resultant obstruction `M0(a', b', c')`, exactly.
pub fn obstruction_m0(p: &ChenParams) -> Rational {
    obstruction(p).m0
}

/// `M0` as a polynomial in `(a', b', c')`: the same Sylvester determinant
/// with `u, v, w, k` substituted symbolically. Computed once per process.
pub fn symbolic_m0() -> &'static MultiPoly {
    static CELL: OnceLock<MultiPoly> = OnceLock::new();
    CELL.get_or_init(|| {
        let [a, b, c] = MultiPoly::vars();
        let two = MultiPoly::constant(Rational::from(2));
        let u = &(&a + &b) - &c;
        let v = &(&(&(&a * &a) + &(&a * &b)) - &(&(&two * &a) * &c)) - &(&b * &c);
        let w = -&(&(&a * &b) * &(&(&two * &c) - &a));
        let k = &b * &c;
        let (cubic, quad) = matching_coeffs(&u, &v, &w, &k);
        sylvester_from_coeffs(&cubic, &quad).determinant()
    })
}

/// The printed transcription of the quintic factor, with its
/// unprimed `a^4` read as `a'^4`. Kept only to be compared against the
/// computed quotient.
pub fn printed_quintic() -> MultiPoly {
    MultiPoly::from_int_terms(&[
        ([3, 0, 0], 1),
        ([4, 0, 0], -1),
        ([5, 0, 0], 1),
        ([2, 1, 0], 1),
        ([3, 1, 0], -1),
        ([1, 2, 0], 1),
        ([2, 2, 0], -2),
        ([1, 3, 0], -2),
        ([2, 3, 0], 1),
        ([1, 4, 0], 1),
        ([2, 0, 1], -2),
        ([3, 0, 1], 3),
        ([4, 0, 1], -4),
        ([1, 1, 1], -3),
        ([2, 1, 1], 4),
        ([3, 1, 1], -5),
        ([0, 2, 1], -1),
        ([1, 2, 1], 5),
        ([2, 2, 1], -2),
        ([0, 3, 1], 2),
        ([1, 3, 1], -2),
        ([0, 4, 1], -1),
        ([2, 0, 2], -2),
        ([3, 0, 2], 4),
        ([1, 1, 2], -3),
        ([2, 1, 2], 6),
        ([0, 2, 2], -1),
        ([1, 2, 2], 4),
        ([0, 3, 2], 1),
    ])
}

/// The linear factors `b'`, `a' - 2c'` (twice) and `1 + c'`.
pub fn surface_factors() -> Vec<(String, MultiPoly, u32)> {
    let [a, b, c] = MultiPoly::vars();
    let one = MultiPoly::constant(Rational::one());
    let two = MultiPoly::constant(Rational::from(2));
    vec![("b'".to_string(), b, 1), ("a' - 2c'".to_string(), &a - &(&two * &c), 2), ("1 + c'".to_string(), &one + &c, 1)]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeeledFactor {
    pub name: String,
    pub factor: MultiPoly,
    pub multiplicity: u32,
    /// How many of the `multiplicity` divisions were exact.
    pub divided_times: u32,
    pub divided_exactly: bool,
}

/// One monomial where the printed quintic and the computed quotient differ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermDiff {
    pub exponents: [u32; 3],
    pub computed: Rational,
    pub printed: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub symbolic_m0: MultiPoly,
    pub symbolic_m0_text: String,
    pub peeled_factors: Vec<PeeledFactor>,
    pub quotient: MultiPoly,
    pub quotient_text: String,
    pub quotient_at_certificate: Rational,
    pub m0_at_certificate: Rational,
    pub printed_quintic: MultiPoly,
    pub printed_quintic_at_certificate: Rational,
    pub printed_quintic_match: bool,
    pub discrepancy: Vec<TermDiff>,
}

impl FactorizationReport {
    /// `quotient * Π factor^divided_times == symbolic_m0`.
    pub fn reconstructs(&self) -> bool {
        let product =
            self.peeled_factors.iter().fold(self.quotient.clone(), |acc, f| &acc * &f.factor.pow(f.divided_times));
        product == self.symbolic_m0
    }

    pub fn all_divided_exactly(&self) -> bool {
        self.peeled_factors.iter().all(|f| f.divided_exactly)
    }
}

/// Peels the linear surface factors off the symbolic `M0` by exact
/// division and compares what remains with the printed quintic.
pub fn verify_factorization() -> FactorizationReport {
    let m0 = symbolic_m0().clone();
    let mut rest = m0.clone();
    let mut peeled = Vec::new();
    for (name, factor, multiplicity) in surface_factors() {
        let mut divided_times = 0;
        for _ in 0..multiplicity {
            match rest.divide_exact(&factor) {
                Ok(q) => {
                    rest = q;
                    divided_times += 1;
                }
                Err(_) => break,
            }
        }
        peeled.push(PeeledFactor {
            name,
            factor,
            multiplicity,
            divided_times,
            divided_exactly: divided_times == multiplicity,
        });
    }

    let printed = printed_quintic();
    let mut monomials: Vec<Monomial> = rest.terms().map(|(m, _)| *m).chain(printed.terms().map(|(m, _)| *m)).collect();
    monomials.sort_by(|x, y| y.cmp(x));
    monomials.dedup();
    let discrepancy: Vec<TermDiff> = monomials
        .into_iter()
        .filter_map(|m| {
            let (computed, printed) = (rest.coeff(&m), printed.coeff(&m));
            (computed != printed).then_some(TermDiff { exponents: m.0, computed, printed })
        })
        .collect();

    let point = certificate_point();
    let at = [point.a.clone(), point.b.clone(), point.c.clone()];
    FactorizationReport {
        symbolic_m0_text: m0.to_string(),
        m0_at_certificate: m0.eval(&at),
        symbolic_m0: m0,
        peeled_factors: peeled,
        quotient_text: rest.to_string(),
        quotient_at_certificate: rest.eval(&at),
        quotient: rest,
        printed_quintic_at_certificate: printed.eval(&at),
        printed_quintic: printed,
        printed_quintic_match: discrepancy.is_empty(),
        discrepancy,
    }
}

/// The quintic factor of `M0` as computed (not as printed).
pub fn computed_quintic() -> &'static MultiPoly {
    static CELL: OnceLock<MultiPoly> = OnceLock::new();
    CELL.get_or_init(|| verify_factorization().quotient)
}

/// A recovered Lorenz parameter: exact, or known only to lie in an interval.
#[derive(Debug, Clone, PartialEq)]
pub enum CandidateValue {
    Exact(Rational),
    Interval { lower: Rational, upper: Rational },
}

impl CandidateValue {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            CandidateValue::Exact(r) => Some(r),
            CandidateValue::Interval { .. } => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            CandidateValue::Exact(r) => r.to_f64(),
            CandidateValue::Interval { lower, upper } => (lower.to_f64() + upper.to_f64()) / 2.0,
        }
    }
}

impl Serialize for CandidateValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CandidateValue::Exact(r) => s.collect_str(r),
            CandidateValue::Interval { lower, upper } => s.collect_str(&format_args!("[{lower}, {upper}]")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Validity {
    Valid,
    Invalid,
    UndeterminedAtPrecision,
}

/// A Lorenz parameter triple solving the matching equations, with the
/// outcome of every necessary condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub a: CandidateValue,
    pub b: CandidateValue,
    /// `None` when `ab = 0` and `c` cannot be recovered.
    pub c: Option<CandidateValue>,
    pub valid: bool,
    pub status: Validity,
    pub reasons: Vec<String>,
}

impl Candidate {
    pub fn exact_params(&self) -> Option<LorenzParams> {
        Some(LorenzParams {
            a: self.a.as_exact()?.clone(),
            b: self.b.as_exact()?.clone(),
            c: self.c.as_ref()?.as_exact()?.clone(),
        })
    }
}

/// Lorenz candidates from every common real root `b` of the matching pair:
/// `a = u - 1 - b`, `c = 1 - w / (ab)`.
pub fn recover_lorenz_candidates(t: &InvariantTriple) -> Vec<Candidate> {
    let ms = matching_system(t);
    let common = ms.cubic.gcd(&ms.quadratic);
    if common.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    crate::exact::real_roots(&common)
        .into_iter()
        .map(|root| match &root.exact {
            Some(b) => exact_candidate(t, b),
            None => interval_candidate(t, &common, root),
        })
        .collect()
}

fn exact_candidate(t: &InvariantTriple, b: &Rational) -> Candidate {
    let one = Rational::one();
    let a = &t.u - &one - b;
    let ab = &a * b;
    let mut reasons = Vec::new();
    if ab.is_zero() {
        reasons.push("singular-recovery: ab = 0, c is undetermined".to_string());
        return Candidate {
            a: CandidateValue::Exact(a),
            b: CandidateValue::Exact(b.clone()),
            c: None,
            valid: false,
            status: Validity::Invalid,
            reasons,
        };
    }
    let c = &one - &t.w / &ab;
    if !a.is_positive() {
        reasons.push("a <= 0".to_string());
    }
    if !b.is_positive() {
        reasons.push("b <= 0".to_string());
    }
    let lorenz = LorenzParams { a: a.clone(), b: b.clone(), c: c.clone() };
    let product = lorenz.existence_product();
    if !product.is_positive() {
        reasons.push(format!("b(c-1) = {product} <= 0: fewer than three equilibria"));
    }
    let origin = charpoly_at(&lorenz, EquilibriumLabel::Origin).expect("origin always exists");
    if (origin.c2 != t.u) || (origin.c1 != t.v) || (origin.c0 != t.w) {
        reasons.push("origin characteristic polynomials differ".to_string());
    }
    if product.is_positive() {
        for label in [EquilibriumLabel::WingMinus, EquilibriumLabel::WingPlus] {
            let wing = charpoly_at(&lorenz, label).expect("wing exists");
            let target = (&t.u, &t.k, -(Rational::from(2) * &t.w));
            if (&wing.c2, &wing.c1, &wing.c0) != (target.0, target.1, &target.2) {
                reasons.push(format!("{} characteristic polynomials differ", label.name(lorenz.kind())));
            }
        }
    }
    let valid = reasons.is_empty();
    Candidate {
        a: CandidateValue::Exact(a),
        b: CandidateValue::Exact(b.clone()),
        c: Some(CandidateValue::Exact(c)),
        valid,
        status: if valid { Validity::Valid } else { Validity::Invalid },
        reasons,
    }
}

/// Closed rational interval for the irrational-root path.
#[derive(Debug, Clone)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    fn point(r: &Rational) -> Self {
        Interval { lo: r.clone(), hi: r.clone() }
    }
    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
    fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
    fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Interval { lo: p.iter().min().expect("nonempty").clone(), hi: p.iter().max().expect("nonempty").clone() }
    }
    fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }
    fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval { lo: self.hi.recip()?, hi: self.lo.recip()? })
    }
    /// `Some(true)` if surely > 0, `Some(false)` if surely <= 0.
    fn positive(&self) -> Option<bool> {
        if self.lo.is_positive() {
            Some(true)
        } else if self.hi.signum() <= 0 {
            Some(false)
        } else {
            None
        }
    }
    fn value(&self) -> CandidateValue {
        CandidateValue::Interval { lower: self.lo.clone(), upper: self.hi.clone() }
    }
}

fn interval_candidate(t: &InvariantTriple, common: &UniPoly, mut root: RealRoot) -> Candidate {
    let one = Interval::point(&Rational::one());
    let um1 = Interval::point(&(&t.u - Rational::one()));
    let mut width = crate::exact::default_refinement_width();
    // an irrational b makes a = u - 1 - b irrational too, so ab != 0; shrink
    // until the interval shows it
    let (b, a, ab_inv) = loop {
        let b = Interval { lo: root.lower.clone(), hi: root.upper.clone() };
        let a = um1.sub(&b);
        if let Some(inv) = a.mul(&b).recip() {
            break (b, a, inv);
        }
        width = &width / Rational::from(1_000_000);
        root = real_roots_with_width(common, &width)
            .into_iter()
            .find(|r| r.lower <= root.upper && root.lower <= r.upper)
            .expect("root persists under refinement");
    };
    let c = one.sub(&Interval::point(&t.w).mul(&ab_inv));
    let c_minus_1 = c.sub(&one);

    let mut reasons = Vec::new();
    for (name, iv) in [("a", a.clone()), ("b", b.clone()), ("b(c-1)", b.mul(&c_minus_1))] {
        match iv.positive() {
            Some(true) => {}
            Some(false) => reasons.push(format!("{name} <= 0")),
            None => reasons.push(format!("sign of {name} undetermined at interval precision")),
        }
    }
    let invalid = reasons.iter().any(|r| r.ends_with("<= 0"));
    let status = if invalid {
        Validity::Invalid
    } else {
        // the characteristic-polynomial identities hold only up to interval
        // enclosure here and cannot be settled exactly
        let origin_c1 = a.add(&a.mul(&b)).sub(&a.mul(&c)).add(&b).sub(&Interval::point(&t.v));
        let wing_c1 = a.mul(&b).add(&b.mul(&c)).sub(&Interval::point(&t.k));
        for (name, iv) in [("origin first-order coefficient", origin_c1), ("wing first-order coefficient", wing_c1)] {
            if !iv.contains_zero() {
                reasons.push(format!("{name} mismatch"));
            }
        }
        if reasons.iter().any(|r| r.ends_with("mismatch")) {
            Validity::Invalid
        } else {
            reasons.push("undetermined-at-precision: irrational common root".to_string());
            Validity::UndeterminedAtPrecision
        }
    };
    Candidate { a: a.value(), b: b.value(), c: Some(c.value()), valid: false, status, reasons }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `M0 != 0`.
    #[serde(rename = "NonEquivalent-ResultantNonzero")]
    NonEquivalentResultantNonzero,
    /// `M0 = 0`, but no common root yields an admissible Lorenz system.
    #[serde(rename = "NonEquivalent-NoValidCandidate")]
    NonEquivalentNoValidCandidate,
    #[serde(rename = "CandidatesFound")]
    CandidatesFound,
    /// The Chen system lacks three equilibria, or `a' <= 0`, or `b' <= 0`.
    #[serde(rename = "OutOfScope")]
    OutOfScope,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonEquivalentResultantNonzero => "NonEquivalent-ResultantNonzero",
            Verdict::NonEquivalentNoValidCandidate => "NonEquivalent-NoValidCandidate",
            Verdict::CandidatesFound => "CandidatesFound",
            Verdict::OutOfScope => "OutOfScope",
        }
    }

    pub fn is_non_equivalent(self) -> bool {
        matches!(self, Verdict::NonEquivalentResultantNonzero | Verdict::NonEquivalentNoValidCandidate)
    }
}

/// The decision record for one Chen system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub chen: ChenParams,
    pub invariants: InvariantTriple,
    pub matching: MatchingSystem,
    pub m0: Rational,
    pub m0_approx: f64,
    pub verdict: Verdict,
    /// Valid candidates, plus irrational ones whose validity is undetermined.
    pub candidates: Vec<Candidate>,
    /// Common roots that fail a necessary condition.
    pub rejected_candidates: Vec<Candidate>,
    pub degenerate_flags: Vec<DegenerateFlag>,
    pub paper_note: String,
    pub notes: Vec<String>,
}

impl Certificate {
    /// Internal consistency between the verdict, `m0` and the candidate list.
    pub fn is_consistent(&self) -> bool {
        let in_scope = self.verdict != Verdict::OutOfScope;
        let resultant_ok =
            !in_scope || ((self.verdict == Verdict::NonEquivalentResultantNonzero) == !self.m0.is_zero());
        let candidates_ok = self.candidates.is_empty() != (self.verdict == Verdict::CandidatesFound);
        resultant_ok && candidates_ok
    }
}

/// Decides whether `p` can be smoothly equivalent to some Lorenz system.
pub fn decide(p: &ChenParams) -> Certificate {
    let invariants = invariants_from_chen(p);
    let matching = matching_system(&invariants);
    let Obstruction { m0, mut flags } = obstruction_from_invariants(&invariants);
    let mut notes = Vec::new();

    let product = p.existence_product();
    let mut scope_issues = Vec::new();
    if !product.is_positive() {
        scope_issues.push(format!("b'(2c'-a') = {product} <= 0: the Chen system does not have three equilibria"));
    }
    if !p.a.is_positive() {
        scope_issues.push("a' <= 0: origin determinant sign correspondence not established".to_string());
    }
    if !p.b.is_positive() {
        scope_issues.push("b' <= 0: origin determinant sign correspondence not established".to_string());
    }

    let mut candidates = Vec::new();
    let mut rejected = Vec::new();
    let (verdict, paper_note) = if !scope_issues.is_empty() {
        notes.extend(scope_issues);
        (
            Verdict::OutOfScope,
            "The argument needs a Chen system with three equilibria and a', b' > 0; no verdict is issued.".to_string(),
        )
    } else if !m0.is_zero() {
        (
            Verdict::NonEquivalentResultantNonzero,
            "M0 != 0: the matching cubic and quadratic share no root, so no Lorenz system has the same \
             characteristic polynomials at corresponding equilibria. This Chen system is not smoothly \
             equivalent to any Lorenz system."
                .to_string(),
        )
    } else {
        for cand in recover_lorenz_candidates(&invariants) {
            if cand.status == Validity::UndeterminedAtPrecision
                && !flags.contains(&DegenerateFlag::IrrationalCommonRoot)
            {
                flags.push(DegenerateFlag::IrrationalCommonRoot);
            }
            match cand.status {
                Validity::Invalid => rejected.push(cand),
                _ => candidates.push(cand),
            }
        }
        if candidates.is_empty() {
            (
                Verdict::NonEquivalentNoValidCandidate,
                "M0 = 0, but every common root violates a necessary condition (positivity, three \
                 equilibria, or matching characteristic polynomials). Not smoothly equivalent to any \
                 Lorenz system; this extends the resultant argument by exhaustive checking."
                    .to_string(),
            )
        } else {
            (
                Verdict::CandidatesFound,
                "M0 = 0 and the listed Lorenz parameters satisfy every spectral necessary condition; \
                 smooth equivalence is neither proved nor refuted."
                    .to_string(),
            )
        }
    };
    if flags.contains(&DegenerateFlag::DegenerateDegree) {
        notes.push("u = 1: matching quadratic trimmed to its true degree before elimination".to_string());
    }
    Certificate {
        chen: p.clone(),
        m0_approx: m0.to_f64(),
        invariants,
        matching,
        m0,
        verdict,
        candidates,
        rejected_candidates: rejected,
        degenerate_flags: flags,
        paper_note,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn invariant_examples() {
        let t = invariants_from_chen(&certificate_point());
        assert_eq!(t, InvariantTriple::new(rat(22, 1), rat(-410, 1), rat(-2475, 1), rat(140, 1)));
        let z = invariants_from_chen(&ChenParams::new(0, 0, 0));
        assert_eq!(z, InvariantTriple::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)));
        let d = invariants_from_chen(&ChenParams::new(2, 3, 1));
        assert_eq!(d, InvariantTriple::new(rat(4, 1), rat(3, 1), rat(0, 1), rat(3, 1)));
    }

    #[test]
    fn matching_examples() {
        let ms = matching_system(&invariants_from_chen(&certificate_point()));
        assert_eq!(ms.cubic, UniPoly::from_ints(&[2475, -410, -22, 1]));
        assert_eq!(ms.quadratic, UniPoly::from_ints(&[2940, -1012, 21]));

        let zero = matching_system(&InvariantTriple::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)));
        assert_eq!(zero.cubic, UniPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(zero.quadratic, UniPoly::from_ints(&[0, 0, -1]));

        let d = matching_system(&InvariantTriple::new(rat(4, 1), rat(3, 1), rat(0, 1), rat(3, 1)));
        assert_eq!(d.cubic, UniPoly::from_ints(&[0, 3, -4, 1]));
        assert_eq!(d.quadratic, UniPoly::from_ints(&[9, -12, 3]));
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(obstruction_m0(&certificate_point()), Rational::from(291_933_448_125i64));
        assert_eq!(obstruction_m0(&ChenParams::new(2, 3, 1)), rat(0, 1));
        assert_eq!(obstruction_m0(&ChenParams::new(1, 1, -1)), rat(0, 1));
    }

    #[test]
    fn degenerate_u_equals_one() {
        // u = a' + b' - c' = 1 with v != k: the quadratic is linear, (v-k) b
        let p = ChenParams::new(3, 2, 4);
        let ob = obstruction(&p);
        assert_eq!(ob.flags, vec![DegenerateFlag::DegenerateDegree]);
        let t = invariants_from_chen(&p);
        let ms = matching_system(&t);
        assert_eq!(ms.quadratic.degree(), Some(1));
        // the common-root test agrees with the trimmed resultant
        assert_eq!(ob.m0.is_zero(), ms.cubic.gcd(&ms.quadratic).degree() != Some(0));
        // the cubic is monic, so expanding the formal 5x5 determinant along its
        // first column leaves exactly the trimmed Sylvester matrix
        let formal = symbolic_m0().eval(&[p.a.clone(), p.b.clone(), p.c.clone()]);
        assert_eq!(formal, ob.m0);
        assert!(!ob.m0.is_zero());
    }

    #[test]
    fn quadratic_can_vanish() {
        let t = InvariantTriple::new(rat(1, 1), rat(5, 1), rat(7, 1), rat(5, 1));
        let ob = obstruction_from_invariants(&t);
        assert_eq!(ob.m0, rat(0, 1));
        assert!(ob.flags.contains(&DegenerateFlag::QuadraticVanishes));
    }

    #[test]
    fn recovery_from_classic_lorenz() {
        let l = LorenzParams::new(10, rat(8, 3), 28);
        let t = InvariantTriple::from_lorenz(&l);
        assert_eq!(t, InvariantTriple::new(rat(41, 3), rat(-722, 3), rat(-720, 1), rat(304, 3)));
        assert_eq!(obstruction_from_invariants(&t).m0, rat(0, 1));
        let cands = recover_lorenz_candidates(&t);
        let valid: Vec<_> = cands.iter().filter(|c| c.valid).collect();
        assert_eq!(valid.len(), 1);
        assert_eq!(valid[0].exact_params(), Some(l));
    }

    #[test]
    fn recovery_for_degenerate_chen() {
        let t = invariants_from_chen(&ChenParams::new(2, 3, 1));
        let cands = recover_lorenz_candidates(&t);
        assert_eq!(cands.len(), 2);
        assert!(cands.iter().all(|c| !c.valid));
        // b = 1 -> (2, 1, 1), fewer than three equilibria
        assert_eq!(cands[0].exact_params(), Some(LorenzParams::new(2, 1, 1)));
        // b = 3 -> a = 0, singular
        assert_eq!(cands[1].a, CandidateValue::Exact(rat(0, 1)));
        assert!(cands[1].c.is_none());
    }

    #[test]
    fn no_candidates_when_resultant_nonzero() {
        assert!(recover_lorenz_candidates(&invariants_from_chen(&certificate_point())).is_empty());
    }

    #[test]
    fn decisions() {
        let cert = decide(&certificate_point());
        assert_eq!(cert.verdict, Verdict::NonEquivalentResultantNonzero);
        assert_eq!(cert.m0.to_string(), "291933448125");
        assert!(cert.is_consistent());

        let out = decide(&ChenParams::new(2, 3, 1));
        assert_eq!(out.verdict, Verdict::OutOfScope);
        assert!(out.is_consistent());

        let standard = decide(&ChenParams::new(35, 3, 28));
        assert_eq!(standard.verdict, Verdict::NonEquivalentResultantNonzero);
        assert_eq!(standard.m0, Rational::from(892_480_838_193i64));
    }

    #[test]
    fn certificate_json_shape() {
        let v = serde_json::to_value(decide(&certificate_point())).unwrap();
        assert_eq!(v["chen"]["a"], "45");
        assert_eq!(v["invariants"]["k"], "140");
        assert_eq!(v["m0"], "291933448125");
        assert_eq!(v["verdict"], "NonEquivalent-ResultantNonzero");
        assert!(v["candidates"].as_array().unwrap().is_empty());
        assert!(v["degenerate_flags"].as_array().unwrap().is_empty());
        assert!((v["m0_approx"].as_f64().unwrap() - 2.919e11).abs() < 1e8);
    }
}
