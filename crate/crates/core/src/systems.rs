//! The Lorenz and Chen vector fields, their equilibria, Jacobians and
//! characteristic polynomials, all in exact arithmetic.
//!
//! Wing equilibria have coordinates `(±√r, ±√r, h)` with rational `r` and
//! `h`. They are stored as [`QuadSurd`] values so that substituting them back
//! into a field gives an exactly zero residual.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{Rational, Ring, SquareMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemsError {
    #[error("{label} does not exist: existence product {product} is not positive")]
    NoSuchEquilibrium { label: String, product: Rational },
    #[error("unknown system kind {0:?} (expected \"lorenz\" or \"chen\")")]
    UnknownKind(String),
    #[error("unknown equilibrium label {0:?}")]
    UnknownLabel(String),
    #[error("label {label} belongs to the other system (this is {kind})")]
    LabelMismatch { label: String, kind: SystemKind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Lorenz,
    Chen,
}

impl SystemKind {
    fn label_prefix(self) -> char {
        match self {
            SystemKind::Lorenz => 'P',
            SystemKind::Chen => 'Q',
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Lorenz => "lorenz",
            SystemKind::Chen => "chen",
        })
    }
}

impl FromStr for SystemKind {
    type Err = SystemsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lorenz" => Ok(SystemKind::Lorenz),
            "chen" => Ok(SystemKind::Chen),
            _ => Err(SystemsError::UnknownKind(s.to_string())),
        }
    }
}

/// Number of the form `rational + sqrt_coeff * sqrt(radicand)`.
///
/// Arithmetic is closed as long as every operand with a nonzero surd part
/// uses the same radicand, which holds for all coordinates of one
/// equilibrium set. Equality is representational.
#[derive(Clone, Debug)]
pub struct QuadSurd {
    pub rational: Rational,
    pub sqrt_coeff: Rational,
    pub radicand: Rational,
}

impl QuadSurd {
    pub fn rational(r: Rational) -> Self {
        QuadSurd { rational: r, sqrt_coeff: Rational::zero(), radicand: Rational::zero() }
    }

    /// `sign * sqrt(radicand)`.
    pub fn signed_sqrt(negative: bool, radicand: Rational) -> Self {
        let one = Rational::one();
        QuadSurd { rational: Rational::zero(), sqrt_coeff: if negative { -one } else { one }, radicand }
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt_coeff.is_zero() || self.radicand.is_zero()
    }

    /// The value, when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.sqrt_coeff.to_f64() * self.radicand.to_f64().sqrt()
    }

    fn shared_radicand(&self, other: &QuadSurd) -> Rational {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Rational::zero(),
            (false, true) => self.radicand.clone(),
            (true, false) => other.radicand.clone(),
            (false, false) => {
                assert_eq!(self.radicand, other.radicand, "mixed radicands in surd arithmetic");
                self.radicand.clone()
            }
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && match (self.is_rational(), other.is_rational()) {
                (true, true) => true,
                (false, false) => self.sqrt_coeff == other.sqrt_coeff && self.radicand == other.radicand,
                _ => false,
            }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let root = format!("sqrt({})", self.radicand);
        let mag = self.sqrt_coeff.abs();
        let surd = if mag.is_one() { root } else { format!("{mag}*{root}") };
        match (self.rational.is_zero(), self.sqrt_coeff.is_negative()) {
            (true, false) => write!(f, "{surd}"),
            (true, true) => write!(f, "-{surd}"),
            (false, false) => write!(f, "{} + {surd}", self.rational),
            (false, true) => write!(f, "{} - {surd}", self.rational),
        }
    }
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            text: String,
            rational: &'a Rational,
            sqrt_coeff: &'a Rational,
            radicand: &'a Rational,
            approx: f64,
        }
        Repr {
            text: self.to_string(),
            rational: &self.rational,
            sqrt_coeff: &self.sqrt_coeff,
            radicand: &self.radicand,
            approx: self.to_f64(),
        }
        .serialize(serializer)
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: QuadSurd) -> QuadSurd {
        let radicand = self.shared_radicand(&rhs);
        QuadSurd { rational: self.rational + rhs.rational, sqrt_coeff: self.sqrt_coeff + rhs.sqrt_coeff, radicand }
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: QuadSurd) -> QuadSurd {
        self + (-rhs)
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { rational: -self.rational, sqrt_coeff: -self.sqrt_coeff, radicand: self.radicand }
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: QuadSurd) -> QuadSurd {
        let radicand = self.shared_radicand(&rhs);
        let rational = &self.rational * &rhs.rational + &self.sqrt_coeff * &rhs.sqrt_coeff * &radicand;
        let sqrt_coeff = &self.rational * &rhs.sqrt_coeff + &self.sqrt_coeff * &rhs.rational;
        QuadSurd { rational, sqrt_coeff, radicand }
    }
}

impl Ring for QuadSurd {
    fn zero() -> Self {
        QuadSurd::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadSurd::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.is_rational()
    }
    fn from_rational(r: &Rational) -> Self {
        QuadSurd::rational(r.clone())
    }
}

/// A point `(x, y, z)` in phase space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVec<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> StateVec<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        StateVec { x, y, z }
    }
}

impl<T: Ring> StateVec<T> {
    pub fn origin() -> Self {
        StateVec::new(T::zero(), T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl StateVec<Rational> {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        StateVec::new(x.into(), y.into(), z.into())
    }

    pub fn to_surd(&self) -> StateVec<QuadSurd> {
        StateVec::new(
            QuadSurd::rational(self.x.clone()),
            QuadSurd::rational(self.y.clone()),
            QuadSurd::rational(self.z.clone()),
        )
    }
}

/// Parameters `(a, b, c)` of the Lorenz system
/// `x' = a(y - x)`, `y' = cx - xz - y`, `z' = xy - bz`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LorenzParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// Parameters `(a', b', c')` of the Chen system
/// `x' = a'(y - x)`, `y' = (c' - a')x - xz + c'y`, `z' = xy - b'z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChenParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl LorenzParams {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>, c: impl Into<Rational>) -> Self {
        LorenzParams { a: a.into(), b: b.into(), c: c.into() }
    }
}

impl ChenParams {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>, c: impl Into<Rational>) -> Self {
        ChenParams { a: a.into(), b: b.into(), c: c.into() }
    }
}

/// Which of the (up to) three equilibria: the origin or one of the two
/// mirror-image wing points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumLabel {
    Origin,
    WingMinus,
    WingPlus,
}

impl EquilibriumLabel {
    pub const ALL: [EquilibriumLabel; 3] =
        [EquilibriumLabel::Origin, EquilibriumLabel::WingMinus, EquilibriumLabel::WingPlus];

    fn index(self) -> usize {
        match self {
            EquilibriumLabel::Origin => 1,
            EquilibriumLabel::WingMinus => 2,
            EquilibriumLabel::WingPlus => 3,
        }
    }

    /// `P1..P3` for Lorenz, `Q1..Q3` for Chen.
    pub fn name(self, kind: SystemKind) -> String {
        format!("{}{}", kind.label_prefix(), self.index())
    }

    /// Parses `P1`/`Q2`/... (checked against `kind`) or a bare `1`..`3`.
    pub fn parse_for(s: &str, kind: SystemKind) -> Result<Self, SystemsError> {
        let s = s.trim();
        let (prefix, digits) = match s.chars().next() {
            Some(ch) if ch.is_ascii_alphabetic() => (Some(ch.to_ascii_uppercase()), &s[1..]),
            _ => (None, s),
        };
        let label = match digits {
            "1" => EquilibriumLabel::Origin,
            "2" => EquilibriumLabel::WingMinus,
            "3" => EquilibriumLabel::WingPlus,
            _ => return Err(SystemsError::UnknownLabel(s.to_string())),
        };
        match prefix {
            None => Ok(label),
            Some(p) if p == kind.label_prefix() => Ok(label),
            Some('P') | Some('Q') => Err(SystemsError::LabelMismatch { label: s.to_string(), kind }),
            Some(_) => Err(SystemsError::UnknownLabel(s.to_string())),
        }
    }
}

/// Monic cubic `λ³ + c2 λ² + c1 λ + c0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyCubic {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl CharPolyCubic {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> Self {
        CharPolyCubic { c2, c1, c0 }
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        ((lambda + &self.c2) * lambda + &self.c1) * lambda + &self.c0
    }

    /// `det(λI - J)` for a 3×3 matrix with entries in any ring whose
    /// invariants come out rational.
    pub fn of_matrix<T: Ring>(m: &SquareMatrix<T>, to_rational: impl Fn(&T) -> Rational) -> Self {
        assert_eq!(m.order(), 3);
        CharPolyCubic {
            c2: -to_rational(&m.trace()),
            c1: to_rational(&m.principal_minor_sum(2)),
            c0: -to_rational(&m.determinant_laplace()),
        }
    }

    pub fn as_unipoly(&self) -> crate::exact::UniPoly {
        crate::exact::UniPoly::new(vec![self.c0.clone(), self.c1.clone(), self.c2.clone(), Rational::one()])
            .with_var("λ")
    }
}

/// One equilibrium point with its label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equilibrium {
    pub label: String,
    #[serde(skip)]
    pub which: EquilibriumLabel,
    pub point: StateVec<QuadSurd>,
}

/// The origin plus, when they exist, the two wing points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSet {
    pub system: SystemKind,
    pub count: usize,
    /// `b(c - 1)` for Lorenz, `b(2c - a)` for Chen.
    pub existence_product: Rational,
    /// Set when the existence product is exactly zero: the wing points have
    /// merged into the origin.
    pub degenerate_merge: bool,
    pub points: Vec<Equilibrium>,
}

impl EquilibriumSet {
    pub fn get(&self, label: EquilibriumLabel) -> Option<&Equilibrium> {
        self.points.iter().find(|e| e.which == label)
    }
}

/// Shared behavior of the two parameterized systems.
pub trait ParamSystem {
    fn kind(&self) -> SystemKind;
    fn params(&self) -> [&Rational; 3];
    fn field<T: Ring>(&self, s: &StateVec<T>) -> StateVec<T>;
    fn jacobian<T: Ring>(&self, s: &StateVec<T>) -> SquareMatrix<T>;
    /// Wing points exist iff this is strictly positive.
    fn existence_product(&self) -> Rational;
    /// `z` coordinate of the wing points.
    fn wing_height(&self) -> Rational;
    /// Displayed closed form of the origin characteristic polynomial.
    fn origin_charpoly(&self) -> CharPolyCubic;
    /// Closed form of the wing characteristic polynomial.
    fn wing_charpoly_closed_form(&self) -> CharPolyCubic;
    /// Closed-form `det J` at the labeled point (no existence check).
    fn det_closed_form(&self, label: EquilibriumLabel) -> Rational;
}

fn lift<T: Ring>(r: &Rational) -> T {
    T::from_rational(r)
}

impl ParamSystem for LorenzParams {
    fn kind(&self) -> SystemKind {
        SystemKind::Lorenz
    }

    fn params(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    fn field<T: Ring>(&self, s: &StateVec<T>) -> StateVec<T> {
        let (a, b, c) = (lift::<T>(&self.a), lift::<T>(&self.b), lift::<T>(&self.c));
        let StateVec { x, y, z } = s.clone();
        StateVec::new(a * (y.clone() - x.clone()), c * x.clone() - x.clone() * z.clone() - y.clone(), x * y - b * z)
    }

    fn jacobian<T: Ring>(&self, s: &StateVec<T>) -> SquareMatrix<T> {
        let (a, b, c) = (lift::<T>(&self.a), lift::<T>(&self.b), lift::<T>(&self.c));
        let StateVec { x, y, z } = s.clone();
        SquareMatrix::from_rows(vec![
            vec![-a.clone(), a, T::zero()],
            vec![c - z, -T::one(), -x.clone()],
            vec![y, x, -b],
        ])
        .expect("3x3")
    }

    fn existence_product(&self) -> Rational {
        &self.b * (&self.c - Rational::one())
    }

    fn wing_height(&self) -> Rational {
        &self.c - Rational::one()
    }

    fn origin_charpoly(&self) -> CharPolyCubic {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let one = Rational::one();
        CharPolyCubic::new(a + b + &one, a + a * b - a * c + b, -(a * b * (c - &one)))
    }

    fn wing_charpoly_closed_form(&self) -> CharPolyCubic {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let one = Rational::one();
        CharPolyCubic::new(a + b + &one, a * b + b * c, Rational::from(2) * a * b * (c - &one))
    }

    fn det_closed_form(&self, label: EquilibriumLabel) -> Rational {
        let base = &self.a * &self.b * (&self.c - Rational::one());
        match label {
            EquilibriumLabel::Origin => base,
            _ => Rational::from(-2) * base,
        }
    }
}

impl ParamSystem for ChenParams {
    fn kind(&self) -> SystemKind {
        SystemKind::Chen
    }

    fn params(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    fn field<T: Ring>(&self, s: &StateVec<T>) -> StateVec<T> {
        let (a, b, c) = (lift::<T>(&self.a), lift::<T>(&self.b), lift::<T>(&self.c));
        let StateVec { x, y, z } = s.clone();
        StateVec::new(
            a.clone() * (y.clone() - x.clone()),
            (c.clone() - a) * x.clone() - x.clone() * z.clone() + c * y.clone(),
            x * y - b * z,
        )
    }

    fn jacobian<T: Ring>(&self, s: &StateVec<T>) -> SquareMatrix<T> {
        let (a, b, c) = (lift::<T>(&self.a), lift::<T>(&self.b), lift::<T>(&self.c));
        let StateVec { x, y, z } = s.clone();
        SquareMatrix::from_rows(vec![
            vec![-a.clone(), a.clone(), T::zero()],
            vec![c.clone() - a - z, c, -x.clone()],
            vec![y, x, -b],
        ])
        .expect("3x3")
    }

    fn existence_product(&self) -> Rational {
        &self.b * (Rational::from(2) * &self.c - &self.a)
    }

    fn wing_height(&self) -> Rational {
        Rational::from(2) * &self.c - &self.a
    }

    fn origin_charpoly(&self) -> CharPolyCubic {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = Rational::from(2);
        CharPolyCubic::new(a + b - c, a * a + a * b - &two * a * c - b * c, -(a * b * (&two * c - a)))
    }

    fn wing_charpoly_closed_form(&self) -> CharPolyCubic {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = Rational::from(2);
        CharPolyCubic::new(a + b - c, b * c, &two * a * b * (&two * c - a))
    }

    fn det_closed_form(&self, label: EquilibriumLabel) -> Rational {
        let base = &self.a * &self.b * (Rational::from(2) * &self.c - &self.a);
        match label {
            EquilibriumLabel::Origin => base,
            _ => Rational::from(-2) * base,
        }
    }
}

/// Either system, for callers that pick the kind at run time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "system", rename_all = "lowercase")]
pub enum SystemParams {
    Lorenz(LorenzParams),
    Chen(ChenParams),
}

impl SystemParams {
    pub fn new(kind: SystemKind, a: Rational, b: Rational, c: Rational) -> Self {
        match kind {
            SystemKind::Lorenz => SystemParams::Lorenz(LorenzParams { a, b, c }),
            SystemKind::Chen => SystemParams::Chen(ChenParams { a, b, c }),
        }
    }
}

macro_rules! dispatch {
    ($self:expr, $p:ident => $body:expr) => {
        match $self {
            SystemParams::Lorenz($p) => $body,
            SystemParams::Chen($p) => $body,
        }
    };
}

impl ParamSystem for SystemParams {
    fn kind(&self) -> SystemKind {
        dispatch!(self, p => p.kind())
    }
    fn params(&self) -> [&Rational; 3] {
        dispatch!(self, p => p.params())
    }
    fn field<T: Ring>(&self, s: &StateVec<T>) -> StateVec<T> {
        dispatch!(self, p => p.field(s))
    }
    fn jacobian<T: Ring>(&self, s: &StateVec<T>) -> SquareMatrix<T> {
        dispatch!(self, p => p.jacobian(s))
    }
    fn existence_product(&self) -> Rational {
        dispatch!(self, p => p.existence_product())
    }
    fn wing_height(&self) -> Rational {
        dispatch!(self, p => p.wing_height())
    }
    fn origin_charpoly(&self) -> CharPolyCubic {
        dispatch!(self, p => p.origin_charpoly())
    }
    fn wing_charpoly_closed_form(&self) -> CharPolyCubic {
        dispatch!(self, p => p.wing_charpoly_closed_form())
    }
    fn det_closed_form(&self, label: EquilibriumLabel) -> Rational {
        dispatch!(self, p => p.det_closed_form(label))
    }
}

pub fn lorenz_field<T: Ring>(p: &LorenzParams, s: &StateVec<T>) -> StateVec<T> {
    p.field(s)
}

pub fn chen_field<T: Ring>(p: &ChenParams, s: &StateVec<T>) -> StateVec<T> {
    p.field(s)
}

pub fn equilibria<S: ParamSystem>(sys: &S) -> EquilibriumSet {
    let kind = sys.kind();
    let product = sys.existence_product();
    let mut points = vec![Equilibrium {
        label: EquilibriumLabel::Origin.name(kind),
        which: EquilibriumLabel::Origin,
        point: StateVec::origin(),
    }];
    if product.is_positive() {
        let h = QuadSurd::rational(sys.wing_height());
        for (which, negative) in [(EquilibriumLabel::WingMinus, true), (EquilibriumLabel::WingPlus, false)] {
            let r = QuadSurd::signed_sqrt(negative, product.clone());
            points.push(Equilibrium { label: which.name(kind), which, point: StateVec::new(r.clone(), r, h.clone()) });
        }
    }
    EquilibriumSet {
        system: kind,
        count: points.len(),
        degenerate_merge: product.is_zero(),
        existence_product: product,
        points,
    }
}

fn locate<S: ParamSystem>(sys: &S, label: EquilibriumLabel) -> Result<StateVec<QuadSurd>, SystemsError> {
    equilibria(sys).get(label).map(|e| e.point.clone()).ok_or_else(|| SystemsError::NoSuchEquilibrium {
        label: label.name(sys.kind()),
        product: sys.existence_product(),
    })
}

pub fn jacobian<S: ParamSystem, T: Ring>(sys: &S, s: &StateVec<T>) -> SquareMatrix<T> {
    sys.jacobian(s)
}

/// Jacobian at a labeled equilibrium, with radical entries.
pub fn jacobian_at<S: ParamSystem>(sys: &S, label: EquilibriumLabel) -> Result<SquareMatrix<QuadSurd>, SystemsError> {
    Ok(sys.jacobian(&locate(sys, label)?))
}

/// Closed-form `det J` at an existing equilibrium.
pub fn jacobian_det_at_equilibrium<S: ParamSystem>(sys: &S, label: EquilibriumLabel) -> Result<Rational, SystemsError> {
    locate(sys, label)?;
    Ok(sys.det_closed_form(label))
}

/// Characteristic polynomial at an existing equilibrium: the closed form at
/// the origin, computed from the radical Jacobian at the wing points.
pub fn charpoly_at<S: ParamSystem>(sys: &S, label: EquilibriumLabel) -> Result<CharPolyCubic, SystemsError> {
    match label {
        EquilibriumLabel::Origin => Ok(sys.origin_charpoly()),
        _ => {
            let jac = jacobian_at(sys, label)?;
            Ok(CharPolyCubic::of_matrix(&jac, |v| v.as_rational().expect("wing Jacobian invariants are rational")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn classic() -> LorenzParams {
        LorenzParams::new(10, rat(8, 3), 28)
    }

    fn certificate_chen() -> ChenParams {
        ChenParams::new(45, 5, 28)
    }

    #[test]
    fn field_examples() {
        let o = StateVec::<Rational>::origin();
        assert!(lorenz_field(&classic(), &o).is_zero());
        assert!(chen_field(&certificate_chen(), &o).is_zero());

        let one = StateVec::from_ints(1, 1, 1);
        assert_eq!(lorenz_field(&classic(), &one), StateVec::new(rat(0, 1), rat(26, 1), rat(-5, 3)));
        assert_eq!(chen_field(&ChenParams::new(35, 3, 28), &one), StateVec::new(rat(0, 1), rat(20, 1), rat(-2, 1)));
    }

    #[test]
    fn wing_points_are_exact_zeros() {
        let p2 = StateVec::new(
            QuadSurd::signed_sqrt(true, rat(72, 1)),
            QuadSurd::signed_sqrt(true, rat(72, 1)),
            QuadSurd::rational(rat(27, 1)),
        );
        assert!(lorenz_field(&classic(), &p2).is_zero());

        let q2 = StateVec::new(
            QuadSurd::signed_sqrt(true, rat(55, 1)),
            QuadSurd::signed_sqrt(true, rat(55, 1)),
            QuadSurd::rational(rat(11, 1)),
        );
        assert!(chen_field(&certificate_chen(), &q2).is_zero());
    }

    #[test]
    fn equilibrium_sets() {
        let l = equilibria(&classic());
        assert_eq!(l.count, 3);
        assert_eq!(l.existence_product, rat(72, 1));
        let p3 = &l.get(EquilibriumLabel::WingPlus).unwrap().point;
        assert_eq!(p3.x.to_string(), "sqrt(72)");
        assert_eq!(p3.z.as_rational(), Some(rat(27, 1)));

        let c = equilibria(&certificate_chen());
        assert_eq!(c.count, 3);
        assert_eq!(c.existence_product, rat(55, 1));
        assert_eq!(c.points[1].label, "Q2");
        assert_eq!(c.points[1].point.y.to_string(), "-sqrt(55)");
        assert_eq!(c.points[1].point.z.as_rational(), Some(rat(11, 1)));

        let merged = equilibria(&LorenzParams::new(10, rat(8, 3), 1));
        assert_eq!(merged.count, 1);
        assert!(merged.degenerate_merge);

        let none = equilibria(&LorenzParams::new(10, rat(8, 3), rat(1, 2)));
        assert_eq!(none.count, 1);
        assert!(!none.degenerate_merge);
    }

    #[test]
    fn displayed_jacobians() {
        let o = StateVec::<Rational>::origin();
        let p = LorenzParams::new(2, 3, 5);
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        assert_eq!(jacobian(&p, &o).rows(), vec![r(&[-2, 2, 0]), r(&[5, -1, 0]), r(&[0, 0, -3])]);
        let q = ChenParams::new(2, 3, 5);
        assert_eq!(jacobian(&q, &o).rows(), vec![r(&[-2, 2, 0]), r(&[3, 5, 0]), r(&[0, 0, -3])]);

        let j = jacobian(&classic(), &StateVec::from_ints(1, 2, 3));
        assert_eq!(j.rows(), vec![r(&[-10, 10, 0]), r(&[25, -1, -1]), vec![rat(2, 1), rat(1, 1), rat(-8, 3)],]);
    }

    #[test]
    fn determinants_at_equilibria() {
        assert_eq!(jacobian_det_at_equilibrium(&classic(), EquilibriumLabel::Origin).unwrap(), rat(720, 1));
        let chen = certificate_chen();
        assert_eq!(jacobian_det_at_equilibrium(&chen, EquilibriumLabel::Origin).unwrap(), rat(2475, 1));
        assert_eq!(jacobian_det_at_equilibrium(&chen, EquilibriumLabel::WingMinus).unwrap(), rat(-4950, 1));
        for label in EquilibriumLabel::ALL {
            let direct = jacobian_at(&chen, label).unwrap().determinant_laplace();
            assert_eq!(direct.as_rational(), Some(chen.det_closed_form(label)));
        }
    }

    #[test]
    fn missing_wing_point_is_an_error() {
        let p = LorenzParams::new(10, rat(8, 3), 1);
        assert!(matches!(
            jacobian_det_at_equilibrium(&p, EquilibriumLabel::WingPlus),
            Err(SystemsError::NoSuchEquilibrium { .. })
        ));
        assert!(charpoly_at(&p, EquilibriumLabel::WingMinus).is_err());
        assert!(charpoly_at(&p, EquilibriumLabel::Origin).is_ok());
    }

    #[test]
    fn charpoly_examples() {
        let q1 = charpoly_at(&certificate_chen(), EquilibriumLabel::Origin).unwrap();
        assert_eq!(q1, CharPolyCubic::new(rat(22, 1), rat(-410, 1), rat(-2475, 1)));
        let p2 = charpoly_at(&classic(), EquilibriumLabel::WingMinus).unwrap();
        assert_eq!(p2.c1, rat(304, 3));
        assert_eq!(p2.c0, -jacobian_det_at_equilibrium(&classic(), EquilibriumLabel::WingMinus).unwrap());
        assert_eq!(p2, classic().wing_charpoly_closed_form());
    }

    #[test]
    fn label_parsing() {
        assert_eq!(EquilibriumLabel::parse_for("Q1", SystemKind::Chen).unwrap(), EquilibriumLabel::Origin);
        assert_eq!(EquilibriumLabel::parse_for("p3", SystemKind::Lorenz).unwrap(), EquilibriumLabel::WingPlus);
        assert_eq!(EquilibriumLabel::parse_for("2", SystemKind::Chen).unwrap(), EquilibriumLabel::WingMinus);
        assert!(matches!(EquilibriumLabel::parse_for("P1", SystemKind::Chen), Err(SystemsError::LabelMismatch { .. })));
        assert!(EquilibriumLabel::parse_for("Q4", SystemKind::Chen).is_err());
    }

    #[test]
    fn surd_arithmetic() {
        let s = QuadSurd::signed_sqrt(false, rat(5, 1));
        let sq = s.clone() * s.clone();
        assert_eq!(sq.as_rational(), Some(rat(5, 1)));
        let t = QuadSurd::rational(rat(2, 1)) + s.clone() * QuadSurd::rational(rat(-3, 1));
        assert_eq!(t.to_string(), "2 - 3*sqrt(5)");
        assert!((s.clone() - s).is_zero());
    }
}
