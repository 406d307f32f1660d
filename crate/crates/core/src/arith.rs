//! Exact rationals and values of real quadratic fields.
//!
//! Every number that a support function of the supported body classes can
//! produce has the shape `a + b·√d` with `a, b` rational and `d` a squarefree
//! natural number. [`QuadValue`] stores exactly that, normalised so that
//! equality is syntactic, and all order decisions (comparison, floor) are
//! reduced to comparisons of integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Integer vectors (cut directions, lattice points).
pub type IntVec = Vec<BigInt>;

/// Largest accepted squarefree radicand.
pub const MAX_RADICAND: u64 = 1_000_000;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn int_to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `"a"`, `"sqrt(d)"`, `"b*sqrt(d)"` or `"a+b*sqrt(d)"` (also with `-`).
pub fn parse_quad(s: &str) -> Result<QuadValue> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a quadratic value: {s:?}"));
    let Some(idx) = s.find("sqrt(") else {
        return Ok(QuadValue::rational(parse_rational(&s)?));
    };
    let rest = &s[idx + 5..];
    let close = rest.find(')').ok_or_else(bad)?;
    if close + 1 != rest.len() {
        return Err(bad());
    }
    let d: u64 = rest[..close].parse().map_err(|_| bad())?;
    let mut p = &s[..idx];
    let has_star = p.ends_with('*');
    if has_star {
        p = &p[..p.len() - 1];
    }
    let sign_at = p.rfind(['+', '-']);
    let (a, b) = if has_star {
        match sign_at {
            Some(i) => (&p[..i], &p[i..]),
            None => ("", p),
        }
    } else {
        match p.chars().last() {
            None => ("", "1"),
            Some('+') => (&p[..p.len() - 1], "1"),
            Some('-') => (&p[..p.len() - 1], "-1"),
            _ => return Err(bad()),
        }
    };
    let a = if a.is_empty() { Rational::zero() } else { parse_rational(a)? };
    let b = parse_rational(b.strip_prefix('+').unwrap_or(b))?;
    QuadValue::new(a, b, d)
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor_rat(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_rat(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Splits `n > 0` as `s²·k` with `k` squarefree.
fn squarefree_split(n: &BigInt) -> Result<(BigInt, u64)> {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut kernel = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1000u32);
    while p <= limit && &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            kernel *= &p;
        }
        p += 1u32;
    }
    // What is left has no factor <= 1000; below 10^9 it is a prime, a product
    // of two distinct primes, or a prime square.
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
        } else if rest < BigInt::from(1_000_000_000u64) {
            kernel *= rest;
        } else {
            return Err(Error::RadicandTooLarge(n.to_string()));
        }
    }
    let k = kernel
        .to_u64()
        .filter(|&k| k <= MAX_RADICAND)
        .ok_or_else(|| Error::RadicandTooLarge(n.to_string()))?;
    Ok((square, k))
}

/// An exact number `a + b·√d`.
///
/// `d` is squarefree; `d = 0` marks a rational value and then `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadValue {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadValue {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d > MAX_RADICAND {
            return Err(Error::RadicandTooLarge(d.to_string()));
        }
        if d == 0 || b.is_zero() {
            return Ok(Self::rational(a));
        }
        let (s, k) = squarefree_split(&BigInt::from(d))?;
        let b = b * Rational::from_integer(s);
        if k == 1 {
            return Ok(Self::rational(a + b));
        }
        Ok(Self { a, b, d: k })
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `√r` for a nonnegative rational `r`.
    pub fn sqrt_of(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Domain(format!("square root of negative {}", format_rational(r))));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        // √(p/q) = √(p·q) / q
        let pq = r.numer() * r.denom();
        let (s, k) = squarefree_split(&pq)?;
        let coeff = Rational::new(s, r.denom().clone());
        if k == 1 {
            return Ok(Self::rational(coeff));
        }
        Ok(Self { a: Rational::zero(), b: coeff, d: k })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.a.is_zero()
    }

    /// The radicand shared by two values, if they live in a common field.
    pub fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(Error::IncomparableFields(d, e)),
        }
    }

    fn build(a: Rational, b: Rational, d: u64) -> Self {
        if d == 0 || b.is_zero() {
            Self::rational(a)
        } else {
            Self { a, b, d }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self::build(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self::build(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let dr = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(Self::build(a, b, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.common_field(other)?;
        // x / (p + q√d) = x·(p − q√d) / (p² − q²d); the norm is nonzero for squarefree d.
        let norm = other.norm();
        let conj = other.conj();
        let num = self.try_mul(&conj)?;
        Ok(Self::build(num.a / &norm, num.b / norm, d))
    }

    pub fn conj(&self) -> Self {
        Self::build(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::build(&self.a * r, &self.b * r, self.d)
    }

    /// Exact sign of `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and b²d wins.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a² = b²d with squarefree d > 1"),
        }
    }

    /// The unique integer `z` with `z ≤ self < z + 1`.
    pub fn floor(&self) -> BigInt {
        if self.d == 0 {
            return floor_rat(&self.a);
        }
        // self = (A + σ√M) / Q with integers A, M and Q > 0.
        let q = self.a.denom().lcm(self.b.denom());
        let qa = (&self.a * Rational::from_integer(q.clone())).to_integer();
        let qb = (&self.b * Rational::from_integer(q.clone())).to_integer();
        let m = &qb * &qb * BigInt::from(self.d);
        let root = m.sqrt();
        // M is never a perfect square here, so σ√M lies strictly between
        // consecutive integers.
        let s = if qb.sign() == Sign::Minus { -root - 1 } else { root };
        (qa + s).div_floor(&q)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Nearest `f64`; presentation only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.d == 0 {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }
}

/// Exact comparison of two quadratic values.
pub fn cmp_quad(u: &QuadValue, v: &QuadValue) -> Result<Ordering> {
    Ok(u.try_sub(v)?.signum())
}

pub fn floor_quad(v: &QuadValue) -> BigInt {
    v.floor()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(u: &QuadValue, v: &QuadValue, op: ArithOp) -> Result<QuadValue> {
    match op {
        ArithOp::Add => u.try_add(v),
        ArithOp::Sub => u.try_sub(v),
        ArithOp::Mul => u.try_mul(v),
        ArithOp::Div => u.try_div(v),
    }
}

impl fmt::Debug for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format!("{}*", format_rational(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else if self.b.is_positive() {
            write!(f, "{}+{b}sqrt({})", format_rational(&self.a), self.d)
        } else {
            write!(f, "{}{b}sqrt({})", format_rational(&self.a), self.d)
        }
    }
}

impl From<Rational> for QuadValue {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<&Rational> for QuadValue {
    fn from(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
}

impl From<BigInt> for QuadValue {
    fn from(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }
}

impl From<i64> for QuadValue {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

// Operator forms panic when the operands live in different fields; vectors
// and bodies validate their field once at construction so the hot paths can
// use plain operators.
macro_rules! quad_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&QuadValue> for &QuadValue {
            type Output = QuadValue;
            fn $method(self, rhs: &QuadValue) -> QuadValue {
                self.$try(rhs).expect("quadratic values from different fields")
            }
        }
        impl $tr<QuadValue> for QuadValue {
            type Output = QuadValue;
            fn $method(self, rhs: QuadValue) -> QuadValue {
                (&self).$method(&rhs)
            }
        }
    };
}

quad_binop!(Add, add, try_add);
quad_binop!(Sub, sub, try_sub);
quad_binop!(Mul, mul, try_mul);
quad_binop!(Div, div, try_div);

impl Neg for &QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue::build(-self.a.clone(), -self.b.clone(), self.d)
    }
}

impl Neg for QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        -&self
    }
}

/// A support value: finite, or `+∞` for directions unbounded on the body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtValue {
    Finite(QuadValue),
    PlusInfinity,
}

impl ExtValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&QuadValue> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::PlusInfinity => None,
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (ExtValue::PlusInfinity, ExtValue::PlusInfinity) => Ok(Ordering::Equal),
            (ExtValue::PlusInfinity, _) => Ok(Ordering::Greater),
            (_, ExtValue::PlusInfinity) => Ok(Ordering::Less),
            (ExtValue::Finite(u), ExtValue::Finite(v)) => cmp_quad(u, v),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => write!(f, "{v}"),
            ExtValue::PlusInfinity => write!(f, "inf"),
        }
    }
}

/// Exact ordered field operations used by the generic linear algebra and LP
/// code. Implemented for [`Rational`] and for [`QuadValue`]; for the latter all
/// operands of one computation must share a field (see the operator impls).
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_fzero(&self) -> bool;
    fn fsign(&self) -> Ordering;
    fn fadd(&self, rhs: &Self) -> Self;
    fn fsub(&self, rhs: &Self) -> Self;
    fn fmul(&self, rhs: &Self) -> Self;
    fn fdiv(&self, rhs: &Self) -> Self;
    fn fneg(&self) -> Self;

    fn fcmp(&self, rhs: &Self) -> Ordering {
        self.fsub(rhs).fsign()
    }

    fn is_fpos(&self) -> bool {
        self.fsign() == Ordering::Greater
    }

    fn is_fneg(&self) -> bool {
        self.fsign() == Ordering::Less
    }
}

impl Field for Rational {
    fn fzero() -> Self {
        <Rational as Zero>::zero()
    }
    fn fone() -> Self {
        <Rational as One>::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_fzero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fsign(&self) -> Ordering {
        Ord::cmp(self, &<Rational as Zero>::zero())
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn fdiv(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn fcmp(&self, rhs: &Self) -> Ordering {
        Ord::cmp(self, rhs)
    }
}

impl Field for QuadValue {
    fn fzero() -> Self {
        QuadValue::zero()
    }
    fn fone() -> Self {
        QuadValue::one()
    }
    fn from_rational(r: &Rational) -> Self {
        QuadValue::rational(r.clone())
    }
    fn is_fzero(&self) -> bool {
        QuadValue::is_zero(self)
    }
    fn fsign(&self) -> Ordering {
        self.signum()
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn fdiv(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn fneg(&self) -> Self {
        -self
    }
}

/// Common radicand of a slice of values (0 when all rational).
pub fn common_field(values: &[QuadValue]) -> Result<u64> {
    values.iter().try_fold(0u64, |d, v| match (d, v.d()) {
        (0, e) | (e, 0) => Ok(e),
        (e, f) if e == f => Ok(e),
        (e, f) => Err(Error::IncomparableFields(e, f)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for text in ["0", "-3/2", "sqrt(2)", "-sqrt(2)", "1+sqrt(2)", "1-3/2*sqrt(5)", "2*sqrt(8)", "sqrt(9)"] {
            let v = parse_quad(text).unwrap();
            assert_eq!(parse_quad(&v.to_string()).unwrap(), v, "{text}");
        }
        assert_eq!(parse_quad("2*sqrt(8)").unwrap().to_string(), "4*sqrt(2)");
        assert_eq!(parse_quad("sqrt(9)").unwrap(), QuadValue::from_int(3));
        assert!(parse_quad("sqrt(2").is_err());
        assert!(parse_quad("1+*sqrt(2)").is_err());
    }

    fn q(a: Rational, b: Rational, d: u64) -> QuadValue {
        QuadValue::new(a, b, d).unwrap()
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_quad(&QuadValue::rational(rat(3, 2))), BigInt::from(1));
        assert_eq!(floor_quad(&q(int(0), int(-2), 2)), BigInt::from(-3));
        assert_eq!(floor_quad(&q(rat(-2, 5), int(-2), 2)), BigInt::from(-4));
        assert_eq!(floor_quad(&q(int(99), int(-70), 2)), BigInt::from(0));
        assert_eq!(floor_quad(&q(int(41), int(-29), 2)), BigInt::from(-1));
        assert_eq!(q(int(0), int(99), 2).floor(), BigInt::from(140));
    }

    #[test]
    fn compare_examples() {
        let one = QuadValue::one();
        let r2 = q(int(0), int(1), 2);
        assert_eq!(cmp_quad(&one, &r2).unwrap(), Ordering::Less);
        assert_eq!(cmp_quad(&q(int(99), int(-70), 2), &QuadValue::zero()).unwrap(), Ordering::Greater);
        assert_eq!(cmp_quad(&q(int(41), int(-29), 2), &QuadValue::zero()).unwrap(), Ordering::Less);
        let r3 = q(int(0), int(1), 3);
        assert!(matches!(cmp_quad(&r2, &r3), Err(Error::IncomparableFields(2, 3))));
    }

    #[test]
    fn arithmetic_examples() {
        let a = q(int(1), int(1), 2);
        let b = q(int(1), int(-1), 2);
        assert_eq!(arith(&a, &b, ArithOp::Mul).unwrap(), QuadValue::from_int(-1));
        let c = q(rat(2, 5), int(2), 2);
        assert_eq!(arith(&c, &QuadValue::rational(rat(3, 5)), ArithOp::Add).unwrap(), q(int(1), int(2), 2));
        assert_eq!(arith(&a, &a, ArithOp::Div).unwrap(), QuadValue::one());
        assert!(matches!(arith(&a, &QuadValue::zero(), ArithOp::Div), Err(Error::DivisionByZero)));
    }

    #[test]
    fn normalisation() {
        // √8 = 2√2, √9 = 3, √(1/2) = √2/2
        assert_eq!(q(int(0), int(1), 8), q(int(0), int(2), 2));
        assert_eq!(q(int(1), int(1), 9), QuadValue::from_int(4));
        assert_eq!(QuadValue::sqrt_of(&rat(1, 2)).unwrap(), q(int(0), rat(1, 2), 2));
        assert!(QuadValue::new(int(0), int(1), 2_000_000).is_err());
        assert_eq!(QuadValue::new(int(3), int(0), 5).unwrap().d(), 0);
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&int(-3)), "-3");
    }

    #[test]
    fn ext_order() {
        let inf = ExtValue::PlusInfinity;
        let big = ExtValue::Finite(QuadValue::from_int(1_000_000));
        assert_eq!(inf.try_cmp(&big).unwrap(), Ordering::Greater);
        assert_eq!(big.try_cmp(&inf).unwrap(), Ordering::Less);
    }
}
