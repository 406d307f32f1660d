//! The rational subspace `V_π` of a quadratic vector and integer approximation
//! inside `ℤⁿ − π·ℤ_{>N₀}`.
//!
//! With all entries in one field `ℚ(√d)`, `π = q₀ + q₁·θ` for a rational pair
//! of vectors and a single irrational `θ = π_i`. Then `V_π` is the line spanned
//! by `q₁` (or `{0}` when `π` is rational), and residuals `c − mπ` lying in it
//! come from one-dimensional approximations `p − qθ`, which the continued
//! fraction of `θ` produces exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{cmp_quad, floor_quad, Field, IntVec, QuadValue, Rational};
use crate::error::{Error, Result};
use crate::linalg::q_linear_basis;

/// Default number of multipliers tried by the exhaustive fallback search.
pub const KRONECKER_BUDGET: u64 = 10_000_000;

/// Convergent terms examined before giving up.
const MAX_CONVERGENTS: usize = 500;

/// `V_π = {x : x_j = Σ_{i∈I} q_{j,i} x_i for j ∉ I}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VpiSubspace {
    pub pi: Vec<QuadValue>,
    pub index_set: Vec<usize>,
    /// `q[j][k]` is the coefficient of `x_{I[k]}` in `x_j`; identity rows on `I`.
    pub q: Vec<Vec<Rational>>,
    pub basis: Vec<Vec<Rational>>,
    offsets: Vec<Rational>,
}

impl VpiSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.pi.len()
            && self.q.iter().zip(x).all(|(row, xj)| {
                let s: Rational = row.iter().zip(&self.index_set).map(|(c, &i)| c * &x[i]).sum();
                &s == xj
            })
    }

    pub fn contains_quad(&self, x: &[QuadValue]) -> bool {
        x.len() == self.pi.len()
            && self.q.iter().zip(x).all(|(row, xj)| {
                let s = row
                    .iter()
                    .zip(&self.index_set)
                    .fold(QuadValue::zero(), |acc, (c, &i)| &acc + &x[i].scale(c));
                &s == xj
            })
    }
}

pub fn v_pi(pi: &[QuadValue]) -> Result<VpiSubspace> {
    if pi.iter().all(QuadValue::is_zero) {
        return Err(Error::Precondition("π must be nonzero".into()));
    }
    let qb = q_linear_basis(pi)?;
    let offsets: Vec<Rational> = qb.coeffs.iter().map(|(q0, _)| q0.clone()).collect();
    let Some(i) = qb.pivot else {
        return Ok(VpiSubspace {
            pi: pi.to_vec(),
            index_set: Vec::new(),
            q: vec![Vec::new(); pi.len()],
            basis: Vec::new(),
            offsets,
        });
    };
    let q: Vec<Vec<Rational>> = qb.coeffs.iter().map(|(_, q1)| vec![q1.clone()]).collect();
    let basis = vec![q.iter().map(|r| r[0].clone()).collect()];
    Ok(VpiSubspace { pi: pi.to_vec(), index_set: vec![i], q, basis, offsets })
}

/// Partial quotients of a real quadratic (or rational) number.
#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    x: Option<QuadValue>,
}

impl ContinuedFraction {
    pub fn new(x: QuadValue) -> Self {
        Self { x: Some(x) }
    }
}

impl Iterator for ContinuedFraction {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let x = self.x.take()?;
        let a = floor_quad(&x);
        let frac = &x - &QuadValue::from(a.clone());
        if !frac.is_zero() {
            self.x = Some(&QuadValue::one() / &frac);
        }
        Some(a)
    }
}

/// Convergents `p_k / q_k` of a continued fraction.
#[derive(Clone, Debug)]
pub struct Convergents {
    cf: ContinuedFraction,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
}

impl Convergents {
    pub fn new(x: QuadValue) -> Self {
        Self { cf: ContinuedFraction::new(x), prev: (BigInt::zero(), BigInt::one()), cur: (BigInt::one(), BigInt::zero()) }
    }
}

impl Iterator for Convergents {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<(BigInt, BigInt)> {
        let a = self.cf.next()?;
        let p = &a * &self.cur.0 + &self.prev.0;
        let q = &a * &self.cur.1 + &self.prev.1;
        self.prev = std::mem::replace(&mut self.cur, (p.clone(), q.clone()));
        Some((p, q))
    }
}

/// `c − m·π` with `m > N₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximant {
    pub c: IntVec,
    pub m: BigInt,
    pub residual: Vec<QuadValue>,
}

impl Approximant {
    fn build(pi: &[QuadValue], c: IntVec, m: BigInt) -> Self {
        let mq = QuadValue::from(m.clone());
        let residual = c.iter().zip(pi).map(|(cj, pj)| &QuadValue::from(cj.clone()) - &(&mq * pj)).collect();
        Self { c, m, residual }
    }

    /// `‖residual − target‖²`, exactly.
    pub fn dist_sq(&self, target: &[Rational]) -> QuadValue {
        self.residual.iter().zip(target).fold(QuadValue::zero(), |acc, (r, t)| {
            let e = r - &QuadValue::from(t);
            &acc + &(&e * &e)
        })
    }

    pub fn within(&self, target: &[Rational], eps: &Rational) -> bool {
        let e2 = QuadValue::from(eps * eps);
        cmp_quad(&self.dist_sq(target), &e2).map(|o| o != Ordering::Greater).unwrap_or(false)
    }
}

/// The integer structure of a one-dimensional `V_π`: `c_i = D·p`, `m = D·q`
/// make every other `c_j = m·q₀_j + q₁_j·c_i` integral.
struct Line {
    pivot: usize,
    theta: QuadValue,
    scale: BigInt,
    u: Vec<Rational>,
    offsets: Vec<Rational>,
}

impl Line {
    fn new(v: &VpiSubspace) -> Option<Self> {
        let &pivot = v.index_set.first()?;
        let u = v.basis[0].clone();
        let scale = u.iter().chain(&v.offsets).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        Some(Self { pivot, theta: v.pi[pivot].clone(), scale, u, offsets: v.offsets.clone() })
    }

    fn approximant(&self, pi: &[QuadValue], p: &BigInt, q: &BigInt) -> Approximant {
        let ci = &self.scale * p;
        let m = &self.scale * q;
        let c = (0..pi.len())
            .map(|j| {
                if j == self.pivot {
                    return ci.clone();
                }
                let v = Rational::from_integer(m.clone()) * &self.offsets[j] + &self.u[j] * Rational::from_integer(ci.clone());
                v.to_integer()
            })
            .collect();
        Approximant::build(pi, c, m)
    }
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    Ok(())
}

/// Smallest multiple of the common denominator of a rational `π` above `N₀`.
fn rational_approximant(pi: &[QuadValue], n0: &BigInt) -> Approximant {
    let l = pi.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.a().denom()));
    let m: BigInt = (n0 / &l + 1u32) * &l;
    let c = pi.iter().map(|x| (x.a() * Rational::from_integer(m.clone())).to_integer()).collect();
    Approximant::build(pi, c, m)
}

/// `(c, m)` with `m > N₀` and `‖(c − mπ) − target‖ ≤ eps`.
pub fn kronecker_approx(pi: &[QuadValue], target: &[Rational], eps: &Rational, n0: u64) -> Result<Approximant> {
    kronecker_approx_with_budget(pi, target, eps, n0, KRONECKER_BUDGET)
}

pub fn kronecker_approx_with_budget(
    pi: &[QuadValue],
    target: &[Rational],
    eps: &Rational,
    n0: u64,
    budget: u64,
) -> Result<Approximant> {
    check_eps(eps)?;
    let v = v_pi(pi)?;
    if target.len() != pi.len() {
        return Err(Error::DimensionMismatch { expected: pi.len(), got: target.len() });
    }
    if !v.contains(target) {
        return Err(Error::Precondition("target is not in V_π".into()));
    }
    let n0b = BigInt::from(n0);
    let Some(line) = Line::new(&v) else {
        return Ok(rational_approximant(pi, &n0b));
    };
    if target.iter().all(Zero::is_zero) {
        for (p, q) in Convergents::new(line.theta.clone()).take(MAX_CONVERGENTS) {
            if &line.scale * &q <= n0b {
                continue;
            }
            let a = line.approximant(pi, &p, &q);
            if a.within(target, eps) {
                return Ok(a);
            }
        }
    }
    // Exhaustive scan over q, screened in floating point and confirmed exactly.
    let theta = line.theta.to_f64();
    let s = line.scale.to_f64().unwrap_or(f64::INFINITY);
    let tau = target[line.pivot].to_f64().unwrap_or(0.0) / s;
    let unorm = line.u.iter().map(|x| x.to_f64().unwrap_or(0.0).powi(2)).sum::<f64>().sqrt();
    let tol = eps.to_f64().unwrap_or(0.0) / (s * unorm) * (1.0 + 1e-6) + 1e-9;
    let q0: BigInt = &n0b / &line.scale + 1u32;
    let q0f = q0.to_u64().ok_or(Error::ApproximationBudget)?;
    for k in 0..budget {
        let q = q0f + k;
        let x = q as f64 * theta + tau;
        let p = x.round();
        if (p - x).abs() <= tol {
            let a = line.approximant(pi, &BigInt::from(p as i64), &BigInt::from(q));
            if a.within(target, eps) {
                return Ok(a);
            }
        }
    }
    Err(Error::ApproximationBudget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTerm {
    pub approx: Approximant,
    pub lambda: QuadValue,
}

/// Approximants with convex weights whose residuals sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCombination {
    pub terms: Vec<ZeroTerm>,
}

impl ZeroCombination {
    pub fn k(&self) -> usize {
        self.terms.len()
    }

    /// `Σλ_i = 1`, `λ_i ≥ 0` and `Σλ_i·residual_i = 0`, exactly.
    pub fn check(&self) -> bool {
        let Some(first) = self.terms.first() else { return false };
        let n = first.approx.residual.len();
        let total = self.terms.iter().fold(QuadValue::zero(), |acc, t| &acc + &t.lambda);
        let sum: Vec<QuadValue> = (0..n)
            .map(|j| self.terms.iter().fold(QuadValue::zero(), |acc, t| &acc + &(&t.lambda * &t.approx.residual[j])))
            .collect();
        total == QuadValue::one()
            && self.terms.iter().all(|t| !t.lambda.fsign().is_lt())
            && sum.iter().all(QuadValue::is_zero)
    }
}

/// Two approximants whose residuals lie on opposite sides of zero along `V_π`,
/// weighted by `λ₁ = −s₂/(s₁−s₂)`, `λ₂ = s₁/(s₁−s₂)`. The weights live in the
/// field of `π`: a rational convex combination of `c − mπ` cannot cancel the
/// irrational part, since every `m` is positive.
pub fn zero_combination(pi: &[QuadValue], eps: &Rational, n0: u64, k_max: usize) -> Result<ZeroCombination> {
    check_eps(eps)?;
    let v = v_pi(pi)?;
    let n0b = BigInt::from(n0);
    let zero = vec![Rational::zero(); pi.len()];
    let Some(line) = Line::new(&v) else {
        let approx = rational_approximant(pi, &n0b);
        return Ok(ZeroCombination { terms: vec![ZeroTerm { approx, lambda: QuadValue::one() }] });
    };
    if k_max < 2 {
        return Err(Error::ApproximationBudget);
    }
    let pivot = line.pivot;
    let mut first: Option<Approximant> = None;
    for (p, q) in Convergents::new(line.theta.clone()).take(MAX_CONVERGENTS) {
        if &line.scale * &q <= n0b {
            continue;
        }
        let a = line.approximant(pi, &p, &q);
        if !a.within(&zero, eps) {
            continue;
        }
        match &first {
            None => first = Some(a),
            Some(f) if f.residual[pivot].fsign() != a.residual[pivot].fsign() => {
                let s1 = f.residual[pivot].clone();
                let s2 = a.residual[pivot].clone();
                let den = &s1 - &s2;
                let l1 = &(-&s2) / &den;
                let l2 = &s1 / &den;
                let zc = ZeroCombination {
                    terms: vec![ZeroTerm { approx: f.clone(), lambda: l1 }, ZeroTerm { approx: a, lambda: l2 }],
                };
                if !zc.check() {
                    return Err(Error::VerificationFailed("zero combination does not cancel".into()));
                }
                return Ok(zc);
            }
            Some(_) => {}
        }
    }
    Err(Error::ApproximationBudget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ints, parse_quad, rat, rats};

    fn qv(s: &str) -> QuadValue {
        parse_quad(s).unwrap()
    }

    #[test]
    fn sqrt2_expansion() {
        let cf: Vec<BigInt> = ContinuedFraction::new(qv("sqrt(2)")).take(5).collect();
        assert_eq!(cf, ints(&[1, 2, 2, 2, 2]));
        let cf: Vec<BigInt> = ContinuedFraction::new(qv("sqrt(7)")).take(5).collect();
        assert_eq!(cf, ints(&[2, 1, 1, 1, 4]));
        let cf: Vec<BigInt> = ContinuedFraction::new(QuadValue::from(rat(-7, 3))).collect();
        assert_eq!(cf, ints(&[-3, 1, 2]));
        let conv: Vec<(BigInt, BigInt)> = Convergents::new(qv("sqrt(2)")).take(6).collect();
        assert_eq!(conv.last().unwrap(), &(BigInt::from(99), BigInt::from(70)));
    }

    #[test]
    fn subspaces() {
        let v = v_pi(&[qv("sqrt(2)"), qv("1")]).unwrap();
        assert_eq!(v.basis, vec![rats(&[1, 0])]);
        let v = v_pi(&[qv("sqrt(2)"), qv("sqrt(2)")]).unwrap();
        assert_eq!(v.basis, vec![rats(&[1, 1])]);
        let v = v_pi(&[QuadValue::from(rat(1, 3)), qv("5")]).unwrap();
        assert!(v.basis.is_empty());
        assert!(v_pi(&[QuadValue::zero()]).is_err());
    }

    #[test]
    fn approximations() {
        let a = kronecker_approx(&[qv("sqrt(2)")], &[int(0)], &rat(1, 100), 50).unwrap();
        assert_eq!((a.c.clone(), a.m.clone()), (ints(&[99]), BigInt::from(70)));
        assert_eq!(a.residual, vec![qv("99-70*sqrt(2)")]);
        let pi = [qv("sqrt(2)"), qv("sqrt(2)")];
        let a = kronecker_approx(&pi, &rats(&[0, 0]), &rat(1, 50), 20).unwrap();
        assert_eq!((a.c.clone(), a.m.clone()), (ints(&[41, 41]), BigInt::from(29)));
        let a = kronecker_approx(&pi, &rats(&[0, 0]), &rat(1, 100), 20).unwrap();
        assert_eq!(a.m, BigInt::from(70));
        let pi = [QuadValue::from(rat(1, 3)), qv("5")];
        let a = kronecker_approx(&pi, &rats(&[0, 0]), &rat(1, 50), 10).unwrap();
        assert_eq!((a.c.clone(), a.m.clone()), (ints(&[4, 60]), BigInt::from(12)));
        assert!(a.residual.iter().all(QuadValue::is_zero));
        let a = kronecker_approx(&[qv("sqrt(2)")], &[rat(1, 3)], &rat(1, 1000), 50).unwrap();
        assert!(a.within(&[rat(1, 3)], &rat(1, 1000)));
        assert!(kronecker_approx(&[qv("sqrt(2)"), qv("1")], &rats(&[0, 1]), &rat(1, 10), 5).is_err());
    }

    #[test]
    fn zero_combinations() {
        let zc = zero_combination(&[qv("sqrt(2)")], &rat(1, 10), 20, 2).unwrap();
        assert_eq!(zc.k(), 2);
        assert_eq!(zc.terms[0].approx.c, ints(&[41]));
        assert_eq!(zc.terms[1].approx.c, ints(&[99]));
        assert!(zc.check());
        let zc = zero_combination(&[QuadValue::from(rat(1, 2))], &rat(1, 10), 3, 1).unwrap();
        assert_eq!(zc.k(), 1);
        assert_eq!(zc.terms[0].approx.m, BigInt::from(4));
        assert!(matches!(zero_combination(&[qv("sqrt(2)")], &rat(1, 10), 20, 1), Err(Error::ApproximationBudget)));
    }
}
