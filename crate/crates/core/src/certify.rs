//! Finite-generation certificates.
//!
//! A finite set `F` of integer directions certifies that the closure of `K`
//! is finitely generated when `Q_F = {x : fx ≤ ⌊σ_K(f)⌋, f ∈ F} ⊆ K`. For a
//! polyhedral `Q_F` this reduces to checking its vertices against `K` and its
//! recession directions against `rec(K)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{cmp_quad, floor_quad, int_to_rat, ExtValue, Field, IntVec, QuadValue, Rational};
use crate::bodies::{ConvexBody, Recession};
use crate::cgengine::{cg_cut, cuts_region, primitive_directions, CGCut};
use crate::conegeom::{is_valid, CutFamily};
use crate::config::check_dim;
use crate::diophantine::{zero_combination, ZeroCombination};
use crate::error::{Error, Result};
use crate::linalg::{add_vec, dot, lift};
use crate::polytope::HPolyhedron;

/// Doublings tried when walking out along a recession direction.
const MAX_DOUBLINGS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// A point of `Q_F` outside `K`.
    Refuted(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct Certificate {
    /// Directions with a finite cut.
    pub directions: Vec<IntVec>,
    /// Directions dropped because their cut is vacuous.
    pub vacuous: Vec<IntVec>,
    pub cuts: Vec<CGCut>,
    pub q_f: HPolyhedron,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

pub fn verify_certificate(k: &ConvexBody, f: &[IntVec]) -> Result<Certificate> {
    let n = k.dim();
    check_dim(n)?;
    let mut directions = Vec::new();
    let mut vacuous = Vec::new();
    let mut cuts = Vec::new();
    for c in f {
        match cg_cut(k, c)? {
            Some(cut) => {
                directions.push(c.clone());
                cuts.push(cut);
            }
            None => vacuous.push(c.clone()),
        }
    }
    let q_f = cuts_region(n, &cuts)?;
    let verdict = refute(k, &q_f)?;
    Ok(Certificate { directions, vacuous, cuts, q_f, verdict })
}

fn refute(k: &ConvexBody, q: &HPolyhedron) -> Result<Verdict> {
    let v = q.vrep()?;
    if v.is_empty() {
        return Ok(Verdict::Certified);
    }
    let inside: Vec<Result<bool>> = v.vertices.par_iter().map(|x| k.contains_rat(x)).collect();
    for (x, ok) in v.vertices.iter().zip(inside) {
        if !ok? {
            return Ok(Verdict::Refuted(x.clone()));
        }
    }
    let base = &v.vertices[0];
    for r in v.recession_generators()? {
        if k.recedes_along(&r)? {
            continue;
        }
        let mut t = Rational::one();
        for _ in 0..MAX_DOUBLINGS {
            let x = add_vec(base, &r.iter().map(|ri| ri * &t).collect::<Vec<_>>());
            if !k.contains_rat(&x)? {
                return Ok(Verdict::Refuted(x));
            }
            t = &t + &t;
        }
        return Err(Error::NoConvergence);
    }
    Ok(Verdict::Certified)
}

/// Grids `‖c‖∞ ≤ N` for `N = 1..=n_max`; the first certified grid is pruned
/// greedily. `None` is not evidence against finite generation.
pub fn search_certificate(k: &ConvexBody, n_max: usize) -> Result<Option<Certificate>> {
    if !matches!(k.recession()?, Recession::Rational(_)) {
        return Ok(None);
    }
    for radius in 1..=n_max {
        let cert = verify_certificate(k, &primitive_directions(k.dim(), radius))?;
        if !cert.is_certified() {
            continue;
        }
        let mut f = cert.directions.clone();
        let mut i = 0;
        while i < f.len() {
            let mut trial = f.clone();
            trial.remove(i);
            if verify_certificate(k, &trial)?.is_certified() {
                f = trial;
            } else {
                i += 1;
            }
        }
        return Ok(Some(verify_certificate(k, &f)?));
    }
    Ok(None)
}

/// A point of `Q_{F_N} \ K` for the full grid `F_N`.
pub fn nonfg_witness(k: &ConvexBody, radius: usize) -> Result<Vec<Rational>> {
    let cert = verify_certificate(k, &primitive_directions(k.dim(), radius))?;
    match cert.verdict {
        Verdict::Refuted(x) => Ok(x),
        Verdict::Certified => Err(Error::CertifiedInstead(radius)),
    }
}

/// One cut `(cⁱ + g)x ≤ ⌊σ_F(g)⌋ + m_i·α₀` of the face family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCut {
    /// Index of the approximant `cⁱ`.
    pub term: usize,
    pub c: IntVec,
    pub m: BigInt,
    pub g: IntVec,
    pub rhs: BigInt,
}

impl FaceCut {
    pub fn direction(&self) -> IntVec {
        self.c.iter().zip(&self.g).map(|(a, b)| a + b).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FaceCutFamily {
    pub alpha: Vec<QuadValue>,
    pub alpha0: BigInt,
    pub members: Vec<FaceCut>,
    /// Weights of the approximants, with `Σλ_i(cⁱ − m_iα) = 0`.
    pub lambdas: Vec<QuadValue>,
}

impl FaceCutFamily {
    pub fn rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.members
            .iter()
            .map(|m| (int_to_rat(&m.direction()), Rational::from_integer(m.rhs.clone())))
            .collect()
    }

    /// `Σλ_i = 1`, `λ_i ≥ 0` and `Σλ_i(cⁱ − m_iα) = 0`.
    pub fn check_combination(&self) -> bool {
        let n = self.alpha.len();
        let mut terms: Vec<(usize, &FaceCut)> = self.members.iter().map(|m| (m.term, m)).collect();
        terms.dedup_by_key(|(t, _)| *t);
        if terms.len() != self.lambdas.len() {
            return false;
        }
        let total = self.lambdas.iter().fold(QuadValue::zero(), |a, l| &a + l);
        let sum: Vec<QuadValue> = (0..n)
            .map(|j| {
                terms.iter().fold(QuadValue::zero(), |acc, (t, m)| {
                    let r = &QuadValue::from(m.c[j].clone()) - &(&QuadValue::from(m.m.clone()) * &self.alpha[j]);
                    &acc + &(&self.lambdas[*t] * &r)
                })
            })
            .collect();
        total == QuadValue::one() && self.lambdas.iter().all(|l| !l.fsign().is_lt()) && sum.iter().all(QuadValue::is_zero)
    }
}

/// Points and directions generating the face `{x ∈ K : αx = α₀}`.
struct FaceGens {
    points: Vec<Vec<QuadValue>>,
    rays: Vec<Vec<QuadValue>>,
}

impl FaceGens {
    fn support(&self, g: &[QuadValue]) -> ExtValue {
        if self.rays.iter().any(|r| dot(g, r).is_fpos()) {
            return ExtValue::PlusInfinity;
        }
        let best = self.points.iter().map(|p| dot(g, p)).max_by(|a, b| a.fcmp(b));
        best.map(ExtValue::Finite).unwrap_or(ExtValue::PlusInfinity)
    }

    /// Smallest integer `u ≥ 1` with `‖p‖ ≤ u` on every point.
    fn radius(&self) -> BigInt {
        let mut u = BigInt::one();
        for p in &self.points {
            let n2 = p.iter().fold(QuadValue::zero(), |acc, x| &acc + &(x * x));
            while cmp_quad(&n2, &QuadValue::from(&u * &u)).map(|o| o == Ordering::Greater).unwrap_or(false) {
                u += 1u32;
            }
        }
        u
    }
}

fn face_gens(k: &ConvexBody, alpha: &[QuadValue], alpha0: &QuadValue) -> Result<FaceGens> {
    let on_face = |x: &Vec<QuadValue>| &dot(alpha, x) == alpha0;
    let flat = |x: &Vec<QuadValue>| dot(alpha, x).is_zero();
    match k {
        ConvexBody::RationalPoly(p) => {
            let v = p.vrep()?;
            Ok(FaceGens {
                points: v.vertices.iter().map(|x| lift(x)).filter(on_face).collect(),
                rays: v.recession_generators()?.iter().map(|r| lift(r)).filter(flat).collect(),
            })
        }
        ConvexBody::MotzkinSum { vertices, cone } => Ok(FaceGens {
            points: vertices.iter().filter(|x| on_face(x)).cloned().collect(),
            rays: cone.generators().iter().map(|g| lift(&int_to_rat(g))).filter(flat).collect(),
        }),
        ConvexBody::IrrationalLine { direction } => Ok(FaceGens {
            points: vec![vec![QuadValue::zero(); direction.len()]],
            rays: vec![direction.clone(), direction.iter().map(|x| -x).collect()],
        }),
        ConvexBody::ShiftedHyperbola { .. } | ConvexBody::Ellipsoid { .. } => {
            let argmax = k.support_quad(alpha)?.argmax.ok_or(Error::DegenerateDirection)?;
            Ok(FaceGens { points: vec![argmax], rays: Vec::new() })
        }
    }
}

/// The cut family `(cⁱ + g)x ≤ ⌊σ_F(g)⌋ + m_i·α₀` over the face `F` of `K`
/// exposed by `αx ≤ α₀`, each cut checked against the exact CG cut of `K`.
pub fn face_cuts(
    k: &ConvexBody,
    alpha: &[QuadValue],
    alpha0: &BigInt,
    g_list: &[(IntVec, BigInt)],
    delta: &Rational,
    n0: u64,
) -> Result<FaceCutFamily> {
    let n = k.dim();
    check_dim(n)?;
    if alpha.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: alpha.len() });
    }
    let a0 = QuadValue::from(alpha0.clone());
    match k.support_quad(alpha)?.value {
        ExtValue::Finite(v) if v == a0 => {}
        _ => return Err(Error::Precondition("αx ≤ α₀ does not support K".into())),
    }
    if !delta.is_positive() {
        return Err(Error::Precondition("delta must be positive".into()));
    }
    let face = face_gens(k, alpha, &a0)?;
    let mut g_list = g_list.to_vec();
    if !g_list.iter().any(|(g, _)| g.iter().all(Zero::is_zero)) {
        g_list.insert(0, (vec![BigInt::zero(); n], BigInt::zero()));
    }
    let two = Rational::from_integer(2.into());
    for (g, fl) in &g_list {
        let ExtValue::Finite(s) = face.support(&lift(&int_to_rat(g))) else {
            return Err(Error::Precondition("σ_F(g) is unbounded".into()));
        };
        if &floor_quad(&s) != fl {
            return Err(Error::Precondition(format!("stated ⌊σ_F(g)⌋ = {fl} is not the floor of {s}")));
        }
        // 2δ < 1 + ⌊σ_F(g)⌋ − σ_F(g)
        let slack = &QuadValue::from(fl + 1) - &s;
        if cmp_quad(&QuadValue::from(delta * &two), &slack)? != Ordering::Less {
            return Err(Error::Precondition("delta is too large for the face slack".into()));
        }
    }
    let eps = delta / Rational::from_integer(face.radius());
    let zc = if alpha.iter().all(QuadValue::is_rational) {
        rational_term(alpha)
    } else {
        zero_combination(alpha, &eps, n0, 2)?
    };
    let mut members = Vec::new();
    for (t, term) in zc.terms.iter().enumerate() {
        for (g, fl) in &g_list {
            let rhs = fl + &term.approx.m * alpha0;
            let member = FaceCut { term: t, c: term.approx.c.clone(), m: term.approx.m.clone(), g: g.clone(), rhs };
            let dir = member.direction();
            match cg_cut(k, &dir)? {
                Some(cut) if cut.rhs == member.rhs => members.push(member),
                Some(cut) => {
                    return Err(Error::VerificationFailed(format!(
                        "cut {:?}: family right-hand side {} but ⌊σ_K⌋ = {}",
                        dir, member.rhs, cut.rhs
                    )))
                }
                None => return Err(Error::VerificationFailed(format!("cut {dir:?} is vacuous for K"))),
            }
        }
    }
    let family = FaceCutFamily {
        alpha: alpha.to_vec(),
        alpha0: alpha0.clone(),
        members,
        lambdas: zc.terms.iter().map(|t| t.lambda.clone()).collect(),
    };
    if !family.check_combination() {
        return Err(Error::VerificationFailed("approximant weights do not cancel".into()));
    }
    let omega = CutFamily::new(n, family.rows())?;
    if !is_valid(&omega, alpha, &a0)? {
        return Err(Error::VerificationFailed("αx ≤ α₀ is not implied by the face cuts".into()));
    }
    Ok(family)
}

/// `c = L·α`, `m = L` for a rational `α` with common denominator `L`.
fn rational_term(alpha: &[QuadValue]) -> ZeroCombination {
    use crate::diophantine::{Approximant, ZeroTerm};
    let l = alpha.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.a().denom()));
    let c: IntVec = alpha.iter().map(|x| (x.a() * Rational::from_integer(l.clone())).to_integer()).collect();
    let approx = Approximant { c, m: l, residual: vec![QuadValue::zero(); alpha.len()] };
    ZeroCombination { terms: vec![ZeroTerm { approx, lambda: QuadValue::one() }] }
}
