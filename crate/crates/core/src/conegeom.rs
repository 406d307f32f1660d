//! Finite families of inequalities `(α, β) ∈ ℝⁿ⁺¹` and the cones they span.
//!
//! An inequality `αx ≤ β` is implied by a consistent finite family exactly when
//! `(α, β)` is a nonnegative combination of its rows (the trivial row
//! `0·x ≤ 1` is always present), so validity reduces to an exact LP.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{int_to_rat, Field, IntVec, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, lift, neg_vec, primitive, proj_subspace, sub_vec};
use crate::lp;
use crate::polytope::HPolyhedron;

/// Rows `(α, β)` meaning `αx ≤ β`, always including `(0, …, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutFamily {
    n: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

impl CutFamily {
    pub fn new(n: usize, rows: Vec<(Vec<Rational>, Rational)>) -> Result<Self> {
        let mut out: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(rows.len() + 1);
        let trivial = (vec![Rational::zero(); n], Rational::one());
        out.push(trivial.clone());
        for (a, b) in rows {
            if a.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: a.len() });
            }
            if a.iter().all(Zero::is_zero) && b.is_zero() {
                return Err(Error::Domain("zero vector in a cut family".into()));
            }
            if a.iter().all(Zero::is_zero) && b.is_positive() {
                continue;
            }
            if !out.contains(&(a.clone(), b.clone())) {
                out.push((a, b));
            }
        }
        Ok(Self { n, rows: out })
    }

    pub fn from_i64(n: usize, rows: &[(&[i64], i64)]) -> Self {
        Self::new(n, rows.iter().map(|(a, b)| (crate::arith::rats(a), crate::arith::int(*b))).collect())
            .expect("well-formed rows")
    }

    pub fn from_polyhedron(p: &HPolyhedron) -> Result<Self> {
        Self::new(p.dim(), p.rows().map(|(a, b)| (a.clone(), b.clone())).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[(Vec<Rational>, Rational)] {
        &self.rows
    }

    /// Rows as vectors of `ℝⁿ⁺¹`.
    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|(a, b)| {
                let mut v = a.clone();
                v.push(b.clone());
                v
            })
            .collect()
    }
}

/// `{x : αx ≤ β for every row}`.
pub fn closure_region(omega: &CutFamily) -> Result<HPolyhedron> {
    let (a, b): (Vec<_>, Vec<_>) = omega
        .rows
        .iter()
        .filter(|(a, b)| !(a.iter().all(Zero::is_zero) && !b.is_negative()))
        .cloned()
        .unzip();
    HPolyhedron::new(omega.n, a, b)
}

/// Whether `αx ≤ β` holds on the region of `omega`.
pub fn is_valid<T: Field>(omega: &CutFamily, alpha: &[T], beta: &T) -> Result<bool> {
    if alpha.len() != omega.n {
        return Err(Error::DimensionMismatch { expected: omega.n, got: alpha.len() });
    }
    let region = closure_region(omega)?;
    if lp::feasible_point(region.a(), region.b(), omega.n).is_none() {
        return Err(Error::EmptyClosure);
    }
    let gens: Vec<Vec<T>> = omega.vectors().iter().map(|v| lift(v)).collect();
    let mut target = alpha.to_vec();
    target.push(beta.clone());
    Ok(lp::cone_membership(&gens, &target).is_some())
}

/// `cone(Ω) = cone(projected) ⊕ span(lineality)` with the first part pointed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealityDecomposition {
    pub lineality: Vec<Vec<Rational>>,
    pub projected: Vec<Vec<Rational>>,
}

impl LinealityDecomposition {
    /// Membership of `v` in `cone(Ω)` computed through the decomposition.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let p = if self.lineality.is_empty() {
            v.to_vec()
        } else {
            sub_vec(v, &proj_subspace(v, &self.lineality).expect("lineality basis is independent"))
        };
        if p.iter().all(Zero::is_zero) {
            return true;
        }
        lp::cone_membership(&self.projected, &p).is_some()
    }
}

pub fn decompose_lineality(omega: &CutFamily) -> LinealityDecomposition {
    decompose_cone(&omega.vectors())
}

pub fn decompose_cone(gens: &[Vec<Rational>]) -> LinealityDecomposition {
    let Some(dim) = gens.first().map(Vec::len) else {
        return LinealityDecomposition { lineality: Vec::new(), projected: Vec::new() };
    };
    // A generator lies in the lineality space iff its negative is in the cone,
    // and those generators span it.
    let two_sided: Vec<Vec<Rational>> =
        gens.iter().filter(|g| lp::cone_membership(gens, &neg_vec(g)).is_some()).cloned().collect();
    let (ech, _) = linalg::rref(&two_sided, dim);
    let lineality: Vec<Vec<Rational>> = ech.iter().map(|l| int_to_rat(&primitive(l))).collect();
    let mut projected: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        let p = if lineality.is_empty() {
            g.clone()
        } else {
            sub_vec(g, &proj_subspace(g, &lineality).expect("independent basis"))
        };
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        let p = int_to_rat(&primitive(&p));
        if !projected.contains(&p) {
            projected.push(p);
        }
    }
    LinealityDecomposition { lineality, projected }
}

/// Extreme rays of a pointed finitely generated cone, as coprime integer vectors.
pub fn extreme_rays(omega: &CutFamily) -> Result<Vec<IntVec>> {
    extreme_rays_of(&omega.vectors())
}

pub fn extreme_rays_of(gens: &[Vec<Rational>]) -> Result<Vec<IntVec>> {
    let dec = decompose_cone(gens);
    if !dec.lineality.is_empty() {
        return Err(Error::NotPointed);
    }
    let mut canon: Vec<IntVec> = Vec::new();
    for g in gens {
        if g.iter().all(Zero::is_zero) {
            continue;
        }
        let p = primitive(g);
        if !canon.contains(&p) {
            canon.push(p);
        }
    }
    let as_rat: Vec<Vec<Rational>> = canon.iter().map(|g| int_to_rat(g)).collect();
    let mut out: Vec<IntVec> = canon
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let others: Vec<Vec<Rational>> =
                as_rat.iter().enumerate().filter(|(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            others.is_empty() || lp::cone_membership(&others, &as_rat[*i]).is_none()
        })
        .map(|(_, g)| g.clone())
        .collect();
    out.sort();
    Ok(out)
}

/// Default tolerance of [`conic_limit`]: 2⁻⁵⁰.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 50)
}

/// The simplest rational (smallest denominator) in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn parallel(u: &[Rational], v: &[Rational]) -> bool {
    primitive(u) == primitive(v)
}

fn differences(seq: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    seq.windows(2).map(|w| sub_vec(&w[1], &w[0])).collect()
}

/// `‖u/|u| − v/|v|‖ ≤ tol` decided exactly through `cos ≥ 1 − tol²/2`.
fn directions_close(u: &[Rational], v: &[Rational], tol: &Rational) -> bool {
    let c = Rational::one() - tol * tol / Rational::from_integer(2.into());
    let uv = dot(u, v);
    if c.is_negative() {
        return true;
    }
    if !uv.is_positive() {
        return false;
    }
    &uv * &uv >= &c * &c * dot(u, u) * dot(v, v)
}

/// Limit direction of a sequence of nonzero vectors, up to positive scaling.
///
/// Decided on the tail (last half) of the finite sequence, in this order:
/// an exactly parallel tail; a tail that is exactly polynomial in the index
/// (its `k`-th differences are constant and nonzero), whose limit is the
/// leading difference; or a tail whose directions are Cauchy within `tol`,
/// whose limit is the last direction with each coordinate (scaled by the
/// largest magnitude) replaced by the simplest rational within `tol`.
pub fn conic_limit(seq: &[Vec<Rational>], tol: &Rational) -> Result<IntVec> {
    if seq.iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::Domain("conic limit of a sequence with a zero vector".into()));
    }
    let Some(last) = seq.last() else {
        return Err(Error::NoConvergence);
    };
    let tail = &seq[seq.len() / 2..];
    if tail.len() >= 2 && tail.iter().all(|v| parallel(v, last)) {
        return Ok(primitive(last));
    }
    let mut diffs = tail.to_vec();
    while diffs.len() >= 4 {
        diffs = differences(&diffs);
        if diffs.iter().all(|d| d.iter().all(Zero::is_zero)) {
            break;
        }
        if diffs.windows(2).all(|w| w[0] == w[1]) {
            return Ok(primitive(&diffs[0]));
        }
    }
    if tail.len() < 2 {
        return Err(Error::NoConvergence);
    }
    let half = tol / Rational::from_integer(2.into());
    if !tail.iter().all(|v| directions_close(v, last, &half)) {
        return Err(Error::NoConvergence);
    }
    let scale = last.iter().map(|x| x.abs()).max().unwrap();
    let snapped: Vec<Rational> = last
        .iter()
        .map(|x| {
            let w = x / &scale;
            simplest_between(&(&w - tol), &(&w + tol))
        })
        .collect();
    if snapped.iter().all(Zero::is_zero) {
        return Err(Error::NoConvergence);
    }
    Ok(primitive(&snapped))
}

/// Lexicographic comparison of rows, used for deterministic output.
pub fn cmp_rows(u: &(Vec<Rational>, Rational), v: &(Vec<Rational>, Rational)) -> Ordering {
    u.0.cmp(&v.0).then_with(|| u.1.cmp(&v.1))
}
