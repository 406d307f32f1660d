//! Lattice points of rational cones: Hilbert bases, integer decompositions,
//! Dickson-minimal elements and the bucket witness used by the closure
//! arguments.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int_to_rat, IntVec, Rational};
use crate::config::check_dim;
use crate::conegeom::{decompose_cone, extreme_rays_of};
use crate::error::{Error, Result};
use crate::linalg::{self, primitive_int, rank};
use crate::polytope::cone_generators;

fn idot(u: &[BigInt], v: &[BigInt]) -> BigInt {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn isub(u: &[BigInt], v: &[BigInt]) -> IntVec {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// `cone(generators)` with its inequality description cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    dim: usize,
    generators: Vec<IntVec>,
    facets: Vec<IntVec>,
    equalities: Vec<IntVec>,
}

impl RationalCone {
    pub fn new(dim: usize, generators: Vec<IntVec>) -> Result<Self> {
        let mut gens: Vec<IntVec> = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
            }
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            let p = primitive_int(&g);
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        // cone = {x : r·x ≤ 0 for rays r of the polar, l·x = 0 for its lineality}
        let (equalities, facets) = cone_generators(&gens, dim);
        Ok(Self { dim, generators: gens, facets, equalities })
    }

    pub fn from_i64(gens: &[&[i64]]) -> Self {
        let dim = gens.first().map_or(0, |g| g.len());
        Self::new(dim, gens.iter().map(|g| crate::arith::ints(g)).collect()).expect("well-formed generators")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equalities(&self) -> &[IntVec] {
        &self.equalities
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.facets.iter().all(|f| !idot(f, x).is_positive()) && self.equalities.iter().all(|e| idot(e, x).is_zero())
    }

    pub fn contains_rat(&self, x: &[Rational]) -> bool {
        let fr = |f: &IntVec| linalg::dot(&int_to_rat(f), x);
        self.facets.iter().all(|f| !fr(f).is_positive()) && self.equalities.iter().all(|e| fr(e).is_zero())
    }

    pub fn is_pointed(&self) -> bool {
        let gens: Vec<Vec<Rational>> = self.generators.iter().map(|g| int_to_rat(g)).collect();
        decompose_cone(&gens).lineality.is_empty()
    }

    pub fn extreme_rays(&self) -> Result<Vec<IntVec>> {
        let gens: Vec<Vec<Rational>> = self.generators.iter().map(|g| int_to_rat(g)).collect();
        extreme_rays_of(&gens)
    }
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        choose(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Lattice points `Σ μ_i s_i` with every `μ_i ∈ [0, 1)`, for independent `s`.
fn parallelepiped_points(s: &[IntVec], dim: usize) -> Vec<IntVec> {
    let mut lo = vec![BigInt::zero(); dim];
    let mut hi = vec![BigInt::zero(); dim];
    for g in s {
        for j in 0..dim {
            if g[j].is_negative() {
                lo[j] += &g[j];
            } else {
                hi[j] += &g[j];
            }
        }
    }
    let rows: Vec<Vec<Rational>> = (0..dim).map(|j| s.iter().map(|g| Rational::from_integer(g[j].clone())).collect()).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let xr = int_to_rat(&x);
        if let Some(mu) = linalg::solve(&rows, &xr, s.len()) {
            let inside = mu.iter().all(|m| !m.is_negative() && m < &Rational::one());
            let exact = linalg::mat_vec(&rows, &mu) == xr;
            if inside && exact {
                out.push(x.clone());
            }
        }
        // odometer over the bounding box
        let mut j = 0;
        loop {
            if j == dim {
                return out;
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// The minimal Hilbert basis of `C ∩ ℤⁿ`, sorted lexicographically.
pub fn hilbert_basis(c: &RationalCone) -> Result<Vec<IntVec>> {
    check_dim(c.dim)?;
    if c.generators.is_empty() {
        return Ok(Vec::new());
    }
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    let rays = c.extreme_rays()?;
    let ray_rat: Vec<Vec<Rational>> = rays.iter().map(|r| int_to_rat(r)).collect();
    let d = rank(&ray_rat, c.dim);
    let mut subsets = Vec::new();
    choose(rays.len(), d, 0, &mut Vec::new(), &mut subsets);
    let mut candidates: Vec<IntVec> = rays.clone();
    for sub in subsets {
        let s: Vec<IntVec> = sub.iter().map(|&i| rays[i].clone()).collect();
        let sr: Vec<Vec<Rational>> = s.iter().map(|g| int_to_rat(g)).collect();
        if rank(&sr, c.dim) < d {
            continue;
        }
        for p in parallelepiped_points(&s, c.dim) {
            if p.iter().any(|x| !x.is_zero()) && !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }
    let mut basis: Vec<IntVec> = candidates
        .iter()
        .filter(|x| !candidates.iter().any(|g| g != *x && c.contains(&isub(x, g))))
        .cloned()
        .collect();
    basis.sort();
    Ok(basis)
}

/// Nonnegative integer coefficients of `x` over `basis`, by depth-first
/// search pruned with exact cone membership. `None` when `x ∉ C ∩ ℤⁿ`.
pub fn decompose(x: &[BigInt], c: &RationalCone, basis: &[IntVec], budget: usize) -> Result<Option<Vec<BigInt>>> {
    if !c.contains(x) {
        return Ok(None);
    }
    let mut coeffs = vec![BigInt::zero(); basis.len()];
    let mut failed: HashSet<(IntVec, usize)> = HashSet::new();
    let mut nodes = 0usize;
    let found = dfs(x.to_vec(), 0, c, basis, &mut coeffs, &mut failed, &mut nodes, budget)?;
    Ok(found.then_some(coeffs))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    x: IntVec,
    start: usize,
    c: &RationalCone,
    basis: &[IntVec],
    coeffs: &mut Vec<BigInt>,
    failed: &mut HashSet<(IntVec, usize)>,
    nodes: &mut usize,
    budget: usize,
) -> Result<bool> {
    if x.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::SearchBudgetExceeded);
    }
    if failed.contains(&(x.clone(), start)) {
        return Ok(false);
    }
    for i in start..basis.len() {
        let rest = isub(&x, &basis[i]);
        if !c.contains(&rest) {
            continue;
        }
        coeffs[i] += 1;
        if dfs(rest, i, c, basis, coeffs, failed, nodes, budget)? {
            return Ok(true);
        }
        coeffs[i] -= 1;
    }
    failed.insert((x, start));
    Ok(false)
}

/// Default node budget for [`decompose`].
pub const DEFAULT_BUDGET: usize = 1_000_000;

fn dominates(big: &[BigInt], small: &[BigInt]) -> bool {
    big.iter().zip(small).all(|(a, b)| a >= b)
}

/// Minimal elements of `s` under the componentwise order, first occurrences
/// in input order.
pub fn dickson_minimal(s: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = Vec::new();
    for x in s {
        let beaten = s.iter().any(|y| y != x && dominates(x, y));
        if !beaten && !out.contains(x) {
            out.push(x.clone());
        }
    }
    out
}

/// Indices sharing the fractional part `frac` of `vⁱ·q`, all dominating the
/// Hilbert coefficients of `v^{i*}` (hence `vⁱ − v^{i*} ∈ C`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub i_star: usize,
    pub members: Vec<usize>,
    pub frac: Rational,
}

/// Fractional part of `v·q`, using the common denominator of `q`.
pub fn frac_part(v: &[BigInt], q: &[Rational]) -> Rational {
    let den = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let z: IntVec = q.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    Rational::new(idot(v, &z).mod_floor(&den), den)
}

pub fn chain_witness(vs: &[IntVec], q: &[Rational], c: &RationalCone, budget: usize) -> Result<Option<ChainWitness>> {
    for v in vs {
        if !c.contains(v) {
            return Err(Error::Precondition("vector outside the cone".into()));
        }
    }
    let basis = hilbert_basis(c)?;
    let mut buckets: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for (i, v) in vs.iter().enumerate() {
        buckets.entry(frac_part(v, q)).or_default().push(i);
    }
    let mut best: Option<ChainWitness> = None;
    for (frac, idx) in buckets {
        if idx.len() < 2 {
            continue;
        }
        let mut lambdas = Vec::with_capacity(idx.len());
        for &i in &idx {
            let l = decompose(&vs[i], c, &basis, budget)?.expect("members of C ∩ ℤⁿ decompose");
            lambdas.push(l);
        }
        for (a, &i_star) in idx.iter().enumerate() {
            let members: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a && dominates(&lambdas[b], &lambdas[a]))
                .map(|(_, &i)| i)
                .collect();
            if members.is_empty() {
                continue;
            }
            if best.as_ref().is_none_or(|w| members.len() > w.members.len()) {
                best = Some(ChainWitness { i_star, members, frac: frac.clone() });
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ints, rat};

    #[test]
    fn basis_examples() {
        assert_eq!(hilbert_basis(&RationalCone::from_i64(&[&[1, 0], &[0, 1]])).unwrap(), vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(
            hilbert_basis(&RationalCone::from_i64(&[&[1, 0], &[1, 2]])).unwrap(),
            vec![ints(&[1, 0]), ints(&[1, 1]), ints(&[1, 2])]
        );
        assert_eq!(
            hilbert_basis(&RationalCone::from_i64(&[&[1, 0], &[1, 4]])).unwrap(),
            vec![ints(&[1, 0]), ints(&[1, 1]), ints(&[1, 2]), ints(&[1, 3]), ints(&[1, 4])]
        );
        assert!(matches!(hilbert_basis(&RationalCone::from_i64(&[&[1, 0], &[-1, 0]])), Err(Error::NotPointed)));
    }

    #[test]
    fn basis_of_non_simplicial_and_lower_dimensional_cones() {
        // square pyramid over the unit square at height 1
        let c = RationalCone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(hilbert_basis(&c).unwrap().len(), 4);
        // a ray inside ℝ²
        let c = RationalCone::from_i64(&[&[2, 4]]);
        assert_eq!(hilbert_basis(&c).unwrap(), vec![ints(&[1, 2])]);
        // a 2-D cone inside ℝ³
        let c = RationalCone::from_i64(&[&[1, 0, 0], &[1, 2, 0]]);
        assert_eq!(hilbert_basis(&c).unwrap(), vec![ints(&[1, 0, 0]), ints(&[1, 1, 0]), ints(&[1, 2, 0])]);
    }

    #[test]
    fn decompose_examples() {
        let c = RationalCone::from_i64(&[&[1, 0], &[1, 2]]);
        let basis = hilbert_basis(&c).unwrap();
        let l = decompose(&ints(&[2, 2]), &c, &basis, DEFAULT_BUDGET).unwrap().unwrap();
        let sum: IntVec = (0..2).map(|j| basis.iter().zip(&l).map(|(h, k)| &h[j] * k).sum()).collect();
        assert_eq!(sum, ints(&[2, 2]));
        let l = decompose(&ints(&[0, 0]), &c, &basis, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(l.iter().all(Zero::is_zero));
        let q = RationalCone::from_i64(&[&[1, 0], &[0, 1]]);
        let qb = hilbert_basis(&q).unwrap();
        assert_eq!(decompose(&ints(&[-1, 0]), &q, &qb, DEFAULT_BUDGET).unwrap(), None);
        assert!(matches!(decompose(&ints(&[50, 50]), &q, &qb, 3), Err(Error::SearchBudgetExceeded)));
    }

    #[test]
    fn dickson_examples() {
        let s = vec![ints(&[1, 2]), ints(&[2, 1]), ints(&[3, 3])];
        assert_eq!(dickson_minimal(&s), vec![ints(&[1, 2]), ints(&[2, 1])]);
        assert_eq!(dickson_minimal(&[ints(&[1, 1]), ints(&[2, 2])]), vec![ints(&[1, 1])]);
        assert_eq!(dickson_minimal(&[ints(&[4, 0])]), vec![ints(&[4, 0])]);
    }

    #[test]
    fn chain_witness_examples() {
        let quad = RationalCone::from_i64(&[&[1, 0], &[0, 1]]);
        let vs = vec![ints(&[1, 1]), ints(&[7, 7]), ints(&[13, 13]), ints(&[2, 2])];
        let w = chain_witness(&vs, &[rat(1, 2), rat(1, 3)], &quad, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w.i_star, 0);
        assert_eq!(w.members, vec![1, 2]);
        assert_eq!(w.frac, rat(5, 6));
        let vs = vec![ints(&[1, 0]), ints(&[2, 0])];
        let w = chain_witness(&vs, &[int(0), int(0)], &quad, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!((w.i_star, w.members), (0, vec![1]));
        let vs = vec![ints(&[1, 0]), ints(&[2, 3])];
        assert_eq!(chain_witness(&vs, &[rat(1, 7), int(0)], &quad, DEFAULT_BUDGET).unwrap(), None);
        // shared fractional part but incomparable coefficients
        let vs = vec![ints(&[1, 0]), ints(&[0, 1])];
        assert_eq!(chain_witness(&vs, &[int(0), int(0)], &quad, DEFAULT_BUDGET).unwrap(), None);
    }
}
