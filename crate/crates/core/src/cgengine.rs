//! Chvátal-Gomory cuts and closures.
//!
//! A CG cut of `K` for an integer direction `c` is `c·x ≤ ⌊σ_K(c)⌋`. The
//! closure `K'` intersects all of them. For a rational polyhedron it is
//! generated by the Hilbert bases of the vertex normal cones: any integer `c`
//! in such a cone is a nonnegative integer combination `Σ λ_h h`, and
//! `Σ λ_h ⌊h·v⌋ ≤ ⌊c·v⌋`, so the cut for `c` is implied.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{ceil_rat, floor_quad, floor_rat, int_to_rat, ExtValue, IntVec, QuadValue, Rational};
use crate::bodies::{ConvexBody, Recession};
use crate::conegeom::{self, CutFamily};
use crate::config::check_dim;
use crate::error::{Error, Result};
use crate::hilbert::{self, RationalCone, DEFAULT_BUDGET};
use crate::linalg::{dot, norm_inf, primitive, proj_subspace, sub_vec};
use crate::polytope::{HPolyhedron, VPolyhedron};

/// The cut `c·x ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CGCut {
    pub c: IntVec,
    pub rhs: BigInt,
}

impl CGCut {
    pub fn row(&self) -> (Vec<Rational>, Rational) {
        (int_to_rat(&self.c), Rational::from_integer(self.rhs.clone()))
    }
}

/// Whether a closure is exact or only the intersection of cuts up to a radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    OuterApproximation(usize),
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub cuts: Vec<CGCut>,
    pub polyhedron: HPolyhedron,
    pub exactness: Exactness,
    /// Largest `‖h‖∞` over the Hilbert basis elements used (exact closures).
    pub hilbert_radius: Option<BigInt>,
}

pub fn cuts_region(dim: usize, cuts: &[CGCut]) -> Result<HPolyhedron> {
    let (a, b) = cuts.iter().map(CGCut::row).unzip();
    HPolyhedron::new(dim, a, b)
}

/// `None` when `σ_K(c) = +∞`.
pub fn cg_cut(k: &ConvexBody, c: &[BigInt]) -> Result<Option<CGCut>> {
    match k.support(c)?.value {
        ExtValue::PlusInfinity => Ok(None),
        ExtValue::Finite(v) => Ok(Some(CGCut { c: c.to_vec(), rhs: floor_quad(&v) })),
    }
}

/// Primitive integer vectors with `‖c‖∞ ≤ radius`, lexicographically ordered.
pub fn primitive_directions(dim: usize, radius: usize) -> Vec<IntVec> {
    let r = radius as i64;
    let mut out = Vec::new();
    let mut cur = vec![-r; dim];
    loop {
        let v: IntVec = cur.iter().map(|&x| BigInt::from(x)).collect();
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_one() {
            out.push(v);
        }
        let mut j = dim;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < r {
                cur[j] += 1;
                break;
            }
            cur[j] = -r;
        }
    }
}

/// The CG cuts of `K` for every direction in `dirs`, computed in parallel.
pub fn cuts_for(k: &ConvexBody, dirs: &[IntVec]) -> Result<Vec<CGCut>> {
    let results: Vec<Result<Option<CGCut>>> = dirs.par_iter().map(|c| cg_cut(k, c)).collect();
    let mut cuts = Vec::new();
    for r in results {
        if let Some(c) = r? {
            cuts.push(c);
        }
    }
    Ok(cuts)
}

/// An irredundant subfamily of `cuts` with the same region.
///
/// Keeps one cut per facet and every cut that holds with equality on the
/// whole region; the result is checked against the full family.
pub fn irredundant_cuts(dim: usize, cuts: &[CGCut]) -> Result<Vec<CGCut>> {
    let full = cuts_region(dim, cuts)?;
    let v = full.vrep()?;
    if v.is_empty() {
        return Ok(cuts.to_vec());
    }
    let rows: Vec<(Vec<Rational>, Rational)> = cuts.iter().map(CGCut::row).collect();
    let tight: Vec<Vec<bool>> = rows
        .iter()
        .map(|(a, b)| {
            v.vertices
                .iter()
                .map(|x| &dot(a, x) == b)
                .chain(v.rays.iter().map(|r| dot(a, r).is_zero()))
                .collect()
        })
        .collect();
    let everywhere: Vec<bool> = tight.iter().map(|t| t.iter().all(|&b| b)).collect();
    let subset = |s: &[bool], t: &[bool]| s.iter().zip(t).all(|(&x, &y)| !x || y);
    let mut kept: Vec<usize> = (0..cuts.len()).filter(|&i| everywhere[i]).collect();
    let mut faces: Vec<Vec<bool>> = Vec::new();
    for i in 0..cuts.len() {
        if everywhere[i] || !tight[i].iter().any(|&b| b) {
            continue;
        }
        let dominated = (0..cuts.len()).any(|j| {
            !everywhere[j] && tight[j] != tight[i] && subset(&tight[i], &tight[j])
        });
        if dominated || faces.contains(&tight[i]) {
            continue;
        }
        faces.push(tight[i].clone());
        kept.push(i);
    }
    kept.sort();
    let chosen: Vec<CGCut> = kept.iter().map(|&i| cuts[i].clone()).collect();
    let region = cuts_region(dim, &chosen)?;
    if region.set_eq(&full)? {
        Ok(chosen)
    } else {
        Ok(cuts.to_vec())
    }
}

fn report(dim: usize, cuts: Vec<CGCut>, exactness: Exactness, hilbert_radius: Option<BigInt>) -> Result<ClosureReport> {
    let cuts = irredundant_cuts(dim, &cuts)?;
    let polyhedron = cuts_region(dim, &cuts)?;
    Ok(ClosureReport { cuts, polyhedron, exactness, hilbert_radius })
}

/// Intersection of the CG cuts with `‖c‖∞ ≤ radius`.
pub fn closure_bruteforce(k: &ConvexBody, radius: usize) -> Result<ClosureReport> {
    if radius == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    check_dim(k.dim())?;
    let dirs = primitive_directions(k.dim(), radius);
    let cuts = cuts_for(k, &dirs)?;
    report(k.dim(), cuts, Exactness::OuterApproximation(radius), None)
}

/// Tight rows of `p` at the point `v`, as integer vectors.
fn tight_rows(p: &HPolyhedron, v: &[Rational]) -> Vec<IntVec> {
    p.rows().filter(|(a, b)| &dot(a, v) == *b).map(|(a, _)| primitive(a)).collect()
}

/// Pointed cones covering `cone(gens)`: the part orthogonal to the lineality
/// space together with each sign choice of a lineality basis.
fn pointed_pieces(dim: usize, gens: &[IntVec]) -> Result<Vec<RationalCone>> {
    let rat: Vec<Vec<Rational>> = gens.iter().map(|g| int_to_rat(g)).collect();
    let dec = conegeom::decompose_cone(&rat);
    if dec.lineality.is_empty() {
        return Ok(vec![RationalCone::new(dim, gens.to_vec())?]);
    }
    let lin: Vec<IntVec> = dec.lineality.iter().map(|l| primitive(l)).collect();
    let base: Vec<IntVec> = rat
        .iter()
        .map(|g| sub_vec(g, &proj_subspace(g, &dec.lineality).expect("independent")))
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .map(|g| primitive(&g))
        .collect();
    let k = lin.len();
    let mut pieces = Vec::with_capacity(1 << k);
    for mask in 0..(1u32 << k) {
        let mut g = base.clone();
        for (i, l) in lin.iter().enumerate() {
            if mask & (1 << i) == 0 {
                g.push(l.clone());
            } else {
                g.push(l.iter().map(|x| -x).collect());
            }
        }
        pieces.push(RationalCone::new(dim, g)?);
    }
    Ok(pieces)
}

/// The exact CG closure of a rational polyhedron.
pub fn schrijver_closure(p: &HPolyhedron) -> Result<ClosureReport> {
    let dim = p.dim();
    check_dim(dim)?;
    let v = p.vrep()?;
    if v.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let mut by_dir: BTreeMap<IntVec, BigInt> = BTreeMap::new();
    let mut radius = BigInt::zero();
    for x in &v.vertices {
        let gens = tight_rows(p, x);
        if gens.is_empty() {
            continue;
        }
        for piece in pointed_pieces(dim, &gens)? {
            for h in hilbert::hilbert_basis(&piece)? {
                let n = norm_inf(&h);
                if n > radius {
                    radius = n;
                }
                let rhs = floor_rat(&dot(&int_to_rat(&h), x));
                by_dir.entry(h).or_insert(rhs);
            }
        }
    }
    let cuts: Vec<CGCut> = by_dir.into_iter().map(|(c, rhs)| CGCut { c, rhs }).collect();
    report(dim, cuts, Exactness::Exact, Some(radius))
}

/// A box `lower ≤ x ≤ upper` of lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub lower: IntVec,
    pub upper: IntVec,
}

impl LatticeBox {
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        Self { lower: vec![BigInt::from(lo); dim], upper: vec![BigInt::from(hi); dim] }
    }

    pub fn points(&self) -> Vec<IntVec> {
        let dim = self.lower.len();
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = self.lower.clone();
        loop {
            out.push(cur.clone());
            let mut j = dim;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < self.upper[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = self.lower[j].clone();
            }
        }
    }

    /// The box grown by half its widest side (at least 1) in every direction.
    pub fn enlarged(&self) -> Self {
        let w = self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).max().unwrap_or_else(BigInt::zero);
        let m = std::cmp::max(BigInt::one(), (w + 1u32) / 2u32);
        Self {
            lower: self.lower.iter().map(|l| l - &m).collect(),
            upper: self.upper.iter().map(|u| u + &m).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HullReport {
    pub vpoly: VPolyhedron,
    pub hpoly: HPolyhedron,
    /// The box whose hull agreed with the next enlargement.
    pub certified_box: LatticeBox,
}

/// Number of enlargements tried before giving up.
pub const HULL_ROUNDS: usize = 3;

fn hull_in_box(k: &ConvexBody, bx: &LatticeBox, rays: &[Vec<Rational>]) -> Result<HPolyhedron> {
    let dim = k.dim();
    let pts = bx.points();
    let member: Vec<Result<bool>> = pts.par_iter().map(|x| k.contains_int(x)).collect();
    let mut inside = Vec::new();
    for (x, m) in pts.iter().zip(member) {
        if m? {
            inside.push(int_to_rat(x));
        }
    }
    VPolyhedron::new(dim, inside, rays.to_vec(), Vec::new())?.to_h()
}

/// `conv(K ∩ ℤⁿ)`, from the lattice points in `bx` plus the rational
/// recession directions of `K`, accepted once an enlarged box gives the same set.
pub fn integer_hull(k: &ConvexBody, bx: &LatticeBox) -> Result<HullReport> {
    let dim = k.dim();
    check_dim(dim)?;
    if bx.lower.len() != dim || bx.upper.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: bx.lower.len() });
    }
    let rays: Vec<Vec<Rational>> = match k.recession()? {
        Recession::Rational(c) => c.generators().iter().map(|g| int_to_rat(g)).collect(),
        Recession::Irrational { .. } => Vec::new(),
    };
    let mut cur_box = bx.clone();
    let mut cur = hull_in_box(k, &cur_box, &rays)?;
    for _ in 0..HULL_ROUNDS {
        let next_box = cur_box.enlarged();
        let next = hull_in_box(k, &next_box, &rays)?;
        if cur.set_eq(&next)? {
            let vpoly = cur.vrep()?.clone();
            return Ok(HullReport { vpoly, hpoly: cur, certified_box: cur_box });
        }
        cur_box = next_box;
        cur = next;
    }
    Err(Error::UnstableBox)
}

/// Integer hull of a bounded rational polyhedron (exact: the box covers it).
pub fn polytope_integer_hull(p: &HPolyhedron) -> Result<HPolyhedron> {
    let v = p.vrep()?;
    if !v.is_bounded() {
        return Err(Error::Precondition("polyhedron must be bounded".into()));
    }
    if v.is_empty() {
        return Ok(p.clone());
    }
    let dim = p.dim();
    let lower = (0..dim).map(|j| v.vertices.iter().map(|x| ceil_rat(&x[j])).min().unwrap()).collect();
    let upper = (0..dim).map(|j| v.vertices.iter().map(|x| floor_rat(&x[j])).max().unwrap()).collect();
    let bx = LatticeBox { lower, upper };
    let pts: Vec<Vec<Rational>> = bx.points().iter().map(|x| int_to_rat(x)).filter(|x| p.contains(x)).collect();
    VPolyhedron::new(dim, pts, Vec::new(), Vec::new())?.to_h()
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub rank: usize,
    pub trace: Vec<HPolyhedron>,
}

/// Number of closure rounds until the integer hull is reached.
pub fn chvatal_rank(p: &HPolyhedron, max_iter: usize) -> Result<RankReport> {
    let hull = polytope_integer_hull(p)?;
    let mut cur = p.clone();
    let mut trace = vec![cur.clone()];
    for t in 0..=max_iter {
        if cur.set_eq(&hull)? {
            return Ok(RankReport { rank: t, trace });
        }
        if t == max_iter {
            break;
        }
        cur = if cur.is_empty()? { cur } else { schrijver_closure(&cur)?.polyhedron };
        trace.push(cur.clone());
    }
    Err(Error::Exceeded(max_iter))
}

/// Cuts grouped at a vertex `p*` of `P` whose fractional parts `cⁱ·p*` agree,
/// with `Λ` certifying each of them.
#[derive(Clone, Debug)]
pub struct GroupedCutWitness {
    pub p_star: Vec<Rational>,
    pub i_star: usize,
    pub members: Vec<usize>,
    pub lambda: Vec<CGCut>,
}

pub fn grouped_cut_witness(p: &HPolyhedron, k: &ConvexBody, cuts: &[CGCut]) -> Result<GroupedCutWitness> {
    let dim = p.dim();
    let v = p.vrep()?;
    if v.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    for x in &v.vertices {
        if !k.contains_rat(x)? {
            return Err(Error::Precondition("P is not contained in K".into()));
        }
    }
    for r in v.recession_generators()? {
        if !k.recedes_along(&r)? {
            return Err(Error::Precondition("P is not contained in K".into()));
        }
    }
    // Rows of P must themselves be CG cuts of K.
    let mut f_rows = Vec::new();
    for (a, b) in p.rows() {
        let c = primitive(a);
        let cut = cg_cut(k, &c)?.ok_or_else(|| Error::Precondition("a row of P is not a CG cut of K".into()))?;
        if Rational::from_integer(cut.rhs.clone()) != *b || int_to_rat(&c) != *a {
            return Err(Error::Precondition("a row of P is not a CG cut of K".into()));
        }
        f_rows.push(cut);
    }
    let mut argmax = Vec::with_capacity(cuts.len());
    for cut in cuts {
        let cr = int_to_rat(&cut.c);
        let sup = v.support(&cr)?;
        let value = sup.value().cloned().ok_or_else(|| Error::Precondition("cut direction unbounded on P".into()))?;
        if value <= Rational::from_integer(cut.rhs.clone()) {
            return Err(Error::Precondition("cut is valid for P".into()));
        }
        let best = v.vertices.iter().filter(|x| dot(&cr, x) == value).min().cloned().unwrap();
        argmax.push(best);
    }
    let build = |p_star: Vec<Rational>, i_star: usize, members: Vec<usize>| -> Result<GroupedCutWitness> {
        let mut lambda = f_rows.clone();
        lambda.push(cuts[i_star].clone());
        let fam = CutFamily::new(dim, lambda.iter().map(CGCut::row).collect())?;
        for &i in members.iter().chain(std::iter::once(&i_star)) {
            let (a, b) = cuts[i].row();
            if !conegeom::is_valid(&fam, &a, &b)? {
                return Err(Error::VerificationFailed(format!("cut {i} is not implied by the witness family")));
            }
        }
        Ok(GroupedCutWitness { p_star, i_star, members, lambda })
    };
    if cuts.len() == 1 {
        return build(argmax[0].clone(), 0, Vec::new());
    }
    let mut groups: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
    for (i, x) in argmax.iter().enumerate() {
        groups.entry(x.clone()).or_default().push(i);
    }
    let mut best: Option<(Vec<Rational>, usize, Vec<usize>)> = None;
    for (p_star, idx) in groups {
        if idx.len() < 2 {
            continue;
        }
        let normal = RationalCone::new(dim, tight_rows(p, &p_star))?;
        let vs: Vec<IntVec> = idx.iter().map(|&i| cuts[i].c.clone()).collect();
        if let Some(w) = hilbert::chain_witness(&vs, &p_star, &normal, DEFAULT_BUDGET)? {
            let members: Vec<usize> = w.members.iter().map(|&m| idx[m]).collect();
            if best.as_ref().is_none_or(|b| members.len() > b.2.len()) {
                best = Some((p_star.clone(), idx[w.i_star], members));
            }
        }
    }
    let (p_star, i_star, members) = best.ok_or(Error::NoBucket)?;
    build(p_star, i_star, members)
}

/// `(c, ⌊σ_K(c)⌋)` as a vector of `ℝⁿ⁺¹`, or `None` for unbounded `c`.
pub fn cut_vector(k: &ConvexBody, c: &[BigInt]) -> Result<Option<Vec<Rational>>> {
    Ok(cg_cut(k, c)?.map(|cut| {
        let mut v = int_to_rat(&cut.c);
        v.push(Rational::from_integer(cut.rhs));
        v
    }))
}

/// Whether `σ_K` evaluated at an integer direction is at least `rhs`.
pub fn support_at_least(k: &ConvexBody, c: &[BigInt], rhs: &Rational) -> Result<bool> {
    Ok(match k.support(c)?.value {
        ExtValue::PlusInfinity => true,
        ExtValue::Finite(v) => !(&v - &QuadValue::from(rhs)).signum().is_lt(),
    })
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}
