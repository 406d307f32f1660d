//! Rational polyhedra in inequality (H) and generator (V) form.
//!
//! Conversion in both directions runs the double description method on the
//! homogenised cone. Rows, rays and lineality vectors are kept as coprime
//! integer vectors, so outputs are canonical and sort lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{int_to_rat, Field, IntVec, QuadValue, Rational};
use crate::config::check_dim;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, lift, primitive, primitive_int, proj_subspace, rank, sub_vec};
use crate::lp::{self, LpResult};

fn idot(u: &[BigInt], v: &[BigInt]) -> BigInt {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn icombine(s: &BigInt, u: &[BigInt], t: &BigInt, v: &[BigInt]) -> IntVec {
    let w: IntVec = u.iter().zip(v).map(|(a, b)| s * a + t * b).collect();
    primitive_int(&w)
}

/// Generators of the cone `{y : h·y ≤ 0 for every h in rows}` as
/// `(lineality basis, extreme rays)`, both coprime integer vectors.
pub fn cone_generators(rows: &[IntVec], dim: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let unit = |i: usize| -> IntVec { (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect() };
    let mut lin: Vec<IntVec> = (0..dim).map(unit).collect();
    let mut rays: Vec<IntVec> = Vec::new();
    // Indices (into `rows`) of processed constraints tight at each ray.
    let mut tight: Vec<BTreeSet<usize>> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();
    for (k, h) in rows.iter().enumerate() {
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !idot(h, l).is_zero()) {
            let mut l0 = lin.remove(p);
            let mut hl0 = idot(h, &l0);
            if hl0.is_positive() {
                l0 = l0.iter().map(|x| -x).collect();
                hl0 = -hl0;
            }
            let w = -&hl0;
            for l in lin.iter_mut() {
                let hl = idot(h, l);
                if !hl.is_zero() {
                    *l = icombine(&w, l, &hl, &l0);
                }
            }
            for (r, t) in rays.iter_mut().zip(tight.iter_mut()) {
                let hr = idot(h, r);
                if !hr.is_zero() {
                    *r = icombine(&w, r, &hr, &l0);
                }
                t.insert(k);
            }
            rays.push(l0);
            tight.push(processed.iter().copied().collect());
            processed.push(k);
            continue;
        }
        let target = dim as isize - lin.len() as isize - 2;
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(h, r)).collect();
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            if !v.is_positive() {
                let mut t = tight[i].clone();
                if v.is_zero() {
                    t.insert(k);
                }
                new_rays.push(rays[i].clone());
                new_tight.push(t);
            }
        }
        for (i, vp) in vals.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (j, vn) in vals.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common: BTreeSet<usize> = tight[i].intersection(&tight[j]).copied().collect();
                if target < 0 || (common.len() as isize) < target {
                    continue;
                }
                let sub: Vec<Vec<Rational>> = common.iter().map(|&c| int_to_rat(&rows[c])).collect();
                if rank(&sub, dim) as isize != target {
                    continue;
                }
                // vp > 0 > vn: vp·n − vn·p is tight at h with positive weights.
                new_rays.push(icombine(vp, &rays[j], &-vn, &rays[i]));
                let mut t = common;
                t.insert(k);
                new_tight.push(t);
            }
        }
        rays = new_rays;
        tight = new_tight;
        processed.push(k);
    }
    let mut seen = BTreeSet::new();
    rays.retain(|r| seen.insert(r.clone()));
    (lin, rays)
}

fn rat_row_to_int(a: &[Rational], b: &Rational) -> IntVec {
    let mut v: Vec<Rational> = a.to_vec();
    v.push(b.clone());
    primitive(&v)
}

fn lex_cmp(u: &[Rational], v: &[Rational]) -> Ordering {
    u.iter().zip(v).map(|(a, b)| a.cmp(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// `{x : Ax ≤ b}`. Rows are scaled to coprime integer normals on construction.
#[derive(Clone, Debug)]
pub struct HPolyhedron {
    dim: usize,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    vcache: OnceLock<VPolyhedron>,
}

impl PartialEq for HPolyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.a == other.a && self.b == other.b
    }
}

impl HPolyhedron {
    pub fn new(dim: usize, a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        let mut rows_a = Vec::with_capacity(a.len());
        let mut rows_b = Vec::with_capacity(b.len());
        for (row, rhs) in a.into_iter().zip(b) {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            let (r, s) = Self::normalise_row(row, rhs);
            rows_a.push(r);
            rows_b.push(s);
        }
        Ok(Self { dim, a: rows_a, b: rows_b, vcache: OnceLock::new() })
    }

    /// Convenience constructor from integer rows `(a, b)` meaning `a·x ≤ b`.
    pub fn from_i64(dim: usize, rows: &[(&[i64], i64)]) -> Self {
        let a = rows.iter().map(|(r, _)| crate::arith::rats(r)).collect();
        let b = rows.iter().map(|(_, s)| crate::arith::int(*s)).collect();
        Self::new(dim, a, b).expect("well-formed rows")
    }

    /// The whole space.
    pub fn universe(dim: usize) -> Self {
        Self { dim, a: Vec::new(), b: Vec::new(), vcache: OnceLock::new() }
    }

    fn normalise_row(a: Vec<Rational>, b: Rational) -> (Vec<Rational>, Rational) {
        if a.iter().all(Zero::is_zero) {
            let s = match b.cmp(&Rational::zero()) {
                Ordering::Less => -Rational::one(),
                _ => Rational::zero(),
            };
            return (a, s);
        }
        let p = primitive(&a);
        // a = λ p with λ > 0
        let idx = p.iter().position(|x| !x.is_zero()).unwrap();
        let lambda = &a[idx] / Rational::from_integer(p[idx].clone());
        (int_to_rat(&p), b / lambda)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Vec<Rational>, &Rational)> {
        self.a.iter().zip(&self.b)
    }

    pub fn with_row(&self, a: Vec<Rational>, b: Rational) -> Result<Self> {
        let mut rows = self.a.clone();
        let mut rhs = self.b.clone();
        rows.push(a);
        rhs.push(b);
        Self::new(self.dim, rows, rhs)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut a = self.a.clone();
        a.extend(other.a.iter().cloned());
        let mut b = self.b.clone();
        b.extend(other.b.iter().cloned());
        Self::new(self.dim, a, b)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows().all(|(a, b)| &dot(a, x) <= b)
    }

    pub fn contains_generic<T: Field>(&self, x: &[T]) -> bool {
        self.rows().all(|(a, b)| !dot(&lift::<T>(a), x).fsub(&T::from_rational(b)).is_fpos())
    }

    /// The V-representation, computed once.
    pub fn vrep(&self) -> Result<&VPolyhedron> {
        if let Some(v) = self.vcache.get() {
            return Ok(v);
        }
        let v = dd_convert(self)?;
        Ok(self.vcache.get_or_init(|| v))
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.vrep()?.is_empty())
    }

    /// `sup c·x` by exact LP.
    pub fn support(&self, c: &[Rational]) -> Result<Sup<Rational>> {
        match lp::maximize(&self.a, &self.b, c) {
            LpResult::Optimal { x, value } => Ok(Sup::Finite { value, argmax: x }),
            LpResult::Unbounded => Ok(Sup::Infinite),
            LpResult::Infeasible => Err(Error::EmptyPolyhedron),
        }
    }

    /// `sup c·x` for a direction over any field, through the V-representation.
    pub fn support_generic<T: Field>(&self, c: &[T]) -> Result<Sup<T>> {
        self.vrep()?.support(c)
    }

    pub fn recession_cone(&self) -> Result<Vec<Vec<Rational>>> {
        self.vrep()?.recession_generators()
    }

    pub fn lineality_space(&self) -> Result<Vec<Vec<Rational>>> {
        let v = self.vrep()?;
        if v.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Ok(v.lineality.clone())
    }

    /// Irredundant description: facets plus implicit equalities as paired rows.
    pub fn remove_redundant(&self) -> Result<Self> {
        self.vrep()?.to_h()
    }

    pub fn is_subset(&self, other: &Self) -> Result<Containment> {
        is_subset(self, other)
    }

    pub fn set_eq(&self, other: &Self) -> Result<bool> {
        Ok(is_subset(self, other)?.holds() && is_subset(other, self)?.holds())
    }

    pub fn face_of(&self, c: &[Rational]) -> Result<Face> {
        face_of(self, c)
    }

    /// Rows sorted lexicographically with duplicates removed.
    pub fn sorted(&self) -> Self {
        let mut rows: Vec<(Vec<Rational>, Rational)> = self.rows().map(|(a, b)| (a.clone(), b.clone())).collect();
        rows.sort_by(|x, y| lex_cmp(&x.0, &y.0).then_with(|| x.1.cmp(&y.1)));
        rows.dedup();
        let (a, b) = rows.into_iter().unzip();
        Self { dim: self.dim, a, b, vcache: OnceLock::new() }
    }
}

/// Result of a support computation.
#[derive(Clone, Debug, PartialEq)]
pub enum Sup<T> {
    Finite { value: T, argmax: Vec<T> },
    Infinite,
}

impl<T: Clone> Sup<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Sup::Finite { value, .. } => Some(value),
            Sup::Infinite => None,
        }
    }
}

impl Sup<Rational> {
    pub fn to_ext(&self) -> crate::arith::ExtValue {
        match self {
            Sup::Finite { value, .. } => crate::arith::ExtValue::Finite(QuadValue::rational(value.clone())),
            Sup::Infinite => crate::arith::ExtValue::PlusInfinity,
        }
    }
}

/// `conv(vertices) + cone(rays) + span(lineality)`; empty when there are no
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

impl VPolyhedron {
    pub fn empty(dim: usize) -> Self {
        Self { dim, vertices: Vec::new(), rays: Vec::new(), lineality: Vec::new() }
    }

    /// Canonical form: lineality in reduced echelon form, points and rays
    /// projected onto its orthogonal complement, rays and lineality coprime
    /// integer, everything deduplicated and sorted.
    pub fn new(
        dim: usize,
        vertices: Vec<Vec<Rational>>,
        rays: Vec<Vec<Rational>>,
        lineality: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        for v in vertices.iter().chain(&rays).chain(&lineality) {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
        }
        if vertices.is_empty() {
            return Ok(Self::empty(dim));
        }
        let (ech, _) = linalg::rref(&lineality, dim);
        let lin: Vec<Vec<Rational>> = ech.iter().map(|l| int_to_rat(&primitive(l))).collect();
        let reduce = |v: &Vec<Rational>| -> Vec<Rational> {
            if lin.is_empty() {
                v.clone()
            } else {
                sub_vec(v, &proj_subspace(v, &lin).expect("echelon rows are independent"))
            }
        };
        let mut verts: Vec<Vec<Rational>> = vertices.iter().map(reduce).collect();
        verts.sort_by(|x, y| lex_cmp(x, y));
        verts.dedup();
        let mut rs: Vec<Vec<Rational>> = rays
            .iter()
            .map(reduce)
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| int_to_rat(&primitive(&r)))
            .collect();
        rs.sort_by(|x, y| lex_cmp(x, y));
        rs.dedup();
        Ok(Self { dim, vertices: verts, rays: rs, lineality: lin })
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn support<T: Field>(&self, c: &[T]) -> Result<Sup<T>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let unbounded = self.rays.iter().any(|r| dot(c, &lift::<T>(r)).is_fpos())
            || self.lineality.iter().any(|l| !dot(c, &lift::<T>(l)).is_fzero());
        if unbounded {
            return Ok(Sup::Infinite);
        }
        let mut best: Option<(T, Vec<T>)> = None;
        for v in &self.vertices {
            let lv = lift::<T>(v);
            let val = dot(c, &lv);
            if best.as_ref().is_none_or(|(b, _)| val.fcmp(b) == Ordering::Greater) {
                best = Some((val, lv));
            }
        }
        let (value, argmax) = best.unwrap();
        Ok(Sup::Finite { value, argmax })
    }

    /// Conic generators of the recession cone, lineality included in both signs.
    pub fn recession_generators(&self) -> Result<Vec<Vec<Rational>>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        Ok(out)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if self.is_empty() {
            return false;
        }
        let mut rays = self.rays.clone();
        for l in &self.lineality {
            rays.push(l.clone());
            rays.push(l.iter().map(|v| -v).collect());
        }
        lp::conv_cone_membership(&self.vertices, &rays, x)
    }

    /// Facets and implicit equalities via the polar cone.
    pub fn to_h(&self) -> Result<HPolyhedron> {
        check_dim(self.dim)?;
        let n = self.dim;
        if self.is_empty() {
            let mut zero = vec![Rational::zero(); n];
            zero.truncate(n);
            return HPolyhedron::new(n, vec![zero], vec![-Rational::one()]);
        }
        let mut gens: Vec<IntVec> = Vec::new();
        for v in &self.vertices {
            gens.push(rat_row_to_int(v, &Rational::one()));
        }
        for r in &self.rays {
            gens.push(rat_row_to_int(r, &Rational::zero()));
        }
        for l in &self.lineality {
            let p = rat_row_to_int(l, &Rational::zero());
            gens.push(p.iter().map(|x| -x).collect());
            gens.push(p);
        }
        let (lin, rays) = cone_generators(&gens, n + 1);
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut push = |y: &IntVec| {
            if y[..n].iter().all(Zero::is_zero) {
                return;
            }
            a.push(int_to_rat(&y[..n]));
            b.push(Rational::from_integer(-y[n].clone()));
        };
        for y in &rays {
            push(y);
        }
        for y in &lin {
            push(y);
            push(&y.iter().map(|x| -x).collect());
        }
        Ok(HPolyhedron::new(n, a, b)?.sorted())
    }
}

/// Double description: the V-representation of an H-polyhedron.
pub fn dd_convert(p: &HPolyhedron) -> Result<VPolyhedron> {
    check_dim(p.dim)?;
    let n = p.dim;
    // Homogenise: (x, t) with a·x − b·t ≤ 0 and −t ≤ 0.
    let mut rows: Vec<IntVec> = Vec::with_capacity(p.num_rows() + 1);
    let mut t_row = vec![BigInt::zero(); n + 1];
    t_row[n] = -BigInt::one();
    rows.push(t_row);
    for (a, b) in p.rows() {
        rows.push(rat_row_to_int(a, &-b));
    }
    let (lin, rays) = cone_generators(&rows, n + 1);
    let mut vertices = Vec::new();
    let mut rs = Vec::new();
    for r in &rays {
        let t = &r[n];
        if t.is_zero() {
            rs.push(int_to_rat(&r[..n]));
        } else {
            let tr = Rational::from_integer(t.clone());
            vertices.push(r[..n].iter().map(|x| Rational::from_integer(x.clone()) / &tr).collect());
        }
    }
    if vertices.is_empty() {
        return Ok(VPolyhedron::empty(n));
    }
    let lineality: Vec<Vec<Rational>> = lin.iter().map(|l| int_to_rat(&l[..n])).collect();
    VPolyhedron::new(n, vertices, rs, lineality)
}

/// Outcome of a containment test; a failure carries a point of `P \ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Subset,
    Witness(Vec<Rational>),
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Subset)
    }
}

/// Point of `base + t·dir` strictly violating `a·x ≤ b`, given `a·dir > 0`.
pub fn ray_escape(base: &[Rational], dir: &[Rational], a: &[Rational], b: &Rational) -> Vec<Rational> {
    let slope = dot(a, dir);
    let gap = b - dot(a, base);
    let t = if gap.is_positive() { gap / slope } else { Rational::zero() } + Rational::one();
    base.iter().zip(dir).map(|(x, d)| x + &t * d).collect()
}

pub fn is_subset(p: &HPolyhedron, q: &HPolyhedron) -> Result<Containment> {
    let v = p.vrep()?;
    if v.is_empty() {
        return Ok(Containment::Subset);
    }
    for x in &v.vertices {
        if !q.contains(x) {
            return Ok(Containment::Witness(x.clone()));
        }
    }
    let base = &v.vertices[0];
    let mut dirs: Vec<Vec<Rational>> = v.rays.clone();
    for l in &v.lineality {
        dirs.push(l.clone());
        dirs.push(l.iter().map(|x| -x).collect());
    }
    for (a, b) in q.rows() {
        for d in &dirs {
            if dot(a, d).is_positive() {
                return Ok(Containment::Witness(ray_escape(base, d, a, b)));
            }
        }
    }
    Ok(Containment::Subset)
}

/// An exposed face `argmax_{x∈P} c·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub parent: HPolyhedron,
    pub active_rows: Vec<usize>,
    pub direction: Vec<Rational>,
    pub value: Rational,
    pub points: VPolyhedron,
}

pub fn face_of(p: &HPolyhedron, c: &[Rational]) -> Result<Face> {
    let v = p.vrep()?;
    let value = match v.support(c)? {
        Sup::Finite { value, .. } => value,
        Sup::Infinite => return Err(Error::UnboundedDirection),
    };
    let vertices: Vec<Vec<Rational>> = v.vertices.iter().filter(|x| dot(c, x) == value).cloned().collect();
    let rays: Vec<Vec<Rational>> = v.rays.iter().filter(|r| dot(c, r).is_zero()).cloned().collect();
    let points = VPolyhedron::new(p.dim, vertices, rays, v.lineality.clone())?;
    let active_rows = p
        .rows()
        .enumerate()
        .filter(|(_, (a, b))| {
            points.vertices.iter().all(|x| &dot(a, x) == *b)
                && points.rays.iter().chain(&points.lineality).all(|r| dot(a, r).is_zero())
        })
        .map(|(i, _)| i)
        .collect();
    Ok(Face { parent: p.clone(), active_rows, direction: c.to_vec(), value, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rats};

    fn square() -> HPolyhedron {
        HPolyhedron::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 1), (&[0, 1], 1)])
    }

    fn example1_hull() -> HPolyhedron {
        HPolyhedron::from_i64(2, &[(&[-1, -1], -3), (&[-1, 0], -1), (&[0, -1], -1)])
    }

    #[test]
    fn dd_examples() {
        let v = dd_convert(&square()).unwrap();
        assert_eq!(v.vertices, vec![rats(&[0, 0]), rats(&[0, 1]), rats(&[1, 0]), rats(&[1, 1])]);
        assert!(v.rays.is_empty());
        let orthant = HPolyhedron::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0)]);
        let v = dd_convert(&orthant).unwrap();
        assert_eq!(v.vertices, vec![rats(&[0, 0])]);
        assert_eq!(v.rays, vec![rats(&[0, 1]), rats(&[1, 0])]);
        let v = dd_convert(&example1_hull()).unwrap();
        assert_eq!(v.vertices, vec![rats(&[1, 2]), rats(&[2, 1])]);
        assert_eq!(v.rays, vec![rats(&[0, 1]), rats(&[1, 0])]);
    }

    #[test]
    fn infeasible_is_empty_value() {
        let p = HPolyhedron::from_i64(1, &[(&[1], 0), (&[-1], -1)]);
        assert!(dd_convert(&p).unwrap().is_empty());
        assert!(matches!(p.support(&rats(&[1])), Err(Error::EmptyPolyhedron)));
    }

    #[test]
    fn support_examples() {
        assert_eq!(square().support(&rats(&[1, 1])).unwrap().value(), Some(&rat(2, 1)));
        let orthant = HPolyhedron::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0)]);
        assert_eq!(orthant.support(&rats(&[1, 0])).unwrap(), Sup::Infinite);
        let tri = HPolyhedron::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[2, 2], 3)]);
        assert_eq!(tri.support(&rats(&[1, 1])).unwrap().value(), Some(&rat(3, 2)));
        assert_eq!(tri.support_generic(&rats(&[1, 1])).unwrap().value(), Some(&rat(3, 2)));
    }

    #[test]
    fn face_examples() {
        let f = square().face_of(&rats(&[1, 0])).unwrap();
        assert_eq!(f.points.vertices, vec![rats(&[1, 0]), rats(&[1, 1])]);
        assert_eq!(f.active_rows, vec![2]);
        let f = square().face_of(&rats(&[1, 1])).unwrap();
        assert_eq!(f.points.vertices, vec![rats(&[1, 1])]);
        let f = example1_hull().face_of(&rats(&[-1, -1])).unwrap();
        assert_eq!(f.points.vertices, vec![rats(&[1, 2]), rats(&[2, 1])]);
        assert!(f.points.rays.is_empty());
        assert!(matches!(example1_hull().face_of(&rats(&[1, 0])), Err(Error::UnboundedDirection)));
    }

    #[test]
    fn recession_examples() {
        assert_eq!(example1_hull().recession_cone().unwrap(), vec![rats(&[0, 1]), rats(&[1, 0])]);
        assert!(square().recession_cone().unwrap().is_empty());
        let half = HPolyhedron::from_i64(2, &[(&[1, 1], 0)]);
        assert_eq!(half.lineality_space().unwrap(), vec![rats(&[1, -1])]);
        let rec = half.recession_cone().unwrap();
        assert!(rec.contains(&rats(&[-1, -1])));
    }

    #[test]
    fn subset_examples() {
        let big = HPolyhedron::from_i64(2, &[(&[-1, 0], 1), (&[0, -1], 1)]);
        assert!(square().is_subset(&big).unwrap().holds());
        let orthant = HPolyhedron::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0)]);
        assert_eq!(orthant.is_subset(&square()).unwrap(), Containment::Witness(rats(&[2, 0])));
    }

    #[test]
    fn redundancy_examples() {
        let p = HPolyhedron::from_i64(1, &[(&[1], 1), (&[1], 2)]);
        assert_eq!(p.remove_redundant().unwrap(), HPolyhedron::from_i64(1, &[(&[1], 1)]));
        let mut rows: Vec<(&[i64], i64)> = vec![(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 1), (&[0, 1], 1)];
        rows.extend(rows.clone());
        let p = HPolyhedron::from_i64(2, &rows);
        assert_eq!(p.remove_redundant().unwrap().num_rows(), 4);
        let p = HPolyhedron::from_i64(2, &[(&[1, 2], 5), (&[1, 1], 4), (&[0, 1], 1)]);
        let r = p.remove_redundant().unwrap();
        assert_eq!(r, HPolyhedron::from_i64(2, &[(&[0, 1], 1), (&[1, 1], 4)]));
    }

    #[test]
    fn equalities_kept_as_pairs() {
        // 0 ≤ x1 ≤ 0, 0 ≤ x2 ≤ 1
        let p = HPolyhedron::from_i64(2, &[(&[1, 0], 0), (&[-1, 0], 0), (&[0, 1], 1), (&[0, -1], 0)]);
        let r = p.remove_redundant().unwrap();
        assert_eq!(r.num_rows(), 4);
        assert!(r.set_eq(&p).unwrap());
    }

    #[test]
    fn round_trip_with_lineality() {
        let slab = HPolyhedron::from_i64(3, &[(&[1, 1, 0], 2), (&[-1, -1, 0], 0), (&[0, 0, 1], 5)]);
        let v = slab.vrep().unwrap();
        assert_eq!(v.lineality.len(), 1);
        assert!(slab.remove_redundant().unwrap().set_eq(&slab).unwrap());
    }
}
