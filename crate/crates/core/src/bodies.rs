//! Convex bodies with exact support, membership and recession oracles.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{common_field, int_to_rat, ExtValue, Field, IntVec, QuadValue, Rational};
use crate::error::{Error, Result};
use crate::hilbert::RationalCone;
use crate::linalg::{self, dot, lift, primitive};
use crate::lp;
use crate::polytope::{HPolyhedron, Sup};

/// The supported body classes.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    /// `{x : Ax ≤ b}`.
    RationalPoly(HPolyhedron),
    /// `conv(vertices) + cone`; vertices may have coordinates in one quadratic field.
    MotzkinSum { vertices: Vec<Vec<QuadValue>>, cone: RationalCone },
    /// Closure of `{x ∈ ℝ² : (x₁ − s₁)(x₂ − s₂) ≥ r, x > s}` with `r > 0`.
    ShiftedHyperbola { s: [Rational; 2], r: Rational },
    /// `{center + Q^{1/2} u : ‖u‖ ≤ 1}` for a symmetric positive semidefinite `Q`.
    Ellipsoid { center: Vec<Rational>, shape: Vec<Vec<Rational>> },
    /// The line `span{direction}` through the origin.
    IrrationalLine { direction: Vec<QuadValue> },
}

/// Support value of a body in a direction.
#[derive(Clone, Debug, PartialEq)]
pub struct BodySupport {
    pub value: ExtValue,
    /// A maximiser, when the supremum is attained.
    pub argmax: Option<Vec<QuadValue>>,
}

impl BodySupport {
    fn infinite() -> Self {
        Self { value: ExtValue::PlusInfinity, argmax: None }
    }

    pub fn attained(&self) -> bool {
        self.argmax.is_some()
    }
}

/// Recession cone of a body.
#[derive(Clone, Debug, PartialEq)]
pub enum Recession {
    Rational(RationalCone),
    Irrational { span: Vec<Vec<QuadValue>> },
}

fn principal_minors_nonnegative(q: &[Vec<Rational>]) -> bool {
    let n = q.len();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| idx.iter().map(|&j| q[i][j].clone()).collect()).collect();
        if determinant(&sub).is_negative() {
            return false;
        }
    }
    true
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for i in col + 1..n {
            let f = &a[i][col] / &a[col][col];
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in rest[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= &f * y;
            }
        }
    }
    det
}

impl ConvexBody {
    pub fn hyperbola(s: [Rational; 2], r: Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::Domain("hyperbola level must be positive".into()));
        }
        Ok(ConvexBody::ShiftedHyperbola { s, r })
    }

    pub fn motzkin(vertices: Vec<Vec<QuadValue>>, cone: RationalCone) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("Motzkin sum needs a nonempty compact part".into()));
        }
        for v in &vertices {
            if v.len() != cone.dim() {
                return Err(Error::DimensionMismatch { expected: cone.dim(), got: v.len() });
            }
        }
        let all: Vec<QuadValue> = vertices.iter().flatten().cloned().collect();
        common_field(&all)?;
        Ok(ConvexBody::MotzkinSum { vertices, cone })
    }

    pub fn ellipsoid(center: Vec<Rational>, shape: Vec<Vec<Rational>>) -> Result<Self> {
        let n = center.len();
        if shape.len() != n || shape.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: shape.len() });
        }
        let symmetric = (0..n).all(|i| (0..n).all(|j| shape[i][j] == shape[j][i]));
        if !symmetric || !principal_minors_nonnegative(&shape) {
            return Err(Error::Domain("ellipsoid shape must be symmetric positive semidefinite".into()));
        }
        Ok(ConvexBody::Ellipsoid { center, shape })
    }

    pub fn line(direction: Vec<QuadValue>) -> Result<Self> {
        common_field(&direction)?;
        if direction.iter().all(QuadValue::is_zero) {
            return Err(Error::Domain("line direction must be nonzero".into()));
        }
        Ok(ConvexBody::IrrationalLine { direction })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::RationalPoly(p) => p.dim(),
            ConvexBody::MotzkinSum { cone, .. } => cone.dim(),
            ConvexBody::ShiftedHyperbola { .. } => 2,
            ConvexBody::Ellipsoid { center, .. } => center.len(),
            ConvexBody::IrrationalLine { direction } => direction.len(),
        }
    }

    /// Radicand of the field the body's data lives in (0 for rational data).
    pub fn field(&self) -> u64 {
        match self {
            ConvexBody::MotzkinSum { vertices, .. } => {
                common_field(&vertices.iter().flatten().cloned().collect::<Vec<_>>()).unwrap_or(0)
            }
            ConvexBody::IrrationalLine { direction } => common_field(direction).unwrap_or(0),
            _ => 0,
        }
    }

    /// `σ_K(c) = sup_{x∈K} c·x` for an integer direction.
    pub fn support(&self, c: &[BigInt]) -> Result<BodySupport> {
        self.check_len(c.len())?;
        let cr = int_to_rat(c);
        match self {
            ConvexBody::ShiftedHyperbola { s, r } => hyperbola_support(s, r, &cr),
            ConvexBody::Ellipsoid { center, shape } => ellipsoid_support(center, shape, &cr),
            _ => self.support_quad(&lift::<QuadValue>(&cr)),
        }
    }

    /// Support in a direction with quadratic entries; available for the
    /// polyhedral classes and the line.
    pub fn support_quad(&self, c: &[QuadValue]) -> Result<BodySupport> {
        self.check_len(c.len())?;
        let df = common_field(c)?;
        match self {
            ConvexBody::RationalPoly(p) => match p.support_generic(c)? {
                Sup::Finite { value, argmax } => Ok(BodySupport { value: ExtValue::Finite(value), argmax: Some(argmax) }),
                Sup::Infinite => Ok(BodySupport::infinite()),
            },
            ConvexBody::MotzkinSum { vertices, cone } => {
                let all: Vec<QuadValue> = vertices.iter().flatten().cloned().collect();
                let dv = common_field(&all)?;
                if dv != 0 && df != 0 && dv != df {
                    return Err(Error::IncomparableFields(dv, df));
                }
                if cone.generators().iter().any(|g| dot(c, &lift::<QuadValue>(&int_to_rat(g))).is_fpos()) {
                    return Ok(BodySupport::infinite());
                }
                let mut best: Option<(QuadValue, &Vec<QuadValue>)> = None;
                for v in vertices {
                    let val = dot(c, v);
                    if best.as_ref().is_none_or(|(b, _)| val.fcmp(b) == Ordering::Greater) {
                        best = Some((val, v));
                    }
                }
                let (value, v) = best.expect("nonempty compact part");
                Ok(BodySupport { value: ExtValue::Finite(value), argmax: Some(v.clone()) })
            }
            ConvexBody::IrrationalLine { direction } => {
                let du = common_field(direction)?;
                if du != 0 && df != 0 && du != df {
                    return Err(Error::IncomparableFields(du, df));
                }
                if dot(c, direction).is_zero() {
                    Ok(BodySupport {
                        value: ExtValue::Finite(QuadValue::zero()),
                        argmax: Some(vec![QuadValue::zero(); direction.len()]),
                    })
                } else {
                    Ok(BodySupport::infinite())
                }
            }
            ConvexBody::ShiftedHyperbola { .. } | ConvexBody::Ellipsoid { .. } => {
                let cr: Option<Vec<Rational>> = c.iter().map(|x| x.as_rational().cloned()).collect();
                let cr = cr.ok_or_else(|| Error::Domain("irrational direction for a curved body".into()))?;
                match self {
                    ConvexBody::ShiftedHyperbola { s, r } => hyperbola_support(s, r, &cr),
                    ConvexBody::Ellipsoid { center, shape } => ellipsoid_support(center, shape, &cr),
                    _ => unreachable!(),
                }
            }
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: len });
        }
        Ok(())
    }

    /// Exact membership test.
    pub fn membership(&self, x: &[QuadValue]) -> Result<bool> {
        self.check_len(x.len())?;
        let dx = common_field(x)?;
        let body_field = self.field();
        if dx != 0 && body_field != 0 && dx != body_field {
            return Err(Error::IncomparableFields(body_field, dx));
        }
        match self {
            ConvexBody::RationalPoly(p) => Ok(p.contains_generic(x)),
            ConvexBody::MotzkinSum { vertices, cone } => {
                let rays: Vec<Vec<QuadValue>> = cone.generators().iter().map(|g| lift(&int_to_rat(g))).collect();
                Ok(lp::conv_cone_membership(vertices, &rays, x))
            }
            ConvexBody::ShiftedHyperbola { s, r } => {
                let y1 = &x[0] - &QuadValue::from(&s[0]);
                let y2 = &x[1] - &QuadValue::from(&s[1]);
                let prod = &(&y1 * &y2) - &QuadValue::from(r);
                Ok(!y1.is_fneg() && !y2.is_fneg() && !prod.is_fneg())
            }
            ConvexBody::Ellipsoid { center, shape } => {
                let y: Vec<QuadValue> = x.iter().zip(center).map(|(a, c)| a - &QuadValue::from(c)).collect();
                let q: Vec<Vec<QuadValue>> = shape.iter().map(|r| lift(r)).collect();
                match linalg::solve(&q, &y, y.len()) {
                    None => Ok(false),
                    Some(z) => Ok(!(&dot(&y, &z) - &QuadValue::one()).is_fpos()),
                }
            }
            ConvexBody::IrrationalLine { direction } => {
                let n = x.len();
                Ok((0..n).all(|i| (0..n).all(|j| (&(&x[i] * &direction[j]) - &(&x[j] * &direction[i])).is_zero())))
            }
        }
    }

    pub fn contains_int(&self, x: &[BigInt]) -> Result<bool> {
        self.membership(&lift::<QuadValue>(&int_to_rat(x)))
    }

    pub fn contains_rat(&self, x: &[Rational]) -> Result<bool> {
        self.membership(&lift::<QuadValue>(x))
    }

    pub fn recession(&self) -> Result<Recession> {
        let n = self.dim();
        match self {
            ConvexBody::RationalPoly(p) => {
                let gens: Vec<IntVec> = p.recession_cone()?.iter().map(|r| primitive(r)).collect();
                Ok(Recession::Rational(RationalCone::new(n, gens)?))
            }
            ConvexBody::MotzkinSum { cone, .. } => Ok(Recession::Rational(cone.clone())),
            ConvexBody::ShiftedHyperbola { .. } => {
                Ok(Recession::Rational(RationalCone::from_i64(&[&[1, 0], &[0, 1]])))
            }
            ConvexBody::Ellipsoid { .. } => Ok(Recession::Rational(RationalCone::new(n, Vec::new())?)),
            ConvexBody::IrrationalLine { direction } => {
                let rat: Option<Vec<Rational>> = direction.iter().map(|x| x.as_rational().cloned()).collect();
                match rat {
                    Some(u) => {
                        let p = primitive(&u);
                        let m: IntVec = p.iter().map(|x| -x).collect();
                        Ok(Recession::Rational(RationalCone::new(n, vec![p, m])?))
                    }
                    None => Ok(Recession::Irrational { span: vec![direction.clone()] }),
                }
            }
        }
    }

    /// Whether `r` is a recession direction.
    pub fn recedes_along(&self, r: &[Rational]) -> Result<bool> {
        match self.recession()? {
            Recession::Rational(c) => Ok(c.contains_rat(r)),
            Recession::Irrational { .. } => self.contains_rat(r),
        }
    }
}

fn hyperbola_support(s: &[Rational; 2], r: &Rational, c: &[Rational]) -> Result<BodySupport> {
    let (c1, c2) = (&c[0], &c[1]);
    if c1.is_positive() || c2.is_positive() {
        return Ok(BodySupport::infinite());
    }
    // c·s, the value at the corner of the asymptotes
    let corner = c1 * &s[0] + c2 * &s[1];
    match (c1.is_zero(), c2.is_zero()) {
        (true, true) => Ok(BodySupport {
            value: ExtValue::Finite(QuadValue::zero()),
            argmax: Some(vec![QuadValue::from(&s[0]) + QuadValue::one(), QuadValue::from(&s[1]) + QuadValue::from(r)]),
        }),
        // Along an asymptote the supremum is approached but never reached.
        (false, true) | (true, false) => Ok(BodySupport {
            value: ExtValue::Finite(QuadValue::rational(corner)),
            argmax: None,
        }),
        (false, false) => {
            let j = -c1;
            let k = -c2;
            let t = QuadValue::sqrt_of(&(r * &j * &k))?;
            let value = &QuadValue::rational(corner) - &t.scale(&Rational::from_integer(2.into()));
            let x1 = &QuadValue::from(&s[0]) + &t.scale(&j.recip());
            let x2 = &QuadValue::from(&s[1]) + &t.scale(&k.recip());
            Ok(BodySupport { value: ExtValue::Finite(value), argmax: Some(vec![x1, x2]) })
        }
    }
}

fn ellipsoid_support(center: &[Rational], shape: &[Vec<Rational>], c: &[Rational]) -> Result<BodySupport> {
    let qc = linalg::mat_vec(shape, c);
    let m = dot(c, &qc);
    let root = QuadValue::sqrt_of(&m)?;
    let value = &QuadValue::rational(dot(c, center)) + &root;
    let argmax = if m.is_zero() {
        center.iter().map(QuadValue::from).collect()
    } else {
        // center + Qc/√m = center + Qc·√m/m
        let w = root.scale(&m.recip());
        center.iter().zip(&qc).map(|(x, y)| &QuadValue::from(x) + &w.scale(y)).collect()
    };
    Ok(BodySupport { value: ExtValue::Finite(value), argmax: Some(argmax) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ints, rat};

    fn k1() -> ConvexBody {
        ConvexBody::hyperbola([int(0), int(0)], int(2)).unwrap()
    }

    fn k2() -> ConvexBody {
        ConvexBody::hyperbola([rat(1, 5), rat(1, 5)], int(2)).unwrap()
    }

    fn q(a: Rational, b: Rational, d: u64) -> QuadValue {
        QuadValue::new(a, b, d).unwrap()
    }

    fn qs(v: &[i64]) -> Vec<QuadValue> {
        v.iter().map(|&x| QuadValue::from_int(x)).collect()
    }

    #[test]
    fn hyperbola_support_examples() {
        let s = k1().support(&ints(&[-1, -1])).unwrap();
        assert_eq!(s.value, ExtValue::Finite(q(int(0), int(-2), 2)));
        let x = s.argmax.unwrap();
        assert!(k1().membership(&x).unwrap());
        let s = k2().support(&ints(&[-1, -1])).unwrap();
        assert_eq!(s.value, ExtValue::Finite(q(rat(-2, 5), int(-2), 2)));
        let s = k1().support(&ints(&[-1, 0])).unwrap();
        assert_eq!(s.value, ExtValue::Finite(QuadValue::zero()));
        assert!(!s.attained());
        assert_eq!(k1().support(&ints(&[1, -1])).unwrap().value, ExtValue::PlusInfinity);
        assert_eq!(k1().support(&ints(&[0, 0])).unwrap().value, ExtValue::Finite(QuadValue::zero()));
        // (−1, −2): −2√(2·2) = −4, rational
        assert_eq!(k1().support(&ints(&[-1, -2])).unwrap().value, ExtValue::Finite(QuadValue::from_int(-4)));
    }

    #[test]
    fn membership_examples() {
        assert!(k2().membership(&qs(&[1, 3])).unwrap());
        assert!(!k1().membership(&qs(&[0, 5])).unwrap());
        assert!(k2().membership(&qs(&[2, 2])).unwrap());
        let line = ConvexBody::line(vec![QuadValue::one(), q(int(0), int(1), 2)]).unwrap();
        assert!(line.membership(&[q(int(0), int(2), 2), QuadValue::from_int(4)]).unwrap());
        assert!(!line.membership(&qs(&[1, 1])).unwrap());
        assert!(matches!(
            line.membership(&[q(int(0), int(1), 3), QuadValue::zero()]),
            Err(Error::IncomparableFields(2, 3))
        ));
    }

    #[test]
    fn recession_examples() {
        match k1().recession().unwrap() {
            Recession::Rational(c) => assert_eq!(c.generators(), &[ints(&[1, 0]), ints(&[0, 1])]),
            other => panic!("{other:?}"),
        }
        let e = ConvexBody::ellipsoid(vec![int(0), int(0)], vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        match e.recession().unwrap() {
            Recession::Rational(c) => assert!(c.generators().is_empty()),
            other => panic!("{other:?}"),
        }
        let u = vec![QuadValue::one(), q(int(0), int(1), 2)];
        let line = ConvexBody::line(u.clone()).unwrap();
        assert_eq!(line.recession().unwrap(), Recession::Irrational { span: vec![u] });
    }

    #[test]
    fn ellipsoid_support_is_exact() {
        let e = ConvexBody::ellipsoid(vec![int(1), int(0)], vec![vec![int(2), int(0)], vec![int(0), int(1)]]).unwrap();
        let s = e.support(&ints(&[1, 1])).unwrap();
        // 1 + √3
        assert_eq!(s.value, ExtValue::Finite(q(int(1), int(1), 3)));
        assert!(e.membership(&s.argmax.unwrap()).unwrap());
        assert!(ConvexBody::ellipsoid(vec![int(0)], vec![vec![int(-1)]]).is_err());
    }

    #[test]
    fn motzkin_support() {
        let r2 = q(int(0), int(1), 2);
        let seg = ConvexBody::motzkin(
            vec![vec![QuadValue::zero(), QuadValue::from_int(2)], vec![r2.clone(), QuadValue::zero()]],
            RationalCone::new(2, vec![]).unwrap(),
        )
        .unwrap();
        let s = seg.support(&ints(&[99, 70])).unwrap();
        assert_eq!(s.value, ExtValue::Finite(q(int(0), int(99), 2)));
        assert_eq!(crate::arith::floor_quad(s.value.finite().unwrap()), BigInt::from(140));
        let cone_body = ConvexBody::motzkin(vec![qs(&[0, 0])], RationalCone::from_i64(&[&[1, 0]])).unwrap();
        assert_eq!(cone_body.support(&ints(&[1, 0])).unwrap().value, ExtValue::PlusInfinity);
        assert_eq!(cone_body.support(&ints(&[-1, 1])).unwrap().value, ExtValue::Finite(QuadValue::zero()));
        assert!(cone_body.membership(&qs(&[5, 0])).unwrap());
    }
}
