//! Seeded random instances for property suites, benches and the CLI.

use num_bigint::BigInt;
use rand::Rng;

use crate::arith::{int_to_rat, IntVec, QuadValue, Rational};
use crate::bodies::ConvexBody;
use crate::conegeom::CutFamily;
use crate::hilbert::RationalCone;
use crate::polytope::HPolyhedron;

/// Fixed default seed of the randomized suites.
pub const DEFAULT_SEED: u64 = 20_240_601;

fn int_vec<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntVec {
    (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

fn nonzero_vec<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntVec {
    loop {
        let v = int_vec(rng, n, bound);
        if v.iter().any(|x| x != &BigInt::from(0)) {
            return v;
        }
    }
}

/// A bounded full-dimensional 2-D polytope `{x : a_i·x ≤ b_i}` with integer
/// `|a_i|, b_i ≤ bound`, `b_i ≥ 1` (so the origin is interior).
pub fn random_polytope<R: Rng>(rng: &mut R, bound: i64) -> HPolyhedron {
    loop {
        let m = rng.gen_range(3..=5);
        let mut a = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for _ in 0..m {
            a.push(int_to_rat(&nonzero_vec(rng, 2, bound)));
            b.push(Rational::from_integer(BigInt::from(rng.gen_range(1..=bound))));
        }
        let p = HPolyhedron::new(2, a, b).expect("well-formed rows");
        if p.vrep().map(|v| v.is_bounded()).unwrap_or(false) {
            return p;
        }
    }
}

/// A pointed 2-D cone spanned by two or three integer generators.
pub fn random_pointed_cone<R: Rng>(rng: &mut R, bound: i64) -> RationalCone {
    loop {
        let k = rng.gen_range(2..=3);
        let gens: Vec<IntVec> = (0..k).map(|_| nonzero_vec(rng, 2, bound)).collect();
        let Ok(c) = RationalCone::new(2, gens) else { continue };
        if c.is_pointed() && !c.extreme_rays().map(|r| r.len() < 2).unwrap_or(true) {
            return c;
        }
    }
}

/// A cut family in dimension `n` whose region is nonempty.
pub fn random_cut_family<R: Rng>(rng: &mut R, n: usize, bound: i64) -> CutFamily {
    loop {
        let m = rng.gen_range(1..=4);
        let rows: Vec<(Vec<Rational>, Rational)> = (0..m)
            .map(|_| {
                let a = int_to_rat(&nonzero_vec(rng, n, bound));
                (a, Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
            })
            .collect();
        let Ok(f) = CutFamily::new(n, rows) else { continue };
        let Ok(region) = crate::conegeom::closure_region(&f) else { continue };
        if !region.is_empty().unwrap_or(true) {
            return f;
        }
    }
}

/// A 2-D Motzkin sum with vertices in `ℚ(√2)` and a pointed rational cone.
pub fn random_motzkin<R: Rng>(rng: &mut R) -> ConvexBody {
    let r2 = QuadValue::new(Rational::from_integer(0.into()), Rational::from_integer(1.into()), 2).expect("√2");
    let k = rng.gen_range(1..=3);
    let vertices: Vec<Vec<QuadValue>> = (0..k)
        .map(|_| {
            (0..2)
                .map(|_| {
                    let a = QuadValue::from_int(rng.gen_range(-3..=3));
                    let b = rng.gen_range(-2..=2i64);
                    &a + &r2.scale(&Rational::from_integer(b.into()))
                })
                .collect()
        })
        .collect();
    let cone = random_pointed_cone(rng, 3);
    ConvexBody::motzkin(vertices, cone).expect("consistent field")
}
