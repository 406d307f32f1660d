//! End-to-end reproductions of the hyperbola and irrational-line examples.

use cglab::arith::{int, rat};
use cglab::certify::{self, Verdict};
use cglab::cgengine::{self, LatticeBox};
use cglab::{io, sample, ConvexBody, HPolyhedron, IntVec, QuadValue, Result};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub struct Report {
    pub doc: Value,
    pub all_match: bool,
}

fn k1() -> ConvexBody {
    ConvexBody::hyperbola([int(0), int(0)], int(2)).expect("valid body")
}

fn k2() -> ConvexBody {
    ConvexBody::hyperbola([rat(1, 5), rat(1, 5)], int(2)).expect("valid body")
}

fn facets(p: &HPolyhedron) -> Result<Vec<Value>> {
    Ok(p.remove_redundant()?.sorted().rows().map(|(a, b)| json!({ "a": io::rat_vec(a), "b": io::rat(b) })).collect())
}

fn comparison(computed: &HPolyhedron, expected: &HPolyhedron) -> Result<(Value, bool)> {
    let ok = computed.set_eq(expected)?;
    Ok((json!({ "computed": facets(computed)?, "expected": facets(expected)?, "match": ok }), ok))
}

/// `x₁x₂ ≥ 2` on the nonnegative quadrant.
pub fn example1() -> Result<Report> {
    let k = k1();
    let h = cgengine::integer_hull(&k, &LatticeBox::cube(2, 0, 10))?;
    let expected = HPolyhedron::from_i64(2, &[(&[-1, -1], -3), (&[-1, 0], -1), (&[0, -1], -1)]);
    let (hull, mut ok) = comparison(&h.hpoly, &expected)?;
    let rays: Vec<Value> = h.vpoly.rays.iter().map(|r| io::rat_vec(r)).collect();
    let mut witnesses = Vec::new();
    for n in 1..=8 {
        let cert = certify::verify_certificate(&k, &cgengine::primitive_directions(2, n))?;
        let Verdict::Refuted(w) = &cert.verdict else {
            ok = false;
            witnesses.push(json!({ "radius": n, "refuted": false }));
            continue;
        };
        let in_q = cert.q_f.contains(w);
        let outside = !k.contains_rat(w)?;
        ok &= in_q && outside;
        witnesses.push(json!({ "radius": n, "refuted": true, "witness": io::rat_vec(w), "in_q_f": in_q, "outside_k": outside }));
    }
    Ok(Report {
        doc: io::document("example", json!({ "which": 1, "body": io::body(&k), "hull": hull, "hull_rays": rays, "nonfg": witnesses })),
        all_match: ok,
    })
}

/// The same hyperbola shifted by `(1/5, 1/5)`.
pub fn example2() -> Result<Report> {
    let k = k2();
    let f: Vec<IntVec> = vec![vec![BigInt::from(-1), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(-1)], vec![BigInt::from(-1), BigInt::from(-1)]];
    let cert = certify::verify_certificate(&k, &f)?;
    let mut ok = cert.is_certified();
    let expected = HPolyhedron::from_i64(2, &[(&[-1, 0], -1), (&[0, -1], -1), (&[-1, -1], -4)]);
    let mut closures = Vec::new();
    for n in 2..=8 {
        let r = cgengine::closure_bruteforce(&k, n)?;
        let same = r.polyhedron.set_eq(&expected)?;
        ok &= same;
        closures.push(json!({ "radius": n, "match": same, "cuts": r.cuts.iter().map(io::cut).collect::<Vec<_>>() }));
    }
    let h = cgengine::integer_hull(&k, &LatticeBox::cube(2, 0, 10))?;
    let (hull, same) = comparison(&h.hpoly, &expected)?;
    ok &= same;
    Ok(Report {
        doc: io::document(
            "example",
            json!({
                "which": 2,
                "body": io::body(&k),
                "certificate": io::certificate(&cert),
                "closures": closures,
                "hull": hull,
                "closure_equals_hull": same,
            }),
        ),
        all_match: ok,
    })
}

/// The line `√2·x₁ = x₂`.
///
/// Its integer hull is `{0}`. Every nonzero integer direction has unbounded
/// support on the line, so no finite CG cut exists and the intersection over
/// integer directions is the whole plane.
pub fn example3() -> Result<Report> {
    let r2 = QuadValue::sqrt_of(&int(2))?;
    let k = ConvexBody::line(vec![QuadValue::one(), r2])?;
    let h = cgengine::integer_hull(&k, &LatticeBox::cube(2, -10, 10))?;
    let singleton = h.vpoly.is_bounded() && h.vpoly.vertices.len() == 1 && h.vpoly.vertices[0].iter().all(|x| x == &int(0));
    let closure = cgengine::closure_bruteforce(&k, 5)?;
    let plane = closure.cuts.is_empty();
    Ok(Report {
        doc: io::document(
            "example",
            json!({
                "which": 3,
                "body": io::body(&k),
                "hull": io::vpoly(&h.vpoly),
                "hull_is_origin": singleton,
                "finite_cuts_up_to_radius_5": closure.cuts.len(),
                "truncated_closure_is_plane": plane,
                "note": "no nonzero integer direction has finite support on this line, so the intersection of CG cuts over integer directions is the whole plane rather than the line itself",
            }),
        ),
        all_match: singleton,
    })
}

/// Exact closure against brute force at the Hilbert radius on random polytopes.
pub fn oracle(seed: u64, count: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut ok = true;
    for i in 0..count {
        let p = sample::random_polytope(&mut rng, 10);
        let exact = cgengine::schrijver_closure(&p)?;
        let radius = exact.hilbert_radius.clone().unwrap_or_default();
        let n = usize::try_from(radius.clone()).unwrap_or(1).max(1);
        let brute = cgengine::closure_bruteforce(&ConvexBody::RationalPoly(p.clone()), n)?;
        let same = exact.polyhedron.set_eq(&brute.polyhedron)?;
        ok &= same;
        rows.push(json!({ "index": i, "polytope": io::hpoly(&p), "hilbert_radius": io::int(&radius), "match": same }));
    }
    Ok(Report { doc: io::document("oracle", json!({ "seed": seed, "instances": rows })), all_match: ok })
}
