//! JSON encoding of bodies and results.
//!
//! Every top-level document carries `"schema": "cglab/1"`. Numbers are written
//! as strings (`"3/2"`, `"1+2*sqrt(2)"`); readers also accept JSON integers.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::{format_rational, parse_quad, parse_rational, ExtValue, IntVec, QuadValue, Rational};
use crate::bodies::ConvexBody;
use crate::certify::{Certificate, FaceCutFamily, Verdict};
use crate::cgengine::{CGCut, ClosureReport, Exactness, HullReport, GroupedCutWitness, RankReport};
use crate::diophantine::{Approximant, VpiSubspace, ZeroCombination};
use crate::error::{Error, Result};
use crate::hilbert::RationalCone;
use crate::polytope::{HPolyhedron, VPolyhedron};

pub const SCHEMA: &str = "cglab/1";

fn bad(what: &str) -> Error {
    Error::Parse(format!("expected {what}"))
}

/// Adds the schema tag and a `kind` to an object.
pub fn document(kind: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(SCHEMA));
    m.insert("kind".into(), Value::from(kind));
    if let Value::Object(o) = body {
        m.extend(o);
    }
    Value::Object(m)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(bad("a number or numeric string")),
    }
}

pub fn read_rational(v: &Value) -> Result<Rational> {
    parse_rational(&scalar_text(v)?)
}

pub fn read_int(v: &Value) -> Result<BigInt> {
    let r = read_rational(v)?;
    if !r.is_integer() {
        return Err(bad("an integer"));
    }
    Ok(r.to_integer())
}

pub fn read_quad(v: &Value) -> Result<QuadValue> {
    parse_quad(&scalar_text(v)?)
}

pub fn read_rat_vec(v: &Value) -> Result<Vec<Rational>> {
    array(v, "a vector")?.iter().map(read_rational).collect()
}

pub fn read_int_vec(v: &Value) -> Result<IntVec> {
    array(v, "an integer vector")?.iter().map(read_int).collect()
}

pub fn read_quad_vec(v: &Value) -> Result<Vec<QuadValue>> {
    array(v, "a vector")?.iter().map(read_quad).collect()
}

pub fn read_int_vecs(v: &Value) -> Result<Vec<IntVec>> {
    array(v, "a list of integer vectors")?.iter().map(read_int_vec).collect()
}

pub fn rat(r: &Rational) -> Value {
    Value::from(format_rational(r))
}

pub fn int(n: &BigInt) -> Value {
    Value::from(n.to_string())
}

pub fn quad(q: &QuadValue) -> Value {
    Value::from(q.to_string())
}

pub fn rat_vec(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn quad_vec(v: &[QuadValue]) -> Value {
    Value::Array(v.iter().map(quad).collect())
}

pub fn ext(v: &ExtValue) -> Value {
    Value::from(v.to_string())
}

pub fn hpoly(p: &HPolyhedron) -> Value {
    let rows: Vec<Value> = p.rows().map(|(a, b)| json!({ "a": rat_vec(a), "b": rat(b) })).collect();
    json!({ "dim": p.dim(), "rows": rows })
}

pub fn read_hpoly(v: &Value) -> Result<HPolyhedron> {
    let dim = field(v, "dim")?.as_u64().ok_or_else(|| bad("a dimension"))? as usize;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for row in array(field(v, "rows")?, "rows")? {
        a.push(read_rat_vec(field(row, "a")?)?);
        b.push(read_rational(field(row, "b")?)?);
    }
    HPolyhedron::new(dim, a, b)
}

pub fn vpoly(p: &VPolyhedron) -> Value {
    let vs = |v: &[Vec<Rational>]| Value::Array(v.iter().map(|x| rat_vec(x)).collect());
    json!({
        "dim": p.dim,
        "vertices": vs(&p.vertices),
        "rays": vs(&p.rays),
        "lineality": vs(&p.lineality),
    })
}

pub fn cone(c: &RationalCone) -> Value {
    json!({
        "dim": c.dim(),
        "generators": c.generators().iter().map(|g| int_vec(g)).collect::<Vec<_>>(),
    })
}

pub fn read_cone(v: &Value) -> Result<RationalCone> {
    let gens = read_int_vecs(field(v, "generators")?)?;
    let dim = match v.get("dim") {
        Some(d) => d.as_u64().ok_or_else(|| bad("a dimension"))? as usize,
        None => gens.first().map(Vec::len).ok_or_else(|| bad("a dimension or a generator"))?,
    };
    RationalCone::new(dim, gens)
}

pub fn body(k: &ConvexBody) -> Value {
    match k {
        ConvexBody::RationalPoly(p) => document("polyhedron", hpoly(p)),
        ConvexBody::MotzkinSum { vertices, cone: c } => document(
            "motzkin",
            json!({
                "vertices": vertices.iter().map(|v| quad_vec(v)).collect::<Vec<_>>(),
                "cone": c.generators().iter().map(|g| int_vec(g)).collect::<Vec<_>>(),
            }),
        ),
        ConvexBody::ShiftedHyperbola { s, r } => document("hyperbola", json!({ "s": rat_vec(s), "r": rat(r) })),
        ConvexBody::Ellipsoid { center, shape } => document(
            "ellipsoid",
            json!({ "center": rat_vec(center), "shape": shape.iter().map(|r| rat_vec(r)).collect::<Vec<_>>() }),
        ),
        ConvexBody::IrrationalLine { direction } => document("line", json!({ "direction": quad_vec(direction) })),
    }
}

pub fn read_body(v: &Value) -> Result<ConvexBody> {
    check_schema(v)?;
    let kind = field(v, "kind")?.as_str().ok_or_else(|| bad("a body kind"))?;
    match kind {
        "polyhedron" => Ok(ConvexBody::RationalPoly(read_hpoly(v)?)),
        "motzkin" => {
            let vertices: Vec<Vec<QuadValue>> =
                array(field(v, "vertices")?, "vertices")?.iter().map(read_quad_vec).collect::<Result<_>>()?;
            let dim = vertices.first().map(Vec::len).ok_or_else(|| bad("a vertex"))?;
            let gens = match v.get("cone") {
                Some(c) => read_int_vecs(c)?,
                None => Vec::new(),
            };
            ConvexBody::motzkin(vertices, RationalCone::new(dim, gens)?)
        }
        "hyperbola" => {
            let s = read_rat_vec(field(v, "s")?)?;
            let s: [Rational; 2] = s.try_into().map_err(|_| bad("a 2-vector s"))?;
            ConvexBody::hyperbola(s, read_rational(field(v, "r")?)?)
        }
        "ellipsoid" => {
            let center = read_rat_vec(field(v, "center")?)?;
            let shape = array(field(v, "shape")?, "a matrix")?.iter().map(read_rat_vec).collect::<Result<_>>()?;
            ConvexBody::ellipsoid(center, shape)
        }
        "line" => ConvexBody::line(read_quad_vec(field(v, "direction")?)?),
        other => Err(Error::Parse(format!("unknown body kind {other:?}"))),
    }
}

/// Accepts a missing schema tag; rejects a different one.
pub fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => Err(Error::Parse(format!("unsupported schema {other}"))),
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn cut(c: &CGCut) -> Value {
    json!({ "c": int_vec(&c.c), "rhs": int(&c.rhs) })
}

pub fn read_cut(v: &Value) -> Result<CGCut> {
    Ok(CGCut { c: read_int_vec(field(v, "c")?)?, rhs: read_int(field(v, "rhs")?)? })
}

fn exactness(e: &Exactness) -> Value {
    match e {
        Exactness::Exact => json!({ "exact": true }),
        Exactness::OuterApproximation(r) => json!({ "exact": false, "radius": r }),
    }
}

pub fn closure(r: &ClosureReport) -> Value {
    document(
        "closure",
        json!({
            "exactness": exactness(&r.exactness),
            "hilbert_radius": r.hilbert_radius.as_ref().map(int),
            "cuts": r.cuts.iter().map(cut).collect::<Vec<_>>(),
            "polyhedron": hpoly(&r.polyhedron),
        }),
    )
}

pub fn hull(r: &HullReport) -> Value {
    document(
        "hull",
        json!({
            "vrep": vpoly(&r.vpoly),
            "hrep": hpoly(&r.hpoly),
            "box": { "lower": int_vec(&r.certified_box.lower), "upper": int_vec(&r.certified_box.upper) },
        }),
    )
}

pub fn rank(r: &RankReport) -> Value {
    document("rank", json!({ "rank": r.rank, "trace": r.trace.iter().map(hpoly).collect::<Vec<_>>() }))
}

pub fn hilbert(c: &RationalCone, basis: &[IntVec]) -> Value {
    document("hilbert", json!({ "cone": cone(c), "basis": basis.iter().map(|h| int_vec(h)).collect::<Vec<_>>() }))
}

pub fn certificate(c: &Certificate) -> Value {
    let verdict = match &c.verdict {
        Verdict::Certified => json!({ "certified": true }),
        Verdict::Refuted(w) => json!({ "certified": false, "witness": rat_vec(w) }),
    };
    document(
        "certificate",
        json!({
            "directions": c.directions.iter().map(|d| int_vec(d)).collect::<Vec<_>>(),
            "vacuous": c.vacuous.iter().map(|d| int_vec(d)).collect::<Vec<_>>(),
            "cuts": c.cuts.iter().map(cut).collect::<Vec<_>>(),
            "q_f": hpoly(&c.q_f),
            "verdict": verdict,
        }),
    )
}

pub fn vpi(v: &VpiSubspace) -> Value {
    document(
        "vpi",
        json!({
            "pi": quad_vec(&v.pi),
            "index_set": v.index_set,
            "q": v.q.iter().map(|r| rat_vec(r)).collect::<Vec<_>>(),
            "basis": v.basis.iter().map(|b| rat_vec(b)).collect::<Vec<_>>(),
        }),
    )
}

fn approximant_body(a: &Approximant) -> Value {
    json!({ "c": int_vec(&a.c), "m": int(&a.m), "residual": quad_vec(&a.residual) })
}

pub fn approximant(a: &Approximant) -> Value {
    document("approximant", approximant_body(a))
}

pub fn zero_combination(z: &ZeroCombination) -> Value {
    let terms: Vec<Value> = z
        .terms
        .iter()
        .map(|t| {
            let mut v = approximant_body(&t.approx);
            v["lambda"] = quad(&t.lambda);
            v
        })
        .collect();
    document("zero_combination", json!({ "k": z.k(), "terms": terms }))
}

pub fn face_family(f: &FaceCutFamily) -> Value {
    let members: Vec<Value> = f
        .members
        .iter()
        .map(|m| json!({ "term": m.term, "c": int_vec(&m.c), "m": int(&m.m), "g": int_vec(&m.g), "rhs": int(&m.rhs) }))
        .collect();
    document(
        "face_cuts",
        json!({
            "alpha": quad_vec(&f.alpha),
            "alpha0": int(&f.alpha0),
            "members": members,
            "lambdas": quad_vec(&f.lambdas),
        }),
    )
}

pub fn grouped_cuts(w: &GroupedCutWitness) -> Value {
    document(
        "bucket_witness",
        json!({
            "p_star": rat_vec(&w.p_star),
            "i_star": w.i_star,
            "members": w.members,
            "lambda": w.lambda.iter().map(cut).collect::<Vec<_>>(),
        }),
    )
}

/// `[{"g": [...], "floor": "..."}]`.
pub fn read_g_list(v: &Value) -> Result<Vec<(IntVec, BigInt)>> {
    array(v, "a list of face directions")?
        .iter()
        .map(|e| Ok((read_int_vec(field(e, "g")?)?, read_int(field(e, "floor")?)?)))
        .collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rats;

    #[test]
    fn body_round_trip() {
        let bodies = [
            r#"{"schema":"cglab/1","kind":"hyperbola","s":["1/5","1/5"],"r":2}"#,
            r#"{"kind":"motzkin","vertices":[["0","2"],["sqrt(2)","0"]],"cone":[]}"#,
            r#"{"kind":"line","direction":["1","sqrt(2)"]}"#,
            r#"{"kind":"polyhedron","dim":2,"rows":[{"a":[-1,0],"b":0},{"a":["2","2"],"b":"3"}]}"#,
            r#"{"kind":"ellipsoid","center":["1/2",0],"shape":[[1,0],[0,"1/4"]]}"#,
        ];
        for text in bodies {
            let k = read_body(&parse_json(text).unwrap()).unwrap();
            let again = read_body(&body(&k)).unwrap();
            assert_eq!(k, again, "{text}");
        }
        assert!(read_body(&parse_json(r#"{"schema":"other","kind":"line","direction":[1]}"#).unwrap()).is_err());
        assert!(read_body(&parse_json(r#"{"kind":"blob"}"#).unwrap()).is_err());
    }

    #[test]
    fn polyhedron_encoding() {
        let p = HPolyhedron::new(2, vec![rats(&[2, 4])], vec![Rational::new(3.into(), 1.into())]).unwrap();
        let v = hpoly(&p);
        assert_eq!(v["rows"][0]["a"], json!(["1", "2"]));
        assert_eq!(v["rows"][0]["b"], json!("3/2"));
        assert_eq!(read_hpoly(&v).unwrap(), p);
    }
}
