//! Reading bodies and vectors from files or inline arguments.

use std::fs;
use std::path::Path;

use cglab::arith::{parse_quad, parse_rational};
use cglab::{io, ConvexBody, Error, IntVec, QuadValue, RationalCone, Rational, Result};
use num_bigint::BigInt;
use serde_json::Value;

pub fn load_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_json(&text)
}

pub fn body(path: &Path) -> Result<ConvexBody> {
    io::read_body(&load_json(path)?)
}

pub fn cone(path: &Path) -> Result<RationalCone> {
    let v = load_json(path)?;
    io::check_schema(&v)?;
    io::read_cone(&v)
}

/// A JSON file, inline JSON, or a comma-separated list.
fn list(arg: &str) -> Result<Vec<String>> {
    let v = if Path::new(arg).is_file() {
        Some(load_json(Path::new(arg))?)
    } else if arg.trim_start().starts_with('[') {
        Some(io::parse_json(arg)?)
    } else {
        None
    };
    match v {
        Some(Value::Array(items)) => items
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Parse(format!("bad vector entry {x}"))),
            })
            .collect(),
        Some(_) => Err(Error::Parse(format!("{arg}: expected a JSON array"))),
        None => Ok(arg.split(',').map(|s| s.trim().to_string()).collect()),
    }
}

pub fn quads(arg: &str) -> Result<Vec<QuadValue>> {
    list(arg)?.iter().map(|s| parse_quad(s)).collect()
}

pub fn rationals(arg: &str) -> Result<Vec<Rational>> {
    list(arg)?.iter().map(|s| parse_rational(s)).collect()
}

pub fn ints(arg: &str) -> Result<IntVec> {
    rationals(arg)?
        .into_iter()
        .map(|r| if r.is_integer() { Ok(r.to_integer()) } else { Err(Error::Parse(format!("{arg}: not an integer vector"))) })
        .collect()
}

pub fn int_vecs(path: &Path) -> Result<Vec<IntVec>> {
    io::read_int_vecs(&load_json(path)?)
}

pub fn g_list(arg: &str) -> Result<Vec<(IntVec, BigInt)>> {
    let v = if Path::new(arg).is_file() { load_json(Path::new(arg))? } else { io::parse_json(arg)? };
    io::read_g_list(&v)
}

/// `"lo:hi"` with integer ends.
pub fn range(arg: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Parse(format!("{arg}: expected lo:hi"));
    let (lo, hi) = arg.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

/// `"x0:x1,y0:y1"` with rational ends.
pub fn window(arg: &str) -> Result<[(Rational, Rational); 2]> {
    let bad = || Error::Parse(format!("{arg}: expected x0:x1,y0:y1"));
    let (x, y) = arg.split_once(',').ok_or_else(bad)?;
    let axis = |s: &str| -> Result<(Rational, Rational)> {
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let (a, b) = (parse_rational(a)?, parse_rational(b)?);
        if a >= b {
            return Err(bad());
        }
        Ok((a, b))
    };
    Ok([axis(x)?, axis(y)?])
}
