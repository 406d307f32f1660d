//! Hand-written SVG pictures of 2-D bodies, cuts and closures.
//!
//! Pictures are for looking at; coordinates are rounded to 12 significant
//! digits and the exact data lives in the JSON output.

use std::fmt::Write;

use cglab::{CGCut, ConvexBody, Error, HPolyhedron, Rational, Result};
use num_traits::ToPrimitive;

const SIZE: f64 = 600.0;

fn fmt12(x: f64) -> String {
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{r}")
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

struct Canvas {
    x: (f64, f64),
    y: (f64, f64),
}

impl Canvas {
    fn point(&self, p: (f64, f64)) -> String {
        let px = (p.0 - self.x.0) / (self.x.1 - self.x.0) * SIZE;
        let py = SIZE - (p.1 - self.y.0) / (self.y.1 - self.y.0) * SIZE;
        format!("{},{}", fmt12(px), fmt12(py))
    }

    fn path(&self, pts: &[(f64, f64)], close: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            d.push_str(if i == 0 { "M" } else { " L" });
            d.push_str(&self.point(*p));
        }
        if close {
            d.push_str(" Z");
        }
        d
    }

    fn far(&self) -> f64 {
        4.0 * ((self.x.1 - self.x.0).abs() + (self.y.1 - self.y.0).abs() + self.x.0.abs() + self.y.0.abs() + 1.0)
    }

    /// The part of the line `c·x = rhs` inside the window.
    fn clip_line(&self, c: (f64, f64), rhs: f64) -> Option<[(f64, f64); 2]> {
        let mut pts = Vec::new();
        for &x in &[self.x.0, self.x.1] {
            if c.1 != 0.0 {
                let y = (rhs - c.0 * x) / c.1;
                if y >= self.y.0 - 1e-12 && y <= self.y.1 + 1e-12 {
                    pts.push((x, y));
                }
            }
        }
        for &y in &[self.y.0, self.y.1] {
            if c.0 != 0.0 {
                let x = (rhs - c.1 * y) / c.0;
                if x >= self.x.0 - 1e-12 && x <= self.x.1 + 1e-12 {
                    pts.push((x, y));
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        (pts.len() >= 2).then(|| [pts[0], pts[pts.len() - 1]])
    }
}

/// Convex polygon through points, counter-clockwise.
fn hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Vertices of `p` inside the window, computed exactly.
fn clipped_polygon(p: &HPolyhedron, window: &[(Rational, Rational); 2]) -> Result<Vec<(f64, f64)>> {
    let mut boxed = p.clone();
    for (j, (lo, hi)) in window.iter().enumerate() {
        let mut e = vec![Rational::from_integer(0.into()); 2];
        e[j] = Rational::from_integer(1.into());
        boxed = boxed.with_row(e.clone(), hi.clone())?;
        e[j] = Rational::from_integer((-1).into());
        boxed = boxed.with_row(e, -lo.clone())?;
    }
    let v = boxed.vrep()?;
    Ok(hull(v.vertices.iter().map(|x| (f(&x[0]), f(&x[1]))).collect()))
}

fn body_outline(k: &ConvexBody, canvas: &Canvas, window: &[(Rational, Rational); 2]) -> Result<Vec<(f64, f64)>> {
    let far = canvas.far();
    Ok(match k {
        ConvexBody::RationalPoly(p) => clipped_polygon(p, window)?,
        ConvexBody::MotzkinSum { vertices, cone } => {
            let vs: Vec<(f64, f64)> = vertices.iter().map(|v| (v[0].to_f64(), v[1].to_f64())).collect();
            let mut pts = vs.clone();
            for g in cone.generators() {
                let (gx, gy) = (g[0].to_f64().unwrap_or(0.0), g[1].to_f64().unwrap_or(0.0));
                let n = (gx * gx + gy * gy).sqrt();
                pts.extend(vs.iter().map(|&(x, y)| (x + far * gx / n, y + far * gy / n)));
            }
            hull(pts)
        }
        ConvexBody::ShiftedHyperbola { s, r } => {
            let (s1, s2, r) = (f(&s[0]), f(&s[1]), f(r));
            let mut pts: Vec<(f64, f64)> = (0..=240)
                .map(|i| {
                    let t = (-6.0 + 12.0 * i as f64 / 240.0f64).exp() * r.sqrt();
                    (s1 + t, s2 + r / t)
                })
                .collect();
            pts.push((s1 + far, s2 + far));
            pts
        }
        ConvexBody::Ellipsoid { center, shape } => {
            let (a, b, d) = (f(&shape[0][0]), f(&shape[0][1]), f(&shape[1][1]));
            // square root of a symmetric 2×2 positive semidefinite matrix
            let det = (a * d - b * b).max(0.0).sqrt();
            let t = (a + d + 2.0 * det).sqrt();
            let (ra, rb, rd) = if t > 0.0 { ((a + det) / t, b / t, (d + det) / t) } else { (0.0, 0.0, 0.0) };
            let (cx, cy) = (f(&center[0]), f(&center[1]));
            (0..120)
                .map(|i| {
                    let th = std::f64::consts::TAU * i as f64 / 120.0;
                    let (u, v) = (th.cos(), th.sin());
                    (cx + ra * u + rb * v, cy + rb * u + rd * v)
                })
                .collect()
        }
        ConvexBody::IrrationalLine { direction } => {
            let (ux, uy) = (direction[0].to_f64(), direction[1].to_f64());
            let n = (ux * ux + uy * uy).sqrt();
            vec![(-far * ux / n, -far * uy / n), (far * ux / n, far * uy / n)]
        }
    })
}

/// An SVG document with the body, one path per cut, and optionally a region.
pub fn svg(
    k: &ConvexBody,
    cuts: &[CGCut],
    region: Option<&HPolyhedron>,
    window: &[(Rational, Rational); 2],
) -> Result<String> {
    if k.dim() != 2 {
        return Err(Error::Precondition("SVG rendering needs a 2-D body".into()));
    }
    let canvas = Canvas { x: (f(&window[0].0), f(&window[0].1)), y: (f(&window[1].0), f(&window[1].1)) };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#);
    let _ = writeln!(out, "<!-- coordinates rounded to 12 significant digits; exact values are in the JSON output -->");
    let _ = writeln!(out, r#"<defs><clipPath id="window"><rect x="0" y="0" width="{SIZE}" height="{SIZE}"/></clipPath></defs>"#);
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>"#);
    let _ = writeln!(out, r#"<g clip-path="url(#window)">"#);
    let outline = body_outline(k, &canvas, window)?;
    let closed = !matches!(k, ConvexBody::IrrationalLine { .. });
    let _ = writeln!(
        out,
        r#"<path class="body" d="{}" fill="{}" stroke="steelblue" stroke-width="2"/>"#,
        canvas.path(&outline, closed),
        if closed { "lightsteelblue" } else { "none" }
    );
    if let Some(p) = region {
        let poly = clipped_polygon(p, window)?;
        if !poly.is_empty() {
            let _ = writeln!(
                out,
                r#"<path class="region" d="{}" fill="orange" fill-opacity="0.4" stroke="darkorange" stroke-width="2"/>"#,
                canvas.path(&poly, true)
            );
        }
    }
    for cut in cuts {
        let c = (cut.c[0].to_f64().unwrap_or(0.0), cut.c[1].to_f64().unwrap_or(0.0));
        if let Some([a, b]) = canvas.clip_line(c, cut.rhs.to_f64().unwrap_or(0.0)) {
            let _ = writeln!(out, r#"<path class="cut" d="{}" stroke="crimson" stroke-width="1"/>"#, canvas.path(&[a, b], false));
        }
    }
    let _ = writeln!(out, "</g>");
    for x in (canvas.x.0.ceil() as i64)..=(canvas.x.1.floor() as i64) {
        for y in (canvas.y.0.ceil() as i64)..=(canvas.y.1.floor() as i64) {
            let p = canvas.point((x as f64, y as f64));
            let (px, py) = p.split_once(',').unwrap_or(("0", "0"));
            let _ = writeln!(out, r#"<circle cx="{px}" cy="{py}" r="2" fill="black"/>"#);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
