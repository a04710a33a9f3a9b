//! JSON and SVG views of the computed objects. Variable and Gale-vector
//! indices are 1-based here.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::Result;
use crate::geometry2d::ChamberComplex;
use crate::groebner::GroebnerFan2;
use crate::hilbert_scheme::{flips, tangent_dimension, ToricHilbertScheme};
use crate::ideals::MonomialIdeal;

use super::ParsedInput;

fn one_based(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().map(|k| k + 1).collect()
}

fn gens(ideal: &MonomialIdeal) -> Vec<Vec<i64>> {
    ideal.gens().iter().map(|g| g.exps().to_vec()).collect()
}

pub fn normalize_json(p: &ParsedInput) -> Value {
    json!({
        "name": p.name,
        "basis": p.lattice.rows(),
        "original_n": p.log.original_n,
        "kept": p.log.kept.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "steps": p.log.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

pub fn chambers_json(c: &ChamberComplex) -> Value {
    json!({
        "support": c.support.as_str(),
        "rays": c.rays.iter().map(|r| json!({
            "ray": r.ray.dir,
            "sources": r.sources.iter().map(|k| k + 1).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "chambers": c.chambers.iter().map(|ch| json!({
            "cw": ch.cone.cw.dir,
            "ccw": ch.cone.ccw.dir,
            "pair": [ch.i + 1, ch.j + 1],
        })).collect::<Vec<_>>(),
    })
}

pub fn ideals_json(s: &ToricHilbertScheme) -> Result<Value> {
    let mut rows = Vec::new();
    for (k, r) in s.records.iter().enumerate() {
        let cone = &s.fan.cones[k];
        let faces = r.ideal.minimal_primes()?;
        // the prime of a face sigma is generated by the variables outside it
        let mut primes: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| (0..r.ideal.n()).filter(|v| !f.contains(v)).map(|v| v + 1).collect())
            .collect();
        primes.sort();
        rows.push(json!({
            "ideal": r.ideal.to_string(),
            "generators": gens(&r.ideal),
            "radical": gens(&r.ideal.radical()),
            "faces": faces.iter().map(one_based).collect::<Vec<_>>(),
            "prime_decomposition": primes,
            "cone": [s.fan.rays[cone.cw].dir, s.fan.rays[cone.ccw].dir],
            "special_simplex": one_based(&r.simplex.sigma),
            "special_localization": {
                "variables": r.localization.vars.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "generators": gens(&r.localization.ideal),
            },
            "witness": r.witness,
        }));
    }
    Ok(Value::Array(rows))
}

pub fn flips_json(s: &ToricHilbertScheme) -> Result<Value> {
    let mut rows = Vec::new();
    for r in &s.records {
        let fs = flips(s, &r.ideal)?;
        rows.push(json!({
            "ideal": r.ideal.to_string(),
            "flips": fs.iter().map(|f| json!({
                "binomial": f.to_string(),
                "l": f.binomial.l,
                "kind": f.kind,
                "target": f.target.as_ref().map(|t| t.to_string()),
                "wall": f.wall.map(|w| w.dir),
            })).collect::<Vec<_>>(),
        }));
    }
    Ok(Value::Array(rows))
}

pub fn tangent_json(s: &ToricHilbertScheme) -> Result<Value> {
    let mut rows = Vec::new();
    for r in &s.records {
        rows.push(json!({
            "ideal": r.ideal.to_string(),
            "dimension": tangent_dimension(&r.ideal, &s.lattice, s.cap)?,
            "flips": flips(s, &r.ideal)?.len(),
        }));
    }
    Ok(Value::Array(rows))
}

/// Pretty JSON with arrays of scalars kept on one line.
pub fn to_json_text(v: &Value) -> String {
    fn scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn inline(v: &Value) -> String {
        match v {
            Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
            _ => serde_json::to_string(v).expect("serializable"),
        }
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(items) if items.is_empty() => out.push_str("[]"),
            Value::Array(items) if items.iter().all(scalar) || items.iter().all(|i| matches!(i, Value::Array(a) if a.iter().all(scalar))) => {
                out.push_str(&inline(v));
            }
            Value::Array(items) => {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    out.push_str(&pad);
                    go(item, indent + 1, out);
                    out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Value::Object(map) if map.is_empty() => out.push_str("{}"),
            Value::Object(map) => {
                out.push_str("{\n");
                for (k, (key, item)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&serde_json::to_string(key).expect("string"));
                    out.push_str(": ");
                    go(item, indent + 1, out);
                    out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            _ => out.push_str(&serde_json::to_string(v).expect("serializable")),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out.push('\n');
    out
}

const SIZE: f64 = 480.0;
const RADIUS: f64 = 170.0;
const FILLS: [&str; 4] = ["#dbe9f6", "#f6e3d0", "#dff0d8", "#efe0f3"];

fn unit(v: [i64; 2]) -> (f64, f64) {
    let (x, y) = (v[0] as f64, v[1] as f64);
    let r = x.hypot(y);
    (x / r, y / r)
}

fn screen(p: (f64, f64), scale: f64) -> (f64, f64) {
    (SIZE / 2.0 + scale * p.0, SIZE / 2.0 - scale * p.1)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Rays drawn to unit length on a circle, cones shaded and labelled by
/// their ideals.
pub fn fan_svg(fan: &GroebnerFan2) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let (cx, cy) = (SIZE / 2.0, SIZE / 2.0);
    for (k, c) in fan.cones.iter().enumerate() {
        let a = screen(unit(c.cone.cw.dir), RADIUS);
        let b = screen(unit(c.cone.ccw.dir), RADIUS);
        let _ = writeln!(
            out,
            r#"  <path d="M {cx:.2} {cy:.2} L {:.2} {:.2} A {RADIUS:.2} {RADIUS:.2} 0 0 0 {:.2} {:.2} Z" fill="{}" stroke="none"/>"#,
            a.0,
            a.1,
            b.0,
            b.1,
            FILLS[k % FILLS.len()]
        );
    }
    for r in &fan.rays {
        let p = screen(unit(r.dir), RADIUS);
        let q = screen(unit(r.dir), RADIUS + 18.0);
        let _ = writeln!(
            out,
            r##"  <line x1="{cx:.2}" y1="{cy:.2}" x2="{:.2}" y2="{:.2}" stroke="#333" stroke-width="1.5"/>"##,
            p.0, p.1
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">({},{})</text>"#,
            q.0, q.1, r.dir[0], r.dir[1]
        );
    }
    for c in &fan.cones {
        let (u, v) = (unit(c.cone.cw.dir), unit(c.cone.ccw.dir));
        let mid = (u.0 + v.0, u.1 + v.1);
        let norm = mid.0.hypot(mid.1).max(1e-9);
        let p = screen((mid.0 / norm, mid.1 / norm), RADIUS * 0.62);
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-size="9" text-anchor="middle">{}</text>"#,
            p.0,
            p.1,
            escape(&c.ideal.to_string())
        );
    }
    out.push_str("</svg>\n");
    out
}
