//! JSON encodings of base data, graded objects and morphisms.

use serde_json::{json, Value};

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, Rational};

pub fn base_to_json(b: &BaseCategory) -> Value {
    let chi: Vec<Value> = b.generator_exponents().iter().map(|(i, j, e)| json!([i, j, e])).collect();
    json!({ "group": b.group().orders(), "root_order": b.root_order(), "chi": chi })
}

pub fn base_from_json(v: &Value) -> Result<BaseCategory> {
    let group = v
        .get("group")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("group", "expected array of cyclic orders"))?;
    let orders = group
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .filter(|n| *n >= 1 && *n <= u32::MAX as u64)
                .map(|n| n as u32)
                .ok_or_else(|| Error::parse(format!("group[{i}]"), "expected positive integer"))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = v
        .get("root_order")
        .and_then(Value::as_u64)
        .filter(|m| *m >= 1 && *m <= 10_000)
        .ok_or_else(|| Error::parse("root_order", "expected positive integer"))? as u32;
    let mut gens = Vec::new();
    if let Some(chi) = v.get("chi") {
        let chi = chi.as_array().ok_or_else(|| Error::parse("chi", "expected array"))?;
        for (k, t) in chi.iter().enumerate() {
            let path = format!("chi[{k}]");
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| Error::parse(&path, "expected [g, h, e]"))?;
            let i = t[0].as_u64().ok_or_else(|| Error::parse(&path, "generator index"))? as usize;
            let j = t[1].as_u64().ok_or_else(|| Error::parse(&path, "generator index"))? as usize;
            let e = t[2].as_i64().ok_or_else(|| Error::parse(&path, "exponent"))?;
            gens.push((i, j, e));
        }
    }
    BaseCategory::new(orders, m, &gens)
}

pub fn object_to_json(b: &BaseCategory, u: &GradedObject) -> Value {
    let grades: Vec<Value> = u.grades().iter().map(|g| b.group().element_to_json(*g)).collect();
    json!({ "grades": grades })
}

/// Accepts `{"grades": [...]}` (ordered basis) or `{"mult": [[g, n], ...]}` (canonical order).
pub fn object_from_json(b: &BaseCategory, v: &Value, path: &str) -> Result<GradedObject> {
    if let Some(gs) = v.get("grades").and_then(Value::as_array) {
        let grades = gs
            .iter()
            .enumerate()
            .map(|(i, g)| b.group().element_from_json(g, &format!("{path}.grades[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(GradedObject::from_grades(grades));
    }
    if let Some(ms) = v.get("mult").and_then(Value::as_array) {
        let mut mult = Vec::new();
        for (i, p) in ms.iter().enumerate() {
            let p_path = format!("{path}.mult[{i}]");
            let p = p.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::parse(&p_path, "expected [grade, count]"))?;
            let g = b.group().element_from_json(&p[0], &p_path)?;
            let n = p[1].as_u64().ok_or_else(|| Error::parse(&p_path, "expected count"))? as usize;
            mult.push((g, n));
        }
        return Ok(GradedObject::from_multiplicities(&mult));
    }
    Err(Error::parse(path, "expected {\"grades\": [...]} or {\"mult\": [...]}"))
}

/// Scalars are `{"m", "coeffs"}` objects; bare `"p/q"` strings and integers are read as rationals.
pub fn scalar_from_json(b: &BaseCategory, v: &Value, path: &str) -> Result<Cyclotomic> {
    let c = match v {
        Value::String(s) => {
            let r: Rational = s.parse().map_err(|e| Error::parse(path, format!("{e}")))?;
            Cyclotomic::from_rational(b.root_order(), r)
        }
        Value::Number(n) => {
            let n = n.as_i64().ok_or_else(|| Error::parse(path, "expected integer"))?;
            Cyclotomic::from_int(b.root_order(), n)
        }
        _ => Cyclotomic::from_json(v).map_err(|e| Error::parse(path, format!("{e}")))?,
    };
    if c.order() == b.root_order() {
        Ok(c)
    } else {
        c.embed(b.root_order()).map_err(|e| Error::parse(path, format!("{e}")))
    }
}

/// Entries grouped by grade, indices counted within each grade.
pub fn blocks_to_json(b: &BaseCategory, f: &GradedMorphism) -> Value {
    let blocks: Vec<Value> = f
        .blocks()
        .into_iter()
        .filter(|blk| blk.matrix.iter().any(|r| r.iter().any(Option::is_some)))
        .map(|blk| {
            let mut entries = Vec::new();
            for (i, row) in blk.matrix.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if let Some(v) = v {
                        entries.push(json!([i, j, v.to_json()]));
                    }
                }
            }
            json!({ "grade": b.group().element_to_json(blk.grade), "entries": entries })
        })
        .collect();
    Value::Array(blocks)
}

pub fn morphism_to_json(b: &BaseCategory, f: &GradedMorphism) -> Value {
    json!({
        "dom": object_to_json(b, f.dom()),
        "cod": object_to_json(b, f.cod()),
        "blocks": blocks_to_json(b, f),
    })
}

/// Reads grade blocks for a morphism whose shape is already known.
pub fn blocks_from_json(
    b: &BaseCategory,
    dom: &GradedObject,
    cod: &GradedObject,
    v: &Value,
    path: &str,
) -> Result<GradedMorphism> {
    let blocks = v.as_array().ok_or_else(|| Error::parse(path, "expected array of blocks"))?;
    let mut entries = Vec::new();
    for (k, blk) in blocks.iter().enumerate() {
        let bpath = format!("{path}[{k}]");
        let g = b.group().element_from_json(
            blk.get("grade").ok_or_else(|| Error::parse(&bpath, "missing grade"))?,
            &format!("{bpath}.grade"),
        )?;
        let rows: Vec<usize> = (0..cod.dim()).filter(|i| cod.grade(*i) == g).collect();
        let cols: Vec<usize> = (0..dom.dim()).filter(|i| dom.grade(*i) == g).collect();
        let es = blk
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(&bpath, "missing entries"))?;
        for (n, e) in es.iter().enumerate() {
            let epath = format!("{bpath}.entries[{n}]");
            let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| Error::parse(&epath, "expected [i, j, value]"))?;
            let i = e[0].as_u64().ok_or_else(|| Error::parse(&epath, "row index"))? as usize;
            let j = e[1].as_u64().ok_or_else(|| Error::parse(&epath, "column index"))? as usize;
            let (Some(r), Some(c)) = (rows.get(i), cols.get(j)) else {
                return Err(Error::parse(&epath, format!("index ({i},{j}) outside grade block")));
            };
            entries.push((*r, *c, scalar_from_json(b, &e[2], &epath)?));
        }
    }
    GradedMorphism::from_entries(dom.clone(), cod.clone(), entries).map_err(|e| Error::parse(path, e.to_string()))
}

pub fn morphism_from_json(b: &BaseCategory, v: &Value, path: &str) -> Result<GradedMorphism> {
    let dom = object_from_json(b, v.get("dom").ok_or_else(|| Error::parse(path, "missing dom"))?, &format!("{path}.dom"))?;
    let cod = object_from_json(b, v.get("cod").ok_or_else(|| Error::parse(path, "missing cod"))?, &format!("{path}.cod"))?;
    let blocks = v.get("blocks").ok_or_else(|| Error::parse(path, "missing blocks"))?;
    blocks_from_json(b, &dom, &cod, blocks, &format!("{path}.blocks"))
}
