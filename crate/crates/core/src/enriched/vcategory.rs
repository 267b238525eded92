use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::error::{Error, Result};
use crate::json::{base_from_json, base_to_json, blocks_from_json, blocks_to_json, object_from_json, object_to_json};

use super::{obj_from_json, obj_to_json, Obj, VCat};

/// A V-category with every hom object, composition and identity stored.
#[derive(Clone)]
pub struct VCategory {
    base: Arc<BaseCategory>,
    objects: Vec<Obj>,
    index: HashMap<Obj, usize>,
    homs: Vec<GradedObject>,
    comps: Vec<GradedMorphism>,
    idents: Vec<GradedMorphism>,
}

impl VCategory {
    /// Tabulates structure given by functions, checking every shape.
    pub fn from_fns(
        base: Arc<BaseCategory>,
        objects: Vec<Obj>,
        hom: impl Fn(&Obj, &Obj) -> Result<GradedObject> + Sync,
        comp: impl Fn(&Obj, &Obj, &Obj) -> Result<GradedMorphism> + Sync,
        ident: impl Fn(&Obj) -> Result<GradedMorphism> + Sync,
    ) -> Result<Self> {
        let n = objects.len();
        let mut index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if index.insert(o.clone(), i).is_some() {
                return Err(Error::ShapeMismatch(format!("object {o} listed twice")));
            }
        }
        let homs = (0..n * n)
            .into_par_iter()
            .map(|k| hom(&objects[k / n], &objects[k % n]))
            .collect::<Result<Vec<_>>>()?;
        let comps = (0..n * n * n)
            .into_par_iter()
            .map(|k| comp(&objects[k / (n * n)], &objects[(k / n) % n], &objects[k % n]))
            .collect::<Result<Vec<_>>>()?;
        let idents = objects.par_iter().map(&ident).collect::<Result<Vec<_>>>()?;
        let c = VCategory { base, objects, index, homs, comps, idents };
        c.check_shapes()?;
        Ok(c)
    }

    /// Materializes any V-category on its object window.
    pub fn materialize(c: &dyn VCat) -> Result<Self> {
        Self::from_fns(c.base().clone(), c.objects(), |a, b| c.hom(a, b), |a, b, d| c.comp(a, b, d), |a| c.ident(a))
    }

    /// The one-object category whose only hom object is the unit, with trivial structure.
    pub fn trivial(base: Arc<BaseCategory>, label: &str) -> Self {
        let one = GradedObject::unit();
        let id = base.identity(&one);
        Self::from_fns(base, vec![Obj::named(label)], |_, _| Ok(one.clone()), |_, _, _| Ok(id.clone()), |_| Ok(id.clone()))
            .expect("trivial category is well shaped")
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.objects.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let f = &self.comps[(i * n + j) * n + k];
                    let dom = self.base.tensor_obj(&self.homs[i * n + j], &self.homs[j * n + k]);
                    if f.dom() != &dom || f.cod() != &self.homs[i * n + k] {
                        return Err(Error::ShapeMismatch(format!(
                            "composition at ({}, {}, {}) has shape {} -> {}",
                            self.objects[i],
                            self.objects[j],
                            self.objects[k],
                            f.dom(),
                            f.cod()
                        )));
                    }
                }
            }
            let e = &self.idents[i];
            if !e.dom().is_unit() || e.cod() != &self.homs[i * n + i] {
                return Err(Error::ShapeMismatch(format!("identity of {} has wrong shape", self.objects[i])));
            }
        }
        Ok(())
    }

    fn idx(&self, a: &Obj) -> Result<usize> {
        self.index.get(a).copied().ok_or_else(|| Error::UnknownObject(a.to_string()))
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// A copy with one composition replaced (same shape required).
    pub fn with_comp(&self, a: &Obj, b: &Obj, c: &Obj, f: GradedMorphism) -> Result<Self> {
        let n = self.objects.len();
        let k = (self.idx(a)? * n + self.idx(b)?) * n + self.idx(c)?;
        if !f.same_shape(&self.comps[k]) {
            return Err(Error::ShapeMismatch("replacement composition has a different shape".into()));
        }
        let mut out = self.clone();
        out.comps[k] = f;
        Ok(out)
    }

    /// A copy with one identity replaced (same shape required).
    pub fn with_ident(&self, a: &Obj, f: GradedMorphism) -> Result<Self> {
        let i = self.idx(a)?;
        if !f.same_shape(&self.idents[i]) {
            return Err(Error::ShapeMismatch("replacement identity has a different shape".into()));
        }
        let mut out = self.clone();
        out.idents[i] = f;
        Ok(out)
    }

    /// Stable JSON: zero compositions and identities are omitted.
    pub fn to_json(&self) -> Value {
        let b = &*self.base;
        let n = self.objects.len();
        let objects: Vec<Value> = self.objects.iter().map(|o| obj_to_json(b, o)).collect();
        let mut hom = Vec::new();
        for i in 0..n {
            for j in 0..n {
                hom.push(json!({ "from": i, "to": j, "object": object_to_json(b, &self.homs[i * n + j]) }));
            }
        }
        let mut comp = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let f = &self.comps[(i * n + j) * n + k];
                    if !f.is_zero() {
                        comp.push(json!({ "a": i, "b": j, "c": k, "blocks": blocks_to_json(b, f) }));
                    }
                }
            }
        }
        let ident: Vec<Value> = (0..n)
            .filter(|i| !self.idents[*i].is_zero())
            .map(|i| json!({ "a": i, "blocks": blocks_to_json(b, &self.idents[i]) }))
            .collect();
        json!({ "base": base_to_json(b), "objects": objects, "hom": hom, "comp": comp, "ident": ident })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let base = Arc::new(base_from_json(v.get("base").ok_or_else(|| Error::parse("base", "missing"))?)?);
        let objs = v.get("objects").and_then(Value::as_array).ok_or_else(|| Error::parse("objects", "expected array"))?;
        let objects = objs
            .iter()
            .enumerate()
            .map(|(i, o)| obj_from_json(&base, o, &format!("objects[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let n = objects.len();
        let index_at = |e: &Value, key: &str, path: &str| -> Result<usize> {
            e.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .filter(|x| *x < n)
                .ok_or_else(|| Error::parse(format!("{path}.{key}"), "expected object index"))
        };
        let mut homs: Vec<Option<GradedObject>> = vec![None; n * n];
        let hs = v.get("hom").and_then(Value::as_array).ok_or_else(|| Error::parse("hom", "expected array"))?;
        for (k, h) in hs.iter().enumerate() {
            let path = format!("hom[{k}]");
            let (i, j) = (index_at(h, "from", &path)?, index_at(h, "to", &path)?);
            let o = h.get("object").ok_or_else(|| Error::parse(&path, "missing object"))?;
            homs[i * n + j] = Some(object_from_json(&base, o, &format!("{path}.object"))?);
        }
        let homs = homs
            .into_iter()
            .enumerate()
            .map(|(k, h)| h.ok_or_else(|| Error::parse("hom", format!("missing hom ({}, {})", k / n, k % n))))
            .collect::<Result<Vec<_>>>()?;
        let mut comps: Vec<GradedMorphism> = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let dom = base.tensor_obj(&homs[i * n + j], &homs[j * n + k]);
                    comps.push(GradedMorphism::zero(dom, homs[i * n + k].clone()));
                }
            }
        }
        if let Some(cs) = v.get("comp") {
            let cs = cs.as_array().ok_or_else(|| Error::parse("comp", "expected array"))?;
            for (m, c) in cs.iter().enumerate() {
                let path = format!("comp[{m}]");
                let (i, j, k) = (index_at(c, "a", &path)?, index_at(c, "b", &path)?, index_at(c, "c", &path)?);
                let slot = &mut comps[(i * n + j) * n + k];
                let blocks = c.get("blocks").ok_or_else(|| Error::parse(&path, "missing blocks"))?;
                *slot = blocks_from_json(&base, slot.dom(), slot.cod(), blocks, &format!("{path}.blocks"))?;
            }
        }
        let mut idents: Vec<GradedMorphism> =
            (0..n).map(|i| GradedMorphism::zero(GradedObject::unit(), homs[i * n + i].clone())).collect();
        if let Some(is) = v.get("ident") {
            let is = is.as_array().ok_or_else(|| Error::parse("ident", "expected array"))?;
            for (m, e) in is.iter().enumerate() {
                let path = format!("ident[{m}]");
                let i = index_at(e, "a", &path)?;
                let blocks = e.get("blocks").ok_or_else(|| Error::parse(&path, "missing blocks"))?;
                let slot = &mut idents[i];
                *slot = blocks_from_json(&base, slot.dom(), slot.cod(), blocks, &format!("{path}.blocks"))?;
            }
        }
        let mut index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if index.insert(o.clone(), i).is_some() {
                return Err(Error::parse(format!("objects[{i}]"), format!("duplicate object {o}")));
            }
        }
        Ok(VCategory { base, objects, index, homs, comps, idents })
    }
}

impl VCat for VCategory {
    fn base(&self) -> &Arc<BaseCategory> {
        &self.base
    }

    fn objects(&self) -> Vec<Obj> {
        self.objects.clone()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        let n = self.objects.len();
        Ok(self.homs[self.idx(a)? * n + self.idx(b)?].clone())
    }

    fn comp(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<GradedMorphism> {
        let n = self.objects.len();
        Ok(self.comps[(self.idx(a)? * n + self.idx(b)?) * n + self.idx(c)?].clone())
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        Ok(self.idents[self.idx(a)?].clone())
    }
}
