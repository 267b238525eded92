use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use parking_lot::RwLock;
use serde_json::{json, Value};

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::completion::Completion;
use crate::enriched::{Obj, SelfEnrichment, VCat, VCategory};
use crate::error::{Error, Result};
use crate::json::{blocks_from_json, blocks_to_json};

use super::{Dual, VMonoidal};

/// V̂ as a V-monoidal category. `−⊗−` on `V̂(u→v)⊗V̂(w→x)` is the mate of
/// `(1_u⊗β_{w,V̂(u→v)}⊗1);(ε_{u→v}⊗ε_{w→x})`.
pub struct SelfEnrichedMonoidal {
    vhat: Arc<SelfEnrichment>,
}

/// V̂ on `window` with the unit added and closed under `⊗`, leaving out products
/// larger than the largest window object. Sweeps only visit this window; every
/// object of V is accepted by the structure maps.
pub fn self_enriched_monoidal(base: Arc<BaseCategory>, window: &[GradedObject]) -> SelfEnrichedMonoidal {
    let cap = window.iter().map(GradedObject::dim).max().unwrap_or(1);
    let mut objs: Vec<GradedObject> = vec![GradedObject::unit()];
    objs.extend(window.iter().cloned());
    let closed = close_under(objs, |u, v| {
        let uv = base.tensor_obj(u, v);
        (uv.dim() <= cap).then_some(uv)
    });
    SelfEnrichedMonoidal { vhat: Arc::new(SelfEnrichment::new(base, closed)) }
}

/// Adds products until the set is closed; `mul` returns `None` for products left out.
fn close_under<T: Clone + Eq + std::hash::Hash>(start: Vec<T>, mul: impl Fn(&T, &T) -> Option<T>) -> Vec<T> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for x in start {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    let mut done = 0;
    while done < out.len() {
        let n = out.len();
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                if let Some(z) = mul(&out[i], &out[j]) {
                    if seen.insert(z.clone()) {
                        out.push(z);
                    }
                }
            }
        }
        done = n;
    }
    out
}

impl SelfEnrichedMonoidal {
    pub fn vhat(&self) -> &Arc<SelfEnrichment> {
        &self.vhat
    }
}

impl VCat for SelfEnrichedMonoidal {
    fn base(&self) -> &Arc<BaseCategory> {
        self.vhat.base()
    }

    fn objects(&self) -> Vec<Obj> {
        self.vhat.objects()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        self.vhat.hom(a, b)
    }

    fn comp(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<GradedMorphism> {
        self.vhat.comp(a, b, c)
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        self.vhat.ident(a)
    }

    fn compose(&self, a: &Obj, b: &Obj, c: &Obj, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
        self.vhat.compose(a, b, c, f, g)
    }

    fn inverse(&self, a: &Obj, b: &Obj, f: &GradedMorphism) -> Result<Option<GradedMorphism>> {
        self.vhat.inverse(a, b, f)
    }
}

impl VMonoidal for SelfEnrichedMonoidal {
    fn unit_object(&self) -> Obj {
        Obj::V(GradedObject::unit())
    }

    fn tensor_objects(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        Ok(Obj::V(self.base().tensor_obj(a.expect_v()?, b.expect_v()?)))
    }

    fn tensor_homs(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj) -> Result<GradedMorphism> {
        let (u, v, w, x) = (a.expect_v()?, b.expect_v()?, c.expect_v()?, d.expect_v()?);
        let base = self.base();
        let (h1, h2) = (base.internal_hom(u, v), base.internal_hom(w, x));
        let braid = base.tensor_mors(&[&base.identity(u), &base.braiding(w, &h1), &base.identity(&h2)]);
        let eval = base.tensor_mor(&base.eval_counit(u, v), &base.eval_counit(w, x));
        let f = braid.then(&eval)?;
        base.mate_forward_w(&base.tensor_obj(u, w), &base.tensor_obj(&h1, &h2), &f)
    }

    fn tensor_elements(
        &self,
        a: &Obj,
        b: &Obj,
        c: &Obj,
        d: &Obj,
        f: &GradedMorphism,
        g: &GradedMorphism,
    ) -> Result<GradedMorphism> {
        let (u, v, w, x) = (a.expect_v()?, b.expect_v()?, c.expect_v()?, d.expect_v()?);
        let base = self.base();
        let plain = base.tensor_mor(&base.unname(u, v, f)?, &base.unname(w, x, g)?);
        base.name_of(&plain)
    }

    fn dual(&self, a: &Obj) -> Result<Dual> {
        let u = a.expect_v()?;
        let base = self.base();
        Ok(Dual {
            object: Obj::V(base.dual_obj(u)),
            coev: base.name_of(&base.coev(u))?,
            ev: base.name_of(&base.ev(u))?,
        })
    }
}

type TensorKey = (Obj, Obj, Obj, Obj);

/// The completion `C̄` of a V-monoidal `C`, with `(a◀u)(b◀v) = ab◀uv`, unit
/// `1_C◀1` and `−⊗_C̄−` the mate of
/// `(1_u β_{w,C̄(a◀u→b◀v)} 1);(ε⊗ε);(1 β^{-1}_{C(c→d),v} 1);(⊗_C⊗1_{vx})`.
pub struct MonoidalCompletion {
    cbar: Arc<Completion>,
    inner: Arc<dyn VMonoidal>,
    memo: RwLock<HashMap<TensorKey, GradedMorphism>>,
}

/// `C̄` on the window `{a◀u}` over `C`'s objects and `weights`, closed under the
/// object tensor except for products whose `C`-part leaves `C`'s window or whose
/// weight is larger than the largest of `weights`.
pub fn monoidal_complete(c: Arc<dyn VMonoidal>, weights: &[GradedObject]) -> MonoidalCompletion {
    let base = c.base().clone();
    let inner_objs: HashSet<Obj> = c.objects().into_iter().collect();
    let start: Vec<Obj> = c
        .objects()
        .into_iter()
        .flat_map(|a| weights.iter().map(move |u| Obj::weighted(a.clone(), u.clone())))
        .collect();
    let cap = weights.iter().map(GradedObject::dim).max().unwrap_or(1);
    let window = close_under(start, |x, y| {
        let ((a, u), (b, v)) = (x.as_weighted()?, y.as_weighted()?);
        let ab = c.tensor_objects(a, b).ok()?;
        let uv = base.tensor_obj(u, v);
        (inner_objs.contains(&ab) && uv.dim() <= cap).then(|| Obj::weighted(ab, uv))
    });
    let inner_cat: Arc<dyn VCat> = c.clone();
    MonoidalCompletion::new(Arc::new(Completion::new(inner_cat, window)), c)
}

impl MonoidalCompletion {
    /// `cbar` must be a completion of `inner` (as a V-category).
    pub fn new(cbar: Arc<Completion>, inner: Arc<dyn VMonoidal>) -> Self {
        MonoidalCompletion { cbar, inner, memo: RwLock::new(HashMap::new()) }
    }

    pub fn completion(&self) -> &Arc<Completion> {
        &self.cbar
    }

    pub fn inner(&self) -> &Arc<dyn VMonoidal> {
        &self.inner
    }
}

impl VCat for MonoidalCompletion {
    fn base(&self) -> &Arc<BaseCategory> {
        self.cbar.base()
    }

    fn objects(&self) -> Vec<Obj> {
        self.cbar.objects()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        self.cbar.hom(a, b)
    }

    fn comp(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<GradedMorphism> {
        self.cbar.comp(a, b, c)
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        self.cbar.ident(a)
    }
}

impl VMonoidal for MonoidalCompletion {
    fn unit_object(&self) -> Obj {
        Obj::weighted(self.inner.unit_object(), GradedObject::unit())
    }

    fn tensor_objects(&self, x: &Obj, y: &Obj) -> Result<Obj> {
        let ((a, u), (b, v)) = (x.expect_weighted()?, y.expect_weighted()?);
        Ok(Obj::weighted(self.inner.tensor_objects(a, b)?, self.base().tensor_obj(u, v)))
    }

    fn tensor_homs(&self, p: &Obj, q: &Obj, r: &Obj, s: &Obj) -> Result<GradedMorphism> {
        let key = (p.clone(), q.clone(), r.clone(), s.clone());
        if let Some(f) = self.memo.read().get(&key) {
            return Ok(f.clone());
        }
        let ((a, u), (b, v), (c, w), (d, x)) =
            (p.expect_weighted()?, q.expect_weighted()?, r.expect_weighted()?, s.expect_weighted()?);
        let base = self.base();
        let c_ab = self.inner.hom(a, b)?;
        let c_cd = self.inner.hom(c, d)?;
        let abv = base.tensor_obj(&c_ab, v);
        let cdx = base.tensor_obj(&c_cd, x);
        let (h1, h2) = (base.internal_hom(u, &abv), base.internal_hom(w, &cdx));
        let braid = base.tensor_mors(&[&base.identity(u), &base.braiding(w, &h1), &base.identity(&h2)]);
        let eval = base.tensor_mor(&base.eval_counit(u, &abv), &base.eval_counit(w, &cdx));
        let unbraid =
            base.tensor_mors(&[&base.identity(&c_ab), &base.braiding_inv(&c_cd, v), &base.identity(x)]);
        let tensor = base.tensor_mor(&self.inner.tensor_homs(a, b, c, d)?, &base.identity(&base.tensor_obj(v, x)));
        let f = braid.then(&eval)?.then(&unbraid)?.then(&tensor)?;
        let out = base.mate_forward_w(&base.tensor_obj(u, w), &base.tensor_obj(&h1, &h2), &f)?;
        self.memo.write().insert(key, out.clone());
        Ok(out)
    }

    /// `(a◀u)* = a*◀u*` with `coev = coev_a⊗coev_u` and `ev = name(ev_u)⊗ev_a`.
    fn dual(&self, x: &Obj) -> Result<Dual> {
        let (a, u) = x.expect_weighted()?;
        let base = self.base();
        let d = self.inner.dual(a)?;
        Ok(Dual {
            object: Obj::weighted(d.object, base.dual_obj(u)),
            coev: base.tensor_mor(&d.coev, &base.name_of(&base.coev(u))?),
            ev: base.tensor_mor(&base.name_of(&base.ev(u))?, &d.ev),
        })
    }
}

/// A V-monoidal category with every structure map stored, over a window closed
/// under the object tensor.
#[derive(Clone)]
pub struct VMonoidalCategory {
    cat: VCategory,
    objects: Vec<Obj>,
    index: HashMap<Obj, usize>,
    unit: usize,
    otensor: Vec<usize>,
    tensor: Vec<GradedMorphism>,
    duals: HashMap<Obj, Dual>,
}

impl VMonoidalCategory {
    /// Tabulates `m` on its window; `CoverageGap` lists products that leave it.
    /// Duals are copied where `m` supplies them inside the window.
    pub fn materialize(m: &dyn VMonoidal) -> Result<Self> {
        let cat = VCategory::materialize(m)?;
        Self::from_category(cat, m)
    }

    /// Attaches the monoidal structure of `m` to an already tabulated `cat` on the same objects.
    pub fn from_category(cat: VCategory, m: &dyn VMonoidal) -> Result<Self> {
        let objects = cat.objects();
        let n = objects.len();
        let index: HashMap<Obj, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mut missing = Vec::new();
        let mut otensor = Vec::with_capacity(n * n);
        for a in &objects {
            for b in &objects {
                let ab = m.tensor_objects(a, b)?;
                match index.get(&ab) {
                    Some(k) => otensor.push(*k),
                    None => {
                        missing.push(format!("{a}⊗{b} = {ab}"));
                        otensor.push(usize::MAX);
                    }
                }
            }
        }
        let unit = m.unit_object();
        let Some(&u) = index.get(&unit) else {
            missing.push(format!("unit {unit}"));
            return Err(Error::CoverageGap { missing });
        };
        if !missing.is_empty() {
            return Err(Error::CoverageGap { missing });
        }
        use rayon::prelude::*;
        let tensor = (0..n * n * n * n)
            .into_par_iter()
            .map(|k| m.tensor_homs(&objects[k / (n * n * n)], &objects[(k / (n * n)) % n], &objects[(k / n) % n], &objects[k % n]))
            .collect::<Result<Vec<_>>>()?;
        let mut duals = HashMap::new();
        for a in &objects {
            if let Ok(d) = m.dual(a) {
                if index.contains_key(&d.object) {
                    duals.insert(a.clone(), d);
                }
            }
        }
        let out = VMonoidalCategory { cat, objects, index, unit: u, otensor, tensor, duals };
        out.check_shapes()?;
        Ok(out)
    }

    /// The one-object category with trivial monoidal structure; `*` is self-dual.
    pub fn trivial(base: Arc<BaseCategory>, label: &str) -> Self {
        let cat = VCategory::trivial(base.clone(), label);
        let star = Obj::named(label);
        let id = base.identity(&GradedObject::unit());
        let dual = Dual { object: star.clone(), coev: id.clone(), ev: id.clone() };
        VMonoidalCategory {
            cat,
            objects: vec![star.clone()],
            index: [(star.clone(), 0)].into_iter().collect(),
            unit: 0,
            otensor: vec![0],
            tensor: vec![id],
            duals: [(star, dual)].into_iter().collect(),
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.objects.len();
        let base = self.cat.base();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let f = &self.tensor[((i * n + j) * n + k) * n + l];
                        let (a, b, c, d) = (&self.objects[i], &self.objects[j], &self.objects[k], &self.objects[l]);
                        let dom = base.tensor_obj(&self.cat.hom(a, b)?, &self.cat.hom(c, d)?);
                        let cod = self.cat.hom(&self.objects[self.otensor[i * n + k]], &self.objects[self.otensor[j * n + l]])?;
                        if f.dom() != &dom || f.cod() != &cod {
                            return Err(Error::ShapeMismatch(format!("tensor at ({a}, {b}, {c}, {d}) has shape {} -> {}", f.dom(), f.cod())));
                        }
                    }
                }
            }
        }
        for (a, d) in &self.duals {
            let aa = self.tensor_objects(&d.object, a)?;
            let ev_dom = self.tensor_objects(a, &d.object)?;
            let unit = self.unit_object();
            if !d.coev.dom().is_unit() || d.coev.cod() != &self.cat.hom(&unit, &aa)? {
                return Err(Error::ShapeMismatch(format!("coevaluation of {a} has wrong shape")));
            }
            if !d.ev.dom().is_unit() || d.ev.cod() != &self.cat.hom(&ev_dom, &unit)? {
                return Err(Error::ShapeMismatch(format!("evaluation of {a} has wrong shape")));
            }
        }
        Ok(())
    }

    fn idx(&self, a: &Obj) -> Result<usize> {
        self.index.get(a).copied().ok_or_else(|| Error::UnknownObject(a.to_string()))
    }

    pub fn category(&self) -> &VCategory {
        &self.cat
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// A copy with one tensor morphism replaced (same shape required).
    pub fn with_tensor(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj, f: GradedMorphism) -> Result<Self> {
        let n = self.objects.len();
        let k = ((self.idx(a)? * n + self.idx(b)?) * n + self.idx(c)?) * n + self.idx(d)?;
        if !f.same_shape(&self.tensor[k]) {
            return Err(Error::ShapeMismatch("replacement tensor morphism has a different shape".into()));
        }
        let mut out = self.clone();
        out.tensor[k] = f;
        Ok(out)
    }

    /// A copy with the underlying V-category replaced (same objects and hom objects required).
    pub fn with_category(&self, cat: VCategory) -> Result<Self> {
        if cat.objects() != self.objects {
            return Err(Error::ShapeMismatch("replacement category has different objects".into()));
        }
        let mut out = self.clone();
        out.cat = cat;
        out.check_shapes()?;
        Ok(out)
    }

    /// The VCategory JSON with `unit`, `obj_tensor`, `tensor_mor` and `duals` added.
    pub fn to_json(&self) -> Value {
        let base = self.cat.base();
        let n = self.objects.len();
        let mut v = self.cat.to_json();
        let obj_tensor: Vec<Value> = (0..n * n).map(|k| json!([k / n, k % n, self.otensor[k]])).collect();
        let mut tensor = Vec::new();
        for k in 0..n * n * n * n {
            let f = &self.tensor[k];
            if !f.is_zero() {
                let (i, j, l, m) = (k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n);
                tensor.push(json!({ "a": i, "b": j, "c": l, "d": m, "blocks": blocks_to_json(base, f) }));
            }
        }
        let mut duals: Vec<(usize, Value)> = self
            .duals
            .iter()
            .map(|(a, d)| {
                let i = self.index[a];
                (
                    i,
                    json!({
                        "a": i,
                        "dual": self.index[&d.object],
                        "coev": blocks_to_json(base, &d.coev),
                        "ev": blocks_to_json(base, &d.ev),
                    }),
                )
            })
            .collect();
        duals.sort_by_key(|(i, _)| *i);
        let obj = v.as_object_mut().expect("category JSON is an object");
        obj.insert("unit".into(), json!(self.unit));
        obj.insert("obj_tensor".into(), Value::Array(obj_tensor));
        obj.insert("tensor_mor".into(), Value::Array(tensor));
        if !duals.is_empty() {
            obj.insert("duals".into(), Value::Array(duals.into_iter().map(|(_, d)| d).collect()));
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let cat = VCategory::from_json(v)?;
        let base = cat.base().clone();
        let objects = cat.objects();
        let n = objects.len();
        let index: HashMap<Obj, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let as_idx = |x: Option<&Value>, path: &str| -> Result<usize> {
            x.and_then(Value::as_u64)
                .map(|k| k as usize)
                .filter(|k| *k < n)
                .ok_or_else(|| Error::parse(path, "expected object index"))
        };
        let unit = as_idx(v.get("unit"), "unit")?;
        let mut otensor = vec![usize::MAX; n * n];
        let table = v.get("obj_tensor").and_then(Value::as_array).ok_or_else(|| Error::parse("obj_tensor", "expected array"))?;
        for (k, row) in table.iter().enumerate() {
            let path = format!("obj_tensor[{k}]");
            let r = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| Error::parse(&path, "expected [a, b, ab]"))?;
            let (i, j, m) = (as_idx(r.first(), &path)?, as_idx(r.get(1), &path)?, as_idx(r.get(2), &path)?);
            otensor[i * n + j] = m;
        }
        if let Some(k) = otensor.iter().position(|m| *m == usize::MAX) {
            return Err(Error::parse("obj_tensor", format!("missing product ({}, {})", k / n, k % n)));
        }
        let mut tensor = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let dom = base.tensor_obj(&cat.hom(&objects[i], &objects[j])?, &cat.hom(&objects[l], &objects[m])?);
                        let cod = cat.hom(&objects[otensor[i * n + l]], &objects[otensor[j * n + m]])?;
                        tensor.push(GradedMorphism::zero(dom, cod));
                    }
                }
            }
        }
        if let Some(ts) = v.get("tensor_mor") {
            let ts = ts.as_array().ok_or_else(|| Error::parse("tensor_mor", "expected array"))?;
            for (k, t) in ts.iter().enumerate() {
                let path = format!("tensor_mor[{k}]");
                let (i, j, l, m) = (
                    as_idx(t.get("a"), &format!("{path}.a"))?,
                    as_idx(t.get("b"), &format!("{path}.b"))?,
                    as_idx(t.get("c"), &format!("{path}.c"))?,
                    as_idx(t.get("d"), &format!("{path}.d"))?,
                );
                let slot = &mut tensor[((i * n + j) * n + l) * n + m];
                let blocks = t.get("blocks").ok_or_else(|| Error::parse(&path, "missing blocks"))?;
                *slot = blocks_from_json(&base, slot.dom(), slot.cod(), blocks, &format!("{path}.blocks"))?;
            }
        }
        let mut out = VMonoidalCategory { cat, objects, index, unit, otensor, tensor, duals: HashMap::new() };
        if let Some(ds) = v.get("duals") {
            let ds = ds.as_array().ok_or_else(|| Error::parse("duals", "expected array"))?;
            for (k, d) in ds.iter().enumerate() {
                let path = format!("duals[{k}]");
                let (i, j) = (as_idx(d.get("a"), &format!("{path}.a"))?, as_idx(d.get("dual"), &format!("{path}.dual"))?);
                let (a, ad) = (out.objects[i].clone(), out.objects[j].clone());
                let unit_obj = out.objects[unit].clone();
                let coev_cod = out.cat.hom(&unit_obj, &out.objects[out.otensor[j * n + i]])?;
                let ev_dom = out.cat.hom(&out.objects[out.otensor[i * n + j]], &unit_obj)?;
                let one = GradedObject::unit();
                let coev = blocks_from_json(
                    &base,
                    &one,
                    &coev_cod,
                    d.get("coev").ok_or_else(|| Error::parse(&path, "missing coev"))?,
                    &format!("{path}.coev"),
                )?;
                let ev = blocks_from_json(
                    &base,
                    &one,
                    &ev_dom,
                    d.get("ev").ok_or_else(|| Error::parse(&path, "missing ev"))?,
                    &format!("{path}.ev"),
                )?;
                out.duals.insert(a, Dual { object: ad, coev, ev });
            }
        }
        out.check_shapes()?;
        Ok(out)
    }
}

impl VCat for VMonoidalCategory {
    fn base(&self) -> &Arc<BaseCategory> {
        self.cat.base()
    }

    fn objects(&self) -> Vec<Obj> {
        self.objects.clone()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        self.cat.hom(a, b)
    }

    fn comp(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<GradedMorphism> {
        self.cat.comp(a, b, c)
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        self.cat.ident(a)
    }
}

impl VMonoidal for VMonoidalCategory {
    fn unit_object(&self) -> Obj {
        self.objects[self.unit].clone()
    }

    fn tensor_objects(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        let n = self.objects.len();
        Ok(self.objects[self.otensor[self.idx(a)? * n + self.idx(b)?]].clone())
    }

    fn tensor_homs(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj) -> Result<GradedMorphism> {
        let n = self.objects.len();
        Ok(self.tensor[((self.idx(a)? * n + self.idx(b)?) * n + self.idx(c)?) * n + self.idx(d)?].clone())
    }

    fn dual(&self, a: &Obj) -> Result<Dual> {
        self.duals.get(a).cloned().ok_or_else(|| Error::ClosednessDataMissing(format!("no dual recorded for {a}")))
    }
}
