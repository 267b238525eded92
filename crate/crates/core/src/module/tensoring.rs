use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;
use serde_json::{json, Value};

use crate::base::{GradedMorphism, GradedObject};
use crate::enriched::{obj_from_json, obj_to_json, precompose, Obj, SelfEnrichment, VCat};
use crate::error::{Error, Result};
use crate::json::{morphism_from_json, morphism_to_json, object_from_json, object_to_json};
use crate::linalg::{element_basis, MorphismMap};
use crate::report::{holds, sweep, Report};

type SolverKey = (Obj, GradedObject, Obj);

/// Memo of inverted adjunction maps, keyed by `(a, v, b)`.
#[derive(Default)]
pub struct SolverCache(RwLock<HashMap<SolverKey, Arc<MorphismMap>>>);

/// A choice of objects `a◁v` with units `η_{a,v}: v → C(a → a◁v)`.
///
/// The adjunction map `Φ(x) = (η_{a,v}⊗x);comp` from `C^V(a◁v → b)` to
/// `V(v → C(a→b))` must be bijective for every `b`; the module operations are
/// all defined through its inverse. Implementations with closed forms
/// override the provided methods.
pub trait Tensoring: Send + Sync {
    fn cat(&self) -> &Arc<dyn VCat>;
    fn act(&self, a: &Obj, v: &GradedObject) -> Result<Obj>;
    fn unit(&self, a: &Obj, v: &GradedObject) -> Result<GradedMorphism>;
    /// The declared finite scope used by sweeps.
    fn scope(&self) -> Vec<(Obj, GradedObject)>;

    fn cache(&self) -> Option<&SolverCache> {
        None
    }

    /// `Φ(x) = (η_{a,v}⊗x);comp` for `x ∈ C^V(a◁v → b)`.
    fn adjunct(&self, a: &Obj, v: &GradedObject, b: &Obj, x: &GradedMorphism) -> Result<GradedMorphism> {
        generic_adjunct(self, a, v, b, x)
    }

    /// `Φ^{-1}(g)` for `g: v → C(a→b)`.
    fn adjunct_inverse(&self, a: &Obj, v: &GradedObject, b: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        generic_adjunct_inverse(self, a, v, b, g)
    }

    /// The oplaxitor `α_{a,u,v} ∈ C^V(a◁uv → (a◁u)◁v)`.
    fn alpha(&self, a: &Obj, u: &GradedObject, v: &GradedObject) -> Result<GradedMorphism> {
        generic_alpha(self, a, u, v)
    }

    /// The unitor `ρ_a ∈ C^V(a◁1 → a)`.
    fn rho(&self, a: &Obj) -> Result<GradedMorphism> {
        let c = self.cat();
        self.adjunct_inverse(a, &GradedObject::unit(), a, &c.ident(a)?)
    }

    /// `f◁1_v ∈ C^V(a◁v → b◁v)` for `f ∈ C^V(a→b)`.
    fn act_left(&self, a: &Obj, b: &Obj, f: &GradedMorphism, v: &GradedObject) -> Result<GradedMorphism> {
        generic_act_left(self, a, b, f, v)
    }

    /// `1_a◁g ∈ C^V(a◁u → a◁v)` for `g: u → v` in V.
    fn act_right(&self, a: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        let av = self.act(a, g.cod())?;
        let y = g.then(&self.unit(a, g.cod())?)?;
        self.adjunct_inverse(a, g.dom(), &av, &y)
    }
}

pub(crate) fn generic_adjunct<T: Tensoring + ?Sized>(
    t: &T,
    a: &Obj,
    v: &GradedObject,
    b: &Obj,
    x: &GradedMorphism,
) -> Result<GradedMorphism> {
    let c = t.cat();
    let av = t.act(a, v)?;
    c.base().tensor_mor(&t.unit(a, v)?, x).then(&c.comp(a, &av, b)?)
}

/// The inverted adjunction map at `(a, v, b)`, or `RepresentabilityFailure` when it is not bijective.
pub fn adjunction_map<T: Tensoring + ?Sized>(t: &T, a: &Obj, v: &GradedObject, b: &Obj) -> Result<Arc<MorphismMap>> {
    let key = (a.clone(), v.clone(), b.clone());
    if let Some(m) = t.cache().and_then(|c| c.0.read().get(&key).cloned()) {
        return Ok(m);
    }
    let c = t.cat();
    let av = t.act(a, v)?;
    let src = c.hom(&av, b)?;
    let tgt = c.hom(a, b)?;
    let unit = GradedObject::unit();
    let map = MorphismMap::new((&unit, &src), element_basis(c.base(), &src), (v, &tgt), |x| t.adjunct(a, v, b, x))?;
    if !map.is_bijective() {
        return Err(Error::RepresentabilityFailure { a: a.to_string(), v: v.to_string(), b: b.to_string() });
    }
    let map = Arc::new(map);
    if let Some(cache) = t.cache() {
        cache.0.write().insert(key, map.clone());
    }
    Ok(map)
}

pub(crate) fn generic_adjunct_inverse<T: Tensoring + ?Sized>(
    t: &T,
    a: &Obj,
    v: &GradedObject,
    b: &Obj,
    g: &GradedMorphism,
) -> Result<GradedMorphism> {
    let map = adjunction_map(t, a, v, b)?;
    map.preimage(g)?
        .ok_or_else(|| Error::RepresentabilityFailure { a: a.to_string(), v: v.to_string(), b: b.to_string() })
}

pub(crate) fn generic_alpha<T: Tensoring + ?Sized>(
    t: &T,
    a: &Obj,
    u: &GradedObject,
    v: &GradedObject,
) -> Result<GradedMorphism> {
    let c = t.cat();
    let base = c.base();
    let au = t.act(a, u)?;
    let auv = t.act(&au, v)?;
    let y = base.tensor_mor(&t.unit(a, u)?, &t.unit(&au, v)?).then(&c.comp(a, &au, &auv)?)?;
    t.adjunct_inverse(a, &base.tensor_obj(u, v), &auv, &y)
}

pub(crate) fn generic_act_left<T: Tensoring + ?Sized>(
    t: &T,
    a: &Obj,
    b: &Obj,
    f: &GradedMorphism,
    v: &GradedObject,
) -> Result<GradedMorphism> {
    let c = t.cat();
    let bv = t.act(b, v)?;
    let y = t.unit(b, v)?.then(&precompose(&**c, a, b, &bv, f)?)?;
    t.adjunct_inverse(a, v, &bv, &y)
}

/// Explicit tensoring data over a declared finite scope.
pub struct TensoringData {
    cat: Arc<dyn VCat>,
    entries: BTreeMap<(Obj, GradedObject), (Obj, GradedMorphism)>,
    cache: SolverCache,
}

impl TensoringData {
    pub fn new(cat: Arc<dyn VCat>) -> Self {
        TensoringData { cat, entries: BTreeMap::new(), cache: SolverCache::default() }
    }

    /// Declares `a◁v := target` with unit `eta: v → C(a → target)`.
    pub fn insert(&mut self, a: Obj, v: GradedObject, target: Obj, eta: GradedMorphism) -> Result<()> {
        let hom = self.cat.hom(&a, &target)?;
        if eta.dom() != &v || eta.cod() != &hom {
            return Err(Error::ShapeMismatch(format!("unit for ({a}, {v}) must be {v} -> {hom}")));
        }
        self.entries.insert((a, v), (target, eta));
        Ok(())
    }

    /// The tensoring `a◁1 := a` with `η = j_a` for every object.
    pub fn trivial(cat: Arc<dyn VCat>) -> Result<Self> {
        let mut t = TensoringData::new(cat.clone());
        for a in cat.objects() {
            t.insert(a.clone(), GradedObject::unit(), a.clone(), cat.ident(&a)?)?;
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[{"a", "v", "target", "eta"}, ...]`.
    pub fn to_json(&self) -> Value {
        let b = &**self.cat.base();
        Value::Array(
            self.entries
                .iter()
                .map(|((a, v), (t, eta))| {
                    json!({
                        "a": obj_to_json(b, a),
                        "v": object_to_json(b, v),
                        "target": obj_to_json(b, t),
                        "eta": morphism_to_json(b, eta),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(cat: Arc<dyn VCat>, v: &Value) -> Result<Self> {
        let base = cat.base().clone();
        let items = v.as_array().ok_or_else(|| Error::parse("tensoring", "expected array"))?;
        let mut t = TensoringData::new(cat);
        for (i, e) in items.iter().enumerate() {
            let path = format!("tensoring[{i}]");
            let field = |k: &str| e.get(k).ok_or_else(|| Error::parse(&path, format!("missing {k}")));
            let a = obj_from_json(&base, field("a")?, &format!("{path}.a"))?;
            let w = object_from_json(&base, field("v")?, &format!("{path}.v"))?;
            let target = obj_from_json(&base, field("target")?, &format!("{path}.target"))?;
            let eta = morphism_from_json(&base, field("eta")?, &format!("{path}.eta"))?;
            t.insert(a, w, target, eta).map_err(|err| Error::parse(&path, err.to_string()))?;
        }
        Ok(t)
    }
}

impl Tensoring for TensoringData {
    fn cat(&self) -> &Arc<dyn VCat> {
        &self.cat
    }

    fn act(&self, a: &Obj, v: &GradedObject) -> Result<Obj> {
        self.entries
            .get(&(a.clone(), v.clone()))
            .map(|(t, _)| t.clone())
            .ok_or_else(|| Error::gap(format!("({a}, {v})")))
    }

    fn unit(&self, a: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        self.entries
            .get(&(a.clone(), v.clone()))
            .map(|(_, e)| e.clone())
            .ok_or_else(|| Error::gap(format!("({a}, {v})")))
    }

    fn scope(&self) -> Vec<(Obj, GradedObject)> {
        self.entries.keys().cloned().collect()
    }

    fn cache(&self) -> Option<&SolverCache> {
        Some(&self.cache)
    }
}

/// The canonical tensoring of V̂: `u◁v = u⊗v` with `η_{u,v} = coev_u⊗1_v`.
pub struct SelfTensoring {
    cat: Arc<dyn VCat>,
    weights: Vec<GradedObject>,
}

impl SelfTensoring {
    /// `weights` bounds the declared scope; every pair is covered.
    pub fn new(vhat: Arc<SelfEnrichment>, weights: Vec<GradedObject>) -> Self {
        SelfTensoring { cat: vhat, weights }
    }
}

impl Tensoring for SelfTensoring {
    fn cat(&self) -> &Arc<dyn VCat> {
        &self.cat
    }

    fn act(&self, a: &Obj, v: &GradedObject) -> Result<Obj> {
        Ok(Obj::V(self.cat.base().tensor_obj(a.expect_v()?, v)))
    }

    fn unit(&self, a: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        let b = self.cat.base();
        Ok(b.tensor_mor(&b.coev(a.expect_v()?), &b.identity(v)))
    }

    fn scope(&self) -> Vec<(Obj, GradedObject)> {
        let objs = self.cat.objects();
        objs.iter().flat_map(|a| self.weights.iter().map(move |v| (a.clone(), v.clone()))).collect()
    }

    fn adjunct(&self, a: &Obj, v: &GradedObject, b: &Obj, x: &GradedMorphism) -> Result<GradedMorphism> {
        let base = self.cat.base();
        let u = a.expect_v()?;
        let f = base.unname(&base.tensor_obj(u, v), b.expect_v()?, x)?;
        base.mate_forward_w(u, v, &f)
    }

    fn adjunct_inverse(&self, a: &Obj, v: &GradedObject, b: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        let base = self.cat.base();
        let u = a.expect_v()?;
        if g.dom() != v {
            return Err(Error::ShapeMismatch(format!("{} is not {v}", g.dom())));
        }
        base.name_of(&base.mate_backward_v(u, b.expect_v()?, g)?)
    }

    fn alpha(&self, a: &Obj, u: &GradedObject, v: &GradedObject) -> Result<GradedMorphism> {
        let base = self.cat.base();
        base.name_of(&base.identity(&base.tensor_objs(&[a.expect_v()?, u, v])))
    }

    fn rho(&self, a: &Obj) -> Result<GradedMorphism> {
        let base = self.cat.base();
        base.name_of(&base.identity(a.expect_v()?))
    }

    fn act_left(&self, a: &Obj, b: &Obj, f: &GradedMorphism, v: &GradedObject) -> Result<GradedMorphism> {
        let base = self.cat.base();
        let plain = base.unname(a.expect_v()?, b.expect_v()?, f)?;
        base.name_of(&base.tensor_mor(&plain, &base.identity(v)))
    }

    fn act_right(&self, a: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        let base = self.cat.base();
        base.name_of(&base.tensor_mor(&base.identity(a.expect_v()?), g))
    }
}

/// Forwards only the required methods, so every module operation uses the generic formulas.
pub struct Generic<T>(pub T);

impl<T: Tensoring> Tensoring for Generic<T> {
    fn cat(&self) -> &Arc<dyn VCat> {
        self.0.cat()
    }

    fn act(&self, a: &Obj, v: &GradedObject) -> Result<Obj> {
        self.0.act(a, v)
    }

    fn unit(&self, a: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        self.0.unit(a, v)
    }

    fn scope(&self) -> Vec<(Obj, GradedObject)> {
        self.0.scope()
    }
}

fn representability_items(t: &dyn Tensoring) -> Vec<(Obj, GradedObject, Obj)> {
    let objs = t.cat().objects();
    t.scope()
        .into_iter()
        .flat_map(|(a, v)| objs.iter().map(move |b| (a.clone(), v.clone(), b.clone())))
        .collect()
}

/// Checks that every adjunction map `C^V(a◁v → b) → V(v → C(a→b))` in scope is bijective.
pub fn check_representability(t: &dyn Tensoring) -> Report {
    let items = representability_items(t);
    let mut r = Report::default();
    r.push(sweep("tensoring.representability", "Φ: C^V(a◁v→b) ≅ V(v→C(a→b))", &items, |(a, v, b)| {
        holds(|| vec![a.to_string(), v.to_string(), b.to_string()], || match adjunction_map(t, a, v, b) {
            Ok(_) => Ok(true),
            Err(Error::RepresentabilityFailure { .. }) => Ok(false),
            Err(e) => Err(e),
        })
    }));
    r
}

/// The first scope triple (in scope order) where representability fails, as an error.
pub fn ensure_representable(t: &dyn Tensoring) -> Result<()> {
    use rayon::prelude::*;
    let items = representability_items(t);
    let outcomes: Vec<Result<()>> = items.par_iter().map(|(a, v, b)| adjunction_map(t, a, v, b).map(|_| ())).collect();
    outcomes.into_iter().collect()
}
