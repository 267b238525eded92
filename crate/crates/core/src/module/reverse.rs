use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::{GradedMorphism, GradedObject};
use crate::enriched::{verify_vcategory, verify_vfunctor, Obj, VCat, VCategory, VFunctor};
use crate::error::{Error, Result};
use crate::linalg::{element_basis, MorphismMap};
use crate::report::{holds, sweep, Report};

use super::oplax::OplaxModule;

/// Right adjoints `R_a` on the window: hom objects `R_a(b)` and counits `ε_{a→b} ∈ M(a◁R_a(b) → b)`.
#[derive(Clone, Default)]
pub struct AdjointData {
    entries: BTreeMap<(Obj, Obj), (GradedObject, GradedMorphism)>,
}

impl AdjointData {
    pub fn insert(&mut self, a: Obj, b: Obj, hom: GradedObject, counit: GradedMorphism) {
        self.entries.insert((a, b), (hom, counit));
    }

    /// `R_a(b) = C(a→b)` with `ε_{a→b} = Φ^{-1}(1_{C(a→b)})`.
    pub fn from_module(m: &OplaxModule) -> Result<Self> {
        let c = m.cat();
        let t = m.tensoring();
        let mut out = AdjointData::default();
        let objs = m.objects();
        for a in &objs {
            for b in &objs {
                let r = c.hom(a, b)?;
                let eps = t.adjunct_inverse(a, &r, b, &c.base().identity(&r))?;
                out.insert(a.clone(), b.clone(), r, eps);
            }
        }
        Ok(out)
    }

    pub fn hom(&self, a: &Obj, b: &Obj) -> Result<&GradedObject> {
        self.entries.get(&(a.clone(), b.clone())).map(|e| &e.0).ok_or_else(|| Error::gap(format!("R_{a}({b})")))
    }

    pub fn counit(&self, a: &Obj, b: &Obj) -> Result<&GradedMorphism> {
        self.entries.get(&(a.clone(), b.clone())).map(|e| &e.1).ok_or_else(|| Error::gap(format!("ε_{{{a}→{b}}}")))
    }

    /// A copy with one counit replaced.
    pub fn with_counit(&self, a: &Obj, b: &Obj, eps: GradedMorphism) -> Result<Self> {
        let mut out = self.clone();
        let slot = out.entries.get_mut(&(a.clone(), b.clone())).ok_or_else(|| Error::gap(format!("ε_{{{a}→{b}}}")))?;
        if !slot.1.same_shape(&eps) {
            return Err(Error::ShapeMismatch(format!("replacement counit for ({a}, {b})")));
        }
        slot.1 = eps;
        Ok(out)
    }
}

/// The comparison maps `e_{a→b} = Φ(ε_{a→b}): R_a(b) → C(a→b)` and their inverses.
struct Comparison {
    to_c: BTreeMap<(Obj, Obj), GradedMorphism>,
    from_c: BTreeMap<(Obj, Obj), GradedMorphism>,
}

/// Checks that each counit is a universal arrow and records the comparison isomorphisms.
///
/// Universality means `g ↦ (1_a◁g);ε_{a→b}` is a bijection `V(v → R_a(b)) ≅ M(a◁v → b)`.
/// By naturality of `Φ` this holds for every `v` exactly when `Φ(ε_{a→b})` is invertible,
/// and that is what is tested; the case `v = 1` is also checked directly.
fn comparison(m: &OplaxModule, adj: &AdjointData) -> Result<Comparison> {
    use rayon::prelude::*;
    let c = m.cat();
    let base = c.base();
    let t = m.tensoring();
    let objs = m.objects();
    let pairs: Vec<(Obj, Obj)> = objs.iter().flat_map(|a| objs.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let one = GradedObject::unit();
    let results: Vec<Result<(GradedMorphism, GradedMorphism)>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let r = adj.hom(a, b)?;
            let eps = adj.counit(a, b)?;
            let e = t.adjunct(a, r, b, eps)?;
            let fail = || Error::TriangleFailure(format!("ε_{{{a}→{b}}} is not universal"));
            let inv = base.inverse(&e).ok_or_else(fail)?;
            let a1 = m.act(a, &one)?;
            let ar = m.act(a, r)?;
            let direct = MorphismMap::new((&one, r), element_basis(base, r), (&one, &c.hom(&a1, b)?), |g| {
                c.compose(&a1, &ar, b, &m.act_right(a, g)?, eps)
            })?;
            if !direct.is_bijective() {
                return Err(fail());
            }
            Ok((e, inv))
        })
        .collect();
    let mut out = Comparison { to_c: BTreeMap::new(), from_c: BTreeMap::new() };
    for (p, res) in pairs.into_iter().zip(results) {
        let (e, inv) = res?;
        out.to_c.insert(p.clone(), e);
        out.from_c.insert(p, inv);
    }
    Ok(out)
}

/// Rebuilds a V-category from a module and right adjoint data.
///
/// `C(a→b) = R_a(b)`, `j_a` corresponds to `ρ_a`, and composition corresponds to
/// `α_{a,R_a(b),R_b(c)};(ε_{a→b}◁1);ε_{b→c}`. The result is not verified here;
/// [`roundtrip_check`] does that.
pub fn module_to_vcat(m: &OplaxModule, adj: &AdjointData) -> Result<VCategory> {
    let cmp = comparison(m, adj)?;
    let c = m.cat();
    let base = c.base().clone();
    let t = m.tensoring();
    let one = GradedObject::unit();
    let objs = m.objects();
    let key = |a: &Obj, b: &Obj| (a.clone(), b.clone());
    VCategory::from_fns(
        base.clone(),
        objs,
        |a, b| adj.hom(a, b).cloned(),
        |a, b, d| {
            let (rab, rbd) = (adj.hom(a, b)?, adj.hom(b, d)?);
            let v = base.tensor_obj(rab, rbd);
            let av = m.act(a, &v)?;
            let ar = m.act(a, rab)?;
            let ar_r = m.act(&ar, rbd)?;
            let br = m.act(b, rbd)?;
            let eps_r = m.act_left(&ar, b, adj.counit(a, b)?, rbd)?;
            let x = m.compose_path(&[&av, &ar_r, &br, d], &[&m.alpha(a, rab, rbd)?, &eps_r, adj.counit(b, d)?])?;
            t.adjunct(a, &v, d, &x)?.then(&cmp.from_c[&key(a, d)])
        },
        |a| t.adjunct(a, &one, a, &m.rho(a)?)?.then(&cmp.from_c[&key(a, a)]),
    )
}

/// Builds `C'` from the module of `C`, the comparison V-functors `G: C → C'` and
/// `H: C' → C`, and verifies that `C'` is a V-category, that `G` and `H` are
/// V-functors, and that they are mutually inverse on hom objects.
pub fn roundtrip_check(m: &OplaxModule, adj: &AdjointData) -> Result<Report> {
    let cmp = Arc::new(comparison(m, adj)?);
    let c = m.cat().clone();
    let base = c.base().clone();
    let rebuilt: Arc<dyn VCat> = Arc::new(module_to_vcat(m, adj)?);
    let mut report = verify_vcategory(&*rebuilt);
    let (gc, hc) = (cmp.clone(), cmp.clone());
    let g = VFunctor::new("G", c.clone(), rebuilt.clone(), |a| Ok(a.clone()), move |a, b| {
        Ok(gc.from_c[&(a.clone(), b.clone())].clone())
    });
    let h = VFunctor::new("H", rebuilt.clone(), c.clone(), |a| Ok(a.clone()), move |a, b| {
        Ok(hc.to_c[&(a.clone(), b.clone())].clone())
    });
    report.extend(verify_vfunctor(&g));
    report.extend(verify_vfunctor(&h));
    let pairs: Vec<(Obj, Obj)> = cmp.to_c.keys().cloned().collect();
    report.push(sweep("roundtrip.hom_iso", "G_{a→b};H_{a→b} = 1 and H_{a→b};G_{a→b} = 1", &pairs, |p| {
        holds(|| vec![p.0.to_string(), p.1.to_string()], || {
            let (e, inv) = (&cmp.to_c[p], &cmp.from_c[p]);
            Ok(inv.then(e)? == base.identity(e.cod()) && e.then(inv)? == base.identity(e.dom()))
        })
    }));
    Ok(report)
}
