use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::base::{GradedMorphism, GradedObject};
use crate::completion::{equivalence_conditions, lift_functor, tau_transformation};
use crate::enriched::{labels, obj_to_json, Obj, SelfEnrichment, VCat, VFunctor};
use crate::error::{Error, Result};
use crate::json::{morphism_to_json, object_to_json};
use crate::linalg::element_basis;
use crate::module::{action_functor, laxitor_of_functor, strong_module_check, vcat_to_module, SelfTensoring, SolverCache, Tensoring};
use crate::report::{holds, instance, mismatch, sweep, Check, Report, Status, Witness};

use super::{monoidal_complete, monoidal_inclusion, verify_vmonoidal_functor, ClosedStructure, VMonoidal, VMonoidalFunctor};

/// The tensoring `a◁v = a·F(v)` induced by `F(v) = 1◁v`, with
/// `η_{a,v} = (j_a⊗η_{1,v});(−⊗−)`. Every module operation goes through the generic adjunction map.
pub struct ProductTensoring {
    c: Arc<dyn VMonoidal>,
    cat: Arc<dyn VCat>,
    tc: Arc<dyn Tensoring>,
    weights: Vec<GradedObject>,
    cache: SolverCache,
}

impl ProductTensoring {
    /// `tc` must be a tensoring of `c` defined at the unit object.
    pub fn new(c: Arc<dyn VMonoidal>, tc: Arc<dyn Tensoring>, weights: &[GradedObject]) -> Self {
        let cat: Arc<dyn VCat> = c.clone();
        ProductTensoring { c, cat, tc, weights: weights.to_vec(), cache: SolverCache::default() }
    }

    fn f(&self, v: &GradedObject) -> Result<Obj> {
        self.tc.act(&self.c.unit_object(), v)
    }
}

impl Tensoring for ProductTensoring {
    fn cat(&self) -> &Arc<dyn VCat> {
        &self.cat
    }

    fn act(&self, a: &Obj, v: &GradedObject) -> Result<Obj> {
        self.c.tensor_objects(a, &self.f(v)?)
    }

    fn unit(&self, a: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        let (c, base) = (&self.c, self.c.base());
        let one = c.unit_object();
        let fv = self.f(v)?;
        base.tensor_mor(&c.ident(a)?, &self.tc.unit(&one, v)?).then(&c.tensor_homs(a, a, &one, &fv)?)
    }

    fn scope(&self) -> Vec<(Obj, GradedObject)> {
        let objs = self.c.objects();
        objs.iter().flat_map(|a| self.weights.iter().map(move |v| (a.clone(), v.clone()))).collect()
    }

    fn cache(&self) -> Option<&SolverCache> {
        Some(&self.cache)
    }
}

struct Classifier {
    c: Arc<dyn VMonoidal>,
    tc: Arc<dyn Tensoring>,
    prod: Arc<ProductTensoring>,
    one: Obj,
}

impl Classifier {
    fn f(&self, v: &GradedObject) -> Result<Obj> {
        self.tc.act(&self.one, v)
    }

    /// `ν_{u,v} = Φ^{-1}((η_{1,u}⊗η_{1,v});(−⊗−)) ∈ C^V(F(uv) → F(u)F(v))`.
    fn nu(&self, u: &GradedObject, v: &GradedObject) -> Result<GradedMorphism> {
        let (c, base, one) = (&self.c, self.c.base(), &self.one);
        let (fu, fv) = (self.f(u)?, self.f(v)?);
        let fufv = c.tensor_objects(&fu, &fv)?;
        let g = base
            .tensor_mor(&self.tc.unit(one, u)?, &self.tc.unit(one, v)?)
            .then(&c.tensor_homs(one, &fu, one, &fv)?)?;
        self.tc.adjunct_inverse(one, &base.tensor_obj(u, v), &fufv, &g)
    }

    /// `e_{a,v} = Φ^{-1}((η_{1,v}⊗j_a);(−⊗−)) ∈ C^V(aF(v) → F(v)a)`, through the product tensoring.
    fn e(&self, a: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        let (c, base, one) = (&self.c, self.c.base(), &self.one);
        let fv = self.f(v)?;
        let fva = c.tensor_objects(&fv, a)?;
        let g = base.tensor_mor(&self.tc.unit(one, v)?, &c.ident(a)?).then(&c.tensor_homs(one, &fv, a, a)?)?;
        self.prod.adjunct_inverse(a, v, &fva, &g)
    }
}

/// The classifying data of a V-monoidal category: `F(v) = 1◁v`, the tensorator
/// `ν` and the half-braidings `e_{a,v}` on the window, plus the strong verdict.
#[derive(Clone)]
pub struct Classification {
    base: Arc<crate::base::BaseCategory>,
    pub functor: BTreeMap<GradedObject, Obj>,
    pub nu: BTreeMap<(GradedObject, GradedObject), GradedMorphism>,
    pub e: BTreeMap<(Obj, GradedObject), GradedMorphism>,
    pub strong: bool,
}

impl Classification {
    pub fn nu(&self, u: &GradedObject, v: &GradedObject) -> Result<&GradedMorphism> {
        self.nu.get(&(u.clone(), v.clone())).ok_or_else(|| Error::gap(format!("ν at ({u}, {v})")))
    }

    pub fn e(&self, a: &Obj, v: &GradedObject) -> Result<&GradedMorphism> {
        self.e.get(&(a.clone(), v.clone())).ok_or_else(|| Error::gap(format!("e at ({a}, {v})")))
    }

    pub fn to_json(&self) -> Value {
        let b = &*self.base;
        let functor: Vec<Value> = self
            .functor
            .iter()
            .map(|(v, fv)| json!({ "v": object_to_json(b, v), "F": obj_to_json(b, fv) }))
            .collect();
        let nu: Vec<Value> = self
            .nu
            .iter()
            .map(|((u, v), m)| json!({ "u": object_to_json(b, u), "v": object_to_json(b, v), "nu": morphism_to_json(b, m) }))
            .collect();
        let e: Vec<Value> = self
            .e
            .iter()
            .map(|((a, v), m)| json!({ "a": obj_to_json(b, a), "v": object_to_json(b, v), "e": morphism_to_json(b, m) }))
            .collect();
        json!({ "functor": functor, "nu": nu, "e": e, "strong": self.strong })
    }
}

fn weight_pairs(weights: &[GradedObject]) -> Vec<(GradedObject, GradedObject)> {
    weights.iter().flat_map(|u| weights.iter().map(move |v| (u.clone(), v.clone()))).collect()
}

/// Computes `F`, `ν` and `e` from the tensoring `tc` at the unit and checks the
/// center laws on the window and `weights`.
///
/// Fails with `ClosednessDataMissing` when a window object has no dual, and
/// with `CoverageGap` when `tc` does not cover the unit against some weight.
pub fn classify_center(
    c: Arc<dyn VMonoidal>,
    tc: Arc<dyn Tensoring>,
    weights: &[GradedObject],
) -> Result<(Classification, Report)> {
    let base = c.base().clone();
    let one = c.unit_object();
    let objs = c.objects();
    let closed: BTreeMap<Obj, ClosedStructure> =
        objs.iter().map(|a| Ok((a.clone(), ClosedStructure::new(c.clone(), a)?))).collect::<Result<_>>()?;
    let missing: Vec<String> = weights.iter().filter(|v| tc.act(&one, v).is_err()).map(|v| format!("(1, {v})")).collect();
    if !missing.is_empty() {
        return Err(Error::CoverageGap { missing });
    }
    let prod = Arc::new(ProductTensoring::new(c.clone(), tc.clone(), weights));
    let k = Classifier { c: c.clone(), tc: tc.clone(), prod: prod.clone(), one: one.clone() };

    let mut functor = BTreeMap::new();
    for v in weights {
        functor.insert(v.clone(), k.f(v)?);
    }
    let pairs = weight_pairs(weights);
    let mut nu = BTreeMap::new();
    for (u, v) in &pairs {
        nu.insert((u.clone(), v.clone()), k.nu(u, v)?);
    }
    let mut e = BTreeMap::new();
    for a in &objs {
        for v in weights {
            e.insert((a.clone(), v.clone()), k.e(a, v)?);
        }
    }
    let mut report = Report::default();
    let unit = GradedObject::unit();

    report.push(sweep("center.unit_strict", "F(1_V) = 1_C", &[()], |_| {
        holds(|| vec![unit.to_string()], || Ok(k.f(&unit)? == one))
    }));
    report.push(sweep("center.nu_unital", "ν_{1,v} = j_{F(v)} = ν_{v,1}", weights, |v| {
        instance(&base, || vec![v.to_string()], || {
            let j = c.ident(&k.f(v)?)?;
            let (l, r) = (k.nu(&unit, v)?, k.nu(v, &unit)?);
            Ok(if l != j { (l, j) } else { (r, j) })
        })
    }));
    let triples: Vec<(GradedObject, GradedObject, GradedObject)> =
        pairs.iter().flat_map(|(u, v)| weights.iter().map(move |w| (u.clone(), v.clone(), w.clone()))).collect();
    report.push(sweep(
        "center.nu_associative",
        "ν_{u,vw};(j⊗ν_{v,w}) = ν_{uv,w};(ν_{u,v}⊗j)",
        &triples,
        |(u, v, w)| {
            instance(&base, || vec![u.to_string(), v.to_string(), w.to_string()], || {
                let (vw, uv) = (base.tensor_obj(v, w), base.tensor_obj(u, v));
                let (fu, fv, fw) = (k.f(u)?, k.f(v)?, k.f(w)?);
                let (fvw, fuv) = (k.f(&vw)?, k.f(&uv)?);
                let fuvw = k.f(&base.tensor_obj(&uv, w))?;
                let fvfw = c.tensor_objects(&fv, &fw)?;
                let fufv = c.tensor_objects(&fu, &fv)?;
                let all = c.tensor_objects(&fufv, &fw)?;
                let right = c.tensor_elements(&fu, &fu, &fvw, &fvfw, &c.ident(&fu)?, &k.nu(v, w)?)?;
                let lhs = c.compose(&fuvw, &c.tensor_objects(&fu, &fvw)?, &all, &k.nu(u, &vw)?, &right)?;
                let left = c.tensor_elements(&fuv, &fufv, &fw, &fw, &k.nu(u, v)?, &c.ident(&fw)?)?;
                let rhs = c.compose(&fuvw, &c.tensor_objects(&fuv, &fw)?, &all, &k.nu(&uv, w)?, &left)?;
                Ok((lhs, rhs))
            })
        },
    ));

    let aw: Vec<(Obj, GradedObject)> = objs.iter().flat_map(|a| weights.iter().map(move |v| (a.clone(), v.clone()))).collect();
    report.push(sweep(
        "center.lemma_mate_of_identity",
        "(η_{1,v}⊗(j_{aF(v)};θ^a));comp;κ^a = (j_a⊗η_{1,v});(−⊗−)",
        &aw,
        |(a, v)| {
            instance(&base, || vec![a.to_string(), v.to_string()], || {
                let cl = &closed[a];
                let fv = k.f(v)?;
                let b = c.tensor_objects(a, &fv)?;
                let named = c.ident(&b)?.then(&cl.theta(&fv, &b)?)?;
                let lhs = base
                    .tensor_mor(&tc.unit(&one, v)?, &named)
                    .then(&c.comp(&one, &fv, &cl.internal_hom(&b)?)?)?
                    .then(&cl.kappa(&one, &b)?)?;
                Ok((lhs, prod.unit(a, v)?))
            })
        },
    ));
    report.push(sweep("center.half_braiding_invertible", "every e_{a,v} is invertible", &aw, |(a, v)| {
        holds(|| vec![a.to_string(), v.to_string()], || {
            let fv = k.f(v)?;
            Ok(c.inverse(&c.tensor_objects(a, &fv)?, &c.tensor_objects(&fv, a)?, &k.e(a, v)?)?.is_some())
        })
    }));
    let abv: Vec<(Obj, Obj, GradedObject)> = objs
        .iter()
        .flat_map(|a| objs.iter().flat_map(move |b| weights.iter().map(move |v| (a.clone(), b.clone(), v.clone()))))
        .collect();
    report.push(sweep(
        "center.half_braiding_natural",
        "(f⊗j_{F(v)});e_{b,v} = e_{a,v};(j_{F(v)}⊗f)",
        &abv,
        |(a, b, v)| {
            mismatch(&base, || vec![a.to_string(), b.to_string(), v.to_string()], || {
                let fv = k.f(v)?;
                let (afv, bfv, fva, fvb) =
                    (c.tensor_objects(a, &fv)?, c.tensor_objects(b, &fv)?, c.tensor_objects(&fv, a)?, c.tensor_objects(&fv, b)?);
                let (ea, eb) = (k.e(a, v)?, k.e(b, v)?);
                let jf = c.ident(&fv)?;
                for f in element_basis(&base, &c.hom(a, b)?) {
                    let lhs = c.compose(&afv, &bfv, &fvb, &c.tensor_elements(a, b, &fv, &fv, &f, &jf)?, &eb)?;
                    let rhs = c.compose(&afv, &fva, &fvb, &ea, &c.tensor_elements(&fv, &fv, a, b, &jf, &f)?)?;
                    if lhs != rhs {
                        return Ok(Some((lhs, rhs)));
                    }
                }
                Ok(None)
            })
        },
    ));
    report.push(sweep("center.hexagon", "e_{ab,v} = (j_a⊗e_{b,v});(e_{a,v}⊗j_b)", &abv, |(a, b, v)| {
        instance(&base, || vec![a.to_string(), b.to_string(), v.to_string()], || {
            let fv = k.f(v)?;
            let ab = c.tensor_objects(a, b)?;
            let bfv = c.tensor_objects(b, &fv)?;
            let fvb = c.tensor_objects(&fv, b)?;
            let afv = c.tensor_objects(a, &fv)?;
            let fva = c.tensor_objects(&fv, a)?;
            let first = c.tensor_elements(a, a, &bfv, &fvb, &c.ident(a)?, &k.e(b, v)?)?;
            let second = c.tensor_elements(&afv, &fva, b, b, &k.e(a, v)?, &c.ident(b)?)?;
            let rhs = c.compose(
                &c.tensor_objects(a, &bfv)?,
                &c.tensor_objects(&afv, b)?,
                &c.tensor_objects(&fva, b)?,
                &first,
                &second,
            )?;
            Ok((k.e(&ab, v)?, rhs))
        })
    }));
    report.push(sweep("center.half_braiding_unit", "e_{1,v} = j_{F(v)} and e_{a,1} = j_a", &aw, |(a, v)| {
        instance(&base, || vec![a.to_string(), v.to_string()], || {
            let j = c.ident(&k.f(v)?)?;
            let e1 = k.e(&one, v)?;
            if e1 != j {
                return Ok((e1, j));
            }
            Ok((k.e(a, &unit)?, c.ident(a)?))
        })
    }));
    report.push(sweep("center.braided", "F(β_{u,v});ν_{v,u} = ν_{u,v};e_{F(u),v}", &pairs, |(u, v)| {
        instance(&base, || vec![u.to_string(), v.to_string()], || {
            let (uv, vu) = (base.tensor_obj(u, v), base.tensor_obj(v, u));
            let (fu, fv, fuv, fvu) = (k.f(u)?, k.f(v)?, k.f(&uv)?, k.f(&vu)?);
            let fb = tc.act_right(&one, &base.braiding(u, v))?;
            let lhs = c.compose(&fuv, &fvu, &c.tensor_objects(&fv, &fu)?, &fb, &k.nu(v, u)?)?;
            let rhs = c.compose(&fuv, &c.tensor_objects(&fu, &fv)?, &c.tensor_objects(&fv, &fu)?, &k.nu(u, v)?, &k.e(&fu, v)?)?;
            Ok((lhs, rhs))
        })
    }));

    let mut strong = Check::new("center.strong", "every ν_{u,v} is invertible");
    for (u, v) in &pairs {
        let ok = (|| -> Result<bool> {
            let fuv = k.f(&base.tensor_obj(u, v))?;
            let fufv = c.tensor_objects(&k.f(u)?, &k.f(v)?)?;
            Ok(c.inverse(&fuv, &fufv, &nu[&(u.clone(), v.clone())])?.is_some())
        })();
        match ok {
            Ok(ok) => {
                strong.expect(ok, || Witness::tuple([u, v]));
            }
            Err(err) => {
                strong.count();
                strong.undetermined(Witness::tuple([u, v]).note(err.to_string()));
            }
        }
    }
    let is_strong = strong.passed();
    report.push(mu_inverse_check(&c, &prod, &k, weights, is_strong)?);
    report.push(strong);

    let classification = Classification { base, functor, nu, e, strong: is_strong };
    Ok((classification, report))
}

/// `μ^F` from the laxitor of `1◁−: V̂ → C` against the product tensoring; checks `μ;ν = j` both ways.
fn mu_inverse_check(
    c: &Arc<dyn VMonoidal>,
    prod: &Arc<ProductTensoring>,
    k: &Classifier,
    weights: &[GradedObject],
    strong: bool,
) -> Result<Check> {
    let base = c.base().clone();
    let mut check = Check::new("center.mu_inverse", "μ^F_{u,v} and ν_{u,v} are mutually inverse");
    if !strong {
        check.undetermined(Witness::default().note("ν is not invertible; μ^F is not built"));
        return Ok(check);
    }
    let pt: Arc<dyn Tensoring> = prod.clone();
    let m = vcat_to_module(pt.clone())?;
    let la = action_functor(&m, &k.one, weights);
    let vhat = Arc::new(SelfEnrichment::new(base.clone(), weights.to_vec()));
    let src: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(vhat, weights.to_vec()));
    let lf = laxitor_of_functor(&la, src, pt, weights)?;
    let pairs = weight_pairs(weights);
    let sub = sweep("", "", &pairs, |(u, v)| {
        instance(&base, || vec![u.to_string(), v.to_string()], || {
            let mu = lf.mu(&Obj::V(u.clone()), v)?;
            let nu = k.nu(u, v)?;
            let fuv = k.f(&base.tensor_obj(u, v))?;
            let fufv = c.tensor_objects(&k.f(u)?, &k.f(v)?)?;
            let there = c.compose(&fufv, &fuv, &fufv, &mu, &nu)?;
            if there != c.ident(&fufv)? {
                return Ok((there, c.ident(&fufv)?));
            }
            Ok((c.compose(&fuv, &fufv, &fuv, &nu, &mu)?, c.ident(&fuv)?))
        })
    });
    check.absorb(sub);
    Ok(check)
}

/// Checks `α^{prod}_{a,u,v} = (j_a⊗ν_{u,v});(−⊗−)`, runs the strong-module check on the product
/// tensoring and asserts that its verdict equals the all-`ν`-invertible verdict.
pub fn tensored_iff_strong_check(c: Arc<dyn VMonoidal>, tc: Arc<dyn Tensoring>, weights: &[GradedObject]) -> Result<Report> {
    let (cls, center) = classify_center(c.clone(), tc.clone(), weights)?;
    let base = c.base().clone();
    let prod = Arc::new(ProductTensoring::new(c.clone(), tc.clone(), weights));
    let one = c.unit_object();
    let f = |v: &GradedObject| tc.act(&one, v);
    let mut report = Report::default();
    let objs = c.objects();
    let items: Vec<(Obj, GradedObject, GradedObject)> = objs
        .iter()
        .flat_map(|a| weight_pairs(weights).into_iter().map(move |(u, v)| (a.clone(), u, v)))
        .collect();
    report.push(sweep("center.alpha_is_one_nu", "α_{a,u,v} = (j_a⊗ν_{u,v});(−⊗−)", &items, |(a, u, v)| {
        instance(&base, || vec![a.to_string(), u.to_string(), v.to_string()], || {
            let fuv = f(&base.tensor_obj(u, v))?;
            let fufv = c.tensor_objects(&f(u)?, &f(v)?)?;
            let rhs = c.tensor_elements(a, a, &fuv, &fufv, &c.ident(a)?, cls.nu(u, v)?)?;
            Ok((prod.alpha(a, u, v)?, rhs))
        })
    }));
    let pt: Arc<dyn Tensoring> = prod;
    let strong_module = strong_module_check(&vcat_to_module(pt)?, weights)?;
    let tensored = strong_module.passed();
    let mut verdict = Check::new("center.tensored", "the product tensoring is a strong module");
    verdict.count();
    if let Some(w) = strong_module.first_failure() {
        verdict.fail(Witness::default().note(w.law.clone()));
    }
    let strong_verdict = center.check("center.strong").map(|k| k.status);
    let mut agree = Check::new("center.tensored_iff_strong", "tensored exactly when every ν is invertible");
    agree.expect(strong_verdict == Some(if tensored { Status::Pass } else { Status::Fail }), || {
        Witness::default().note(format!("tensored: {tensored}, strong: {strong_verdict:?}"))
    });
    report.push(verdict);
    report.push(agree);
    Ok(report)
}

/// The equivalence conditions for `I: C → C̄` together with the monoidal parts:
/// `I` is a monoidal functor, `lift(1_C)` is a monoidal functor with
/// `ν^{lift}_{a◀u,b◀v} = (j_{ab}⊗ν_{u,v});((j_a⊗e_{b,u})⊗j_{F(v)})`, and `τ` is monoidal and unital.
pub fn monoidal_equivalence_conditions(
    c: Arc<dyn VMonoidal>,
    tc: Arc<dyn Tensoring>,
    weights: &[GradedObject],
) -> Result<Report> {
    let base = c.base().clone();
    let mc = Arc::new(monoidal_complete(c.clone(), weights));
    let cbar = mc.completion().clone();
    let mut report = equivalence_conditions(cbar.clone(), tc.clone(), weights)?;

    let incl = verify_vmonoidal_functor(&monoidal_inclusion(mc.clone()));
    report.push(summary("monoidal.inclusion", "I is a V-monoidal functor", &incl));

    let one = c.unit_object();
    let prod = ProductTensoring::new(c.clone(), tc.clone(), weights);
    let (lifted, _) = lift_functor(&VFunctor::identity(c.clone()), cbar.clone(), tc.clone())?;
    let window = mc.objects();
    report.push(sweep("monoidal.lift_objects", "lift(1_C)(a◀u) = aF(u)", &window, |x| {
        holds(|| vec![x.to_string()], || {
            let (a, u) = x.expect_weighted()?;
            Ok(lifted.obj(x)? == prod.act(a, u)?)
        })
    }));
    let k = Classifier { c: c.clone(), tc: tc.clone(), prod: Arc::new(prod), one: one.clone() };
    let nu_lift = {
        let (c, k) = (c.clone(), Arc::new(k));
        move |x: &Obj, y: &Obj| -> Result<GradedMorphism> {
            let ((a, u), (b, v)) = (x.expect_weighted()?, y.expect_weighted()?);
            let base = c.base();
            let (fu, fv) = (k.f(u)?, k.f(v)?);
            let ab = c.tensor_objects(a, b)?;
            let fuv = k.f(&base.tensor_obj(u, v))?;
            let fufv = c.tensor_objects(&fu, &fv)?;
            let first = c.tensor_elements(&ab, &ab, &fuv, &fufv, &c.ident(&ab)?, &k.nu(u, v)?)?;
            let bfu = c.tensor_objects(b, &fu)?;
            let fub = c.tensor_objects(&fu, b)?;
            let swap = c.tensor_elements(a, a, &bfu, &fub, &c.ident(a)?, &k.e(b, u)?)?;
            let (abfu, afub) = (c.tensor_objects(a, &bfu)?, c.tensor_objects(a, &fub)?);
            let second = c.tensor_elements(&abfu, &afub, &fv, &fv, &swap, &c.ident(&fv)?)?;
            let start = c.tensor_objects(&ab, &fuv)?;
            let mid = c.tensor_objects(&ab, &fufv)?;
            let end = c.tensor_objects(&afub, &fv)?;
            c.compose(&start, &mid, &end, &first, &second)
        }
    };
    let mcv: Arc<dyn VMonoidal> = mc.clone();
    let lift_m = VMonoidalFunctor::new(lifted.clone(), mcv, c.clone(), nu_lift.clone());
    let lr = verify_vmonoidal_functor(&lift_m);
    report.push(summary("monoidal.lift", "lift(1_C) is a V-monoidal functor", &lr));

    let (tau, _) = tau_transformation(cbar, tc.clone(), weights)?;
    let pairs: Vec<(Obj, Obj)> = window.iter().flat_map(|x| window.iter().map(move |y| (x.clone(), y.clone()))).collect();
    report.push(sweep("monoidal.tau_monoidal", "τ_{xy};ν^{lift}_{x,y} = τ_x⊗τ_y", &pairs, |(x, y)| {
        instance(&base, || labels(&[x, y]), || {
            let xy = mc.tensor_objects(x, y)?;
            let (lx, ly) = (lifted.obj(x)?, lifted.obj(y)?);
            let unit_w = GradedObject::unit();
            let lxy = Obj::weighted(lifted.obj(&xy)?, unit_w.clone());
            let lxly = Obj::weighted(c.tensor_objects(&lx, &ly)?, unit_w.clone());
            let lhs = mc.compose(&xy, &lxy, &lxly, &tau.component(&xy)?, &nu_lift(x, y)?)?;
            let (wx, wy) = (Obj::weighted(lx, unit_w.clone()), Obj::weighted(ly, unit_w));
            let rhs = mc.tensor_elements(x, &wx, y, &wy, &tau.component(x)?, &tau.component(y)?)?;
            Ok((lhs, rhs))
        })
    }));
    let unit_x = mc.unit_object();
    report.push(sweep("monoidal.tau_unit", "τ_{1◀1} = j", &[()], |_| {
        instance(&base, || vec![unit_x.to_string()], || Ok((tau.component(&unit_x)?, mc.ident(&unit_x)?)))
    }));

    let conds = ["condition.representables_tensored", "condition.inclusion_tensored", "condition.tau_invertible", "condition.equivalence"];
    let monoidal = ["monoidal.inclusion", "monoidal.lift", "monoidal.tau_monoidal", "monoidal.tau_unit"];
    let cond_ok = conds.iter().all(|l| report.check(l).is_some_and(Check::passed));
    let mono_ok = monoidal.iter().all(|l| report.check(l).is_some_and(Check::passed));
    let mut agree = Check::new("monoidal.agreement", "the monoidal checks agree with the equivalence verdict");
    agree.expect(!cond_ok || mono_ok, || Witness::default().note(format!("equivalence: {cond_ok}, monoidal: {mono_ok}")));
    report.push(agree);
    Ok(report)
}

fn summary(law: &str, anchor: &str, sub: &Report) -> Check {
    let mut c = Check::new(law, anchor);
    for k in &sub.checks {
        c.instances += k.instances;
    }
    if let Some(f) = sub.first_failure() {
        let w = f.witness.clone().unwrap_or_default();
        let note = format!("{}{}", f.law, w.note.as_ref().map(|n| format!(": {n}")).unwrap_or_default());
        c.fail(Witness { note: Some(note), ..w });
    }
    c
}
