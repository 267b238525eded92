use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::base::GradedMorphism;
use crate::enriched::{labels, verify_vfunctor, Obj, VCat, VFunctor};
use crate::error::{Error, Result};
use crate::linalg::invert_morphism;
use crate::report::{holds, instance, sweep, Report};

use super::{Dual, MonoidalCompletion, VMonoidal};

/// `θ^x_{b,c}: C(xb→c) → C(b→x*c)`, sending `f` to `(coev_x⊗j_b);(j_{x*}⊗f)`.
pub fn frobenius_theta(c: &dyn VMonoidal, x: &Obj, dual: &Dual, b: &Obj, z: &Obj) -> Result<GradedMorphism> {
    let base = c.base();
    let xs = &dual.object;
    let one = c.unit_object();
    let xsx = c.tensor_objects(xs, x)?;
    let xb = c.tensor_objects(x, b)?;
    let xsxb = c.tensor_objects(xs, &xb)?;
    let xsz = c.tensor_objects(xs, z)?;
    let k = c.tensor_elements(&one, &xsx, b, b, &dual.coev, &c.ident(b)?)?;
    let y = base
        .tensor_mor(&c.ident(xs)?, &base.identity(&c.hom(&xb, z)?))
        .then(&c.tensor_homs(xs, xs, &xb, z)?)?;
    base.tensor_mor(&k, &y).then(&c.comp(b, &xsxb, &xsz)?)
}

/// The internal hom `[x,−] = x*⊗−` of a rigid object, with `θ^x` from the dual
/// and `κ^x = (θ^x)^{-1}`.
pub struct ClosedStructure {
    cat: Arc<dyn VMonoidal>,
    x: Obj,
    dual: Dual,
    theta: RwLock<HashMap<(Obj, Obj), GradedMorphism>>,
}

impl ClosedStructure {
    /// Fails with `ClosednessDataMissing` when `x` has no dual.
    pub fn new(cat: Arc<dyn VMonoidal>, x: &Obj) -> Result<Self> {
        let dual = cat.dual(x)?;
        Ok(ClosedStructure { cat, x: x.clone(), dual, theta: RwLock::new(HashMap::new()) })
    }

    pub fn object(&self) -> &Obj {
        &self.x
    }

    pub fn dual(&self) -> &Dual {
        &self.dual
    }

    /// `[x,z] = x*z`.
    pub fn internal_hom(&self, z: &Obj) -> Result<Obj> {
        self.cat.tensor_objects(&self.dual.object, z)
    }

    pub fn theta(&self, b: &Obj, z: &Obj) -> Result<GradedMorphism> {
        let key = (b.clone(), z.clone());
        if let Some(t) = self.theta.read().get(&key) {
            return Ok(t.clone());
        }
        let t = frobenius_theta(&*self.cat, &self.x, &self.dual, b, z)?;
        self.theta.write().insert(key, t.clone());
        Ok(t)
    }

    pub fn kappa(&self, b: &Obj, z: &Obj) -> Result<GradedMorphism> {
        invert_morphism(&self.theta(b, z)?)
            .ok_or_else(|| Error::NotInvertible(format!("θ at ({}, {b}, {z})", self.x)))
    }

    /// `L = x⊗−` with `L_{a→b} = (j_x⊗1);(−⊗−)`.
    pub fn left_functor(&self) -> VFunctor {
        self.tensor_functor("x⊗−", self.x.clone())
    }

    /// `R = [x,−]` with `R_{c→d} = (j_{x*}⊗1);(−⊗−)`.
    pub fn right_functor(&self) -> VFunctor {
        self.tensor_functor("[x,−]", self.dual.object.clone())
    }

    fn tensor_functor(&self, name: &str, y: Obj) -> VFunctor {
        let cat: Arc<dyn VCat> = self.cat.clone();
        let (c1, c2, y2) = (self.cat.clone(), self.cat.clone(), y.clone());
        VFunctor::new(
            format!("{name} at {}", self.x),
            cat.clone(),
            cat,
            move |a| c1.tensor_objects(&y, a),
            move |a, b| {
                let base = c2.base();
                base.tensor_mor(&c2.ident(&y2)?, &base.identity(&c2.hom(a, b)?)).then(&c2.tensor_homs(&y2, &y2, a, b)?)
            },
        )
    }

    /// Invertibility of `θ`, the two V-adjunction squares and the functor laws of `L` and `R`,
    /// swept over the category's window.
    pub fn verify(&self) -> Report {
        let c = &*self.cat;
        let base = c.base().clone();
        let objs = c.objects();
        let x = &self.x;
        let mut report = Report::default();
        let pairs: Vec<[&Obj; 2]> = objs.iter().flat_map(|a| objs.iter().map(move |b| [a, b])).collect();
        report.push(sweep("closed.theta_invertible", "θ_{b,c} is invertible", &pairs, |&[b, z]| {
            holds(|| labels(&[x, b, z]), || Ok(self.kappa(b, z).is_ok()))
        }));
        let triples: Vec<[&Obj; 3]> = pairs.iter().flat_map(|&[a, b]| objs.iter().map(move |z| [a, b, z])).collect();
        report.push(sweep(
            "closed.adjunction_left",
            "(L_{a→b}⊗κ_{b,d});comp = comp;κ_{a,d}",
            &triples,
            |&[a, b, d]| {
                instance(&base, || labels(&[x, a, b, d]), || {
                    let l = self.left_functor();
                    let (xa, xb, xsd) = (c.tensor_objects(x, a)?, c.tensor_objects(x, b)?, self.internal_hom(d)?);
                    let lhs = base.tensor_mor(&l.mor(a, b)?, &self.kappa(b, d)?).then(&c.comp(&xa, &xb, d)?)?;
                    let rhs = c.comp(a, b, &xsd)?.then(&self.kappa(a, d)?)?;
                    Ok((lhs, rhs))
                })
            },
        ));
        report.push(sweep(
            "closed.adjunction_right",
            "(θ_{a,c}⊗R_{c→d});comp = comp;θ_{a,d}",
            &triples,
            |&[a, z, d]| {
                instance(&base, || labels(&[x, a, z, d]), || {
                    let r = self.right_functor();
                    let (xa, xsc, xsd) = (c.tensor_objects(x, a)?, self.internal_hom(z)?, self.internal_hom(d)?);
                    let lhs = base.tensor_mor(&self.theta(a, z)?, &r.mor(z, d)?).then(&c.comp(a, &xsc, &xsd)?)?;
                    let rhs = c.comp(&xa, z, d)?.then(&self.theta(a, d)?)?;
                    Ok((lhs, rhs))
                })
            },
        ));
        for (tag, f) in [("left", self.left_functor()), ("right", self.right_functor())] {
            for mut check in verify_vfunctor(&f).checks {
                check.law = format!("closed.{tag}_{}", check.law.trim_start_matches("vfunctor."));
                report.push(check);
            }
        }
        report
    }
}

/// `[a◀u, c◀w] = a*c◀u*w` in a monoidal completion, the closed structure at `x`,
/// and a report with the adjunction checks plus a count check: for every
/// window object `y`, `C̄(y→[x,z])` and `C̄(xy→z)` have equal grade multiplicities.
pub fn completion_internal_hom(mc: Arc<MonoidalCompletion>, x: &Obj, z: &Obj) -> Result<(Obj, ClosedStructure, Report)> {
    let cat: Arc<dyn VMonoidal> = mc.clone();
    let closed = ClosedStructure::new(cat, x)?;
    let hom = closed.internal_hom(z)?;
    let mut report = closed.verify();
    let objs = mc.objects();
    report.push(sweep("closed.weight_count", "C̄(y→[x,z]) and C̄(xy→z) have equal multiplicities", &objs, |y| {
        holds(|| labels(&[x, y, z]), || {
            let via_hom = mc.hom(y, &hom)?;
            let via_tensor = mc.hom(&mc.tensor_objects(x, y)?, z)?;
            Ok(via_hom.multiplicities() == via_tensor.multiplicities())
        })
    }));
    Ok((hom, closed, report))
}
