use std::sync::Arc;

use crate::base::{GradedMorphism, GradedObject};
use crate::enriched::{labels, Obj, VCat};
use crate::error::Result;
use crate::linalg::generic_morphism;
use crate::report::{holds, instance, sweep, Report};

use super::tensoring::{ensure_representable, Tensoring};

/// The oplax right V-module on `C^V` induced by a tensoring.
///
/// Objects are those of `C`, morphisms `a → b` are elements `1 → C(a→b)`, and
/// `◁`, `α`, `ρ` are the ones of the tensoring.
#[derive(Clone)]
pub struct OplaxModule {
    t: Arc<dyn Tensoring>,
}

/// Builds the module after checking representability over the tensoring's scope.
pub fn vcat_to_module(t: Arc<dyn Tensoring>) -> Result<OplaxModule> {
    ensure_representable(&*t)?;
    Ok(OplaxModule { t })
}

impl OplaxModule {
    pub fn tensoring(&self) -> &Arc<dyn Tensoring> {
        &self.t
    }

    pub fn cat(&self) -> &Arc<dyn VCat> {
        self.t.cat()
    }

    pub fn objects(&self) -> Vec<Obj> {
        self.cat().objects()
    }

    pub fn act(&self, a: &Obj, v: &GradedObject) -> Result<Obj> {
        self.t.act(a, v)
    }

    pub fn alpha(&self, a: &Obj, u: &GradedObject, v: &GradedObject) -> Result<GradedMorphism> {
        self.t.alpha(a, u, v)
    }

    pub fn rho(&self, a: &Obj) -> Result<GradedMorphism> {
        self.t.rho(a)
    }

    pub fn act_left(&self, a: &Obj, b: &Obj, f: &GradedMorphism, v: &GradedObject) -> Result<GradedMorphism> {
        self.t.act_left(a, b, f, v)
    }

    pub fn act_right(&self, a: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        self.t.act_right(a, g)
    }

    /// Composite of a path of morphisms `objs[0] → objs[1] → …`.
    pub fn compose_path(&self, objs: &[&Obj], mors: &[&GradedMorphism]) -> Result<GradedMorphism> {
        debug_assert_eq!(objs.len(), mors.len() + 1);
        let c = self.cat();
        let mut acc = mors[0].clone();
        for k in 1..mors.len() {
            acc = c.compose(objs[0], objs[k], objs[k + 1], &acc, mors[k])?;
        }
        Ok(acc)
    }

    /// Whether every `ρ_a` on the window is invertible.
    pub fn check_strongly_unital(&self) -> Report {
        let c = self.cat().clone();
        let objs: Vec<Obj> = self.objects().into_iter().filter(|a| self.act(a, &GradedObject::unit()).is_ok()).collect();
        let mut r = Report::default();
        r.push(sweep("module.unitor_invertible", "ρ_a is invertible", &objs, |a| {
            holds(|| vec![a.to_string()], || {
                let a1 = self.act(a, &GradedObject::unit())?;
                Ok(c.inverse(&a1, a, &self.rho(a)?)?.is_some())
            })
        }));
        r
    }

    /// Module laws over the window objects and the given weights.
    ///
    /// Tuples whose actions fall outside the tensoring's scope are skipped.
    pub fn verify(&self, weights: &[GradedObject]) -> Report {
        let c = self.cat().clone();
        let base = c.base().clone();
        let objs = self.objects();
        let one = GradedObject::unit();
        let covered = |a: &Obj, vs: &[&GradedObject]| -> bool {
            let mut x = a.clone();
            for v in vs {
                match self.act(&x, v) {
                    Ok(y) => x = y,
                    Err(_) => return false,
                }
            }
            true
        };
        let mut report = self.check_strongly_unital();

        let cu: Vec<(Obj, GradedObject)> = objs
            .iter()
            .flat_map(|a| weights.iter().map(move |u| (a.clone(), u.clone())))
            .filter(|(a, u)| covered(a, &[u, &one]) && covered(a, &[&one, u]) && covered(a, &[u]))
            .collect();
        report.push(sweep("module.alpha_u1", "α_{c,u,1} is inverse to ρ_{c◁u}", &cu, |(a, u)| {
            instance(&base, || vec![a.to_string(), u.to_string()], || {
                let au = self.act(a, u)?;
                let au1 = self.act(&au, &one)?;
                let al = self.alpha(a, u, &one)?;
                let rho = self.rho(&au)?;
                let there = c.compose(&au, &au1, &au, &al, &rho)?;
                if there != c.ident(&au)? {
                    return Ok((there, c.ident(&au)?));
                }
                Ok((c.compose(&au1, &au, &au1, &rho, &al)?, c.ident(&au1)?))
            })
        }));
        report.push(sweep("module.alpha_1u", "α_{c,1,u} is inverse to ρ_c◁1_u", &cu, |(a, u)| {
            instance(&base, || vec![a.to_string(), u.to_string()], || {
                let a1 = self.act(a, &one)?;
                let au = self.act(a, u)?;
                let a1u = self.act(&a1, u)?;
                let al = self.alpha(a, &one, u)?;
                let rho_u = self.act_left(&a1, a, &self.rho(a)?, u)?;
                let there = c.compose(&au, &a1u, &au, &al, &rho_u)?;
                if there != c.ident(&au)? {
                    return Ok((there, c.ident(&au)?));
                }
                Ok((c.compose(&a1u, &au, &a1u, &rho_u, &al)?, c.ident(&a1u)?))
            })
        }));

        let exch: Vec<(Obj, Obj, GradedObject, GradedObject)> = objs
            .iter()
            .flat_map(|a| objs.iter().map(move |b| (a.clone(), b.clone())))
            .flat_map(|(a, b)| weights.iter().flat_map(move |u| weights.iter().map({
                let (a, b) = (a.clone(), b.clone());
                move |v| (a.clone(), b.clone(), u.clone(), v.clone())
            })))
            .filter(|(a, b, u, v)| covered(a, &[u]) && covered(a, &[v]) && covered(b, &[u]) && covered(b, &[v]))
            .collect();
        report.push(sweep("module.exchange", "(f◁1_u);(1_b◁g) = (1_a◁g);(f◁1_v)", &exch, |(a, b, u, v)| {
            instance(&base, || labels(&[a, b]).into_iter().chain([u.to_string(), v.to_string()]).collect(), || {
                let f = generic_morphism(&base, &one, &c.hom(a, b)?);
                let g = generic_morphism(&base, u, v);
                let (au, av, bu, bv) = (self.act(a, u)?, self.act(a, v)?, self.act(b, u)?, self.act(b, v)?);
                let lhs = c.compose(&au, &bu, &bv, &self.act_left(a, b, &f, u)?, &self.act_right(b, &g)?)?;
                let rhs = c.compose(&au, &av, &bv, &self.act_right(a, &g)?, &self.act_left(a, b, &f, v)?)?;
                Ok((lhs, rhs))
            })
        }));

        let nat: Vec<(Obj, Obj, GradedObject, GradedObject)> = exch
            .iter()
            .filter(|(a, b, u, v)| covered(a, &[u, v]) && covered(b, &[u, v]) && covered(a, &[&base.tensor_obj(u, v)]) && covered(b, &[&base.tensor_obj(u, v)]))
            .cloned()
            .collect();
        report.push(sweep("module.alpha_natural", "(f◁1_{uv});α_{b,u,v} = α_{a,u,v};((f◁1_u)◁1_v)", &nat, |(a, b, u, v)| {
            instance(&base, || labels(&[a, b]).into_iter().chain([u.to_string(), v.to_string()]).collect(), || {
                let uv = base.tensor_obj(u, v);
                let f = generic_morphism(&base, &one, &c.hom(a, b)?);
                let (auv, buv) = (self.act(a, &uv)?, self.act(b, &uv)?);
                let (au, bu) = (self.act(a, u)?, self.act(b, u)?);
                let (au_v, bu_v) = (self.act(&au, v)?, self.act(&bu, v)?);
                let lhs = c.compose(&auv, &buv, &bu_v, &self.act_left(a, b, &f, &uv)?, &self.alpha(b, u, v)?)?;
                let fu_v = self.act_left(&au, &bu, &self.act_left(a, b, &f, u)?, v)?;
                let rhs = c.compose(&auv, &au_v, &bu_v, &self.alpha(a, u, v)?, &fu_v)?;
                Ok((lhs, rhs))
            })
        }));

        let coh: Vec<(Obj, GradedObject, GradedObject, GradedObject)> = objs
            .iter()
            .flat_map(|a| weights.iter().map(move |u| (a.clone(), u.clone())))
            .flat_map(|(a, u)| weights.iter().flat_map(move |v| weights.iter().map({
                let (a, u) = (a.clone(), u.clone());
                move |w| (a.clone(), u.clone(), v.clone(), w.clone())
            })))
            .filter(|(a, u, v, w)| {
                let (uv, vw) = (base.tensor_obj(u, v), base.tensor_obj(v, w));
                covered(a, &[u, v, w])
                    && covered(a, &[u, &vw])
                    && covered(a, &[&uv, w])
                    && covered(a, &[&base.tensor_obj(&uv, w)])
            })
            .collect();
        report.push(sweep(
            "module.alpha_coherence",
            "α_{a,u,vw};α_{a◁u,v,w} = α_{a,uv,w};(α_{a,u,v}◁1_w)",
            &coh,
            |(a, u, v, w)| {
                instance(&base, || vec![a.to_string(), u.to_string(), v.to_string(), w.to_string()], || {
                    let (uv, vw) = (base.tensor_obj(u, v), base.tensor_obj(v, w));
                    let uvw = base.tensor_obj(&uv, w);
                    let a_uvw = self.act(a, &uvw)?;
                    let au = self.act(a, u)?;
                    let au_vw = self.act(&au, &vw)?;
                    let au_v = self.act(&au, v)?;
                    let au_v_w = self.act(&au_v, w)?;
                    let auv = self.act(a, &uv)?;
                    let auv_w = self.act(&auv, w)?;
                    let lhs = c.compose(&a_uvw, &au_vw, &au_v_w, &self.alpha(a, u, &vw)?, &self.alpha(&au, v, w)?)?;
                    let al_w = self.act_left(&auv, &au_v, &self.alpha(a, u, v)?, w)?;
                    let rhs = c.compose(&a_uvw, &auv_w, &au_v_w, &self.alpha(a, &uv, w)?, &al_w)?;
                    Ok((lhs, rhs))
                })
            },
        ));
        report
    }

    /// Whether every `α_{a,u,v}` over the window and weights is invertible.
    pub fn check_strong(&self, weights: &[GradedObject]) -> Report {
        let c = self.cat().clone();
        let base = c.base().clone();
        let items: Vec<(Obj, GradedObject, GradedObject)> = self
            .objects()
            .into_iter()
            .flat_map(|a| weights.iter().map(move |u| (a.clone(), u.clone())))
            .flat_map(|(a, u)| weights.iter().map(move |v| (a.clone(), u.clone(), v.clone())))
            .filter(|(a, u, v)| {
                self.act(a, &base.tensor_obj(u, v)).is_ok()
                    && self.act(a, u).and_then(|au| self.act(&au, v)).is_ok()
            })
            .collect();
        let mut r = Report::default();
        r.push(sweep("module.strong", "α_{a,u,v} is invertible", &items, |(a, u, v)| {
            holds(|| vec![a.to_string(), u.to_string(), v.to_string()], || {
                let auv = self.act(a, &base.tensor_obj(u, v))?;
                let au_v = self.act(&self.act(a, u)?, v)?;
                Ok(c.inverse(&auv, &au_v, &self.alpha(a, u, v)?)?.is_some())
            })
        }));
        r
    }
}
