use std::sync::Arc;

use crate::base::{GradedMorphism, GradedObject};
use crate::enriched::{labels, Obj, SelfEnrichment, VCat, VFunctor};
use crate::error::{Error, Result};
use crate::linalg::generic_morphism;
use crate::report::{holds, instance, sweep, Check, Report, Witness};

use super::oplax::OplaxModule;
use super::tensoring::{SelfTensoring, Tensoring};

/// A V-functor with its laxitor `μ_{c,v} = Φ_D^{-1}(η^C_{c,v};F_{c→c◁v}) ∈ D^V(F(c)◁v → F(c◁v))`.
#[derive(Clone)]
pub struct LaxModuleFunctor {
    functor: VFunctor,
    src: Arc<dyn Tensoring>,
    tgt: Arc<dyn Tensoring>,
    weights: Vec<GradedObject>,
}

/// Attaches the laxitor to `f`, after checking that both tensorings cover every
/// window object against every weight.
pub fn laxitor_of_functor(
    f: &VFunctor,
    src: Arc<dyn Tensoring>,
    tgt: Arc<dyn Tensoring>,
    weights: &[GradedObject],
) -> Result<LaxModuleFunctor> {
    let mut missing = Vec::new();
    for c in f.source().objects() {
        for v in weights {
            if src.act(&c, v).is_err() {
                missing.push(format!("source ({c}, {v})"));
            }
            let fc = f.obj(&c)?;
            if tgt.act(&fc, v).is_err() {
                missing.push(format!("target ({fc}, {v})"));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::CoverageGap { missing });
    }
    Ok(LaxModuleFunctor { functor: f.clone(), src, tgt, weights: weights.to_vec() })
}

impl LaxModuleFunctor {
    pub fn functor(&self) -> &VFunctor {
        &self.functor
    }

    /// `F` on an underlying morphism `x ∈ C^V(a→b)`.
    pub fn apply(&self, a: &Obj, b: &Obj, x: &GradedMorphism) -> Result<GradedMorphism> {
        x.then(&self.functor.mor(a, b)?)
    }

    pub fn mu(&self, c: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        let cv = self.src.act(c, v)?;
        let (fc, fcv) = (self.functor.obj(c)?, self.functor.obj(&cv)?);
        let g = self.src.unit(c, v)?.then(&self.functor.mor(c, &cv)?)?;
        self.tgt.adjunct_inverse(&fc, v, &fcv, &g)
    }

    fn pairs(&self) -> Vec<(Obj, GradedObject)> {
        let objs = self.functor.source().objects();
        objs.iter().flat_map(|c| self.weights.iter().map(move |v| (c.clone(), v.clone()))).collect()
    }

    /// Unitality, associativity and both naturalities of `μ`.
    pub fn verify(&self) -> Report {
        let d = self.tgt.cat().clone();
        let base = d.base().clone();
        let one = GradedObject::unit();
        let f = &self.functor;
        let pairs = self.pairs();
        let in_scope = |c: &Obj, vs: &[&GradedObject]| -> bool {
            let mut x = c.clone();
            for v in vs {
                let Ok(fx) = f.obj(&x) else { return false };
                if self.tgt.act(&fx, v).is_err() {
                    return false;
                }
                match self.src.act(&x, v) {
                    Ok(y) => x = y,
                    Err(_) => return false,
                }
            }
            true
        };
        let mut report = Report::default();

        let objs: Vec<Obj> = f.source().objects().into_iter().filter(|c| in_scope(c, &[&one])).collect();
        report.push(sweep("laxfunctor.unit", "μ_{c,1};F(ρ_c) = ρ_{F(c)}", &objs, |c| {
            instance(&base, || vec![c.to_string()], || {
                let c1 = self.src.act(c, &one)?;
                let (fc, fc1) = (f.obj(c)?, f.obj(&c1)?);
                let fc_1 = self.tgt.act(&fc, &one)?;
                let lhs = d.compose(&fc_1, &fc1, &fc, &self.mu(c, &one)?, &self.apply(&c1, c, &self.src.rho(c)?)?)?;
                Ok((lhs, self.tgt.rho(&fc)?))
            })
        }));

        let triples: Vec<(Obj, GradedObject, GradedObject)> = pairs
            .iter()
            .flat_map(|(c, u)| self.weights.iter().map(move |v| (c.clone(), u.clone(), v.clone())))
            .filter(|(c, u, v)| in_scope(c, &[u, v]) && in_scope(c, &[&base.tensor_obj(u, v)]))
            .collect();
        report.push(sweep(
            "laxfunctor.assoc",
            "α_{Fc,u,v};(μ_{c,u}◁1_v);μ_{c◁u,v} = μ_{c,uv};F(α_{c,u,v})",
            &triples,
            |(c, u, v)| {
                instance(&base, || vec![c.to_string(), u.to_string(), v.to_string()], || {
                    let uv = base.tensor_obj(u, v);
                    let cu = self.src.act(c, u)?;
                    let (cuv, cu_v) = (self.src.act(c, &uv)?, self.src.act(&cu, v)?);
                    let (fc, fcu, fcuv, fcu_v) = (f.obj(c)?, f.obj(&cu)?, f.obj(&cuv)?, f.obj(&cu_v)?);
                    let fc_uv = self.tgt.act(&fc, &uv)?;
                    let fc_u = self.tgt.act(&fc, u)?;
                    let fc_u_v = self.tgt.act(&fc_u, v)?;
                    let fcu_v_d = self.tgt.act(&fcu, v)?;
                    let mu_v = self.tgt.act_left(&fc_u, &fcu, &self.mu(c, u)?, v)?;
                    let a1 = d.compose(&fc_uv, &fc_u_v, &fcu_v_d, &self.tgt.alpha(&fc, u, v)?, &mu_v)?;
                    let lhs = d.compose(&fc_uv, &fcu_v_d, &fcu_v, &a1, &self.mu(&cu, v)?)?;
                    let f_alpha = self.apply(&cuv, &cu_v, &self.src.alpha(c, u, v)?)?;
                    let rhs = d.compose(&fc_uv, &fcuv, &fcu_v, &self.mu(c, &uv)?, &f_alpha)?;
                    Ok((lhs, rhs))
                })
            },
        ));

        let src_objs = f.source().objects();
        let nat_obj: Vec<(Obj, Obj, GradedObject)> = src_objs
            .iter()
            .flat_map(|a| src_objs.iter().map(move |b| (a.clone(), b.clone())))
            .flat_map(|(a, b)| self.weights.iter().map(move |v| (a.clone(), b.clone(), v.clone())))
            .filter(|(a, b, v)| in_scope(a, &[v]) && in_scope(b, &[v]))
            .collect();
        report.push(sweep("laxfunctor.natural_object", "(F(f)◁1_v);μ_{b,v} = μ_{a,v};F(f◁1_v)", &nat_obj, |(a, b, v)| {
            instance(&base, || labels(&[a, b]).into_iter().chain([v.to_string()]).collect(), || {
                let c = f.source();
                let x = generic_morphism(&base, &one, &c.hom(a, b)?);
                let (av, bv) = (self.src.act(a, v)?, self.src.act(b, v)?);
                let (fa, fb, fav, fbv) = (f.obj(a)?, f.obj(b)?, f.obj(&av)?, f.obj(&bv)?);
                let (fa_v, fb_v) = (self.tgt.act(&fa, v)?, self.tgt.act(&fb, v)?);
                let fx_v = self.tgt.act_left(&fa, &fb, &self.apply(a, b, &x)?, v)?;
                let lhs = d.compose(&fa_v, &fb_v, &fbv, &fx_v, &self.mu(b, v)?)?;
                let f_xv = self.apply(&av, &bv, &self.src.act_left(a, b, &x, v)?)?;
                let rhs = d.compose(&fa_v, &fav, &fbv, &self.mu(a, v)?, &f_xv)?;
                Ok((lhs, rhs))
            })
        }));

        let nat_weight: Vec<(Obj, GradedObject, GradedObject)> = pairs
            .iter()
            .flat_map(|(c, u)| self.weights.iter().map(move |v| (c.clone(), u.clone(), v.clone())))
            .filter(|(c, u, v)| in_scope(c, &[u]) && in_scope(c, &[v]))
            .collect();
        report.push(sweep("laxfunctor.natural_weight", "(1_{Fc}◁g);μ_{c,v} = μ_{c,u};F(1_c◁g)", &nat_weight, |(c, u, v)| {
            instance(&base, || vec![c.to_string(), u.to_string(), v.to_string()], || {
                let g = generic_morphism(&base, u, v);
                let (cu, cv) = (self.src.act(c, u)?, self.src.act(c, v)?);
                let (fc, fcu, fcv) = (f.obj(c)?, f.obj(&cu)?, f.obj(&cv)?);
                let (fc_u, fc_v) = (self.tgt.act(&fc, u)?, self.tgt.act(&fc, v)?);
                let lhs = d.compose(&fc_u, &fc_v, &fcv, &self.tgt.act_right(&fc, &g)?, &self.mu(c, v)?)?;
                let rhs = d.compose(&fc_u, &fcu, &fcv, &self.mu(c, u)?, &self.apply(&cu, &cv, &self.src.act_right(c, &g)?)?)?;
                Ok((lhs, rhs))
            })
        }));
        report
    }

    /// Pass iff every `μ_{c,v}` is invertible; a failure names the pair.
    pub fn is_tensored(&self) -> Report {
        let d = self.tgt.cat().clone();
        let pairs = self.pairs();
        let f = &self.functor;
        let mut r = Report::default();
        r.push(sweep("functor.tensored", "μ_{c,v} is invertible", &pairs, |(c, v)| {
            holds(|| vec![c.to_string(), v.to_string()], || {
                let fc_v = self.tgt.act(&f.obj(c)?, v)?;
                let fcv = f.obj(&self.src.act(c, v)?)?;
                Ok(d.inverse(&fc_v, &fcv, &self.mu(c, v)?)?.is_some())
            })
        }));
        r
    }
}

/// Convenience wrapper: laxitor, then the invertibility report.
pub fn is_tensored_functor(
    f: &VFunctor,
    src: Arc<dyn Tensoring>,
    tgt: Arc<dyn Tensoring>,
    weights: &[GradedObject],
) -> Result<Report> {
    Ok(laxitor_of_functor(f, src, tgt, weights)?.is_tensored())
}

type ElementFn = Arc<dyn Fn(&Obj) -> Result<GradedMorphism> + Send + Sync>;

/// V-functors `L: C → D`, `R: D → C` with an underlying adjunction:
/// units `η_a ∈ C^V(a → RLa)` and counits `ε_d ∈ D^V(LRd → d)`.
#[derive(Clone)]
pub struct Adjunction {
    pub left: VFunctor,
    pub right: VFunctor,
    unit: ElementFn,
    counit: ElementFn,
}

impl Adjunction {
    pub fn new(
        left: VFunctor,
        right: VFunctor,
        unit: impl Fn(&Obj) -> Result<GradedMorphism> + Send + Sync + 'static,
        counit: impl Fn(&Obj) -> Result<GradedMorphism> + Send + Sync + 'static,
    ) -> Self {
        Adjunction { left, right, unit: Arc::new(unit), counit: Arc::new(counit) }
    }

    /// The identity adjunction on `C`, with identities as unit and counit.
    pub fn identity(c: Arc<dyn VCat>) -> Self {
        let (c1, c2) = (c.clone(), c.clone());
        let id = VFunctor::identity(c);
        Adjunction::new(id.clone(), id, move |a| c1.ident(a), move |d| c2.ident(d))
    }

    /// `u⊗− ⊣ V̂(u→−)` on the self-enrichment, with unit `coev_u⊗1` and counit `ev_u⊗1`.
    pub fn tensor_hom(vhat: Arc<SelfEnrichment>, u: &GradedObject) -> Self {
        let base = vhat.base().clone();
        let left = tensor_left_functor(vhat.clone(), u);
        let right = tensor_left_functor(vhat, &base.dual_obj(u));
        let (b1, b2) = (base.clone(), base);
        let (u1, u2) = (u.clone(), u.clone());
        Adjunction::new(
            left,
            right,
            move |a| b1.name_of(&b1.tensor_mor(&b1.coev(&u1), &b1.identity(a.expect_v()?))),
            move |d| {
                let d = d.expect_v()?;
                b2.name_of(&b2.tensor_mor(&b2.ev(&u2), &b2.identity(d)))
            },
        )
    }

    pub fn unit(&self, a: &Obj) -> Result<GradedMorphism> {
        (self.unit)(a)
    }

    pub fn counit(&self, d: &Obj) -> Result<GradedMorphism> {
        (self.counit)(d)
    }
}

/// The V-functor `u⊗−` on V̂, whose component at `v → w` is the mate of `1_u⊗ε_{v→w}`.
pub fn tensor_left_functor(vhat: Arc<SelfEnrichment>, u: &GradedObject) -> VFunctor {
    let (b1, b2) = (vhat.base().clone(), vhat.base().clone());
    let (u1, u2) = (u.clone(), u.clone());
    VFunctor::new(
        format!("{u}⊗−"),
        vhat.clone(),
        vhat,
        move |a| Ok(Obj::V(b1.tensor_obj(&u1, a.expect_v()?))),
        move |a, b| {
            let (v, w) = (a.expect_v()?, b.expect_v()?);
            let f = b2.tensor_mor(&b2.identity(&u2), &b2.eval_counit(v, w));
            b2.mate_forward_w(&b2.tensor_obj(&u2, v), &b2.internal_hom(v, w), &f)
        },
    )
}

/// The families `θ_{a,d}: D(La→d) → C(a→Rd)` and `κ_{a,d}: C(a→Rd) → D(La→d)` with their report.
pub struct ThetaKappa {
    pub theta: Vec<((Obj, Obj), GradedMorphism)>,
    pub kappa: Vec<((Obj, Obj), GradedMorphism)>,
    pub report: Report,
}

impl ThetaKappa {
    /// Whether `κ = θ^{-1}` on every pair, i.e. the adjunction is a V-adjunction.
    pub fn lifts(&self) -> bool {
        self.report.check("adjunction.kappa_inverse").is_some_and(Check::passed)
    }
}

/// `θ_{a,d} = (η_a⊗R_{La→d});comp_C` and `κ_{a,d} = (L_{a→Rd}⊗ε_d);comp_D`.
///
/// The report checks both underlying triangle identities and whether `κ_{a,d} = θ_{a,d}^{-1}`.
pub fn theta_kappa(adj: &Adjunction) -> Result<ThetaKappa> {
    use rayon::prelude::*;
    let (l, r) = (&adj.left, &adj.right);
    let (c, d) = (l.source().clone(), l.target().clone());
    let base = c.base().clone();
    let mut report = Report::default();

    let c_objs = c.objects();
    report.push(sweep("adjunction.triangle_left", "L(η_a);ε_{La} = 1_{La}", &c_objs, |a| {
        instance(&base, || vec![a.to_string()], || {
            let la = l.obj(a)?;
            let rla = r.obj(&la)?;
            let lrla = l.obj(&rla)?;
            let l_eta = adj.unit(a)?.then(&l.mor(a, &rla)?)?;
            Ok((d.compose(&la, &lrla, &la, &l_eta, &adj.counit(&la)?)?, d.ident(&la)?))
        })
    }));
    let d_objs = d.objects();
    report.push(sweep("adjunction.triangle_right", "η_{Rd};R(ε_d) = 1_{Rd}", &d_objs, |x| {
        instance(&base, || vec![x.to_string()], || {
            let rd = r.obj(x)?;
            let lrd = l.obj(&rd)?;
            let rlrd = r.obj(&lrd)?;
            let r_eps = adj.counit(x)?.then(&r.mor(&lrd, x)?)?;
            Ok((c.compose(&rd, &rlrd, &rd, &adj.unit(&rd)?, &r_eps)?, c.ident(&rd)?))
        })
    }));

    let pairs: Vec<(Obj, Obj)> = c_objs.iter().flat_map(|a| d_objs.iter().map(move |x| (a.clone(), x.clone()))).collect();
    let families: Vec<Result<(GradedMorphism, GradedMorphism)>> = pairs
        .par_iter()
        .map(|(a, x)| {
            let (la, rx) = (l.obj(a)?, r.obj(x)?);
            let rla = r.obj(&la)?;
            let lrx = l.obj(&rx)?;
            let theta = base.tensor_mor(&adj.unit(a)?, &r.mor(&la, x)?).then(&c.comp(a, &rla, &rx)?)?;
            let kappa = base.tensor_mor(&l.mor(a, &rx)?, &adj.counit(x)?).then(&d.comp(&la, &lrx, x)?)?;
            Ok((theta, kappa))
        })
        .collect();
    let mut theta = Vec::with_capacity(pairs.len());
    let mut kappa = Vec::with_capacity(pairs.len());
    let mut check = Check::new("adjunction.kappa_inverse", "κ_{a,d} = θ_{a,d}^{-1}");
    for (p, res) in pairs.into_iter().zip(families) {
        let (t, k) = res?;
        let ok = t.then(&k)? == base.identity(t.dom()) && k.then(&t)? == base.identity(k.dom());
        check.expect(ok, || Witness::tuple([&p.0, &p.1]));
        theta.push((p.clone(), t));
        kappa.push((p, k));
    }
    report.push(check);
    Ok(ThetaKappa { theta, kappa, report })
}

/// Computes both sides of the lifting criterion independently: whether `κ = θ^{-1}`
/// and whether every laxitor of `L` is invertible. The `adjunction.lift_agreement`
/// check passes when the two verdicts coincide.
pub fn lift_agreement(
    adj: &Adjunction,
    src: Arc<dyn Tensoring>,
    tgt: Arc<dyn Tensoring>,
    weights: &[GradedObject],
) -> Result<Report> {
    let tk = theta_kappa(adj)?;
    let tensored = is_tensored_functor(&adj.left, src, tgt, weights)?;
    let (lifts, is_t) = (tk.lifts(), tensored.passed());
    let mut report = tk.report;
    report.extend(tensored);
    let mut check = Check::new("adjunction.lift_agreement", "L ⊣_V R iff L is tensored");
    check.expect(lifts == is_t, || {
        Witness::tuple([adj.left.name().to_string()]).note(format!("κ=θ^-1: {lifts}, all μ invertible: {is_t}"))
    });
    report.push(check);
    Ok(report)
}

/// The V-functor `L^a: V̂ → C`, `u ↦ a◁u`, with
/// `L^a_{u→v} = Φ(α^{-1}_{a,u,u*v};(1_a◁ε_{u→v}))`. Requires invertible `α`.
pub fn action_functor(m: &OplaxModule, a: &Obj, weights: &[GradedObject]) -> VFunctor {
    let c = m.cat().clone();
    let base = c.base().clone();
    let vhat: Arc<dyn VCat> = Arc::new(SelfEnrichment::new(base.clone(), weights.to_vec()));
    let (m1, m2) = (m.clone(), m.clone());
    let (a1, a2) = (a.clone(), a.clone());
    VFunctor::new(
        format!("{a}◁−"),
        vhat,
        c,
        move |u| m1.act(&a1, u.expect_v()?),
        move |u, v| {
            let (u, v) = (u.expect_v()?, v.expect_v()?);
            let c = m2.cat();
            let hom = base.internal_hom(u, v);
            let au = m2.act(&a2, u)?;
            let au_h = m2.act(&au, &hom)?;
            let a_uh = m2.act(&a2, &base.tensor_obj(u, &hom))?;
            let av = m2.act(&a2, v)?;
            let inv = c
                .inverse(&a_uh, &au_h, &m2.alpha(&a2, u, &hom)?)?
                .ok_or_else(|| Error::NotInvertible(format!("α_{{{a2},{u},{hom}}}")))?;
            let x = c.compose(&au_h, &a_uh, &av, &inv, &m2.act_right(&a2, &base.eval_counit(u, v))?)?;
            m2.tensoring().adjunct(&au, &hom, &av, &x)
        },
    )
}

/// Whether every `α_{a,u,v}` is invertible; when they are, also checks that each
/// `L^a` is a V-functor whose laxitor is exactly `α^{-1}`.
pub fn strong_module_check(m: &OplaxModule, weights: &[GradedObject]) -> Result<Report> {
    let mut report = m.check_strong(weights);
    if !report.passed() {
        return Ok(report);
    }
    let c = m.cat().clone();
    let base = c.base().clone();
    let vhat = Arc::new(SelfEnrichment::new(base.clone(), weights.to_vec()));
    let src: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(vhat, weights.to_vec()));
    let mut agree = Check::new("module.alpha_inverse_laxitor", "α_{a,u,v} = (μ^{L^a}_{u,v})^{-1}");
    let mut functor = Check::new("module.action_functor", "L^a is a V-functor");
    for a in m.objects() {
        let la = action_functor(m, &a, weights);
        let fr = crate::enriched::verify_vfunctor(&la);
        functor.count();
        if !fr.passed() {
            functor.fail(Witness::tuple([a.to_string()]).note(fr.failures().join(", ")));
        }
        let lf = laxitor_of_functor(&la, src.clone(), m.tensoring().clone(), weights)?;
        let items: Vec<(GradedObject, GradedObject)> =
            weights.iter().flat_map(|u| weights.iter().map(move |v| (u.clone(), v.clone()))).collect();
        let sub = sweep("", "", &items, |(u, v)| {
            instance(&base, || vec![a.to_string(), u.to_string(), v.to_string()], || {
                let uv = base.tensor_obj(u, v);
                let auv = m.act(&a, &uv)?;
                let au_v = m.act(&m.act(&a, u)?, v)?;
                let mu = lf.mu(&Obj::V(u.clone()), v)?;
                let there = c.compose(&auv, &au_v, &auv, &m.alpha(&a, u, v)?, &mu)?;
                if there != c.ident(&auv)? {
                    return Ok((there, c.ident(&auv)?));
                }
                Ok((c.compose(&au_v, &auv, &au_v, &mu, &m.alpha(&a, u, v)?)?, c.ident(&au_v)?))
            })
        });
        agree.absorb(sub);
    }
    report.push(functor);
    report.push(agree);
    Ok(report)
}
