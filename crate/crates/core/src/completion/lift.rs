use std::sync::Arc;

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::enriched::{representable_vfunctor, verify_vnat, Obj, SelfEnrichment, VCat, VFunctor, VNat};
use crate::error::{Error, Result};
use crate::linalg::{element_basis, generic_morphism, MorphismMap};
use crate::module::{is_tensored_functor, laxitor_of_functor, SelfTensoring, Tensoring};
use crate::report::{holds, instance, sweep, Check, Report, Status, Witness};

use super::category::{inclusion_functor, Completion};
use super::tensoring::completion_tensoring;

/// The lift `F̄: C̄ → D` of `F: C → D` along `I`, with `F̄(a◀u) = F(a)◁u`, and
/// the transformation `σ: F ⇒ I;F̄` with `σ_a = η^D_{F(a),1}`.
///
/// `F̄_{a◀u→b◀w}` corresponds under `Φ_D` to
/// `α^{-1}_{Fa,u,H};(1◁(ev_u⊗1));(1◁(F_{a→b}⊗1_w));α_{Fa,D(Fa→Fb),w};(ε_{Fa→Fb}◁1_w)`
/// where `H = u*⊗C(a→b)⊗w`.
pub fn lift_functor(f: &VFunctor, cbar: Arc<Completion>, tgt: Arc<dyn Tensoring>) -> Result<(VFunctor, VNat)> {
    let mut missing = Vec::new();
    for x in cbar.window() {
        let (a, u) = x.expect_weighted()?;
        let fa = f.obj(a)?;
        if tgt.act(&fa, u).is_err() {
            missing.push(format!("({fa}, {u})"));
        }
    }
    if !missing.is_empty() {
        return Err(Error::CoverageGap { missing });
    }
    let (f1, f2, f3) = (f.clone(), f.clone(), f.clone());
    let (t1, t2, t3) = (tgt.clone(), tgt.clone(), tgt.clone());
    let d = f.target().clone();
    let cbar2 = cbar.clone();
    let lifted = VFunctor::new(
        format!("lift({})", f.name()),
        cbar.clone(),
        d.clone(),
        move |x| {
            let (a, u) = x.expect_weighted()?;
            t1.act(&f1.obj(a)?, u)
        },
        move |x, y| lift_component(&f2, &cbar2, &*t2, x, y),
    );
    let incl = inclusion_functor(cbar);
    let sigma = VNat::new(f.clone(), incl.then(&lifted), move |a| t3.unit(&f3.obj(a)?, &GradedObject::unit()));
    Ok((lifted, sigma))
}

fn lift_component(f: &VFunctor, cbar: &Completion, t: &dyn Tensoring, x: &Obj, y: &Obj) -> Result<GradedMorphism> {
    let ((a, u), (b, w)) = (x.expect_weighted()?, y.expect_weighted()?);
    let d = t.cat();
    let base = d.base();
    let h = cbar.hom(x, y)?;
    let cab = f.source().hom(a, b)?;
    let (fa, fb) = (f.obj(a)?, f.obj(b)?);
    let dab = d.hom(&fa, &fb)?;
    let fx = t.act(&fa, u)?;
    let fy = t.act(&fb, w)?;
    let fx_h = t.act(&fx, &h)?;
    let fa_uh = t.act(&fa, &base.tensor_obj(u, &h))?;
    let fa_cw = t.act(&fa, &base.tensor_obj(&cab, w))?;
    let fa_dw = t.act(&fa, &base.tensor_obj(&dab, w))?;
    let fa_d = t.act(&fa, &dab)?;
    let fa_d_w = t.act(&fa_d, w)?;
    let alpha = t.alpha(&fa, u, &h)?;
    let alpha_inv =
        d.inverse(&fa_uh, &fx_h, &alpha)?.ok_or_else(|| Error::NotInvertible(format!("α_{{{fa},{u},{h}}}")))?;
    let s1 = t.act_right(&fa, &base.eval_counit(u, &base.tensor_obj(&cab, w)))?;
    let s2 = t.act_right(&fa, &base.tensor_mor(&f.mor(a, b)?, &base.identity(w)))?;
    let s3 = t.alpha(&fa, &dab, w)?;
    let eps = t.adjunct_inverse(&fa, &dab, &fb, &base.identity(&dab))?;
    let s4 = t.act_left(&fa_d, &fb, &eps, w)?;
    let mut acc = alpha_inv;
    for (from, to, m) in [(&fa_uh, &fa_cw, &s1), (&fa_cw, &fa_dw, &s2), (&fa_dw, &fa_d_w, &s3), (&fa_d_w, &fy, &s4)] {
        acc = d.compose(&fx_h, from, to, &acc, m)?;
    }
    t.adjunct(&fx, &h, &fy, &acc)
}

fn invertibility(law: &str, anchor: &str, nat: &VNat) -> Check {
    let (f, g) = (nat.source(), nat.target());
    let d = f.target().clone();
    let objs = f.source().objects();
    sweep(law, anchor, &objs, |x| {
        holds(|| vec![x.to_string()], || Ok(d.inverse(&f.obj(x)?, &g.obj(x)?, &nat.component(x)?)?.is_some()))
    })
}

/// `τ: 1_C̄ ⇒ lift(1_C);I` with `τ_{a◀u} = μ^I_{a,u}`; the report checks
/// naturality and whether every component is invertible.
pub fn tau_transformation(cbar: Arc<Completion>, tc: Arc<dyn Tensoring>, weights: &[GradedObject]) -> Result<(VNat, Report)> {
    let c = cbar.cat().clone();
    let ct: Arc<dyn Tensoring> = Arc::new(completion_tensoring(cbar.clone(), weights));
    let incl = inclusion_functor(cbar.clone());
    let lf = laxitor_of_functor(&incl, tc.clone(), ct, weights)?;
    let (lifted, _) = lift_functor(&VFunctor::identity(c), cbar.clone(), tc)?;
    let tau = VNat::new(VFunctor::identity(cbar), lifted.then(&incl), move |x| {
        let (a, u) = x.expect_weighted()?;
        lf.mu(a, u)
    });
    let mut report = verify_vnat(&tau);
    report.push(invertibility("tau.invertible", "τ_{a◀u} is invertible", &tau));
    Ok((tau, report))
}

fn verdict_check(law: &str, anchor: &str, sub: &Report) -> Check {
    let mut c = Check::new(law, anchor);
    for k in &sub.checks {
        c.instances += k.instances;
    }
    if let Some(f) = sub.checks.iter().find(|k| k.status != Status::Pass) {
        let w = f.witness.clone().unwrap_or_default();
        let w = Witness { note: Some(format!("{}: {}", f.law, w.note.clone().unwrap_or_default())), ..w };
        if f.status == Status::Fail {
            c.fail(w);
        } else {
            c.undetermined(w);
        }
    }
    c
}

/// Evaluates the four equivalent conditions independently:
/// 1. every representable `C(a→−)` is tensored;
/// 2. `I: C → C̄` is tensored;
/// 3. `τ` is invertible;
/// 4. `I` and `lift(1_C)` form a V-equivalence on the window (`σ` invertible and
///    every lift component an isomorphism of hom objects).
///
/// `condition.agreement` fails if the four verdicts differ.
pub fn equivalence_conditions(cbar: Arc<Completion>, tc: Arc<dyn Tensoring>, weights: &[GradedObject]) -> Result<Report> {
    let c = cbar.cat().clone();
    let base = c.base().clone();
    let objs = c.objects();
    let mut report = Report::default();

    let mut cond1 = Report::default();
    for a in &objs {
        let r = representable_vfunctor(c.clone(), a)?;
        let vhat = Arc::new(SelfEnrichment::new(base.clone(), Vec::new()));
        let tv: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(vhat, weights.to_vec()));
        let lf = laxitor_of_functor(&r, tc.clone(), tv, weights)?;
        cond1.extend(lf.is_tensored());
        let items: Vec<(Obj, GradedObject)> =
            objs.iter().flat_map(|b| weights.iter().map(move |v| (b.clone(), v.clone()))).collect();
        cond1.push(sweep("representable.laxitor_formula", "μ_{b,v} = (1 η_{b,v});comp", &items, |(b, v)| {
            instance(&base, || vec![a.to_string(), b.to_string(), v.to_string()], || {
                let bv = tc.act(b, v)?;
                let plain = base.tensor_mor(&base.identity(&c.hom(a, b)?), &tc.unit(b, v)?).then(&c.comp(a, b, &bv)?)?;
                Ok((lf.mu(b, v)?, base.name_of(&plain)?))
            })
        }));
    }
    let mut formula = Check::new("representable.laxitor_formula", "μ^{C(a→−)}_{b,v} = (1 η_{b,v});comp");
    for k in cond1.checks.iter().filter(|k| k.law == "representable.laxitor_formula") {
        formula.absorb(k.clone());
    }
    let tensored_only = Report { checks: cond1.checks.into_iter().filter(|k| k.law != "representable.laxitor_formula").collect() };
    let v1 = verdict_check("condition.representables_tensored", "every C(a→−) is tensored", &tensored_only);

    let ct: Arc<dyn Tensoring> = Arc::new(completion_tensoring(cbar.clone(), weights));
    let incl = inclusion_functor(cbar.clone());
    let v2 = verdict_check("condition.inclusion_tensored", "I is tensored", &is_tensored_functor(&incl, tc.clone(), ct, weights)?);

    let (_, tau_report) = tau_transformation(cbar.clone(), tc.clone(), weights)?;
    let v3 = verdict_check("condition.tau_invertible", "τ is invertible", &tau_report);

    let (lifted, sigma) = lift_functor(&VFunctor::identity(c.clone()), cbar.clone(), tc)?;
    let mut eq = Report::default();
    eq.push(invertibility("lift.sigma_invertible", "σ_a is invertible", &sigma));
    let win = cbar.window().to_vec();
    let pairs: Vec<(Obj, Obj)> = win.iter().flat_map(|x| win.iter().map(move |y| (x.clone(), y.clone()))).collect();
    eq.push(sweep("lift.fully_faithful", "lift(1_C)_{x→y} is an isomorphism", &pairs, |(x, y)| {
        holds(|| vec![x.to_string(), y.to_string()], || Ok(base.inverse(&lifted.mor(x, y)?).is_some()))
    }));
    let v4 = verdict_check("condition.equivalence", "(I, lift(1_C)) is a V-equivalence", &eq);

    let verdicts = [v1.passed(), v2.passed(), v3.passed(), v4.passed()];
    let mut agree = Check::new("condition.agreement", "the four conditions agree");
    agree.expect(verdicts.iter().all(|v| *v == verdicts[0]), || {
        Witness::default().note(format!("verdicts {verdicts:?}"))
    });
    report.push(v1);
    report.push(formula);
    report.push(v2);
    report.push(v3);
    report.push(v4);
    report.push(agree);
    Ok(report)
}

/// Rebuilds `coev_v` as `j_v;(μ_{1,v})^{-1}` from the laxitor of `V̂(v→−)` and
/// checks both zig-zag identities against `ev_v`.
/// Both zigzag composites, each paired with the identity it should equal.
type Zigzags = (GradedMorphism, GradedMorphism, GradedMorphism, GradedMorphism);

pub fn rigidity_check(base: Arc<BaseCategory>, window: &[GradedObject]) -> Result<Report> {
    let one = GradedObject::unit();
    let mut objs: Vec<GradedObject> = window.to_vec();
    if !objs.contains(&one) {
        objs.insert(0, one.clone());
    }
    let vhat = Arc::new(SelfEnrichment::new(base.clone(), objs.clone()));
    let src: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(vhat.clone(), objs.clone()));
    let items = window.to_vec();
    let results: Vec<Result<Option<Zigzags>>> = {
        use rayon::prelude::*;
        items
            .par_iter()
            .map(|v| {
                let r = representable_vfunctor(vhat.clone(), &Obj::V(v.clone()))?;
                let tgt: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(Arc::new(SelfEnrichment::new(base.clone(), Vec::new())), Vec::new()));
                let lf = laxitor_of_functor(&r, src.clone(), tgt, std::slice::from_ref(v))?;
                let dv = base.dual_obj(v);
                let mu = base.unname(&base.tensor_obj(&dv, v), &base.internal_hom(v, v), &lf.mu(&Obj::V(one.clone()), v)?)?;
                let Some(mu_inv) = base.inverse(&mu) else {
                    return Ok(None);
                };
                let coev = vhat.ident(&Obj::V(v.clone()))?.then(&mu_inv)?;
                let ev = base.ev(v);
                let left = base.tensor_mor(&base.identity(v), &coev).then(&base.tensor_mor(&ev, &base.identity(v)))?;
                let right = base.tensor_mor(&coev, &base.identity(&dv)).then(&base.tensor_mor(&base.identity(&dv), &ev))?;
                Ok(Some((left, base.identity(v), right, base.identity(&dv))))
            })
            .collect()
    };
    let mut zl = Check::new("rigidity.zigzag_left", "(1_v coev_v);(ev_v 1_v) = 1_v");
    let mut zr = Check::new("rigidity.zigzag_right", "(coev_v 1_{v*});(1_{v*} ev_v) = 1_{v*}");
    for (v, res) in items.iter().zip(results) {
        match res? {
            None => {
                let w = || Witness::tuple([v.to_string()]).note("μ_{1,v} is not invertible");
                zl.expect(false, w);
                zr.expect(false, w);
            }
            Some((l, il, r, ir)) => {
                zl.compare(&base, || vec![v.to_string()], &l, &il);
                zr.compare(&base, || vec![v.to_string()], &r, &ir);
            }
        }
    }
    let mut report = Report::default();
    report.push(zl);
    report.push(zr);
    Ok(report)
}

/// The functor `Φ: C̄̄ → C̄`, `Φ(f) = (1_x◁f);α;(ε_{x→y}◁1_v)` on `f ∈ C̄̄^V(x◀u → y◀v)`.
pub fn double_completion_map(t: &dyn Tensoring, xu: &Obj, yv: &Obj, f: &GradedMorphism) -> Result<GradedMorphism> {
    let ((x, u), (y, v)) = (xu.expect_weighted()?, yv.expect_weighted()?);
    let c = t.cat();
    let base = c.base();
    let h = c.hom(x, y)?;
    let hv = base.tensor_obj(&h, v);
    let g = base.unname(u, &hv, f)?;
    let (x_u, x_hv, x_h) = (t.act(x, u)?, t.act(x, &hv)?, t.act(x, &h)?);
    let x_h_v = t.act(&x_h, v)?;
    let y_v = t.act(y, v)?;
    let eps = t.adjunct_inverse(x, &h, y, &base.identity(&h))?;
    let s1 = t.act_right(x, &g)?;
    let s2 = t.alpha(x, &h, v)?;
    let s3 = t.act_left(&x_h, y, &eps, v)?;
    let acc = c.compose(&x_u, &x_hv, &x_h_v, &s1, &s2)?;
    c.compose(&x_u, &x_h_v, &y_v, &acc, &s3)
}

/// Materializes `C̄̄` over `inner` then `outer` weights and checks that `Φ` is a
/// fully faithful, identity-preserving, composition-preserving functor onto `C̄`,
/// essentially surjective because `z ≅ z◁1` through `ρ`. Composition is checked
/// on every `sample`-th triple.
pub fn double_completion_check(
    c: Arc<dyn VCat>,
    inner: &[GradedObject],
    outer: &[GradedObject],
    sample: usize,
) -> Result<Report> {
    let cbar = Arc::new(Completion::over(c, inner));
    let t = completion_tensoring(cbar.clone(), inner);
    let cbb = Completion::over(cbar.clone(), outer);
    let base = cbar.base().clone();
    let win = cbb.window().to_vec();
    let one = GradedObject::unit();
    let pairs: Vec<(Obj, Obj)> = win.iter().flat_map(|x| win.iter().map(move |y| (x.clone(), y.clone()))).collect();
    let mut report = Report::default();
    report.push(sweep("double.fully_faithful", "Φ: C̄̄^V(x◀u→y◀v) ≅ C̄^V(x◁u→y◁v)", &pairs, |(p, q)| {
        holds(|| vec![p.to_string(), q.to_string()], || {
            let src = cbb.hom(p, q)?;
            let (xu, yv) = (image(&t, p)?, image(&t, q)?);
            let tgt = cbar.hom(&xu, &yv)?;
            let map = MorphismMap::new((&one, &src), element_basis(&base, &src), (&one, &tgt), |f| {
                double_completion_map(&t, p, q, f)
            })?;
            Ok(map.is_bijective())
        })
    }));
    report.push(sweep("double.identity", "Φ(1_{x◀u}) = 1_{x◁u}", &win, |p| {
        instance(&base, || vec![p.to_string()], || {
            Ok((double_completion_map(&t, p, p, &cbb.ident(p)?)?, cbar.ident(&image(&t, p)?)?))
        })
    }));
    let triples: Vec<(Obj, Obj, Obj)> = pairs
        .iter()
        .flat_map(|(x, y)| win.iter().map(move |z| (x.clone(), y.clone(), z.clone())))
        .step_by(sample.max(1))
        .collect();
    report.push(sweep("double.composition", "Φ(f;g) = Φ(f);Φ(g)", &triples, |(p, q, r)| {
        instance(&base, || vec![p.to_string(), q.to_string(), r.to_string()], || {
            let f = generic_morphism(&base, &one, &cbb.hom(p, q)?);
            let g = generic_morphism(&base, &one, &cbb.hom(q, r)?);
            let lhs = double_completion_map(&t, p, r, &cbb.compose(p, q, r, &f, &g)?)?;
            let (ip, iq, ir) = (image(&t, p)?, image(&t, q)?, image(&t, r)?);
            let rhs = cbar.compose(&ip, &iq, &ir, &double_completion_map(&t, p, q, &f)?, &double_completion_map(&t, q, r, &g)?)?;
            Ok((lhs, rhs))
        })
    }));
    let inner_win = cbar.window().to_vec();
    report.push(sweep("double.essentially_surjective", "z ≅ Φ(z◀1) via ρ_z", &inner_win, |z| {
        holds(|| vec![z.to_string()], || {
            let z1 = t.act(z, &one)?;
            Ok(cbar.inverse(&z1, z, &t.rho(z)?)?.is_some())
        })
    }));
    Ok(report)
}

fn image(t: &dyn Tensoring, p: &Obj) -> Result<Obj> {
    let (x, u) = p.expect_weighted()?;
    t.act(x, u)
}
