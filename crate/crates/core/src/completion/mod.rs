//! The completion `C̄` of a V-category: weighted objects `a◀u`, its canonical
//! tensoring, the inclusion `I`, lifts along `I`, and the conditions under which
//! `I` is an equivalence.

mod category;
mod lift;
mod tensoring;

pub use category::{close_window, complete, inclusion_functor, require_units, Completion, DEFAULT_DIM_CAP};
pub use lift::{
    double_completion_check, double_completion_map, equivalence_conditions, lift_functor, rigidity_check,
    tau_transformation,
};
pub use tensoring::{completion_tensoring, CompletionTensoring};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base::{GradedMorphism, GradedObject};
    use crate::enriched::{verify_vcategory, verify_vfunctor, verify_vnat, Obj, SelfEnrichment, VCat, VFunctor};
    use crate::error::Error;
    use crate::fixtures::{svec, triv, z4};
    use crate::linalg::generic_morphism;
    use crate::module::{
        is_tensored_functor, strong_module_check, vcat_to_module, Generic, SelfTensoring, Tensoring, TensoringData,
    };

    fn pi() -> GradedObject {
        GradedObject::simple(1)
    }

    fn triv_bar() -> Arc<Completion> {
        Arc::new(Completion::over(Arc::new(triv()), &[GradedObject::unit(), pi()]))
    }

    fn vhat(base: &Arc<crate::base::BaseCategory>, d: usize) -> Arc<SelfEnrichment> {
        Arc::new(SelfEnrichment::new(base.clone(), SelfEnrichment::dim_window(base, d)))
    }

    #[test]
    fn completion_of_one_object_is_svec_skeleton() {
        let cbar = triv_bar();
        let (s1, sp) = (Obj::weighted(Obj::named("*"), GradedObject::unit()), Obj::weighted(Obj::named("*"), pi()));
        assert_eq!(cbar.hom(&s1, &sp).unwrap(), pi());
        assert_eq!(cbar.hom(&sp, &sp).unwrap(), GradedObject::unit());
        let m = complete(cbar.cat().clone(), cbar.window()).unwrap();
        assert!(verify_vcategory(&m).passed());
        let t = completion_tensoring(cbar.clone(), &[pi()]);
        assert_eq!(t.act(&sp, &pi()).unwrap(), s1);
    }

    #[test]
    fn hom_multiplicities_match_grading_count() {
        let base = svec();
        let c = vhat(&base, 2);
        let weights = [GradedObject::unit(), pi(), GradedObject::from_grades(vec![0, 1])];
        let cbar = Completion::over(c.clone(), &weights);
        let n = base.group().size() as u32;
        for x in cbar.window() {
            for y in cbar.window() {
                let ((a, u), (b, w)) = (x.as_weighted().unwrap(), y.as_weighted().unwrap());
                let hab = c.hom(a, b).unwrap();
                let mut count = vec![0usize; n as usize];
                for g in u.grades() {
                    for h in hab.grades() {
                        for k in w.grades() {
                            count[((n - g) % n + h + k) as usize % n as usize] += 1;
                        }
                    }
                }
                let hom = cbar.hom(x, y).unwrap();
                for g in 0..n {
                    assert_eq!(hom.multiplicity(g), count[g as usize]);
                }
            }
        }
    }

    #[test]
    fn completion_verifies_and_tensoring_is_strong() {
        for base in [svec(), z4()] {
            let c = vhat(&base, 1);
            let weights = SelfEnrichment::dim_window(&base, 1).into_iter().filter(|u| u.dim() == 1).collect::<Vec<_>>();
            let cbar = Arc::new(Completion::over(c, &weights));
            assert!(verify_vcategory(&*cbar).passed());
            let fast = completion_tensoring(cbar.clone(), &weights);
            let slow = Generic(completion_tensoring(cbar.clone(), &weights));
            let one = GradedObject::unit();
            for x in cbar.window() {
                assert_eq!(fast.rho(x).unwrap(), slow.rho(x).unwrap());
                for u in &weights {
                    for v in &weights {
                        assert_eq!(fast.alpha(x, u, v).unwrap(), slow.alpha(x, u, v).unwrap());
                        let g = generic_morphism(&base, u, v);
                        assert_eq!(fast.act_right(x, &g).unwrap(), slow.act_right(x, &g).unwrap());
                    }
                    for y in cbar.window() {
                        let f = generic_morphism(&base, &one, &cbar.hom(x, y).unwrap());
                        assert_eq!(fast.act_left(x, y, &f, u).unwrap(), slow.act_left(x, y, &f, u).unwrap());
                        let xu = fast.act(x, u).unwrap();
                        let e = generic_morphism(&base, &one, &cbar.hom(&xu, y).unwrap());
                        let g = fast.adjunct(x, u, y, &e).unwrap();
                        assert_eq!(g, slow.adjunct(x, u, y, &e).unwrap());
                        assert_eq!(fast.adjunct_inverse(x, u, y, &g).unwrap(), e);
                        assert_eq!(slow.adjunct_inverse(x, u, y, &g).unwrap(), e);
                    }
                }
            }
            let m = vcat_to_module(Arc::new(fast)).unwrap();
            assert!(m.verify(&weights).passed());
            assert!(strong_module_check(&m, &weights).unwrap().passed());
        }
    }

    #[test]
    fn inclusion_is_identity_on_homs() {
        let base = svec();
        let cbar = Arc::new(Completion::over(vhat(&base, 2), &[GradedObject::unit(), pi()]));
        require_units(&cbar).unwrap();
        let i = inclusion_functor(cbar.clone());
        assert!(verify_vfunctor(&i).passed());
        let narrow = Arc::new(cbar.with_window(vec![Obj::weighted(Obj::V(pi()), pi())]));
        assert!(matches!(require_units(&narrow), Err(Error::CoverageGap { .. })));
    }

    #[test]
    fn lift_of_identity_is_evaluation() {
        for base in [svec(), z4()] {
            let c = vhat(&base, 2);
            let weights = vec![GradedObject::unit(), GradedObject::simple(1), GradedObject::simple(base.group().size() as u32 - 1)];
            let cbar = Arc::new(Completion::over(c.clone(), &weights));
            let tgt: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(c.clone(), weights.clone()));
            let (lifted, sigma) = lift_functor(&VFunctor::identity(c.clone()), cbar.clone(), tgt.clone()).unwrap();
            let r = verify_vfunctor(&lifted);
            assert!(r.passed(), "{:?}", r.failures());
            for x in cbar.window() {
                let (a, u) = x.as_weighted().unwrap();
                assert_eq!(lifted.obj(x).unwrap(), Obj::V(base.tensor_obj(a.as_v().unwrap(), u)));
            }
            assert!(verify_vnat(&sigma).passed());
            let ct: Arc<dyn Tensoring> = Arc::new(completion_tensoring(cbar.clone(), &weights));
            assert!(is_tensored_functor(&lifted, ct, tgt, &weights).unwrap().passed());
        }
    }

    #[test]
    fn lift_of_unit_inclusion_identifies_completion_with_vhat() {
        let base = svec();
        let d = vhat(&base, 1);
        let t: Arc<dyn VCat> = Arc::new(triv());
        let b2 = base.clone();
        let f = VFunctor::new("unit", t, d.clone(), |_| Ok(Obj::V(GradedObject::unit())), move |_, _| {
            Ok(b2.identity(&GradedObject::unit()))
        });
        assert!(verify_vfunctor(&f).passed());
        let cbar = triv_bar();
        let tgt: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(d, vec![GradedObject::unit(), pi()]));
        let (lifted, sigma) = lift_functor(&f, cbar.clone(), tgt).unwrap();
        assert!(verify_vfunctor(&lifted).passed());
        assert!(verify_vnat(&sigma).passed());
        for x in cbar.window() {
            for y in cbar.window() {
                assert!(base.inverse(&lifted.mor(x, y).unwrap()).is_some());
            }
        }
    }

    #[test]
    fn tau_and_four_conditions() {
        for base in [svec(), z4()] {
            let c = vhat(&base, 2);
            let weights = SelfEnrichment::dim_window(&base, 1).into_iter().filter(|u| u.dim() == 1).collect::<Vec<_>>();
            let cbar = Arc::new(Completion::over(c.clone(), &weights));
            let tc: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(c, weights.clone()));
            let (_, r) = tau_transformation(cbar.clone(), tc.clone(), &weights).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
            let r = equivalence_conditions(cbar, tc, &weights).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
        }
        let t: Arc<dyn VCat> = Arc::new(triv());
        let tc: Arc<dyn Tensoring> = Arc::new(TensoringData::trivial(t).unwrap());
        let err = tau_transformation(triv_bar(), tc, &[GradedObject::unit(), pi()]).err().unwrap();
        assert!(matches!(err, Error::CoverageGap { .. }));
    }

    #[test]
    fn rigidity_and_double_completion() {
        for base in [svec(), z4()] {
            let r = rigidity_check(base.clone(), &SelfEnrichment::dim_window(&base, 2)).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
        }
        let ws = [GradedObject::unit(), pi()];
        let r = double_completion_check(Arc::new(triv()), &ws, &ws, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let r = double_completion_check(vhat(&svec(), 1), &ws, &ws, 7).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn corrupted_completion_identity_is_caught() {
        let m = complete(triv_bar().cat().clone(), triv_bar().window()).unwrap();
        let sp = Obj::weighted(Obj::named("*"), pi());
        let j = m.ident(&sp).unwrap();
        let bad = m.with_ident(&sp, j.neg()).unwrap();
        assert!(!verify_vcategory(&bad).passed());
        let _ = GradedMorphism::zero(GradedObject::unit(), GradedObject::unit());
    }
}
