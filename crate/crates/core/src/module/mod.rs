//! Tensorings, the oplax module of a V-category and the reverse construction,
//! laxitors of V-functors and lifting of adjunctions.

mod laxitor;
mod oplax;
mod reverse;
mod tensoring;

pub use laxitor::*;
pub use oplax::{vcat_to_module, OplaxModule};
pub use reverse::{module_to_vcat, roundtrip_check, AdjointData};
pub use tensoring::{
    adjunction_map, check_representability, ensure_representable, Generic, SelfTensoring, SolverCache, Tensoring,
    TensoringData,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base::{BaseCategory, GradedMorphism, GradedObject};
    use crate::enriched::{verify_vfunctor, Obj, SelfEnrichment, VCat, VFunctor};
    use crate::error::Error;
    use crate::fixtures::{svec, triv, z4};
    use crate::linalg::generic_morphism;

    fn window(base: &Arc<BaseCategory>, max_dim: usize) -> Vec<GradedObject> {
        SelfEnrichment::dim_window(base, max_dim)
    }

    fn vhat_module(base: Arc<BaseCategory>, max_dim: usize) -> (Arc<SelfEnrichment>, OplaxModule) {
        let w = window(&base, max_dim);
        let v = Arc::new(SelfEnrichment::new(base, w.clone()));
        let t: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), w));
        (v, vcat_to_module(t).unwrap())
    }

    /// Even objects of sVec with `a◁Π := 0`: representable, but `α_{a,Π,Π}` is not invertible.
    fn even_part() -> (Arc<dyn VCat>, TensoringData) {
        let base = svec();
        let even = vec![GradedObject::zero(), GradedObject::unit(), GradedObject::from_grades(vec![0, 0])];
        let c: Arc<dyn VCat> = Arc::new(SelfEnrichment::new(base.clone(), even.clone()));
        let mut t = TensoringData::new(c.clone());
        let pi = GradedObject::simple(1);
        for a in even {
            let o = Obj::V(a.clone());
            t.insert(o.clone(), GradedObject::unit(), o.clone(), base.coev(&a)).unwrap();
            let zero = Obj::V(GradedObject::zero());
            let eta = GradedMorphism::zero(pi.clone(), c.hom(&o, &zero).unwrap());
            t.insert(o, pi.clone(), zero, eta).unwrap();
        }
        (c, t)
    }

    #[test]
    fn closed_forms_match_generic_formulas() {
        for base in [svec(), z4()] {
            let w = window(&base, 1);
            let weights: Vec<GradedObject> = window(&base, 2).into_iter().filter(|u| u.dim() <= 1 || u.dim() == 2 && u.grade(0) == 0).collect();
            let v = Arc::new(SelfEnrichment::new(base.clone(), w.clone()));
            let fast = SelfTensoring::new(v.clone(), weights.clone());
            let slow = Generic(SelfTensoring::new(v.clone(), weights.clone()));
            let one = GradedObject::unit();
            for a in v.objects() {
                assert_eq!(fast.rho(&a).unwrap(), slow.rho(&a).unwrap());
                for u in &w {
                    for x in &w {
                        assert_eq!(fast.alpha(&a, u, x).unwrap(), slow.alpha(&a, u, x).unwrap(), "α {a} {u} {x}");
                        let g = generic_morphism(&base, u, x);
                        assert_eq!(fast.act_right(&a, &g).unwrap(), slow.act_right(&a, &g).unwrap());
                    }
                    for b in v.objects() {
                        let f = generic_morphism(&base, &one, &v.hom(&a, &b).unwrap());
                        assert_eq!(fast.act_left(&a, &b, &f, u).unwrap(), slow.act_left(&a, &b, &f, u).unwrap());
                        let ab = fast.act(&a, u).unwrap();
                        let x = generic_morphism(&base, &one, &v.hom(&ab, &b).unwrap());
                        let y = fast.adjunct(&a, u, &b, &x).unwrap();
                        assert_eq!(y, slow.adjunct(&a, u, &b, &x).unwrap());
                        assert_eq!(slow.adjunct_inverse(&a, u, &b, &y).unwrap(), x);
                        assert_eq!(fast.adjunct_inverse(&a, u, &b, &y).unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn self_enrichment_module_is_strong() {
        for base in [svec(), z4()] {
            let w = window(&base, 2);
            let (_, m) = vhat_module(base.clone(), 2);
            let r = m.verify(&w);
            assert!(r.passed(), "{:?}", r.failures());
            let s = strong_module_check(&m, &window(&base, 1)).unwrap();
            assert!(s.passed(), "{:?}", s.failures());
        }
    }

    #[test]
    fn one_object_module_is_strongly_unital() {
        let c: Arc<dyn VCat> = Arc::new(triv());
        let t = TensoringData::trivial(c.clone()).unwrap();
        let json = t.to_json();
        let t = TensoringData::from_json(c, &json).unwrap();
        let m = vcat_to_module(Arc::new(t)).unwrap();
        let one = [GradedObject::unit()];
        assert!(m.verify(&one).passed());
        assert!(strong_module_check(&m, &one).unwrap().passed());
    }

    #[test]
    fn corrupted_unit_is_not_representable() {
        let c: Arc<dyn VCat> = Arc::new(triv());
        let star = Obj::named("*");
        let mut t = TensoringData::new(c.clone());
        let eta = GradedMorphism::zero(GradedObject::unit(), GradedObject::unit());
        t.insert(star.clone(), GradedObject::unit(), star, eta).unwrap();
        let err = vcat_to_module(Arc::new(t)).err().unwrap();
        assert!(matches!(err, Error::RepresentabilityFailure { ref a, .. } if a == "*"), "{err}");
    }

    #[test]
    fn even_part_is_oplax_but_not_strong() {
        let (c, t) = even_part();
        let m = vcat_to_module(Arc::new(t)).unwrap();
        let weights = [GradedObject::unit(), GradedObject::simple(1)];
        assert!(m.check_strongly_unital().passed());
        let r = strong_module_check(&m, &weights).unwrap();
        let w = r.first_failure().unwrap().witness.clone().unwrap();
        assert_eq!(w.tuple, vec!["[0]", "[1]", "[1]"]);

        let target = Arc::new(SelfEnrichment::new(c.base().clone(), Vec::new()));
        let tgt: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(target.clone(), weights.to_vec()));
        let incl = VFunctor::new("incl", c.clone(), target, |a| Ok(a.clone()), {
            let c = c.clone();
            move |a, b| Ok(c.base().identity(&c.hom(a, b)?))
        });
        let lf = laxitor_of_functor(&incl, m.tensoring().clone(), tgt, &weights).unwrap();
        assert!(lf.verify().passed(), "{:?}", lf.verify().failures());
        let r = lf.is_tensored();
        assert_eq!(r.first_failure().unwrap().witness.as_ref().unwrap().tuple, vec!["[0]", "[1]"]);
    }

    #[test]
    fn identity_functor_laxitor_is_identity() {
        let base = svec();
        let w = window(&base, 2);
        let (v, m) = vhat_module(base.clone(), 2);
        let t = m.tensoring().clone();
        let id = VFunctor::identity(v.clone());
        let lf = laxitor_of_functor(&id, t.clone(), t.clone(), &w).unwrap();
        assert!(lf.verify().passed());
        assert!(lf.is_tensored().passed());
        for a in v.objects() {
            for u in &w {
                let au = t.act(&a, u).unwrap();
                assert_eq!(lf.mu(&a, u).unwrap(), v.ident(&au).unwrap());
            }
        }
        let narrow = [GradedObject::unit(), GradedObject::simple(1)];
        let miss = TensoringData::trivial(v.clone()).unwrap();
        let err = laxitor_of_functor(&id, Arc::new(miss), t, &narrow).err().unwrap();
        assert!(matches!(err, Error::CoverageGap { .. }));
    }

    #[test]
    fn tensor_hom_adjunction_lifts() {
        for base in [svec(), z4()] {
            let w = window(&base, 1);
            let v = Arc::new(SelfEnrichment::new(base.clone(), window(&base, 2)));
            let t: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), w.clone()));
            for u in window(&base, 2) {
                let adj = Adjunction::tensor_hom(v.clone(), &u);
                assert!(verify_vfunctor(&adj.left).passed());
                assert!(verify_vfunctor(&adj.right).passed());
                let r = lift_agreement(&adj, t.clone(), t.clone(), &w).unwrap();
                assert!(r.passed(), "{u}: {:?}", r.failures());
            }
            let id = Adjunction::identity(v.clone());
            let tk = theta_kappa(&id).unwrap();
            assert!(tk.lifts());
            for (_, th) in &tk.theta {
                assert_eq!(th, &base.identity(th.dom()));
            }
        }
    }

    #[test]
    fn roundtrip_and_triangle_failure() {
        let c: Arc<dyn VCat> = Arc::new(triv());
        let m = vcat_to_module(Arc::new(TensoringData::trivial(c.clone()).unwrap())).unwrap();
        let adj = AdjointData::from_module(&m).unwrap();
        assert!(roundtrip_check(&m, &adj).unwrap().passed());
        let rebuilt = module_to_vcat(&m, &adj).unwrap();
        let star = Obj::named("*");
        assert_eq!(rebuilt.comp(&star, &star, &star).unwrap(), c.comp(&star, &star, &star).unwrap());
        let eps = adj.counit(&star, &star).unwrap().clone();
        let bad = adj.with_counit(&star, &star, GradedMorphism::zero(eps.dom().clone(), eps.cod().clone())).unwrap();
        assert!(matches!(module_to_vcat(&m, &bad), Err(Error::TriangleFailure(_))));

        let (_, m) = vhat_module(z4(), 2);
        let adj = AdjointData::from_module(&m).unwrap();
        let r = roundtrip_check(&m, &adj).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }
}
