//! V-monoidal categories: strict object tensor, tensor morphisms
//! `C(a→b)⊗C(c→d) → C(ac→bd)` satisfying braided interchange, monoidal
//! functors, the monoidal completion, closedness, the classifying functor into
//! the center of `C^V`, and the reverse construction `T⫽F`.

mod center;
mod closed;
mod functor;
mod quotient;
mod structure;
mod verify;

use crate::base::GradedMorphism;
use crate::enriched::{Obj, VCat};
use crate::error::{Error, Result};

pub use center::{
    classify_center, monoidal_equivalence_conditions, tensored_iff_strong_check, Classification, ProductTensoring,
};
pub use closed::{completion_internal_hom, frobenius_theta, ClosedStructure};
pub use functor::{monoidal_inclusion, verify_vmonoidal_functor, VMonoidalFunctor};
pub use quotient::{check_isomorphic, quotient_construction, underlying_monoidal, CenterData, ClosedData};
pub use structure::{monoidal_complete, self_enriched_monoidal, MonoidalCompletion, SelfEnrichedMonoidal, VMonoidalCategory};
pub use verify::{verify_vmonoidal, verify_vmonoidal_with, InterchangeBraid, VerifyOptions};

/// A left dual `a*` with `coev ∈ C^V(1 → a*a)` and `ev ∈ C^V(aa* → 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual {
    pub object: Obj,
    pub coev: GradedMorphism,
    pub ev: GradedMorphism,
}

/// A V-category with a strict object tensor and tensor morphisms on homs.
pub trait VMonoidal: VCat {
    fn unit_object(&self) -> Obj;
    fn tensor_objects(&self, a: &Obj, b: &Obj) -> Result<Obj>;
    /// `−⊗−: C(a→b)⊗C(c→d) → C(ac→bd)`.
    fn tensor_homs(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj) -> Result<GradedMorphism>;

    /// `f⊗g` for underlying morphisms `f ∈ C^V(a→b)` and `g ∈ C^V(c→d)`.
    fn tensor_elements(
        &self,
        a: &Obj,
        b: &Obj,
        c: &Obj,
        d: &Obj,
        f: &GradedMorphism,
        g: &GradedMorphism,
    ) -> Result<GradedMorphism> {
        self.base().tensor_mor(f, g).then(&self.tensor_homs(a, b, c, d)?)
    }

    fn dual(&self, a: &Obj) -> Result<Dual> {
        Err(Error::ClosednessDataMissing(format!("no dual available for {a}")))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base::GradedObject;
    use crate::fixtures::{svec, z4};
    use crate::report::{Report, Status};

    fn g(gs: &[u32]) -> GradedObject {
        GradedObject::from_grades(gs.to_vec())
    }

    #[test]
    fn self_enriched_is_vmonoidal() {
        let s = self_enriched_monoidal(svec(), &[g(&[1]), g(&[0, 1])]);
        assert_eq!(s.objects().len(), 4);
        let r = verify_vmonoidal(&s);
        assert!(r.passed(), "{:?}", r.failures());
        let z = self_enriched_monoidal(z4(), &[g(&[1]), g(&[2]), g(&[3])]);
        let r = verify_vmonoidal(&z);
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn swap_in_interchange_fails_on_odd_tuple() {
        let s = self_enriched_monoidal(svec(), &[g(&[1])]);
        let opts = VerifyOptions { braid: InterchangeBraid::Identity, sample: None };
        let r = verify_vmonoidal_with(&s, opts);
        assert_eq!(r.verdict(), Status::Fail);
        let c = r.check("vmonoidal.braided_interchange").unwrap();
        assert!(!c.passed());
    }

    #[test]
    fn trivial_structure_passes() {
        let t = VMonoidalCategory::trivial(svec(), "*");
        assert!(verify_vmonoidal(&t).passed());
        let back = VMonoidalCategory::from_json(&t.to_json()).unwrap();
        assert_eq!(back.to_json(), t.to_json());
    }

    #[test]
    fn completion_of_trivial_matches_self_enrichment() {
        let base = svec();
        let t: Arc<dyn VMonoidal> = Arc::new(VMonoidalCategory::trivial(base.clone(), "*"));
        let mc = monoidal_complete(t, &[GradedObject::unit(), g(&[1])]);
        assert_eq!(mc.objects().len(), 2);
        let r = verify_vmonoidal(&mc);
        assert!(r.passed(), "{:?}", r.failures());
        let s = self_enriched_monoidal(base, &[g(&[1])]);
        let star = Obj::named("*");
        let ws = [GradedObject::unit(), g(&[1])];
        for u in &ws {
            for v in &ws {
                for w in &ws {
                    for x in &ws {
                        let q = |o: &GradedObject| Obj::weighted(star.clone(), o.clone());
                        let lhs = mc.tensor_homs(&q(u), &q(v), &q(w), &q(x)).unwrap();
                        let v_ = |o: &GradedObject| Obj::V(o.clone());
                        let rhs = s.tensor_homs(&v_(u), &v_(v), &v_(w), &v_(x)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn completed_vhat_interchange_on_samples() {
        let base = z4();
        let s: Arc<dyn VMonoidal> = Arc::new(self_enriched_monoidal(base, &[g(&[1])]));
        let mc = monoidal_complete(s, &[GradedObject::unit(), g(&[1]), g(&[2])]);
        let opts = VerifyOptions { braid: InterchangeBraid::Braiding, sample: Some((30, 7)) };
        let r = verify_vmonoidal_with(&mc, opts);
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.check("vmonoidal.braided_interchange").unwrap().instances, 30);
    }

    fn svec_center() -> (Arc<SelfEnrichedMonoidal>, Arc<dyn crate::module::Tensoring>, Vec<GradedObject>) {
        let weights = vec![GradedObject::unit(), g(&[1])];
        let s = Arc::new(self_enriched_monoidal(svec(), &[g(&[1])]));
        let tc: Arc<dyn crate::module::Tensoring> =
            Arc::new(crate::module::SelfTensoring::new(s.vhat().clone(), weights.clone()));
        (s, tc, weights)
    }

    #[test]
    fn classify_self_enriched_svec() {
        let (s, tc, weights) = svec_center();
        let (cls, r) = classify_center(s.clone(), tc, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(cls.strong);
        let pi = Obj::V(g(&[1]));
        let e = cls.e(&pi, &g(&[1])).unwrap();
        let pp = s.tensor_objects(&pi, &pi).unwrap();
        assert_eq!(e, &s.ident(&pp).unwrap().neg());
    }

    #[test]
    fn classify_self_enriched_z4() {
        let weights = vec![GradedObject::unit(), g(&[1]), g(&[2])];
        let s = Arc::new(self_enriched_monoidal(z4(), &[g(&[1]), g(&[3])]));
        let tc: Arc<dyn crate::module::Tensoring> =
            Arc::new(crate::module::SelfTensoring::new(s.vhat().clone(), weights.clone()));
        let (cls, r) = classify_center(s.clone(), tc, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(cls.strong);
        for c in &r.checks {
            assert!(c.instances > 0, "{}", c.law);
        }
    }

    #[test]
    fn tensored_iff_strong_on_self_enrichments() {
        let (s, tc, weights) = svec_center();
        let r = tensored_iff_strong_check(s, tc, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let weights = vec![GradedObject::unit(), g(&[1]), g(&[3])];
        let z = Arc::new(self_enriched_monoidal(z4(), &[g(&[2])]));
        let tc: Arc<dyn crate::module::Tensoring> =
            Arc::new(crate::module::SelfTensoring::new(z.vhat().clone(), weights.clone()));
        let r = tensored_iff_strong_check(z, tc, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn monoidal_functors() {
        let (s, _, weights) = svec_center();
        let sm: Arc<dyn VMonoidal> = s.clone();
        let id = VMonoidalFunctor::identity(sm.clone());
        assert!(verify_vmonoidal_functor(&id).passed());
        let mc = Arc::new(monoidal_complete(sm, &weights));
        let i = monoidal_inclusion(mc);
        let r = verify_vmonoidal_functor(&i);
        assert!(r.passed(), "{:?}", r.failures());
        let pi = Obj::V(g(&[1]));
        let bad = i.with_nu(&pi, &pi, i.nu(&pi, &pi).unwrap().neg()).unwrap();
        let r = verify_vmonoidal_functor(&bad);
        assert_eq!(r.verdict(), Status::Fail);
        let w = r.first_failure().unwrap().witness.as_ref().unwrap();
        assert!(w.tuple.contains(&"[1]".to_string()), "{w:?}");
    }

    #[test]
    fn equivalence_conditions_hold_for_self_enrichment_and_completed_trivial() {
        let (s, tc, weights) = svec_center();
        let r = monoidal_equivalence_conditions(s, tc, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let t: Arc<dyn VMonoidal> = Arc::new(VMonoidalCategory::trivial(svec(), "*"));
        let mc = Arc::new(monoidal_complete(t, &weights));
        let tc: Arc<dyn crate::module::Tensoring> =
            Arc::new(crate::completion::completion_tensoring(mc.completion().clone(), &weights));
        let (cls, r) = classify_center(mc.clone(), tc.clone(), &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(cls.strong);
        let r = monoidal_equivalence_conditions(mc, tc, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn completed_window_is_closed() {
        let inner: Arc<dyn VMonoidal> = Arc::new(self_enriched_monoidal(svec(), &[g(&[1]), g(&[0, 1])]));
        let mut window = Vec::new();
        for a in [GradedObject::unit(), g(&[1]), g(&[0, 1])] {
            for u in [GradedObject::unit(), g(&[1])] {
                window.push(Obj::weighted(Obj::V(a.clone()), u));
            }
        }
        let cbar = Arc::new(crate::completion::Completion::new(inner.clone(), window.clone()));
        let mc = Arc::new(MonoidalCompletion::new(cbar, inner));
        for x in &window {
            let z = &window[3];
            let (hom, _, r) = completion_internal_hom(mc.clone(), x, z).unwrap();
            assert!(r.passed(), "{x}: {:?}", r.failures());
            let ((a, u), (c, w)) = (x.as_weighted().unwrap(), z.as_weighted().unwrap());
            let base = mc.base();
            let expect = Obj::weighted(
                Obj::V(base.internal_hom(a.as_v().unwrap(), c.as_v().unwrap())),
                base.internal_hom(u, w),
            );
            assert_eq!(hom, expect);
        }
    }

    fn round_trip(base: Arc<crate::base::BaseCategory>) -> Report {
        let simples: Vec<GradedObject> = base.group().elements().map(GradedObject::simple).collect();
        let s = Arc::new(self_enriched_monoidal(base.clone(), &simples));
        assert_eq!(s.objects().len(), simples.len());
        let tc: Arc<dyn crate::module::Tensoring> =
            Arc::new(crate::module::SelfTensoring::new(s.vhat().clone(), simples.clone()));
        let (cls, r) = classify_center(s.clone(), tc, &simples).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let plain = Arc::new(crate::base::BaseCategory::new(vec![1], base.root_order(), &[]).unwrap());
        let t = underlying_monoidal(&*s, plain).unwrap();
        let fdata = CenterData::from_classification(&*s, &cls).unwrap();
        let closed = ClosedData::from_duals(&*s).unwrap();
        let (q, r) = quotient_construction(&t, base.clone(), &fdata, &closed).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let orig = VMonoidalCategory::materialize(&*s).unwrap();
        let iso = |a: &Obj, b: &Obj| Ok(base.identity(&orig.hom(a, b)?));
        check_isomorphic(&q, &orig, &iso)
    }

    #[test]
    fn quotient_round_trips_self_enrichment() {
        for base in [svec(), z4()] {
            let r = round_trip(base);
            assert!(r.passed(), "{:?} {:?}", r.failures(), r.first_failure());
        }
    }

    #[test]
    fn quotient_by_unit_functor_is_the_category_itself() {
        let s = self_enriched_monoidal(svec(), &[g(&[1])]);
        let plain = Arc::new(crate::base::BaseCategory::new(vec![1], 2, &[]).unwrap());
        let t = underlying_monoidal(&s, plain.clone()).unwrap();
        let closed = ClosedData::from_duals(&s).unwrap();
        let fdata = CenterData::unit_functor(&t).unwrap();
        let (q, r) = quotient_construction(&t, plain.clone(), &fdata, &closed).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let pi = Obj::V(g(&[1]));
        let one = Obj::V(GradedObject::unit());
        assert_eq!(q.hom(&one, &pi).unwrap().dim(), 0);
        assert_eq!(q.hom(&pi, &pi).unwrap(), GradedObject::unit());
        let psi = |a: &Obj, b: &Obj| -> crate::Result<crate::base::GradedMorphism> {
            let ab = &closed.hom[&(a.clone(), b.clone())];
            let eps = &closed.counit[&(a.clone(), b.clone())];
            let a_ab = t.tensor_objects(a, ab)?;
            let src = t.hom(&one, ab)?;
            let mut cols = Vec::new();
            for (k, z) in crate::linalg::element_basis(&plain, &src).iter().enumerate() {
                let lifted = t.tensor_elements(a, a, &one, ab, &t.ident(a)?, z)?;
                let y = t.compose(a, &a_ab, b, &lifted, eps)?;
                cols.extend(y.entries().map(|(r, _, v)| (r, k, v.clone())));
            }
            crate::base::GradedMorphism::from_entries(q.hom(a, b)?, t.hom(a, b)?, cols)
        };
        let r = check_isomorphic(&q, &t, &psi);
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn quotient_rejects_missing_closed_data() {
        let s = self_enriched_monoidal(svec(), &[g(&[1])]);
        let plain = Arc::new(crate::base::BaseCategory::new(vec![1], 2, &[]).unwrap());
        let t = underlying_monoidal(&s, plain.clone()).unwrap();
        let mut closed = ClosedData::from_duals(&s).unwrap();
        let fdata = CenterData::unit_functor(&t).unwrap();
        let key = closed.counit.keys().next().unwrap().clone();
        let eps = closed.counit[&key].clone();
        closed.counit.insert(key.clone(), eps.scale(&plain.scalar(0)));
        assert!(matches!(quotient_construction(&t, plain.clone(), &fdata, &closed), Err(crate::Error::AdjointMismatch(_))));
        closed.counit.remove(&key);
        assert!(matches!(quotient_construction(&t, plain, &fdata, &closed), Err(crate::Error::ClosednessDataMissing(_))));
    }
}
