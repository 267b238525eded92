//! V-categories, V-functors and V-natural transformations, with verifiers.
//!
//! A V-category is anything implementing [`VCat`]: finite materialized tables
//! ([`VCategory`]) and lazily computed ones (the self-enrichment, completions)
//! share the same verifiers. Composition is written left to right throughout.

mod functor;
mod object;
mod self_enriched;
mod underlying;
mod vcategory;
mod verify;

use std::sync::Arc;

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::linalg::{element_basis, MorphismMap};
use crate::Result;

pub use functor::{VFunctor, VNat};
pub use object::{obj_from_json, obj_to_json, Obj};
pub use self_enriched::SelfEnrichment;
pub use underlying::{
    representable_agreement, representable_underlying, representable_vfunctor, underlying_functor, UnderlyingCategory,
    UnderlyingFunctor,
};
pub use vcategory::VCategory;
pub use verify::{verify_vcategory, verify_vcategory_filtered, verify_vfunctor, verify_vfunctor_filtered, verify_vnat};

/// A V-category: hom objects in V with composition `C(a→b)⊗C(b→c) → C(a→c)`
/// and identities `1 → C(a→a)`.
///
/// `objects` is the finite window that verifiers sweep; lazy implementations
/// may answer queries about objects outside it.
pub trait VCat: Send + Sync {
    fn base(&self) -> &Arc<BaseCategory>;
    fn objects(&self) -> Vec<Obj>;
    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject>;
    fn comp(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<GradedMorphism>;
    fn ident(&self, a: &Obj) -> Result<GradedMorphism>;

    /// Composite `f;g` of underlying morphisms `f: 1 → C(a→b)` and `g: 1 → C(b→c)`.
    fn compose(&self, a: &Obj, b: &Obj, c: &Obj, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
        self.base().tensor_mor(f, g).then(&self.comp(a, b, c)?)
    }

    /// The two-sided inverse of `f ∈ C^V(a→b)`, if it exists.
    fn inverse(&self, a: &Obj, b: &Obj, f: &GradedMorphism) -> Result<Option<GradedMorphism>> {
        let hba = self.hom(b, a)?;
        let haa = self.hom(a, a)?;
        let unit = GradedObject::unit();
        let map = MorphismMap::new((&unit, &hba), element_basis(self.base(), &hba), (&unit, &haa), |g| {
            self.compose(a, b, a, f, g)
        })?;
        let Some(g) = map.preimage(&self.ident(a)?)? else {
            return Ok(None);
        };
        Ok((self.compose(b, a, b, &g, f)? == self.ident(b)?).then_some(g))
    }
}

/// Composite `f;g` of underlying morphisms `f: 1 → C(a→b)` and `g: 1 → C(b→c)`.
pub fn compose_elements(c: &dyn VCat, a: &Obj, b: &Obj, d: &Obj, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
    c.compose(a, b, d, f, g)
}

/// Precomposition with a fixed element: `x ↦ (f⊗x);comp` as a morphism `C(b→d) → C(a→d)`.
pub fn precompose(c: &dyn VCat, a: &Obj, b: &Obj, d: &Obj, f: &GradedMorphism) -> Result<GradedMorphism> {
    let base = c.base();
    base.tensor_mor(f, &base.identity(&c.hom(b, d)?)).then(&c.comp(a, b, d)?)
}

/// Postcomposition with a fixed element: `x ↦ (x⊗g);comp` as a morphism `C(a→b) → C(a→d)`.
pub fn postcompose(c: &dyn VCat, a: &Obj, b: &Obj, d: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
    let base = c.base();
    base.tensor_mor(&base.identity(&c.hom(a, b)?), g).then(&c.comp(a, b, d)?)
}

pub(crate) fn labels(objs: &[&Obj]) -> Vec<String> {
    objs.iter().map(|o| o.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{svec, triv, vhat, z4};
    use crate::report::Status;

    #[test]
    fn fixtures_are_vcategories() {
        assert!(verify_vcategory(&triv()).passed());
        let v = vhat(svec(), 3);
        assert_eq!(v.window().len(), 10);
        let r = verify_vcategory(&v);
        assert!(r.passed(), "{:?}", r.failures());
        assert!(verify_vcategory(&vhat(z4(), 2)).passed());
    }

    #[test]
    fn negated_composition_block_is_caught() {
        let v = VCategory::materialize(&vhat(svec(), 2)).unwrap();
        let pi = Obj::V(GradedObject::simple(1));
        let one = Obj::V(GradedObject::unit());
        let f = v.comp(&pi, &one, &pi).unwrap();
        let bad = v.with_comp(&pi, &one, &pi, f.neg()).unwrap();
        let r = verify_vcategory(&bad);
        assert_eq!(r.verdict(), Status::Fail);
        let w = r.first_failure().unwrap().witness.as_ref().unwrap();
        assert!(w.tuple.contains(&"[1]".to_string()));
    }

    #[test]
    fn underlying_of_vhat_counts_even_maps() {
        let v: Arc<dyn VCat> = Arc::new(vhat(svec(), 2));
        let u = UnderlyingCategory::new(v.clone());
        let one = Obj::V(GradedObject::unit());
        let pi = Obj::V(GradedObject::simple(1));
        assert_eq!(u.dim(&one, &pi).unwrap(), 0);
        assert_eq!(u.dim(&pi, &pi).unwrap(), 1);
        for a in v.objects() {
            for b in v.objects() {
                let (x, y) = (a.as_v().unwrap(), b.as_v().unwrap());
                assert_eq!(u.dim(&a, &b).unwrap(), crate::linalg::hom_dim(x, y));
            }
        }
        assert!(u.verify().passed());
        let t = UnderlyingCategory::new(Arc::new(triv()));
        let star = Obj::named("*");
        assert_eq!(t.dim(&star, &star).unwrap(), 1);
    }

    #[test]
    fn representables_agree_with_underlying() {
        let v: Arc<dyn VCat> = Arc::new(vhat(svec(), 2));
        for a in v.objects() {
            let r = representable_vfunctor(v.clone(), &a).unwrap();
            assert!(verify_vfunctor(&r).passed());
            assert!(representable_agreement(v.clone(), &a).unwrap().passed());
        }
        let t: Arc<dyn VCat> = Arc::new(triv());
        let r = representable_vfunctor(t.clone(), &Obj::named("*")).unwrap();
        let star = Obj::named("*");
        assert_eq!(r.obj(&star).unwrap(), Obj::V(GradedObject::unit()));
        assert_eq!(r.mor(&star, &star).unwrap(), t.base().identity(&GradedObject::unit()));
    }

    #[test]
    fn identity_functor_and_transformation() {
        let v: Arc<dyn VCat> = Arc::new(vhat(svec(), 2));
        let id = VFunctor::identity(v.clone());
        assert!(verify_vfunctor(&id).passed());
        let s = VNat::identity(id.clone());
        assert!(verify_vnat(&s).passed());
        let pi = Obj::V(GradedObject::simple(1));
        let bad = s.with_component(&pi, s.component(&pi).unwrap().scale(&v.base().scalar(2))).unwrap();
        assert_eq!(verify_vnat(&bad).verdict(), Status::Fail);
        let two = Obj::V(GradedObject::from_grades(vec![0, 1]));
        let f = id.mor(&two, &two).unwrap();
        let badf = id.with_component(&two, &two, f.with_entry(0, 0, None).unwrap()).unwrap();
        assert_eq!(verify_vfunctor(&badf).verdict(), Status::Fail);
    }
}
