use std::sync::Arc;

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::Result;

use super::{Obj, VCat};

/// The self-enrichment V̂ with `V̂(u→v) = u*⊗v`, composition `1⊗ev⊗1` and identities `coev`.
///
/// Defined on every object of V; the window only bounds verification sweeps.
pub struct SelfEnrichment {
    base: Arc<BaseCategory>,
    window: Vec<GradedObject>,
}

impl SelfEnrichment {
    pub fn new(base: Arc<BaseCategory>, window: Vec<GradedObject>) -> Self {
        SelfEnrichment { base, window }
    }

    /// Canonical (grade-sorted) objects of total dimension at most `max_dim`, including 0.
    pub fn dim_window(base: &BaseCategory, max_dim: usize) -> Vec<GradedObject> {
        let n = base.group().size() as u32;
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(n: u32, max_dim: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<GradedObject>) {
            out.push(GradedObject::from_grades(cur.clone()));
            if cur.len() == max_dim {
                return;
            }
            for g in start..n {
                cur.push(g);
                rec(n, max_dim, g, cur, out);
                cur.pop();
            }
        }
        rec(n, max_dim, 0, &mut cur, &mut out);
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        out
    }

    pub fn window(&self) -> &[GradedObject] {
        &self.window
    }
}

impl VCat for SelfEnrichment {
    fn base(&self) -> &Arc<BaseCategory> {
        &self.base
    }

    fn objects(&self) -> Vec<Obj> {
        self.window.iter().cloned().map(Obj::V).collect()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        Ok(self.base.internal_hom(a.expect_v()?, b.expect_v()?))
    }

    fn comp(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<GradedMorphism> {
        let (u, v, w) = (a.expect_v()?, b.expect_v()?, c.expect_v()?);
        let b = &self.base;
        Ok(b.tensor_mors(&[&b.identity(&b.dual_obj(u)), &b.ev(v), &b.identity(w)]))
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        Ok(self.base.coev(a.expect_v()?))
    }

    fn compose(&self, a: &Obj, b: &Obj, c: &Obj, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
        let (u, v, w) = (a.expect_v()?, b.expect_v()?, c.expect_v()?);
        let plain = self.base.unname(u, v, f)?.then(&self.base.unname(v, w, g)?)?;
        self.base.name_of(&plain)
    }

    fn inverse(&self, a: &Obj, b: &Obj, f: &GradedMorphism) -> Result<Option<GradedMorphism>> {
        let plain = self.base.unname(a.expect_v()?, b.expect_v()?, f)?;
        self.base.inverse(&plain).map(|g| self.base.name_of(&g)).transpose()
    }
}
