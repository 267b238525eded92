use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::enriched::{Obj, VCat, VCategory, VFunctor};
use crate::error::{Error, Result};

/// Default bound on the total dimension of weights added by [`close_window`].
pub const DEFAULT_DIM_CAP: usize = 16;

/// The completion `C̄`: objects `a◀u`, hom objects `u*⊗C(a→b)⊗w`, composition
/// `(1 1 ev_v 1 1);(1 comp_C 1)` and identities `coev_u;(1 j_a 1)`.
///
/// Every weighted object is accepted; the window only bounds sweeps.
/// Compositions are memoized.
pub struct Completion {
    cat: Arc<dyn VCat>,
    window: Vec<Obj>,
    memo: RwLock<HashMap<(Obj, Obj, Obj), GradedMorphism>>,
}

impl Completion {
    pub fn new(cat: Arc<dyn VCat>, window: Vec<Obj>) -> Self {
        Completion { cat, window, memo: RwLock::new(HashMap::new()) }
    }

    /// The window `{a◀u}` over all objects of `C` and the given weights.
    pub fn over(cat: Arc<dyn VCat>, weights: &[GradedObject]) -> Self {
        let window = cat
            .objects()
            .into_iter()
            .flat_map(|a| weights.iter().map(move |u| Obj::weighted(a.clone(), u.clone())))
            .collect();
        Completion::new(cat, window)
    }

    pub fn cat(&self) -> &Arc<dyn VCat> {
        &self.cat
    }

    pub fn window(&self) -> &[Obj] {
        &self.window
    }

    pub fn with_window(&self, window: Vec<Obj>) -> Self {
        Completion::new(self.cat.clone(), window)
    }

    fn split<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a GradedObject)> {
        x.expect_weighted()
    }
}

impl VCat for Completion {
    fn base(&self) -> &Arc<BaseCategory> {
        self.cat.base()
    }

    fn objects(&self) -> Vec<Obj> {
        self.window.clone()
    }

    fn hom(&self, x: &Obj, y: &Obj) -> Result<GradedObject> {
        let ((a, u), (b, w)) = (self.split(x)?, self.split(y)?);
        let b_ = self.base();
        Ok(b_.tensor_objs(&[&b_.dual_obj(u), &self.cat.hom(a, b)?, w]))
    }

    fn comp(&self, x: &Obj, y: &Obj, z: &Obj) -> Result<GradedMorphism> {
        let key = (x.clone(), y.clone(), z.clone());
        if let Some(f) = self.memo.read().get(&key) {
            return Ok(f.clone());
        }
        let ((a, u), (b, v), (c, w)) = (self.split(x)?, self.split(y)?, self.split(z)?);
        let base = self.base();
        let (du, dw) = (base.identity(&base.dual_obj(u)), base.identity(w));
        let contract =
            base.tensor_mors(&[&du, &base.identity(&self.cat.hom(a, b)?), &base.ev(v), &base.identity(&self.cat.hom(b, c)?), &dw]);
        let f = contract.then(&base.tensor_mors(&[&du, &self.cat.comp(a, b, c)?, &dw]))?;
        self.memo.write().insert(key, f.clone());
        Ok(f)
    }

    fn ident(&self, x: &Obj) -> Result<GradedMorphism> {
        let (a, u) = self.split(x)?;
        let base = self.base();
        let du = base.identity(&base.dual_obj(u));
        base.coev(u).then(&base.tensor_mors(&[&du, &self.cat.ident(a)?, &base.identity(u)]))
    }
}

/// Materializes `C̄` on a finite window.
pub fn complete(c: Arc<dyn VCat>, window: &[Obj]) -> Result<VCategory> {
    for x in window {
        let (a, _) = x.expect_weighted()?;
        c.hom(a, a)?;
    }
    VCategory::materialize(&Completion::new(c, window.to_vec()))
}

/// Closes a window under `a◀u ↦ a◀(u⊗v)` for the given weights, skipping
/// weights whose total dimension would exceed `cap`. Order: the input first,
/// then additions in discovery order.
pub fn close_window(window: &[Obj], weights: &[GradedObject], base: &BaseCategory, cap: usize) -> Result<Vec<Obj>> {
    let mut out: Vec<Obj> = Vec::new();
    let mut seen = HashSet::new();
    for x in window {
        x.expect_weighted()?;
        if seen.insert(x.clone()) {
            out.push(x.clone());
        }
    }
    let mut k = 0;
    while k < out.len() {
        let (a, u) = {
            let (a, u) = out[k].expect_weighted()?;
            (a.clone(), u.clone())
        };
        for v in weights {
            let uv = base.tensor_obj(&u, v);
            if uv.dim() > cap {
                continue;
            }
            let y = Obj::weighted(a.clone(), uv);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        k += 1;
    }
    Ok(out)
}

/// The inclusion `I: C → C̄`, `a ↦ a◀1`, with identity components.
pub fn inclusion_functor(cbar: Arc<Completion>) -> VFunctor {
    let c = cbar.cat().clone();
    let c2 = c.clone();
    VFunctor::new(
        "I",
        c,
        cbar,
        |a| Ok(Obj::weighted(a.clone(), GradedObject::unit())),
        move |a, b| Ok(c2.base().identity(&c2.hom(a, b)?)),
    )
}

/// Fails with `CoverageGap` unless every `a◀1` for `a` in `C`'s window lies in the completion window.
pub fn require_units(cbar: &Completion) -> Result<()> {
    let have: HashSet<Obj> = cbar.window().iter().cloned().collect();
    let missing: Vec<String> = cbar
        .cat()
        .objects()
        .into_iter()
        .map(|a| Obj::weighted(a, GradedObject::unit()))
        .filter(|x| !have.contains(x))
        .map(|x| x.to_string())
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::CoverageGap { missing })
    }
}
