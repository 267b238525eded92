use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::GradedMorphism;
use crate::error::{Error, Result};

use super::{Obj, VCat};

type ObjFn = Arc<dyn Fn(&Obj) -> Result<Obj> + Send + Sync>;
type MorFn = Arc<dyn Fn(&Obj, &Obj) -> Result<GradedMorphism> + Send + Sync>;
type CompFn = Arc<dyn Fn(&Obj) -> Result<GradedMorphism> + Send + Sync>;

/// A V-functor given by its object map and components `F_{a→b}: C(a→b) → D(Fa→Fb)`.
///
/// Components are computed on demand; [`VFunctor::with_component`] pins a
/// replacement, which is how corrupted copies are built.
#[derive(Clone)]
pub struct VFunctor {
    name: String,
    source: Arc<dyn VCat>,
    target: Arc<dyn VCat>,
    obj: ObjFn,
    mor: MorFn,
    pinned: BTreeMap<(Obj, Obj), GradedMorphism>,
}

impl VFunctor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<dyn VCat>,
        target: Arc<dyn VCat>,
        obj: impl Fn(&Obj) -> Result<Obj> + Send + Sync + 'static,
        mor: impl Fn(&Obj, &Obj) -> Result<GradedMorphism> + Send + Sync + 'static,
    ) -> Self {
        VFunctor {
            name: name.into(),
            source,
            target,
            obj: Arc::new(obj),
            mor: Arc::new(mor),
            pinned: BTreeMap::new(),
        }
    }

    pub fn identity(c: Arc<dyn VCat>) -> Self {
        let base = c.base().clone();
        let cc = c.clone();
        VFunctor::new("id", c.clone(), c, |a| Ok(a.clone()), move |a, b| Ok(base.identity(&cc.hom(a, b)?)))
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &VFunctor) -> VFunctor {
        let (f1, f2) = (self.clone(), g.clone());
        let (f3, f4) = (self.clone(), g.clone());
        VFunctor::new(
            format!("{};{}", self.name, g.name),
            self.source.clone(),
            g.target.clone(),
            move |a| f2.obj(&f1.obj(a)?),
            move |a, b| f3.mor(a, b)?.then(&f4.mor(&f3.obj(a)?, &f3.obj(b)?)?),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<dyn VCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<dyn VCat> {
        &self.target
    }

    pub fn obj(&self, a: &Obj) -> Result<Obj> {
        (self.obj)(a)
    }

    pub fn mor(&self, a: &Obj, b: &Obj) -> Result<GradedMorphism> {
        if let Some(f) = self.pinned.get(&(a.clone(), b.clone())) {
            return Ok(f.clone());
        }
        (self.mor)(a, b)
    }

    pub fn with_component(&self, a: &Obj, b: &Obj, f: GradedMorphism) -> Result<VFunctor> {
        let old = self.mor(a, b)?;
        if !old.same_shape(&f) {
            return Err(Error::ShapeMismatch(format!("component {a} -> {b} has a different shape")));
        }
        let mut out = self.clone();
        out.pinned.insert((a.clone(), b.clone()), f);
        Ok(out)
    }
}

/// A 1_V-graded V-natural transformation with components `σ_a: 1 → D(Fa→Ga)`.
#[derive(Clone)]
pub struct VNat {
    source: VFunctor,
    target: VFunctor,
    comp: CompFn,
    pinned: BTreeMap<Obj, GradedMorphism>,
}

impl VNat {
    pub fn new(
        source: VFunctor,
        target: VFunctor,
        comp: impl Fn(&Obj) -> Result<GradedMorphism> + Send + Sync + 'static,
    ) -> Self {
        VNat { source, target, comp: Arc::new(comp), pinned: BTreeMap::new() }
    }

    /// The identity transformation `F ⇒ F`, with components `j_{F(a)}`.
    pub fn identity(f: VFunctor) -> Self {
        let g = f.clone();
        VNat::new(f.clone(), f, move |a| g.target().ident(&g.obj(a)?))
    }

    pub fn source(&self) -> &VFunctor {
        &self.source
    }

    pub fn target(&self) -> &VFunctor {
        &self.target
    }

    pub fn component(&self, a: &Obj) -> Result<GradedMorphism> {
        if let Some(f) = self.pinned.get(a) {
            return Ok(f.clone());
        }
        (self.comp)(a)
    }

    pub fn with_component(&self, a: &Obj, f: GradedMorphism) -> Result<VNat> {
        if !self.component(a)?.same_shape(&f) {
            return Err(Error::ShapeMismatch(format!("component at {a} has a different shape")));
        }
        let mut out = self.clone();
        out.pinned.insert(a.clone(), f);
        Ok(out)
    }
}
