use std::sync::Arc;

use crate::base::GradedMorphism;
use crate::error::Result;
use crate::linalg::element_basis;
use crate::report::{mismatch, sweep, Report};
use crate::scalars::Cyclotomic;

use super::{compose_elements, labels, postcompose, Obj, SelfEnrichment, VCat, VFunctor};

/// The underlying category `C^V`: hom sets `V(1 → C(a→b))`, with the grade-0
/// positions of `C(a→b)` as basis. Morphisms are elements `1 → C(a→b)`.
#[derive(Clone)]
pub struct UnderlyingCategory {
    cat: Arc<dyn VCat>,
}

impl UnderlyingCategory {
    pub fn new(cat: Arc<dyn VCat>) -> Self {
        UnderlyingCategory { cat }
    }

    pub fn cat(&self) -> &Arc<dyn VCat> {
        &self.cat
    }

    pub fn objects(&self) -> Vec<Obj> {
        self.cat.objects()
    }

    pub fn basis(&self, a: &Obj, b: &Obj) -> Result<Vec<GradedMorphism>> {
        Ok(element_basis(self.cat.base(), &self.cat.hom(a, b)?))
    }

    pub fn dim(&self, a: &Obj, b: &Obj) -> Result<usize> {
        Ok(self.cat.hom(a, b)?.grade_zero_positions().len())
    }

    /// Coordinates of `f` in the grade-0 basis.
    pub fn coords(&self, f: &GradedMorphism) -> Vec<Cyclotomic> {
        let m = self.cat.base().root_order();
        f.cod()
            .grade_zero_positions()
            .into_iter()
            .map(|p| f.entry(p, 0).cloned().unwrap_or_else(|| Cyclotomic::zero(m)))
            .collect()
    }

    pub fn identity(&self, a: &Obj) -> Result<GradedMorphism> {
        self.cat.ident(a)
    }

    /// `f` followed by `g`.
    pub fn compose(&self, a: &Obj, b: &Obj, c: &Obj, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
        compose_elements(&*self.cat, a, b, c, f, g)
    }

    /// The two-sided inverse of `f ∈ C^V(a→b)`, if it exists.
    pub fn inverse(&self, a: &Obj, b: &Obj, f: &GradedMorphism) -> Result<Option<GradedMorphism>> {
        self.cat.inverse(a, b, f)
    }

    /// Associativity and unit laws on basis elements of every window tuple.
    pub fn verify(&self) -> Report {
        let c = &*self.cat;
        let base = c.base().clone();
        let objs = c.objects();
        let mut triples = Vec::new();
        for a in &objs {
            for b in &objs {
                for x in &objs {
                    triples.push([a, b, x]);
                }
            }
        }
        let mut quads = Vec::new();
        for t in &triples {
            for d in &objs {
                quads.push([t[0], t[1], t[2], d]);
            }
        }
        let mut report = Report::default();
        report.push(sweep("underlying.associativity", "underlying composition is associative", &quads, |&[a, b, x, d]| {
            mismatch(&base, || labels(&[a, b, x, d]), || {
                for f in self.basis(a, b)? {
                    for g in self.basis(b, x)? {
                        let fg = self.compose(a, b, x, &f, &g)?;
                        for h in self.basis(x, d)? {
                            let gh = self.compose(b, x, d, &g, &h)?;
                            let lhs = self.compose(a, x, d, &fg, &h)?;
                            let rhs = self.compose(a, b, d, &f, &gh)?;
                            if lhs != rhs {
                                return Ok(Some((lhs, rhs)));
                            }
                        }
                    }
                }
                Ok(None)
            })
        }));
        let pairs: Vec<[&Obj; 2]> = triples.iter().filter(|t| t[2] == t[0]).map(|t| [t[0], t[1]]).collect();
        report.push(sweep("underlying.unit", "j_a is a two-sided unit", &pairs, |&[a, b]| {
            mismatch(&base, || labels(&[a, b]), || {
                let (ja, jb) = (c.ident(a)?, c.ident(b)?);
                for f in self.basis(a, b)? {
                    let l = self.compose(a, a, b, &ja, &f)?;
                    if l != f {
                        return Ok(Some((l, f)));
                    }
                    let r = self.compose(a, b, b, &f, &jb)?;
                    if r != f {
                        return Ok(Some((r, f)));
                    }
                }
                Ok(None)
            })
        }));
        report
    }
}

/// The underlying functor `F^V: f ↦ f;F_{a→b}`.
#[derive(Clone)]
pub struct UnderlyingFunctor {
    functor: VFunctor,
}

pub fn underlying_functor(f: &VFunctor) -> UnderlyingFunctor {
    UnderlyingFunctor { functor: f.clone() }
}

impl UnderlyingFunctor {
    pub fn obj(&self, a: &Obj) -> Result<Obj> {
        self.functor.obj(a)
    }

    pub fn apply(&self, a: &Obj, b: &Obj, f: &GradedMorphism) -> Result<GradedMorphism> {
        f.then(&self.functor.mor(a, b)?)
    }
}

/// The V-representable functor `R^a = C(a→−): C → V̂`, with components the mates of composition.
pub fn representable_vfunctor(c: Arc<dyn VCat>, a: &Obj) -> Result<VFunctor> {
    let base = c.base().clone();
    let mut window = Vec::new();
    for b in c.objects() {
        let h = c.hom(a, &b)?;
        if !window.contains(&h) {
            window.push(h);
        }
    }
    let target: Arc<dyn VCat> = Arc::new(SelfEnrichment::new(base.clone(), window));
    let (c1, c2) = (c.clone(), c.clone());
    let (a1, a2) = (a.clone(), a.clone());
    Ok(VFunctor::new(
        format!("R^{a}"),
        c,
        target,
        move |b| Ok(Obj::V(c1.hom(&a1, b)?)),
        move |b, d| base.mate_forward_w(&c2.hom(&a2, b)?, &c2.hom(b, d)?, &c2.comp(&a2, b, d)?),
    ))
}

/// The ordinary representable functor `R_a = C(a→−): C^V → V`, sending `f` to postcomposition.
#[derive(Clone)]
pub struct RepresentableUnderlying {
    cat: Arc<dyn VCat>,
    a: Obj,
}

pub fn representable_underlying(c: Arc<dyn VCat>, a: &Obj) -> RepresentableUnderlying {
    RepresentableUnderlying { cat: c, a: a.clone() }
}

impl RepresentableUnderlying {
    pub fn apply(&self, b: &Obj, d: &Obj, f: &GradedMorphism) -> Result<GradedMorphism> {
        postcompose(&*self.cat, &self.a, b, d, f)
    }
}

/// Checks that the underlying functor of `R^a` is `R_a`, matrix by matrix on basis morphisms.
pub fn representable_agreement(c: Arc<dyn VCat>, a: &Obj) -> Result<Report> {
    let base = c.base().clone();
    let rv = representable_vfunctor(c.clone(), a)?;
    let ru = representable_underlying(c.clone(), a);
    let und = underlying_functor(&rv);
    let objs = c.objects();
    let pairs: Vec<[&Obj; 2]> = objs.iter().flat_map(|b| objs.iter().map(move |d| [b, d])).collect();
    let mut report = Report::default();
    report.push(sweep("representable.underlying", "underlying functor of R^a is R_a", &pairs, |&[b, d]| {
        mismatch(&base, || labels(&[a, b, d]), || {
            let uc = UnderlyingCategory::new(c.clone());
            for f in uc.basis(b, d)? {
                let via_v = base.unname(&c.hom(a, b)?, &c.hom(a, d)?, &und.apply(b, d, &f)?)?;
                let direct = ru.apply(b, d, &f)?;
                if via_v != direct {
                    return Ok(Some((via_v, direct)));
                }
            }
            Ok(None)
        })
    }));
    Ok(report)
}
