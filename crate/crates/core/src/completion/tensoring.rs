use std::sync::Arc;

use crate::base::{GradedMorphism, GradedObject};
use crate::enriched::{Obj, VCat};
use crate::error::{Error, Result};
use crate::module::Tensoring;

use super::category::{Completion, DEFAULT_DIM_CAP};

/// The tensoring of `C̄`: `a◀u ◁ v = a◀(u⊗v)` with unit `(coev_u⊗1_v);(1_{u*}⊗j_a⊗1_{uv})`.
///
/// The oplaxitor and unitor are identities. Weights of total dimension above the
/// cap raise `CoverageGap`.
pub struct CompletionTensoring {
    cat: Arc<dyn VCat>,
    cbar: Arc<Completion>,
    weights: Vec<GradedObject>,
    cap: usize,
}

pub fn completion_tensoring(cbar: Arc<Completion>, weights: &[GradedObject]) -> CompletionTensoring {
    CompletionTensoring::with_cap(cbar, weights, DEFAULT_DIM_CAP)
}

impl CompletionTensoring {
    pub fn with_cap(cbar: Arc<Completion>, weights: &[GradedObject], cap: usize) -> Self {
        CompletionTensoring { cat: cbar.clone(), cbar, weights: weights.to_vec(), cap }
    }

    pub fn completion(&self) -> &Arc<Completion> {
        &self.cbar
    }

    fn split<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a GradedObject)> {
        x.expect_weighted()
    }

    fn hom_c(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        self.cbar.cat().hom(a, b)
    }
}

impl Tensoring for CompletionTensoring {
    fn cat(&self) -> &Arc<dyn VCat> {
        &self.cat
    }

    fn act(&self, x: &Obj, v: &GradedObject) -> Result<Obj> {
        let (a, u) = self.split(x)?;
        let uv = self.cbar.base().tensor_obj(u, v);
        if uv.dim() > self.cap {
            return Err(Error::gap(format!("({x}, {v}) exceeds dimension cap {}", self.cap)));
        }
        Ok(Obj::weighted(a.clone(), uv))
    }

    fn unit(&self, x: &Obj, v: &GradedObject) -> Result<GradedMorphism> {
        let (a, u) = self.split(x)?;
        let b = self.cbar.base();
        let uv = b.tensor_obj(u, v);
        let lift = b.tensor_mors(&[&b.identity(&b.dual_obj(u)), &self.cbar.cat().ident(a)?, &b.identity(&uv)]);
        b.tensor_mor(&b.coev(u), &b.identity(v)).then(&lift)
    }

    fn scope(&self) -> Vec<(Obj, GradedObject)> {
        let window = self.cbar.window();
        window.iter().flat_map(|x| self.weights.iter().map(move |v| (x.clone(), v.clone()))).collect()
    }

    fn adjunct(&self, x: &Obj, v: &GradedObject, y: &Obj, f: &GradedMorphism) -> Result<GradedMorphism> {
        let ((a, u), (b, w)) = (self.split(x)?, self.split(y)?);
        let base = self.cbar.base();
        let target = base.tensor_obj(&self.hom_c(a, b)?, w);
        let plain = base.unname(&base.tensor_obj(u, v), &target, f)?;
        base.mate_forward_w(u, v, &plain)
    }

    fn adjunct_inverse(&self, x: &Obj, v: &GradedObject, y: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        let ((a, u), (b, w)) = (self.split(x)?, self.split(y)?);
        let base = self.cbar.base();
        if g.dom() != v {
            return Err(Error::ShapeMismatch(format!("{} is not {v}", g.dom())));
        }
        let target = base.tensor_obj(&self.hom_c(a, b)?, w);
        base.name_of(&base.mate_backward_v(u, &target, g)?)
    }

    fn alpha(&self, x: &Obj, u: &GradedObject, v: &GradedObject) -> Result<GradedMorphism> {
        let y = self.act(x, &self.cbar.base().tensor_obj(u, v))?;
        self.cbar.ident(&y)
    }

    fn rho(&self, x: &Obj) -> Result<GradedMorphism> {
        self.cbar.ident(x)
    }

    fn act_left(&self, x: &Obj, y: &Obj, f: &GradedMorphism, v: &GradedObject) -> Result<GradedMorphism> {
        let ((a, u), (b, w)) = (self.split(x)?, self.split(y)?);
        self.act(x, v)?;
        self.act(y, v)?;
        let base = self.cbar.base();
        let plain = base.unname(u, &base.tensor_obj(&self.hom_c(a, b)?, w), f)?;
        base.name_of(&base.tensor_mor(&plain, &base.identity(v)))
    }

    fn act_right(&self, x: &Obj, g: &GradedMorphism) -> Result<GradedMorphism> {
        let (a, u) = self.split(x)?;
        self.act(x, g.dom())?;
        self.act(x, g.cod())?;
        let base = self.cbar.base();
        let ug = base.tensor_mor(&base.identity(u), g);
        base.name_of(&base.tensor_mor(&self.cbar.cat().ident(a)?, &ug))
    }
}
