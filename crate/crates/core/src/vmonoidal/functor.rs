use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::{GradedMorphism, GradedObject};
use crate::completion::inclusion_functor;
use crate::enriched::{labels, postcompose, precompose, verify_vfunctor, Obj, VCat, VFunctor};
use crate::error::{Error, Result};
use crate::report::{holds, instance, sweep, Report};

use super::{MonoidalCompletion, VMonoidal};

type NuFn = Arc<dyn Fn(&Obj, &Obj) -> Result<GradedMorphism> + Send + Sync>;

/// A strongly unital V-monoidal functor: a V-functor with `F(1) = 1` and
/// tensorator components `ν_{a,b} ∈ D^V(F(ab) → F(a)F(b))`.
#[derive(Clone)]
pub struct VMonoidalFunctor {
    functor: VFunctor,
    source: Arc<dyn VMonoidal>,
    target: Arc<dyn VMonoidal>,
    nu: NuFn,
    pinned: BTreeMap<(Obj, Obj), GradedMorphism>,
}

impl VMonoidalFunctor {
    /// `functor` must run between `source` and `target` viewed as V-categories.
    pub fn new(
        functor: VFunctor,
        source: Arc<dyn VMonoidal>,
        target: Arc<dyn VMonoidal>,
        nu: impl Fn(&Obj, &Obj) -> Result<GradedMorphism> + Send + Sync + 'static,
    ) -> Self {
        VMonoidalFunctor { functor, source, target, nu: Arc::new(nu), pinned: BTreeMap::new() }
    }

    /// The identity with `ν = j`.
    pub fn identity(c: Arc<dyn VMonoidal>) -> Self {
        let cat: Arc<dyn VCat> = c.clone();
        let c2 = c.clone();
        VMonoidalFunctor::new(VFunctor::identity(cat), c.clone(), c, move |a, b| c2.ident(&c2.tensor_objects(a, b)?))
    }

    pub fn functor(&self) -> &VFunctor {
        &self.functor
    }

    pub fn source(&self) -> &Arc<dyn VMonoidal> {
        &self.source
    }

    pub fn target(&self) -> &Arc<dyn VMonoidal> {
        &self.target
    }

    pub fn nu(&self, a: &Obj, b: &Obj) -> Result<GradedMorphism> {
        if let Some(f) = self.pinned.get(&(a.clone(), b.clone())) {
            return Ok(f.clone());
        }
        (self.nu)(a, b)
    }

    /// A copy with one tensorator component replaced (same shape required).
    pub fn with_nu(&self, a: &Obj, b: &Obj, f: GradedMorphism) -> Result<Self> {
        if !self.nu(a, b)?.same_shape(&f) {
            return Err(Error::ShapeMismatch(format!("tensorator at ({a}, {b}) has a different shape")));
        }
        let mut out = self.clone();
        out.pinned.insert((a.clone(), b.clone()), f);
        Ok(out)
    }
}

/// The inclusion `I: C → C̄` with `ν^I_{a,b} = j_{ab◀1}`.
pub fn monoidal_inclusion(mc: Arc<MonoidalCompletion>) -> VMonoidalFunctor {
    let inner = mc.inner().clone();
    let f = inclusion_functor(mc.completion().clone());
    let m2 = mc.clone();
    let i2 = inner.clone();
    VMonoidalFunctor::new(f, inner, mc, move |a, b| {
        m2.ident(&Obj::weighted(i2.tensor_objects(a, b)?, GradedObject::unit()))
    })
}

/// The V-functor laws plus `F(1) = 1`, unitality and associativity of `ν`,
/// naturality of `ν` and invertibility of every `ν_{a,b}`.
pub fn verify_vmonoidal_functor(m: &VMonoidalFunctor) -> Report {
    let (c, d, f) = (&m.source, &m.target, &m.functor);
    let base = c.base().clone();
    let objs = c.objects();
    let mut report = verify_vfunctor(f);
    let one = c.unit_object();

    report.push(sweep("monoidal_functor.unit_object", "F(1) = 1", &[()], |_| {
        holds(|| vec![one.to_string()], || Ok(f.obj(&one)? == d.unit_object()))
    }));
    let pairs: Vec<[&Obj; 2]> = objs.iter().flat_map(|a| objs.iter().map(move |b| [a, b])).collect();
    let singles: Vec<&Obj> = objs.iter().collect();
    report.push(sweep("monoidal_functor.unitality", "ν_{a,1} = j_{F(a)} = ν_{1,a}", &singles, |a| {
        instance(&base, || labels(&[a]), || {
            let (l, r) = (m.nu(a, &one)?, m.nu(&one, a)?);
            let j = d.ident(&f.obj(a)?)?;
            if l != j {
                return Ok((l, j));
            }
            Ok((r, j))
        })
    }));

    let triples: Vec<[&Obj; 3]> =
        pairs.iter().flat_map(|&[a, b]| objs.iter().map(move |x| [a, b, x])).collect();
    report.push(sweep(
        "monoidal_functor.associativity",
        "ν_{a,bc};(j⊗ν_{b,c}) = ν_{ab,c};(ν_{a,b}⊗j)",
        &triples,
        |&[a, b, x]| {
            instance(&base, || labels(&[a, b, x]), || {
                let (fa, fb, fc) = (f.obj(a)?, f.obj(b)?, f.obj(x)?);
                let (bc, ab) = (c.tensor_objects(b, x)?, c.tensor_objects(a, b)?);
                let abc = c.tensor_objects(&ab, x)?;
                let (f_abc, f_bc, f_ab) = (f.obj(&abc)?, f.obj(&bc)?, f.obj(&ab)?);
                let fa_fbc = d.tensor_objects(&fa, &f_bc)?;
                let fab_fc = d.tensor_objects(&f_ab, &fc)?;
                let fa_fb = d.tensor_objects(&fa, &fb)?;
                let fafbfc = d.tensor_objects(&fa_fb, &fc)?;
                let right_leg = d.tensor_elements(&fa, &fa, &f_bc, &d.tensor_objects(&fb, &fc)?, &d.ident(&fa)?, &m.nu(b, x)?)?;
                let lhs = d.compose(&f_abc, &fa_fbc, &fafbfc, &m.nu(a, &bc)?, &right_leg)?;
                let left_leg = d.tensor_elements(&f_ab, &fa_fb, &fc, &fc, &m.nu(a, b)?, &d.ident(&fc)?)?;
                let rhs = d.compose(&f_abc, &fab_fc, &fafbfc, &m.nu(&ab, x)?, &left_leg)?;
                Ok((lhs, rhs))
            })
        },
    ));

    let quads: Vec<[&Obj; 4]> =
        triples.iter().flat_map(|&[a, b, x]| objs.iter().map(move |y| [a, b, x, y])).collect();
    report.push(sweep(
        "monoidal_functor.naturality",
        "(F⊗F);⊗_D;(ν_{a,b};−) = ⊗_C;F;(−;ν_{c,d})",
        &quads,
        |&[a, b, x, y]| {
            instance(&base, || labels(&[a, b, x, y]), || {
                let (fa, fb, fc, fd) = (f.obj(a)?, f.obj(b)?, f.obj(x)?, f.obj(y)?);
                let (ac, bd) = (c.tensor_objects(a, x)?, c.tensor_objects(b, y)?);
                let (f_ac, f_bd) = (f.obj(&ac)?, f.obj(&bd)?);
                let (fafc, fbfd) = (d.tensor_objects(&fa, &fc)?, d.tensor_objects(&fb, &fd)?);
                let lhs = base
                    .tensor_mor(&f.mor(a, b)?, &f.mor(x, y)?)
                    .then(&d.tensor_homs(&fa, &fb, &fc, &fd)?)?
                    .then(&precompose(&**d, &f_ac, &fafc, &fbfd, &m.nu(a, x)?)?)?;
                let rhs = c
                    .tensor_homs(a, b, x, y)?
                    .then(&f.mor(&ac, &bd)?)?
                    .then(&postcompose(&**d, &f_ac, &f_bd, &fbfd, &m.nu(b, y)?)?)?;
                Ok((lhs, rhs))
            })
        },
    ));

    report.push(sweep("monoidal_functor.nu_invertible", "every ν_{a,b} is invertible", &pairs, |&[a, b]| {
        holds(|| labels(&[a, b]), || {
            let fab = f.obj(&c.tensor_objects(a, b)?)?;
            let fafb = d.tensor_objects(&f.obj(a)?, &f.obj(b)?)?;
            Ok(d.inverse(&fab, &fafb, &m.nu(a, b)?)?.is_some())
        })
    }));
    report
}
