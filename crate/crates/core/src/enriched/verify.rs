use crate::report::{instance, sweep, Report};

use super::{labels, Obj, VCat, VFunctor, VNat};

fn pairs(objs: &[Obj]) -> Vec<[&Obj; 2]> {
    objs.iter().flat_map(|a| objs.iter().map(move |b| [a, b])).collect()
}

fn triples(objs: &[Obj]) -> Vec<[&Obj; 3]> {
    pairs(objs).into_iter().flat_map(|[a, b]| objs.iter().map(move |c| [a, b, c])).collect()
}

fn quadruples(objs: &[Obj]) -> Vec<[&Obj; 4]> {
    triples(objs).into_iter().flat_map(|[a, b, c]| objs.iter().map(move |d| [a, b, c, d])).collect()
}

pub fn verify_vcategory(c: &dyn VCat) -> Report {
    verify_vcategory_filtered(c, &|_| true)
}

/// Checks associativity and both unit laws on every window tuple accepted by `keep`.
pub fn verify_vcategory_filtered(c: &dyn VCat, keep: &(dyn Fn(&[&Obj]) -> bool + Sync)) -> Report {
    let base = c.base().clone();
    let objs = c.objects();
    let mut report = Report::default();

    let quads: Vec<_> = quadruples(&objs).into_iter().filter(|t| keep(t)).collect();
    report.push(sweep("vcat.associativity", "V-category composition is associative", &quads, |&[a, b, x, d]| {
        instance(&base, || labels(&[a, b, x, d]), || {
            let ab = c.hom(a, b)?;
            let cd = c.hom(x, d)?;
            let lhs = base.tensor_mor(&c.comp(a, b, x)?, &base.identity(&cd)).then(&c.comp(a, x, d)?)?;
            let rhs = base.tensor_mor(&base.identity(&ab), &c.comp(b, x, d)?).then(&c.comp(a, b, d)?)?;
            Ok((lhs, rhs))
        })
    }));

    let prs: Vec<_> = pairs(&objs).into_iter().filter(|t| keep(t)).collect();
    report.push(sweep("vcat.unit_left", "(j_a ⊗ 1);comp = 1", &prs, |&[a, b]| {
        instance(&base, || labels(&[a, b]), || {
            let lhs = base.tensor_mor(&c.ident(a)?, &base.identity(&c.hom(a, b)?)).then(&c.comp(a, a, b)?)?;
            Ok((lhs, base.identity(&c.hom(a, b)?)))
        })
    }));
    report.push(sweep("vcat.unit_right", "(1 ⊗ j_b);comp = 1", &prs, |&[a, b]| {
        instance(&base, || labels(&[a, b]), || {
            let lhs = base.tensor_mor(&base.identity(&c.hom(a, b)?), &c.ident(b)?).then(&c.comp(a, b, b)?)?;
            Ok((lhs, base.identity(&c.hom(a, b)?)))
        })
    }));
    report
}

pub fn verify_vfunctor(f: &VFunctor) -> Report {
    verify_vfunctor_filtered(f, &|_| true)
}

/// Checks `(F_{a→b}⊗F_{b→c});comp_D = comp_C;F_{a→c}` and `j_a;F_{a→a} = j_{F(a)}`.
pub fn verify_vfunctor_filtered(f: &VFunctor, keep: &(dyn Fn(&[&Obj]) -> bool + Sync)) -> Report {
    let (c, d) = (f.source().clone(), f.target().clone());
    let base = c.base().clone();
    let objs = c.objects();
    let mut report = Report::default();
    let ts: Vec<_> = triples(&objs).into_iter().filter(|t| keep(t)).collect();
    report.push(sweep("vfunctor.composition", "V-functor preserves composition", &ts, |&[a, b, x]| {
        instance(&base, || labels(&[a, b, x]), || {
            let (fa, fb, fx) = (f.obj(a)?, f.obj(b)?, f.obj(x)?);
            let lhs = base.tensor_mor(&f.mor(a, b)?, &f.mor(b, x)?).then(&d.comp(&fa, &fb, &fx)?)?;
            let rhs = c.comp(a, b, x)?.then(&f.mor(a, x)?)?;
            Ok((lhs, rhs))
        })
    }));
    let singles: Vec<_> = objs.iter().filter(|a| keep(&[a])).collect();
    report.push(sweep("vfunctor.unit", "V-functor preserves identities", &singles, |a| {
        instance(&base, || labels(&[a]), || Ok((c.ident(a)?.then(&f.mor(a, a)?)?, d.ident(&f.obj(a)?)?)))
    }));
    report
}

/// Checks the naturality square `(σ_a⊗G_{a→b});comp = (F_{a→b}⊗σ_b);comp` for every pair.
pub fn verify_vnat(s: &VNat) -> Report {
    let (f, g) = (s.source(), s.target());
    let (c, d) = (f.source().clone(), f.target().clone());
    let base = c.base().clone();
    let objs = c.objects();
    let mut report = Report::default();
    report.push(sweep("vnat.shape", "components lie in D(Fa→Ga)", &objs, |a| {
        crate::report::holds(|| labels(&[a]), || {
            let sa = s.component(a)?;
            Ok(sa.dom().is_unit() && sa.cod() == &d.hom(&f.obj(a)?, &g.obj(a)?)?)
        })
    }));
    let prs = pairs(&objs);
    report.push(sweep("vnat.naturality", "V-naturality square", &prs, |&[a, b]| {
        instance(&base, || labels(&[a, b]), || {
            let (fa, ga, fb, gb) = (f.obj(a)?, g.obj(a)?, f.obj(b)?, g.obj(b)?);
            let lhs = base.tensor_mor(&s.component(a)?, &g.mor(a, b)?).then(&d.comp(&fa, &ga, &gb)?)?;
            let rhs = base.tensor_mor(&f.mor(a, b)?, &s.component(b)?).then(&d.comp(&fa, &fb, &gb)?)?;
            Ok((lhs, rhs))
        })
    }));
    report
}
