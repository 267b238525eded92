use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::GradedMorphism;
use crate::enriched::{labels, Obj};
use crate::error::Result;
use crate::report::{holds, instance, sweep, Report};

use super::VMonoidal;

/// The crossing used in the middle of the interchange square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterchangeBraid {
    #[default]
    Braiding,
    /// The plain swap. Only correct when the bicharacter is trivial on the grades involved.
    Identity,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub braid: InterchangeBraid,
    /// Check associativity and interchange on `count` random 6-tuples drawn with `seed`
    /// instead of on all of them.
    pub sample: Option<(usize, u64)>,
}

pub fn verify_vmonoidal(c: &dyn VMonoidal) -> Report {
    verify_vmonoidal_with(c, VerifyOptions::default())
}

fn tuples<const K: usize>(objs: &[Obj]) -> Vec<[&Obj; K]> {
    let n = objs.len();
    let total = n.pow(K as u32);
    (0..total)
        .map(|mut k| {
            let mut t = [&objs[0]; K];
            for slot in t.iter_mut().rev() {
                *slot = &objs[k % n];
                k /= n;
            }
            t
        })
        .collect()
}

fn sampled<const K: usize>(objs: &[Obj], count: usize, seed: u64) -> Vec<[&Obj; K]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut t = [&objs[0]; K];
            for slot in t.iter_mut() {
                *slot = &objs[rng.gen_range(0..objs.len())];
            }
            t
        })
        .collect()
}

/// `(T(a,b,c,d)⊗1);T(ac,bd,e,f)` and `(1⊗T(c,d,e,f));T(a,b,ce,df)`.
fn associativity_sides(c: &dyn VMonoidal, t: [&Obj; 6]) -> Result<(GradedMorphism, GradedMorphism)> {
    let [a, b, x, d, e, f] = t;
    let base = c.base();
    let (ac, bd) = (c.tensor_objects(a, x)?, c.tensor_objects(b, d)?);
    let (ce, df) = (c.tensor_objects(x, e)?, c.tensor_objects(d, f)?);
    let lhs = base.tensor_mor(&c.tensor_homs(a, b, x, d)?, &base.identity(&c.hom(e, f)?)).then(&c.tensor_homs(&ac, &bd, e, f)?)?;
    let rhs = base.tensor_mor(&base.identity(&c.hom(a, b)?), &c.tensor_homs(x, d, e, f)?).then(&c.tensor_homs(a, b, &ce, &df)?)?;
    Ok((lhs, rhs))
}

/// `(T(a,b,d,e)⊗T(b,c,e,f));comp(ad,be,cf)` and
/// `(1⊗β_{C(d→e),C(b→c)}⊗1);(comp(a,b,c)⊗comp(d,e,f));T(a,c,d,f)`.
fn interchange_sides(c: &dyn VMonoidal, t: [&Obj; 6], braid: InterchangeBraid) -> Result<(GradedMorphism, GradedMorphism)> {
    let [a, b, x, d, e, f] = t;
    let base = c.base();
    let (ad, be, cf) = (c.tensor_objects(a, d)?, c.tensor_objects(b, e)?, c.tensor_objects(x, f)?);
    let lhs = base.tensor_mor(&c.tensor_homs(a, b, d, e)?, &c.tensor_homs(b, x, e, f)?).then(&c.comp(&ad, &be, &cf)?)?;
    let (h_de, h_bc) = (c.hom(d, e)?, c.hom(b, x)?);
    let cross = match braid {
        InterchangeBraid::Braiding => base.braiding(&h_de, &h_bc),
        InterchangeBraid::Identity => base.swap(&h_de, &h_bc),
    };
    let middle = base.tensor_mors(&[&base.identity(&c.hom(a, b)?), &cross, &base.identity(&c.hom(e, f)?)]);
    let rhs = middle
        .then(&base.tensor_mor(&c.comp(a, b, x)?, &c.comp(d, e, f)?))?
        .then(&c.tensor_homs(a, x, d, f)?)?;
    Ok((lhs, rhs))
}

/// Checks strictness of the object tensor, both unit laws, `j_a⊗j_b = j_{ab}`,
/// associativity of `−⊗−` and braided interchange on the window.
pub fn verify_vmonoidal_with(c: &dyn VMonoidal, opts: VerifyOptions) -> Report {
    let base = c.base().clone();
    let objs = c.objects();
    let mut report = Report::default();
    if objs.is_empty() {
        return report;
    }
    let one = c.unit_object();

    let triples = tuples::<3>(&objs);
    report.push(sweep("vmonoidal.strict_objects", "(ab)c = a(bc) and 1a = a = a1", &triples, |&[a, b, x]| {
        holds(|| labels(&[a, b, x]), || {
            let left = c.tensor_objects(&c.tensor_objects(a, b)?, x)?;
            let right = c.tensor_objects(a, &c.tensor_objects(b, x)?)?;
            Ok(left == right && &c.tensor_objects(&one, a)? == a && &c.tensor_objects(a, &one)? == a)
        })
    }));

    let pairs = tuples::<2>(&objs);
    report.push(sweep("vmonoidal.unit_left", "(j_1⊗1);(−⊗−) = 1", &pairs, |&[a, b]| {
        instance(&base, || labels(&[a, b]), || {
            let h = c.hom(a, b)?;
            let lhs = base.tensor_mor(&c.ident(&one)?, &base.identity(&h)).then(&c.tensor_homs(&one, &one, a, b)?)?;
            Ok((lhs, base.identity(&h)))
        })
    }));
    report.push(sweep("vmonoidal.unit_right", "(1⊗j_1);(−⊗−) = 1", &pairs, |&[a, b]| {
        instance(&base, || labels(&[a, b]), || {
            let h = c.hom(a, b)?;
            let lhs = base.tensor_mor(&base.identity(&h), &c.ident(&one)?).then(&c.tensor_homs(a, b, &one, &one)?)?;
            Ok((lhs, base.identity(&h)))
        })
    }));
    report.push(sweep("vmonoidal.unit_identities", "(j_a⊗j_b);(−⊗−) = j_{ab}", &pairs, |&[a, b]| {
        instance(&base, || labels(&[a, b]), || {
            let lhs = base.tensor_mor(&c.ident(a)?, &c.ident(b)?).then(&c.tensor_homs(a, a, b, b)?)?;
            Ok((lhs, c.ident(&c.tensor_objects(a, b)?)?))
        })
    }));

    let sixes = match opts.sample {
        Some((count, seed)) => sampled::<6>(&objs, count, seed),
        None => tuples::<6>(&objs),
    };
    report.push(sweep("vmonoidal.associativity", "−⊗− is associative on hom objects", &sixes, |t| {
        instance(&base, || labels(t), || associativity_sides(c, *t))
    }));
    report.push(sweep(
        "vmonoidal.braided_interchange",
        "(⊗⊗⊗);comp = (1⊗β⊗1);(comp⊗comp);⊗",
        &sixes,
        |t| instance(&base, || labels(t), || interchange_sides(c, *t, opts.braid)),
    ));
    report
}
