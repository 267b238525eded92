use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::random_morphism;
use crate::report::{instance, sweep, Report};

use super::{BaseCategory, GradedMorphism, GradedObject};

/// Random samples per law for the naturality and mate checks.
const SAMPLES: usize = 60;

/// The laws of V on a window of objects: the bicharacter table, both hexagons,
/// invertibility and naturality of `β`, both zig-zags, and the mate bijection
/// with its counit and naturality.
///
/// Hexagons and zig-zags are exhaustive over the window; laws that quantify over
/// morphisms use `SAMPLES` seeded random instances each.
pub fn verify_base(base: &BaseCategory, window: &[GradedObject], seed: u64) -> Report {
    let mut report = base.validate_bicharacter();
    let b = base;
    let label = |xs: &[&GradedObject]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let singles: Vec<&GradedObject> = window.iter().collect();
    let pairs: Vec<[&GradedObject; 2]> = window.iter().flat_map(|u| window.iter().map(move |v| [u, v])).collect();
    let triples: Vec<[&GradedObject; 3]> =
        pairs.iter().flat_map(|&[u, v]| window.iter().map(move |w| [u, v, w])).collect();

    report.push(sweep("braiding.hexagon_left", "β_{u,vw} = (β_{u,v}⊗1_w);(1_v⊗β_{u,w})", &triples, |&[u, v, w]| {
        instance(b, || label(&[u, v, w]), || {
            let lhs = b.braiding(u, &b.tensor_obj(v, w));
            let rhs = b
                .tensor_mor(&b.braiding(u, v), &b.identity(w))
                .then(&b.tensor_mor(&b.identity(v), &b.braiding(u, w)))?;
            Ok((lhs, rhs))
        })
    }));
    report.push(sweep("braiding.hexagon_right", "β_{uv,w} = (1_u⊗β_{v,w});(β_{u,w}⊗1_v)", &triples, |&[u, v, w]| {
        instance(b, || label(&[u, v, w]), || {
            let lhs = b.braiding(&b.tensor_obj(u, v), w);
            let rhs = b
                .tensor_mor(&b.identity(u), &b.braiding(v, w))
                .then(&b.tensor_mor(&b.braiding(u, w), &b.identity(v)))?;
            Ok((lhs, rhs))
        })
    }));
    report.push(sweep("braiding.invertible", "β_{u,v};β_{u,v}^{-1} = 1_{uv}", &pairs, |&[u, v]| {
        instance(b, || label(&[u, v]), || Ok((b.braiding(u, v).then(&b.braiding_inv(u, v))?, b.identity(&b.tensor_obj(u, v)))))
    }));
    report.push(sweep("duality.zigzag_left", "(1_u⊗coev_u);(ev_u⊗1_u) = 1_u", &singles, |u| {
        instance(b, || label(&[u]), || {
            let lhs = b.tensor_mor(&b.identity(u), &b.coev(u)).then(&b.tensor_mor(&b.ev(u), &b.identity(u)))?;
            Ok((lhs, b.identity(u)))
        })
    }));
    report.push(sweep("duality.zigzag_right", "(coev_u⊗1_{u*});(1_{u*}⊗ev_u) = 1_{u*}", &singles, |u| {
        instance(b, || label(&[u]), || {
            let d = b.dual_obj(u);
            let lhs = b.tensor_mor(&b.coev(u), &b.identity(&d)).then(&b.tensor_mor(&b.identity(&d), &b.ev(u)))?;
            Ok((lhs, b.identity(&d)))
        })
    }));
    report.push(sweep("mate.counit", "mate_backward(1_{u*v}) = ev_u⊗1_v", &pairs, |&[u, v]| {
        instance(b, || label(&[u, v]), || {
            Ok((b.mate_backward_v(u, v, &b.identity(&b.internal_hom(u, v)))?, b.eval_counit(u, v)))
        })
    }));

    let samples = sample_tuples(b, window, seed);
    report.push(sweep("braiding.natural", "(f⊗g);β_{u',v'} = β_{u,v};(g⊗f)", &samples, |s| {
        instance(b, || label(&[&s.u, &s.v]), || {
            let (f, g) = (&s.f, &s.g);
            let lhs = b.tensor_mor(f, g).then(&b.braiding(f.cod(), g.cod()))?;
            let rhs = b.braiding(f.dom(), g.dom()).then(&b.tensor_mor(g, f))?;
            Ok((lhs, rhs))
        })
    }));
    report.push(sweep("mate.round_trip", "mate_backward(mate_forward(h)) = h", &samples, |s| {
        instance(b, || label(&[&s.u, &s.v]), || Ok((b.mate_backward_v(&s.u, s.h.cod(), &b.mate_forward_w(&s.u, &s.v, &s.h)?)?, s.h.clone())))
    }));
    report.push(sweep("mate.natural", "mate((1_u⊗k);h) = k;mate(h)", &samples, |s| {
        instance(b, || label(&[&s.u, &s.v]), || {
            let lhs = b.mate_forward_w(&s.u, s.k.dom(), &b.tensor_mor(&b.identity(&s.u), &s.k).then(&s.h)?)?;
            let rhs = s.k.then(&b.mate_forward_w(&s.u, &s.v, &s.h)?)?;
            Ok((lhs, rhs))
        })
    }));
    report
}

/// Seeded data for the sampled laws: `f: u → u'`, `g: v → v'`,
/// `h: u⊗v → x` and `k: w → v`.
struct Sample {
    u: GradedObject,
    v: GradedObject,
    f: GradedMorphism,
    g: GradedMorphism,
    h: GradedMorphism,
    k: GradedMorphism,
}

fn sample_tuples(b: &BaseCategory, window: &[GradedObject], seed: u64) -> Vec<Sample> {
    if window.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(SAMPLES);
    for _ in 0..SAMPLES {
        let mut pick = || window[rng.gen_range(0..window.len())].clone();
        let (u, u2, v, v2, x, w) = (pick(), pick(), pick(), pick(), pick(), pick());
        let f = random_morphism(b, &u, &u2, &mut rng);
        let g = random_morphism(b, &v, &v2, &mut rng);
        let h = random_morphism(b, &b.tensor_obj(&u, &v), &x, &mut rng);
        let k = random_morphism(b, &w, &v, &mut rng);
        out.push(Sample { u, v, f, g, h, k });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::SelfEnrichment;

    #[test]
    fn fixtures_satisfy_base_laws() {
        for base in [crate::fixtures::svec(), crate::fixtures::z4()] {
            let window = SelfEnrichment::dim_window(&base, 3);
            let r = verify_base(&base, &window, 11);
            assert!(r.passed(), "{:?}", r.failures());
            assert_eq!(r.check("braiding.hexagon_left").unwrap().instances, (window.len() as u64).pow(3));
        }
    }

    #[test]
    fn non_biadditive_table_breaks_the_hexagons() {
        let base = BaseCategory::new(vec![2], 3, &[(0, 0, 1)]).unwrap();
        let r = verify_base(&base, &SelfEnrichment::dim_window(&base, 1), 0);
        assert_eq!(
            r.failures(),
            vec!["bicharacter.additive_left", "bicharacter.additive_right", "braiding.hexagon_left", "braiding.hexagon_right"]
        );
    }
}
