use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vcwb::base::{BaseCategory, GradedMorphism, GradedObject};
use vcwb::fixtures::{svec, z4};
use vcwb::linalg::{hom_dim, random_morphism};
use vcwb::scalars::{Cyclotomic, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn cyclotomic(m: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..m, rational()), 0..4).prop_map(move |t| Cyclotomic::from_coeffs(m, t))
}

fn order_and_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    (1u32..=12).prop_flat_map(|m| (cyclotomic(m), cyclotomic(m), cyclotomic(m)))
}

/// Float value of `Σ c_k ζ_m^k`, computed from the coefficients alone.
fn eval(a: &Cyclotomic) -> (f64, f64) {
    let m = a.order() as f64;
    a.coeffs().iter().fold((0.0, 0.0), |(re, im), (k, c)| {
        let t = std::f64::consts::TAU * *k as f64 / m;
        (re + c.to_f64() * t.cos(), im + c.to_f64() * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws((a, b, c) in order_and_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn products_agree_with_complex_evaluation((a, b, _) in order_and_triple()) {
        let (x, y) = (eval(&a), eval(&b));
        prop_assert!(close(eval(&(&a * &b)), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
    }

    #[test]
    fn embedding_is_a_ring_map(
        (m, k, a, b) in (1u32..=6, 2u32..=4).prop_flat_map(|(m, k)| (Just(m), Just(k), cyclotomic(m), cyclotomic(m))),
    ) {
        let up = |x: &Cyclotomic| x.embed(m * k).unwrap();
        prop_assert_eq!(up(&(&a * &b)), &up(&a) * &up(&b));
        prop_assert_eq!(up(&(&a + &b)), &up(&a) + &up(&b));
        prop_assert!(close(eval(&up(&a)), eval(&a)));
    }

    #[test]
    fn serialization_is_canonical((a, _, _) in order_and_triple()) {
        let text = a.to_json().to_string();
        let back = Cyclotomic::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_json().to_string(), text);
    }
}

#[test]
fn roots_of_unity_pair_to_one() {
    for m in 1..=12u32 {
        for k in 0..=m as i64 {
            let p = &Cyclotomic::root_of_unity(m, k) * &Cyclotomic::root_of_unity(m, m as i64 - k);
            assert!(p.is_one(), "m={m} k={k}");
        }
    }
}

#[test]
fn eighth_roots_product_matches_floats() {
    let one = Cyclotomic::one(8);
    let z = Cyclotomic::root_of_unity(8, 1);
    let p = &(&one + &z) * &(&one - &z);
    assert_eq!(p, &one - &Cyclotomic::root_of_unity(8, 2));
    assert!(close(eval(&p), (1.0, -1.0)));
}

fn object(base: &BaseCategory) -> impl Strategy<Value = GradedObject> {
    prop::collection::vec(0..base.group().size() as u32, 0..=3).prop_map(GradedObject::from_grades)
}

fn mor(base: &BaseCategory, d: &GradedObject, c: &GradedObject, rng: &mut ChaCha8Rng) -> GradedMorphism {
    random_morphism(base, d, c, rng)
}

fn bases() -> impl Strategy<Value = std::sync::Arc<BaseCategory>> {
    prop_oneof![Just(svec()), Just(z4())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn tensor_is_bifunctorial(
        (base, objs) in bases().prop_flat_map(|b| (Just(b.clone()), prop::collection::vec(object(&b), 6))),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [u0, u1, u2, v0, v1, v2] = <[GradedObject; 6]>::try_from(objs).unwrap();
        let (f1, f2) = (mor(&base, &u0, &u1, &mut rng), mor(&base, &u1, &u2, &mut rng));
        let (g1, g2) = (mor(&base, &v0, &v1, &mut rng), mor(&base, &v1, &v2, &mut rng));
        let lhs = base.tensor_mor(&f1.then(&f2).unwrap(), &g1.then(&g2).unwrap());
        let rhs = base.tensor_mor(&f1, &g1).then(&base.tensor_mor(&f2, &g2)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(base.tensor_mor(&f1, &base.identity(&GradedObject::unit())), f1);
    }

    #[test]
    fn braiding_is_natural(
        (base, objs) in bases().prop_flat_map(|b| (Just(b.clone()), prop::collection::vec(object(&b), 4))),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [u, u2, v, v2] = <[GradedObject; 4]>::try_from(objs).unwrap();
        let (f, g) = (mor(&base, &u, &u2, &mut rng), mor(&base, &v, &v2, &mut rng));
        let lhs = base.tensor_mor(&f, &g).then(&base.braiding(&u2, &v2)).unwrap();
        let rhs = base.braiding(&u, &v).then(&base.tensor_mor(&g, &f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mates_round_trip_and_are_natural(
        (base, objs) in bases().prop_flat_map(|b| (Just(b.clone()), prop::collection::vec(object(&b), 4))),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [u, w, w2, v] = <[GradedObject; 4]>::try_from(objs).unwrap();
        let f = mor(&base, &base.tensor_obj(&u, &w), &v, &mut rng);
        let m = base.mate_forward_w(&u, &w, &f).unwrap();
        prop_assert_eq!(m.cod(), &base.internal_hom(&u, &v));
        prop_assert_eq!(&base.mate_backward_v(&u, &v, &m).unwrap(), &f);
        // mate((1_u⊗h);f) = h;mate(f)
        let h = mor(&base, &w2, &w, &mut rng);
        let pre = base.tensor_mor(&base.identity(&u), &h).then(&f).unwrap();
        prop_assert_eq!(base.mate_forward_w(&u, &w2, &pre).unwrap(), h.then(&m).unwrap());
    }

    #[test]
    fn internal_hom_dimension_counts_graded_maps(
        (base, u, v) in bases().prop_flat_map(|b| (Just(b.clone()), object(&b), object(&b))),
    ) {
        // grade-preserving maps u⊗w → v with w = δ_h, summed over h
        let brute: usize = base
            .group()
            .elements()
            .map(|h| hom_dim(&base.tensor_obj(&u, &GradedObject::simple(h)), &v))
            .sum();
        prop_assert_eq!(base.internal_hom(&u, &v).dim(), brute);
    }
}
