use std::sync::Arc;

use vcwb::enriched::{SelfEnrichment, VCat};
use vcwb::fixtures::{svec, vhat, z4};
use vcwb::module::{roundtrip_check, strong_module_check, vcat_to_module, AdjointData, SelfTensoring, Tensoring};

#[test]
fn vhat_round_trip_is_an_equivalence() {
    let v = Arc::new(vhat(svec(), 3));
    let weights = v.window().to_vec();
    let t: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), weights));
    let m = vcat_to_module(t).unwrap();
    let adj = AdjointData::from_module(&m).unwrap();
    let r = roundtrip_check(&m, &adj).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.check("vcat.associativity").unwrap().instances, 10_000);
}

#[test]
fn vhat_module_alpha_matches_laxitor_inverse() {
    for base in [svec(), z4()] {
        let weights = SelfEnrichment::dim_window(&base, 2);
        let v = Arc::new(SelfEnrichment::new(base, weights.clone()));
        let t: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), weights.clone()));
        let m = vcat_to_module(t).unwrap();
        let r = strong_module_check(&m, &weights).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(r.check("module.alpha_inverse_laxitor").unwrap().instances > 0);
        assert_eq!(m.objects().len(), v.objects().len());
    }
}
