use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::GradedObject;
use crate::enriched::{Obj, VCat};
use crate::error::{Error, Result};
use crate::linalg::{hom_dim, random_morphism};
use crate::module::{adjunction_map, check_representability, vcat_to_module, TensoringData};
use crate::report::{Check, Report, Witness};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub weights: Vec<GradedObject>,
    /// Targets tried per pair `(a, v)`, after a seeded shuffle.
    pub max_candidates: usize,
    pub seed: u64,
    /// Random units tried per dimension-compatible target.
    pub attempts: usize,
}

pub enum SearchOutcome {
    Found(Arc<TensoringData>),
    NotFound { missing: Vec<String> },
}

/// Looks for `a◁v` among the existing objects for every object `a` and weight `v`.
///
/// A target `b` is kept only if `dim C^V(b→x) = dim V(v→C(a→x))` for every `x`.
/// The unit `η` is then drawn at random: the bijective choices form a Zariski-open
/// set, so a random point finds one whenever one exists, up to an unlucky draw
/// that `attempts` makes unlikely. A miss is not a proof that no tensoring exists.
pub fn search_tensoring(cat: Arc<dyn VCat>, opts: &SearchOptions) -> Result<(SearchOutcome, Report)> {
    let base = cat.base().clone();
    let objs = cat.objects();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found = TensoringData::new(cat.clone());
    let mut missing = Vec::new();
    let mut check = Check::new("search.found", "some a◁v among the objects admits a bijective Φ");

    for a in &objs {
        for v in &opts.weights {
            check.count();
            let mut order: Vec<&Obj> = objs.iter().collect();
            order.shuffle(&mut rng);
            order.truncate(opts.max_candidates);
            let mut hit = None;
            'targets: for b in order {
                if !dims_match(&*cat, a, v, b, &objs)? {
                    continue;
                }
                let hom = cat.hom(a, b)?;
                for _ in 0..opts.attempts {
                    let eta = random_morphism(&base, v, &hom, &mut rng);
                    let mut t = TensoringData::new(cat.clone());
                    t.insert(a.clone(), v.clone(), b.clone(), eta.clone())?;
                    if bijective_everywhere(&t, a, v, &objs)? {
                        hit = Some((b.clone(), eta));
                        break 'targets;
                    }
                }
            }
            match hit {
                Some((b, eta)) => found.insert(a.clone(), v.clone(), b, eta)?,
                None => missing.push(format!("({a}, {v})")),
            }
        }
    }

    let mut report = Report::default();
    if !missing.is_empty() {
        check.undetermined(
            Witness::tuple(&missing).note("not found; a failed search is not a proof that the category is not tensored"),
        );
        report.push(check);
        return Ok((SearchOutcome::NotFound { missing }, report));
    }
    report.push(check);
    report.extend(check_representability(&found));
    let found = Arc::new(found);
    let module = vcat_to_module(found.clone())?;
    report.extend(module.verify(&opts.weights));
    Ok((SearchOutcome::Found(found), report))
}

fn dims_match(c: &dyn VCat, a: &Obj, v: &GradedObject, b: &Obj, objs: &[Obj]) -> Result<bool> {
    for x in objs {
        if c.hom(b, x)?.multiplicity(0) != hom_dim(v, &c.hom(a, x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bijective_everywhere(t: &TensoringData, a: &Obj, v: &GradedObject, objs: &[Obj]) -> Result<bool> {
    for x in objs {
        match adjunction_map(t, a, v, x) {
            Ok(_) => {}
            Err(Error::RepresentabilityFailure { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{svec, triv};
    use crate::module::Tensoring;

    fn opts(weights: Vec<GradedObject>, seed: u64) -> SearchOptions {
        SearchOptions { weights, max_candidates: 64, seed, attempts: 3 }
    }

    #[test]
    fn finds_a_tensoring_of_vhat() {
        let base = svec();
        let v: Arc<dyn VCat> = Arc::new(crate::fixtures::vhat(base.clone(), 2));
        let w = vec![GradedObject::unit(), GradedObject::simple(1)];
        let (out, r) = search_tensoring(v.clone(), &opts(w, 5)).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let SearchOutcome::Found(t) = out else { panic!("not found") };
        let pi = GradedObject::simple(1);
        let a = Obj::V(GradedObject::from_grades(vec![0, 0]));
        assert_eq!(t.act(&a, &pi).unwrap(), Obj::V(GradedObject::from_grades(vec![1, 1])));
    }

    #[test]
    fn one_object_category_has_no_odd_tensoring() {
        let c: Arc<dyn VCat> = Arc::new(triv());
        let (out, r) = search_tensoring(c, &opts(vec![GradedObject::unit(), GradedObject::simple(1)], 0)).unwrap();
        assert!(matches!(out, SearchOutcome::NotFound { ref missing } if missing == &["(*, [1])"]));
        assert_eq!(r.verdict(), crate::report::Status::Undetermined);
    }

    #[test]
    fn same_seed_same_result() {
        let v: Arc<dyn VCat> = Arc::new(crate::fixtures::vhat(svec(), 2));
        let w = vec![GradedObject::unit(), GradedObject::simple(1)];
        let json = |s| match search_tensoring(v.clone(), &opts(w.clone(), s)).unwrap().0 {
            SearchOutcome::Found(t) => t.to_json(),
            SearchOutcome::NotFound { .. } => panic!("not found"),
        };
        assert_eq!(json(9), json(9));
    }
}
