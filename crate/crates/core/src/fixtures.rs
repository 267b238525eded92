//! The standard small examples used by tests, the CLI and the acceptance suite.

use std::sync::Arc;

use crate::base::BaseCategory;
use crate::enriched::{SelfEnrichment, VCategory};

/// Super vector spaces: G = Z/2 with χ(1,1) = −1.
pub fn svec() -> Arc<BaseCategory> {
    Arc::new(BaseCategory::new(vec![2], 2, &[(0, 0, 1)]).expect("valid bicharacter"))
}

/// G = Z/4 with χ(a,b) = i^{ab} over Q(i).
pub fn z4() -> Arc<BaseCategory> {
    Arc::new(BaseCategory::new(vec![4], 4, &[(0, 0, 1)]).expect("valid bicharacter"))
}

/// The one-object category `*` with hom object 1_V over super vector spaces.
pub fn triv() -> VCategory {
    VCategory::trivial(svec(), "*")
}

/// The self-enrichment restricted to objects of total dimension at most `max_dim`.
pub fn vhat(base: Arc<BaseCategory>, max_dim: usize) -> SelfEnrichment {
    let window = SelfEnrichment::dim_window(&base, max_dim);
    SelfEnrichment::new(base, window)
}
