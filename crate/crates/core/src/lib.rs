pub mod base;
pub mod completion;
pub mod enriched;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod module;
pub mod report;
pub mod scalars;
pub mod vmonoidal;
pub mod workbench;

pub use error::{Error, Result};
