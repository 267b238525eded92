//! The base category V of finite-dimensional G-graded vector spaces over a cyclotomic field.

mod category;
mod group;
mod laws;
mod morphism;
mod object;

pub use category::BaseCategory;
pub use group::GroupSpec;
pub use laws::verify_base;
pub use morphism::{Block, GradedMorphism};
pub use object::GradedObject;
