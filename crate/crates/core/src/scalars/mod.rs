//! Exact scalars: rationals and cyclotomic field elements.

mod cyclotomic;
mod rational;

pub use cyclotomic::{euler_phi, Cyclotomic};
pub use rational::Rational;

use crate::error::ScalarError;

/// Field operation selector for [`cyc_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact arithmetic on two elements of the same cyclotomic field.
pub fn cyc_arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic, ScalarError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

/// Moves `a` into Q(ζ_n); `n` must be a multiple of the order of `a`.
pub fn cyc_embed(a: &Cyclotomic, n: u32) -> Result<Cyclotomic, ScalarError> {
    a.embed(n)
}

/// ζ_m^k reduced modulo Φ_m.
pub fn root_of_unity(m: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(m, k)
}
