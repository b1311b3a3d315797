//! Exact Laurent-polynomial and rational-function algebra over ℚ(i), and the
//! mutation substitution acting on potentials and local systems.

mod gcd;
pub mod json;
mod laurent;
mod mutation;
mod rational;
pub mod scalar;

pub use gcd::{exact_div, polynomial_gcd};
pub use json::{PotentialJson, TermJson};
pub use laurent::{grlex_cmp, Exponent, LaurentPolynomial};
pub use mutation::{
    apply_mutation, apply_mutation_rational, eval_at, mutate_potential, verify_invariance,
    Direction, MutatedPotential, MutationRule, MutationRuleJson,
};
pub use rational::RationalFunction;
pub use scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Ring operation on two Laurent polynomials over the same ordered variables.
pub fn laurent_arith(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    op: ArithOp,
) -> crate::Result<LaurentPolynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}
