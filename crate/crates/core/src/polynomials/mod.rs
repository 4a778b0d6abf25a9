//! Sparse rational polynomials and the polynomial-level constructions
//! behind the reductions: the Motzkin-type form, the grid transform,
//! the Goodman/Bollobás bounds, the `q` construction and the `τ` map.
//!
//! Positivity classes of real polynomials (sums of squares, nonnegative,
//! and bad points) are not decided anywhere in this crate.

mod bounds;
mod constructions;
mod expr;
mod poly;

pub use bounds::{bollobas_l, bollobas_piece, goodman_g, in_region_r};
pub use constructions::{
    calculus_q, calculus_q_expr, counterexample_poly, grid_point, hilbert10_transform, m_constant, motzkin_s, tau, tau_expr,
    tau_vars, xy_vars,
};
pub use expr::PolyExpr;
pub use poly::{indexed_vars, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unknown or unexpected variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("clearing power {given} is below the needed {needed}")]
    ClearingTooSmall { needed: u32, given: u32 },
    #[error("polynomial must have integer coefficients")]
    NonIntegerCoefficients,
    #[error("polynomial must be non-constant")]
    Constant,
    #[error("construction needs k >= {min}, got {k}")]
    TooFewVariables { k: usize, min: usize },
    #[error("{0} is outside the domain [0, 1)")]
    OutOfDomain(String),
}
