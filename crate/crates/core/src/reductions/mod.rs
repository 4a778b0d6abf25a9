//! Polynomial-to-quantum-graph reductions: the clone construction behind the
//! positive-but-not-sum-of-squares example, and the clique-generator
//! construction behind the undecidability instances.

mod phi;
mod psi;

pub use phi::{
    alpha, build_counterexample, clone_graph, counterexample_expr, exact_embeddings, phi, phi_generator, rooted_unit,
    PhiImage,
};
pub use psi::{build_instance, clique_graph, psi, psi_expr, psi_generators, witness_eval, witness_graph, PsiImage};

use crate::algebra::AlgebraError;
use crate::density::DensityError;
use crate::graphs::GraphError;
use crate::polynomials::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial has {got} variables, base graph has {expected} vertices")]
    VariableCount { expected: usize, got: usize },
    #[error("map is not an exact embedding of the base graph")]
    NotExact,
    #[error("only k = 6 is supported, got {0}")]
    UnsupportedK(usize),
    #[error("polynomial must have positive degree")]
    ConstantPolynomial,
    #[error("polynomial must have integer coefficients")]
    NonIntegerCoefficients,
    #[error("polynomial uses variables outside x1..x{k}")]
    TooManyVariables { k: usize },
    #[error("polynomial is not negative at the grid point")]
    NotNegative,
}
