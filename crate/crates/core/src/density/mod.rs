//! Exact densities: homomorphism, injective and induced densities, rooted
//! and vertex-weighted versions, structural evaluation of expressions,
//! symbolic density polynomials, and step graphons.

mod count;
mod eval;
mod graphon;
mod weighted;

pub use eval::{
    check_tasym, density_polynomial, density_polynomial_expr, hom_count, t, t_expr, t_expr_graph, t_expr_with_cap,
    t_graph, t_ind, t_inj, t_quantum, t_rooted, DensityPolynomial, DEFAULT_FREE_LABEL_CAP,
};
pub use graphon::{mix, t_graphon, w_from_graph, StepGraphon};
pub use weighted::{RootMap, WeightedGraph};


use crate::graphs::{GraphError, Label};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("densities of a nonempty graph into the empty graph are undefined")]
    EmptyTarget,
    #[error("invalid vertex weights: {0}")]
    InvalidWeights(String),
    #[error("invalid graphon: {0}")]
    InvalidGraphon(String),
    #[error("root map covers labels {got:?}, expected exactly {expected:?}")]
    RootDomain { expected: Vec<Label>, got: Vec<Label> },
    #[error("label {0} has no root image")]
    LabelNotCovered(Label),
    #[error("label {label} is mapped to vertex {v} of a graph on {n} vertices")]
    RootOutOfRange { label: Label, v: usize, n: usize },
    #[error("count does not fit in 128 bits")]
    CountOverflow,
    #[error("unlabeling {free} labels at once exceeds the cap of {cap}")]
    FreeLabelCap { free: usize, cap: usize },
}
