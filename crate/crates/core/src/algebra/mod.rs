//! Quantum graphs modulo isolated vertices: the gluing product, unlabeling,
//! the `ind` basis, rooted decomposition, and unexpanded expressions.

mod expr;
mod quantum;

pub use expr::{ExactConstraint, QExpr};
pub use quantum::{equal_mod_k, ind, ind_with_cap, normal_plg, QuantumGraph, DEFAULT_IND_CAP};

use crate::graphs::{GraphError, Label};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("ind expansion over {non_edges} non-edges exceeds the cap of {cap}")]
    IndCapExceeded { non_edges: usize, cap: usize },
    #[error("expansion reached {terms} terms, over the budget of {budget}")]
    ExpansionBudget { terms: usize, budget: usize },
    #[error("label {label} is outside 1..={l}")]
    LabelOutOfRange { label: Label, l: usize },
}
