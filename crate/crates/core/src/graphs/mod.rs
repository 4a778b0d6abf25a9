//! Graphs, partially labeled graphs, canonical forms and the structural
//! constructions (stringent graphs, blow-ups) the reductions are built on.

mod canon;
mod enumerate;
mod graph;
mod plg;
mod structure;

pub use canon::{
    automorphisms, automorphisms_with_cap, canonical_form, canonical_graph, is_isomorphic_labeled, CanonicalForm,
    DEFAULT_STRUCTURE_CAP,
};
pub use enumerate::{enumerate_graphs, enumerate_graphs_up_to, enumerate_graphs_with_cap, enumerate_plgs, DEFAULT_ENUMERATION_CAP};
pub use graph::{Graph, MAX_VERTICES};
pub use plg::{Label, Plg};
pub use structure::{
    clique_blowup, clique_blowup_with_classes, homogeneous_sets, homogeneous_sets_with, independent_blowup, is_stringent,
    stringent_graph, Homogeneity,
};

pub(crate) use graph::{bits, full_mask};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, more than the supported {max}", max = MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("labels must be positive integers")]
    InvalidLabel,
    #[error("label {0} used twice")]
    DuplicateLabel(Label),
    #[error("vertex {0} carries two labels")]
    VertexLabeledTwice(usize),
    #[error("{what} on {n} vertices exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("stringent construction needs k >= 6, got {0}")]
    StringentTooSmall(usize),
    #[error("expected {expected} blow-up counts, got {got}")]
    CountsLength { expected: usize, got: usize },
    #[error("blow-up count for vertex {0} must be positive")]
    ZeroCount(usize),
}
