//! Positivity evidence: sum-of-squares certificates, Cauchy–Schwarz calculus
//! proofs, finite moment matrices, and searching for negative evaluations.

mod calculus;
mod moment;
mod refute;
mod sos;

pub use calculus::{check_cs_proof, cs_instance, CsProof, Justification, ProofLine, Verdict};
pub use moment::{is_psd, moment_matrix, MomentMatrix};
pub use refute::{refute, RefuteOptions, Witness};
pub use sos::{verify_sos, verify_sos_with_budget, SosCertificate};

use crate::algebra::AlgebraError;
use crate::density::DensityError;
use crate::graphs::GraphError;

/// Term budget for expanding certificates and proof statements.
pub const DEFAULT_EXPANSION_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("certificate has no squares")]
    EmptyCertificate,
    #[error("proof is empty")]
    EmptyProof,
    #[error("line {line} cites line {cited}, which is not an earlier line")]
    BadReference { line: usize, cited: usize },
}
