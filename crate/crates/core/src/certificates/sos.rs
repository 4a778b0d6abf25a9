use std::collections::BTreeSet;

use super::{CertError, DEFAULT_EXPANSION_BUDGET};
use crate::algebra::{QExpr, QuantumGraph};

/// Labeled quantum graphs `g_1..g_m` claimed to satisfy `target = ⟦Σ g_i²⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosCertificate {
    squares: Vec<QExpr>,
}

impl SosCertificate {
    pub fn new(squares: Vec<QExpr>) -> Result<Self, CertError> {
        if squares.is_empty() {
            return Err(CertError::EmptyCertificate);
        }
        Ok(SosCertificate { squares })
    }

    pub fn from_quantum(squares: &[QuantumGraph]) -> Result<Self, CertError> {
        SosCertificate::new(squares.iter().map(QExpr::from).collect())
    }

    pub fn squares(&self) -> &[QExpr] {
        &self.squares
    }

    /// `⟦Σ g_i²⟧` as an expression.
    pub fn sum_of_squares(&self) -> QExpr {
        QExpr::Unlabel(
            BTreeSet::new(),
            Box::new(QExpr::Sum(self.squares.iter().map(|g| QExpr::Pow(Box::new(g.clone()), 2)).collect())),
        )
    }
}

pub fn verify_sos(target: &QuantumGraph, cert: &SosCertificate) -> Result<bool, CertError> {
    verify_sos_with_budget(target, cert, DEFAULT_EXPANSION_BUDGET)
}

/// Expands the certificate and compares normal forms.
pub fn verify_sos_with_budget(target: &QuantumGraph, cert: &SosCertificate, budget: usize) -> Result<bool, CertError> {
    Ok(cert.sum_of_squares().expand(budget)? == *target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Graph, Plg};
    use crate::rat;

    fn pendant() -> Plg {
        Plg::new(Graph::complete(2).unwrap(), [(1, 0)]).unwrap()
    }

    #[test]
    fn path_and_edge() {
        let p3 = QuantumGraph::from_plg(&Plg::unlabeled(Graph::path(3).unwrap()));
        let cert = SosCertificate::new(vec![QExpr::Atom(pendant())]).unwrap();
        assert!(verify_sos(&p3, &cert).unwrap());
        let k2 = QuantumGraph::from_plg(&Plg::unlabeled(Graph::complete(2).unwrap()));
        let cert = SosCertificate::new(vec![QExpr::Atom(Plg::fully_labeled(Graph::complete(2).unwrap()))]).unwrap();
        assert!(verify_sos(&k2, &cert).unwrap());
        assert!(!verify_sos(&k2.scale(&rat(-1, 1)), &cert).unwrap());
        assert!(SosCertificate::new(vec![]).is_err());
    }
}
