use std::collections::BTreeSet;

use num::Signed;

use super::{CertError, DEFAULT_EXPANSION_BUDGET};
use crate::algebra::{QExpr, QuantumGraph};
use crate::graphs::Label;
use crate::Rational;

/// `⟦f1²⟧_T·⟦f2²⟧_T − ⟦f1·f2⟧_T²`.
///
/// `f1` and `f2` may carry different labels: labels missing from one factor
/// are averaged out trivially, so the inequality holds for any pair.
pub fn cs_instance(f1: &QExpr, f2: &QExpr, t: &BTreeSet<Label>) -> QExpr {
    let un = |e: QExpr| QExpr::Unlabel(t.clone(), Box::new(e));
    let sq = |e: &QExpr| QExpr::Pow(Box::new(e.clone()), 2);
    QExpr::Sum(vec![
        QExpr::Product(vec![un(sq(f1)), un(sq(f2))]),
        QExpr::Product(vec![
            QExpr::Const(Rational::from_integer((-1).into())),
            QExpr::Pow(Box::new(un(QExpr::Product(vec![f1.clone(), f2.clone()]))), 2),
        ]),
    ])
}

/// How a proof line is obtained. Line references are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// `f² ≥ 0`.
    A1(QExpr),
    /// `cs_instance(f1, f2, T) ≥ 0`.
    A2(QExpr, QExpr, BTreeSet<Label>),
    /// `a·f_i + b·f_j ≥ 0` for `a, b ≥ 0`.
    R1 { i: usize, j: usize, a: Rational, b: Rational },
    /// `f_i·f_j ≥ 0`.
    R2 { i: usize, j: usize },
    /// `⟦f_i⟧_T ≥ 0`.
    R3 { i: usize, t: BTreeSet<Label> },
}

/// A statement `statement ≥ 0` with its justification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub statement: QExpr,
    pub by: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CsProof {
    pub lines: Vec<ProofLine>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// `line` is 1-based; `0` means the final conclusion differs from the claim.
    Rejected { line: usize, reason: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Checks every line syntactically (equality in normal form) and that the
/// last statement is `claimed`.
pub fn check_cs_proof(proof: &CsProof, claimed: &QuantumGraph) -> Result<Verdict, CertError> {
    if proof.lines.is_empty() {
        return Err(CertError::EmptyProof);
    }
    let budget = DEFAULT_EXPANSION_BUDGET;
    let mut proved: Vec<QuantumGraph> = Vec::with_capacity(proof.lines.len());
    for (idx, line) in proof.lines.iter().enumerate() {
        let n = idx + 1;
        let cite = |c: usize| -> Result<&QuantumGraph, CertError> {
            if c == 0 || c >= n {
                return Err(CertError::BadReference { line: n, cited: c });
            }
            Ok(&proved[c - 1])
        };
        let expected = match &line.by {
            Justification::A1(f) => QExpr::Pow(Box::new(f.clone()), 2).expand(budget)?,
            Justification::A2(f1, f2, t) => cs_instance(f1, f2, t).expand(budget)?,
            Justification::R1 { i, j, a, b } => {
                let (fi, fj) = (cite(*i)?, cite(*j)?);
                if a.is_negative() || b.is_negative() {
                    return Ok(Verdict::Rejected { line: n, reason: "R1 needs nonnegative coefficients".into() });
                }
                &fi.scale(a) + &fj.scale(b)
            }
            Justification::R2 { i, j } => cite(*i)?.product(cite(*j)?)?,
            Justification::R3 { i, t } => cite(*i)?.unlabel(t),
        };
        let stated = line.statement.expand(budget)?;
        if stated != expected {
            return Ok(Verdict::Rejected { line: n, reason: "statement does not match its justification".into() });
        }
        proved.push(stated);
    }
    if proved.last() != Some(claimed) {
        return Ok(Verdict::Rejected { line: 0, reason: "last line is not the claimed statement".into() });
    }
    Ok(Verdict::Accepted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ind;
    use crate::density::t_expr_graph;
    use crate::graphs::{Graph, Plg};
    use crate::rat;

    fn pendant() -> Plg {
        Plg::new(Graph::complete(2).unwrap(), [(1, 0)]).unwrap()
    }

    #[test]
    fn path_proof() {
        let p3 = QuantumGraph::from_plg(&Plg::unlabeled(Graph::path(3).unwrap()));
        let f = QExpr::Atom(pendant());
        let sq = QExpr::Pow(Box::new(f.clone()), 2);
        let proof = CsProof {
            lines: vec![
                ProofLine { statement: sq, by: Justification::A1(f.clone()) },
                ProofLine { statement: QExpr::from(&p3), by: Justification::R3 { i: 1, t: BTreeSet::new() } },
            ],
        };
        assert_eq!(check_cs_proof(&proof, &p3).unwrap(), Verdict::Accepted);
        let mut bad = proof.clone();
        bad.lines[1].by = Justification::R3 { i: 2, t: BTreeSet::new() };
        assert!(matches!(check_cs_proof(&bad, &p3), Err(CertError::BadReference { line: 2, cited: 2 })));
        let mut neg = proof.clone();
        neg.lines.push(ProofLine {
            statement: QExpr::scaled(rat(-1, 1), QExpr::from(&p3)),
            by: Justification::R1 { i: 2, j: 2, a: rat(-1, 1), b: rat(0, 1) },
        });
        assert!(!check_cs_proof(&neg, &p3.scale(&rat(-1, 1))).unwrap().is_accepted());
    }

    #[test]
    fn ind_from_square() {
        let h = Plg::new(Graph::path(3).unwrap(), [(1, 1)]).unwrap();
        let full = Plg::new(Graph::path(3).unwrap(), [(1, 1), (2, 0), (3, 2)]).unwrap();
        let target = ind(&h).unwrap();
        let proof = CsProof {
            lines: vec![
                ProofLine { statement: QExpr::Pow(Box::new(QExpr::IndAtom(full.clone())), 2), by: Justification::A1(QExpr::IndAtom(full)) },
                ProofLine { statement: QExpr::IndAtom(h), by: Justification::R3 { i: 1, t: [1].into() } },
            ],
        };
        assert!(check_cs_proof(&proof, &target).unwrap().is_accepted());
    }

    #[test]
    fn cs_values() {
        let f = QExpr::Atom(pendant());
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(t_expr_graph(&cs_instance(&f, &f, &BTreeSet::new()), &k3).unwrap(), rat(0, 1));
        let non = QExpr::Atom(Plg::new(Graph::empty(2).unwrap(), [(1, 0)]).unwrap());
        assert!(t_expr_graph(&cs_instance(&f, &non, &BTreeSet::new()), &k3).unwrap() >= rat(0, 1));
    }
}
