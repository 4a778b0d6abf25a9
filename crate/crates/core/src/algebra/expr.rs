use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};

use super::{ind, AlgebraError, QuantumGraph};
use crate::graphs::{Label, Plg};
use crate::Rational;

/// An unexpanded quantum-graph expression.
///
/// `IndAtom` stands for `ind(H)` and is only expanded on request; `Pow`
/// keeps repeated factors shared. Evaluation lives in [`crate::density`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QExpr {
    Const(Rational),
    Atom(Plg),
    IndAtom(Plg),
    Sum(Vec<QExpr>),
    Product(Vec<QExpr>),
    Pow(Box<QExpr>, u32),
    Unlabel(BTreeSet<Label>, Box<QExpr>),
}

/// Adjacency requirements on the images of labeled vertices: any root map
/// violating them gives the expression value 0. `true` requires an edge,
/// `false` a non-edge (or a shared image).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactConstraint {
    pub pairs: BTreeMap<(Label, Label), bool>,
}

impl ExactConstraint {
    fn from_plg(p: &Plg, edges_only: bool) -> Self {
        let mut pairs = BTreeMap::new();
        let labs = p.labels();
        for (i, &(a, u)) in labs.iter().enumerate() {
            for &(b, v) in &labs[i + 1..] {
                let adj = p.graph().has_edge(u, v);
                if adj || !edges_only {
                    pairs.insert((a, b), adj);
                }
            }
        }
        ExactConstraint { pairs }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn merge(&mut self, other: &ExactConstraint) {
        for (k, &v) in &other.pairs {
            self.pairs.entry(*k).or_insert(v);
        }
    }

    fn intersect(&self, other: &ExactConstraint) -> ExactConstraint {
        ExactConstraint {
            pairs: self.pairs.iter().filter(|(k, v)| other.pairs.get(k) == Some(v)).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    fn restrict(&self, keep: &BTreeSet<Label>) -> ExactConstraint {
        ExactConstraint {
            pairs: self.pairs.iter().filter(|((a, b), _)| keep.contains(a) && keep.contains(b)).map(|(k, v)| (*k, *v)).collect(),
        }
    }
}

impl QExpr {
    pub fn constant(c: Rational) -> Self {
        QExpr::Const(c)
    }

    pub fn scaled(c: Rational, e: QExpr) -> Self {
        QExpr::Product(vec![QExpr::Const(c), e])
    }

    pub fn unlabel_all(e: QExpr) -> Self {
        QExpr::Unlabel(BTreeSet::new(), Box::new(e))
    }

    /// Labels that a root map must cover to evaluate this expression.
    pub fn labels(&self) -> BTreeSet<Label> {
        match self {
            QExpr::Const(_) => BTreeSet::new(),
            QExpr::Atom(p) | QExpr::IndAtom(p) => p.label_set(),
            QExpr::Sum(xs) | QExpr::Product(xs) => xs.iter().flat_map(|x| x.labels()).collect(),
            QExpr::Pow(x, k) => {
                if *k == 0 {
                    BTreeSet::new()
                } else {
                    x.labels()
                }
            }
            QExpr::Unlabel(t, x) => x.labels().intersection(t).copied().collect(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            QExpr::Const(_) | QExpr::Atom(_) | QExpr::IndAtom(_) => 1,
            QExpr::Sum(xs) | QExpr::Product(xs) => 1 + xs.iter().map(QExpr::size).sum::<usize>(),
            QExpr::Pow(x, _) | QExpr::Unlabel(_, x) => 1 + x.size(),
        }
    }

    /// Conditions on root maps outside of which the value is 0.
    pub fn exact_constraint(&self) -> ExactConstraint {
        match self {
            QExpr::Const(_) => ExactConstraint::default(),
            QExpr::Atom(p) => ExactConstraint::from_plg(p, true),
            QExpr::IndAtom(p) => ExactConstraint::from_plg(p, false),
            QExpr::Sum(xs) => {
                let mut it = xs.iter();
                match it.next() {
                    None => ExactConstraint::default(),
                    Some(first) => {
                        let mut c = first.exact_constraint();
                        for x in it {
                            if c.is_empty() {
                                break;
                            }
                            c = c.intersect(&x.exact_constraint());
                        }
                        c
                    }
                }
            }
            QExpr::Product(xs) => {
                let mut c = ExactConstraint::default();
                for x in xs {
                    c.merge(&x.exact_constraint());
                }
                c
            }
            QExpr::Pow(x, k) => {
                if *k == 0 {
                    ExactConstraint::default()
                } else {
                    x.exact_constraint()
                }
            }
            QExpr::Unlabel(t, x) => x.exact_constraint().restrict(t),
        }
    }

    /// Fully expands into a normalized quantum graph, failing once an
    /// intermediate result would exceed `budget` terms.
    pub fn expand(&self, budget: usize) -> Result<QuantumGraph, AlgebraError> {
        let check = |q: QuantumGraph| {
            if q.len() > budget {
                Err(AlgebraError::ExpansionBudget { terms: q.len(), budget })
            } else {
                Ok(q)
            }
        };
        match self {
            QExpr::Const(c) => Ok(QuantumGraph::constant(c.clone())),
            QExpr::Atom(p) => Ok(QuantumGraph::from_plg(p)),
            QExpr::IndAtom(p) => check(ind(p)?),
            QExpr::Sum(xs) => {
                let mut acc = QuantumGraph::zero();
                for x in xs {
                    acc = check(&acc + &x.expand(budget)?)?;
                }
                Ok(acc)
            }
            QExpr::Product(xs) => {
                let mut acc = QuantumGraph::one();
                for x in xs {
                    let f = x.expand(budget)?;
                    if acc.len().saturating_mul(f.len()) > budget.saturating_mul(64) {
                        return Err(AlgebraError::ExpansionBudget { terms: acc.len() * f.len(), budget });
                    }
                    acc = check(acc.product(&f)?)?;
                }
                Ok(acc)
            }
            QExpr::Pow(x, k) => {
                let f = x.expand(budget)?;
                let mut acc = QuantumGraph::one();
                for _ in 0..*k {
                    acc = check(acc.product(&f)?)?;
                }
                Ok(acc)
            }
            QExpr::Unlabel(t, x) => Ok(x.expand(budget)?.unlabel(t)),
        }
    }
}

impl From<&QuantumGraph> for QExpr {
    fn from(q: &QuantumGraph) -> Self {
        QExpr::Sum(
            q.terms()
                .map(|(p, c)| {
                    if c.is_one() {
                        QExpr::Atom(p.clone())
                    } else {
                        QExpr::scaled(c.clone(), QExpr::Atom(p.clone()))
                    }
                })
                .collect(),
        )
    }
}

impl QExpr {
    /// `true` for `Const(0)` and empty sums; a cheap syntactic check.
    pub fn is_trivially_zero(&self) -> bool {
        match self {
            QExpr::Const(c) => c.is_zero(),
            QExpr::Sum(xs) => xs.iter().all(QExpr::is_trivially_zero),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    #[test]
    fn constraint_inference() {
        let k2 = Plg::fully_labeled(Graph::complete(2).unwrap());
        let e2 = Plg::fully_labeled(Graph::empty(2).unwrap());
        let a = QExpr::IndAtom(k2.clone());
        assert!(a.exact_constraint().pairs[&(1, 2)]);
        let s = QExpr::Sum(vec![QExpr::IndAtom(k2.clone()), QExpr::IndAtom(e2.clone())]);
        assert!(s.exact_constraint().is_empty());
        let p = QExpr::Product(vec![QExpr::Const(Rational::one()), QExpr::IndAtom(e2)]);
        assert!(!p.exact_constraint().pairs[&(1, 2)]);
        let u = QExpr::Unlabel([1].into(), Box::new(a));
        assert!(u.exact_constraint().is_empty());
        assert_eq!(u.labels(), [1].into());
    }

    #[test]
    fn expansion_matches_direct_algebra() {
        let pendant = Plg::new(Graph::complete(2).unwrap(), [(1, 0)]).unwrap();
        let e = QExpr::unlabel_all(QExpr::Pow(Box::new(QExpr::Atom(pendant)), 2));
        let p3 = QuantumGraph::from_plg(&Plg::unlabeled(Graph::path(3).unwrap()));
        assert_eq!(e.expand(100).unwrap(), p3);
        let big = QExpr::IndAtom(Plg::unlabeled(Graph::empty(5).unwrap()));
        assert!(big.expand(3).is_err());
        assert_eq!(QExpr::from(&p3).expand(10).unwrap(), p3);
    }
}
