use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use super::DensityError;
use crate::graphs::{Graph, Label};
use crate::Rational;

/// A graph with a rational probability distribution on its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    y: Vec<Rational>,
    // y_v = ints[v] / denom
    ints: Vec<BigUint>,
    denom: BigUint,
    small: Option<Vec<u128>>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, y: Vec<Rational>) -> Result<Self, DensityError> {
        if y.len() != graph.order() {
            return Err(DensityError::InvalidWeights(format!("{} weights for {} vertices", y.len(), graph.order())));
        }
        if let Some(bad) = y.iter().find(|x| x.is_negative()) {
            return Err(DensityError::InvalidWeights(format!("negative weight {bad}")));
        }
        let total: Rational = y.iter().fold(Rational::zero(), |s, x| s + x);
        if !total.is_one() {
            return Err(DensityError::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        let denom: BigInt = y.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigUint> = y
            .iter()
            .map(|x| (x.numer() * (&denom / x.denom())).to_biguint().expect("nonnegative"))
            .collect();
        let small = ints.iter().map(|x| x.to_u128()).collect::<Option<Vec<_>>>();
        Ok(WeightedGraph { graph, y, ints, denom: denom.to_biguint().expect("positive"), small })
    }

    /// The uniform distribution; the graph must be nonempty.
    pub fn uniform(graph: Graph) -> Result<Self, DensityError> {
        let n = graph.order();
        if n == 0 {
            return Err(DensityError::EmptyTarget);
        }
        let y = vec![Rational::new(1.into(), (n as i64).into()); n];
        WeightedGraph::new(graph, y)
    }

    /// Weights proportional to positive or zero integers `w`.
    pub fn from_counts(graph: Graph, w: &[u64]) -> Result<Self, DensityError> {
        let total: u64 = w.iter().sum();
        if total == 0 {
            return Err(DensityError::InvalidWeights("all weights are zero".into()));
        }
        let y = w.iter().map(|&x| Rational::new((x as i64).into(), (total as i64).into())).collect();
        WeightedGraph::new(graph, y)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.y
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_uniform(&self) -> bool {
        self.y.windows(2).all(|p| p[0] == p[1])
    }

    /// Integer weights over the least common denominator.
    pub fn integer_weights(&self) -> (&[BigUint], &BigUint) {
        (&self.ints, &self.denom)
    }

    pub(crate) fn small_weights(&self) -> Option<&[u128]> {
        self.small.as_deref()
    }

    pub(crate) fn support(&self) -> u128 {
        self.y.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0u128, |m, (i, _)| m | (1u128 << i))
    }
}

/// An assignment of target vertices to labels; need not be injective.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMap(pub BTreeMap<Label, usize>);

impl RootMap {
    pub fn new(pairs: impl IntoIterator<Item = (Label, usize)>) -> Self {
        RootMap(pairs.into_iter().collect())
    }

    pub fn empty() -> Self {
        RootMap::default()
    }

    /// Label `i` to vertex `i - 1` for `i` in `1..=k`.
    pub fn identity(k: usize) -> Self {
        RootMap::new((1..=k).map(|i| (i as Label, i - 1)))
    }

    pub fn get(&self, label: Label) -> Option<usize> {
        self.0.get(&label).copied()
    }

    pub fn domain(&self) -> BTreeSet<Label> {
        self.0.keys().copied().collect()
    }

    pub fn restrict(&self, labels: &BTreeSet<Label>) -> RootMap {
        RootMap(self.0.iter().filter(|(l, _)| labels.contains(l)).map(|(&l, &v)| (l, v)).collect())
    }

    pub fn insert(&mut self, label: Label, v: usize) {
        self.0.insert(label, v);
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<(), DensityError> {
        match self.0.iter().find(|(_, &v)| v >= n) {
            Some((&l, &v)) => Err(DensityError::RootOutOfRange { label: l, v, n }),
            None => Ok(()),
        }
    }
}
