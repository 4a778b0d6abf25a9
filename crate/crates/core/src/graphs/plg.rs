use std::collections::BTreeSet;
use std::fmt;

use super::canon::{canonical_form, CanonicalForm};
use super::graph::{bits, Graph, MAX_VERTICES};
use super::GraphError;

/// A label; labels are positive integers.
pub type Label = u32;

/// A graph with an injective partial labeling of its vertices by positive integers.
///
/// `labels` is kept sorted by label. Equality is structural; use
/// [`Plg::canonical`] or [`super::is_isomorphic_labeled`] for equality up to
/// label-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plg {
    graph: Graph,
    labels: Vec<(Label, usize)>,
}

impl Plg {
    pub fn new(graph: Graph, labels: impl IntoIterator<Item = (Label, usize)>) -> Result<Self, GraphError> {
        let mut labels: Vec<(Label, usize)> = labels.into_iter().collect();
        labels.sort_unstable();
        let mut seen = BTreeSet::new();
        for (i, &(lab, v)) in labels.iter().enumerate() {
            if lab == 0 {
                return Err(GraphError::InvalidLabel);
            }
            if i > 0 && labels[i - 1].0 == lab {
                return Err(GraphError::DuplicateLabel(lab));
            }
            if v >= graph.order() {
                return Err(GraphError::VertexOutOfRange { v, n: graph.order() });
            }
            if !seen.insert(v) {
                return Err(GraphError::VertexLabeledTwice(v));
            }
        }
        Ok(Plg { graph, labels })
    }

    pub(crate) fn from_parts_unchecked(graph: Graph, labels: Vec<(Label, usize)>) -> Self {
        Plg { graph, labels }
    }

    /// A graph with no labels.
    pub fn unlabeled(graph: Graph) -> Self {
        Plg { graph, labels: Vec::new() }
    }

    /// Labels vertex `i` with `i + 1` for every vertex.
    pub fn fully_labeled(graph: Graph) -> Self {
        let labels = (0..graph.order()).map(|i| (i as Label + 1, i)).collect();
        Plg { graph, labels }
    }

    /// The empty graph, the multiplicative identity.
    pub fn empty() -> Self {
        Plg::unlabeled(Graph::empty(0).expect("empty graph"))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `(label, vertex)` pairs sorted by label.
    pub fn labels(&self) -> &[(Label, usize)] {
        &self.labels
    }

    pub fn label_set(&self) -> BTreeSet<Label> {
        self.labels.iter().map(|&(l, _)| l).collect()
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn vertex_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().find(|&&(l, _)| l == label).map(|&(_, v)| v)
    }

    pub fn label_of(&self, v: usize) -> Option<Label> {
        self.labels.iter().find(|&&(_, u)| u == v).map(|&(l, _)| l)
    }

    pub fn is_fully_labeled(&self) -> bool {
        self.labels.len() == self.graph.order()
    }

    pub(crate) fn labeled_mask(&self) -> u128 {
        self.labels.iter().fold(0u128, |m, &(_, v)| m | (1u128 << v))
    }

    pub fn unlabeled_vertices(&self) -> Vec<usize> {
        let m = self.labeled_mask();
        (0..self.order()).filter(|v| (m >> v) & 1 == 0).collect()
    }

    /// Subgraph induced by the labeled vertices, vertex `i` carrying the `i`-th smallest label.
    pub fn labeled_core(&self) -> Graph {
        let vs: Vec<usize> = self.labels.iter().map(|&(_, v)| v).collect();
        self.graph.induced(&vs)
    }

    /// Gluing product: disjoint union with equally labeled vertices identified.
    ///
    /// The result lists the union of the label sets first (ascending), then the
    /// unlabeled vertices of `self`, then those of `other`.
    pub fn glue(&self, other: &Plg) -> Result<Plg, GraphError> {
        let mut labs: Vec<Label> = self.labels.iter().chain(other.labels.iter()).map(|&(l, _)| l).collect();
        labs.sort_unstable();
        labs.dedup();
        let ua = self.unlabeled_vertices();
        let ub = other.unlabeled_vertices();
        let n = labs.len() + ua.len() + ub.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut map_a = vec![0usize; self.order()];
        let mut map_b = vec![0usize; other.order()];
        for &(l, v) in &self.labels {
            map_a[v] = labs.binary_search(&l).expect("label present");
        }
        for &(l, v) in &other.labels {
            map_b[v] = labs.binary_search(&l).expect("label present");
        }
        let mut next = labs.len();
        for &v in &ua {
            map_a[v] = next;
            next += 1;
        }
        for &v in &ub {
            map_b[v] = next;
            next += 1;
        }
        let mut rows = vec![0u128; n];
        for (g, map) in [(&self.graph, &map_a), (&other.graph, &map_b)] {
            for u in 0..g.order() {
                let mut r = 0u128;
                for v in bits(g.row(u)) {
                    r |= 1u128 << map[v];
                }
                rows[map[u]] |= r;
            }
        }
        let labels = labs.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Ok(Plg { graph: Graph::from_rows(n, rows), labels })
    }

    /// Forgets every label not in `keep`.
    pub fn unlabel(&self, keep: &BTreeSet<Label>) -> Plg {
        Plg {
            graph: self.graph.clone(),
            labels: self.labels.iter().copied().filter(|(l, _)| keep.contains(l)).collect(),
        }
    }

    /// Removes every isolated vertex, labeled or not.
    pub fn without_isolated(&self) -> Plg {
        let keep: Vec<usize> = (0..self.order()).filter(|&v| !self.graph.is_isolated(v)).collect();
        if keep.len() == self.order() {
            return self.clone();
        }
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let labels = self
            .labels
            .iter()
            .filter(|&&(_, v)| pos[v] != usize::MAX)
            .map(|&(l, v)| (l, pos[v]))
            .collect();
        Plg { graph: self.graph.induced(&keep), labels }
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.order()).any(|v| self.graph.is_isolated(v))
    }

    /// Adds a new isolated vertex carrying `label` (which must be unused).
    pub fn with_isolated_label(&self, label: Label) -> Result<Plg, GraphError> {
        if label == 0 {
            return Err(GraphError::InvalidLabel);
        }
        if self.vertex_of(label).is_some() {
            return Err(GraphError::DuplicateLabel(label));
        }
        let g = self.graph.disjoint_union(&Graph::empty(1)?)?;
        let mut labels = self.labels.clone();
        labels.push((label, self.order()));
        labels.sort_unstable();
        Ok(Plg { graph: g, labels })
    }

    /// Replaces the labeled-core edges: labeled pair `(i, j)` (indices into
    /// `labels()`) is adjacent iff it is adjacent in `core`.
    pub(crate) fn with_core(&self, core: &Graph) -> Plg {
        let mut g = self.graph.clone();
        for i in 0..self.labels.len() {
            for j in (i + 1)..self.labels.len() {
                let (u, v) = (self.labels[i].1, self.labels[j].1);
                if core.has_edge(i, j) {
                    g.set_edge_unchecked(u, v);
                } else {
                    let _ = g.remove_edge(u, v);
                }
            }
        }
        Plg { graph: g, labels: self.labels.clone() }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn canonical(&self) -> Plg {
        canonical_form(self).plg
    }
}

impl fmt::Debug for Plg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plg(n={}, labels={:?}, edges={:?})", self.order(), self.labels, self.graph.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pendant_edge() -> Plg {
        Plg::new(Graph::new(2, &[(0, 1)]).unwrap(), [(1, 0)]).unwrap()
    }

    #[test]
    fn rejects_bad_labelings() {
        let g = Graph::empty(2).unwrap();
        assert_eq!(Plg::new(g.clone(), [(0, 0)]), Err(GraphError::InvalidLabel));
        assert_eq!(Plg::new(g.clone(), [(1, 0), (1, 1)]), Err(GraphError::DuplicateLabel(1)));
        assert_eq!(Plg::new(g, [(1, 0), (2, 0)]), Err(GraphError::VertexLabeledTwice(0)));
    }

    #[test]
    fn glue_identifies_labels() {
        let e = pendant_edge();
        let sq = e.glue(&e).unwrap();
        assert_eq!(sq.order(), 3);
        assert_eq!(sq.graph().edge_count(), 2);
        assert_eq!(sq.graph().degree(sq.vertex_of(1).unwrap()), 2);

        let full = Plg::fully_labeled(Graph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(full.glue(&full).unwrap(), full);
    }

    #[test]
    fn isolated_removal_drops_labels() {
        let p = Plg::new(Graph::new(3, &[(1, 2)]).unwrap(), [(1, 0), (2, 1)]).unwrap();
        let q = p.without_isolated();
        assert_eq!(q.order(), 2);
        assert_eq!(q.label_set(), BTreeSet::from([2]));
    }
}
