use std::fmt;

use super::GraphError;

/// Largest vertex count a [`Graph`] can hold. Adjacency rows are `u128` bitsets.
pub const MAX_VERTICES: usize = 128;

/// A simple finite graph on vertices `0..n`.
///
/// Adjacency is stored as one bitset row per vertex, so neighbourhood
/// intersections used by the density evaluators are single `&` operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u128>,
}

/// Iterates over the set bits of a row.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices. `Graph::empty(0)` is the graph with no vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.rows[v] = all & !(1u128 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::new(n, &edges)
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u128>) -> Self {
        debug_assert_eq!(rows.len(), n);
        Graph { n, rows }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.rows[u] |= 1u128 << v;
        self.rows[v] |= 1u128 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.rows[u] &= !(1u128 << v);
        self.rows[v] &= !(1u128 << u);
        Ok(())
    }

    pub(crate) fn set_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1u128 << v;
        self.rows[v] |= 1u128 << u;
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.rows[u] >> v) & 1 == 1
    }

    /// Neighbourhood of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> u128 {
        self.rows[v]
    }

    pub(crate) fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.rows[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Unordered pairs of distinct vertices that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.rows[v] == 0
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph { n: vertices.len(), rows: vec![0; vertices.len()] };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.rows[i] |= 1u128 << j;
                }
            }
        }
        g
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut rows = vec![0u128; self.n];
        for u in 0..self.n {
            let mut r = 0u128;
            for v in bits(self.rows[u]) {
                r |= 1u128 << perm[v];
            }
            rows[perm[u]] = r;
        }
        Graph { n: self.n, rows }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_constructors() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(Graph::path(4).unwrap().edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(Graph::cycle(4).unwrap().edge_count(), 4);
        assert!(Graph::empty(0).unwrap().is_empty());
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(Graph::new(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
        assert!(Graph::empty(129).is_err());
    }

    #[test]
    fn relabel_and_induced() {
        let p3 = Graph::path(3).unwrap();
        let r = p3.relabel(&[1, 0, 2]);
        assert_eq!(r.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(p3.induced(&[0, 2]).edge_count(), 0);
        let full = Graph::complete(128).unwrap();
        assert_eq!(full.degree(127), 127);
    }
}
