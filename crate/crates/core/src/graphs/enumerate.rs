use std::collections::BTreeSet;

use super::canon::{canonical_form, canonical_graph};
use super::graph::Graph;
use super::plg::{Label, Plg};
use super::GraphError;

pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// One canonical representative per isomorphism class of graphs on `n` vertices,
/// sorted. Built by vertex augmentation from the classes on `n - 1` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    enumerate_graphs_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_with_cap(n: usize, cap: usize) -> Result<Vec<Graph>, GraphError> {
    if n > cap {
        return Err(GraphError::CapExceeded { what: "graph enumeration", n, cap });
    }
    let mut level = vec![Graph::empty(0)?];
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for g in &level {
            let base = g.disjoint_union(&Graph::empty(1)?)?;
            for nb in 0u128..(1u128 << (m - 1)) {
                let mut h = base.clone();
                for u in super::graph::bits(nb) {
                    h.set_edge_unchecked(u, m - 1);
                }
                next.insert(canonical_graph(&h));
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level)
}

/// All graphs up to `max_n` vertices, smallest first.
pub fn enumerate_graphs_up_to(max_n: usize) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_graphs(n)?);
    }
    Ok(out)
}

/// Partially labeled graphs whose label set is exactly `labels` with at most
/// `max_unlabeled` unlabeled vertices, one per label-preserving isomorphism
/// class (isolated vertices allowed).
pub fn enumerate_plgs(labels: &[Label], max_unlabeled: usize) -> Result<Vec<Plg>, GraphError> {
    let mut labels = labels.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let mut out = BTreeSet::new();
    for u in 0..=max_unlabeled {
        let n = labels.len() + u;
        if n > DEFAULT_ENUMERATION_CAP {
            return Err(GraphError::CapExceeded { what: "labeled graph enumeration", n, cap: DEFAULT_ENUMERATION_CAP });
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        for mask in 0u64..(1u64 << pairs.len()) {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::new(n, &edges)?;
            let plg = Plg::new(g, labels.iter().enumerate().map(|(i, &l)| (l, i)))?;
            out.insert(canonical_form(&plg).plg);
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        assert!(enumerate_graphs(8).is_err());
    }

    #[test]
    fn brute_force_filter_agrees_for_four_vertices() {
        let mut seen = BTreeSet::new();
        for mask in 0u32..64 {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &p)| p).collect();
            seen.insert(canonical_graph(&Graph::new(4, &edges).unwrap()));
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), enumerate_graphs(4).unwrap());
    }

    #[test]
    fn labeled_enumeration() {
        // one label, up to one unlabeled vertex: K1, K1+K1, K2
        assert_eq!(enumerate_plgs(&[1], 1).unwrap().len(), 3);
    }
}
