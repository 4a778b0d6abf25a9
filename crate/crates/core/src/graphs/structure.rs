use super::canon::{automorphisms_with_cap, DEFAULT_STRUCTURE_CAP};
use super::graph::{bits, full_mask, Graph, MAX_VERTICES};
use super::GraphError;

/// Which reading of the homogeneous-set condition to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Homogeneity {
    /// Every two members have the same neighbourhood outside the set.
    #[default]
    SameOutside,
    /// Every two members have *different* neighbourhoods outside the set.
    /// This is the condition as literally printed in the source; it is kept
    /// for auditing and is not used by [`is_stringent`].
    DistinctOutside,
}

/// All vertex sets `W` with `1 < |W| <= n - 1` that are homogeneous in `g`,
/// as sorted vertex lists, in increasing bitmask order.
pub fn homogeneous_sets(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    homogeneous_sets_with(g, Homogeneity::SameOutside, DEFAULT_STRUCTURE_CAP)
}

pub fn homogeneous_sets_with(g: &Graph, rule: Homogeneity, cap: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    let n = g.order();
    if n > cap {
        return Err(GraphError::CapExceeded { what: "homogeneous sets", n, cap });
    }
    let mut out = Vec::new();
    for w in 0u128..(1u128 << n) {
        let size = w.count_ones() as usize;
        if size < 2 || size + 1 > n {
            continue;
        }
        let members: Vec<usize> = bits(w).collect();
        let mut ok = true;
        'pairs: for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                let same = g.row(u) & !w == g.row(v) & !w;
                let holds = match rule {
                    Homogeneity::SameOutside => same,
                    Homogeneity::DistinctOutside => !same,
                };
                if !holds {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            out.push(members);
        }
    }
    Ok(out)
}

/// No homogeneous set of size between 2 and `n - 1`, and no non-trivial automorphism.
pub fn is_stringent(g: &Graph) -> Result<bool, GraphError> {
    if !homogeneous_sets(g)?.is_empty() {
        return Ok(false);
    }
    Ok(automorphisms_with_cap(g, DEFAULT_STRUCTURE_CAP)?.len() == 1)
}

/// Triangle `v1 v2 v3`, path `v3 v4 ... vk`, then `vk` joined to `v2` and `v3`.
/// Vertex `v_i` is index `i - 1`.
pub fn stringent_graph(k: usize) -> Result<Graph, GraphError> {
    if k < 6 {
        return Err(GraphError::StringentTooSmall(k));
    }
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    edges.extend((2..k - 1).map(|i| (i, i + 1)));
    edges.push((k - 1, 1));
    edges.push((k - 1, 2));
    Graph::new(k, &edges)
}

fn blowup(g: &Graph, counts: &[usize], cliques: bool) -> Result<(Graph, Vec<Vec<usize>>), GraphError> {
    if counts.len() != g.order() {
        return Err(GraphError::CountsLength { expected: g.order(), got: counts.len() });
    }
    if let Some(v) = counts.iter().position(|&c| c == 0) {
        return Err(GraphError::ZeroCount(v));
    }
    let total: usize = counts.iter().sum();
    if total > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(total));
    }
    let mut classes = Vec::with_capacity(g.order());
    let mut next = 0;
    for &c in counts {
        classes.push((next..next + c).collect::<Vec<_>>());
        next += c;
    }
    let masks: Vec<u128> = classes.iter().map(|c| c.iter().fold(0u128, |m, &v| m | (1u128 << v))).collect();
    let mut rows = vec![0u128; total];
    for u in 0..g.order() {
        let mut r = 0u128;
        for v in g.neighbors(u) {
            r |= masks[v];
        }
        for &x in &classes[u] {
            rows[x] = r;
            if cliques {
                rows[x] |= masks[u] & !(1u128 << x);
            }
        }
    }
    debug_assert!(rows.iter().all(|r| r & !full_mask(total) == 0));
    Ok((Graph::from_rows(total, rows), classes))
}

/// Replaces each vertex `v` by `counts[v]` pairwise non-adjacent copies.
pub fn independent_blowup(g: &Graph, counts: &[usize]) -> Result<Graph, GraphError> {
    Ok(blowup(g, counts, false)?.0)
}

/// Replaces each vertex `v` by a clique on `counts[v]` copies.
pub fn clique_blowup(g: &Graph, counts: &[usize]) -> Result<Graph, GraphError> {
    Ok(blowup(g, counts, true)?.0)
}

/// Like [`clique_blowup`], also returning the vertex class of each original vertex.
pub fn clique_blowup_with_classes(g: &Graph, counts: &[usize]) -> Result<(Graph, Vec<Vec<usize>>), GraphError> {
    blowup(g, counts, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::canonical_graph;

    #[test]
    fn homogeneous_sets_of_small_graphs() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(homogeneous_sets(&k3).unwrap(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(homogeneous_sets(&e3).unwrap().len(), 3);
        // literal reading: no pair in K3 has distinct outside neighbourhoods
        assert!(homogeneous_sets_with(&k3, Homogeneity::DistinctOutside, 10).unwrap().is_empty());
    }

    #[test]
    fn stringent_graph_shape() {
        let h = stringent_graph(6).unwrap();
        let one_based: Vec<_> = h.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect();
        assert_eq!(one_based, vec![(1, 2), (1, 3), (2, 3), (2, 6), (3, 4), (3, 6), (4, 5), (5, 6)]);
        assert_eq!(stringent_graph(7).unwrap().edge_count(), 9);
        assert_eq!(stringent_graph(5), Err(GraphError::StringentTooSmall(5)));
    }

    #[test]
    fn stringency() {
        let h = stringent_graph(6).unwrap();
        assert!(homogeneous_sets(&h).unwrap().is_empty());
        assert!(is_stringent(&h).unwrap());
        assert!(is_stringent(&stringent_graph(7).unwrap()).unwrap());
        assert!(!is_stringent(&Graph::complete(3).unwrap()).unwrap());
        assert!(is_stringent(&Graph::empty(1).unwrap()).unwrap());
    }

    #[test]
    fn blowups() {
        let k2 = Graph::complete(2).unwrap();
        let c4 = independent_blowup(&k2, &[2, 2]).unwrap();
        assert_eq!(canonical_graph(&c4), canonical_graph(&Graph::cycle(4).unwrap()));
        assert_eq!(clique_blowup(&k2, &[2, 1]).unwrap(), Graph::complete(3).unwrap());
        assert_eq!(independent_blowup(&Graph::empty(1).unwrap(), &[3]).unwrap(), Graph::empty(3).unwrap());
        let h = stringent_graph(6).unwrap();
        assert_eq!(clique_blowup(&h, &[1; 6]).unwrap(), h);
        let w = clique_blowup(&h, &[3, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.edge_count(), 3 + 2 * 3 + 6);
        assert!(independent_blowup(&k2, &[1]).is_err());
        assert!(clique_blowup(&k2, &[1, 0]).is_err());
    }
}
