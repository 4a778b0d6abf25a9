//! Canonical forms for partially labeled graphs.
//!
//! Colour refinement with labeled vertices as fixed singleton cells, followed
//! by individualization and backtracking over the first non-singleton cell.
//! The leaf with the lexicographically smallest relabeled adjacency wins.
//! Branches on structural twins (same neighbourhood outside the pair) are
//! skipped since the transposition of twins is an automorphism fixing
//! everything individualized so far.

use super::graph::{bits, Graph};
use super::plg::Plg;
use super::GraphError;

/// A partially labeled graph in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Canonical representative. Labeled vertices come first, by ascending label.
    pub plg: Plg,
    /// `certificate[v]` is the position of input vertex `v` in `plg`.
    pub certificate: Vec<usize>,
}

fn compress(colors: &mut [u32]) -> usize {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).expect("present") as u32;
    }
    distinct.len()
}

/// Refines `colors` to the coarsest equitable partition finer than it.
/// Cells keep their relative order; split cells are ordered by neighbour-count signature.
fn refine(rows: &[u128], colors: &mut [u32]) -> usize {
    let n = colors.len();
    let mut k = compress(colors);
    loop {
        if k == n {
            return k;
        }
        let mut cell_masks = vec![0u128; k];
        for (v, &c) in colors.iter().enumerate() {
            cell_masks[c as usize] |= 1u128 << v;
        }
        let mut sigs: Vec<(Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut s = Vec::with_capacity(k + 1);
                s.push(colors[v]);
                s.extend(cell_masks.iter().map(|m| (rows[v] & m).count_ones()));
                (s, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                next += 1;
            }
            colors[sigs[i].1] = next;
        }
        let k2 = next as usize + 1;
        if k2 == k {
            return k;
        }
        k = k2;
    }
}

struct Search<'a> {
    rows: &'a [u128],
    best: Option<(Vec<u128>, Vec<usize>)>,
}

impl Search<'_> {
    fn visit(&mut self, mut colors: Vec<u32>) {
        let n = colors.len();
        let k = refine(self.rows, &mut colors);
        if k == n {
            let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let enc = Graph::from_rows(n, self.rows.to_vec()).relabel(&perm);
            let enc = enc.rows().to_vec();
            let better = match &self.best {
                None => true,
                Some((b, _)) => enc < *b,
            };
            if better {
                self.best = Some((enc, perm));
            }
            return;
        }
        let mut counts = vec![0usize; k];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = counts.iter().position(|&c| c > 1).expect("non-discrete") as u32;
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut reps: Vec<usize> = Vec::new();
        for &v in &members {
            let twin = reps.iter().any(|&u| {
                let mask = !((1u128 << u) | (1u128 << v));
                self.rows[u] & mask == self.rows[v] & mask
            });
            if !twin {
                reps.push(v);
            }
        }
        for v in reps {
            let child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| 2 * c + u32::from(c == target && x != v))
                .collect();
            self.visit(child);
        }
    }
}

/// Canonical vertex order for a graph with an initial (isomorphism-invariant) colouring.
/// Returns `perm` with `perm[v]` the canonical position of `v`.
pub(crate) fn canonical_permutation(g: &Graph, initial: Vec<u32>) -> Vec<usize> {
    let mut s = Search { rows: g.rows(), best: None };
    s.visit(initial);
    s.best.expect("at least one leaf").1
}

/// Canonical form of `g`: depends only on the label-preserving isomorphism class.
pub fn canonical_form(g: &Plg) -> CanonicalForm {
    let n = g.order();
    let l = g.labels().len() as u32;
    let mut init = vec![l; n];
    for (i, &(_, v)) in g.labels().iter().enumerate() {
        init[v] = i as u32;
    }
    let perm = canonical_permutation(g.graph(), init);
    let graph = g.graph().relabel(&perm);
    let labels = g.labels().iter().map(|&(lab, v)| (lab, perm[v])).collect();
    CanonicalForm { plg: Plg::from_parts_unchecked(graph, labels), certificate: perm }
}

/// Canonical form of an unlabeled graph.
pub fn canonical_graph(g: &Graph) -> Graph {
    let perm = canonical_permutation(g, vec![0; g.order()]);
    g.relabel(&perm)
}

/// True iff a vertex bijection preserves edges, non-edges and every label.
pub fn is_isomorphic_labeled(a: &Plg, b: &Plg) -> bool {
    a.order() == b.order()
        && a.graph().edge_count() == b.graph().edge_count()
        && a.label_set() == b.label_set()
        && canonical_form(a).plg == canonical_form(b).plg
}

/// Default cap on the vertex count for exhaustive automorphism and subset scans.
pub const DEFAULT_STRUCTURE_CAP: usize = 10;

/// All automorphisms of `g`, each as `perm[v] = image of v`. Always includes the identity.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    automorphisms_with_cap(g, DEFAULT_STRUCTURE_CAP)
}

pub fn automorphisms_with_cap(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    let n = g.order();
    if n > cap {
        return Err(GraphError::CapExceeded { what: "automorphisms", n, cap });
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    fn rec(g: &Graph, v: usize, perm: &mut Vec<usize>, used: u128, out: &mut Vec<Vec<usize>>) {
        let n = g.order();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for w in bits(super::graph::full_mask(n) & !used) {
            if g.degree(w) != g.degree(v) {
                continue;
            }
            let ok = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(perm[u], w));
            if ok {
                perm[v] = w;
                rec(g, v + 1, perm, used | (1u128 << w), out);
            }
        }
        perm[v] = usize::MAX;
    }
    rec(g, 0, &mut perm, 0, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        // all n! bijections
        fn rec(a: &Graph, b: &Graph, v: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if v == a.order() {
                return a.relabel(perm) == *b;
            }
            for w in 0..a.order() {
                if !used[w] {
                    used[w] = true;
                    perm[v] = w;
                    if rec(a, b, v + 1, perm, used) {
                        return true;
                    }
                    used[w] = false;
                }
            }
            false
        }
        a.order() == b.order() && rec(a, b, 0, &mut vec![0; a.order()], &mut vec![false; a.order()])
    }

    #[test]
    fn labeled_path_relabelings_agree() {
        let a = Plg::new(Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), [(1, 1)]).unwrap();
        let b = Plg::new(Graph::new(3, &[(2, 1), (1, 0)]).unwrap(), [(1, 1)]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        let c = Plg::new(Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), [(1, 0)]).unwrap();
        assert_ne!(a.canonical(), c.canonical());
    }

    #[test]
    fn k3_is_canonical_under_any_order() {
        let k3 = Plg::unlabeled(Graph::complete(3).unwrap());
        let other = Plg::unlabeled(Graph::new(3, &[(2, 0), (1, 2), (0, 1)]).unwrap());
        assert_eq!(k3.canonical(), other.canonical());
    }

    #[test]
    fn p4_star_and_c4_are_distinguished_like_brute_force() {
        let p4 = Graph::path(4).unwrap();
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        for (a, b) in [(&p4, &star), (&c4, &p4), (&c4, &star)] {
            assert!(!brute_isomorphic(a, b));
            assert!(!is_isomorphic_labeled(&Plg::unlabeled(a.clone()), &Plg::unlabeled(b.clone())));
        }
        let p4b = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(brute_isomorphic(&p4, &p4b));
        assert_eq!(canonical_graph(&p4), canonical_graph(&p4b));
    }

    #[test]
    fn label_mismatch_is_not_isomorphic() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let a = Plg::new(e.clone(), [(1, 0)]).unwrap();
        let b = Plg::new(e, [(2, 0)]).unwrap();
        assert!(is_isomorphic_labeled(&a, &a));
        assert!(!is_isomorphic_labeled(&a, &b));
    }

    #[test]
    fn certificate_maps_input_to_canonical() {
        let g = Plg::new(Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), [(3, 2)]).unwrap();
        let cf = g.canonical_form();
        assert_eq!(g.graph().relabel(&cf.certificate), *cf.plg.graph());
        assert_eq!(cf.plg.labels(), &[(3, 0)]);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&Graph::complete(3).unwrap()).unwrap().len(), 6);
        assert_eq!(automorphisms(&Graph::path(3).unwrap()).unwrap().len(), 2);
        assert_eq!(automorphisms(&Graph::cycle(5).unwrap()).unwrap().len(), 10);
        assert!(automorphisms(&Graph::empty(11).unwrap()).is_err());
    }

    #[test]
    fn symmetric_graphs_canonicalize_quickly() {
        // K_12 and the edgeless graph exercise the twin pruning.
        let k = Graph::complete(12).unwrap();
        assert_eq!(canonical_graph(&k), k);
        let petersen = Graph::new(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        let shuffled = petersen.relabel(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]);
        assert_eq!(canonical_graph(&petersen), canonical_graph(&shuffled));
    }
}
