#![allow(dead_code)]

use homdens::density::RootMap;
use homdens::graphs::{enumerate_graphs, Graph, Label, Plg};
use homdens::Rational;
use proptest::prelude::*;

pub fn rat(a: i64, b: i64) -> Rational {
    homdens::rat(a, b)
}

/// Nonempty graphs up to isomorphism with `1..=n` vertices.
pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(|k| enumerate_graphs(k).unwrap()).collect()
}

/// Supergraphs of `p` on the same vertex set (same labels), with the number of added edges.
pub fn supergraphs(p: &Plg) -> Vec<(Plg, usize)> {
    let non = p.graph().non_edges();
    (0u64..1 << non.len())
        .map(|mask| {
            let mut g = p.graph().clone();
            for (i, &(a, b)) in non.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(a, b).unwrap();
                }
            }
            (Plg::new(g, p.labels().iter().copied()).unwrap(), mask.count_ones() as usize)
        })
        .collect()
}

/// Every map from `labels` to `0..n`.
pub fn all_root_maps(labels: &[Label], n: usize) -> Vec<RootMap> {
    let mut out = vec![RootMap::empty()];
    for &l in labels {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..n).map(move |v| {
                    let mut m = m.clone();
                    m.insert(l, v);
                    m
                })
            })
            .collect();
    }
    out
}

pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut it = bits.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            g
        })
    })
}

/// A graph with up to `max_n` vertices, the first `labels` of them labeled `1..=labels`.
pub fn plg_strategy(max_n: usize, labels: usize) -> impl Strategy<Value = Plg> {
    graph_strategy(max_n).prop_filter_map("enough vertices", move |g| {
        if g.order() < labels {
            return None;
        }
        Some(Plg::new(g, (0..labels).map(|i| (i as Label + 1, i))).unwrap())
    })
}

/// Positive integer vertex weights for an `n`-vertex graph.
pub fn weights_strategy(n: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(1u64..=5, n)
}

/// `ind(h)` derived as the unlabeled square of `ind(h')` with `h'` the full
/// labeling of `h` (fresh labels from 100 on).
pub fn ind_proof(h: &Plg) -> homdens::certificates::CsProof {
    use homdens::algebra::QExpr;
    use homdens::certificates::{CsProof, Justification, ProofLine};
    let mut labels = h.labels().to_vec();
    labels.extend(h.unlabeled_vertices().into_iter().enumerate().map(|(i, v)| (100 + i as Label, v)));
    let full = QExpr::IndAtom(Plg::new(h.graph().clone(), labels).unwrap());
    CsProof {
        lines: vec![
            ProofLine { statement: QExpr::Pow(Box::new(full.clone()), 2), by: Justification::A1(full) },
            ProofLine { statement: QExpr::IndAtom(h.clone()), by: Justification::R3 { i: 1, t: h.label_set() } },
        ],
    }
}
