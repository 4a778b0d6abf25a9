mod common;

use common::*;
use homdens::density::{t, t_graph, t_quantum, RootMap, WeightedGraph};
use homdens::algebra::QuantumGraph;
use homdens::graphs::*;
use homdens::reductions::exact_embeddings;
use proptest::prelude::*;

fn permute_unlabeled(p: &Plg, seed: &[usize]) -> Plg {
    // a permutation of the unlabeled vertices from a seed vector
    let mut un = p.unlabeled_vertices();
    let mut perm: Vec<usize> = (0..p.order()).collect();
    let orig = un.clone();
    for (i, s) in seed.iter().enumerate().take(un.len()) {
        let j = s % un.len();
        un.swap(i, j);
    }
    for (a, b) in orig.iter().zip(&un) {
        perm[*a] = *b;
    }
    Plg::new(p.graph().relabel(&perm), p.labels().iter().map(|&(l, v)| (l, perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_invariant(p in plg_strategy(7, 2), seed in proptest::collection::vec(0usize..16, 7)) {
        let q = permute_unlabeled(&p, &seed);
        let cp = canonical_form(&p).plg;
        prop_assert_eq!(&cp, &canonical_form(&q).plg);
        prop_assert_eq!(&canonical_form(&cp).plg, &cp);
        prop_assert!(is_isomorphic_labeled(&p, &q));
    }

    #[test]
    fn blowup_reproduces_weighted_densities(g in graph_strategy(4), h in graph_strategy(4), w in weights_strategy(4)) {
        let w = &w[..g.order()];
        let counts: Vec<usize> = w.iter().map(|&x| x as usize).collect();
        let blown = independent_blowup(&g, &counts).unwrap();
        let wg = WeightedGraph::from_counts(g.clone(), w).unwrap();
        let f = QuantumGraph::from_plg(&Plg::unlabeled(h.clone()));
        prop_assert_eq!(t_quantum(&f, &wg, &RootMap::empty()).unwrap(), t(&h, &blown).unwrap());
        prop_assert_eq!(t_graph(&f, &blown).unwrap(), t(&h, &blown).unwrap());
    }
}

#[test]
fn stringent_for_small_k() {
    for k in 6..=9 {
        let h = stringent_graph(k).unwrap();
        assert!(is_stringent(&h).unwrap(), "k={k}");
        assert!(homogeneous_sets(&h).unwrap().is_empty());
        assert_eq!(automorphisms(&h).unwrap().len(), 1);
    }
}

#[test]
fn witness_embeddings_respect_cliques() {
    let h = stringent_graph(6).unwrap();
    let (g, classes) = clique_blowup_with_classes(&h, &[3, 1, 1, 1, 1, 1]).unwrap();
    assert_eq!(g.order(), 8);
    let maps = exact_embeddings(&h, &g);
    assert_eq!(maps.len(), 3);
    for m in maps {
        for j in 0..6 {
            assert!(classes[j].contains(&m.get(j as Label + 1).unwrap()));
        }
    }
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = (0..=6).map(|n| enumerate_graphs(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
}
