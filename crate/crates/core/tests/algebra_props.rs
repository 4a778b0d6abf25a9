mod common;

use std::collections::BTreeSet;

use common::*;
use homdens::algebra::{ind, QuantumGraph};
use homdens::graphs::{enumerate_plgs, Label, Plg};
use proptest::prelude::*;

fn plgs_up_to(labels: &[Label], max_vertices: usize) -> Vec<Plg> {
    enumerate_plgs(labels, max_vertices - labels.len()).unwrap()
}

#[test]
fn orthogonality() {
    for labels in [vec![1], vec![1, 2]] {
        let ps = plgs_up_to(&labels, 4);
        let inds: Vec<QuantumGraph> = ps.iter().map(|p| ind(p).unwrap()).collect();
        for (i, a) in ps.iter().enumerate() {
            for (j, b) in ps.iter().enumerate().skip(i) {
                let prod = inds[i].product(&inds[j]).unwrap();
                if a.labeled_core() != b.labeled_core() {
                    assert!(prod.is_zero(), "{a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn fully_labeled_ind_is_idempotent() {
    for n in 1..=4 {
        let labels: Vec<Label> = (1..=n as Label).collect();
        for p in enumerate_plgs(&labels, 0).unwrap() {
            let f = ind(&p).unwrap();
            assert_eq!(f.product(&f).unwrap(), f);
        }
    }
}

#[test]
fn ind_is_unlabeled_square() {
    for k in 0..=4usize {
        let labels: Vec<Label> = (1..=k as Label).collect();
        for h in plgs_up_to(&labels, 4) {
            let extra = h.unlabeled_vertices();
            let mut lab: Vec<(Label, usize)> = h.labels().to_vec();
            lab.extend(extra.iter().enumerate().map(|(i, &v)| (10 + i as Label, v)));
            let full = Plg::new(h.graph().clone(), lab).unwrap();
            let sq = ind(&full).unwrap().pow(2).unwrap();
            let t: BTreeSet<Label> = labels.iter().copied().collect();
            assert_eq!(sq.unlabel(&t), ind(&h).unwrap(), "{h:?}");
        }
    }
}

#[test]
fn mobius_round_trip() {
    for k in 0..=2usize {
        let labels: Vec<Label> = (1..=k as Label).collect();
        for h in plgs_up_to(&labels, 4) {
            let mut total = QuantumGraph::zero();
            for (f, _) in supergraphs(&h) {
                total = &total + &ind(&f).unwrap();
            }
            assert_eq!(total, QuantumGraph::from_plg(&h));
            // and back: ind(h) = Σ (−1)^{added} F
            let mut alt = QuantumGraph::zero();
            for (f, added) in supergraphs(&h) {
                let sign = if added % 2 == 0 { 1 } else { -1 };
                alt = &alt + &QuantumGraph::term(&f, rat(sign, 1));
            }
            assert_eq!(alt, ind(&h).unwrap());
        }
    }
}

fn quantum_strategy() -> impl Strategy<Value = QuantumGraph> {
    proptest::collection::vec((plg_strategy(4, 2), -3i64..=3), 1..4)
        .prop_map(|ts| ts.iter().fold(QuantumGraph::zero(), |acc, (p, c)| &acc + &QuantumGraph::term(p, rat(*c, 1))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in quantum_strategy(), b in quantum_strategy(), c in quantum_strategy()) {
        prop_assert_eq!(a.product(&b).unwrap(), b.product(&a).unwrap());
        prop_assert_eq!(a.product(&b).unwrap().product(&c).unwrap(), a.product(&b.product(&c).unwrap()).unwrap());
        prop_assert_eq!(a.product(&(&b + &c)).unwrap(), &a.product(&b).unwrap() + &a.product(&c).unwrap());
        prop_assert_eq!(a.product(&QuantumGraph::one()).unwrap(), a.clone());
    }

    #[test]
    fn rooted_decomposition_sums_back(a in quantum_strategy()) {
        let parts = a.rooted_decomposition(2).unwrap();
        let total = parts.values().fold(QuantumGraph::zero(), |s, f| &s + f);
        prop_assert_eq!(total, a);
    }
}
