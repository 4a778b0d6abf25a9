mod common;

use std::collections::BTreeSet;

use common::*;
use homdens::algebra::{equal_mod_k, QExpr, QuantumGraph};
use homdens::certificates::{CsProof, Justification, ProofLine, SosCertificate};
use homdens::density::{w_from_graph, WeightedGraph};
use homdens::graphs::Label;
use homdens::polynomials::{indexed_vars, Polynomial};
use homdens::text::*;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = homdens::Rational> {
    (-20i64..20, 1i64..9).prop_map(|(a, b)| rat(a, b))
}

fn quantum() -> impl Strategy<Value = QuantumGraph> {
    proptest::collection::vec((plg_strategy(4, 2), rational()), 0..4)
        .prop_map(|ts| ts.iter().fold(QuantumGraph::zero(), |acc, (p, c)| &acc + &QuantumGraph::term(p, c.clone())))
}

fn qexpr() -> impl Strategy<Value = QExpr> {
    let leaf = prop_oneof![
        rational().prop_map(QExpr::Const),
        plg_strategy(4, 2).prop_map(QExpr::Atom),
        plg_strategy(3, 1).prop_map(QExpr::IndAtom),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..3).prop_map(QExpr::Sum),
            proptest::collection::vec(inner.clone(), 0..3).prop_map(QExpr::Product),
            (inner.clone(), 0u32..3).prop_map(|(e, k)| QExpr::Pow(Box::new(e), k)),
            (proptest::collection::btree_set(1 as Label..4, 0..2), inner).prop_map(|(t, e)| QExpr::Unlabel(t, Box::new(e))),
        ]
    })
}

fn label_set() -> impl Strategy<Value = BTreeSet<Label>> {
    proptest::collection::btree_set(1 as Label..6, 0..3)
}

fn justification() -> impl Strategy<Value = Justification> {
    prop_oneof![
        qexpr().prop_map(Justification::A1),
        (qexpr(), qexpr(), label_set()).prop_map(|(a, b, t)| Justification::A2(a, b, t)),
        (1usize..5, 1usize..5, rational(), rational()).prop_map(|(i, j, a, b)| Justification::R1 { i, j, a, b }),
        (1usize..5, 1usize..5).prop_map(|(i, j)| Justification::R2 { i, j }),
        (1usize..5, label_set()).prop_map(|(i, t)| Justification::R3 { i, t }),
    ]
}

fn no_files(path: &str) -> Result<QExpr, String> {
    Err(format!("unexpected reference {path}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn plg_round_trip(p in plg_strategy(6, 3)) {
        let back = parse_plg(&format_plg(&p)).unwrap();
        prop_assert_eq!(back.canonical_form(), p.canonical_form());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn target_round_trip(g in graph_strategy(6), w in weights_strategy(6)) {
        let wg = WeightedGraph::from_counts(g.clone(), &w[..g.order()]).unwrap();
        let (g2, w2) = parse_target(&format_target(&g, Some(wg.weights()))).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(w2.as_deref(), Some(wg.weights()));
        prop_assert_eq!(parse_target(&format_target(&g, None)).unwrap(), (g, None));
    }

    #[test]
    fn quantum_round_trip(q in quantum()) {
        let text = format_quantum(&q);
        let back = parse_quantum(&text).unwrap();
        prop_assert!(equal_mod_k(&back, &q));
        prop_assert_eq!(format_quantum(&back), text);
    }

    #[test]
    fn qexpr_round_trip(e in qexpr()) {
        prop_assert_eq!(parse_qexpr(&format_qexpr(&e)).unwrap(), e);
    }

    #[test]
    fn graphon_round_trip(g in graph_strategy(5)) {
        let w = w_from_graph(&g).unwrap();
        prop_assert_eq!(parse_graphon(&format_graphon(&w)).unwrap(), w);
    }

    #[test]
    fn sos_round_trip(squares in proptest::collection::vec(qexpr(), 1..3)) {
        let cert = SosCertificate::new(squares).unwrap();
        prop_assert_eq!(parse_sos(&format_sos(&cert)).unwrap(), cert);
    }

    #[test]
    fn proof_round_trip(lines in proptest::collection::vec((qexpr(), justification()), 1..4)) {
        let proof = CsProof { lines: lines.into_iter().map(|(statement, by)| ProofLine { statement, by }).collect() };
        prop_assert_eq!(parse_proof(&format_proof(&proof), &no_files).unwrap(), proof);
    }

    #[test]
    fn polynomial_round_trip(ts in proptest::collection::vec((proptest::collection::vec(0u32..4, 3), rational()), 0..5)) {
        let p = Polynomial::from_terms(indexed_vars("x", 3), ts);
        let back = parse_polynomial(&p.to_string()).unwrap();
        prop_assert_eq!(back.with_vars(p.vars()).unwrap(), p);
    }
}
