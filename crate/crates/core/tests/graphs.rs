use gbtc_core::graph::named;
use gbtc_core::{corpus, Graph};
use proptest::prelude::*;

/// Random connected multigraph on `n` vertices: a spanning path plus extra
/// edges, loops and parallels allowed.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..6)))
        .prop_map(|(n, extra)| {
            let ids: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let mut edges: Vec<(String, String)> =
                (1..n).map(|i| (ids[i - 1].clone(), ids[i].clone())).collect();
            edges.extend(extra.into_iter().map(|(a, b)| (ids[a].clone(), ids[b].clone())));
            Graph::new::<String>(&ids, &edges, &[]).unwrap()
        })
}

proptest! {
    #[test]
    fn normalize_is_idempotent(g in arb_graph()) {
        let once = g.normalize();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(once.normalize().to_json(), once.to_json());
    }

    #[test]
    fn subdivision_preserves_invariants(g in arb_graph()) {
        let c = g.classify().unwrap();
        let s = g.subdivide(&vec![1; g.edge_count()]);
        prop_assert_eq!(s.classify().unwrap(), c);
        prop_assert_eq!(s.betti_number(), g.betti_number());
        prop_assert_eq!(c.m, c.n0 + c.n1 + c.n2);
    }

    #[test]
    fn chains_partition_edges(g in arb_graph()) {
        let g = g.normalize();
        let mut seen: Vec<usize> = g.chains().concat();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.edge_count()).collect::<Vec<_>>());
    }
}

#[test]
fn corpus_classifications() {
    let expect = [
        ("star3", (0, 1, 0)),
        ("star4", (1, 0, 0)),
        ("star5", (1, 0, 0)),
        ("h_graph", (0, 2, 0)),
        ("theta", (0, 0, 2)),
        ("spider", (2, 0, 0)),
        ("random10", (2, 0, 1)),
    ];
    for (name, (n0, n1, n2)) in expect {
        let c = corpus::get(name).unwrap().graph().classify().unwrap();
        assert_eq!((c.n0, c.n1, c.n2), (n0, n1, n2), "{name}");
    }
}

#[test]
fn local_relation_at_separating_vertex() {
    let h = named::h_graph();
    let pi = h.components_without("u").unwrap();
    assert_eq!(pi.size(), 3);
    assert_eq!(pi.block_count(), 3);
    let t = named::theta().components_without("a").unwrap();
    assert!(t.is_indiscrete());
}
