//! Property tests for the structural invariants.

use proptest::prelude::*;

use design_forge_core::booster::{max_rooted_density, max_rooted_density_exact};
use design_forge_core::graph::{
    packing_from_text, packing_to_text, union_graph, verify_decomposition, verify_packing,
    Clique, Graph,
};
use design_forge_core::solver::{find_decomposition, CoverInstance, SolveStatus};

fn arb_clique(n: u32, q: usize) -> impl Strategy<Value = Clique> {
    proptest::sample::subsequence((0..n).collect::<Vec<u32>>(), q)
        .prop_map(|v| Clique::new(v).unwrap())
}

proptest! {
    /// The min-cut computation agrees with the exponential subset scan.
    #[test]
    fn flow_density_matches_subset_scan(
        cliques in proptest::collection::vec(arb_clique(12, 3), 1..8),
        root in proptest::sample::subsequence((0..12u32).collect::<Vec<u32>>(), 3),
    ) {
        let mut cliques = cliques;
        cliques.sort();
        cliques.dedup();
        let scan = max_rooted_density(&cliques, &root, 24).unwrap();
        let flow = max_rooted_density_exact(&cliques, &root).unwrap();
        prop_assert_eq!(scan, flow);
    }

    /// A verified decomposition is in particular a verified packing.
    #[test]
    fn decomposition_implies_packing(
        cliques in proptest::collection::vec(arb_clique(9, 3), 1..8),
    ) {
        let mut cliques = cliques;
        cliques.sort();
        cliques.dedup();
        if let Ok(host) = union_graph(9, &cliques) {
            let dec = verify_decomposition(&host, &cliques, 3);
            if dec.ok {
                prop_assert!(verify_packing(&host, &cliques, 3).ok);
            }
        }
    }

    /// Edge-list and packing text formats round-trip exactly.
    #[test]
    fn text_formats_round_trip(
        edges in proptest::collection::btree_set((0u32..10, 0u32..10), 0..20),
        cliques in proptest::collection::btree_set(arb_clique(9, 3), 0..6),
    ) {
        let edges: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let g = Graph::from_edges(10, edges).unwrap();
        prop_assert_eq!(Graph::from_edge_list_text(&g.to_edge_list_text()).unwrap(), g);

        let cliques: Vec<Clique> = cliques.into_iter().collect();
        let back = packing_from_text(&packing_to_text(&cliques)).unwrap();
        prop_assert_eq!(back, cliques);
    }

    /// Same instance and branching seed, same solver outcome.
    #[test]
    fn solver_is_deterministic(seed in 0u64..1000) {
        let inst = CoverInstance::from_host(&Graph::complete(7), 3).unwrap();
        let a = find_decomposition(&inst, None, Some(seed));
        let b = find_decomposition(&inst, None, Some(seed));
        match (a.status, b.status) {
            (SolveStatus::Found(x), SolveStatus::Found(y)) => prop_assert_eq!(x, y),
            _ => prop_assert!(false, "solver must find an STS(7)"),
        }
        prop_assert_eq!(a.nodes, b.nodes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Divisible-subgraph enumeration returns exactly the divisible masks.
    #[test]
    fn divisible_subgraphs_complete_and_sound(
        edges in proptest::collection::btree_set((0u32..7, 0u32..7), 1..9),
    ) {
        use design_forge_core::absorber::divisible_subgraphs;
        use design_forge_core::graph::is_kq_divisible;
        let edges: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let x = Graph::from_edges(7, edges.clone()).unwrap();
        let listed = divisible_subgraphs(&x, 3, 20).unwrap();
        for sub in &listed {
            prop_assert!(is_kq_divisible(sub, 3).unwrap());
            prop_assert!(sub.is_edge_subset_of(&x));
        }
        // independent recount over all masks
        let m = edges.len();
        let mut count = 0;
        for mask in 0u32..(1 << m) {
            let sub: Vec<(u32, u32)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let g = Graph::from_edges(7, sub).unwrap();
            if is_kq_divisible(&g, 3).unwrap() {
                count += 1;
            }
        }
        prop_assert_eq!(listed.len(), count);
    }
}
