mod common;

use clique_extremal::cliques::{
    count_cliques_oracle, count_cliques_peeling, count_cliques_peeling_with, for_each_clique,
    ORACLE_GUARD,
};
use clique_extremal::Execution;
use num_bigint::BigUint;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn peeling_oracle_and_subset_scan_agree(g in common::graph(16)) {
        let (count, omega) = common::brute_cliques(&g);
        let (peel, _) = count_cliques_peeling(&g);
        let oracle = count_cliques_oracle(&g, ORACLE_GUARD).unwrap();
        prop_assert_eq!(&peel, &oracle);
        prop_assert_eq!(peel.count_including_empty, BigUint::from(count));
        prop_assert_eq!(peel.clique_number, omega);
    }

    #[test]
    fn strategies_agree(g in common::graph(40)) {
        let (seq, seq_trace) = count_cliques_peeling_with(&g, Execution::Sequential);
        let (par, par_trace) = count_cliques_peeling_with(&g, Execution::Parallel);
        prop_assert_eq!(seq, par);
        prop_assert_eq!(seq_trace, par_trace);
    }

    #[test]
    fn enumeration_visits_each_clique_once(g in common::graph(14)) {
        let mut seen = std::collections::BTreeSet::new();
        for_each_clique(&g, |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            assert!(c.windows(2).all(|w| g.has_edge(w[0], w[1])));
            assert!(seen.insert(c));
        });
        // the callback skips the empty clique
        prop_assert_eq!(seen.len() as u64 + 1, common::brute_cliques(&g).0);
    }

    #[test]
    fn adding_an_edge_never_decreases_the_count(g in common::graph(14), pick in any::<usize>()) {
        let missing: Vec<(usize, usize)> = g.complement().edges().collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick % missing.len()];
        let mut edges: Vec<_> = g.edges().collect();
        edges.push((u, v));
        let h = clique_extremal::Graph::from_edge_list(g.n(), &edges).unwrap();
        let before = count_cliques_peeling(&g).0.count_including_empty;
        let after = count_cliques_peeling(&h).0.count_including_empty;
        prop_assert!(after > before);
    }
}
