#![allow(dead_code)]
//! Shared strategies and subset-scan oracles.

use clique_extremal::{Graph, VertexSet};
use proptest::prelude::*;

/// Graph on `n` vertices from one bit per pair, `p` controlling density.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, 0.0f64..=1.0).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| from_bits(n, &bits))
    })
}

/// Dense graphs: each pair missing with probability at most `q`.
pub fn dense_graph(min_n: usize, max_n: usize, q: f64) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.0..=q).prop_flat_map(|(n, q)| {
        proptest::collection::vec(proptest::bool::weighted(1.0 - q), n * (n - 1) / 2)
            .prop_map(move |bits| from_bits(n, &bits))
    })
}

pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Clique count (with the empty clique) and clique number by subset scan.
pub fn brute_cliques(g: &Graph) -> (u64, usize) {
    let n = g.n();
    let mut count = 0;
    let mut omega = 0;
    for s in 0u64..1 << n {
        let members: Vec<usize> = (0..n).filter(|v| s >> v & 1 == 1).collect();
        if members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        {
            count += 1;
            omega = omega.max(members.len());
        }
    }
    (count, omega)
}

pub fn set(n: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_members(n, members.iter().copied())
}
