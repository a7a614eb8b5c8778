//! Clique counting.
//!
//! Two independent counters are provided. [`count_cliques_peeling`] follows
//! the peeling process: repeatedly pick a minimum-degree vertex, count the
//! cliques inside its neighbourhood, then delete it. [`count_cliques_oracle`]
//! is a pivoting expansion in which every clique is represented exactly once
//! as a set of forced vertices plus any subset of the pivots collected along
//! the branch, so whole families of cliques are counted as powers of two.
//!
//! Counts include the empty clique.

use crate::bits;
use crate::graph::Graph;
use crate::guard::GuardExceeded;
use crate::par::{self, Execution};
use crate::vertex_set::VertexSet;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Counts serialize as decimal strings, since they exceed every JSON
/// number type on dense inputs.
mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Default vertex limit for the oracle counter.
pub const ORACLE_GUARD: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueStats {
    #[serde(with = "decimal")]
    pub count_including_empty: BigUint,
    #[serde(with = "decimal")]
    pub count_nonempty: BigUint,
    pub clique_number: usize,
}

impl CliqueStats {
    fn new(count_including_empty: BigUint, clique_number: usize) -> Self {
        let count_nonempty = &count_including_empty - 1u32;
        Self {
            count_including_empty,
            count_nonempty,
            clique_number,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    SizeThreshold,
    SmallDrop,
    CliqueExhausted,
}

/// Outer loop of the peeling process: `G_0 = G`, and `G_{i+1}` is the
/// subgraph induced by the neighbourhood of `v_{i+1}` in `G_i`, where
/// `v_{i+1}` is a minimum-degree vertex of `G_i` (lowest index on ties).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelingTrace {
    /// `v_1, ..., v_r`.
    pub picked: Vec<usize>,
    /// `n_0 = n, n_1, ..., n_r`.
    pub sizes: Vec<usize>,
    /// Missing degree of `v_{i+1}` in `G_i`, which is the maximum missing
    /// degree of `G_i`.
    pub missing_degrees: Vec<usize>,
    /// `n_{r+1}`, when the loop evaluated one more pick before stopping.
    pub next_size: Option<usize>,
    pub stop_reason: StopReason,
}

impl PeelingTrace {
    pub fn stop_index(&self) -> usize {
        self.picked.len()
    }
}

/// Constants of the stopping rule: stop at the least `r >= 1` with
/// `n_r <= size_factor * t` or `n_{r+1} >= n_r - n_r^drop_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeelConfig {
    pub size_factor: f64,
    pub drop_exponent: f64,
}

impl Default for PeelConfig {
    fn default() -> Self {
        Self {
            size_factor: 1.05,
            drop_exponent: 0.55,
        }
    }
}

/// Brute-force reference counter. Works on word masks, so it also enforces
/// `n <= 64` regardless of `guard`.
pub fn count_cliques_oracle(g: &Graph, guard: usize) -> Result<CliqueStats, GuardExceeded> {
    let limit = guard.min(64);
    if g.n() > limit {
        return Err(GuardExceeded {
            what: "oracle clique count",
            n: g.n(),
            limit,
        });
    }
    let rows = g.masks().expect("n <= 64");
    let (count, omega) = pivot_count(&rows, bits::low_mask(g.n()));
    Ok(CliqueStats::new(BigUint::from(count), omega))
}

fn pivot_count(rows: &[u64], p: u64) -> (u128, usize) {
    if p == 0 {
        return (1, 0);
    }
    let pivot = bits::ones(p)
        .max_by_key(|&u| ((rows[u] & p).count_ones(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    // cliques inside N(pivot), each with or without the pivot
    let (inner, inner_omega) = pivot_count(rows, p & rows[pivot]);
    let mut total = 2 * inner;
    let mut omega = inner_omega + 1;
    // cliques through a non-neighbour v of the pivot, v the first such
    let mut allowed = p & !bits::bit(pivot);
    for v in bits::ones(p & !rows[pivot] & !bits::bit(pivot)) {
        let (c, w) = pivot_count(rows, allowed & rows[v]);
        total += c;
        omega = omega.max(w + 1);
        allowed &= !bits::bit(v);
    }
    (total, omega)
}

/// Counts cliques with the peeling process. The returned trace is the greedy
/// descent through minimum-degree vertices until the neighbourhood is empty.
pub fn count_cliques_peeling(g: &Graph) -> (CliqueStats, PeelingTrace) {
    count_cliques_peeling_with(g, Execution::default())
}

pub fn count_cliques_peeling_with(g: &Graph, exec: Execution) -> (CliqueStats, PeelingTrace) {
    let order = peeling_order(g);
    let branches = par::map(exec, &order, |(v, later)| {
        let (count, omega) = count_local(g, later);
        debug_assert!(later.iter().all(|&w| g.has_edge(*v, w)));
        (count, omega)
    });
    let mut total = BigUint::one();
    let mut omega = 0;
    for (count, w) in branches {
        total += count;
        omega = omega.max(w + 1);
    }
    (CliqueStats::new(total, omega), descend(g, None))
}

/// Visits every non-empty clique once, in peeling order.
pub fn for_each_clique(g: &Graph, mut visit: impl FnMut(&[usize])) {
    let mut stack = Vec::new();
    for (v, later) in peeling_order(g) {
        stack.push(v);
        visit(&stack);
        let set = VertexSet::from_members(g.n(), later.iter().copied());
        visit_within(g, set, &mut stack, &mut visit);
        stack.pop();
    }
}

fn visit_within(
    g: &Graph,
    mut p: VertexSet,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    while let Some((v, _)) = min_degree_in(g, &p) {
        stack.push(v);
        visit(stack);
        let next = p.intersection(&g.neighbor_set(v));
        visit_within(g, next, stack, visit);
        stack.pop();
        p.remove(v);
    }
}

/// Top level of the peeling process: vertices in the order they are picked
/// and deleted, each with its neighbours still present at pick time (sorted).
fn peeling_order(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    use std::collections::BTreeSet;
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        let mut later = Vec::new();
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                later.push(w);
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
        order.push((v, later));
    }
    order
}

/// Cliques (including the empty one) inside `set`, sorted ascending, and the
/// clique number of the induced subgraph.
fn count_local(g: &Graph, set: &[usize]) -> (BigUint, usize) {
    let k = set.len();
    let adjacent = |a: usize, b: usize| g.has_edge(set[a], set[b]);
    if k <= 64 {
        let rows: Vec<u64> = (0..k)
            .map(|a| {
                (0..k)
                    .filter(|&b| adjacent(a, b))
                    .fold(0, |m, b| m | bits::bit(b))
            })
            .collect();
        let (c, w) = peel_count_mask(&rows, bits::low_mask(k));
        (BigUint::from(c), w)
    } else {
        let rows: Vec<VertexSet> = (0..k)
            .map(|a| VertexSet::from_members(k, (0..k).filter(|&b| adjacent(a, b))))
            .collect();
        peel_count_set(&rows, VertexSet::full(k))
    }
}

fn peel_count_mask(rows: &[u64], mut p: u64) -> (u128, usize) {
    let mut total: u128 = 1;
    let mut omega = 0;
    while p != 0 {
        let size = p.count_ones();
        let (v, deg) = bits::ones(p)
            .map(|v| (v, (rows[v] & p).count_ones()))
            .min_by_key(|&(v, d)| (d, v))
            .expect("p is non-empty");
        if deg + 1 == size {
            // p is a clique: its non-empty subsets
            total += (1u128 << size) - 1;
            omega = omega.max(size as usize);
            break;
        }
        let (c, w) = peel_count_mask(rows, rows[v] & p);
        total += c;
        omega = omega.max(w + 1);
        p &= !bits::bit(v);
    }
    (total, omega)
}

fn peel_count_set(rows: &[VertexSet], mut p: VertexSet) -> (BigUint, usize) {
    let mut total = BigUint::one();
    let mut omega = 0;
    while !p.is_empty() {
        let size = p.len();
        let (v, deg) = p
            .iter()
            .map(|v| (v, rows[v].intersection_count(&p)))
            .min_by_key(|&(v, d)| (d, v))
            .expect("p is non-empty");
        if deg + 1 == size {
            total += (BigUint::one() << size) - 1u32;
            omega = omega.max(size);
            break;
        }
        let (c, w) = peel_count_set(rows, rows[v].intersection(&p));
        total += c;
        omega = omega.max(w + 1);
        p.remove(v);
    }
    (total, omega)
}

/// Minimum-degree vertex of `G[p]` (lowest index on ties) and its degree.
fn min_degree_in(g: &Graph, p: &VertexSet) -> Option<(usize, usize)> {
    p.iter()
        .map(|v| {
            let d = g
                .neighbors(v)
                .iter()
                .filter(|&&w| p.contains(w as usize))
                .count();
            (v, d)
        })
        .min_by_key(|&(v, d)| (d, v))
}

/// Outer peeling loop with the stopping rule for a forbidden `K_t`.
pub fn peel_trace(g: &Graph, t: usize, config: PeelConfig) -> PeelingTrace {
    descend(g, Some((t.max(1), config)))
}

fn descend(g: &Graph, rule: Option<(usize, PeelConfig)>) -> PeelingTrace {
    let mut p = VertexSet::full(g.n());
    let mut trace = PeelingTrace {
        picked: Vec::new(),
        sizes: vec![g.n()],
        missing_degrees: Vec::new(),
        next_size: None,
        stop_reason: StopReason::CliqueExhausted,
    };
    loop {
        let size = p.len();
        let r = trace.picked.len();
        if size == 0 {
            trace.stop_reason = StopReason::CliqueExhausted;
            return trace;
        }
        if let (Some((t, cfg)), true) = (rule, r >= 1) {
            if size as f64 <= cfg.size_factor * t as f64 {
                trace.stop_reason = StopReason::SizeThreshold;
                return trace;
            }
        }
        let (v, deg) = min_degree_in(g, &p).expect("p is non-empty");
        if let (Some((_, cfg)), true) = (rule, r >= 1) {
            let nr = size as f64;
            if deg as f64 >= nr - nr.powf(cfg.drop_exponent) {
                trace.next_size = Some(deg);
                trace.stop_reason = StopReason::SmallDrop;
                return trace;
            }
        }
        trace.picked.push(v);
        trace.missing_degrees.push(size - 1 - deg);
        p = p.intersection(&g.neighbor_set(v));
        trace.sizes.push(deg);
    }
}
