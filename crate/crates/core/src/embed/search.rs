//! Exhaustive searches on word masks.
//!
//! In both searches a pair of adjacent terminals is joined by its edge. For
//! subdivisions this never loses solutions because internal vertices avoid
//! terminals. For immersions, a path using the edge `ab` of another pair
//! `(a, b)` can be rerouted along that pair's own path, so the edge is free
//! to be the direct connection.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, CertificateKind, PathEntry};
use crate::bits;
use crate::graph::Graph;
use crate::guard::{self, GuardExceeded};
use crate::par::{self, Execution};
use crate::vertex_set::VertexSet;

/// Default vertex limit for [`sigma_exhaustive`].
pub const SIGMA_GUARD: usize = 14;
/// Default vertex limit for the immersion searches.
pub const IMMERSION_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImmersionMode {
    /// Edge-disjoint paths.
    Weak,
    /// Edge-disjoint paths with no internal vertex among the terminals.
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaResult {
    pub sigma: usize,
    /// A subdivision of `K_sigma`.
    pub witness: Certificate,
}

/// Largest `h` such that `g` contains a subdivision of `K_h`.
pub fn sigma_exhaustive(g: &Graph, limit_n: usize) -> Result<SigmaResult, GuardExceeded> {
    sigma_exhaustive_with(g, limit_n, Execution::default())
}

/// Tries `h = n, n-1, ...`; for each `h`, branch sets are scanned in
/// lexicographic order among vertices of degree at least `h - 1`, and the
/// first routable one is the witness.
pub fn sigma_exhaustive_with(
    g: &Graph,
    limit_n: usize,
    exec: Execution,
) -> Result<SigmaResult, GuardExceeded> {
    guard::check("subdivision search", g.n(), limit_n.min(64))?;
    let n = g.n();
    let rows = g.masks().expect("n <= 64");
    for h in (1..=n).rev() {
        let candidates = (0..n)
            .filter(|&v| g.degree(v) + 1 >= h)
            .fold(0u64, |m, v| m | bits::bit(v));
        if (candidates.count_ones() as usize) < h {
            continue;
        }
        let sets = bits::combinations(candidates, h);
        let found = par::find_map_first(exec, &sets, |&branch| {
            route_subdivision(&rows, n, branch).map(|paths| (branch, paths))
        });
        if let Some((branch, paths)) = found {
            let terminals = VertexSet::from_mask(n, branch);
            return Ok(SigmaResult {
                sigma: h,
                witness: Certificate::new(CertificateKind::Subdivision, &terminals, paths),
            });
        }
    }
    Ok(SigmaResult {
        sigma: 0,
        witness: Certificate::new(CertificateKind::Subdivision, &VertexSet::new(n), Vec::new()),
    })
}

fn terminal_pairs(branch: u64) -> Vec<(usize, usize)> {
    let ts: Vec<usize> = bits::ones(branch).collect();
    let mut out = Vec::new();
    for (i, &u) in ts.iter().enumerate() {
        for &v in &ts[i + 1..] {
            out.push((u, v));
        }
    }
    out
}

/// Internally disjoint paths joining every pair of `branch`, routed through
/// the remaining vertices.
fn route_subdivision(rows: &[u64], n: usize, branch: u64) -> Option<Vec<PathEntry>> {
    let pairs = terminal_pairs(branch);
    let (direct, missing): (Vec<_>, Vec<_>) = pairs
        .into_iter()
        .partition(|&(u, v)| rows[u] & bits::bit(v) != 0);
    let mut router = SubdivisionRouter {
        rows,
        missing: &missing,
        failed: HashSet::new(),
        paths: Vec::new(),
    };
    let free = bits::low_mask(n) & !branch;
    if !router.solve(0, free) {
        return None;
    }
    let mut paths: Vec<PathEntry> = direct
        .into_iter()
        .map(|(u, v)| PathEntry::new(vec![u, v]))
        .collect();
    paths.extend(router.paths.into_iter().map(PathEntry::new));
    Some(paths)
}

struct SubdivisionRouter<'a> {
    rows: &'a [u64],
    missing: &'a [(usize, usize)],
    failed: HashSet<(usize, u64)>,
    paths: Vec<Vec<usize>>,
}

impl SubdivisionRouter<'_> {
    fn solve(&mut self, i: usize, free: u64) -> bool {
        if i == self.missing.len() {
            return true;
        }
        if self.failed.contains(&(i, free)) || !self.feasible(i, free) {
            return false;
        }
        let (a, b) = self.missing[i];
        let mut route = vec![a];
        if self.extend(i, a, b, free, &mut route) {
            return true;
        }
        self.failed.insert((i, free));
        false
    }

    // Every remaining pair needs its own internal vertex, and its own free
    // neighbour at each end.
    fn feasible(&self, i: usize, free: u64) -> bool {
        let rest = &self.missing[i..];
        if rest.len() > free.count_ones() as usize {
            return false;
        }
        let mut need = [0u32; 64];
        for &(a, b) in rest {
            need[a] += 1;
            need[b] += 1;
        }
        rest.iter()
            .flat_map(|&(a, b)| [a, b])
            .all(|v| need[v] <= (self.rows[v] & free).count_ones())
    }

    fn extend(
        &mut self,
        i: usize,
        at: usize,
        target: usize,
        free: u64,
        route: &mut Vec<usize>,
    ) -> bool {
        if route.len() > 1 && self.rows[at] & bits::bit(target) != 0 {
            route.push(target);
            self.paths.push(route.clone());
            if self.solve(i + 1, free) {
                return true;
            }
            self.paths.pop();
            route.pop();
        }
        for w in bits::ones(self.rows[at] & free) {
            route.push(w);
            if self.extend(i, w, target, free & !bits::bit(w), route) {
                return true;
            }
            route.pop();
        }
        false
    }
}

/// Whether `g` has a strong clique immersion with end set exactly `t`.
pub fn has_strong_immersion_with_ends(
    g: &Graph,
    t: &VertexSet,
    limit_n: usize,
) -> Result<bool, GuardExceeded> {
    Ok(find_immersion_with_ends(g, t, ImmersionMode::Strong, limit_n)?.is_some())
}

/// A clique immersion with end set exactly `t`, if one exists.
pub fn find_immersion_with_ends(
    g: &Graph,
    t: &VertexSet,
    mode: ImmersionMode,
    limit_n: usize,
) -> Result<Option<Certificate>, GuardExceeded> {
    guard::check("immersion search", g.n(), limit_n.min(16))?;
    let n = g.n();
    if t.iter().any(|v| v >= n) {
        return Ok(None);
    }
    let rows = g.masks().expect("n <= 64");
    let terminals = t.to_mask().expect("n <= 64");
    let mut index = vec![[usize::MAX; 16]; n];
    for (i, (u, v)) in g.edges().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let pairs = terminal_pairs(terminals);
    let (direct, missing): (Vec<_>, Vec<_>) =
        pairs.into_iter().partition(|&(u, v)| g.has_edge(u, v));
    let mut used = 0u128;
    for &(u, v) in &direct {
        used |= 1u128 << index[u][v];
    }
    let through = match mode {
        ImmersionMode::Strong => bits::low_mask(n) & !terminals,
        ImmersionMode::Weak => bits::low_mask(n),
    };
    let mut router = ImmersionRouter {
        rows: &rows,
        index: &index,
        missing: &missing,
        through,
        failed: HashSet::new(),
        paths: Vec::new(),
    };
    if !router.solve(0, used) {
        return Ok(None);
    }
    let kind = match mode {
        ImmersionMode::Strong => CertificateKind::StrongImmersion,
        ImmersionMode::Weak => CertificateKind::WeakImmersion,
    };
    let mut paths: Vec<PathEntry> = direct
        .into_iter()
        .map(|(u, v)| PathEntry::new(vec![u, v]))
        .collect();
    paths.extend(router.paths.into_iter().map(PathEntry::new));
    Ok(Some(Certificate::new(kind, t, paths)))
}

struct ImmersionRouter<'a> {
    rows: &'a [u64],
    index: &'a [[usize; 16]],
    missing: &'a [(usize, usize)],
    /// Vertices allowed in the interior of a path.
    through: u64,
    failed: HashSet<(usize, u128)>,
    paths: Vec<Vec<usize>>,
}

impl ImmersionRouter<'_> {
    fn edge(&self, u: usize, v: usize) -> u128 {
        1u128 << self.index[u][v]
    }

    fn unused_degree(&self, v: usize, used: u128) -> usize {
        bits::ones(self.rows[v])
            .filter(|&w| used & self.edge(v, w) == 0)
            .count()
    }

    fn solve(&mut self, i: usize, used: u128) -> bool {
        if i == self.missing.len() {
            return true;
        }
        if self.failed.contains(&(i, used)) {
            return false;
        }
        let rest = &self.missing[i..];
        let mut need = [0usize; 16];
        for &(a, b) in rest {
            need[a] += 1;
            need[b] += 1;
        }
        let feasible = rest
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .all(|v| need[v] <= self.unused_degree(v, used));
        if feasible {
            let (a, b) = self.missing[i];
            let mut route = vec![a];
            if self.extend(i, a, b, bits::bit(a), used, &mut route) {
                return true;
            }
        }
        self.failed.insert((i, used));
        false
    }

    fn extend(
        &mut self,
        i: usize,
        at: usize,
        target: usize,
        visited: u64,
        used: u128,
        route: &mut Vec<usize>,
    ) -> bool {
        for w in bits::ones(self.rows[at] & !visited) {
            let e = self.edge(at, w);
            if used & e != 0 {
                continue;
            }
            route.push(w);
            if w == target {
                self.paths.push(route.clone());
                if self.solve(i + 1, used | e) {
                    return true;
                }
                self.paths.pop();
            } else if self.through & bits::bit(w) != 0
                && self.extend(i, w, target, visited | bits::bit(w), used | e, route)
            {
                return true;
            }
            route.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{immersion_tightness, matching_complement};
    use crate::embed::{verify_immersion, verify_subdivision};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn sigma(g: &Graph) -> usize {
        let r = sigma_exhaustive(g, SIGMA_GUARD).unwrap();
        assert!(verify_subdivision(g, &r.witness).valid, "{:?}", r.witness);
        assert_eq!(r.witness.terminals.len(), r.sigma);
        r.sigma
    }

    #[test]
    fn sigma_spot_values() {
        assert_eq!(sigma(&Graph::complete(5)), 5);
        assert_eq!(sigma(&cycle(5)), 3);
        assert_eq!(sigma(&matching_complement(8).unwrap()), 6);
        assert_eq!(sigma(&Graph::empty(0)), 0);
        assert_eq!(sigma(&Graph::empty(4)), 1);
        assert_eq!(sigma(&Graph::from_edge_list(3, &[(0, 1)]).unwrap()), 2);
    }

    #[test]
    fn sigma_needs_long_paths() {
        // K4 with every edge subdivided twice
        let mut edges = Vec::new();
        let mut next = 4;
        for u in 0..4 {
            for v in u + 1..4 {
                edges.extend([(u, next), (next, next + 1), (next + 1, v)]);
                next += 2;
            }
        }
        let g = Graph::from_edge_list(next, &edges).unwrap();
        let r = sigma_exhaustive(&g, 16).unwrap();
        assert_eq!(r.sigma, 4);
        assert!(verify_subdivision(&g, &r.witness).valid);
        assert_eq!(r.witness.max_path_length(), 3);
    }

    #[test]
    fn sigma_guard() {
        assert!(sigma_exhaustive(&Graph::empty(15), SIGMA_GUARD).is_err());
    }

    #[test]
    fn sigma_strategies_agree() {
        let g = crate::constructions::random_graph(11, 0.5, 4).unwrap();
        assert_eq!(
            sigma_exhaustive_with(&g, SIGMA_GUARD, Execution::Sequential),
            sigma_exhaustive_with(&g, SIGMA_GUARD, Execution::Parallel)
        );
    }

    #[test]
    fn tightness_has_weak_but_not_strong() {
        let inst = immersion_tightness(10, 4).unwrap();
        let g = &inst.graph;
        assert!(!has_strong_immersion_with_ends(g, &inst.terminals, IMMERSION_GUARD).unwrap());
        let weak =
            find_immersion_with_ends(g, &inst.terminals, ImmersionMode::Weak, IMMERSION_GUARD)
                .unwrap()
                .expect("weak immersion exists");
        assert!(verify_immersion(g, &weak, ImmersionMode::Weak).valid);
        assert!(!verify_immersion(g, &weak, ImmersionMode::Strong).valid);
    }

    #[test]
    fn near_complete_has_strong_immersion() {
        let g = Graph::from_fn(6, |u, v| (u, v) != (0, 1));
        for t in [[0, 1, 2, 3], [0, 2, 4, 5], [1, 3, 4, 5]] {
            let t = VertexSet::from_members(6, t);
            let cert = find_immersion_with_ends(&g, &t, ImmersionMode::Strong, IMMERSION_GUARD)
                .unwrap()
                .unwrap();
            assert!(verify_immersion(&g, &cert, ImmersionMode::Strong).valid);
        }
    }

    #[test]
    fn immersion_can_exceed_subdivision() {
        // two triangles sharing the cut vertex 0
        let g =
            Graph::from_edge_list(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let t = VertexSet::from_members(5, [1, 2, 3]);
        let cert = find_immersion_with_ends(&g, &t, ImmersionMode::Strong, IMMERSION_GUARD)
            .unwrap()
            .unwrap();
        assert!(verify_immersion(&g, &cert, ImmersionMode::Strong).valid);
        assert!(!verify_subdivision(&g, &cert).valid);
    }
}
