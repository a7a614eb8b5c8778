use std::collections::HashSet;

use thiserror::Error;

use super::certificate::{Certificate, CertificateKind, PathEntry};
use crate::graph::{Graph, GraphError};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error(
        "terminal {terminal} has missing degree {missing_degree}; \
         need 2 * {missing_degree} < n - |T| + 2 = {n} - {t} + 2"
    )]
    MissingDegreeTooLarge {
        terminal: usize,
        missing_degree: usize,
        n: usize,
        t: usize,
    },
    #[error(
        "missing edges within T = {missing} exceeds n - |T| - 2Δ = {n} - {t} - 2 * {delta} = {bound}"
    )]
    TooManyMissing {
        missing: usize,
        n: usize,
        t: usize,
        delta: usize,
        bound: i64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn missing_pairs(g: &Graph, terminals: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in terminals.iter().enumerate() {
        for &v in &terminals[i + 1..] {
            if !g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

fn direct_paths(g: &Graph, terminals: &[usize]) -> Vec<PathEntry> {
    let mut out = Vec::new();
    for (i, &u) in terminals.iter().enumerate() {
        for &v in &terminals[i + 1..] {
            if g.has_edge(u, v) {
                out.push(PathEntry::new(vec![u, v]));
            }
        }
    }
    out
}

/// Strong clique immersion with end set `T`, for graphs where every
/// terminal has missing degree below `(n - |T| + 2) / 2`.
///
/// Each missing pair `(u, v)` of `T`, taken in lexicographic order, is routed
/// as `u-w-v` through the lowest `w` outside `T` whose edges to `u` and `v`
/// are both still unused. All other pairs use their edge.
pub fn immerse_dense(g: &Graph, t: &VertexSet) -> Result<Certificate, EmbedError> {
    g.check_set(t)?;
    let n = g.n();
    let terminals = t.to_vec();
    let k = terminals.len();
    if k <= 1 {
        return Ok(Certificate::new(
            CertificateKind::StrongImmersion,
            t,
            Vec::new(),
        ));
    }
    for &v in &terminals {
        let md = g.missing_degree(v)?;
        if 2 * md >= n - k + 2 {
            return Err(EmbedError::MissingDegreeTooLarge {
                terminal: v,
                missing_degree: md,
                n,
                t: k,
            });
        }
    }

    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut paths = direct_paths(g, &terminals);
    for (u, v) in missing_pairs(g, &terminals) {
        let w = (0..n)
            .find(|&w| {
                !t.contains(w)
                    && g.has_edge(u, w)
                    && g.has_edge(w, v)
                    && !used.contains(&(u, w))
                    && !used.contains(&(v, w))
            })
            .expect("missing-degree bound leaves a free common neighbour");
        used.insert((u, w));
        used.insert((v, w));
        paths.push(PathEntry::new(vec![u, w, v]));
    }
    Ok(Certificate::new(CertificateKind::StrongImmersion, t, paths))
}

/// Clique subdivision with branch set `T`, for graphs where `T` misses at
/// most `n - |T| - 2Δ` edges.
///
/// Each missing pair, in lexicographic order, takes the lowest unused common
/// neighbour outside `T` as its single internal vertex.
pub fn subdivide_dense(g: &Graph, t: &VertexSet) -> Result<Certificate, EmbedError> {
    g.check_set(t)?;
    let n = g.n();
    let terminals = t.to_vec();
    let k = terminals.len();
    if k <= 1 {
        return Ok(Certificate::new(
            CertificateKind::Subdivision,
            t,
            Vec::new(),
        ));
    }
    let delta = g.max_missing_degree()?;
    let missing = g.missing_edges_within(t)?;
    let bound = n as i64 - k as i64 - 2 * delta as i64;
    if missing as i64 > bound {
        return Err(EmbedError::TooManyMissing {
            missing,
            n,
            t: k,
            delta,
            bound,
        });
    }

    let mut used = VertexSet::new(n);
    let mut paths = direct_paths(g, &terminals);
    for (u, v) in missing_pairs(g, &terminals) {
        let w = (0..n)
            .find(|&w| !t.contains(w) && !used.contains(w) && g.has_edge(u, w) && g.has_edge(w, v))
            .expect("missing-edge bound leaves an unused common neighbour");
        used.insert(w);
        paths.push(PathEntry::new(vec![u, w, v]));
    }
    Ok(Certificate::new(CertificateKind::Subdivision, t, paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{immersion_tightness, matching_complement};
    use crate::embed::{verify_immersion, verify_subdivision, ImmersionMode};

    fn set(members: &[usize]) -> VertexSet {
        VertexSet::from_members(0, members.iter().copied())
    }

    #[test]
    fn complete_graph_uses_edges() {
        let g = Graph::complete(5);
        let cert = immerse_dense(&g, &VertexSet::full(5)).unwrap();
        assert_eq!(cert.paths.len(), 10);
        assert_eq!(cert.max_path_length(), 1);
        assert!(verify_immersion(&g, &cert, ImmersionMode::Strong).valid);
    }

    #[test]
    fn one_missing_edge_goes_through_lowest_outside_vertex() {
        let g = Graph::from_fn(5, |u, v| (u, v) != (0, 1));
        let cert = immerse_dense(&g, &set(&[0, 1, 2])).unwrap();
        assert_eq!(cert.path(0, 1).unwrap().route, vec![0, 3, 1]);
        assert_eq!(cert.path(0, 2).unwrap().route, vec![0, 2]);
        assert!(verify_immersion(&g, &cert, ImmersionMode::Strong).valid);
    }

    #[test]
    fn tightness_instance_is_rejected() {
        let inst = immersion_tightness(10, 4).unwrap();
        let err = immerse_dense(&inst.graph, &inst.terminals).unwrap_err();
        assert_eq!(
            err,
            EmbedError::MissingDegreeTooLarge {
                terminal: 0,
                missing_degree: 4,
                n: 10,
                t: 4
            }
        );
    }

    #[test]
    fn degenerate_terminal_sets() {
        let g = Graph::empty(3);
        assert!(immerse_dense(&g, &set(&[1])).unwrap().paths.is_empty());
        assert!(subdivide_dense(&g, &VertexSet::new(3))
            .unwrap()
            .paths
            .is_empty());
        assert!(matches!(
            immerse_dense(&g, &set(&[5])),
            Err(EmbedError::Graph(_))
        ));
    }

    #[test]
    fn subdivision_examples() {
        let g = Graph::complete(6);
        let cert = subdivide_dense(&g, &set(&[0, 2, 3, 5])).unwrap();
        assert_eq!(cert.max_path_length(), 1);

        let g = matching_complement(8).unwrap();
        let cert = subdivide_dense(&g, &set(&[0, 1, 2, 4])).unwrap();
        assert_eq!(cert.path(0, 1).unwrap().route, vec![0, 3, 1]);
        assert!(verify_subdivision(&g, &cert).valid);

        let cert = subdivide_dense(&g, &set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(cert.path(0, 1).unwrap().route, vec![0, 4, 1]);
        assert_eq!(cert.path(2, 3).unwrap().route, vec![2, 5, 3]);
        assert!(verify_subdivision(&g, &cert).valid);
    }

    #[test]
    fn subdivision_precondition_message() {
        let g = matching_complement(8).unwrap();
        let err = subdivide_dense(&g, &set(&[0, 1, 2, 3, 4])).unwrap_err();
        assert_eq!(
            err.to_string(),
            "missing edges within T = 2 exceeds n - |T| - 2Δ = 8 - 5 - 2 * 1 = 1"
        );
    }
}
