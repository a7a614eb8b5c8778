use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::certificate::Certificate;
use super::search::ImmersionMode;
use crate::graph::Graph;

type Pair = (usize, usize);

fn pair(u: usize, v: usize) -> Pair {
    (u.min(v), u.max(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    TerminalOutOfRange { vertex: usize },
    DuplicateTerminal { vertex: usize },
    MissingPair { pair: Pair },
    DuplicatePair { pair: Pair },
    UnknownPair { ends: [usize; 2] },
    EndpointMismatch { pair: Pair },
    VertexOutOfRange { pair: Pair, vertex: usize },
    NonAdjacentStep { pair: Pair, step: Pair },
    RepeatedVertex { pair: Pair, vertex: usize },
    SharedEdge { edge: Pair, pairs: [Pair; 2] },
    InternalTerminal { pair: Pair, vertex: usize },
    SharedInternalVertex { vertex: usize, pairs: [Pair; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TerminalOutOfRange { vertex } => write!(f, "terminal {vertex} out of range"),
            Violation::DuplicateTerminal { vertex } => write!(f, "terminal {vertex} listed twice"),
            Violation::MissingPair { pair } => write!(f, "no path for pair {pair:?}"),
            Violation::DuplicatePair { pair } => write!(f, "more than one path for pair {pair:?}"),
            Violation::UnknownPair { ends } => {
                write!(f, "path ends {ends:?} are not a terminal pair")
            }
            Violation::EndpointMismatch { pair } => {
                write!(f, "route for {pair:?} does not run between its ends")
            }
            Violation::VertexOutOfRange { pair, vertex } => {
                write!(f, "route for {pair:?} uses vertex {vertex} out of range")
            }
            Violation::NonAdjacentStep { pair, step } => {
                write!(f, "route for {pair:?} steps along non-edge {step:?}")
            }
            Violation::RepeatedVertex { pair, vertex } => {
                write!(f, "route for {pair:?} visits {vertex} twice")
            }
            Violation::SharedEdge { edge, pairs } => {
                write!(f, "edge {edge:?} used by {:?} and {:?}", pairs[0], pairs[1])
            }
            Violation::InternalTerminal { pair, vertex } => {
                write!(f, "route for {pair:?} passes through terminal {vertex}")
            }
            Violation::SharedInternalVertex { vertex, pairs } => {
                write!(
                    f,
                    "internal vertex {vertex} shared by {:?} and {:?}",
                    pairs[0], pairs[1]
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            valid: violations.is_empty(),
            violations,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        write!(f, "invalid:")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Checks a weak or strong clique immersion; the certificate's `kind` is
/// ignored.
pub fn verify_immersion(g: &Graph, cert: &Certificate, mode: ImmersionMode) -> VerificationReport {
    VerificationReport::from_violations(check(g, cert, mode, false))
}

/// Checks a clique subdivision: a strong immersion whose paths are also
/// internally vertex-disjoint.
pub fn verify_subdivision(g: &Graph, cert: &Certificate) -> VerificationReport {
    VerificationReport::from_violations(check(g, cert, ImmersionMode::Strong, true))
}

fn check(g: &Graph, cert: &Certificate, mode: ImmersionMode, disjoint: bool) -> Vec<Violation> {
    let n = g.n();
    let mut out = Vec::new();
    let mut terminals = BTreeSet::new();
    for &v in &cert.terminals {
        if v >= n {
            out.push(Violation::TerminalOutOfRange { vertex: v });
        } else if !terminals.insert(v) {
            out.push(Violation::DuplicateTerminal { vertex: v });
        }
    }

    let mut seen: BTreeSet<Pair> = BTreeSet::new();
    let mut edge_owner: BTreeMap<Pair, Pair> = BTreeMap::new();
    let mut internal_owner: BTreeMap<usize, Pair> = BTreeMap::new();
    for path in &cert.paths {
        let [a, b] = path.ends;
        if a == b || !terminals.contains(&a) || !terminals.contains(&b) {
            out.push(Violation::UnknownPair { ends: path.ends });
            continue;
        }
        let p = pair(a, b);
        if !seen.insert(p) {
            out.push(Violation::DuplicatePair { pair: p });
            continue;
        }
        let route = &path.route;
        if route.first() != Some(&a) || route.last() != Some(&b) {
            out.push(Violation::EndpointMismatch { pair: p });
            continue;
        }
        if let Some(&v) = route.iter().find(|&&v| v >= n) {
            out.push(Violation::VertexOutOfRange { pair: p, vertex: v });
            continue;
        }
        let mut visited = BTreeSet::new();
        for &v in route {
            if !visited.insert(v) {
                out.push(Violation::RepeatedVertex { pair: p, vertex: v });
            }
        }
        for step in route.windows(2) {
            let e = pair(step[0], step[1]);
            if !g.has_edge(e.0, e.1) {
                out.push(Violation::NonAdjacentStep { pair: p, step: e });
            } else if let Some(&other) = edge_owner.get(&e) {
                out.push(Violation::SharedEdge {
                    edge: e,
                    pairs: [other, p],
                });
            } else {
                edge_owner.insert(e, p);
            }
        }
        for &v in path.internal() {
            if mode == ImmersionMode::Strong && terminals.contains(&v) {
                out.push(Violation::InternalTerminal { pair: p, vertex: v });
            }
            if disjoint {
                if let Some(&other) = internal_owner.get(&v) {
                    out.push(Violation::SharedInternalVertex {
                        vertex: v,
                        pairs: [other, p],
                    });
                } else {
                    internal_owner.insert(v, p);
                }
            }
        }
    }

    let ts: Vec<usize> = terminals.iter().copied().collect();
    for (i, &u) in ts.iter().enumerate() {
        for &v in &ts[i + 1..] {
            if !seen.contains(&(u, v)) {
                out.push(Violation::MissingPair { pair: (u, v) });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::certificate::{CertificateKind, PathEntry};
    use super::*;
    use crate::vertex_set::VertexSet;

    fn cert(terminals: &[usize], routes: &[&[usize]]) -> Certificate {
        Certificate::new(
            CertificateKind::StrongImmersion,
            &VertexSet::from_members(0, terminals.iter().copied()),
            routes.iter().map(|r| PathEntry::new(r.to_vec())).collect(),
        )
    }

    #[test]
    fn triangle_is_valid_everywhere() {
        let g = Graph::complete(3);
        let c = cert(&[0, 1, 2], &[&[0, 1], &[0, 2], &[1, 2]]);
        assert!(verify_immersion(&g, &c, ImmersionMode::Strong).valid);
        assert!(verify_immersion(&g, &c, ImmersionMode::Weak).valid);
        assert!(verify_subdivision(&g, &c).valid);
    }

    #[test]
    fn shared_edge_is_named() {
        // K4 minus (0,1) and (0,2): both routed through edge (0,3)
        let g = Graph::from_fn(4, |u, v| !(u == 0 && (v == 1 || v == 2)));
        let c = cert(&[0, 1, 2], &[&[0, 3, 1], &[0, 3, 2], &[1, 2]]);
        let report = verify_immersion(&g, &c, ImmersionMode::Weak);
        assert!(!report.valid);
        assert!(report.violations.contains(&Violation::SharedEdge {
            edge: (0, 3),
            pairs: [(0, 1), (0, 2)]
        }));
    }

    #[test]
    fn strong_rejects_internal_terminal_weak_accepts() {
        let g = Graph::from_fn(3, |u, v| (u, v) != (0, 1));
        // pair (0,1) routed through terminal 2 reuses edges of the other pairs
        let c = cert(&[0, 1, 2], &[&[0, 2, 1], &[0, 2], &[1, 2]]);
        let strong = verify_immersion(&g, &c, ImmersionMode::Strong);
        assert!(strong.violations.contains(&Violation::InternalTerminal {
            pair: (0, 1),
            vertex: 2
        }));
        assert!(!verify_immersion(&g, &c, ImmersionMode::Weak).valid);
        let c2 = cert(&[0, 1], &[&[0, 2, 1]]);
        assert!(verify_immersion(&g, &c2, ImmersionMode::Weak).valid);
        assert!(!verify_immersion(&g, &cert(&[0, 1, 2], &[&[0, 2, 1]]), ImmersionMode::Weak).valid);
    }

    #[test]
    fn shared_internal_vertex() {
        let g = Graph::complete(5);
        let c = cert(&[0, 1, 2, 3], &[]);
        assert_eq!(
            verify_subdivision(&g, &c)
                .violations
                .iter()
                .filter(|v| matches!(v, Violation::MissingPair { .. }))
                .count(),
            6
        );
        let g = Graph::from_fn(6, |_, v| v >= 3);
        let c = cert(&[0, 1], &[&[0, 4, 1]]);
        assert!(verify_subdivision(&g, &c).valid);
        let c = cert(&[0, 1, 2], &[&[0, 3, 1], &[0, 4, 2], &[1, 5, 3, 2]]);
        let report = verify_subdivision(&g, &c);
        assert_eq!(
            report.violations,
            vec![Violation::SharedInternalVertex {
                vertex: 3,
                pairs: [(0, 1), (1, 2)]
            }]
        );
        assert!(verify_immersion(&g, &c, ImmersionMode::Strong).valid);
    }

    #[test]
    fn structural_violations() {
        let g = Graph::complete(4);
        let c = cert(&[0, 1], &[&[0, 1], &[1, 0]]);
        assert!(verify_immersion(&g, &c, ImmersionMode::Weak)
            .violations
            .contains(&Violation::DuplicatePair { pair: (0, 1) }));
        let c = cert(&[0, 1], &[&[0, 2]]);
        let report = verify_immersion(&g, &c, ImmersionMode::Weak);
        assert!(report
            .violations
            .contains(&Violation::UnknownPair { ends: [0, 2] }));
        assert!(report
            .violations
            .contains(&Violation::MissingPair { pair: (0, 1) }));
        let mut c = cert(&[0, 1], &[&[0, 2, 1]]);
        c.paths[0].route = vec![0, 2, 0, 1];
        let report = verify_immersion(&g, &c, ImmersionMode::Weak);
        assert!(report.violations.contains(&Violation::RepeatedVertex {
            pair: (0, 1),
            vertex: 0
        }));
        let c = cert(&[0, 9], &[]);
        assert!(!verify_immersion(&g, &c, ImmersionMode::Weak).valid);
        let g = Graph::empty(3);
        let c = cert(&[0, 1], &[&[0, 2, 1]]);
        assert!(verify_immersion(&g, &c, ImmersionMode::Weak)
            .violations
            .contains(&Violation::NonAdjacentStep {
                pair: (0, 1),
                step: (0, 2)
            }));
    }
}
