use serde::{Deserialize, Serialize};

use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    StrongImmersion,
    WeakImmersion,
    Subdivision,
}

/// One connecting path: `route` runs from `ends[0]` to `ends[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEntry {
    pub ends: [usize; 2],
    pub route: Vec<usize>,
}

impl PathEntry {
    pub fn new(route: Vec<usize>) -> Self {
        let ends = [route[0], *route.last().expect("route is non-empty")];
        Self { ends, route }
    }

    /// Vertices strictly between the ends.
    pub fn internal(&self) -> &[usize] {
        match self.route.len() {
            0..=2 => &[],
            len => &self.route[1..len - 1],
        }
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.route.len().saturating_sub(1)
    }
}

/// Terminal (or branch) vertices plus one path per terminal pair.
///
/// Paths are stored in lexicographic order of their ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub terminals: Vec<usize>,
    pub paths: Vec<PathEntry>,
}

impl Certificate {
    pub fn new(kind: CertificateKind, terminals: &VertexSet, mut paths: Vec<PathEntry>) -> Self {
        paths.sort_by_key(|p| {
            let [a, b] = p.ends;
            (a.min(b), a.max(b))
        });
        Self {
            kind,
            terminals: terminals.to_vec(),
            paths,
        }
    }

    pub fn path(&self, u: usize, v: usize) -> Option<&PathEntry> {
        self.paths
            .iter()
            .find(|p| p.ends == [u, v] || p.ends == [v, u])
    }

    pub fn max_path_length(&self) -> usize {
        self.paths.iter().map(PathEntry::length).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema() {
        let t = VertexSet::from_members(4, [0, 1]);
        let cert = Certificate::new(
            CertificateKind::StrongImmersion,
            &t,
            vec![PathEntry::new(vec![0, 3, 1])],
        );
        let v: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "kind": "strong_immersion",
                "terminals": [0, 1],
                "paths": [{"ends": [0, 1], "route": [0, 3, 1]}]
            })
        );
        assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn path_parts() {
        let p = PathEntry::new(vec![4, 2, 7, 1]);
        assert_eq!(p.ends, [4, 1]);
        assert_eq!(p.internal(), &[2, 7]);
        assert_eq!(p.length(), 3);
        assert!(PathEntry::new(vec![0, 1]).internal().is_empty());
    }
}
