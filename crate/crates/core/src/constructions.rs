//! Deterministic generators for the extremal families, plus a seeded
//! Erdős–Rényi sampler for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("star_of_clique needs n >= t - 2 >= 1, got n = {n}, t = {t}")]
    StarOfClique { n: usize, t: usize },
    #[error("matching complement needs an even n >= 2, got {0}")]
    OddMatching(usize),
    #[error("disjoint union needs t >= 2 and n >= 4t/3, got n = {n}, t = {t}")]
    Union { n: usize, t: usize },
    #[error("immersion tightness needs t >= 2 and n - t even and positive, got n = {n}, t = {t}")]
    Tightness { n: usize, t: usize },
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
}

/// A clique `K` on vertices `0..t-2`; every other vertex is adjacent to
/// exactly `K`. Has no weak `K_t`-immersion and `2^(t-2)(n-t+3)` cliques.
pub fn star_of_clique(n: usize, t: usize) -> Result<Graph, ConstructionError> {
    if t < 3 || n < t - 2 {
        return Err(ConstructionError::StarOfClique { n, t });
    }
    let k = t - 2;
    Ok(Graph::from_fn(n, |u, _| u < k))
}

/// `K_n` minus the perfect matching `{(2i, 2i+1)}`.
pub fn matching_complement(n: usize) -> Result<Graph, ConstructionError> {
    if n < 2 || n % 2 == 1 {
        return Err(ConstructionError::OddMatching(n));
    }
    Ok(Graph::from_fn(n, |u, v| u / 2 != v / 2))
}

/// Block sizes for [`disjoint_union_matching_complements`]: blocks of the
/// largest even size strictly below `4t/3`, with the remainder added to the
/// final block.
pub fn union_block_sizes(n: usize, t: usize) -> Result<Vec<usize>, ConstructionError> {
    // largest even e with 3e < 4t
    let block = ((4 * t).saturating_sub(1) / 3) & !1;
    if t < 2 || block < 2 || 3 * n < 4 * t {
        return Err(ConstructionError::Union { n, t });
    }
    let count = n / block;
    let mut sizes = vec![block; count];
    *sizes.last_mut().expect("n >= block") += n - count * block;
    Ok(sizes)
}

/// Disjoint union of matching complements sized by [`union_block_sizes`].
/// A block of odd size is `K_s` minus a matching covering all but its last
/// vertex.
pub fn disjoint_union_matching_complements(n: usize, t: usize) -> Result<Graph, ConstructionError> {
    let sizes = union_block_sizes(n, t)?;
    let mut block_of = Vec::with_capacity(n);
    let mut start_of = Vec::with_capacity(n);
    let mut start = 0;
    for (b, &s) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, s));
        start_of.extend(std::iter::repeat_n(start, s));
        start += s;
    }
    Ok(Graph::from_fn(n, |u, v| {
        block_of[u] == block_of[v] && {
            let (a, b) = (u - start_of[u], v - start_of[v]);
            let size = sizes[block_of[u]];
            let matched = |i: usize| i + 1 < size || size % 2 == 0;
            !(a / 2 == b / 2 && matched(a) && matched(b))
        }
    }))
}

/// The graph showing the missing-degree threshold for strong immersions
/// with prescribed ends is sharp.
#[derive(Debug, Clone)]
pub struct TightnessInstance {
    pub graph: Graph,
    /// The designated end set `T = 0..t`.
    pub terminals: VertexSet,
    /// The single non-adjacent pair inside `T`: `(0, 1)`.
    pub missing_pair: (usize, usize),
}

/// `T = 0..t` misses only the pair `(0, 1)`; `S1 = t..t+h` and
/// `S2 = t+h..n` are cliques of size `h = (n-t)/2` with no edges between
/// them; `S1` is complete to `T - {1}` and `S2` is complete to `T - {0}`.
pub fn immersion_tightness(n: usize, t: usize) -> Result<TightnessInstance, ConstructionError> {
    if t < 2 || n <= t || (n - t) % 2 == 1 {
        return Err(ConstructionError::Tightness { n, t });
    }
    let h = (n - t) / 2;
    #[derive(PartialEq, Clone, Copy)]
    enum Part {
        T,
        S1,
        S2,
    }
    let part = |v: usize| {
        if v < t {
            Part::T
        } else if v < t + h {
            Part::S1
        } else {
            Part::S2
        }
    };
    let graph = Graph::from_fn(n, |u, v| match (part(u), part(v)) {
        (Part::T, Part::T) => (u, v) != (0, 1),
        (Part::T, Part::S1) => u != 1,
        (Part::T, Part::S2) => u != 0,
        (Part::S1, Part::S1) | (Part::S2, Part::S2) => true,
        _ => false,
    });
    Ok(TightnessInstance {
        graph,
        terminals: VertexSet::from_members(n, 0..t),
        missing_pair: (0, 1),
    })
}

/// G(n, p) sample; each pair `u < v` is decided in lexicographic order by
/// one draw from a ChaCha8 stream seeded with `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, ConstructionError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ConstructionError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Graph::from_fn(n, |_, _| rng.random::<f64>() < p))
}
