//! Small labeled undirected multigraphs.
//!
//! Edge identity is the position in the edge list. Loops `(u, u)` and
//! repeated pairs are allowed; every backend in [`crate::tutte`] counts
//! parallel edges as distinct edges.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count. The subset recursion stores one
/// polynomial per vertex subset.
pub const MAX_VERTICES: usize = 16;

/// A set of vertices as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSubset(pub u32);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    pub fn full(n: usize) -> Self {
        VertexSubset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSubset(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSubset(vs.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Lowest-index member, used as the anchor of the subset recursion.
    #[inline]
    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

/// Undirected multigraph on at most [`MAX_VERTICES`] labeled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<u32>,
}

/// JSON wire form: `{"n": 3, "edges": [[0,1],[1,2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

fn adjacency_of(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

impl SmallGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(Error::VertexCount(n));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::EndpointOutOfRange { u, v, n });
        }
        let adjacency = adjacency_of(n, &edges);
        Ok(SmallGraph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Self::new(n, edges)
    }

    pub fn star(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|v| (0, v)).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(g.n, g.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbor mask of `v`; bit `v` is set iff `v` carries a loop.
    pub fn adjacency(&self, v: usize) -> u32 {
        self.adjacency[v]
    }

    pub fn adjacency_is_consistent(&self) -> bool {
        adjacency_of(self.n, &self.edges) == self.adjacency
    }

    pub fn full_set(&self) -> VertexSubset {
        VertexSubset::full(self.n)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_of(&self, start: usize, within: VertexSubset) -> VertexSubset {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adjacency[v] & within.0 & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        VertexSubset(seen)
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0, self.full_set()) == self.full_set()
    }

    /// Indices of edges with both endpoints in `s`, in edge-list order.
    pub fn edges_within(&self, s: VertexSubset) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| s.contains(u) && s.contains(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of edges with both endpoints in `s`, for every subset `s`.
    pub fn induced_edge_counts(&self) -> Vec<u32> {
        let size = 1usize << self.n;
        let mut counts = vec![0u32; size];
        for (s, slot) in counts.iter_mut().enumerate() {
            *slot = self
                .edges
                .iter()
                .filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1)
                .count() as u32;
        }
        counts
    }
}

/// Random connected graph: a random spanning tree plus `extra` random edges.
/// Extra edges may repeat pairs when `multi` is set; loops are never added.
pub fn random_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    extra: usize,
    multi: bool,
) -> Result<SmallGraph> {
    let mut edges = Vec::with_capacity(n + extra);
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut budget = extra;
    let mut attempts = 0;
    while budget > 0 && n > 1 && attempts < 100 * (extra + 1) {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let pair = (u.min(v), u.max(v));
        if !multi && edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == pair) {
            continue;
        }
        edges.push(pair);
        budget -= 1;
    }
    // shuffle labels so vertex 0 is not always the tree root
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    SmallGraph::new(
        n,
        edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect(),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of connected simple graphs on
/// `n <= 7` vertices, in a deterministic order.
pub fn connected_simple_graphs(n: usize) -> Result<Vec<SmallGraph>> {
    if !(1..=7).contains(&n) {
        return Err(Error::TooLarge {
            what: "vertex count for isomorphism classes",
            value: n,
            limit: 7,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let perms = permutations(n);
    let mut reps = std::collections::BTreeSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !SmallGraph::new(n, edges.clone())?.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u32, |acc, &(u, v)| acc | 1 << index[p[u]][p[v]])
            })
            .min()
            .unwrap();
        reps.insert(canon);
    }
    reps.into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            SmallGraph::new(n, edges)
        })
        .collect()
}
