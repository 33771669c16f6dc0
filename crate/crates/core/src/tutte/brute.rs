//! Definitional sums over all `2^m` edge subsets.

use num_bigint::BigInt;

use super::EdgeCountPoly;
use crate::error::{Error, Result};
use crate::graph::SmallGraph;

/// Largest edge count accepted by the enumeration backends.
pub const MAX_BRUTE_EDGES: usize = 24;

fn spans_connected(n: usize, edges: &[(usize, usize)], subset: u32, adj: &mut [u32]) -> bool {
    adj.fill(0);
    let mut bits = subset;
    while bits != 0 {
        let e = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, v) = edges[e];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let full = ((1u64 << n) - 1) as u32;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

/// `c(V, j)` for the whole vertex set by enumerating every edge subset.
pub fn connected_spanning_counts_brute(g: &SmallGraph) -> Result<EdgeCountPoly> {
    let m = g.m();
    if m > MAX_BRUTE_EDGES {
        return Err(Error::TooLarge {
            what: "edge count for subset enumeration",
            value: m,
            limit: MAX_BRUTE_EDGES,
        });
    }
    let mut counts = vec![0u64; m + 1];
    let mut adj = vec![0u32; g.n()];
    let need = g.n() as u32 - 1;
    for subset in 0u32..(1u32 << m) {
        if subset.count_ones() >= need && spans_connected(g.n(), g.edges(), subset, &mut adj) {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    Ok(EdgeCountPoly::new(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// Ursell coefficient from its definition: the sum of `(-1)^|A|` over edge
/// subsets `A` that connect and span every vertex. Zero for disconnected graphs.
pub fn ursell_brute(g: &SmallGraph) -> Result<BigInt> {
    let m = g.m();
    if m > MAX_BRUTE_EDGES {
        return Err(Error::TooLarge {
            what: "edge count for subset enumeration",
            value: m,
            limit: MAX_BRUTE_EDGES,
        });
    }
    let mut sum = 0i64;
    let mut adj = vec![0u32; g.n()];
    let need = g.n() as u32 - 1;
    for subset in 0u32..(1u32 << m) {
        if subset.count_ones() >= need && spans_connected(g.n(), g.edges(), subset, &mut adj) {
            sum += if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(BigInt::from(sum))
}
