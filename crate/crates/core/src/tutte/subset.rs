//! Vertex-exponential subset recursion.
//!
//! For a vertex subset `S` with lowest vertex `a`, every edge subset of the
//! induced graph splits uniquely into the component containing `a` (a
//! connected spanning subgraph on some `P` with `a ∈ P ⊆ S`) and an arbitrary
//! edge subset on `S \ P`. Hence
//!
//! ```text
//! C_S = (1+z)^e(S) - sum_{a ∈ P ⊊ S} C_P (1+z)^e(S\P)
//! D_S = sum_{a ∈ P ⊆ S} u C_P D_{S\P},   D_∅ = 1
//! ```
//!
//! where `e(S)` is the number of edges inside `S`. The sub-subset sums are
//! evaluated directly, `O(3^n)` polynomial products in total.

use std::ops::{AddAssign, Mul, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::binomial_rows;
use super::{EdgeCountPoly, TuttePoly};
use crate::error::{Error, Result};
use crate::graph::{SmallGraph, VertexSubset, MAX_VERTICES};

/// Vertex bound for the bivariate assembly in [`tutte_full`].
pub const MAX_FULL_VERTICES: usize = 12;

/// Above this edge count the `i64` path could overflow; every coefficient
/// handled by the recursion is bounded by `2^m`.
pub const MAX_I64_EDGES: usize = 62;

/// `C_S(z)` for every vertex subset `S`.
#[derive(Debug, Clone)]
pub struct ConnectedCountTable {
    n: usize,
    polys: Vec<EdgeCountPoly>,
}

impl ConnectedCountTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: VertexSubset) -> &EdgeCountPoly {
        &self.polys[s.0 as usize]
    }

    /// `C_V` for the whole vertex set.
    pub fn full(&self) -> &EdgeCountPoly {
        &self.polys[(1usize << self.n) - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexSubset, &EdgeCountPoly)> {
        self.polys
            .iter()
            .enumerate()
            .map(|(s, p)| (VertexSubset(s as u32), p))
    }
}

pub(crate) trait Coeff:
    Clone + Zero + One + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self>,
{
}

impl Coeff for i64 {}
impl Coeff for BigInt {}

/// `acc -= a * b`, schoolbook.
fn sub_product<T: Coeff>(acc: &mut [T], a: &[T], b: &[T])
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            acc[i + j] -= &(ai * bj);
        }
    }
}

/// Subsets of `[0, n)` in increasing popcount order (ties by value).
fn by_popcount(n: usize) -> Vec<u32> {
    let mut order: Vec<u32> = (0..(1u32 << n)).collect();
    order.sort_by_key(|&s| (s.count_ones(), s));
    order
}

fn check_vertices(g: &SmallGraph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::TooLarge {
            what: "vertex count",
            value: g.n(),
            limit,
        });
    }
    Ok(())
}

pub(crate) fn connected_counts_with<T: Coeff>(g: &SmallGraph) -> Vec<Vec<T>>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let n = g.n();
    let m = g.m();
    let inside = g.induced_edge_counts();
    let binom: Vec<Vec<T>> = binomial_rows(m);
    let mut table: Vec<Vec<T>> = vec![Vec::new(); 1 << n];
    table[0] = vec![T::one()];
    for s in by_popcount(n) {
        if s == 0 {
            continue;
        }
        let e_s = inside[s as usize] as usize;
        let mut c = binom[e_s].clone();
        let anchor = 1u32 << s.trailing_zeros();
        let rest = s & !anchor;
        // P = anchor ∪ q for q ⊊ rest
        let mut q = rest;
        while q != 0 {
            q = (q - 1) & rest;
            let p = anchor | q;
            let e_rest = inside[(s & !p) as usize] as usize;
            sub_product(&mut c, &table[p as usize], &binom[e_rest]);
        }
        table[s as usize] = c;
    }
    table
}

/// Connected spanning subgraph counts `c(S, j)` for every vertex subset.
pub fn connected_counts(g: &SmallGraph) -> Result<ConnectedCountTable> {
    check_vertices(g, MAX_VERTICES)?;
    let polys = if g.m() <= MAX_I64_EDGES {
        connected_counts_with::<i64>(g)
            .into_iter()
            .map(|p| EdgeCountPoly::new(p.into_iter().map(BigInt::from).collect()))
            .collect()
    } else {
        connected_counts_with::<BigInt>(g)
            .into_iter()
            .map(EdgeCountPoly::new)
            .collect()
    };
    Ok(ConnectedCountTable { n: g.n(), polys })
}

/// Same table, always computed in arbitrary precision.
pub fn connected_counts_bigint(g: &SmallGraph) -> Result<ConnectedCountTable> {
    check_vertices(g, MAX_VERTICES)?;
    let polys = connected_counts_with::<BigInt>(g)
        .into_iter()
        .map(EdgeCountPoly::new)
        .collect();
    Ok(ConnectedCountTable { n: g.n(), polys })
}

// Bivariate polynomial in (u, z): rows indexed by component count.
type Bivariate = Vec<Vec<BigInt>>;

/// Adds `u * c * d` into `acc`.
fn add_shifted_product(acc: &mut Bivariate, c: &[BigInt], d: &Bivariate) {
    for (comp, row) in d.iter().enumerate() {
        if acc.len() <= comp + 1 {
            acc.resize(comp + 2, Vec::new());
        }
        let target = &mut acc[comp + 1];
        let needed = row.len() + c.len() - 1;
        if target.len() < needed {
            target.resize(needed, BigInt::zero());
        }
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, dj) in row.iter().enumerate() {
                if !dj.is_zero() {
                    target[i + j] += ci * dj;
                }
            }
        }
    }
}

/// `D_V(u, z) = sum_A u^c(A) z^|A|`, as `[components][edges]`.
pub fn component_generating_function(g: &SmallGraph) -> Result<Vec<Vec<BigInt>>> {
    check_vertices(g, MAX_FULL_VERTICES)?;
    let n = g.n();
    let counts = connected_counts(g)?;
    let mut table: Vec<Bivariate> = vec![Vec::new(); 1 << n];
    table[0] = vec![vec![BigInt::one()]];
    for s in by_popcount(n) {
        if s == 0 {
            continue;
        }
        let anchor = 1u32 << s.trailing_zeros();
        let rest = s & !anchor;
        let mut acc: Bivariate = Vec::new();
        // P = anchor ∪ q for every q ⊆ rest, including q = rest
        let mut q = rest;
        loop {
            let p = anchor | q;
            let c = &counts.polys[p as usize].coeffs;
            add_shifted_product(&mut acc, c, &table[(s & !p) as usize]);
            if q == 0 {
                break;
            }
            q = (q - 1) & rest;
        }
        table[s as usize] = acc;
    }
    Ok(table.pop().unwrap())
}

/// Full Tutte polynomial from the component generating function via
/// `T(x,y) = sum_A (x-1)^(c(A)-1) (y-1)^(|A|-n+c(A))`.
pub fn tutte_full(g: &SmallGraph) -> Result<TuttePoly> {
    check_vertices(g, MAX_FULL_VERTICES)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let m = g.m();
    let gf = component_generating_function(g)?;
    let binom: Vec<Vec<BigInt>> = binomial_rows(m.max(n));
    let mut out = vec![vec![BigInt::zero(); m + 1]; n];
    for (comps, row) in gf.iter().enumerate() {
        for (edges, d) in row.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let xa = comps - 1;
            let ya = edges + comps - n;
            for i in 0..=xa {
                let bx = &binom[xa][i];
                let sx = (xa - i) % 2 == 1;
                for k in 0..=ya {
                    let term = d * bx * &binom[ya][k];
                    if sx ^ ((ya - k) % 2 == 1) {
                        out[i][k] -= term;
                    } else {
                        out[i][k] += term;
                    }
                }
            }
        }
    }
    Ok(TuttePoly { coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_path_counts() {
        let c3 = connected_counts(&SmallGraph::cycle(3).unwrap()).unwrap();
        assert_eq!(*c3.full(), EdgeCountPoly::from_i64s(&[0, 0, 3, 1]));
        let p3 = connected_counts(&SmallGraph::path(3).unwrap()).unwrap();
        assert_eq!(*p3.full(), EdgeCountPoly::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn k4_counts_match_enumeration() {
        // frozen from the 2^6 edge-subset enumeration
        let k4 = connected_counts(&SmallGraph::complete(4).unwrap()).unwrap();
        assert_eq!(
            *k4.full(),
            EdgeCountPoly::from_i64s(&[0, 0, 0, 16, 15, 6, 1])
        );
    }

    #[test]
    fn empty_set_and_singletons_are_one() {
        let g = SmallGraph::complete(5).unwrap();
        let t = connected_counts(&g).unwrap();
        assert_eq!(*t.get(VertexSubset::EMPTY), EdgeCountPoly::one());
        for v in 0..5 {
            assert_eq!(*t.get(VertexSubset::singleton(v)), EdgeCountPoly::one());
        }
    }

    #[test]
    fn loops_enter_singletons() {
        let g = SmallGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        let t = connected_counts(&g).unwrap();
        assert_eq!(
            *t.get(VertexSubset::singleton(0)),
            EdgeCountPoly::from_i64s(&[1, 1])
        );
        assert_eq!(t.full().alternating_sum(), BigInt::zero());
    }

    #[test]
    fn i64_and_bigint_paths_agree() {
        let g = SmallGraph::complete(7).unwrap();
        let a = connected_counts(&g).unwrap();
        let b = connected_counts_bigint(&g).unwrap();
        for ((_, pa), (_, pb)) in a.iter().zip(b.iter()) {
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn vertex_limit() {
        let g = SmallGraph::complete(13).unwrap();
        assert!(matches!(tutte_full(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn full_polynomials() {
        assert_eq!(
            tutte_full(&SmallGraph::complete(2).unwrap()).unwrap(),
            TuttePoly::from_terms(&[(1, 1, 0)])
        );
        assert_eq!(
            tutte_full(&SmallGraph::cycle(3).unwrap()).unwrap(),
            TuttePoly::from_terms(&[(1, 2, 0), (1, 1, 0), (1, 0, 1)])
        );
        let k4 = tutte_full(&SmallGraph::complete(4).unwrap()).unwrap();
        assert_eq!(k4.to_string(), "x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3");
    }

    #[test]
    fn disconnected_rejected() {
        let g = SmallGraph::new(3, vec![(0, 1)]).unwrap();
        assert_eq!(tutte_full(&g), Err(Error::Disconnected));
    }
}
