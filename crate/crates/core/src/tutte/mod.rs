//! Tutte polynomial and Ursell coefficient backends.
//!
//! The Ursell coefficient of a connected graph is
//! `psi(G) = sum over connected spanning edge subsets A of (-1)^|A|`, and the
//! rank-nullity expansion of the Tutte polynomial at `(1, 0)` gives
//! `psi(G) = (-1)^(n-1) T_G(1, 0)`. Three routes compute it:
//!
//! - [`ursell_brute`]: the definitional sum over all `2^m` edge subsets;
//! - [`tutte_eval_delcon`]: deletion-contraction at any rational point;
//! - [`tutte_10_bhkk`]: the subset recursion over vertex sets, `O(3^n)`.

mod brute;
mod delcon;
mod poly;
mod subset;

use num_bigint::BigInt;
use num_traits::Zero;

pub use brute::{connected_spanning_counts_brute, ursell_brute, MAX_BRUTE_EDGES};
pub use delcon::{tutte_eval_delcon, tutte_eval_delcon_int};
pub use poly::{EdgeCountPoly, TuttePoly};
pub use subset::{
    component_generating_function, connected_counts, connected_counts_bigint, tutte_full,
    ConnectedCountTable, MAX_FULL_VERTICES, MAX_I64_EDGES,
};

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, MAX_VERTICES};

fn sign_for(n: usize) -> i64 {
    if n % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `T_G(1, 0)` through the connected spanning subgraph counts:
/// `(-1)^(n-1) sum_j (-1)^j c(V, j)`.
pub fn tutte_10_bhkk(g: &SmallGraph) -> Result<BigInt> {
    if g.n() > MAX_VERTICES {
        return Err(Error::VertexCount(g.n()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let alternating = if g.m() <= MAX_I64_EDGES {
        let table = subset::connected_counts_with::<i64>(g);
        let full = table.last().unwrap();
        let s: i64 = full
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 0 { *c } else { -*c })
            .sum();
        BigInt::from(s)
    } else {
        connected_counts(g)?.full().alternating_sum()
    };
    Ok(alternating * sign_for(g.n()))
}

/// Ursell coefficient `(-1)^(n-1) T_G(1, 0)` of a connected graph.
pub fn ursell(g: &SmallGraph) -> Result<BigInt> {
    Ok(tutte_10_bhkk(g)? * sign_for(g.n()))
}

/// `T_G(1, 0)` by deletion-contraction, as an integer.
pub fn tutte_10_delcon(g: &SmallGraph) -> BigInt {
    let v = tutte_eval_delcon_int(g, 1, 0);
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Whether every backend agrees on `g`; brute force only when `m` allows it.
pub fn backends_agree(g: &SmallGraph) -> Result<bool> {
    let sign = BigInt::from(sign_for(g.n()));
    let bhkk = tutte_10_bhkk(g)?;
    let delcon = tutte_10_delcon(g);
    if bhkk != delcon {
        return Ok(false);
    }
    if g.m() <= MAX_BRUTE_EDGES {
        let brute = ursell_brute(g)?;
        if brute != &sign * &bhkk {
            return Ok(false);
        }
    }
    Ok(g.has_loop() || bhkk > BigInt::zero())
}
