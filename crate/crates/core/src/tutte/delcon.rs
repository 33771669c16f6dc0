//! Deletion-contraction evaluation of `T_G(x, y)` at rational points.
//!
//! Parallel classes are handled in one step: for a class of `k` parallel
//! edges between `u` and `v`, with `H` the graph after contracting the class,
//!
//! - if removing the class disconnects `u` from `v`:
//!   `T(G) = (x + y + ... + y^(k-1)) T(H)`,
//! - otherwise `T(G) = T(G - class) + (1 + y + ... + y^(k-1)) T(H)`.
//!
//! Loops contribute a factor `y` each. Intermediate multigraphs are memoized
//! on their compacted multiplicity matrix.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::SmallGraph;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Multigraph {
    n: usize,
    // Row-major n x n, symmetric, zero diagonal.
    mult: Vec<u32>,
}

impl Multigraph {
    fn at(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    fn set(&mut self, u: usize, v: usize, k: u32) {
        self.mult[u * self.n + v] = k;
        self.mult[v * self.n + u] = k;
    }

    /// Drops isolated vertices, keeping relative order.
    fn compact(self) -> Multigraph {
        let keep: Vec<usize> = (0..self.n)
            .filter(|&u| (0..self.n).any(|v| self.at(u, v) > 0))
            .collect();
        if keep.len() == self.n {
            return self;
        }
        let n = keep.len();
        let mut mult = vec![0; n * n];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                mult[i * n + j] = self.at(u, v);
            }
        }
        Multigraph { n, mult }
    }

    fn connected_pair(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for (v, s) in seen.iter_mut().enumerate() {
                if !*s && self.at(u, v) > 0 {
                    *s = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Merges `v` into `u`; the `u`-`v` class itself must already be removed.
    fn contract(&self, u: usize, v: usize) -> Multigraph {
        let mut g = self.clone();
        for w in 0..self.n {
            if w != u && w != v {
                let k = g.at(u, w) + g.at(v, w);
                g.set(u, w, k);
            }
            g.set(v, w, 0);
        }
        g
    }

    /// Endpoints of a class at a vertex of minimum distinct-neighbor degree.
    fn pick_class(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .filter_map(|u| {
                let nbrs: Vec<usize> = (0..self.n).filter(|&v| self.at(u, v) > 0).collect();
                nbrs.first().map(|&v| (nbrs.len(), u, v))
            })
            .min()
            .map(|(_, u, v)| (u, v))
    }
}

struct Evaluator<'a> {
    x: &'a BigRational,
    y: &'a BigRational,
    // geometric[k] = 1 + y + ... + y^(k-1)
    geometric: Vec<BigRational>,
    y_powers: Vec<BigRational>,
    memo: HashMap<Multigraph, BigRational>,
}

impl Evaluator<'_> {
    fn ensure_powers(&mut self, k: usize) {
        while self.y_powers.len() <= k {
            let next = self.y_powers.last().unwrap() * self.y;
            self.y_powers.push(next);
        }
        while self.geometric.len() <= k {
            let len = self.geometric.len();
            let next = self.geometric.last().unwrap() + &self.y_powers[len - 1];
            self.geometric.push(next);
        }
    }

    fn eval(&mut self, g: Multigraph) -> BigRational {
        let g = g.compact();
        if g.n == 0 {
            return BigRational::one();
        }
        if let Some(v) = self.memo.get(&g) {
            return v.clone();
        }
        let (u, v) = g.pick_class().expect("compacted graph has an edge");
        let k = g.at(u, v) as usize;
        self.ensure_powers(k);
        let mut deleted = g.clone();
        deleted.set(u, v, 0);
        let contracted = deleted.contract(u, v);
        let value = if deleted.connected_pair(u, v) {
            let factor = self.geometric[k].clone();
            let rest = self.eval(deleted);
            let merged = self.eval(contracted);
            rest + factor * merged
        } else {
            let factor = self.x + (&self.geometric[k] - BigRational::one());
            factor * self.eval(contracted)
        };
        self.memo.insert(g, value.clone());
        value
    }
}

/// Exact `T_G(x, y)`; disconnected graphs evaluate to the product over components.
pub fn tutte_eval_delcon(g: &SmallGraph, x: &BigRational, y: &BigRational) -> BigRational {
    let n = g.n();
    let mut mg = Multigraph {
        n,
        mult: vec![0; n * n],
    };
    let mut loops = 0usize;
    for &(a, b) in g.edges() {
        if a == b {
            loops += 1;
        } else {
            let k = mg.at(a, b) + 1;
            mg.set(a, b, k);
        }
    }
    let mut ev = Evaluator {
        x,
        y,
        geometric: vec![BigRational::zero()],
        y_powers: vec![BigRational::one()],
        memo: HashMap::new(),
    };
    let body = ev.eval(mg);
    let mut loop_factor = BigRational::one();
    for _ in 0..loops {
        loop_factor *= y;
    }
    body * loop_factor
}

/// Integer-point convenience wrapper.
pub fn tutte_eval_delcon_int(g: &SmallGraph, x: i64, y: i64) -> BigRational {
    tutte_eval_delcon(
        g,
        &BigRational::from_integer(x.into()),
        &BigRational::from_integer(y.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn at(g: &SmallGraph, x: i64, y: i64) -> BigRational {
        tutte_eval_delcon_int(g, x, y)
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn tree_is_x_to_the_n_minus_one() {
        let tree = SmallGraph::path(4).unwrap();
        assert_eq!(at(&tree, 2, 5), int(8));
    }

    #[test]
    fn small_examples() {
        assert_eq!(at(&SmallGraph::cycle(3).unwrap(), 1, 0), int(2));
        assert_eq!(at(&SmallGraph::complete(4).unwrap(), 1, 1), int(16));
        let lp = SmallGraph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(at(&lp, 7, 3), int(3));
        assert_eq!(at(&SmallGraph::new(3, vec![]).unwrap(), 4, 4), int(1));
    }

    #[test]
    fn parallel_pair_is_x_plus_y() {
        let g = SmallGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(at(&g, 3, 5), int(8));
        let triple = SmallGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(at(&triple, 3, 5), int(3 + 5 + 25));
    }

    #[test]
    fn rational_point() {
        // C3: x^2 + x + y at (1/2, 1/3) = 1/4 + 1/2 + 1/3 = 13/12
        let x = BigRational::new(1.into(), 2.into());
        let y = BigRational::new(1.into(), 3.into());
        let v = tutte_eval_delcon(&SmallGraph::cycle(3).unwrap(), &x, &y);
        assert_eq!(v, BigRational::new(13.into(), 12.into()));
    }

    #[test]
    fn disconnected_is_product() {
        // two disjoint triangles: (x^2+x+y)^2 at (2,3) = 81
        let g = SmallGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(at(&g, 2, 3), int(81));
    }
}
