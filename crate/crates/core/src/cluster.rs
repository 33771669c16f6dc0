//! Dimer clusters on the square lattice and their overlap graphs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, MAX_VERTICES};
use crate::tutte;

/// Largest cluster size accepted by [`enumerate_clusters`].
pub const MAX_ENUM_DIMERS: usize = 8;

pub type Site = (i32, i32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    H,
    V,
}

/// A unit lattice edge: `base` and `base + e_axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimer {
    pub x: i32,
    pub y: i32,
    pub axis: Axis,
}

impl Dimer {
    pub const fn new(x: i32, y: i32, axis: Axis) -> Self {
        Dimer { x, y, axis }
    }

    pub const fn h(x: i32, y: i32) -> Self {
        Dimer::new(x, y, Axis::H)
    }

    pub const fn v(x: i32, y: i32) -> Self {
        Dimer::new(x, y, Axis::V)
    }

    pub fn sites(self) -> [Site; 2] {
        match self.axis {
            Axis::H => [(self.x, self.y), (self.x + 1, self.y)],
            Axis::V => [(self.x, self.y), (self.x, self.y + 1)],
        }
    }

    pub fn overlaps(self, other: Dimer) -> bool {
        let [a, b] = self.sites();
        let [c, d] = other.sites();
        a == c || a == d || b == c || b == d
    }

    pub fn translate(self, dx: i32, dy: i32) -> Self {
        Dimer::new(self.x + dx, self.y + dy, self.axis)
    }

    /// The four dimers containing `site`.
    pub fn through(site: Site) -> [Dimer; 4] {
        let (x, y) = site;
        [
            Dimer::h(x - 1, y),
            Dimer::h(x, y),
            Dimer::v(x, y - 1),
            Dimer::v(x, y),
        ]
    }

    fn from_sites(a: Site, b: Site) -> Dimer {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.1 == hi.1 {
            debug_assert_eq!(hi.0 - lo.0, 1);
            Dimer::h(lo.0, lo.1)
        } else {
            debug_assert_eq!(hi.1 - lo.1, 1);
            Dimer::v(lo.0, lo.1)
        }
    }
}

impl fmt::Display for Dimer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}){:?}", self.x, self.y, self.axis)
    }
}

/// Distinct dimers, sorted, translated so the occupied sites touch both axes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster {
    dimers: Vec<Dimer>,
}

/// JSONL record: `{"dimers":[[x,y,"H"],...],"psi":-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterRecord {
    pub dimers: Vec<(i32, i32, Axis)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<serde_json::Number>,
}

impl Cluster {
    pub fn dimers(&self) -> &[Dimer] {
        &self.dimers
    }

    pub fn len(&self) -> usize {
        self.dimers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimers.is_empty()
    }

    pub fn sites(&self) -> BTreeSet<Site> {
        self.dimers.iter().flat_map(|d| d.sites()).collect()
    }

    pub fn is_canonical(&self) -> bool {
        canonicalize(self.dimers.clone()).as_ref() == Ok(self)
    }

    /// Raw translated dimer list; the result is generally not canonical.
    pub fn translated(&self, dx: i32, dy: i32) -> Vec<Dimer> {
        self.dimers.iter().map(|d| d.translate(dx, dy)).collect()
    }

    pub fn to_record(&self, psi: Option<&BigInt>) -> ClusterRecord {
        ClusterRecord {
            dimers: self.dimers.iter().map(|d| (d.x, d.y, d.axis)).collect(),
            psi: psi.map(|p| p.to_string().parse().expect("integer literal")),
        }
    }

    pub fn from_record(rec: &ClusterRecord) -> Result<Cluster> {
        canonicalize(
            rec.dimers
                .iter()
                .map(|&(x, y, a)| Dimer::new(x, y, a))
                .collect(),
        )
    }
}

/// Translates to the canonical origin and sorts. Fails on repeated dimers.
pub fn canonicalize(mut dimers: Vec<Dimer>) -> Result<Cluster> {
    dimers.sort();
    if let Some(w) = dimers.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateDimer(w[0].to_string()));
    }
    let min_x = dimers.iter().map(|d| d.x).min().unwrap_or(0);
    let min_y = dimers.iter().map(|d| d.y).min().unwrap_or(0);
    // base is the lowest site of each dimer, so it carries the minima
    for d in &mut dimers {
        *d = d.translate(-min_x, -min_y);
    }
    Ok(Cluster { dimers })
}

/// Canonical form up to translations and the eight lattice symmetries.
pub fn canonicalize_symmetric(dimers: &[Dimer]) -> Result<Cluster> {
    let transforms: [fn(Site) -> Site; 8] = [
        |(x, y)| (x, y),
        |(x, y)| (-y, x),
        |(x, y)| (-x, -y),
        |(x, y)| (y, -x),
        |(x, y)| (-x, y),
        |(x, y)| (x, -y),
        |(x, y)| (y, x),
        |(x, y)| (-y, -x),
    ];
    transforms
        .iter()
        .map(|t| {
            let mapped = dimers
                .iter()
                .map(|d| {
                    let [a, b] = d.sites();
                    Dimer::from_sites(t(a), t(b))
                })
                .collect();
            canonicalize(mapped)
        })
        .min_by(|a, b| match (a, b) {
            (Ok(a), Ok(b)) => a.cmp(b),
            (Err(_), _) => std::cmp::Ordering::Less,
            (_, Err(_)) => std::cmp::Ordering::Greater,
        })
        .expect("eight transforms")
}

/// Vertex `i` is the `i`-th dimer; one edge per overlapping pair.
pub fn overlap_graph(c: &Cluster) -> Result<SmallGraph> {
    overlap_graph_of(c.dimers())
}

pub fn overlap_graph_of(dimers: &[Dimer]) -> Result<SmallGraph> {
    let k = dimers.len();
    if k > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "cluster size",
            value: k,
            limit: MAX_VERTICES,
        });
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if dimers[i].overlaps(dimers[j]) {
                edges.push((i, j));
            }
        }
    }
    SmallGraph::new(k, edges)
}

/// Ursell coefficient of the cluster's overlap graph.
pub fn psi_of_cluster(c: &Cluster) -> Result<BigInt> {
    tutte::ursell(&overlap_graph(c)?)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::OutOfRange(format!("cluster size {k}")));
    }
    if k > MAX_ENUM_DIMERS {
        return Err(Error::TooLarge {
            what: "cluster size",
            value: k,
            limit: MAX_ENUM_DIMERS,
        });
    }
    Ok(())
}

/// Clusters one dimer larger than `c` obtained by attaching an overlapping dimer.
fn extensions(c: &Cluster, out: &mut BTreeSet<Cluster>) {
    let present: BTreeSet<Dimer> = c.dimers.iter().copied().collect();
    for site in c.sites() {
        for d in Dimer::through(site) {
            if !present.contains(&d) {
                let mut next = c.dimers.clone();
                next.push(d);
                out.insert(canonicalize(next).expect("distinct by construction"));
            }
        }
    }
}

/// All canonical connected clusters of `k` distinct dimers, each once, in
/// lexicographic order of their sorted dimer lists.
///
/// Grows level by level: every connected cluster has a dimer whose removal
/// leaves a connected cluster (a leaf of a spanning tree of its overlap
/// graph), so attaching overlapping dimers to all clusters of size `k - 1`
/// reaches every cluster of size `k`.
pub fn enumerate_clusters(k: usize) -> Result<impl Iterator<Item = Cluster>> {
    check_k(k)?;
    let mut level: BTreeSet<Cluster> = [Dimer::h(0, 0), Dimer::v(0, 0)]
        .into_iter()
        .map(|d| Cluster { dimers: vec![d] })
        .collect();
    for _ in 1..k {
        let mut next = BTreeSet::new();
        for c in &level {
            extensions(c, &mut next);
        }
        level = next;
    }
    Ok(level.into_iter())
}

/// [`enumerate_clusters`] quotiented by the lattice symmetry group.
pub fn enumerate_clusters_symmetric(k: usize) -> Result<impl Iterator<Item = Cluster>> {
    let reps: BTreeSet<Cluster> = enumerate_clusters(k)?
        .map(|c| canonicalize_symmetric(c.dimers()))
        .collect::<Result<_>>()?;
    Ok(reps.into_iter())
}

/// Every cluster of `k` distinct dimers inside a `window x window` block of
/// sites with a connected overlap graph, deduplicated up to translation.
/// Exhaustive over `k`-subsets; intended as a cross-check for small `k`.
pub fn clusters_in_window(k: usize, window: i32) -> Result<BTreeSet<Cluster>> {
    check_k(k)?;
    let mut all = Vec::new();
    for x in 0..window {
        for y in 0..window {
            if x + 1 < window {
                all.push(Dimer::h(x, y));
            }
            if y + 1 < window {
                all.push(Dimer::v(x, y));
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if all.len() < k {
        return Ok(found);
    }
    loop {
        let pick: Vec<Dimer> = idx.iter().map(|&i| all[i]).collect();
        if overlap_graph_of(&pick)?.is_connected() {
            found.insert(canonicalize(pick)?);
        }
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            if idx[i] < all.len() - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
