//! Invariant suite behind `dimerlab selfcheck`. The report depends only on
//! the seed and sample count, never on timing.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster;
use crate::error::Result;
use crate::graph::{self, SmallGraph};
use crate::series::{self, RationalQ};
use crate::strip::{self, Boundary, StripModel};
use crate::tutte;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", l.name, l.detail)?;
        }
        Ok(())
    }
}

fn corpus(seed: u64, samples: usize) -> Result<Vec<SmallGraph>> {
    let mut graphs = Vec::new();
    for n in 1..=5 {
        graphs.extend(graph::connected_simple_graphs(n)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(2..=8);
        let extra = rng.gen_range(0..=(20 - (n - 1)).min(12));
        graphs.push(graph::random_connected(&mut rng, n, extra, true)?);
    }
    Ok(graphs)
}

fn union_find_connected(g: &SmallGraph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn root(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        let (a, b) = (root(&parent, u), root(&parent, v));
        parent[a] = b;
    }
    let r = root(&parent, 0);
    (0..g.n()).all(|v| root(&parent, v) == r)
}

fn check_graphs(report: &mut Report, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let mut bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(0..=2 * n);
        let edges = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let g = SmallGraph::new(n, edges)?;
        if !g.adjacency_is_consistent()
            || g.is_connected() != union_find_connected(&g)
            || g.edges_within(g.full_set()).len() != g.m()
        {
            bad += 1;
        }
    }
    report.push(
        "graph-core",
        bad == 0,
        format!("1000 random graphs, {bad} mismatches"),
    );
    Ok(())
}

fn check_tutte(report: &mut Report, seed: u64, samples: usize) -> Result<()> {
    let graphs = corpus(seed, samples)?;
    let mut disagree = 0;
    let mut trees = 0;
    let mut totals = 0;
    for g in &graphs {
        if !tutte::backends_agree(g)? {
            disagree += 1;
        }
        let counts = tutte::connected_counts(g)?;
        let full = counts.full();
        let spanning = tutte::tutte_eval_delcon_int(g, 1, 1).to_integer();
        if full.coeff(g.n() - 1) != spanning {
            trees += 1;
        }
        if full.total() != tutte::connected_spanning_counts_brute(g)?.total() {
            totals += 1;
        }
    }
    report.push(
        "tutte identity",
        disagree == 0,
        format!(
            "{} graphs, brute = sign * bhkk = sign * delcon, {disagree} mismatches",
            graphs.len()
        ),
    );
    report.push(
        "spanning trees",
        trees == 0,
        format!("c(V, n-1) = T(1,1), {trees} mismatches"),
    );
    report.push(
        "connected spanning totals",
        totals == 0,
        format!("sum_j c(V, j) against enumeration, {totals} mismatches"),
    );

    let points = [(1, 0), (1, 1), (2, 1), (1, 2)];
    let mut full_bad = 0;
    let small: Vec<&SmallGraph> = graphs.iter().filter(|g| g.n() <= 6).collect();
    for g in &small {
        let t = tutte::tutte_full(g)?;
        for &(x, y) in &points {
            if BigRational::from_integer(t.eval_int(x, y)) != tutte::tutte_eval_delcon_int(g, x, y)
            {
                full_bad += 1;
            }
        }
    }
    report.push(
        "full tutte polynomial",
        full_bad == 0,
        format!("{} graphs at 4 points, {full_bad} mismatches", small.len()),
    );

    let mut loops_ok = true;
    for n in 1..=5 {
        let mut edges = SmallGraph::complete(n)?.edges().to_vec();
        edges.push((n - 1, n - 1));
        let g = SmallGraph::new(n, edges)?;
        loops_ok &= tutte::tutte_10_bhkk(&g)? == BigInt::from(0);
    }
    report.push(
        "loops annihilate T(1,0)",
        loops_ok,
        "K_n plus a loop, n <= 5",
    );
    Ok(())
}

fn check_clusters(report: &mut Report) -> Result<()> {
    let mut detail = Vec::new();
    let mut ok = true;
    for (k, window) in [(1, 3), (2, 5), (3, 7)] {
        let grown: BTreeSet<_> = cluster::enumerate_clusters(k)?.collect();
        let oracle = cluster::clusters_in_window(k, window)?;
        ok &= grown == oracle;
        for c in &grown {
            ok &= c.is_canonical() && cluster::overlap_graph(c)?.is_connected();
        }
        detail.push(format!("k={k}: {}", grown.len()));
    }
    report.push("cluster enumeration", ok, detail.join(", "));
    Ok(())
}

fn q(num: i64, den: i64) -> RationalQ {
    RationalQ::new(num.into(), den.into())
}

fn check_series(report: &mut Report) -> Result<()> {
    let printed = [q(1, 16), q(1, 192), q(7, 1536), q(41, 10240), q(181, 61440)];
    let d2 = (2..=6)
        .zip(&printed)
        .all(|(k, v)| series::coeff_a(k, 2).as_ref() == Ok(v));
    report.push(
        "series at d = 2",
        d2,
        "a_2..a_6 at d = 2 against printed coefficients",
    );
    report.push(
        "series re-expansion",
        series::reexpand_check(),
        "c_1..c_3 regrouped in p",
    );
    let d1 = (2..=6).all(|k| {
        let expected = RationalQ::new(
            BigInt::one(),
            BigInt::from(2u32).pow(k as u32) * (k * (k - 1)),
        );
        series::coeff_a(k, 1).as_ref() == Ok(&expected)
    });
    report.push("series at d = 1", d1, "a_k(1) = 2^-k / (k(k-1)), k = 2..6");
    let table = series::CoefficientTable::get();
    let constants = table.jbar7 == q(299, 2048 * 7) && table.a7_d2 == q(757, 16384 * 21);
    report.push(
        "series constants",
        constants,
        "jbar7 = 299/14336, a7(2) = 757/344064",
    );
    Ok(())
}

fn check_strip(report: &mut Report) -> Result<()> {
    let mut worst = 0.0f64;
    for width in 1..=5 {
        for t in [0.5, 1.0, 2.0] {
            let m = StripModel::new(width, Boundary::Periodic, t)?;
            let mat = strip::transfer_matrix_dense(&m);
            let v: Vec<f64> = (0..m.states()).map(|i| 1.0 + (i % 3) as f64).collect();
            let fast = strip::transfer_apply(&m, &v)?;
            for (s2, &f) in fast.iter().enumerate() {
                let slow: f64 = (0..m.states()).map(|s| v[s] * mat[s][s2]).sum();
                worst = worst.max((f - slow).abs() / slow.abs().max(1.0));
            }
        }
    }
    report.push(
        "strip matrix-free",
        worst <= 1e-14,
        format!("W <= 5 against dense matrix, max relative error {worst:.1e}"),
    );
    let mut gap = 0.0f64;
    for p in [0.3, 0.7] {
        let strip = strip::lambda_strip(p, 1, Boundary::Free)?;
        gap = gap.max((strip - series::d1_closed_form(p)?).abs());
    }
    report.push(
        "strip width one",
        gap <= 1e-9,
        format!("free W = 1 against the 1D closed form, max gap {gap:.1e}"),
    );
    Ok(())
}

pub fn run(seed: u64, samples: usize) -> Result<Report> {
    let mut report = Report::default();
    check_graphs(&mut report, seed)?;
    check_tutte(&mut report, seed, samples)?;
    check_clusters(&mut report)?;
    check_series(&mut report)?;
    check_strip(&mut report)?;
    Ok(report)
}
