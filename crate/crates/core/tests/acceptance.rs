//! Acceptance suite. Prints one PASS/FAIL line per criterion (criterion 8
//! has one line per sub-check) and exits nonzero if any line fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dimerlab::cluster::{self, Cluster, Dimer};
use dimerlab::graph::{self, SmallGraph};
use dimerlab::series::{self, RationalQ};
use dimerlab::strip::{self, Boundary};
use dimerlab::tutte;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

#[derive(Default)]
struct Harness {
    failures: usize,
}

impl Harness {
    fn line(&mut self, id: &str, title: &str, limit: Duration, o: Outcome, elapsed: Duration) {
        let in_time = elapsed <= limit;
        let ok = o.passed && in_time;
        if !ok {
            self.failures += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        let timing = if in_time {
            format!("{:.2}s", elapsed.as_secs_f64())
        } else {
            format!(
                "{:.2}s exceeds {:.0}s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            )
        };
        println!("{tag} [{id}] {title}: {} ({timing})", o.detail);
    }

    fn run<F: FnOnce() -> Outcome>(&mut self, id: &str, title: &str, limit: Duration, f: F) {
        let start = Instant::now();
        let o = f();
        self.line(id, title, limit, o, start.elapsed());
    }
}

fn q(n: i64, d: i64) -> RationalQ {
    RationalQ::new(n.into(), d.into())
}

fn sign(n: usize) -> BigInt {
    if n % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn triple(g: &SmallGraph) -> bool {
    let bhkk = tutte::tutte_10_bhkk(g).unwrap();
    let delcon = tutte::tutte_eval_delcon_int(g, 1, 0);
    let brute = tutte::ursell_brute(g).unwrap();
    BigRational::from_integer(bhkk.clone()) == delcon && brute == sign(g.n()) * bhkk
}

fn criterion_1() -> Outcome {
    let printed = [
        q(1, 1 << 4),
        q(1, (1 << 6) * 3),
        q(7, (1 << 9) * 3),
        q(41, (1 << 11) * 5),
        q(181, (1 << 12) * 3 * 5),
    ];
    let bad: Vec<usize> = (2..=6)
        .zip(&printed)
        .filter(|(k, v)| series::coeff_a(*k, 2).as_ref() != Ok(*v))
        .map(|(k, _)| k)
        .collect();
    outcome(
        bad.is_empty(),
        format!("a_2..a_6 at d = 2 exact, mismatched k: {bad:?}"),
    )
}

fn criterion_2() -> Outcome {
    outcome(
        series::reexpand_check(),
        "c_1..c_3 regrouped in p equal the a_k(d) entries",
    )
}

fn criterion_3() -> Outcome {
    let coeffs = (2..=6usize).all(|k| {
        let expected = RationalQ::new(
            BigInt::one(),
            BigInt::from(2u32).pow(k as u32) * (k * (k - 1)),
        );
        series::coeff_a(k, 1).ok() == Some(expected)
    });
    let worst = (1..=9)
        .map(|i| {
            let p = i as f64 / 10.0;
            (series::eval_lambda(p, 1, 7).unwrap() - series::d1_closed_form(p).unwrap()).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        coeffs && worst <= 1e-4,
        format!("a_k(1) exact for k = 2..6: {coeffs}; max |series - closed form| = {worst:.3e} (<= 1e-4)"),
    )
}

fn all_connected_labelled(n: usize) -> Vec<SmallGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..(1 << pairs.len()))
        .into_par_iter()
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = SmallGraph::new(n, edges).unwrap();
            g.is_connected().then_some(g)
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut exhaustive = Vec::new();
    for n in 1..=6 {
        exhaustive.extend(all_connected_labelled(n));
    }
    let bad_a = exhaustive.par_iter().filter(|g| !triple(g)).count();
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let random: Vec<SmallGraph> = (0..500)
        .map(|_| {
            let n = rng.gen_range(2..=9);
            let extra = rng.gen_range(0..=24 - (n - 1));
            graph::random_connected(&mut rng, n, extra, true).unwrap()
        })
        .collect();
    let bad_b = random.par_iter().filter(|g| !triple(g)).count();
    outcome(
        exhaustive.len() == 27_476 && bad_a == 0 && bad_b == 0,
        format!(
            "(a) {} labelled connected graphs n <= 6, {bad_a} mismatches; (b) 500 random n <= 9, m <= 24, {bad_b} mismatches",
            exhaustive.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let k7 = SmallGraph::complete(7).unwrap();
    let start = Instant::now();
    let t10 = tutte::tutte_10_bhkk(&k7).unwrap();
    let bhkk_time = start.elapsed();
    let start = Instant::now();
    let brute = tutte::ursell_brute(&k7).unwrap();
    let brute_time = start.elapsed();
    let delcon = tutte::tutte_eval_delcon_int(&k7, 1, 0);
    let psi = tutte::ursell(&k7).unwrap();
    let v = BigInt::from(720);
    let values =
        t10 == v && psi == v && brute == v && delcon == BigRational::from_integer(v.clone());
    outcome(
        values && bhkk_time < brute_time,
        format!(
            "K7: T(1,0) = {t10}, psi = {psi}, brute = {brute}, delcon = {delcon}; subset recursion {:.3} ms vs enumeration {:.1} ms",
            bhkk_time.as_secs_f64() * 1e3,
            brute_time.as_secs_f64() * 1e3
        ),
    )
}

fn criterion_6() -> Outcome {
    let k4 = SmallGraph::complete(4).unwrap();
    let t = tutte::tutte_full(&k4).unwrap();
    let mut bad = 0;
    for x in 0..=3 {
        for y in 0..=3 {
            if BigRational::from_integer(t.eval_int(x, y))
                != tutte::tutte_eval_delcon_int(&k4, x, y)
            {
                bad += 1;
            }
        }
    }
    let trees = t.eval_int(1, 1);
    outcome(
        bad == 0 && trees == BigInt::from(16),
        format!("T_K4 = {t}; {bad} mismatches on {{0..3}}^2; T(1,1) = {trees}"),
    )
}

fn criterion_7() -> Outcome {
    let mut counts = Vec::new();
    let mut ok = true;
    for (k, window) in [(1, 3), (2, 5), (3, 7)] {
        let grown: BTreeSet<Cluster> = cluster::enumerate_clusters(k).unwrap().collect();
        ok &= grown == cluster::clusters_in_window(k, window).unwrap();
        ok &= grown
            .iter()
            .all(|c| cluster::overlap_graph(c).unwrap().is_connected());
        counts.push(grown.len());
    }
    ok &= counts[0] == 2;
    let chain =
        cluster::canonicalize(vec![Dimer::h(0, 0), Dimer::h(1, 0), Dimer::h(2, 0)]).unwrap();
    let star = cluster::canonicalize(Dimer::through((0, 0)).to_vec()).unwrap();
    let chain_psi = cluster::psi_of_cluster(&chain).unwrap();
    let star_psi = cluster::psi_of_cluster(&star).unwrap();
    ok &= chain_psi == BigInt::from(1) && star_psi == BigInt::from(-6);
    outcome(
        ok,
        format!("counts k = 1..3: {counts:?} equal the window oracle; overlap graphs connected; psi(chain) = {chain_psi}, psi(star) = {star_psi}"),
    )
}

fn catalan() -> f64 {
    let mut term = 1.0f64;
    let mut sum = 1.0;
    for k in 1..40 {
        let k = k as f64;
        term *= k / (2.0 * (2.0 * k - 1.0));
        sum += term / ((2.0 * k + 1.0) * (2.0 * k + 1.0));
    }
    PI / 8.0 * (2.0 + 3f64.sqrt()).ln() + 3.0 / 8.0 * sum
}

fn kasteleyn_cylinder(w: usize) -> f64 {
    (1..=w / 2)
        .map(|k| (((2 * k - 1) as f64) * PI / w as f64).sin().asinh())
        .sum::<f64>()
        / w as f64
}

fn criterion_8(h: &mut Harness) {
    let limit = Duration::from_secs(30 * 60);
    let start = Instant::now();

    let low: Vec<f64> = (1..=6).map(|i| i as f64 / 10.0).collect();
    let t = Instant::now();
    let rows: Vec<strip::StripReport> = low
        .par_iter()
        .map(|&p| strip::compare_with_series(p, &[10, 12], Boundary::Periodic).unwrap())
        .collect();
    let worst_gap = rows.iter().map(|r| r.delta.abs()).fold(0.0, f64::max);
    let worst_spread = rows.iter().map(|r| r.spread).fold(0.0, f64::max);
    h.line(
        "8a",
        "strip agrees with series, p = 0.1..0.6",
        limit,
        outcome(
            worst_gap <= 1e-3 && worst_spread <= 2e-4,
            format!("max |delta| = {worst_gap:.3e} (<= 1e-3), max spread = {worst_spread:.3e} (<= 2e-4), widths [10, 12]"),
        ),
        t.elapsed(),
    );

    let t = Instant::now();
    let high: Vec<strip::StripReport> = [0.8, 0.9, 1.0]
        .par_iter()
        .map(|&p| strip::compare_with_series(p, &[10, 12], Boundary::Periodic).unwrap())
        .collect();
    let gaps: Vec<f64> = high.iter().map(|r| r.delta).collect();
    let monotone = gaps.windows(2).all(|w| w[1] > w[0]) && gaps[0] > 0.0;
    h.line(
        "8b",
        "truncation gap grows at p = 0.8, 0.9, 1.0",
        limit,
        outcome(
            monotone,
            format!("delta = {:.3e}, {:.3e}, {:.3e}", gaps[0], gaps[1], gaps[2]),
        ),
        t.elapsed(),
    );

    let t = Instant::now();
    let g_over_pi = catalan() / PI;
    let series_one = series::eval_lambda(1.0, 2, 7).unwrap();
    let gap_limit = g_over_pi - series_one;
    h.line(
        "8c",
        "gap at p = 1 against the close-packed limit",
        limit,
        outcome(
            (gap_limit - 0.017).abs() <= 5e-4 && (g_over_pi - 0.29156).abs() <= 1e-5,
            format!("G/pi = {g_over_pi:.7}, series = {series_one:.7}, gap = {gap_limit:.4e} (0.017 +- 5e-4)"),
        ),
        t.elapsed(),
    );

    let t = Instant::now();
    let w14 = strip::pure_dimer_entropy(14).unwrap();
    let cylinder = kasteleyn_cylinder(14);
    h.line(
        "8d",
        "close-packed W = 14 strip against the finite-width product formula",
        limit,
        outcome(
            (w14 - cylinder).abs() <= 5e-4,
            format!(
                "transfer matrix {w14:.10}, product formula {cylinder:.10}, difference {:.1e}",
                (w14 - cylinder).abs()
            ),
        ),
        t.elapsed(),
    );

    h.line(
        "8e",
        "close-packed W = 14 strip within 5e-4 of G/pi",
        limit,
        outcome(
            (w14 - g_over_pi).abs() <= 5e-4,
            format!(
                "W = 14 gives {w14:.7}, G/pi = {g_over_pi:.7}, difference {:.3e}; the finite-size term pi/(6 W^2) = {:.3e}",
                w14 - g_over_pi,
                PI / (6.0 * 196.0)
            ),
        ),
        Duration::ZERO,
    );

    h.line(
        "8",
        "numerical study total runtime",
        limit,
        outcome(true, "all sub-checks"),
        start.elapsed(),
    );
}

fn criterion_9() -> Outcome {
    let t = series::CoefficientTable::get();
    let jbar = t.jbar7 == q(299, (1 << 11) * 7);
    let a7 = t.a7_d2.denom() == &BigInt::from((1 << 14) * 3 * 7);
    outcome(
        jbar && a7,
        format!(
            "jbar7 = {} (14336 = 2^11 * 7), a7(2) = {} (344064 = 2^14 * 3 * 7)",
            t.jbar7, t.a7_d2
        ),
    )
}

fn main() -> ExitCode {
    let mut h = Harness::default();
    let second = Duration::from_secs(1);
    h.run("1", "series coefficients at d = 2", second, criterion_1);
    h.run("2", "re-expansion consistency", second, criterion_2);
    h.run("3", "d = 1 validation", second, criterion_3);
    h.run(
        "4",
        "Tutte/Ursell triple equivalence",
        Duration::from_secs(300),
        criterion_4,
    );
    h.run(
        "5",
        "K7 by three backends",
        Duration::from_secs(60),
        criterion_5,
    );
    h.run("6", "full Tutte polynomial of K4", second, criterion_6);
    h.run(
        "7",
        "cluster enumeration",
        Duration::from_secs(60),
        criterion_7,
    );
    criterion_8(&mut h);
    h.run("9", "constant hygiene", second, criterion_9);
    println!("acceptance: {} failing line(s)", h.failures);
    if h.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
