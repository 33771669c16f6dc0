//! `dimerlab`: command-line front end.
//!
//! Machine-readable results go to standard output (JSON, JSONL or CSV);
//! human summaries go to standard error. Exit status is 0 on success, 1 on
//! a computation error and 2 on a usage error.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use dimerlab::cluster;
use dimerlab::graph::{self, SmallGraph};
use dimerlab::series;
use dimerlab::strip::{self, Boundary};
use dimerlab::tutte;

#[derive(Debug, Parser)]
#[command(
    name = "dimerlab",
    version,
    about = "Ursell coefficients, dimer clusters and monomer-dimer entropy"
)]
struct Cli {
    /// Worker threads for cluster and strip computations.
    #[arg(long, global = true, env = "DIMERLAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Backend {
    Bhkk,
    Brute,
    Delcon,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Emit {
    Jsonl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Free,
    Periodic,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Free => Boundary::Free,
            BoundaryArg::Periodic => Boundary::Periodic,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// T(1,0), the Ursell coefficient and optionally the full Tutte polynomial, as JSON.
    Tutte {
        #[arg(long)]
        graph: PathBuf,
        /// Also emit the coefficient matrix (at most 12 vertices).
        #[arg(long)]
        full: bool,
    },
    /// Print the Ursell coefficient of a connected graph.
    Ursell {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "bhkk")]
        backend: Backend,
    },
    /// Enumerate connected k-dimer clusters on the square lattice.
    Clusters {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "jsonl")]
        emit: Emit,
        /// Identify clusters related by lattice rotations and reflections.
        #[arg(long)]
        symmetric: bool,
    },
    /// Tabulate lambda_d(p) from the series.
    Series {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        order: usize,
        /// Comma-separated densities, or a point count N >= 2 for a uniform grid.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Transfer-matrix estimate of lambda_2(p) against the series.
    Strip {
        /// Comma-separated densities; p = 1 uses close-packed strips.
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "8,10,12")]
        widths: String,
        #[arg(long, value_enum, default_value = "periodic")]
        boundary: BoundaryArg,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Time the subset recursion against edge-subset enumeration.
    Bench {
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Additional random connected 7-vertex graphs.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the invariant suite; nonzero exit on any failure.
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn read_graph(path: &Path) -> anyhow::Result<SmallGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(SmallGraph::from_json(&text)?)
}

fn number(v: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(v.to_string().parse().expect("integer literal"))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> anyhow::Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| anyhow::anyhow!("invalid {what} {s:?}"))
        })
        .collect()
}

fn parse_grid(text: &str) -> anyhow::Result<Vec<f64>> {
    if !text.contains(',') {
        if let Ok(count) = text.trim().parse::<usize>() {
            if count >= 2 {
                return Ok(series::uniform_grid(count));
            }
        }
    }
    parse_list(text, "density")
}

fn output(csv: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match csv {
        Some(path) => Box::new(BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_tutte(path: &Path, full: bool) -> anyhow::Result<()> {
    let g = read_graph(path)?;
    let t10 = tutte::tutte_10_bhkk(&g)?;
    let psi = tutte::ursell(&g)?;
    let mut out = json!({
        "n": g.n(),
        "m": g.m(),
        "t10": number(&t10),
        "psi": number(&psi),
    });
    if full {
        let poly = tutte::tutte_full(&g)?;
        let coeffs: Vec<Vec<serde_json::Value>> = poly
            .coeffs
            .iter()
            .map(|row| row.iter().map(number).collect())
            .collect();
        out["polynomial"] = json!(poly.to_string());
        out["coefficients"] = json!(coeffs);
    }
    println!("{out}");
    Ok(())
}

fn cmd_ursell(path: &Path, backend: Backend) -> anyhow::Result<()> {
    let g = read_graph(path)?;
    let psi = match backend {
        Backend::Bhkk => tutte::ursell(&g)?,
        Backend::Brute => tutte::ursell_brute(&g)?,
        Backend::Delcon => {
            if !g.is_connected() {
                bail!(dimerlab::Error::Disconnected);
            }
            let sign = if g.n() % 2 == 1 { 1 } else { -1 };
            tutte::tutte_10_delcon(&g) * sign
        }
    };
    println!("{psi}");
    Ok(())
}

fn cmd_clusters(k: usize, count_only: bool, symmetric: bool) -> anyhow::Result<()> {
    let clusters: Vec<cluster::Cluster> = if symmetric {
        cluster::enumerate_clusters_symmetric(k)?.collect()
    } else {
        cluster::enumerate_clusters(k)?.collect()
    };
    if count_only {
        println!("{}", clusters.len());
        eprintln!("k = {k}: {} clusters", clusters.len());
        return Ok(());
    }
    let psis: Vec<BigInt> = clusters
        .par_iter()
        .map(cluster::psi_of_cluster)
        .collect::<Result<_, _>>()?;
    let mut out = BufWriter::new(io::stdout().lock());
    for (c, psi) in clusters.iter().zip(&psis) {
        serde_json::to_writer(&mut out, &c.to_record(Some(psi)))?;
        writeln!(out)?;
    }
    out.flush()?;
    let total: BigInt = psis.iter().sum();
    eprintln!("k = {k}: {} clusters, sum of psi = {total}", clusters.len());
    Ok(())
}

fn cmd_series(d: u32, order: usize, grid: &str, csv: Option<&Path>) -> anyhow::Result<()> {
    let grid = parse_grid(grid)?;
    let rows = series::emit_table(d, order, &grid)?;
    let mut out = output(csv)?;
    series::write_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

fn cmd_strip(p: &str, widths: &str, boundary: Boundary, csv: Option<&Path>) -> anyhow::Result<()> {
    let ps: Vec<f64> = parse_list(p, "density")?;
    let widths: Vec<usize> = parse_list(widths, "width")?;
    if ps.is_empty() || widths.is_empty() {
        bail!("need at least one density and one width");
    }
    let rows: Vec<strip::StripReport> = ps
        .par_iter()
        .map(|&p| strip::compare_with_series(p, &widths, boundary))
        .collect::<Result<_, _>>()?;
    let mut out = output(csv)?;
    strip::write_csv(&mut out, &rows)?;
    out.flush()?;
    for r in &rows {
        eprintln!(
            "p = {}: strip {:.8} (spread {:.1e}), series {:.8}, delta {:+.2e}",
            r.p, r.estimate, r.spread, r.series_value, r.delta
        );
    }
    Ok(())
}

struct Timing {
    label: String,
    n: usize,
    m: usize,
    bhkk: BigInt,
    brute: Option<BigInt>,
    bhkk_seconds: f64,
    brute_seconds: Option<f64>,
}

fn time_graph(label: String, g: &SmallGraph) -> anyhow::Result<Timing> {
    let start = Instant::now();
    let bhkk = tutte::tutte_10_bhkk(g)?;
    let bhkk_seconds = start.elapsed().as_secs_f64();
    let (brute, brute_seconds) = if g.m() <= tutte::MAX_BRUTE_EDGES {
        let start = Instant::now();
        let psi = tutte::ursell_brute(g)?;
        let secs = start.elapsed().as_secs_f64();
        let sign = if g.n() % 2 == 1 { 1 } else { -1 };
        (Some(psi * sign), Some(secs))
    } else {
        (None, None)
    };
    Ok(Timing {
        label,
        n: g.n(),
        m: g.m(),
        bhkk,
        brute,
        bhkk_seconds,
        brute_seconds,
    })
}

fn cmd_bench(path: Option<&Path>, samples: usize, seed: u64) -> anyhow::Result<bool> {
    let mut rows = Vec::new();
    match path {
        Some(p) => rows.push(time_graph(p.display().to_string(), &read_graph(p)?)?),
        None => rows.push(time_graph("K7".into(), &SmallGraph::complete(7)?)?),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let extra = rng.gen_range(0..=15);
        let g = graph::random_connected(&mut rng, 7, extra, false)?;
        rows.push(time_graph(format!("random7-{i}"), &g)?);
    }
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(
        out,
        "graph,n,m,t10_bhkk,t10_brute,bhkk_seconds,brute_seconds"
    )?;
    let mut agree = true;
    for r in &rows {
        let brute = r.brute.as_ref().map(|b| b.to_string()).unwrap_or_default();
        let secs = r
            .brute_seconds
            .map(|s| format!("{s:.6}"))
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{}",
            r.label, r.n, r.m, r.bhkk, brute, r.bhkk_seconds, secs
        )?;
        if let Some(b) = &r.brute {
            agree &= *b == r.bhkk;
        }
    }
    out.flush()?;
    if let Some(first) = rows.first() {
        if let Some(brute) = first.brute_seconds {
            eprintln!(
                "{}: subset recursion {:.3} ms, edge-subset enumeration {:.3} ms ({:.0}x)",
                first.label,
                first.bhkk_seconds * 1e3,
                brute * 1e3,
                brute / first.bhkk_seconds.max(1e-12)
            );
        }
    }
    if !agree {
        eprintln!("backends disagree");
    }
    Ok(agree)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Tutte { graph, full } => cmd_tutte(&graph, full)?,
        Command::Ursell { graph, backend } => cmd_ursell(&graph, backend)?,
        Command::Clusters {
            k,
            count_only,
            emit: Emit::Jsonl,
            symmetric,
        } => cmd_clusters(k, count_only, symmetric)?,
        Command::Series {
            d,
            order,
            grid,
            csv,
        } => cmd_series(d, order, &grid, csv.as_deref())?,
        Command::Strip {
            p,
            widths,
            boundary,
            csv,
        } => cmd_strip(&p, &widths, boundary.into(), csv.as_deref())?,
        Command::Bench {
            graph,
            samples,
            seed,
        } => return cmd_bench(graph.as_deref(), samples, seed),
        Command::Selfcheck { seed, samples } => {
            let report = dimerlab::selfcheck::run(seed, samples)?;
            print!("{report}");
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
