//! Row transfer operator for monomer-dimer configurations on width-`W` strips.
//!
//! A state is the set of columns where a vertical dimer protrudes from the
//! current row into the next one. A transition `S -> S'` needs `S ∩ S' = ∅`;
//! cells in `S` are covered from below, cells in `S'` start a vertical dimer
//! (activity `t`), and the remaining cells are tiled by horizontal dimers
//! (activity `t`) and monomers (weight 1).
//!
//! The operator is applied column by column: while scanning column `c`,
//! bits below `c` already hold the outgoing set and bits from `c` upward
//! still hold the incoming set, so one application costs `O(W 2^W)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series;

pub const MAX_WIDTH: usize = 14;

/// Power iteration stops once the normalized residual falls below this.
pub const EIGEN_TOLERANCE: f64 = 1e-13;
pub const MAX_ITERATIONS: usize = 200_000;

/// Log-activity step for the centered difference behind [`density`].
pub const DENSITY_STEP: f64 = 1e-4;
/// Bisection target accuracy in `p`.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Largest density served by [`lambda_strip`]; `t* -> ∞` as `p -> 1`.
pub const MAX_DENSITY: f64 = 0.98;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Free,
    /// Column `W-1` bonds to column 0. Widths below 3 have no extra bond.
    Periodic,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Boundary::Free),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::Parse(format!("boundary {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripModel {
    pub width: usize,
    pub boundary: Boundary,
    pub activity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub eigenvalue: f64,
    pub iterations: usize,
    pub residual: f64,
    /// Dominant right eigenvector, entries summing to 1.
    pub vector: Vec<f64>,
}

impl StripModel {
    pub fn new(width: usize, boundary: Boundary, activity: f64) -> Result<Self> {
        if !(1..=MAX_WIDTH).contains(&width) {
            return Err(Error::OutOfRange(format!("strip width {width}")));
        }
        if !(activity >= 0.0 && activity.is_finite()) {
            return Err(Error::OutOfRange(format!("activity {activity}")));
        }
        Ok(StripModel {
            width,
            boundary,
            activity,
        })
    }

    pub fn states(&self) -> usize {
        1 << self.width
    }

    pub fn with_activity(&self, activity: f64) -> Result<Self> {
        StripModel::new(self.width, self.boundary, activity)
    }

    fn wraps(&self) -> bool {
        self.boundary == Boundary::Periodic && self.width >= 3
    }
}

/// Per-cell options of the column scan.
#[derive(Debug, Clone, Copy)]
struct CellWeights {
    monomer: f64,
    vertical: f64,
    horizontal: f64,
}

/// One column-by-column sweep. Bits set in `input` on entry mark occupied
/// cells for incoming columns; the result is indexed by the outgoing set.
fn scan(width: usize, w: CellWeights, input: &[f64], scratch: &mut Vec<f64>) -> Vec<f64> {
    let size = 1usize << width;
    let mut cur = input.to_vec();
    scratch.clear();
    scratch.resize(size, 0.0);
    for c in 0..width {
        let bit = 1usize << c;
        let next_bit = bit << 1;
        scratch.iter_mut().for_each(|x| *x = 0.0);
        for (mask, &val) in cur.iter().enumerate() {
            if val == 0.0 {
                continue;
            }
            if mask & bit != 0 {
                scratch[mask & !bit] += val;
                continue;
            }
            if w.monomer != 0.0 {
                scratch[mask] += val * w.monomer;
            }
            scratch[mask | bit] += val * w.vertical;
            if c + 1 < width && mask & next_bit == 0 {
                scratch[mask | next_bit] += val * w.horizontal;
            }
        }
        std::mem::swap(&mut cur, scratch);
    }
    cur
}

fn apply_with(width: usize, wraps: bool, w: CellWeights, v: &[f64], out: &mut Vec<f64>) {
    let mut scratch = Vec::new();
    let mut result = scan(width, w, v, &mut scratch);
    if wraps {
        // the bond (W-1, 0) carries a horizontal dimer: both cells must be
        // free of incoming dimers and are then marked as covered
        let ends = 1usize | (1usize << (width - 1));
        let mut forced = vec![0.0; v.len()];
        for (mask, &val) in v.iter().enumerate() {
            if mask & ends == 0 {
                forced[mask | ends] = val;
            }
        }
        let wrapped = scan(width, w, &forced, &mut scratch);
        for (r, x) in result.iter_mut().zip(wrapped) {
            *r += w.horizontal * x;
        }
    }
    *out = result;
}

/// `w[S'] = sum_S v[S] weight(S -> S')`, matrix-free.
pub fn transfer_apply(m: &StripModel, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != m.states() {
        return Err(Error::LengthMismatch {
            expected: m.states(),
            got: v.len(),
        });
    }
    let mut out = Vec::new();
    let t = m.activity;
    apply_with(
        m.width,
        m.wraps(),
        CellWeights {
            monomer: 1.0,
            vertical: t,
            horizontal: t,
        },
        v,
        &mut out,
    );
    Ok(out)
}

/// Row tiling weight of the cells in `free` by horizontal dimers and,
/// when allowed, monomers.
fn row_tilings(width: usize, wraps: bool, free: usize, t: f64, monomers: bool) -> f64 {
    fn path(width: usize, free: usize, t: f64, monomers: bool) -> f64 {
        // z1 = weight of columns < c, z2 = weight of columns < c - 1
        let (mut z2, mut z1) = (1.0, 1.0);
        for c in 0..width {
            let next = if free >> c & 1 == 0 {
                z1
            } else {
                let single = if monomers { z1 } else { 0.0 };
                let pair = if c > 0 && free >> (c - 1) & 1 == 1 {
                    t * z2
                } else {
                    0.0
                };
                single + pair
            };
            z2 = z1;
            z1 = next;
        }
        z1
    }
    let open = path(width, free, t, monomers);
    let ends = 1usize | (1usize << (width - 1));
    if wraps && free & ends == ends {
        open + t * path(width, free & !ends, t, monomers)
    } else {
        open
    }
}

/// Explicit `2^W x 2^W` matrix, `matrix[S][S']`, built by direct enumeration.
pub fn transfer_matrix_dense(m: &StripModel) -> Vec<Vec<f64>> {
    dense_with(m.width, m.wraps(), m.activity, true)
}

fn dense_with(width: usize, wraps: bool, t: f64, monomers: bool) -> Vec<Vec<f64>> {
    let size = 1usize << width;
    let full = size - 1;
    let mut mat = vec![vec![0.0; size]; size];
    for (s, row) in mat.iter_mut().enumerate() {
        for (s2, entry) in row.iter_mut().enumerate() {
            if s & s2 != 0 {
                continue;
            }
            let free = full & !(s | s2);
            let tiles = row_tilings(width, wraps, free, t, monomers);
            *entry = t.powi(s2.count_ones() as i32) * tiles;
        }
    }
    mat
}

/// Power iteration on a nonnegative operator, normalizing to unit sum.
pub fn power_iteration<F>(
    mut apply: F,
    start: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult>
where
    F: FnMut(&[f64], &mut Vec<f64>),
{
    let mut v = start;
    let norm: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= norm);
    let mut w = Vec::with_capacity(v.len());
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        apply(&v, &mut w);
        let lambda: f64 = w.iter().sum();
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::NoConvergence {
                iterations: it,
                residual,
            });
        }
        residual = 0.0;
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi /= lambda;
            residual += (*wi - vi).abs();
        }
        std::mem::swap(&mut v, &mut w);
        if residual <= tol {
            return Ok(SpectralResult {
                eigenvalue: lambda,
                iterations: it,
                residual,
                vector: v,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

fn uniform(size: usize) -> Vec<f64> {
    vec![1.0; size]
}

/// Dominant eigenpair of the row transfer operator.
pub fn dominant(m: &StripModel, start: Option<&[f64]>) -> Result<SpectralResult> {
    let size = m.states();
    let init = match start {
        Some(s) if s.len() == size && s.iter().all(|&x| x > 0.0) => s.to_vec(),
        _ => uniform(size),
    };
    let t = m.activity;
    let weights = CellWeights {
        monomer: 1.0,
        vertical: t,
        horizontal: t,
    };
    let (width, wraps) = (m.width, m.wraps());
    power_iteration(
        |v, out| apply_with(width, wraps, weights, v, out),
        init,
        EIGEN_TOLERANCE,
        MAX_ITERATIONS,
    )
}

/// `ln(Lambda) / W`.
pub fn free_energy(m: &StripModel) -> Result<f64> {
    if m.activity <= 0.0 {
        return Err(Error::OutOfRange(format!("activity {}", m.activity)));
    }
    Ok(dominant(m, None)?.eigenvalue.ln() / m.width as f64)
}

/// Evaluates `f_W` at a series of activities, warm-starting each solve.
struct Evaluator {
    width: usize,
    boundary: Boundary,
    last: Option<Vec<f64>>,
}

impl Evaluator {
    fn new(width: usize, boundary: Boundary) -> Self {
        Evaluator {
            width,
            boundary,
            last: None,
        }
    }

    fn free_energy(&mut self, log_t: f64) -> Result<f64> {
        let m = StripModel::new(self.width, self.boundary, log_t.exp())?;
        let res = dominant(&m, self.last.as_deref())?;
        let f = res.eigenvalue.ln() / self.width as f64;
        self.last = Some(res.vector);
        Ok(f)
    }

    /// `2 df/d(ln t)`: centered difference with one Richardson step.
    fn density(&mut self, log_t: f64) -> Result<f64> {
        let h = DENSITY_STEP;
        let f1p = self.free_energy(log_t + h)?;
        let f1m = self.free_energy(log_t - h)?;
        let f2p = self.free_energy(log_t + 2.0 * h)?;
        let f2m = self.free_energy(log_t - 2.0 * h)?;
        let d1 = (f1p - f1m) / (2.0 * h);
        let d2 = (f2p - f2m) / (4.0 * h);
        Ok(2.0 * (4.0 * d1 - d2) / 3.0)
    }
}

/// Dimer density `p_W(t) = 2 t f_W'(t)`.
pub fn density(m: &StripModel) -> Result<f64> {
    if m.activity <= 0.0 {
        return Err(Error::OutOfRange(format!("activity {}", m.activity)));
    }
    Evaluator::new(m.width, m.boundary).density(m.activity.ln())
}

/// Fixed-density entropy `f_W(t*) - (p/2) ln t*` with `p_W(t*) = p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripLambda {
    pub lambda: f64,
    pub activity: f64,
}

const LOG_T_LIMIT: f64 = 60.0;

pub fn lambda_strip_detail(p: f64, width: usize, boundary: Boundary) -> Result<StripLambda> {
    if !(p > 0.0 && p <= MAX_DENSITY) {
        return Err(Error::OutOfRange(format!(
            "density {p} (supported (0, {MAX_DENSITY}])"
        )));
    }
    StripModel::new(width, boundary, 1.0)?;
    let mut ev = Evaluator::new(width, boundary);
    let (mut lo, mut hi) = (-4.0f64, 4.0f64);
    while ev.density(lo)? > p {
        lo -= 4.0;
        if lo < -LOG_T_LIMIT {
            return Err(Error::Bracket(format!(
                "no activity gives density below {p}"
            )));
        }
    }
    while ev.density(hi)? < p {
        hi += 4.0;
        if hi > LOG_T_LIMIT {
            return Err(Error::Bracket(format!(
                "no activity gives density above {p}"
            )));
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let pm = ev.density(mid)?;
        if (pm - p).abs() <= DENSITY_TOLERANCE || hi - lo < 1e-14 {
            break;
        }
        if pm < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f = ev.free_energy(mid)?;
    Ok(StripLambda {
        lambda: f - 0.5 * p * mid,
        activity: mid.exp(),
    })
}

pub fn lambda_strip(p: f64, width: usize, boundary: Boundary) -> Result<f64> {
    Ok(lambda_strip_detail(p, width, boundary)?.lambda)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StripEstimate {
    pub p: f64,
    pub estimate: f64,
    pub spread: f64,
    /// `(width, lambda_W(p))` in increasing width.
    pub per_width: Vec<(usize, f64)>,
}

fn check_periodic_widths(widths: &[usize]) -> Result<Vec<usize>> {
    if widths.is_empty() {
        return Err(Error::OutOfRange("empty width list".into()));
    }
    let mut ws = widths.to_vec();
    ws.sort_unstable();
    ws.dedup();
    if let Some(&w) = ws.iter().find(|&&w| w % 2 == 1 || w > MAX_WIDTH || w == 0) {
        return Err(Error::OutOfRange(format!(
            "width {w} (periodic estimates need even widths up to {MAX_WIDTH})"
        )));
    }
    Ok(ws)
}

/// Value at the largest width and the spread over the two largest widths.
pub fn estimate_lambda(p: f64, widths: &[usize], boundary: Boundary) -> Result<StripEstimate> {
    if widths.is_empty() {
        return Err(Error::OutOfRange("empty width list".into()));
    }
    let mut ws = widths.to_vec();
    ws.sort_unstable();
    ws.dedup();
    let per_width: Vec<(usize, f64)> = ws
        .par_iter()
        .map(|&w| lambda_strip(p, w, boundary).map(|l| (w, l)))
        .collect::<Result<_>>()?;
    let estimate = per_width.last().unwrap().1;
    let spread = match per_width.len() {
        1 => 0.0,
        n => (per_width[n - 1].1 - per_width[n - 2].1).abs(),
    };
    Ok(StripEstimate {
        p,
        estimate,
        spread,
        per_width,
    })
}

/// [`estimate_lambda`] on periodic strips of even width.
pub fn estimate_lambda2(p: f64, widths: &[usize]) -> Result<StripEstimate> {
    let ws = check_periodic_widths(widths)?;
    estimate_lambda(p, &ws, Boundary::Periodic)
}

/// Per-site entropy of close-packed dimer coverings of the periodic strip.
///
/// The operator conserves the parity of `|S|`, so each parity sector is
/// iterated separately and the larger eigenvalue kept. A unit shift keeps
/// the iteration away from eigenvalues of equal modulus.
pub fn pure_dimer_entropy(width: usize) -> Result<f64> {
    if width % 2 == 1 || width == 0 || width > MAX_WIDTH {
        return Err(Error::OutOfRange(format!(
            "width {width} (pure dimer strips need even widths up to {MAX_WIDTH})"
        )));
    }
    let wraps = width >= 3;
    let weights = CellWeights {
        monomer: 0.0,
        vertical: 1.0,
        horizontal: 1.0,
    };
    let size = 1usize << width;
    let mut best = 0.0f64;
    for parity in 0..2u32 {
        let start: Vec<f64> = (0..size)
            .map(|s| {
                if (s as u32).count_ones() % 2 == parity {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let res = power_iteration(
            |v, out| {
                apply_with(width, wraps, weights, v, out);
                for (o, x) in out.iter_mut().zip(v) {
                    *o += x;
                }
            },
            start,
            EIGEN_TOLERANCE,
            MAX_ITERATIONS,
        )?;
        best = best.max(res.eigenvalue - 1.0);
    }
    Ok(best.ln() / width as f64)
}

/// Explicit pure-dimer transfer matrix, for cross-checks at small widths.
pub fn pure_dimer_matrix_dense(width: usize) -> Vec<Vec<f64>> {
    dense_with(width, width >= 3, 1.0, false)
}

/// One output row of the `strip` subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripReport {
    pub p: f64,
    pub estimate: f64,
    pub spread: f64,
    pub series_value: f64,
    pub delta: f64,
}

/// Strip estimate against `eval_lambda(p, 2, 7)`. At `p = 1` the estimate is
/// the close-packed entropy at the largest width (periodic only).
pub fn compare_with_series(p: f64, widths: &[usize], boundary: Boundary) -> Result<StripReport> {
    let series_value = series::eval_lambda(p, 2, series::MAX_ORDER)?;
    let (estimate, spread) = if p == 1.0 {
        if boundary != Boundary::Periodic {
            return Err(Error::Unsupported(
                "close-packed strips need periodic boundary".into(),
            ));
        }
        let ws = check_periodic_widths(widths)?;
        let vals: Vec<f64> = ws
            .iter()
            .map(|&w| pure_dimer_entropy(w))
            .collect::<Result<_>>()?;
        let n = vals.len();
        let spread = if n > 1 {
            (vals[n - 1] - vals[n - 2]).abs()
        } else {
            0.0
        };
        (vals[n - 1], spread)
    } else if boundary == Boundary::Periodic {
        let e = estimate_lambda2(p, widths)?;
        (e.estimate, e.spread)
    } else {
        let e = estimate_lambda(p, widths, boundary)?;
        (e.estimate, e.spread)
    };
    Ok(StripReport {
        p,
        estimate,
        spread,
        series_value,
        delta: estimate - series_value,
    })
}

pub fn write_csv<W: std::io::Write>(mut out: W, rows: &[StripReport]) -> std::io::Result<()> {
    writeln!(out, "p,estimate,spread,series_value,delta")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.p, r.estimate, r.spread, r.series_value, r.delta
        )?;
    }
    Ok(())
}
