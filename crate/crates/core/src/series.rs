//! Monomer-dimer entropy series `lambda_d(p)` with exact rational coefficients.
//!
//! Two organizations of the same expansion are stored:
//!
//! ```text
//! lambda_d(p) ~ L_d(p) + sum_{k>=1} c_k(p) / d^k
//!             ~ L_d(p) + sum_{k>=2} a_k(d) p^k
//! L_d(p) = (p ln(2d) - p ln p - 2(1-p) ln(1-p) - p) / 2
//! ```
//!
//! `a_k(d)` is a polynomial in `1/d`, known for `k <= 6` at every `d`. `a_7`
//! is known only at `d = 2` and at `d = 1`, where the series is exact and
//! `a_k(1) = 2^-k / (k (k-1))`. Floating point enters only at the final evaluation.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type RationalQ = BigRational;

pub const MAX_ORDER: usize = 7;

fn q(num: i64, den: i64) -> RationalQ {
    RationalQ::new(BigInt::from(num), BigInt::from(den))
}

/// Exact coefficient tables of the expansion.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    /// `(k, j) -> coefficient of p^k / d^j`, for `k = 2..=6`.
    pub a: BTreeMap<(usize, usize), RationalQ>,
    /// `a_7(2)`.
    pub a7_d2: RationalQ,
    /// `a_7(1) = 2^-7 / 42`, from the exact one-dimensional entropy.
    pub a7_d1: RationalQ,
    /// `c_k(p)` for `k = 1..=3`, as coefficient vectors in `p`.
    pub c: BTreeMap<usize, Vec<RationalQ>>,
    /// Seventh kernel at `d = 2`.
    pub jbar7: RationalQ,
    /// Pure dimer series `1/2 ln(2d) - 1/2 + sum_j dimer_series[j] / d^j`, `j >= 1`.
    pub dimer_series: BTreeMap<usize, RationalQ>,
}

impl CoefficientTable {
    fn build() -> Self {
        let a = BTreeMap::from([
            ((2, 1), q(1, 8)),
            ((3, 2), q(1, 48)),
            ((4, 2), q(1, 32)),
            ((4, 3), q(-5, 192)),
            ((5, 3), q(1, 16)),
            ((5, 4), q(-39, 640)),
            ((6, 3), q(1, 24)),
            ((6, 4), q(-1, 32)),
            ((6, 5), q(-19, 1920)),
        ]);
        let zero = RationalQ::zero;
        let c = BTreeMap::from([
            (1, vec![zero(), zero(), q(1, 8)]),
            (2, vec![zero(), zero(), zero(), q(2, 96), q(3, 96)]),
            (
                3,
                vec![
                    zero(),
                    zero(),
                    zero(),
                    zero(),
                    q(-5, 192),
                    q(12, 192),
                    q(8, 192),
                ],
            ),
        ]);
        CoefficientTable {
            a,
            a7_d2: q(757, 344_064),
            a7_d1: q(1, 5376),
            c,
            jbar7: q(299, 14_336),
            dimer_series: BTreeMap::from([(1, q(1, 8)), (2, q(5, 96)), (3, q(5, 64))]),
        }
    }

    pub fn get() -> &'static CoefficientTable {
        static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
        TABLE.get_or_init(CoefficientTable::build)
    }

    /// Nonzero `1/d^j` entries of `a_k`, `k <= 6`.
    pub fn a_row(&self, k: usize) -> impl Iterator<Item = (usize, &RationalQ)> {
        self.a.range((k, 0)..(k + 1, 0)).map(|(&(_, j), v)| (j, v))
    }
}

fn check_d(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::OutOfRange(format!("dimension {d}")));
    }
    Ok(())
}

fn inverse_power(d: u32, j: usize) -> RationalQ {
    RationalQ::new(BigInt::one(), BigInt::from(d).pow(j as u32))
}

/// Exact `a_k(d)`.
pub fn coeff_a(k: usize, d: u32) -> Result<RationalQ> {
    check_d(d)?;
    let table = CoefficientTable::get();
    match k {
        2..=6 => Ok(table
            .a_row(k)
            .map(|(j, v)| v * inverse_power(d, j))
            .fold(RationalQ::zero(), |acc, t| acc + t)),
        7 if d == 2 => Ok(table.a7_d2.clone()),
        7 if d == 1 => Ok(table.a7_d1.clone()),
        7 => Err(Error::Unsupported(format!(
            "a_7 is known only at d = 1, 2, not d = {d}"
        ))),
        _ => Err(Error::Unsupported(format!("a_{k} is not tabulated"))),
    }
}

/// `c_k(p)` as coefficients of `p^0, p^1, ...`.
pub fn coeff_c(k: usize) -> Result<Vec<RationalQ>> {
    CoefficientTable::get()
        .c
        .get(&k)
        .cloned()
        .ok_or_else(|| Error::Unsupported(format!("c_{k} is not tabulated")))
}

/// Coefficient of `p^k / d^j` obtained by regrouping `sum_{j<=3} c_j(p) / d^j`.
pub fn reexpanded_coefficient(k: usize, j: usize) -> RationalQ {
    CoefficientTable::get()
        .c
        .get(&j)
        .and_then(|poly| poly.get(k))
        .cloned()
        .unwrap_or_else(RationalQ::zero)
}

/// Every `1/d^j` entry with `j <= 3` of `a_2 .. a_6` is fixed by `c_1 .. c_3`.
/// Compares the regrouped `c` table with the `a` table on exactly those entries.
pub fn reexpand_check() -> bool {
    let table = CoefficientTable::get();
    (2..=6).all(|k| {
        (1..=3).all(|j| {
            let from_a = table
                .a
                .get(&(k, j))
                .cloned()
                .unwrap_or_else(RationalQ::zero);
            reexpanded_coefficient(k, j) == from_a
        })
    })
}

fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("density {p}")));
    }
    Ok(())
}

fn check_order(d: u32, order: usize) -> Result<()> {
    check_d(d)?;
    let cap = if d <= 2 { MAX_ORDER } else { 6 };
    if order > cap {
        return Err(Error::Unsupported(format!(
            "order {order} at d = {d} (maximum {cap})"
        )));
    }
    Ok(())
}

/// `L_d(p)`, with `x ln x = 0` at `x = 0`.
pub fn leading_term(p: f64, d: u32) -> Result<f64> {
    check_p(p)?;
    check_d(d)?;
    Ok(0.5 * (p * (2.0 * d as f64).ln() - xlnx(p) - 2.0 * xlnx(1.0 - p) - p))
}

/// `sum_{k=2}^{order} a_k(d) p^k` in exact arithmetic.
pub fn correction_exact(p: &RationalQ, d: u32, order: usize) -> Result<RationalQ> {
    check_order(d, order)?;
    let mut total = RationalQ::zero();
    let mut power = p * p;
    for k in 2..=order {
        total += coeff_a(k, d)? * &power;
        power *= p;
    }
    Ok(total)
}

fn to_rational(p: f64) -> RationalQ {
    RationalQ::from_float(p).expect("finite density")
}

pub fn correction(p: f64, d: u32, order: usize) -> Result<f64> {
    check_p(p)?;
    Ok(correction_exact(&to_rational(p), d, order)?
        .to_f64()
        .expect("finite"))
}

/// `L_d(p) + sum_{k=2}^{order} a_k(d) p^k`.
pub fn eval_lambda(p: f64, d: u32, order: usize) -> Result<f64> {
    check_p(p)?;
    check_order(d, order)?;
    Ok(leading_term(p, d)? + correction(p, d, order)?)
}

/// Exact one-dimensional monomer-dimer entropy per site at dimer density `p`.
pub fn d1_closed_form(p: f64) -> Result<f64> {
    check_p(p)?;
    let h = 0.5 * p;
    Ok(xlnx(1.0 - h) - xlnx(h) - xlnx(1.0 - p))
}

/// `1/2 ln(2d) - 1/2 + 1/(8d) + 5/(96 d^2) + 5/(64 d^3)`.
pub fn eval_dimer_series(d: u32) -> Result<f64> {
    check_d(d)?;
    let tail = CoefficientTable::get()
        .dimer_series
        .iter()
        .map(|(&j, v)| v * inverse_power(d, j))
        .fold(RationalQ::zero(), |acc, t| acc + t);
    Ok(0.5 * (2.0 * d as f64).ln() - 0.5 + tail.to_f64().expect("finite"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub p: f64,
    pub lambda: f64,
    pub leading: f64,
    pub correction: f64,
}

pub fn emit_table(d: u32, order: usize, grid: &[f64]) -> Result<Vec<TableRow>> {
    grid.iter()
        .map(|&p| {
            let leading = leading_term(p, d)?;
            let correction = correction(p, d, order)?;
            check_order(d, order)?;
            Ok(TableRow {
                p,
                lambda: leading + correction,
                leading,
                correction,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(mut out: W, rows: &[TableRow]) -> std::io::Result<()> {
    writeln!(out, "p,lambda,leading,correction")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.p, r.lambda, r.leading, r.correction)?;
    }
    Ok(())
}

/// `count` uniform points on `[0, 1]`.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count).map(|i| i as f64 / (count - 1) as f64).collect(),
    }
}
