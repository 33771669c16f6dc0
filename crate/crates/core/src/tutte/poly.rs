use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Univariate integer polynomial indexed by edge count.
#[derive(Debug, Clone, Default)]
pub struct EdgeCountPoly {
    pub coeffs: Vec<BigInt>,
}

impl EdgeCountPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        EdgeCountPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        EdgeCountPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        EdgeCountPoly::new(vec![BigInt::one()])
    }

    /// Coefficient of `z^j`, zero past the stored length.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Sum of all coefficients (value at `z = 1`).
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Alternating sum (value at `z = -1`).
    pub fn alternating_sum(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl PartialEq for EdgeCountPoly {
    fn eq(&self, other: &Self) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|j| self.coeff(j) == other.coeff(j))
    }
}

impl Eq for EdgeCountPoly {}

/// Tutte polynomial as a coefficient matrix: `coeffs[i][k]` multiplies `x^i y^k`.
#[derive(Debug, Clone, Default)]
pub struct TuttePoly {
    pub coeffs: Vec<Vec<BigInt>>,
}

impl TuttePoly {
    pub fn coeff(&self, i: usize, k: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Builds a polynomial from `(coefficient, x power, y power)` terms.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let mut p = TuttePoly::default();
        for &(c, i, k) in terms {
            if p.coeffs.len() <= i {
                p.coeffs.resize(i + 1, Vec::new());
            }
            let row = &mut p.coeffs[i];
            if row.len() <= k {
                row.resize(k + 1, BigInt::zero());
            }
            row[k] += c;
        }
        p
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        let mut xp = BigRational::one();
        for row in &self.coeffs {
            let mut yp = BigRational::one();
            for c in row {
                if !c.is_zero() {
                    total += &xp * &yp * BigRational::from_integer(c.clone());
                }
                yp *= y;
            }
            xp *= x;
        }
        total
    }

    pub fn eval_int(&self, x: i64, y: i64) -> BigInt {
        self.eval(
            &BigRational::from_integer(x.into()),
            &BigRational::from_integer(y.into()),
        )
        .to_integer()
    }

    /// Nonzero terms as `(coefficient, x power, y power)`, ordered by x then y.
    pub fn terms(&self) -> Vec<(BigInt, usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((c.clone(), i, k));
                }
            }
        }
        out
    }
}

impl PartialEq for TuttePoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms() == other.terms()
    }
}

impl Eq for TuttePoly {}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        terms.sort_by_key(|&(_, i, k)| (std::cmp::Reverse(i), k));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, i, k)) in terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mono = match (i, k) {
                (0, 0) => String::new(),
                (i, 0) => pow_str("x", *i),
                (0, k) => pow_str("y", *k),
                (i, k) => format!("{}{}", pow_str("x", *i), pow_str("y", *k)),
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c}{mono}")?;
            }
        }
        Ok(())
    }
}

fn pow_str(var: &str, e: usize) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// Row `k` of Pascal's triangle for `k = 0..=max`.
pub(crate) fn binomial_rows<T>(max: usize) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + for<'a> std::ops::AddAssign<&'a T>,
{
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(max + 1);
    rows.push(vec![T::one()]);
    for k in 1..=max {
        let prev = &rows[k - 1];
        let mut row = vec![T::zero(); k + 1];
        row[0] = T::one();
        row[k] = T::one();
        for (j, pair) in prev.windows(2).enumerate() {
            row[j + 1] = pair[0].clone();
            row[j + 1] += &pair[1];
        }
        rows.push(row);
    }
    rows
}
