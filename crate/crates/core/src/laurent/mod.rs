//! Formal Laurent solutions `f = sum_n c(n) z^(n-m)` at a pole of order `m`.
//!
//! Coefficients are stored as `q_n = c(n) / c(0)`. Only `v = c(0)^(d-1)` is
//! kept, which is always rational; a product of `d` coefficients then equals
//! `v c(0) prod q`, so the recursion
//!
//! ```text
//! p(n) q_n = v S(n),   S(n) = sum over n_1 + ... + n_d = n, all n_i < n,
//!                              of prod_i (n_i - m)_(j_i) q_(n_i)
//! ```
//!
//! stays in the rationals even when `c(0)` itself is irrational or complex.

mod series;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use series::TruncatedLaurent;

use crate::equation::Equation;
use crate::exact::{falling, Rational};
use crate::indicial::{root_bound, IndicialData, IndicialError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error(transparent)]
    Indicial(#[from] IndicialError),
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("free coefficient given at n = {0}, which is not a positive integer root of p")]
    FreeNotRoot(usize),
    #[error("truncation too short: need order >= {min_order}, have {have}")]
    TruncationTooShort { min_order: usize, have: usize },
    #[error("coefficient of z^{exp} requested beyond precision {precision}")]
    BeyondPrecision { exp: i64, precision: i64 },
    #[error("series precision mismatch: have {have}, need {want}")]
    OrderMismatch { have: i64, want: i64 },
    #[error("empty series")]
    EmptySeries,
}

/// A truncated formal solution. When `obstructed_at` is set, `coeffs` stops
/// just before that root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSolution {
    pub m: usize,
    pub v: Rational,
    /// `q_0 = 1, q_1, ...`
    pub coeffs: Vec<Rational>,
    /// Requested truncation order `N`.
    pub order: usize,
    /// Value used at every root reached, including defaulted zeros.
    pub free: BTreeMap<usize, Rational>,
    pub obstructed_at: Option<usize>,
}

impl SeriesSolution {
    /// Highest index actually computed.
    pub fn computed_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }
}

/// Outcome of substituting a series back into the equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// The identity holds for every coefficient index up to `through`.
    Verified { through: usize },
    /// First coefficient index `n` (the power `z^(n-m-k)`) where it fails.
    Mismatch { index: usize },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified { .. })
    }
}

/// `v = c(0)^(d-1) = (-m)_k / prod_j (-m)_j^(a_j)`.
pub fn leading_value(eq: &Equation, m: usize) -> Result<Rational, SeriesError> {
    if m == 0 || !eq.admits_multiplicity(m) {
        return Err(IndicialError::InadmissibleMultiplicity { m }.into());
    }
    let mi = -(m as i64);
    let mut den = BigInt::one();
    for (j, &aj) in eq.exponents().iter().enumerate() {
        den *= num_traits::pow(falling(mi, j), aj);
    }
    Ok(Rational::new(falling(mi, eq.k()), den))
}

/// Default truncation `4 (k + l + 2m)`.
pub fn default_order(eq: &Equation, m: usize) -> usize {
    4 * root_bound(eq, m)
}

/// Coefficient sequences `u_j(n) = (n-m)_j q_n` for each derivative order in use.
struct DerivativeTable {
    orders: Vec<usize>,
    rows: Vec<Vec<Rational>>,
}

impl DerivativeTable {
    fn new(eq: &Equation) -> Self {
        let orders: Vec<usize> = (0..=eq.l()).filter(|&j| eq.a(j) > 0).collect();
        let rows = vec![Vec::new(); orders.len()];
        DerivativeTable { orders, rows }
    }

    fn push(&mut self, n: usize, m: usize, q: &Rational) {
        for (row, &j) in self.rows.iter_mut().zip(&self.orders) {
            let w = falling(n as i64 - m as i64, j);
            row.push(q * Rational::from_integer(w));
        }
    }

    fn row_of(&self, j: usize) -> usize {
        self.orders.iter().position(|&o| o == j).expect("order present")
    }
}

/// Builds `q_1 .. q_N` by the recursion. At a root `r`, the branch is
/// obstructed if `S(r) != 0`; otherwise `q_r` comes from `free` (default 0).
pub fn build_series(
    eq: &Equation,
    m: usize,
    order: usize,
    free: &BTreeMap<usize, Rational>,
) -> Result<SeriesSolution, SeriesError> {
    if order == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    let indicial = IndicialData::analyze(eq, m)?;
    if let Some(&bad) = free.keys().find(|n| !indicial.roots.contains(n)) {
        return Err(SeriesError::FreeNotRoot(bad));
    }
    let v = leading_value(eq, m)?;
    let factors = eq.factors();
    let mut table = DerivativeTable::new(eq);
    let slots: Vec<usize> = factors.iter().map(|&j| table.row_of(j)).collect();

    // prefix[t][n]: coefficient n of the product of the first t+1 factor series
    let mut prefix: Vec<Vec<Rational>> = vec![Vec::with_capacity(order + 1); factors.len()];
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut assigned = BTreeMap::new();

    let one = Rational::one();
    coeffs.push(one.clone());
    table.push(0, m, &one);
    extend_prefix(&mut prefix, &table, &slots, 0, true);

    let mut obstructed_at = None;
    for n in 1..=order {
        let s = extend_prefix(&mut prefix, &table, &slots, n, false);
        let pn = indicial.poly.eval_i64(n as i64);
        let q = if pn.is_zero() {
            if !s.is_zero() {
                obstructed_at = Some(n);
                break;
            }
            let chosen = free.get(&n).cloned().unwrap_or_else(Rational::zero);
            assigned.insert(n, chosen.clone());
            chosen
        } else {
            &v * s / Rational::from_integer(pn)
        };
        table.push(n, m, &q);
        extend_prefix(&mut prefix, &table, &slots, n, true);
        coeffs.push(q);
    }

    Ok(SeriesSolution {
        m,
        v,
        coeffs,
        order,
        free: assigned,
        obstructed_at,
    })
}

/// Computes coefficient `n` of every prefix product. With `commit = false`
/// the (not yet known) terms at index `n` are treated as zero, which leaves
/// exactly the sum over tuples with every `n_i < n`; that value is returned
/// and nothing is stored.
fn extend_prefix(
    prefix: &mut [Vec<Rational>],
    table: &DerivativeTable,
    slots: &[usize],
    n: usize,
    commit: bool,
) -> Rational {
    let known = |row: &Vec<Rational>, i: usize| -> Option<Rational> {
        if i == n && !commit {
            None
        } else {
            Some(row[i].clone())
        }
    };
    let first = &table.rows[slots[0]];
    let mut current = known(first, n).unwrap_or_else(Rational::zero);
    let mut fresh = Vec::with_capacity(slots.len());
    fresh.push(current.clone());
    for t in 1..slots.len() {
        let row = &table.rows[slots[t]];
        let mut acc = Rational::zero();
        for i in 0..=n {
            let left = if i == n { current.clone() } else { prefix[t - 1][i].clone() };
            if left.is_zero() {
                continue;
            }
            if let Some(right) = known(row, n - i) {
                if !right.is_zero() {
                    acc += left * right;
                }
            }
        }
        current = acc;
        fresh.push(current.clone());
    }
    if commit {
        for (t, value) in fresh.into_iter().enumerate() {
            prefix[t].push(value);
        }
    }
    current
}

/// Substitutes `F = sum q_n z^(n-m)` into `F^(k) = v prod_j (F^(j))^(a_j)`
/// (the equation divided by `c(0)`) and compares coefficients for indices
/// `0..=through`.
pub fn verify_series(
    eq: &Equation,
    sol: &SeriesSolution,
    through: usize,
) -> Result<Verification, SeriesError> {
    let k = eq.k();
    let have = sol.computed_order();
    if through + k > have {
        return Err(SeriesError::TruncationTooShort { min_order: through + k, have });
    }
    let m = sol.m as i64;
    let f = TruncatedLaurent::new(-m, sol.coeffs.clone());
    let mut derivatives = Vec::with_capacity(k + 1);
    derivatives.push(f);
    for j in 0..k {
        let next = derivatives[j].derivative();
        derivatives.push(next);
    }

    let mut rhs: Option<TruncatedLaurent> = None;
    for (j, &aj) in eq.exponents().iter().enumerate() {
        for _ in 0..aj {
            rhs = Some(match rhs {
                None => derivatives[j].clone(),
                Some(acc) => acc.mul(&derivatives[j])?,
            });
        }
    }
    let rhs = rhs.ok_or(SeriesError::EmptySeries)?.scale(&sol.v);

    let low = -m - k as i64;
    let precision = low + through as i64 + 1;
    let diff = derivatives[k].truncate(precision)?.sub(&rhs.truncate(precision)?)?;
    for index in 0..=through {
        if !diff.coeff(low + index as i64)?.is_zero() {
            return Ok(Verification::Mismatch { index });
        }
    }
    Ok(Verification::Verified { through })
}

/// True when `q_n = 0` for every computed `n >= 1` not divisible by `q`.
pub fn shape_check(sol: &SeriesSolution, q: usize) -> bool {
    sol.coeffs
        .iter()
        .enumerate()
        .skip(1)
        .all(|(n, c)| n % q == 0 || c.is_zero())
}
