//! Truncated Laurent series with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exact::Rational;
use crate::laurent::SeriesError;

/// `sum_i coeffs[i] z^(low + i) + O(z^precision)` with `precision = low + coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLaurent {
    low: i64,
    coeffs: Vec<Rational>,
}

impl TruncatedLaurent {
    pub fn new(low: i64, coeffs: Vec<Rational>) -> Self {
        TruncatedLaurent { low, coeffs }
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// First exponent whose coefficient is unknown.
    pub fn precision(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^exp`; zero below `low`, an error at or beyond the precision.
    pub fn coeff(&self, exp: i64) -> Result<Rational, SeriesError> {
        if exp >= self.precision() {
            return Err(SeriesError::BeyondPrecision { exp, precision: self.precision() });
        }
        if exp < self.low {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(exp - self.low) as usize].clone())
    }

    /// Termwise derivative; the precision drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer((self.low + i as i64).into()))
            .collect();
        TruncatedLaurent { low: self.low - 1, coeffs }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TruncatedLaurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Truncated product; the result is known exactly as far as both inputs allow.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedLaurent { low: self.low + rhs.low, coeffs: out })
    }

    /// Drops every coefficient at or beyond `precision`; never extends.
    pub fn truncate(&self, precision: i64) -> Result<Self, SeriesError> {
        if precision > self.precision() {
            return Err(SeriesError::OrderMismatch { have: self.precision(), want: precision });
        }
        let keep = (precision - self.low).max(0) as usize;
        Ok(TruncatedLaurent { low: self.low, coeffs: self.coeffs[..keep].to_vec() })
    }

    /// Difference of two series truncated at the same precision.
    pub fn sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        if self.precision() != rhs.precision() {
            return Err(SeriesError::OrderMismatch { have: rhs.precision(), want: self.precision() });
        }
        let low = self.low.min(rhs.low);
        let coeffs = (low..self.precision())
            .map(|e| self.coeff(e).and_then(|a| rhs.coeff(e).map(|b| a - b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedLaurent { low, coeffs })
    }
}
