//! Exact-arithmetic analysis of autonomous equations
//!
//! ```text
//! f^(k) = (f)^a_0 (f')^a_1 ... (f^(l))^a_l,    k > l,  d = a_0 + ... + a_l >= 2
//! ```
//!
//! The crate computes the admissible pole multiplicity, the indicial polynomial
//! governing formal Laurent solutions at a pole, its roots in the positive
//! integers, truncated formal Laurent solutions with exact rational
//! coefficients, a classification of the meromorphic solution set, and census
//! statistics over the exponent-vector families `A(k, l, m)`.
//!
//! Everything is `no_std` and only needs `alloc`; IO, the CLI and parallel
//! census drivers live in the `laurent-lab` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod census;
pub mod classify;
pub mod equation;
pub mod exact;
pub mod indicial;
pub mod laurent;
pub mod poly;

pub use census::{
    count_compositions, enumerate_a, large_root_histogram, CensusContext, CensusError, CensusRow,
    CensusSummary,
};
pub use classify::{classify, Classification, Evidence, Label};
pub use equation::{Equation, EquationError, PoleProfile};
pub use exact::{falling, gcd_list, Rational};
pub use indicial::{IndicialData, IndicialError};
pub use laurent::{SeriesError, SeriesSolution, Verification};
pub use poly::IntPoly;
