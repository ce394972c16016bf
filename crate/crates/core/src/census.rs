//! Census over `A(k, l, m)`, the exponent vectors `(a_0, ..., a_l)` with
//! `sum_j (j+m) a_j = k + m`.
//!
//! Roots are found with the split `p(x) = (x-m)_k - (-1)^k (k+m-1)_(k-l) a(x)`:
//! the tuple-independent parts are computed once per `(k, l, m)`, so each
//! tuple only costs the evaluation of the degree-`l` polynomial `a(x)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::classify::{classify_with_roots, Label};
use crate::equation::Equation;
use crate::exact::{falling, sign_pow, Rational};
use crate::indicial::gcd_of_roots;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("census needs k > l (k = {k}, l = {l})")]
    OrderNotAboveL { k: usize, l: usize },
    #[error("pole order m must be positive")]
    ZeroMultiplicity,
    #[error("top exponent a_l = {0} exceeds the budget k + m")]
    TopOutOfRange(usize),
    #[error("weights need at least two entries")]
    TooFewWeights,
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("leading weights {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
}

fn check_klm(k: usize, l: usize, m: usize) -> Result<(), CensusError> {
    if k <= l {
        return Err(CensusError::OrderNotAboveL { k, l });
    }
    if m == 0 {
        return Err(CensusError::ZeroMultiplicity);
    }
    Ok(())
}

/// Lexicographic enumeration in `(a_l, ..., a_1)`; `a_0` is whatever the
/// budget leaves, and tuples where that is not a multiple of `m` are skipped.
#[derive(Debug, Clone)]
pub struct TupleIter {
    m: usize,
    target: usize,
    a: Vec<usize>,
    used: usize,
    /// Highest odometer position; `l`, or `l - 1` when `a_l` is pinned.
    top: usize,
    started: bool,
    done: bool,
}

impl TupleIter {
    fn new(k: usize, l: usize, m: usize, pinned_top: Option<usize>) -> Self {
        let target = k + m;
        let mut a = vec![0; l + 1];
        let mut used = 0;
        let mut top = l;
        let mut done = false;
        if let Some(t) = pinned_top {
            if l == 0 {
                done = t * m != target;
            } else {
                a[l] = t;
                used = (l + m) * t;
                done = used > target;
                top = l - 1;
            }
        }
        TupleIter { m, target, a, used, top, started: false, done }
    }

    fn advance(&mut self) -> bool {
        for j in 1..=self.top {
            let w = j + self.m;
            if self.used + w <= self.target {
                self.a[j] += 1;
                self.used += w;
                return true;
            }
            self.used -= w * self.a[j];
            self.a[j] = 0;
        }
        false
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
            }
            let rest = self.target - self.used;
            if rest % self.m == 0 {
                self.a[0] = rest / self.m;
                return Some(self.a.clone());
            }
        }
    }
}

/// Every tuple of `A(k, l, m)` exactly once.
pub fn enumerate_a(k: usize, l: usize, m: usize) -> Result<TupleIter, CensusError> {
    check_klm(k, l, m)?;
    Ok(TupleIter::new(k, l, m, None))
}

/// The tuples of `A(k, l, m)` with `a_l = top`.
pub fn enumerate_a_with_top(k: usize, l: usize, m: usize, top: usize) -> Result<TupleIter, CensusError> {
    check_klm(k, l, m)?;
    if top * (l + m) > k + m {
        return Err(CensusError::TopOutOfRange(top));
    }
    Ok(TupleIter::new(k, l, m, Some(top)))
}

/// Number of nonnegative solutions of `sum_i c_i a_i = k`, built up one
/// weight at a time: `N_c(k) = sum_{a <= k / c_l} N_(c without c_l)(k - a c_l)`.
pub fn count_compositions(c: &[u64], k: u64) -> Result<u128, CensusError> {
    if c.len() < 2 {
        return Err(CensusError::TooFewWeights);
    }
    if c.contains(&0) {
        return Err(CensusError::ZeroWeight);
    }
    if c[0].gcd(&c[1]) != 1 {
        return Err(CensusError::NotCoprime(c[0], c[1]));
    }
    let k = k as usize;
    let mut counts: Vec<u128> = (0..=k).map(|t| u128::from(t as u64 % c[0] == 0)).collect();
    for &w in &c[1..] {
        let w = w as usize;
        let mut next = vec![0u128; k + 1];
        for (t, slot) in next.iter_mut().enumerate() {
            *slot = (0..=t / w).map(|a| counts[t - a * w]).sum();
        }
        counts = next;
    }
    Ok(counts[k])
}

/// Per-tuple classification data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub a: Vec<usize>,
    pub roots: Vec<usize>,
    pub q: Option<usize>,
    /// Roots in `[m, k+m)`.
    pub small_root_count: usize,
    /// Roots in `[k+m, k+l+2m]`.
    pub large_root_count: usize,
    /// `None` when the tuple has fewer than two factors.
    pub label: Option<Label>,
}

enum Weights {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

enum Targets {
    Small(Vec<Option<i128>>),
    Big(Vec<Option<BigInt>>),
}

/// Tuple-independent data for one `(k, l, m)`.
pub struct CensusContext {
    k: usize,
    l: usize,
    m: usize,
    /// `weights[j][x - 1] = (-1)^j (l+m-1)_(l-j) (x-m)_j`, so `a(x) = sum_j a_j weights[j][x-1]`.
    weights: Weights,
    /// `p(x) = 0` iff `a(x)` equals this value (`None`: never).
    targets: Targets,
}

impl CensusContext {
    pub fn new(k: usize, l: usize, m: usize) -> Result<Self, CensusError> {
        check_klm(k, l, m)?;
        let bound = k + l + 2 * m;
        let (ki, li, mi) = (k as i64, l as i64, m as i64);
        let big_weights: Vec<Vec<BigInt>> = (0..=l)
            .map(|j| {
                let c = falling(li + mi - 1, l - j) * sign_pow(j);
                (1..=bound as i64).map(|x| &c * falling(x - mi, j)).collect()
            })
            .collect();
        let scale = falling(ki + mi - 1, k - l) * sign_pow(k);
        let big_targets: Vec<Option<BigInt>> = (1..=bound as i64)
            .map(|x| {
                let lead = falling(x - mi, k);
                let (quot, rem) = lead.div_rem(&scale);
                rem.is_zero().then_some(quot)
            })
            .collect();

        // a(x) is a sum of at most l+1 terms, each |weight| * a_j with a_j <= k+m
        let headroom = BigInt::from(i128::MAX) / BigInt::from((k + m + 1) * (l + 1));
        let fits = big_weights
            .iter()
            .flatten()
            .all(|w| w.magnitude() <= headroom.magnitude());
        let (weights, targets) = if fits {
            (
                Weights::Small(
                    big_weights
                        .iter()
                        .map(|row| row.iter().map(|w| w.to_i128().expect("checked")).collect())
                        .collect(),
                ),
                Targets::Small(
                    big_targets
                        .iter()
                        .map(|t| t.as_ref().and_then(ToPrimitive::to_i128))
                        .collect(),
                ),
            )
        } else {
            (Weights::Big(big_weights), Targets::Big(big_targets))
        };
        Ok(CensusContext { k, l, m, weights, targets })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn is_root(&self, a: &[usize], x: usize) -> bool {
        let idx = x - 1;
        match (&self.weights, &self.targets) {
            (Weights::Small(w), Targets::Small(t)) => match t[idx] {
                None => false,
                Some(target) => {
                    let ax: i128 = a.iter().zip(w).map(|(&aj, row)| aj as i128 * row[idx]).sum();
                    ax == target
                }
            },
            (Weights::Big(w), Targets::Big(t)) => match &t[idx] {
                None => false,
                Some(target) => {
                    let ax: BigInt = a
                        .iter()
                        .zip(w)
                        .map(|(&aj, row)| &row[idx] * BigInt::from(aj))
                        .sum();
                    &ax == target
                }
            },
            _ => unreachable!("weights and targets share a representation"),
        }
    }

    /// Positive integer roots of `p` for the tuple, scanning `[1, k+l+2m]`.
    pub fn roots(&self, a: &[usize]) -> Vec<usize> {
        (1..=self.k + self.l + 2 * self.m).filter(|&x| self.is_root(a, x)).collect()
    }

    /// Roots in `[k+m, k+l+2m]` only.
    pub fn large_roots(&self, a: &[usize]) -> Vec<usize> {
        (self.k + self.m..=self.k + self.l + 2 * self.m)
            .filter(|&x| self.is_root(a, x))
            .collect()
    }

    pub fn analyze(&self, a: &[usize]) -> CensusRow {
        let roots = self.roots(a);
        let split = self.k + self.m;
        let small_root_count = roots.iter().filter(|&&r| r < split).count();
        let large_root_count = roots.len() - small_root_count;
        let q = gcd_of_roots(&roots);
        let label = Equation::from_exponents(self.k, a.to_vec()).ok().map(|eq| {
            debug_assert!(eq.admits_multiplicity(self.m));
            classify_with_roots(&eq, self.m, roots.clone()).label
        });
        CensusRow {
            a: a.to_vec(),
            roots,
            q,
            small_root_count,
            large_root_count,
            label,
        }
    }

    /// Summary over the tuples with `a_l = top`. Summaries of disjoint
    /// partitions combine with [`CensusSummary::merge`].
    pub fn summarize_partition(&self, top: usize) -> Result<CensusSummary, CensusError> {
        let mut acc = CensusSummary::empty(self.k, self.l, self.m);
        for a in enumerate_a_with_top(self.k, self.l, self.m, top)? {
            acc.record(&self.analyze(&a));
        }
        Ok(acc)
    }

    /// Largest admissible `a_l`.
    pub fn max_top(&self) -> usize {
        (self.k + self.m) / (self.l + self.m)
    }

    pub fn summarize(&self) -> CensusSummary {
        (0..=self.max_top())
            .map(|t| self.summarize_partition(t).expect("top within range"))
            .fold(CensusSummary::empty(self.k, self.l, self.m), CensusSummary::merge)
    }
}

/// Aggregate counts over `A(k, l, m)`. Root-structure and label counts cover
/// tuples with at least two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSummary {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub total: u64,
    pub d_ge_2: u64,
    pub no_root: u64,
    pub single_root: u64,
    /// At least two roots in `[m, k+m)`.
    pub multi_small_root: u64,
    /// At least one root in `[k+m, k+l+2m]`.
    pub any_large_root: u64,
    pub label_counts: BTreeMap<Label, u64>,
    /// Tuples with `p(r) = 0`, for every `r` in `[k+m, k+l+2m]`.
    pub large_root_histogram: BTreeMap<usize, u64>,
}

impl CensusSummary {
    pub fn empty(k: usize, l: usize, m: usize) -> Self {
        CensusSummary {
            k,
            l,
            m,
            total: 0,
            d_ge_2: 0,
            no_root: 0,
            single_root: 0,
            multi_small_root: 0,
            any_large_root: 0,
            label_counts: BTreeMap::new(),
            large_root_histogram: (k + m..=k + l + 2 * m).map(|r| (r, 0)).collect(),
        }
    }

    pub fn record(&mut self, row: &CensusRow) {
        self.total += 1;
        let Some(label) = row.label else { return };
        self.d_ge_2 += 1;
        match row.roots.len() {
            0 => self.no_root += 1,
            1 => self.single_root += 1,
            _ => {}
        }
        if row.small_root_count >= 2 {
            self.multi_small_root += 1;
        }
        if row.large_root_count > 0 {
            self.any_large_root += 1;
        }
        *self.label_counts.entry(label).or_default() += 1;
        for r in row.roots.iter().filter(|&&r| r >= self.k + self.m) {
            *self.large_root_histogram.entry(*r).or_default() += 1;
        }
    }

    /// Commutative, associative combination of summaries for the same `(k, l, m)`.
    pub fn merge(mut self, other: CensusSummary) -> CensusSummary {
        assert_eq!((self.k, self.l, self.m), (other.k, other.l, other.m));
        self.total += other.total;
        self.d_ge_2 += other.d_ge_2;
        self.no_root += other.no_root;
        self.single_root += other.single_root;
        self.multi_small_root += other.multi_small_root;
        self.any_large_root += other.any_large_root;
        for (label, n) in other.label_counts {
            *self.label_counts.entry(label).or_default() += n;
        }
        for (r, n) in other.large_root_histogram {
            *self.large_root_histogram.entry(r).or_default() += n;
        }
        self
    }

    /// Tuples with at least one positive integer root.
    pub fn with_roots(&self) -> u64 {
        self.d_ge_2 - self.no_root
    }

    pub fn max_per_large_r(&self) -> u64 {
        self.large_root_histogram.values().copied().max().unwrap_or(0)
    }

    /// Tuples whose label leaves room for a transcendental solution.
    pub fn transcendental_admitting(&self) -> u64 {
        self.label_counts
            .iter()
            .filter(|(l, _)| l.admits_transcendental())
            .map(|(_, n)| n)
            .sum()
    }

    /// `total / (k^l / (l! (l+m)_(l+1)))`.
    pub fn asymptotic_ratio(&self) -> Rational {
        asymptotic_ratio(self.total, self.k, self.l, self.m)
    }
}

/// `count * l! * (l+m)_(l+1) / k^l`.
pub fn asymptotic_ratio(count: u64, k: usize, l: usize, m: usize) -> Rational {
    let num = BigInt::from(count) * falling(l as i64, l) * falling((l + m) as i64, l + 1);
    let den = num_traits::pow(BigInt::from(k), l);
    Rational::new(num, den)
}

/// Sequential census over `A(k, l, m)`.
pub fn census_summary(k: usize, l: usize, m: usize) -> Result<CensusSummary, CensusError> {
    Ok(CensusContext::new(k, l, m)?.summarize())
}

/// For each `r` in `[k+m, k+l+2m]`, the number of tuples with `p(r) = 0`.
pub fn large_root_histogram(k: usize, l: usize, m: usize) -> Result<BTreeMap<usize, u64>, CensusError> {
    let ctx = CensusContext::new(k, l, m)?;
    let mut hist: BTreeMap<usize, u64> = (k + m..=k + l + 2 * m).map(|r| (r, 0)).collect();
    for a in enumerate_a(k, l, m)? {
        for r in ctx.large_roots(&a) {
            *hist.entry(r).or_default() += 1;
        }
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicial::IndicialData;

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enumerate_a(2, 1, 1).unwrap().collect();
        assert_eq!(all, vec![vec![3, 0], vec![1, 1]]);
        assert_eq!(enumerate_a(5, 1, 1).unwrap().count(), 4);
        assert_eq!(
            enumerate_a(2, 3, 1).err(),
            Some(CensusError::OrderNotAboveL { k: 2, l: 3 })
        );
        assert!(enumerate_a(2, 2, 1).is_err());
        let l0: Vec<_> = enumerate_a(4, 0, 2).unwrap().collect();
        assert_eq!(l0, vec![vec![3]]);
        assert_eq!(enumerate_a(3, 0, 2).unwrap().count(), 0);
    }

    #[test]
    fn pinned_top_partitions_the_space() {
        for (k, l, m) in [(9, 2, 1), (12, 3, 2), (7, 1, 3)] {
            let all: Vec<_> = enumerate_a(k, l, m).unwrap().collect();
            let max_top = (k + m) / (l + m);
            let parts: Vec<_> = (0..=max_top)
                .flat_map(|t| enumerate_a_with_top(k, l, m, t).unwrap())
                .collect();
            assert_eq!(all, parts);
        }
        assert!(enumerate_a_with_top(4, 1, 1, 9).is_err());
    }

    #[test]
    fn composition_examples() {
        assert_eq!(count_compositions(&[1, 2], 6), Ok(4));
        assert_eq!(count_compositions(&[1, 2, 3], 0), Ok(1));
        assert_eq!(count_compositions(&[2, 3], 1), Ok(0));
        assert_eq!(count_compositions(&[2, 4], 8), Err(CensusError::NotCoprime(2, 4)));
        assert_eq!(count_compositions(&[2], 8), Err(CensusError::TooFewWeights));
        assert_eq!(count_compositions(&[1, 0], 8), Err(CensusError::ZeroWeight));
    }

    #[test]
    fn summary_examples() {
        let s = census_summary(10, 1, 1).unwrap();
        assert_eq!(s.total, 6);
        assert_eq!(s.asymptotic_ratio(), Rational::new(6.into(), 5.into()));
        assert_eq!(census_summary(4, 2, 1).unwrap().total, 5);
    }

    #[test]
    fn histogram_examples() {
        assert_eq!(large_root_histogram(2, 1, 1).unwrap()[&4], 1);
        assert_eq!(large_root_histogram(3, 1, 1).unwrap()[&6], 1);
        for k in (3..30).step_by(2) {
            for m in 1..4 {
                assert_eq!(large_root_histogram(k, 1, m).unwrap()[&(k + 2 * m)], 0);
            }
        }
    }

    #[test]
    fn context_roots_match_expanded_polynomial() {
        for (k, l, m) in [(6, 2, 1), (9, 3, 2), (7, 1, 1), (8, 2, 3)] {
            let ctx = CensusContext::new(k, l, m).unwrap();
            for a in enumerate_a(k, l, m).unwrap() {
                let eq = Equation::from_exponents(k, a.clone()).unwrap();
                let data = IndicialData::analyze(&eq, m).unwrap();
                // the expanded scan stops at the equation's own bound k + l_eq + 2m
                let fast: Vec<_> = ctx.roots(&a);
                assert_eq!(fast, data.roots, "a={a:?}");
            }
        }
    }

    #[test]
    fn merge_is_order_independent() {
        let ctx = CensusContext::new(14, 2, 1).unwrap();
        let parts: Vec<_> = (0..=ctx.max_top()).map(|t| ctx.summarize_partition(t).unwrap()).collect();
        let fwd = parts.iter().cloned().fold(CensusSummary::empty(14, 2, 1), CensusSummary::merge);
        let rev = parts.iter().rev().cloned().fold(CensusSummary::empty(14, 2, 1), CensusSummary::merge);
        assert_eq!(fwd, rev);
        assert_eq!(fwd.total as usize, enumerate_a(14, 2, 1).unwrap().count());
    }
}
