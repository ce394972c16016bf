//! The indicial polynomial `p` attached to an equation and pole order `m`,
//! its roots in the positive integers, and closed forms used as oracles.
//!
//! `p` is built two ways: from the per-factor sum
//!
//! ```text
//! p(x) = (x-m)_k - sum_j a_j (-1)^(k-j) (k+m-1)_(k-j) (x-m)_j
//! ```
//!
//! and from the factored form `p(x) = (x-m)_k - (-1)^k (k+m-1)_(k-l) a(x)` with
//! `a(x) = sum_j (-1)^j a_j (l+m-1)_(l-j) (x-m)_j`. The two must agree exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::equation::Equation;
use crate::exact::{falling, gcd_list, sign_pow};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndicialError {
    #[error("inadmissible multiplicity m = {m}: sum (j+m) a_j must equal k + m")]
    InadmissibleMultiplicity { m: usize },
    #[error("reduction requires no zeroth-derivative factor (a_0 = {0})")]
    HasZerothFactor(usize),
    #[error("invalid closed-form parameters: {0}")]
    BadParameters(&'static str),
}

/// `p`, its positive integer roots and their gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicialData {
    pub m: usize,
    pub poly: IntPoly,
    pub roots: Vec<usize>,
    pub q: Option<usize>,
}

impl IndicialData {
    pub fn analyze(eq: &Equation, m: usize) -> Result<Self, IndicialError> {
        let poly = build_p(eq, m)?;
        let roots = roots_in_n(&poly, eq, m);
        let q = gcd_of_roots(&roots);
        Ok(IndicialData { m, poly, roots, q })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }
}

fn check_admissible(eq: &Equation, m: usize) -> Result<(), IndicialError> {
    if m == 0 || !eq.admits_multiplicity(m) {
        return Err(IndicialError::InadmissibleMultiplicity { m });
    }
    Ok(())
}

/// `p` from the per-factor sum. Assumes `m` is admissible.
pub fn p_from_factor_sum(eq: &Equation, m: usize) -> IntPoly {
    let (k, mi) = (eq.k(), m as i64);
    let mut p = IntPoly::falling(mi, k);
    for (j, &aj) in eq.exponents().iter().enumerate() {
        if aj == 0 {
            continue;
        }
        let c = falling(k as i64 + mi - 1, k - j) * sign_pow(k - j) * aj as i64;
        p = &p - &IntPoly::falling(mi, j).scale(&c);
    }
    p
}

/// The degree-`l` polynomial `a(x)`; `l` may exceed the equation's own `l`
/// (the extra exponents are zero).
pub fn a_poly(eq: &Equation, m: usize, l: usize) -> IntPoly {
    assert!(l >= eq.l(), "a(x) needs l >= highest factor order");
    let mi = m as i64;
    let mut acc = IntPoly::zero();
    for j in 0..=l {
        let aj = eq.a(j);
        if aj == 0 {
            continue;
        }
        let c = falling(l as i64 + mi - 1, l - j) * sign_pow(j) * aj as i64;
        acc = &acc + &IntPoly::falling(mi, j).scale(&c);
    }
    acc
}

/// `p` from the factored form `(x-m)_k - (-1)^k (k+m-1)_(k-l) a(x)`.
pub fn p_from_factored_form(eq: &Equation, m: usize) -> IntPoly {
    let (k, l, mi) = (eq.k(), eq.l(), m as i64);
    let scale = falling(k as i64 + mi - 1, k - l) * sign_pow(k);
    &IntPoly::falling(mi, k) - &a_poly(eq, m, l).scale(&scale)
}

/// Builds `p` and cross-checks both constructions.
pub fn build_p(eq: &Equation, m: usize) -> Result<IntPoly, IndicialError> {
    check_admissible(eq, m)?;
    let p = p_from_factor_sum(eq, m);
    let alt = p_from_factored_form(eq, m);
    assert_eq!(p, alt, "indicial polynomial constructions disagree for {eq}, m={m}");
    debug_assert_eq!(p.degree(), Some(eq.k()));
    Ok(p)
}

/// Largest possible positive integer root, `k + l + 2m`.
pub fn root_bound(eq: &Equation, m: usize) -> usize {
    eq.k() + eq.l() + 2 * m
}

/// Every integer root of `p` in `[1, k+l+2m]`, found by exact evaluation.
pub fn roots_in_n(p: &IntPoly, eq: &Equation, m: usize) -> Vec<usize> {
    (1..=root_bound(eq, m))
        .filter(|&x| p.eval_i64(x as i64).is_zero())
        .collect()
}

pub fn gcd_of_roots(roots: &[usize]) -> Option<usize> {
    gcd_list(roots).ok()
}

/// `p(m) = (-1)^(k+1) (k+m-1)_k a_0`, checked against direct evaluation.
pub fn p_at_m(eq: &Equation, m: usize) -> Result<BigInt, IndicialError> {
    let p = build_p(eq, m)?;
    let k = eq.k();
    let closed = falling((k + m) as i64 - 1, k) * sign_pow(k + 1) * eq.a(0) as i64;
    assert_eq!(closed, p.eval_i64(m as i64), "p(m) closed form disagrees for {eq}");
    Ok(closed)
}

/// For `a_0 = 0`, `g = f'` solves the lowered equation with a pole of order
/// `m + 1`, and `p(x) = (x - m) p_1(x)`.
pub fn reduce_if_a0_zero(eq: &Equation, m: usize) -> Result<(Equation, usize), IndicialError> {
    if eq.a(0) != 0 {
        return Err(IndicialError::HasZerothFactor(eq.a(0)));
    }
    check_admissible(eq, m)?;
    let reduced = eq
        .differentiated()
        .ok_or(IndicialError::BadParameters("equation cannot be lowered"))?;
    let p = build_p(eq, m)?;
    let p1 = build_p(&reduced, m + 1)?;
    assert_eq!(p, p1.mul_linear(m as i64), "reduction identity fails for {eq}");
    Ok((reduced, m + 1))
}

/// Positive integer roots of `p` for `f^(k) = f^a f'^b`, from the case
/// analysis of the linear `a(x) = k + m - b(x+1)` and the three large-root
/// families.
pub fn l1_roots_closed_form(m: usize, k: usize, a: usize, b: usize) -> Result<Vec<usize>, IndicialError> {
    if m == 0 || k == 0 {
        return Err(IndicialError::BadParameters("m and k must be positive"));
    }
    if m * a + (m + 1) * b != k + m {
        return Err(IndicialError::BadParameters("need m a + (m+1) b = k + m"));
    }
    if a + b < 2 {
        return Err(IndicialError::BadParameters("need a + b >= 2"));
    }
    if k < 2 {
        return Err(IndicialError::BadParameters("need k > 1"));
    }
    let mut roots = Vec::with_capacity(2);
    if b > 0 && (k + m) % b == 0 {
        let r = (k + m) / b - 1;
        if (m..k + m).contains(&r) {
            roots.push(r);
        }
    }
    let odd = k % 2 == 1;
    if a == 0 && b * (m + 1) == k + m && odd {
        roots.push(k + 2 * m + 1);
    } else if a * m == k + m && b == 0 && !odd {
        roots.push(k + 2 * m);
    } else if a * m + 1 == k && b == 1 && odd {
        roots.push(k + 2 * m - 1);
    }
    roots.sort_unstable();
    Ok(roots)
}

/// A solution of `sum_i C(r-1, s_i - 1) = C(r-1, s-1)` with
/// `s_1 + ... + s_d <= s <= r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialSolution {
    pub r: usize,
    pub s: usize,
    /// Nondecreasing; every ordering is also a solution.
    pub parts: Vec<usize>,
}

impl BinomialSolution {
    /// All parts equal, `s = d s_1`, `r = (d+1) s_1`.
    pub fn is_balanced(&self) -> bool {
        let s1 = self.parts[0];
        let d = self.parts.len();
        self.parts.iter().all(|&x| x == s1) && self.s == d * s1 && self.r == (d + 1) * s1
    }
}

/// Exhaustive search over `2 <= d <= d_max`, `1 <= r <= r_max`.
pub fn binomial_sum_solutions(d_max: usize, r_max: usize) -> Vec<BinomialSolution> {
    let mut pascal = vec![vec![0u128; r_max + 1]; r_max + 1];
    for n in 0..=r_max {
        pascal[n][0] = 1;
        for c in 1..=n {
            pascal[n][c] = pascal[n - 1][c - 1] + if c < n { pascal[n - 1][c] } else { 0 };
        }
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    for r in 1..=r_max {
        let row = &pascal[r - 1];
        for d in 2..=d_max {
            parts.clear();
            search_parts(row, r, d, 1, 0, 0, &mut parts, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search_parts(
    row: &[u128],
    r: usize,
    d: usize,
    min_part: usize,
    sum: usize,
    binom_sum: u128,
    parts: &mut Vec<usize>,
    out: &mut Vec<BinomialSolution>,
) {
    if parts.len() == d {
        for s in sum.max(1)..=r {
            if row[s - 1] == binom_sum {
                out.push(BinomialSolution { r, s, parts: parts.clone() });
            }
        }
        return;
    }
    let remaining = d - parts.len();
    let mut part = min_part;
    while sum + part * remaining <= r {
        parts.push(part);
        search_parts(row, r, d, part, sum + part, binom_sum + row[part - 1], parts, out);
        parts.pop();
        part += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(k: usize, j: &[i64]) -> Equation {
        Equation::from_factors(k, j).unwrap()
    }

    #[test]
    fn hand_expanded_polynomials() {
        let p = build_p(&eq(2, &[0, 0]), 2).unwrap();
        assert_eq!(p, &IntPoly::linear(6) * &IntPoly::linear(-1));
        let p = build_p(&eq(2, &[0, 0, 0]), 1).unwrap();
        assert_eq!(p, &IntPoly::linear(4) * &IntPoly::linear(-1));
        let p = build_p(&eq(3, &[1, 1]), 1).unwrap();
        let expect = &(&IntPoly::linear(1) * &IntPoly::linear(6)) * &IntPoly::linear(-1);
        assert_eq!(p, expect);
        assert_eq!(
            build_p(&eq(2, &[0, 0]), 1),
            Err(IndicialError::InadmissibleMultiplicity { m: 1 })
        );
    }

    #[test]
    fn root_examples() {
        let data = IndicialData::analyze(&eq(2, &[0, 0]), 2).unwrap();
        assert_eq!((data.roots.as_slice(), data.q), (&[6usize][..], Some(6)));
        let data = IndicialData::analyze(&eq(3, &[1, 1]), 1).unwrap();
        assert_eq!((data.roots.as_slice(), data.q), (&[1usize, 6][..], Some(1)));
        // f'' = f f': p = (x-2)(x+1)
        let e = eq(2, &[0, 1]);
        let data = IndicialData::analyze(&e, 1).unwrap();
        assert_eq!(data.poly, &IntPoly::linear(2) * &IntPoly::linear(-1));
        assert_eq!(data.roots, [2]);
        assert_eq!(l1_roots_closed_form(1, 2, 1, 1).unwrap(), [2]);
        assert_eq!(gcd_of_roots(&[]), None);
    }

    #[test]
    fn p_at_m_matches_direct_evaluation() {
        assert_eq!(p_at_m(&eq(2, &[0, 0]), 2).unwrap(), BigInt::from(-12));
        assert_eq!(p_at_m(&eq(3, &[1, 1]), 1).unwrap(), BigInt::from(0));
        assert_eq!(p_at_m(&eq(2, &[0, 0, 0]), 1).unwrap(), BigInt::from(-6));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_if_a0_zero(&eq(3, &[1, 1]), 1).unwrap(), (eq(2, &[0, 0]), 2));
        assert_eq!(reduce_if_a0_zero(&eq(4, &[1, 1]), 2).unwrap(), (eq(3, &[0, 0]), 3));
        assert_eq!(
            reduce_if_a0_zero(&eq(2, &[0, 0]), 2),
            Err(IndicialError::HasZerothFactor(2))
        );
        // f'''' = f''^2 has no admissible pole order, so m = 1 is rejected.
        assert_eq!(
            reduce_if_a0_zero(&eq(4, &[2, 2]), 1),
            Err(IndicialError::InadmissibleMultiplicity { m: 1 })
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(l1_roots_closed_form(2, 2, 2, 0).unwrap(), [6]);
        assert_eq!(l1_roots_closed_form(1, 3, 0, 2).unwrap(), [1, 6]);
        assert_eq!(l1_roots_closed_form(1, 3, 2, 1).unwrap(), [3, 4]);
        assert!(l1_roots_closed_form(1, 3, 1, 1).is_err());
        assert!(l1_roots_closed_form(1, 1, 2, 0).is_err());
    }

    #[test]
    fn binomial_search_small() {
        let sols = binomial_sum_solutions(3, 12);
        assert!(!sols.is_empty());
        assert!(sols.iter().all(BinomialSolution::is_balanced));
        // C(2,0) + C(2,0) = 2 = C(2,1): s_i = 1, s = 2, r = 3
        assert!(sols.contains(&BinomialSolution { r: 3, s: 2, parts: vec![1, 1] }));
    }
}
