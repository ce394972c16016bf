//! The equation `f^(k) = prod_j (f^(j))^a_j` and its admissible pole order.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquationError {
    #[error("order k must be positive")]
    ZeroOrder,
    #[error("need at least 2 factors on the right side (d > 1), got {0}")]
    TooFewFactors(usize),
    #[error("factor derivative order {j} must satisfy 0 <= j < k = {k}")]
    FactorOutOfRange { j: i64, k: usize },
    #[error("malformed equation: {0}")]
    Syntax(String),
}

/// Exponent-vector form: `a[j]` counts the factors `f^(j)`. The vector never
/// has trailing zeros, so `a.len() - 1 == l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    k: usize,
    a: Vec<usize>,
}

/// Pole multiplicity `m` together with `d` and `h`, satisfying `k = m(d-1) + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoleProfile {
    pub m: usize,
    pub d: usize,
    pub h: usize,
}

impl Equation {
    /// Builds the equation from the derivative orders of its right-side factors.
    pub fn from_factors(k: usize, factors: &[i64]) -> Result<Self, EquationError> {
        if k == 0 {
            return Err(EquationError::ZeroOrder);
        }
        if factors.len() < 2 {
            return Err(EquationError::TooFewFactors(factors.len()));
        }
        let mut a = Vec::new();
        for &j in factors {
            if j < 0 || j as usize >= k {
                return Err(EquationError::FactorOutOfRange { j, k });
            }
            let j = j as usize;
            if a.len() <= j {
                a.resize(j + 1, 0);
            }
            a[j] += 1;
        }
        Ok(Equation { k, a })
    }

    /// Builds the equation from an exponent vector; trailing zeros are dropped.
    pub fn from_exponents(k: usize, mut a: Vec<usize>) -> Result<Self, EquationError> {
        if k == 0 {
            return Err(EquationError::ZeroOrder);
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        let d: usize = a.iter().sum();
        if d < 2 {
            return Err(EquationError::TooFewFactors(d));
        }
        if a.len() > k {
            return Err(EquationError::FactorOutOfRange {
                j: (a.len() - 1) as i64,
                k,
            });
        }
        Ok(Equation { k, a })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Highest derivative order on the right side.
    pub fn l(&self) -> usize {
        self.a.len() - 1
    }

    pub fn exponents(&self) -> &[usize] {
        &self.a
    }

    /// `a_j`, zero beyond `l`.
    pub fn a(&self, j: usize) -> usize {
        self.a.get(j).copied().unwrap_or(0)
    }

    /// Number of factors.
    pub fn d(&self) -> usize {
        self.a.iter().sum()
    }

    /// Sum of the factor derivative orders.
    pub fn h(&self) -> usize {
        self.a.iter().enumerate().map(|(j, &aj)| j * aj).sum()
    }

    /// Factor derivative orders, ascending.
    pub fn factors(&self) -> Vec<usize> {
        self.a
            .iter()
            .enumerate()
            .flat_map(|(j, &aj)| core::iter::repeat_n(j, aj))
            .collect()
    }

    /// Whether `m` balances the leading pole terms: `sum (j+m) a_j = k + m`.
    pub fn admits_multiplicity(&self, m: usize) -> bool {
        let lhs: usize = self.a.iter().enumerate().map(|(j, &aj)| (j + m) * aj).sum();
        lhs == self.k + m
    }

    /// The unique positive `m` with `k = m(d-1) + h`, if any.
    pub fn pole_multiplicity(&self) -> Option<PoleProfile> {
        let (d, h) = (self.d(), self.h());
        if self.k <= h || (self.k - h) % (d - 1) != 0 {
            return None;
        }
        let m = (self.k - h) / (d - 1);
        debug_assert!(self.admits_multiplicity(m));
        Some(PoleProfile { m, d, h })
    }

    /// True when every factor order is even, or every one is odd.
    pub fn factors_share_parity(&self) -> bool {
        let mut parities = self
            .a
            .iter()
            .enumerate()
            .filter(|(_, &aj)| aj > 0)
            .map(|(j, _)| j % 2);
        match parities.next() {
            Some(first) => parities.all(|p| p == first),
            None => true,
        }
    }

    /// `g = f'` satisfies the equation with every derivative order lowered by
    /// one. Only defined when no factor is `f` itself.
    pub fn differentiated(&self) -> Option<Equation> {
        if self.a(0) != 0 || self.k < 2 {
            return None;
        }
        Some(Equation {
            k: self.k - 1,
            a: self.a[1..].to_vec(),
        })
    }
}

fn write_derivative(f: &mut fmt::Formatter<'_>, j: usize) -> fmt::Result {
    match j {
        0..=3 => {
            f.write_str("f")?;
            for _ in 0..j {
                f.write_str("'")?;
            }
            Ok(())
        }
        _ => write!(f, "f^({j})"),
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_derivative(f, self.k)?;
        f.write_str(" =")?;
        for (j, &aj) in self.a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            f.write_str(" ")?;
            write_derivative(f, j)?;
            if aj > 1 {
                write!(f, "^{aj}")?;
            }
        }
        Ok(())
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>, EquationError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| EquationError::Syntax(alloc::format!("bad integer {s:?}")))
        })
        .collect()
}

/// Accepts `k=3 j=1,1` (factor orders) or `k=3 a=0,2` (exponent vector).
impl FromStr for Equation {
    type Err = EquationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut k = None;
        let mut factors = None;
        let mut exps = None;
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| EquationError::Syntax(alloc::format!("expected key=value, got {token:?}")))?;
            match key {
                "k" => {
                    k = Some(value.parse::<usize>().map_err(|_| {
                        EquationError::Syntax(alloc::format!("bad order {value:?}"))
                    })?)
                }
                "j" => factors = Some(parse_list(value)?),
                "a" => exps = Some(parse_list(value)?),
                other => {
                    return Err(EquationError::Syntax(alloc::format!("unknown key {other:?}")))
                }
            }
        }
        let k = k.ok_or_else(|| EquationError::Syntax(String::from("missing k=")))?;
        match (factors, exps) {
            (Some(j), None) => Equation::from_factors(k, &j),
            (None, Some(a)) => {
                if a.iter().any(|&x| x < 0) {
                    return Err(EquationError::Syntax(String::from("negative exponent")));
                }
                Equation::from_exponents(k, a.into_iter().map(|x| x as usize).collect())
            }
            (Some(_), Some(_)) => Err(EquationError::Syntax(String::from(
                "give either j= or a=, not both",
            ))),
            (None, None) => Err(EquationError::Syntax(String::from("missing j= or a="))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn factor_form_examples() {
        let e = Equation::from_factors(2, &[0, 0]).unwrap();
        assert_eq!((e.k(), e.exponents()), (2, &[2usize][..]));
        let e = Equation::from_factors(3, &[1, 1]).unwrap();
        assert_eq!(e.exponents(), &[0, 2]);
        assert_eq!(
            Equation::from_factors(2, &[0, 2]),
            Err(EquationError::FactorOutOfRange { j: 2, k: 2 })
        );
        assert_eq!(
            Equation::from_factors(2, &[0]),
            Err(EquationError::TooFewFactors(1))
        );
        assert!(Equation::from_factors(2, &[-1, 0]).is_err());
        assert_eq!(Equation::from_factors(0, &[0, 0]), Err(EquationError::ZeroOrder));
    }

    #[test]
    fn exponent_form_validation() {
        let e = Equation::from_exponents(3, vec![2, 1, 0, 0]).unwrap();
        assert_eq!(e.l(), 1);
        assert_eq!(e.factors(), vec![0, 0, 1]);
        assert!(Equation::from_exponents(2, vec![0, 0, 2]).is_err());
        assert!(Equation::from_exponents(2, vec![1]).is_err());
        assert!(Equation::from_exponents(2, vec![]).is_err());
    }

    #[test]
    fn pole_multiplicity_examples() {
        let m = |k, j: &[i64]| Equation::from_factors(k, j).unwrap().pole_multiplicity().map(|p| p.m);
        assert_eq!(m(2, &[0, 0]), Some(2));
        assert_eq!(m(3, &[1, 1]), Some(1));
        assert_eq!(m(2, &[0, 0, 0, 0]), None);
        assert_eq!(m(2, &[0, 0, 0]), Some(1));
        assert_eq!(m(3, &[0, 0, 1]), Some(1));
        // k <= h: no pole possible
        assert_eq!(m(4, &[2, 2]), None);
    }

    #[test]
    fn parity_and_reduction() {
        let e = Equation::from_factors(3, &[1, 1]).unwrap();
        assert!(e.factors_share_parity());
        assert_eq!(e.differentiated(), Some(Equation::from_factors(2, &[0, 0]).unwrap()));
        let e = Equation::from_factors(3, &[0, 0, 1]).unwrap();
        assert!(!e.factors_share_parity());
        assert_eq!(e.differentiated(), None);
        assert!(Equation::from_factors(5, &[0, 2, 4]).unwrap().factors_share_parity());
    }

    #[test]
    fn text_syntax() {
        let a: Equation = "k=3 j=1,1".parse().unwrap();
        let b: Equation = "k=3 a=0,2".parse().unwrap();
        assert_eq!(a, b);
        assert!("k=3 j=1,1 a=0,2".parse::<Equation>().is_err());
        assert!("k=3".parse::<Equation>().is_err());
        assert!("j=1,1".parse::<Equation>().is_err());
        assert!("k=3 a=0,-2".parse::<Equation>().is_err());
        assert_eq!(a.to_string(), "f''' = f'^2");
        let e = Equation::from_factors(5, &[0, 0, 1, 4]).unwrap();
        assert_eq!(e.to_string(), "f^(5) = f^2 f' f^(4)");
    }

    proptest! {
        #[test]
        fn factor_multiset_round_trips(k in 1usize..12, raw in proptest::collection::vec(0usize..100, 2..8)) {
            let mut js: Vec<i64> = raw.iter().map(|&x| (x % k) as i64).collect();
            let e = Equation::from_factors(k, &js).unwrap();
            js.sort();
            let back: Vec<i64> = e.factors().into_iter().map(|j| j as i64).collect();
            prop_assert_eq!(back, js);
            if let Some(p) = e.pole_multiplicity() {
                prop_assert!(e.admits_multiplicity(p.m));
                prop_assert_eq!(k, p.m * (p.d - 1) + p.h);
                // uniqueness
                for other in 1..=k + 1 {
                    if other != p.m {
                        prop_assert!(!e.admits_multiplicity(other));
                    }
                }
            } else {
                for m in 1..=k + 1 {
                    prop_assert!(!e.admits_multiplicity(m));
                }
            }
        }
    }
}
