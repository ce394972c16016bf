//! Verdicts on the meromorphic solution set of an equation.
//!
//! A label states what is known about *every* meromorphic solution with
//! poles of the admissible order; it does not claim that transcendental
//! solutions exist, except for the three equations matched exactly.

use alloc::vec::Vec;
use core::fmt;

use crate::equation::Equation;
use crate::indicial::IndicialData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// No admissible pole order; the solutions are polynomials.
    NoPoleRational,
    RationalOnly,
    /// In W: rational, elliptic, or `g(e^(cz))` with `g` rational.
    WGeneral,
    /// Transcendental solutions are elliptic or of the form `g(e^(cz))`.
    WQ2EllipticOrExp,
    /// Transcendental solutions are elliptic with period ratio `i`.
    EllipticRatioI,
    /// Transcendental solutions are elliptic with period ratio `e^(2 pi i / 6)`.
    EllipticRatioZeta6,
    KnownNotInW,
    UnresolvedQ1,
}

impl Label {
    pub const ALL: [Label; 8] = [
        Label::NoPoleRational,
        Label::RationalOnly,
        Label::WGeneral,
        Label::WQ2EllipticOrExp,
        Label::EllipticRatioI,
        Label::EllipticRatioZeta6,
        Label::KnownNotInW,
        Label::UnresolvedQ1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::NoPoleRational => "NO_POLE_RATIONAL",
            Label::RationalOnly => "RATIONAL_ONLY",
            Label::WGeneral => "W_GENERAL",
            Label::WQ2EllipticOrExp => "W_Q2_ELLIPTIC_OR_EXP",
            Label::EllipticRatioI => "ELLIPTIC_RATIO_I",
            Label::EllipticRatioZeta6 => "ELLIPTIC_RATIO_ZETA6",
            Label::KnownNotInW => "KNOWN_NOT_IN_W",
            Label::UnresolvedQ1 => "UNRESOLVED_Q1",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.as_str() == s)
    }

    /// Whether every solution is known to lie in W.
    pub fn within_w(self) -> bool {
        !matches!(self, Label::KnownNotInW | Label::UnresolvedQ1)
    }

    /// Whether the label leaves room for a nonrational solution.
    pub fn admits_transcendental(self) -> bool {
        !matches!(self, Label::NoPoleRational | Label::RationalOnly)
    }

    /// The label for a common root gcd `q > 1`; `None` for `q = 1`.
    fn for_gcd(q: usize) -> Option<Label> {
        match q {
            1 => None,
            2 => Some(Label::WQ2EllipticOrExp),
            3 | 6 => Some(Label::EllipticRatioZeta6),
            4 => Some(Label::EllipticRatioI),
            _ => Some(Label::RationalOnly),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One applied rule and the result it rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evidence {
    pub rule: &'static str,
    pub citation: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: Label,
    pub m: Option<usize>,
    pub roots: Vec<usize>,
    pub q: Option<usize>,
    pub evidence: Vec<Evidence>,
}

const POLE_BALANCE: Evidence = Evidence {
    rule: "pole-order-balance",
    citation: "a pole of order m forces k = m(d-1) + h; no positive integer m solves it, and solutions with finitely many poles are rational",
};
const WEIERSTRASS: Evidence = Evidence {
    rule: "exact-match f''=f^2",
    citation: "renormalized Weierstrass p-function solutions with period ratio e^(2 pi i/6)",
};
const JACOBI_DN: Evidence = Evidence {
    rule: "exact-match f''=f^3",
    citation: "renormalized Jacobi dn-function solutions with period ratio i",
};
const WEIERSTRASS_INTEGRAL: Evidence = Evidence {
    rule: "exact-match f'''=f'^2",
    citation: "integrals of the f''=f^2 Weierstrass solutions are meromorphic and not in W",
};
const SHARED_PARITY: Evidence = Evidence {
    rule: "factor-orders-share-parity",
    citation: "all factor orders even or all odd: every meromorphic solution is rational apart from f''=f^2, f''=f^3, f'''=f'^2",
};
const NO_ROOTS: Evidence = Evidence {
    rule: "no-positive-roots",
    citation: "the indicial polynomial has no positive integer root, so every Laurent solution is c0 z^-m and the solution is rational",
};
const SINGLE_ROOT_AT_POLE_ORDER: Evidence = Evidence {
    rule: "single-root-at-m",
    citation: "m is the only root: differentiating leaves an equation with no roots, so solutions are rational",
};
const GCD_RESTRICTION: Evidence = Evidence {
    rule: "root-gcd",
    citation: "nonzero Laurent coefficients sit at multiples of q = gcd(R); a transcendental solution has phi(q) <= 2 independent periods, so q is 1, 2, 3, 4 or 6",
};
const GCD_EXCLUDES: Evidence = Evidence {
    rule: "root-gcd-excludes-transcendental",
    citation: "phi(q) > 2 (or q = 5): a transcendental solution would need more than two independent periods, so solutions are rational",
};
const FIRST_ORDER_FAMILY: Evidence = Evidence {
    rule: "f^a f'^b family",
    citation: "for f^(k) = f^a f'^b every meromorphic solution is in W except f'''=f'^2 (two roots with q = 1 reduce to kf^(k-1) = f^k + c, covered by Eremenko-Liao-Ng)",
};
const Q1_OPEN: Evidence = Evidence {
    rule: "q1-multiple-roots",
    citation: "several positive roots with gcd 1 and l >= 2: no period can be forced from the Laurent shape",
};

/// Classifies the equation from scratch.
pub fn classify(eq: &Equation) -> Classification {
    match eq.pole_multiplicity() {
        None => Classification {
            label: Label::NoPoleRational,
            m: None,
            roots: Vec::new(),
            q: None,
            evidence: alloc::vec![POLE_BALANCE],
        },
        Some(profile) => {
            let data = IndicialData::analyze(eq, profile.m)
                .expect("pole order from the balance condition is admissible");
            classify_with_roots(eq, profile.m, data.roots)
        }
    }
}

/// Classification for an equation whose admissible `m` and root set are
/// already known.
pub fn classify_with_roots(eq: &Equation, m: usize, roots: Vec<usize>) -> Classification {
    let q = crate::indicial::gcd_of_roots(&roots);
    let mut evidence = Vec::new();
    let label = decide(eq, m, &roots, q, &mut evidence);
    debug_assert!(!evidence.is_empty());
    Classification { label, m: Some(m), roots, q, evidence }
}

fn decide(eq: &Equation, m: usize, roots: &[usize], q: Option<usize>, ev: &mut Vec<Evidence>) -> Label {
    match (eq.k(), eq.exponents()) {
        (2, [2]) => {
            ev.push(WEIERSTRASS);
            return Label::EllipticRatioZeta6;
        }
        (2, [3]) => {
            ev.push(JACOBI_DN);
            return Label::EllipticRatioI;
        }
        (3, [0, 2]) => {
            ev.push(WEIERSTRASS_INTEGRAL);
            return Label::KnownNotInW;
        }
        _ => {}
    }
    let Some(q) = q else {
        ev.push(NO_ROOTS);
        return Label::RationalOnly;
    };
    if eq.factors_share_parity() {
        ev.push(SHARED_PARITY);
        return Label::RationalOnly;
    }
    // r = 1 forces m = 1 since no root lies below m
    if let [r] = roots {
        if *r == m || *r == 1 {
            ev.push(SINGLE_ROOT_AT_POLE_ORDER);
            return Label::RationalOnly;
        }
    }
    match Label::for_gcd(q) {
        Some(Label::RationalOnly) => {
            ev.push(GCD_EXCLUDES);
            Label::RationalOnly
        }
        Some(label) => {
            ev.push(GCD_RESTRICTION);
            label
        }
        None if eq.l() <= 1 => {
            ev.push(FIRST_ORDER_FAMILY);
            Label::WGeneral
        }
        None => {
            ev.push(Q1_OPEN);
            Label::UnresolvedQ1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(k: usize, j: &[i64]) -> Label {
        classify(&Equation::from_factors(k, j).unwrap()).label
    }

    #[test]
    fn named_equations() {
        assert_eq!(label(2, &[0, 0]), Label::EllipticRatioZeta6);
        assert_eq!(label(2, &[0, 0, 0]), Label::EllipticRatioI);
        assert_eq!(label(3, &[1, 1]), Label::KnownNotInW);
        assert_eq!(label(2, &[0, 0, 0, 0]), Label::NoPoleRational);
    }

    #[test]
    fn mixed_first_order_two_roots() {
        let c = classify(&Equation::from_exponents(3, alloc::vec![2, 1]).unwrap());
        assert_eq!(c.label, Label::WGeneral);
        assert_eq!((c.m, c.roots.as_slice(), c.q), (Some(1), &[3usize, 4][..], Some(1)));
        assert_eq!(c.evidence, [FIRST_ORDER_FAMILY]);
    }

    #[test]
    fn shared_parity_beats_root_gcd() {
        // f^(5) = f'^2: m = 3, roots {3, 12}, gcd 3, yet all factor orders are odd.
        let e = Equation::from_factors(5, &[1, 1]).unwrap();
        let c = classify(&e);
        assert_eq!((c.m, c.roots.as_slice(), c.q), (Some(3), &[3usize, 12][..], Some(3)));
        assert_eq!(c.label, Label::RationalOnly);
        assert_eq!(c.evidence, [SHARED_PARITY]);
    }

    #[test]
    fn labels_round_trip_through_text() {
        for l in Label::ALL {
            assert_eq!(Label::parse(l.as_str()), Some(l));
        }
        assert_eq!(Label::parse("nope"), None);
    }
}
