use laurent_lab_core::classify::{classify, Label};
use laurent_lab_core::Equation;

fn label(k: usize, factors: &[i64]) -> Label {
    classify(&Equation::from_factors(k, factors).unwrap()).label
}

#[test]
fn reference_table() {
    let table: &[(usize, &[i64], Label)] = &[
        (2, &[0, 0], Label::EllipticRatioZeta6),
        (2, &[0, 0, 0], Label::EllipticRatioI),
        (3, &[1, 1], Label::KnownNotInW),
        (1, &[0, 0], Label::RationalOnly),
        (3, &[0, 0, 1], Label::WGeneral),
        (2, &[0, 1], Label::WQ2EllipticOrExp),
        (4, &[2, 2], Label::NoPoleRational),
        (5, &[1, 1], Label::RationalOnly),
    ];
    for &(k, f, want) in table {
        assert_eq!(label(k, f), want, "k = {k}, factors {f:?}");
    }
}

#[test]
fn evidence_is_always_attached() {
    for k in 1..=8usize {
        for x in 0..k as i64 {
            for y in x..k as i64 {
                let c = classify(&Equation::from_factors(k, &[x, y]).unwrap());
                assert!(!c.evidence.is_empty());
                assert_eq!(c.q.is_some(), !c.roots.is_empty());
                if c.label == Label::NoPoleRational {
                    assert_eq!(c.m, None);
                }
            }
        }
    }
}

#[test]
fn first_order_family_stays_in_w() {
    for k in 2..=15usize {
        for d in 2..=k + 3 {
            for b in 0..=d {
                let e = Equation::from_exponents(k, vec![d - b, b]).unwrap();
                let l = classify(&e).label;
                assert_ne!(l, Label::UnresolvedQ1, "{e}");
                assert_eq!(l.within_w(), e.to_string() != "f''' = f'^2", "{e}");
            }
        }
    }
}
