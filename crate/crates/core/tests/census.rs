use laurent_lab_core::census::{census_summary, enumerate_a, CensusContext, CensusSummary};
use laurent_lab_core::classify::classify;
use laurent_lab_core::indicial::IndicialData;
use laurent_lab_core::Equation;

#[test]
fn context_roots_agree_with_full_analysis() {
    for m in 1..=3 {
        for l in 1..=3 {
            for k in l + 1..=30 {
                let ctx = CensusContext::new(k, l, m).unwrap();
                for a in enumerate_a(k, l, m).unwrap() {
                    let e = Equation::from_exponents(k, a.clone()).unwrap();
                    let data = IndicialData::analyze(&e, m).unwrap();
                    let row = ctx.analyze(&a);
                    assert_eq!(row.roots, data.roots, "{e}");
                    assert_eq!(row.label, Some(classify(&e).label), "{e}");
                }
            }
        }
    }
}

#[test]
fn summary_recounts_by_hand() {
    let (k, l, m) = (40, 2, 1);
    let s = census_summary(k, l, m).unwrap();
    let mut manual = CensusSummary::empty(k, l, m);
    let ctx = CensusContext::new(k, l, m).unwrap();
    let (mut no_root, mut single) = (0, 0);
    for a in enumerate_a(k, l, m).unwrap() {
        let row = ctx.analyze(&a);
        match row.roots.len() {
            0 => no_root += 1,
            1 => single += 1,
            _ => {}
        }
        manual.record(&row);
    }
    assert_eq!(s, manual);
    assert_eq!((s.no_root, s.single_root), (no_root, single));
    assert_eq!(s.label_counts.values().sum::<u64>(), s.d_ge_2);
}

#[test]
fn partitions_merge_to_the_whole() {
    let ctx = CensusContext::new(60, 3, 2).unwrap();
    let whole = ctx.summarize();
    let reversed = (0..=ctx.max_top())
        .rev()
        .map(|t| ctx.summarize_partition(t).unwrap())
        .fold(CensusSummary::empty(60, 3, 2), CensusSummary::merge);
    assert_eq!(whole, reversed);
}
