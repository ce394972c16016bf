//! Wire formats: classification and series JSON, census CSV.
//!
//! Rationals travel as exact `"num/den"` strings. The only decimal in any
//! output is the census asymptotic ratio.

use std::collections::BTreeMap;
use std::io::Write;

use laurent_lab_core::exact::{format_decimal, format_rational, parse_rational};
use laurent_lab_core::laurent::{SeriesSolution, Verification};
use laurent_lab_core::{CensusSummary, Classification, Equation, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDoc {
    pub rule: String,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub equation: String,
    pub k: usize,
    pub a: Vec<usize>,
    pub m: Option<usize>,
    pub roots: Vec<usize>,
    pub q: Option<usize>,
    pub label: String,
    pub evidence: Vec<EvidenceDoc>,
}

impl ClassificationDoc {
    pub fn new(eq: &Equation, c: &Classification) -> Self {
        ClassificationDoc {
            equation: eq.to_string(),
            k: eq.k(),
            a: eq.exponents().to_vec(),
            m: c.m,
            roots: c.roots.clone(),
            q: c.q,
            label: c.label.as_str().to_string(),
            evidence: c
                .evidence
                .iter()
                .map(|e| EvidenceDoc { rule: e.rule.to_string(), citation: e.citation.to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub n: usize,
    pub q: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerificationDoc {
    Verified { through: usize },
    Mismatch { index: usize },
    Skipped { reason: String },
}

impl From<&Verification> for VerificationDoc {
    fn from(v: &Verification) -> Self {
        match *v {
            Verification::Verified { through } => VerificationDoc::Verified { through },
            Verification::Mismatch { index } => VerificationDoc::Mismatch { index },
        }
    }
}

/// Series document. `equation`, `k`, `a`, `order` and `verification` are
/// optional on input; a bare `{m, v, coeffs, free, obstructed_at}` object is
/// accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<usize>>,
    pub m: usize,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub coeffs: Vec<CoeffDoc>,
    pub free: BTreeMap<String, String>,
    pub obstructed_at: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

impl SeriesDoc {
    pub fn new(eq: &Equation, sol: &SeriesSolution, verification: Option<VerificationDoc>) -> Self {
        SeriesDoc {
            equation: Some(eq.to_string()),
            k: Some(eq.k()),
            a: Some(eq.exponents().to_vec()),
            m: sol.m,
            v: format_rational(&sol.v),
            order: Some(sol.order),
            coeffs: sol
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, q)| CoeffDoc { n, q: format_rational(q) })
                .collect(),
            free: sol.free.iter().map(|(n, q)| (n.to_string(), format_rational(q))).collect(),
            obstructed_at: sol.obstructed_at,
            verification,
        }
    }

    /// The equation recorded in the document, if any.
    pub fn embedded_equation(&self) -> Result<Option<Equation>, CliError> {
        match (self.k, &self.a) {
            (Some(k), Some(a)) => Equation::from_exponents(k, a.clone())
                .map(Some)
                .map_err(|e| CliError::Invalid(format!("series document equation: {e}"))),
            _ => Ok(None),
        }
    }

    /// Rebuilds the solution; coefficients must be listed for `n = 0, 1, 2, ...`.
    pub fn to_solution(&self) -> Result<SeriesSolution, CliError> {
        let bad = |what: String| CliError::Invalid(format!("series document: {what}"));
        let v = parse_rational(&self.v).map_err(|e| bad(e.to_string()))?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.n != i {
                return Err(bad(format!("coefficient {i} listed as n = {}", c.n)));
            }
            coeffs.push(parse_rational(&c.q).map_err(|e| bad(e.to_string()))?);
        }
        if coeffs.is_empty() {
            return Err(bad("no coefficients".into()));
        }
        let mut free = BTreeMap::new();
        for (n, q) in &self.free {
            let n: usize = n.parse().map_err(|_| bad(format!("free key {n:?}")))?;
            free.insert(n, parse_rational(q).map_err(|e| bad(e.to_string()))?);
        }
        let order = self.order.unwrap_or(coeffs.len() - 1);
        Ok(SeriesSolution { m: self.m, v, coeffs, order, free, obstructed_at: self.obstructed_at })
    }
}

pub const CENSUS_HEADER: [&str; 12] = [
    "k",
    "l",
    "m",
    "total",
    "d_ge_2",
    "no_root",
    "single_root",
    "multi_small",
    "any_large",
    "max_per_large_r",
    "label_counts_json",
    "asymptotic_ratio",
];

/// Nonzero label counts keyed by label name, serialized with sorted keys.
pub fn label_counts_json(s: &CensusSummary) -> String {
    let map: BTreeMap<&str, u64> = s
        .label_counts
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(l, &n)| (l.as_str(), n))
        .collect();
    serde_json::to_string(&map).expect("string map serializes")
}

pub fn ratio_text(r: &Rational) -> String {
    format_decimal(r, 6)
}

pub fn census_record(s: &CensusSummary) -> Vec<String> {
    vec![
        s.k.to_string(),
        s.l.to_string(),
        s.m.to_string(),
        s.total.to_string(),
        s.d_ge_2.to_string(),
        s.no_root.to_string(),
        s.single_root.to_string(),
        s.multi_small_root.to_string(),
        s.any_large_root.to_string(),
        s.max_per_large_r().to_string(),
        label_counts_json(s),
        ratio_text(&s.asymptotic_ratio()),
    ]
}

pub fn write_census_csv<W: Write>(out: W, rows: &[CensusSummary]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CENSUS_HEADER)?;
    for s in rows {
        w.write_record(census_record(s))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub total: u64,
    pub d_ge_2: u64,
    pub no_root: u64,
    pub single_root: u64,
    pub multi_small: u64,
    pub any_large: u64,
    pub max_per_large_r: u64,
    pub label_counts: BTreeMap<String, u64>,
    pub large_root_histogram: BTreeMap<usize, u64>,
    pub asymptotic_ratio: String,
}

impl From<&CensusSummary> for CensusDoc {
    fn from(s: &CensusSummary) -> Self {
        CensusDoc {
            k: s.k,
            l: s.l,
            m: s.m,
            total: s.total,
            d_ge_2: s.d_ge_2,
            no_root: s.no_root,
            single_root: s.single_root,
            multi_small: s.multi_small_root,
            any_large: s.any_large_root,
            max_per_large_r: s.max_per_large_r(),
            label_counts: s
                .label_counts
                .iter()
                .filter(|(_, &n)| n > 0)
                .map(|(l, &n)| (l.as_str().to_string(), n))
                .collect(),
            large_root_histogram: s.large_root_histogram.clone(),
            asymptotic_ratio: ratio_text(&s.asymptotic_ratio()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use laurent_lab_core::laurent::{build_series, verify_series};
    use laurent_lab_core::census::census_summary;

    #[test]
    fn series_document_round_trips() {
        let eq = Equation::from_factors(2, &[0, 0]).unwrap();
        let free = [(6usize, Rational::new(3.into(), 7.into()))].into_iter().collect();
        let sol = build_series(&eq, 2, 25, &free).unwrap();
        let v = verify_series(&eq, &sol, 23).unwrap();
        let doc = SeriesDoc::new(&eq, &sol, Some((&v).into()));
        let text = serde_json::to_string(&doc).unwrap();
        let back: SeriesDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_solution().unwrap(), sol);
        assert_eq!(back.embedded_equation().unwrap(), Some(eq));
        assert!(text.contains(r#""v":"6/1""#));
        assert!(text.contains(r#""free":{"6":"3/7"}"#));
        assert!(text.contains(r#""verification":{"status":"verified","through":23}"#));
    }

    #[test]
    fn minimal_series_document_parses() {
        let text = r#"{"m":2,"v":"6/1","coeffs":[{"n":0,"q":"1/1"},{"n":1,"q":"0/1"}],"free":{},"obstructed_at":null}"#;
        let doc: SeriesDoc = serde_json::from_str(text).unwrap();
        assert_eq!(doc.embedded_equation().unwrap(), None);
        let sol = doc.to_solution().unwrap();
        assert_eq!(sol.order, 1);
        let gap = r#"{"m":2,"v":"6/1","coeffs":[{"n":1,"q":"1/1"}],"free":{},"obstructed_at":null}"#;
        let doc: SeriesDoc = serde_json::from_str(gap).unwrap();
        assert!(doc.to_solution().is_err());
    }

    #[test]
    fn census_csv_layout() {
        let s = census_summary(10, 1, 1).unwrap();
        let mut buf = Vec::new();
        write_census_csv(&mut buf, &[s]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,l,m,total,d_ge_2,no_root,single_root,multi_small,any_large,max_per_large_r,label_counts_json,asymptotic_ratio"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("10,1,1,6,6,"), "{row}");
        assert!(row.ends_with(",1.200000"), "{row}");
        assert!(row.contains(r#""{""RATIONAL_ONLY"":"#), "{row}");
    }
}
