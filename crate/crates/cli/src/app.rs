//! Command-line front end.
//!
//! Exit codes: 0 success (series verified), 1 series obstructed or
//! verification mismatch, 2 invalid input, 3 IO failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use laurent_lab_core::classify::classify;
use laurent_lab_core::exact::{format_rational, parse_rational};
use laurent_lab_core::laurent::{build_series, default_order, verify_series, SeriesError};
use laurent_lab_core::{CensusSummary, Equation, Rational};

use crate::format::{write_census_csv, ClassificationDoc, CensusDoc, SeriesDoc, VerificationDoc};
use crate::parallel::{build_pool, census_parallel, threads_from_env};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "laurent-lab", version, about = "Meromorphic solutions of f^(k) = prod (f^(j))^a_j")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the meromorphic solutions of one equation.
    Classify {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build and self-check a truncated formal Laurent solution.
    Series {
        #[command(flatten)]
        eq: EquationArgs,
        /// Truncation order N (default 4 (k + l + 2m)).
        #[arg(long)]
        order: Option<usize>,
        /// Free coefficient at a root, as `r=value` (value `num/den` or an integer).
        #[arg(long, value_delimiter = ',')]
        free: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Substitute a series document back into its equation.
    Verify {
        #[command(flatten)]
        eq: EquationArgs,
        /// Series JSON file, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Highest coefficient index to check (default: order - k).
        #[arg(long)]
        through: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Census of A(k, l, m), one row per k.
    Census {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        /// A single k or an inclusive range `lo..hi`.
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Equation given as `--k` plus `--factors` (derivative orders) or `--a`
/// (exponent vector), or as `--eq "k=3 j=1,1"`.
#[derive(Debug, Args, Default)]
pub struct EquationArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub factors: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<usize>>,
    #[arg(long = "eq")]
    pub text: Option<String>,
}

impl EquationArgs {
    fn given(&self) -> bool {
        self.k.is_some() || self.factors.is_some() || self.a.is_some() || self.text.is_some()
    }

    pub fn resolve(&self) -> Result<Equation, CliError> {
        let invalid = |e: laurent_lab_core::EquationError| CliError::Invalid(e.to_string());
        if let Some(text) = &self.text {
            if self.k.is_some() || self.factors.is_some() || self.a.is_some() {
                return Err(CliError::Invalid("--eq cannot be combined with --k/--factors/--a".into()));
            }
            return text.parse().map_err(invalid);
        }
        let k = self.k.ok_or_else(|| CliError::Invalid("missing --k".into()))?;
        match (&self.factors, &self.a) {
            (Some(j), None) => Equation::from_factors(k, j).map_err(invalid),
            (None, Some(a)) => Equation::from_exponents(k, a.clone()).map_err(invalid),
            (Some(_), Some(_)) => Err(CliError::Invalid(
                "give either --factors or --a, not both".into(),
            )),
            (None, None) => Err(CliError::Invalid("missing --factors or --a".into())),
        }
    }
}

fn parse_free(items: &[String]) -> Result<BTreeMap<usize, Rational>, CliError> {
    let mut free = BTreeMap::new();
    for item in items {
        let (n, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("--free expects r=value, got {item:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("--free: bad index {n:?}")))?;
        let value = parse_rational(value).map_err(|e| CliError::Invalid(format!("--free: {e}")))?;
        if free.insert(n, value).is_some() {
            return Err(CliError::Invalid(format!("--free: index {n} given twice")));
        }
    }
    Ok(free)
}

/// Parses `10` or `2..4` (inclusive).
pub fn parse_k_range(text: &str, step: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Invalid(format!("--k expects N or LO..HI, got {text:?}"));
    if step == 0 {
        return Err(CliError::Invalid("--step must be positive".into()));
    }
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let k = text.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).step_by(step).collect())
}

fn inadmissible(eq: &Equation) -> CliError {
    CliError::Invalid(format!(
        "no admissible multiplicity for {eq}: k = m(d-1) + h has no positive integer solution m \
         (k = {}, d = {}, h = {})",
        eq.k(),
        eq.d(),
        eq.h()
    ))
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_classify(eq: &EquationArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let eq = eq.resolve()?;
    let c = classify(&eq);
    let doc = ClassificationDoc::new(&eq, &c);
    match format {
        Format::Json => emit_json(out, &doc)?,
        Format::Csv => return Err(CliError::Invalid("classify supports json or text".into())),
        Format::Text => {
            writeln!(out, "{}", doc.equation)?;
            writeln!(out, "label: {}", doc.label)?;
            match doc.m {
                Some(m) => writeln!(out, "m: {m}")?,
                None => writeln!(out, "m: none")?,
            }
            writeln!(out, "roots: {:?}", doc.roots)?;
            match doc.q {
                Some(q) => writeln!(out, "q: {q}")?,
                None => writeln!(out, "q: none")?,
            }
            for e in &doc.evidence {
                writeln!(out, "  [{}] {}", e.rule, e.citation)?;
            }
        }
    }
    Ok(0)
}

fn verification_doc(eq: &Equation, sol: &laurent_lab_core::SeriesSolution, through: Option<usize>) -> Result<VerificationDoc, CliError> {
    let have = sol.computed_order();
    let through = match through {
        Some(t) => t,
        None if have >= eq.k() => have - eq.k(),
        None => {
            return Ok(VerificationDoc::Skipped {
                reason: format!("truncation too short: need order >= {}", eq.k()),
            })
        }
    };
    match verify_series(eq, sol, through) {
        Ok(v) => Ok((&v).into()),
        Err(e @ SeriesError::TruncationTooShort { .. }) => Err(CliError::Invalid(e.to_string())),
        Err(e) => Err(CliError::Invalid(e.to_string())),
    }
}

fn verification_text(v: Option<&VerificationDoc>) -> String {
    match v {
        Some(VerificationDoc::Verified { through }) => format!("verified through n = {through}"),
        Some(VerificationDoc::Mismatch { index }) => format!("mismatch at n = {index}"),
        Some(VerificationDoc::Skipped { reason }) => format!("skipped ({reason})"),
        None => "not run".into(),
    }
}

fn cmd_series(
    eq: &EquationArgs,
    order: Option<usize>,
    free: &[String],
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let eq = eq.resolve()?;
    let profile = eq.pole_multiplicity().ok_or_else(|| inadmissible(&eq))?;
    let free = parse_free(free)?;
    let order = order.unwrap_or_else(|| default_order(&eq, profile.m));
    let sol = build_series(&eq, profile.m, order, &free).map_err(|e| CliError::Invalid(e.to_string()))?;
    let verification = verification_doc(&eq, &sol, None)?;
    let code = match (&verification, sol.obstructed_at) {
        (_, Some(_)) | (VerificationDoc::Mismatch { .. }, _) => 1,
        _ => 0,
    };
    let doc = SeriesDoc::new(&eq, &sol, Some(verification));
    match format {
        Format::Json => emit_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "n,q")?;
            for (n, q) in sol.coeffs.iter().enumerate() {
                writeln!(out, "{n},{}", format_rational(q))?;
            }
        }
        Format::Text => {
            writeln!(out, "{eq}  (m = {}, c0^{} = {})", sol.m, eq.d() - 1, doc.v)?;
            for c in doc.coeffs.iter().filter(|c| c.q != "0/1") {
                writeln!(out, "  q_{} = {}", c.n, c.q)?;
            }
            if let Some(r) = sol.obstructed_at {
                writeln!(out, "obstructed at root {r}")?;
            }
            writeln!(out, "verification: {}", verification_text(doc.verification.as_ref()))?;
        }
    }
    Ok(code)
}

fn cmd_verify(
    eq: &EquationArgs,
    input: &str,
    through: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let text = if input == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(input)?
    };
    let doc: SeriesDoc = serde_json::from_str(&text)?;
    let eq = if eq.given() {
        eq.resolve()?
    } else {
        doc.embedded_equation()?
            .ok_or_else(|| CliError::Invalid("series document has no equation; pass --k with --factors or --a".into()))?
    };
    let sol = doc.to_solution()?;
    let through = match through {
        Some(t) => t,
        None => sol
            .computed_order()
            .checked_sub(eq.k())
            .ok_or_else(|| CliError::Invalid(format!("truncation too short: need order >= {}", eq.k())))?,
    };
    let verification = verification_doc(&eq, &sol, Some(through))?;
    let code = i32::from(!matches!(verification, VerificationDoc::Verified { .. }));
    match format {
        Format::Json | Format::Csv => emit_json(out, &verification)?,
        Format::Text => writeln!(out, "{}", verification_text(Some(&verification)))?,
    }
    Ok(code)
}

fn cmd_census(
    l: usize,
    m: usize,
    k: &str,
    step: usize,
    out_path: Option<&PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ks = parse_k_range(k, step)?;
    if m == 0 {
        return Err(CliError::Invalid("--m must be positive".into()));
    }
    if let Some(&lo) = ks.first() {
        if lo <= l {
            return Err(CliError::Invalid(format!("census needs k > l, got k = {lo}, l = {l}")));
        }
    }
    let pool = build_pool(threads_from_env()?)?;
    let rows = ks
        .iter()
        .map(|&k| census_parallel(&pool, k, l, m))
        .collect::<Result<Vec<CensusSummary>, _>>()?;

    let mut buf = Vec::new();
    match format {
        Format::Csv => write_census_csv(&mut buf, &rows)?,
        Format::Json => {
            let docs: Vec<CensusDoc> = rows.iter().map(CensusDoc::from).collect();
            emit_json(&mut buf, &docs)?;
        }
        Format::Text => {
            for s in &rows {
                let d = CensusDoc::from(s);
                writeln!(
                    buf,
                    "k={} l={} m={} total={} no_root={} single_root={} multi_small={} any_large={} max_per_large_r={} ratio={}",
                    d.k, d.l, d.m, d.total, d.no_root, d.single_root, d.multi_small, d.any_large, d.max_per_large_r, d.asymptotic_ratio
                )?;
            }
        }
    }
    match out_path {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(0)
}

/// Runs the CLI on `args` (including the program name), returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Classify { eq, format } => cmd_classify(eq, *format, out),
        Command::Series { eq, order, free, format } => cmd_series(eq, *order, free, *format, out),
        Command::Verify { eq, input, through, format } => cmd_verify(eq, input, *through, *format, out),
        Command::Census { l, m, k, step, out: path, format } => {
            cmd_census(*l, *m, k, *step, path.as_ref(), *format, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
