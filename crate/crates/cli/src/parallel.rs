//! Parallel census: the tuple space of each `A(k, l, m)` is split by the value
//! of `a_l`, partitions are summarized independently and merged by exact count
//! addition, so the result does not depend on scheduling.

use laurent_lab_core::census::{CensusContext, CensusSummary};
use rayon::prelude::*;

use crate::{CliError, THREADS_ENV};

/// Reads the thread cap from the environment; `None` means the rayon default.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Invalid(format!("{THREADS_ENV}: {e}"))),
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Invalid(format!(
                "{THREADS_ENV} must be a positive integer, got {text:?}"
            ))),
        },
    }
}

pub fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))
}

/// Census of one `(k, l, m)` on the given pool.
pub fn census_parallel(
    pool: &rayon::ThreadPool,
    k: usize,
    l: usize,
    m: usize,
) -> Result<CensusSummary, CliError> {
    let ctx = CensusContext::new(k, l, m).map_err(|e| CliError::Invalid(e.to_string()))?;
    let summary = pool.install(|| {
        (0..=ctx.max_top())
            .into_par_iter()
            .map(|top| ctx.summarize_partition(top).expect("top within range"))
            .reduce(|| CensusSummary::empty(k, l, m), CensusSummary::merge)
    });
    Ok(summary)
}
