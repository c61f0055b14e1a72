//! Instance generators, the random-order trial runner and CSV output.

mod csv_out;
pub mod generators;
mod trials;

pub use csv_out::{write_bench_csv, write_run_csv, BenchRow, CSV_VERSION_LINE};
pub use generators::{generate, Family, GeneratorSpec};
pub use trials::{
    aggregate, quantile, reference_opt, run_trial, run_trials, Aggregate, Algo, OptKind, TrialConfig, TrialReport,
    TrialStats,
};

use crate::error::Result;
use crate::rng::derive_seed;

/// Times one shuffled run per size, keeping the fastest of `repeats`.
pub fn bench(algo: Algo, family: Family, d: usize, sizes: &[usize], seed: u64, repeats: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let spec = GeneratorSpec::new(family, n, derive_seed(seed, i as u64)).dim(d);
        let inst = generate(&spec)?;
        let opt = (inst.planted_opt().unwrap_or(0), OptKind::LowerBound);
        let mut best: Option<TrialStats> = None;
        for r in 0..repeats.max(1) {
            let s = run_trial(&inst, algo, 0, derive_seed(seed ^ 0x5eed, (i * 1000 + r) as u64), opt)?;
            if best.as_ref().is_none_or(|b| s.wall_time < b.wall_time) {
                best = Some(s);
            }
        }
        let s = best.expect("at least one repeat");
        rows.push(BenchRow {
            algo: algo.to_string(),
            family: family.to_string(),
            d,
            n,
            output_size: s.output_size,
            wall_time_ms: s.wall_time.as_secs_f64() * 1e3,
        });
    }
    Ok(rows)
}
