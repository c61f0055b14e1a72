use std::io::Write;

use crate::error::{Error, Result};

use super::trials::{TrialReport, TrialStats};

/// First line of every CSV the harness writes.
pub const CSV_VERSION_LINE: &str = "# rom-mis csv v1";

const RUN_COLUMNS: [&str; 20] = [
    "trial",
    "seed",
    "algo",
    "d",
    "n",
    "output_size",
    "opt_or_bound",
    "opt_kind",
    "ratio",
    "independence_ok",
    "nonempty_ok",
    "observation_ok",
    "chosen_class",
    "fallback",
    "gaps_event",
    "max_gap",
    "ignored",
    "scaled_k",
    "scaled_d",
    "wall_time_ms",
];

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn ratio_field(s: &TrialStats) -> String {
    if s.output_size == 0 {
        "inf".into()
    } else {
        format!("{:.6}", s.ratio())
    }
}

/// Writes one row per trial. Wall time is included only when
/// `with_timing` is set, so untimed output is reproducible byte for byte.
pub fn write_run_csv<W: Write>(mut out: W, report: &TrialReport, with_timing: bool) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    writeln!(out, "# ratio = opt_or_bound / output_size; a lower bound on the true ratio when opt_kind = lower_bound")?;
    let cols = if with_timing { &RUN_COLUMNS[..] } else { &RUN_COLUMNS[..RUN_COLUMNS.len() - 1] };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(cols).map_err(csv_err)?;
    for s in &report.stats {
        let mut row = vec![
            s.trial.to_string(),
            s.seed.to_string(),
            report.algo.to_string(),
            report.dim.to_string(),
            s.n.to_string(),
            s.output_size.to_string(),
            s.opt_or_bound.to_string(),
            s.opt_kind.name().to_string(),
            ratio_field(s),
            s.independence_ok.to_string(),
            s.nonempty_ok.to_string(),
            s.observation_ok.to_string(),
            opt(&s.chosen_class),
            s.fallback.to_string(),
            opt(&s.gaps_event),
            opt(&s.max_gap),
            opt(&s.ignored),
            opt(&s.scaled_k),
            opt(&s.scaled_d),
        ];
        if with_timing {
            row.push(format!("{:.3}", s.wall_time.as_secs_f64() * 1e3));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// One row of `bench` output.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algo: String,
    pub family: String,
    pub d: usize,
    pub n: usize,
    pub output_size: usize,
    pub wall_time_ms: f64,
}

pub fn write_bench_csv<W: Write>(mut out: W, rows: &[BenchRow]) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algo", "family", "d", "n", "output_size", "wall_time_ms"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.algo.clone(),
            r.family.clone(),
            r.d.to_string(),
            r.n.to_string(),
            r.output_size.to_string(),
            format!("{:.3}", r.wall_time_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
