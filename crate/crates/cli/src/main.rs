use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rom_mis::geometry::io::{read_instance_file, write_instance_file};
use rom_mis::geometry::Coordinate;
use rom_mis::harness::{
    bench, generate, run_trials, write_bench_csv, write_run_csv, Algo, Family, GeneratorSpec, TrialConfig,
};
use rom_mis::oracle::{brute_force_mis, exact_interval_opt};
use rom_mis::Error;

const THREADS_ENV: &str = "ROM_MIS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "rom-mis", version, about = "Random-order online independent set experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Bounding box side.
        #[arg(long = "K")]
        k_side: Option<u64>,
        /// Per-unit-cell bound.
        #[arg(long = "D")]
        d_bound: Option<usize>,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long)]
        sigma: Option<Coordinate>,
        /// Planted optimum.
        #[arg(long)]
        t: Option<usize>,
        /// Coordinate magnitude exponent for huge-coordinates.
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run shuffled trials of an algorithm on an instance file.
    Run {
        #[arg(long)]
        algo: Algo,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (overridden by ROM_MIS_THREADS).
        #[arg(long)]
        parallel: Option<usize>,
        /// CSV destination; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add a wall-time column (makes the CSV non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Solve an instance file exactly.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Time one run per instance size.
    Bench {
        #[arg(long)]
        algo: Algo,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(flag),
    }
}

fn execute(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Gen {
            family,
            n,
            d,
            k_side,
            d_bound,
            delta,
            sigma,
            t,
            bits,
            seed,
            out,
        } => {
            let spec = GeneratorSpec {
                family,
                n,
                d,
                k_side,
                d_bound,
                delta,
                sigma,
                t,
                bits,
                seed,
            };
            let inst = generate(&spec)?;
            write_instance_file(&out, &inst)?;
            eprintln!("wrote {} objects ({family}, d = {}) to {}", inst.len(), inst.dim(), out.display());
        }
        Command::Run {
            algo,
            instance,
            trials,
            seed,
            parallel,
            out,
            timing,
        } => {
            let inst = read_instance_file(&instance)?;
            let mut cfg = TrialConfig::new(algo, trials, seed);
            cfg.threads = threads(parallel)?;
            let report = run_trials(&inst, &cfg)?;
            write_run_csv(output(out.as_deref())?, &report, timing)?;
            let a = &report.aggregate;
            eprintln!(
                "{algo}: {} trials, output mean {:.3} median {:.1} [q10 {:.1}, q90 {:.1}], ratio median {:.3}",
                a.trials, a.mean_output, a.median_output, a.q10_output, a.q90_output, a.median_ratio
            );
            if let Some(g) = a.gaps_event_rate {
                eprintln!("gaps event held in {:.1}% of trials", 100.0 * g);
            }
        }
        Command::Oracle { instance } => {
            let inst = read_instance_file(&instance)?;
            let boxes = inst.out_boxes();
            let (size, witness) = if inst.dim() == 1 {
                exact_interval_opt(&boxes)?
            } else {
                brute_force_mis(&boxes)?
            };
            let ids: Vec<String> = witness.iter().map(|i| (i + 1).to_string()).collect();
            println!("opt {size}");
            println!("witness {}", ids.join(" "));
        }
        Command::Bench {
            algo,
            sizes,
            family,
            d,
            seed,
            repeats,
            out,
        } => {
            let family = family.unwrap_or(if algo == Algo::Sigma {
                Family::Ellipses
            } else {
                Family::SparseBounded
            });
            let rows = bench(algo, family, d, &sizes, seed, repeats)?;
            write_bench_csv(output(out.as_deref())?, &rows)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            if code == 2 {
                eprintln!("assertion failed: {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

/// 2 when a correctness check failed, 1 for everything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Assertion(_) => 2,
        _ => 1,
    }
}
