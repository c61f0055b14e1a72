use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::bounded_rom::{run_bounded_hyperrects, run_bounded_intervals, unit_cell_load, BoundedInstanceMeta};
use crate::error::{Error, Result};
use crate::geometry::{is_independent_set, HyperRect, Instance};
use crate::greedy::greedy_run_indices;
use crate::oracle::{brute_force_mis, exact_interval_opt, gap_threshold, BRUTE_FORCE_LIMIT};
use crate::rescale::{left_endpoint_gaps, run_full_hyperrects, run_full_intervals, PipelineOutcome};
use crate::rng::{derive_seed, rng_from_seed};
use crate::structures::CheckerKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Greedy,
    Bounded,
    Full,
    Sigma,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Greedy, Algo::Bounded, Algo::Full, Algo::Sigma];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Greedy => "greedy",
            Algo::Bounded => "bounded",
            Algo::Full => "full",
            Algo::Sigma => "sigma",
        }
    }

    /// Whether the first `⌈n/2⌉` arrivals are observation only.
    pub fn has_observation_phase(self) -> bool {
        self != Algo::Greedy
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?}; expected greedy, bounded, full or sigma")))
    }
}

/// How `opt_or_bound` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptKind {
    Exact,
    Planted,
    /// Size of one independent set; ratios are lower bounds.
    LowerBound,
}

impl OptKind {
    pub fn name(self) -> &'static str {
        match self {
            OptKind::Exact => "exact",
            OptKind::Planted => "planted",
            OptKind::LowerBound => "lower_bound",
        }
    }
}

/// Reference optimum of an instance: exact for `d = 1` or `n ≤ 24`, else
/// planted, else the greedy size in canonical order. For σ-objects this is
/// computed on out-boxes and reported as a lower bound unless planted.
pub fn reference_opt(inst: &Instance) -> Result<(usize, OptKind)> {
    let boxes = inst.out_boxes();
    let exact = || -> Result<Option<usize>> {
        Ok(if inst.dim() == 1 {
            Some(exact_interval_opt(&boxes)?.0)
        } else if boxes.len() <= BRUTE_FORCE_LIMIT {
            Some(brute_force_mis(&boxes)?.0)
        } else {
            None
        })
    };
    if !inst.is_sigma() {
        if let Some(v) = exact()? {
            return Ok((v, OptKind::Exact));
        }
    }
    if let Some(p) = inst.planted_opt() {
        return Ok((p, OptKind::Planted));
    }
    let bound = match exact()? {
        Some(v) => v,
        None => greedy_run_indices(&boxes, &CheckerKind::Naive)?.len(),
    };
    Ok((bound, OptKind::LowerBound))
}

#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub algo: Algo,
    pub trials: usize,
    pub base_seed: u64,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl TrialConfig {
    pub fn new(algo: Algo, trials: usize, base_seed: u64) -> Self {
        TrialConfig {
            algo,
            trials,
            base_seed,
            threads: None,
        }
    }
}

/// One shuffled run.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub output_size: usize,
    pub opt_or_bound: usize,
    pub opt_kind: OptKind,
    pub independence_ok: bool,
    pub nonempty_ok: bool,
    pub observation_ok: bool,
    pub chosen_class: Option<String>,
    pub fallback: bool,
    /// Full pipelines only: whether every axis's largest gap stayed within
    /// `4⌈log₂ n⌉`, the largest gap itself, `|F|`, and the bounds of the
    /// scaled second-phase instance.
    pub gaps_event: Option<bool>,
    pub max_gap: Option<u64>,
    pub ignored: Option<usize>,
    pub scaled_k: Option<usize>,
    pub scaled_d: Option<usize>,
    pub wall_time: Duration,
}

impl TrialStats {
    /// `opt_or_bound / output_size`; infinite for empty output.
    pub fn ratio(&self) -> f64 {
        if self.output_size == 0 {
            f64::INFINITY
        } else {
            self.opt_or_bound as f64 / self.output_size as f64
        }
    }
}

/// Selected arrival positions plus algorithm-specific diagnostics.
struct RunOutput {
    selected: Vec<usize>,
    chosen: Option<String>,
    fallback: bool,
    full: Option<PipelineOutcome>,
}

fn run_once(algo: Algo, inst: &Instance, stream: &[HyperRect]) -> Result<RunOutput> {
    let d = inst.dim();
    match algo {
        Algo::Greedy => Ok(RunOutput {
            selected: greedy_run_indices(stream, &CheckerKind::Naive)?,
            chosen: None,
            fallback: false,
            full: None,
        }),
        Algo::Bounded => {
            let k = inst.declared_k().ok_or_else(|| {
                Error::InvalidParameter("the bounded algorithm needs an instance with a declared K".into())
            })?;
            let meta = BoundedInstanceMeta::new(k.clone(), unit_cell_load(stream), stream.len(), d);
            let out = if d == 1 {
                run_bounded_intervals(stream, meta)?
            } else {
                run_bounded_hyperrects(stream, meta)?
            };
            Ok(RunOutput {
                selected: out.selected,
                chosen: out.chosen.map(|c| c.to_string()),
                fallback: out.fallback_used,
                full: None,
            })
        }
        Algo::Full | Algo::Sigma => {
            if algo == Algo::Sigma && !inst.is_sigma() {
                return Err(Error::InvalidParameter("the sigma algorithm needs a σ-object instance".into()));
            }
            let out = if d == 1 {
                run_full_intervals(stream)?
            } else {
                run_full_hyperrects(stream, d)?
            };
            Ok(RunOutput {
                selected: out.selected.clone(),
                chosen: out.inner.chosen.as_ref().map(|c| c.to_string()),
                fallback: out.outer_fallback || out.inner.fallback_used,
                full: Some(out),
            })
        }
    }
}

/// Runs one trial: shuffle with `seed`, run, check.
pub fn run_trial(inst: &Instance, algo: Algo, trial: usize, seed: u64, opt: (usize, OptKind)) -> Result<TrialStats> {
    let boxes = inst.out_boxes();
    let n = boxes.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let stream: Vec<HyperRect> = order.iter().map(|&i| boxes[i].clone()).collect();

    let start = Instant::now();
    let out = run_once(algo, inst, &stream)?;
    let wall_time = start.elapsed();

    let chosen: Vec<HyperRect> = out.selected.iter().map(|&p| stream[p].clone()).collect();
    let independence_ok = is_independent_set(&chosen)?;
    let nonempty_ok = n < 2 || !chosen.is_empty();
    let observation_ok = !algo.has_observation_phase() || out.selected.iter().all(|&p| p >= n.div_ceil(2));
    if !independence_ok {
        return Err(Error::Assertion(format!("trial {trial} (seed {seed}): {algo} output is not independent")));
    }
    if !nonempty_ok {
        return Err(Error::Assertion(format!("trial {trial} (seed {seed}): {algo} output is empty for n = {n}")));
    }
    if !observation_ok {
        return Err(Error::Assertion(format!(
            "trial {trial} (seed {seed}): {algo} selected during the observation phase"
        )));
    }

    let mut stats = TrialStats {
        trial,
        seed,
        n,
        output_size: chosen.len(),
        opt_or_bound: opt.0,
        opt_kind: opt.1,
        independence_ok,
        nonempty_ok,
        observation_ok,
        chosen_class: out.chosen,
        fallback: out.fallback,
        gaps_event: None,
        max_gap: None,
        ignored: None,
        scaled_k: None,
        scaled_d: None,
        wall_time,
    };
    if let Some(full) = &out.full {
        let gaps = left_endpoint_gaps(&stream, inst.dim());
        let worst = gaps.iter().copied().max().unwrap_or(0);
        let scaled: Vec<HyperRect> = full.scaled.iter().map(|(_, h)| h.clone()).collect();
        stats.gaps_event = Some(n < 2 || worst <= gap_threshold(n as u64));
        stats.max_gap = Some(worst);
        stats.ignored = Some(full.ignored);
        stats.scaled_k = Some(full.breakpoints.iter().copied().max().unwrap_or(0));
        stats.scaled_d = Some(unit_cell_load(&scaled));
    }
    Ok(stats)
}

/// Summary over trials.
#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub trials: usize,
    pub mean_output: f64,
    pub median_output: f64,
    pub q10_output: f64,
    pub q90_output: f64,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    pub q90_ratio: f64,
    pub fallback_rate: f64,
    /// Fraction of full-pipeline trials where the gaps event held.
    pub gaps_event_rate: Option<f64>,
}

/// Linear-interpolated quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let (i, frac) = (pos.floor() as usize, pos.fract());
    if i + 1 < sorted.len() {
        sorted[i] + (sorted[i + 1] - sorted[i]) * frac
    } else {
        sorted[i]
    }
}

pub fn aggregate(stats: &[TrialStats]) -> Aggregate {
    let sorted = |f: &dyn Fn(&TrialStats) -> f64| {
        let mut v: Vec<f64> = stats.iter().map(f).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let out = sorted(&|s| s.output_size as f64);
    let ratio = sorted(&|s| s.ratio());
    let m = stats.len().max(1) as f64;
    let gaps: Vec<bool> = stats.iter().filter_map(|s| s.gaps_event).collect();
    Aggregate {
        trials: stats.len(),
        mean_output: out.iter().sum::<f64>() / m,
        median_output: quantile(&out, 0.5),
        q10_output: quantile(&out, 0.1),
        q90_output: quantile(&out, 0.9),
        mean_ratio: ratio.iter().sum::<f64>() / m,
        median_ratio: quantile(&ratio, 0.5),
        q90_ratio: quantile(&ratio, 0.9),
        fallback_rate: stats.iter().filter(|s| s.fallback).count() as f64 / m,
        gaps_event_rate: (!gaps.is_empty()).then(|| gaps.iter().filter(|&&g| g).count() as f64 / gaps.len() as f64),
    }
}

#[derive(Clone, Debug)]
pub struct TrialReport {
    pub algo: Algo,
    pub dim: usize,
    pub stats: Vec<TrialStats>,
    pub aggregate: Aggregate,
}

/// Runs `config.trials` independent shuffled trials. Trial `i` uses seed
/// `derive_seed(base_seed, i)`, so results do not depend on the thread count.
pub fn run_trials(inst: &Instance, config: &TrialConfig) -> Result<TrialReport> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let opt = reference_opt(inst)?;
    let job = || -> Result<Vec<TrialStats>> {
        (0..config.trials)
            .into_par_iter()
            .map(|i| run_trial(inst, config.algo, i, derive_seed(config.base_seed, i as u64), opt))
            .collect()
    };
    let stats = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(job)?,
        None => job()?,
    };
    let aggregate = aggregate(&stats);
    Ok(TrialReport {
        algo: config.algo,
        dim: inst.dim(),
        stats,
        aggregate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generators::gen_greedy_lb;

    #[test]
    fn quantiles() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 1.0), 4.0);
        assert_eq!(quantile(&v, 0.5), 2.5);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let inst = gen_greedy_lb(64).unwrap();
        let mut cfg = TrialConfig::new(Algo::Full, 16, 9);
        cfg.threads = Some(1);
        let a = run_trials(&inst, &cfg).unwrap();
        cfg.threads = Some(4);
        let b = run_trials(&inst, &cfg).unwrap();
        let strip = |r: &TrialReport| r.stats.iter().map(|s| (s.seed, s.output_size, s.gaps_event)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn algo_names() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        }
    }
}
