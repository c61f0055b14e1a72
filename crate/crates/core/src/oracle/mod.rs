//! Ground truth: exact small-instance solvers and the samplers used to check
//! concentration claims empirically.

mod interval_opt;
mod mis;
mod sampling;

pub use interval_opt::{exact_interval_opt, interval_opt_size};
pub use mis::{brute_force_mis, BRUTE_FORCE_LIMIT};
pub use sampling::{
    gap_threshold, max_gap, max_gap_distribution, sample_half_subset, sample_hypergeometric, sample_max_gap,
    tail_bound_report, TailBoundReport,
};

pub(crate) use sampling::ceil_log2;
