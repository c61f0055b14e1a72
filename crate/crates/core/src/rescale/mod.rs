//! Algorithms without a known bounding box.
//!
//! The first half of the stream fixes a monotone piecewise-linear map per
//! axis that squeezes the observed left endpoints onto `1, 2, …, t`. The
//! second half is mapped through it and handed to a bounded runner with
//! `K = ⌈n/2⌉` and `D = 4⌈log₂ n⌉`. The map does not change which pairs of
//! mapped objects intersect.

mod pipeline;
mod scale;

pub use pipeline::{
    inner_meta, left_endpoint_gaps, run_full_hyperrects, run_full_intervals, run_full_intervals_lean, run_full_sigma,
    InnerRunner, PipelineOutcome, Routing, ScaledPipeline,
};
pub use scale::{apply_scale, build_scale, Scale};
