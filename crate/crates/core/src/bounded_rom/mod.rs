//! Two-phase algorithms for (K, D)-bounded instances.
//!
//! Both runners observe the first `⌈n/2⌉` arrivals without selecting,
//! pick one size class `m` from what they saw, and then run greedy on the
//! arrivals of class `m`. If nothing has been selected when the last object
//! arrives, that object is selected, so the output is nonempty for `n ≥ 2`.
//!
//! The interval runner scores classes by their exact optimum in the
//! observed prefix; the box runner scores them by the size of a greedy
//! independent set, and balances thin against similar-size classes.

mod hyperrects;
mod intervals;
mod select;

pub use hyperrects::{run_bounded_hyperrects, BoundedHyperrectRunner};
pub use intervals::{run_bounded_intervals, BoundedIntervalRunner};
pub use select::{select_class_hyperrects, select_class_intervals};

pub use crate::oracle::exact_interval_opt;

use std::collections::HashMap;

use crate::classifier::ClassId;
use crate::error::Error;
use crate::geometry::{Coordinate, HyperRect};

/// What the runner is told up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedInstanceMeta {
    /// Side of the bounding box `[0, K]^d`.
    pub k_side: Coordinate,
    /// Maximum number of objects strictly inside one open unit cell per axis.
    pub d_bound: usize,
    /// Number of arrivals.
    pub n: usize,
    pub dim: usize,
}

impl BoundedInstanceMeta {
    pub fn new(k_side: Coordinate, d_bound: usize, n: usize, dim: usize) -> Self {
        BoundedInstanceMeta {
            k_side,
            d_bound,
            n,
            dim,
        }
    }

    /// `⌈n/2⌉`.
    pub fn observation_len(&self) -> usize {
        self.n.div_ceil(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Observation,
    Action,
}

/// Result of one bounded run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedOutcome {
    /// Arrival positions of the selected objects, increasing.
    pub selected: Vec<usize>,
    /// Class chosen at the end of observation (`None` if it never ended).
    pub chosen: Option<ClassId>,
    /// Per-class score computed at the phase boundary (exact optimum for
    /// intervals, greedy size for boxes). Only realized classes appear.
    pub estimates: HashMap<ClassId, usize>,
    /// Whether the last-arrival fallback fired.
    pub fallback_used: bool,
}

/// Largest number of objects whose projection on some axis lies strictly
/// inside one open unit cell `(i, i+1)`: the smallest `D` for which the
/// set is (K, D)-bounded.
pub fn unit_cell_load(objs: &[HyperRect]) -> usize {
    let Some(first) = objs.first() else {
        return 0;
    };
    let mut best = 0;
    for axis in 0..first.dim() {
        let mut counts: HashMap<num_bigint::BigInt, usize> = HashMap::new();
        for h in objs {
            if let Some(cell) = open_cell_of(h.lo(axis), h.hi(axis)) {
                let c = counts.entry(cell).or_insert(0);
                *c += 1;
                best = best.max(*c);
            }
        }
    }
    best
}

/// The `i` with `[lo, hi] ⊂ (i, i+1)`, if any.
pub(crate) fn open_cell_of(lo: &Coordinate, hi: &Coordinate) -> Option<num_bigint::BigInt> {
    if lo.is_integer() {
        return None;
    }
    let i = lo.floor();
    let next = Coordinate::from_bigint(&i + 1);
    (hi < &next).then_some(i)
}

/// Checks `(K, D)`-boundedness: every object inside `[0, K]^d` and at most
/// `D` objects strictly inside any open unit cell, per axis.
pub fn is_bounded(objs: &[HyperRect], k_side: &Coordinate, d_bound: usize) -> bool {
    let zero = Coordinate::zero();
    objs.iter()
        .all(|h| (0..h.dim()).all(|j| h.lo(j) >= &zero && h.hi(j) <= k_side))
        && unit_cell_load(objs) <= d_bound
}

fn protocol(msg: impl Into<String>) -> Error {
    Error::Protocol(msg.into())
}
