//! Independence checkers.
//!
//! An *independence update* asks whether a new box intersects any box
//! accepted so far and stores it if not. Every backend gives exactly the
//! same answers as [`NaiveChecker`]; the others only change the cost:
//!
//! * [`IntervalChecker`]: disjoint intervals in an ordered map, one
//!   predecessor lookup per update.
//! * [`ThinChecker`]: boxes whose side on one axis is at most a fixed width,
//!   keyed by their start on that axis and searched with a range query.
//! * [`GridChecker`]: boxes whose sides lie in `(l_j, 2·l_j]`, bucketed in a
//!   sparse uniform grid with cell side `l_j`.

mod grid;
mod interval;
mod naive;
mod ordered;
mod thin;

pub use grid::GridChecker;
pub use interval::IntervalChecker;
pub use naive::NaiveChecker;
pub use ordered::OrderedSet;
pub use thin::ThinChecker;

use crate::classifier::{similar_lower_bounds, ClassId};
use crate::error::Result;
use crate::geometry::{Coordinate, HyperRect};

pub trait IndependenceChecker {
    /// Accepts and stores `h` iff it intersects no stored box.
    fn independence_update(&mut self, h: &HyperRect) -> Result<bool>;

    /// Indices (into [`accepted`](Self::accepted)) of stored boxes that may
    /// intersect `h`. A superset of the true intersectors.
    fn enumerate_candidates(&self, h: &HyperRect) -> Result<Vec<usize>>;

    /// Accepted boxes in acceptance order.
    fn accepted(&self) -> &[HyperRect];
}

/// Which backend to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckerKind {
    Naive,
    Interval,
    Thin { axis: usize, width: Coordinate },
    Grid { cell_sides: Vec<Coordinate> },
}

impl CheckerKind {
    /// The accelerated backend for a size class: range search for thin
    /// classes, grid for similar-size classes, ordered map for intervals.
    pub fn for_class(class: &ClassId) -> Self {
        match class {
            ClassId::Interval(_) => CheckerKind::Interval,
            ClassId::Thin(axis) => CheckerKind::Thin {
                axis: *axis,
                width: Coordinate::one(),
            },
            ClassId::Similar(y) => CheckerKind::Grid {
                cell_sides: similar_lower_bounds(y),
            },
        }
    }
}

/// Enum dispatch over the backends.
#[derive(Clone, Debug)]
pub enum Checker {
    Naive(NaiveChecker),
    Interval(IntervalChecker),
    Thin(ThinChecker),
    Grid(GridChecker),
}

impl Checker {
    pub fn new(kind: &CheckerKind, dim: usize) -> Result<Self> {
        Ok(match kind {
            CheckerKind::Naive => Checker::Naive(NaiveChecker::new(dim)),
            CheckerKind::Interval => Checker::Interval(IntervalChecker::new()),
            CheckerKind::Thin { axis, width } => Checker::Thin(ThinChecker::new(dim, *axis, width.clone())?),
            CheckerKind::Grid { cell_sides } => {
                if cell_sides.len() != dim {
                    return Err(crate::Error::DimensionMismatch {
                        expected: dim,
                        actual: cell_sides.len(),
                    });
                }
                Checker::Grid(GridChecker::new(cell_sides.clone())?)
            }
        })
    }

    pub fn len(&self) -> usize {
        self.accepted().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl IndependenceChecker for Checker {
    fn independence_update(&mut self, h: &HyperRect) -> Result<bool> {
        match self {
            Checker::Naive(c) => c.independence_update(h),
            Checker::Interval(c) => c.independence_update(h),
            Checker::Thin(c) => c.independence_update(h),
            Checker::Grid(c) => c.independence_update(h),
        }
    }

    fn enumerate_candidates(&self, h: &HyperRect) -> Result<Vec<usize>> {
        match self {
            Checker::Naive(c) => c.enumerate_candidates(h),
            Checker::Interval(c) => c.enumerate_candidates(h),
            Checker::Thin(c) => c.enumerate_candidates(h),
            Checker::Grid(c) => c.enumerate_candidates(h),
        }
    }

    fn accepted(&self) -> &[HyperRect] {
        match self {
            Checker::Naive(c) => c.accepted(),
            Checker::Interval(c) => c.accepted(),
            Checker::Thin(c) => c.accepted(),
            Checker::Grid(c) => c.accepted(),
        }
    }
}
