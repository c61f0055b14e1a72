//! Exact coordinates, closed axis-aligned boxes, σ-rectangular objects and
//! instance files.

mod coordinate;
mod instance;
pub mod io;
mod rect;
mod sigma;

pub use coordinate::Coordinate;
pub use instance::{Instance, Objects};
pub use rect::{is_independent_intervals, is_independent_set, HyperRect};
pub use sigma::{out_box, ShapeTag, SigmaObject};


/// `intersects(a, b)` as a free function.
pub fn intersects(a: &HyperRect, b: &HyperRect) -> crate::Result<bool> {
    a.intersects(b)
}

/// `side_length(h, axis)` as a free function.
pub fn side_length(h: &HyperRect, axis: usize) -> crate::Result<Coordinate> {
    h.side_length(axis)
}
