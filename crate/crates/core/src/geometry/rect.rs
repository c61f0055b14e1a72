use std::fmt;

use smallvec::SmallVec;

use super::Coordinate;
use crate::error::{Error, Result};

pub(crate) type Coords = SmallVec<[Coordinate; 2]>;

/// A closed axis-aligned box `[lo_1, hi_1] × … × [lo_d, hi_d]`.
///
/// Degenerate sides are allowed, so a point is a box. An interval is a box
/// with `dim() == 1`. Axes are numbered from 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HyperRect {
    lo: Coords,
    hi: Coords,
}

impl HyperRect {
    pub fn new(lo: Vec<Coordinate>, hi: Vec<Coordinate>) -> Result<Self> {
        Self::from_coords(lo.into(), hi.into())
    }

    pub(crate) fn from_coords(lo: Coords, hi: Coords) -> Result<Self> {
        if lo.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                actual: hi.len(),
            });
        }
        if let Some(axis) = lo.iter().zip(&hi).position(|(l, h)| l > h) {
            return Err(Error::InvertedBounds { axis });
        }
        Ok(HyperRect { lo, hi })
    }

    /// `[lo, hi]` on the line.
    pub fn interval(lo: impl Into<Coordinate>, hi: impl Into<Coordinate>) -> Result<Self> {
        let mut l = Coords::new();
        l.push(lo.into());
        let mut h = Coords::new();
        h.push(hi.into());
        Self::from_coords(l, h)
    }

    /// Builds a box from `(lo, hi)` pairs, one per axis.
    pub fn from_bounds<C: Into<Coordinate>>(bounds: impl IntoIterator<Item = (C, C)>) -> Result<Self> {
        let (lo, hi): (Coords, Coords) = bounds.into_iter().map(|(l, h)| (l.into(), h.into())).unzip();
        Self::from_coords(lo, hi)
    }

    /// The degenerate box `[0,0]^d`.
    pub fn origin(dim: usize) -> Self {
        let z: Coords = std::iter::repeat(Coordinate::zero()).take(dim).collect();
        HyperRect { lo: z.clone(), hi: z }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self, axis: usize) -> &Coordinate {
        &self.lo[axis]
    }

    pub fn hi(&self, axis: usize) -> &Coordinate {
        &self.hi[axis]
    }

    pub fn lows(&self) -> &[Coordinate] {
        &self.lo
    }

    pub fn highs(&self) -> &[Coordinate] {
        &self.hi
    }

    /// `hi[axis] - lo[axis]`.
    pub fn side_length(&self, axis: usize) -> Result<Coordinate> {
        if axis >= self.dim() {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim(),
            });
        }
        Ok(&self.hi[axis] - &self.lo[axis])
    }

    pub(crate) fn side(&self, axis: usize) -> Coordinate {
        &self.hi[axis] - &self.lo[axis]
    }

    /// Compares the side on `axis` with `len` without forming the side.
    pub(crate) fn side_cmp(&self, axis: usize, len: &Coordinate) -> std::cmp::Ordering {
        self.hi[axis].cmp(&(&self.lo[axis] + len))
    }

    pub(crate) fn side_ceil(&self, axis: usize) -> num_bigint::BigInt {
        Coordinate::diff_ceil(&self.hi[axis], &self.lo[axis])
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: self.dim(),
            });
        }
        Ok(())
    }

    /// Closed-set intersection test; touching boundaries count.
    pub fn intersects(&self, other: &HyperRect) -> Result<bool> {
        other.check_dim(self.dim())?;
        Ok(self.overlaps(other))
    }

    /// [`intersects`](Self::intersects) without the dimension check.
    #[inline]
    pub(crate) fn overlaps(&self, other: &HyperRect) -> bool {
        (0..self.dim()).all(|j| self.lo[j] <= other.hi[j] && other.lo[j] <= self.hi[j])
    }

    /// True iff the closed projections on `axis` share a point.
    #[inline]
    pub(crate) fn overlaps_on(&self, other: &HyperRect, axis: usize) -> bool {
        self.lo[axis] <= other.hi[axis] && other.lo[axis] <= self.hi[axis]
    }

    /// Componentwise containment `self ⊆ other`.
    pub fn is_inside(&self, other: &HyperRect) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|j| other.lo[j] <= self.lo[j] && self.hi[j] <= other.hi[j])
    }

    /// Applies `f` to every coordinate, keeping the axis.
    pub fn map_axes(&self, mut f: impl FnMut(usize, &Coordinate) -> Coordinate) -> Result<Self> {
        let lo = self.lo.iter().enumerate().map(|(j, c)| f(j, c)).collect();
        let hi = self.hi.iter().enumerate().map(|(j, c)| f(j, c)).collect();
        Self::from_coords(lo, hi)
    }
}

impl fmt::Debug for HyperRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim() {
            if j > 0 {
                f.write_str("×")?;
            }
            write!(f, "[{}, {}]", self.lo[j], self.hi[j])?;
        }
        Ok(())
    }
}

/// True iff no two boxes in `objs` intersect. Quadratic; for verification.
pub fn is_independent_set(objs: &[HyperRect]) -> Result<bool> {
    if let Some(first) = objs.first() {
        for o in objs {
            o.check_dim(first.dim())?;
        }
    }
    for (i, a) in objs.iter().enumerate() {
        if objs[i + 1..].iter().any(|b| a.overlaps(b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`is_independent_set`] but `O(m log m)` for intervals.
pub fn is_independent_intervals(objs: &[HyperRect]) -> bool {
    let mut v: Vec<&HyperRect> = objs.iter().collect();
    v.sort_by(|a, b| a.lo(0).cmp(b.lo(0)));
    v.windows(2).all(|w| w[0].hi(0) < w[1].lo(0))
}
