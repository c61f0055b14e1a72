use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::IndependenceChecker;
use crate::error::{Error, Result};
use crate::geometry::{Coordinate, HyperRect};

/// Checker for a thin class: every box has side at most `width` on `axis`.
///
/// Starts on `axis` are kept in an ordered map. A stored box can only meet
/// the query if its start lies in `[q.lo - width, q.hi]`, so one range query
/// yields every candidate. Under (K, D)-boundedness that range holds
/// `O(D)` boxes; correctness does not depend on it.
#[derive(Clone, Debug)]
pub struct ThinChecker {
    dim: usize,
    axis: usize,
    width: Coordinate,
    starts: BTreeMap<Coordinate, SmallVec<[usize; 1]>>,
    accepted: Vec<HyperRect>,
}

impl ThinChecker {
    pub fn new(dim: usize, axis: usize, width: Coordinate) -> Result<Self> {
        if axis >= dim {
            return Err(Error::AxisOutOfRange { axis, dim });
        }
        if width.is_negative() {
            return Err(Error::InvalidParameter(format!("negative width {width}")));
        }
        Ok(ThinChecker {
            dim,
            axis,
            width,
            starts: BTreeMap::new(),
            accepted: Vec::new(),
        })
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    fn check_class(&self, h: &HyperRect) -> Result<()> {
        h.check_dim(self.dim)?;
        if h.side_cmp(self.axis, &self.width).is_gt() {
            return Err(Error::ClassMismatch(format!(
                "{h:?} is wider than {} on axis {}",
                self.width, self.axis
            )));
        }
        Ok(())
    }

    fn candidates<'a>(&'a self, h: &'a HyperRect) -> impl Iterator<Item = usize> + 'a {
        let from = h.lo(self.axis) - &self.width;
        let to = h.hi(self.axis).clone();
        self.starts
            .range(from..=to)
            .flat_map(|(_, ids)| ids.iter().copied())
            .filter(move |&i| self.accepted[i].overlaps_on(h, self.axis))
    }
}

impl IndependenceChecker for ThinChecker {
    fn independence_update(&mut self, h: &HyperRect) -> Result<bool> {
        self.check_class(h)?;
        if self.candidates(h).any(|i| self.accepted[i].overlaps(h)) {
            return Ok(false);
        }
        let idx = self.accepted.len();
        self.starts.entry(h.lo(self.axis).clone()).or_default().push(idx);
        self.accepted.push(h.clone());
        Ok(true)
    }

    fn enumerate_candidates(&self, h: &HyperRect) -> Result<Vec<usize>> {
        self.check_class(h)?;
        Ok(self.candidates(h).collect())
    }

    fn accepted(&self) -> &[HyperRect] {
        &self.accepted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: (i64, i64), b: (i64, i64)) -> HyperRect {
        HyperRect::from_bounds([a, b]).unwrap()
    }

    #[test]
    fn stacked_thin_boxes() {
        let mut c = ThinChecker::new(2, 0, Coordinate::one()).unwrap();
        assert!(c.independence_update(&r((0, 1), (0, 10))).unwrap());
        assert!(c.independence_update(&r((0, 1), (11, 20))).unwrap());
        assert!(!c.independence_update(&r((1, 1), (5, 5))).unwrap());
        assert!(c.independence_update(&r((2, 3), (5, 5))).unwrap());
        assert_eq!(c.enumerate_candidates(&r((0, 0), (0, 100))).unwrap().len(), 2);
        assert!(c.enumerate_candidates(&r((50, 51), (0, 0))).unwrap().is_empty());
        assert!(matches!(
            c.independence_update(&r((0, 2), (0, 0))),
            Err(Error::ClassMismatch(_))
        ));
    }
}
