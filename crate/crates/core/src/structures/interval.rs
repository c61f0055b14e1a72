use std::collections::BTreeMap;

use super::IndependenceChecker;
use crate::error::Result;
use crate::geometry::{Coordinate, HyperRect};

/// Accepted intervals keyed by left endpoint.
///
/// Stored intervals are disjoint, so sorting by left endpoint also sorts by
/// right endpoint: a query `[a, b]` hits something iff the stored interval
/// with the largest left endpoint `≤ b` ends at or after `a`.
#[derive(Clone, Debug, Default)]
pub struct IntervalChecker {
    by_lo: BTreeMap<Coordinate, usize>,
    accepted: Vec<HyperRect>,
}

impl IntervalChecker {
    pub fn new() -> Self {
        Self::default()
    }

    fn blocker(&self, h: &HyperRect) -> Option<usize> {
        let (_, &idx) = self.by_lo.range(..=h.hi(0).clone()).next_back()?;
        (self.accepted[idx].hi(0) >= h.lo(0)).then_some(idx)
    }
}

impl IndependenceChecker for IntervalChecker {
    fn independence_update(&mut self, h: &HyperRect) -> Result<bool> {
        h.check_dim(1)?;
        if self.blocker(h).is_some() {
            return Ok(false);
        }
        self.by_lo.insert(h.lo(0).clone(), self.accepted.len());
        self.accepted.push(h.clone());
        Ok(true)
    }

    fn enumerate_candidates(&self, h: &HyperRect) -> Result<Vec<usize>> {
        h.check_dim(1)?;
        Ok(self.blocker(h).into_iter().collect())
    }

    fn accepted(&self) -> &[HyperRect] {
        &self.accepted
    }
}
