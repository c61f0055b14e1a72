//! Online greedy: accept an arriving box iff it misses everything accepted.

use crate::error::Result;
use crate::geometry::HyperRect;
use crate::online::OnlineSelector;
use crate::structures::{Checker, CheckerKind, IndependenceChecker};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub accepted: bool,
}

/// Greedy state over a pluggable independence backend. The backend choice
/// never changes a decision.
#[derive(Clone, Debug)]
pub struct GreedyState {
    dim: usize,
    checker: Checker,
}

impl GreedyState {
    pub fn new(dim: usize, kind: &CheckerKind) -> Result<Self> {
        Ok(GreedyState {
            dim,
            checker: Checker::new(kind, dim)?,
        })
    }

    pub fn naive(dim: usize) -> Self {
        GreedyState {
            dim,
            checker: Checker::new(&CheckerKind::Naive, dim).expect("naive checker"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn greedy_step(&mut self, h: &HyperRect) -> Result<Decision> {
        h.check_dim(self.dim)?;
        Ok(Decision {
            accepted: self.checker.independence_update(h)?,
        })
    }

    /// Accepted boxes in arrival order.
    pub fn accepted(&self) -> &[HyperRect] {
        self.checker.accepted()
    }

    pub fn len(&self) -> usize {
        self.checker.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checker.is_empty()
    }

    pub fn checker(&self) -> &Checker {
        &self.checker
    }
}

impl OnlineSelector for GreedyState {
    fn offer(&mut self, h: &HyperRect) -> Result<bool> {
        Ok(self.greedy_step(h)?.accepted)
    }
}

/// Runs greedy over `seq` in order; returns the accepted boxes.
pub fn greedy_run(seq: &[HyperRect], kind: &CheckerKind) -> Result<Vec<HyperRect>> {
    Ok(greedy_run_indices(seq, kind)?
        .into_iter()
        .map(|i| seq[i].clone())
        .collect())
}

/// Like [`greedy_run`] but returns positions in `seq`.
pub fn greedy_run_indices(seq: &[HyperRect], kind: &CheckerKind) -> Result<Vec<usize>> {
    let Some(first) = seq.first() else {
        return Ok(Vec::new());
    };
    let mut state = GreedyState::new(first.dim(), kind)?;
    let mut out = Vec::new();
    for (i, h) in seq.iter().enumerate() {
        if state.greedy_step(h)?.accepted {
            out.push(i);
        }
    }
    Ok(out)
}

/// Every object of `seq` outside `chosen` meets some member of `chosen`.
pub fn is_maximal(seq: &[HyperRect], chosen: &[HyperRect]) -> bool {
    seq.iter()
        .all(|h| chosen.contains(h) || chosen.iter().any(|c| c.overlaps(h)))
}
