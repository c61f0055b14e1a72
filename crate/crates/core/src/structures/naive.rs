use super::IndependenceChecker;
use crate::error::Result;
use crate::geometry::HyperRect;

/// Pairwise scan over everything accepted. The reference backend.
#[derive(Clone, Debug)]
pub struct NaiveChecker {
    dim: usize,
    accepted: Vec<HyperRect>,
}

impl NaiveChecker {
    pub fn new(dim: usize) -> Self {
        NaiveChecker {
            dim,
            accepted: Vec::new(),
        }
    }
}

impl IndependenceChecker for NaiveChecker {
    fn independence_update(&mut self, h: &HyperRect) -> Result<bool> {
        h.check_dim(self.dim)?;
        if self.accepted.iter().any(|a| a.overlaps(h)) {
            return Ok(false);
        }
        self.accepted.push(h.clone());
        Ok(true)
    }

    fn enumerate_candidates(&self, h: &HyperRect) -> Result<Vec<usize>> {
        h.check_dim(self.dim)?;
        Ok((0..self.accepted.len()).collect())
    }

    fn accepted(&self) -> &[HyperRect] {
        &self.accepted
    }
}
