use std::collections::HashMap;

use super::{protocol, select_class_intervals, BoundedInstanceMeta, BoundedOutcome, Phase};
use crate::classifier::{side_class, ClassId, ClassParams};
use crate::error::Result;
use crate::geometry::HyperRect;
use crate::online::OnlineSelector;
use crate::oracle::interval_opt_size;
use crate::structures::{IndependenceChecker, IntervalChecker};

/// Online runner for bounded interval instances.
#[derive(Clone, Debug)]
pub struct BoundedIntervalRunner {
    meta: BoundedInstanceMeta,
    params: ClassParams,
    seen: usize,
    /// `L_i`: observed intervals per class `0..=k`.
    observed: Vec<Vec<HyperRect>>,
    opt_observed: Vec<usize>,
    chosen: Option<u32>,
    /// `R_m`, the greedy state of the action phase.
    action: IntervalChecker,
    selected: Vec<usize>,
    fallback_used: bool,
}

impl BoundedIntervalRunner {
    pub fn new(meta: BoundedInstanceMeta) -> Result<Self> {
        if meta.dim != 1 {
            return Err(protocol(format!("interval runner needs d = 1, got {}", meta.dim)));
        }
        let params = ClassParams::new(&meta.k_side, 1)?;
        let classes = params.k() as usize + 1;
        let mut runner = BoundedIntervalRunner {
            meta,
            params,
            seen: 0,
            observed: vec![Vec::new(); classes],
            opt_observed: Vec::new(),
            chosen: None,
            action: IntervalChecker::new(),
            selected: Vec::new(),
            fallback_used: false,
        };
        if runner.meta.observation_len() == 0 {
            runner.end_observation();
        }
        Ok(runner)
    }

    pub fn params(&self) -> &ClassParams {
        &self.params
    }

    pub fn phase(&self) -> Phase {
        if self.chosen.is_none() {
            Phase::Observation
        } else {
            Phase::Action
        }
    }

    pub fn chosen_class(&self) -> Option<u32> {
        self.chosen
    }

    fn end_observation(&mut self) {
        self.opt_observed = self.observed.iter().map(|l| interval_opt_size(l)).collect();
        self.chosen = Some(select_class_intervals(&self.opt_observed, self.params.k()));
    }

    pub fn finish(self) -> Result<BoundedOutcome> {
        if self.seen != self.meta.n {
            return Err(protocol(format!(
                "runner expected {} arrivals, received {}",
                self.meta.n, self.seen
            )));
        }
        let estimates = self
            .observed
            .iter()
            .zip(&self.opt_observed)
            .enumerate()
            .filter(|(_, (l, _))| !l.is_empty())
            .map(|(i, (_, &o))| (ClassId::Interval(i as u32), o))
            .collect::<HashMap<_, _>>();
        Ok(BoundedOutcome {
            selected: self.selected,
            chosen: self.chosen.map(ClassId::Interval),
            estimates,
            fallback_used: self.fallback_used,
        })
    }
}

impl OnlineSelector for BoundedIntervalRunner {
    fn offer(&mut self, h: &HyperRect) -> Result<bool> {
        h.check_dim(1)?;
        if self.seen >= self.meta.n {
            return Err(protocol(format!("more than the announced {} arrivals", self.meta.n)));
        }
        let pos = self.seen;
        self.seen += 1;
        let class = side_class(h, 0, &self.params)?;

        let Some(m) = self.chosen else {
            self.observed[class as usize].push(h.clone());
            if self.seen == self.meta.observation_len() {
                self.end_observation();
            }
            return Ok(false);
        };

        let take = if class == m && self.action.independence_update(h)? {
            true
        } else if self.seen == self.meta.n && self.action.accepted().is_empty() {
            self.fallback_used = true;
            true
        } else {
            false
        };
        if take {
            self.selected.push(pos);
        }
        Ok(take)
    }
}

/// Runs the interval algorithm over a full arrival sequence.
pub fn run_bounded_intervals(stream: &[HyperRect], meta: BoundedInstanceMeta) -> Result<BoundedOutcome> {
    if stream.len() != meta.n {
        return Err(protocol(format!(
            "stream has {} intervals but n = {} was announced",
            stream.len(),
            meta.n
        )));
    }
    let mut runner = BoundedIntervalRunner::new(meta)?;
    for h in stream {
        runner.offer(h)?;
    }
    runner.finish()
}
