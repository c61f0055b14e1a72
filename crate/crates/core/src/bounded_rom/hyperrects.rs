use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use super::{protocol, select_class_hyperrects, BoundedInstanceMeta, BoundedOutcome, Phase};
use crate::classifier::{hyperrect_class, ClassId, ClassParams};
use crate::error::Result;
use crate::geometry::HyperRect;
use crate::online::OnlineSelector;
use crate::structures::{Checker, CheckerKind, IndependenceChecker};

/// Online runner for bounded box instances.
///
/// During observation each realized class keeps its own greedy state `G_i`
/// (range-search backend for thin classes, grid for similar-size ones); the
/// estimate `L̂_i` is `|G_i|`.
#[derive(Clone, Debug)]
pub struct BoundedHyperrectRunner {
    meta: BoundedInstanceMeta,
    params: ClassParams,
    accelerated: bool,
    seen: usize,
    observed: HashMap<ClassId, Checker>,
    chosen: Option<ClassId>,
    action: Option<Checker>,
    selected: Vec<usize>,
    fallback_used: bool,
}

impl BoundedHyperrectRunner {
    pub fn new(meta: BoundedInstanceMeta) -> Result<Self> {
        Self::with_backend(meta, true)
    }

    /// `accelerated = false` uses the pairwise backend everywhere; decisions
    /// are identical either way.
    pub fn with_backend(meta: BoundedInstanceMeta, accelerated: bool) -> Result<Self> {
        let params = ClassParams::new(&meta.k_side, meta.dim)?;
        let mut runner = BoundedHyperrectRunner {
            meta,
            params,
            accelerated,
            seen: 0,
            observed: HashMap::new(),
            chosen: None,
            action: None,
            selected: Vec::new(),
            fallback_used: false,
        };
        if runner.meta.observation_len() == 0 {
            runner.end_observation()?;
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

    pub fn chosen_class(&self) -> Option<&ClassId> {
        self.chosen.as_ref()
    }

    fn kind_for(&self, class: &ClassId) -> CheckerKind {
        if self.accelerated {
            CheckerKind::for_class(class)
        } else {
            CheckerKind::Naive
        }
    }

    /// Current greedy estimates `L̂_i` of the realized classes.
    pub fn estimates(&self) -> HashMap<ClassId, usize> {
        self.observed.iter().map(|(c, g)| (c.clone(), g.len())).collect()
    }

    fn end_observation(&mut self) -> Result<()> {
        let d = self.meta.dim;
        let mut lhat_x = vec![0usize; d];
        let mut lhat_y: BTreeMap<SmallVec<[u32; 2]>, usize> = BTreeMap::new();
        for (class, g) in &self.observed {
            match class {
                ClassId::Thin(x) => lhat_x[*x] = g.len(),
                ClassId::Similar(y) => {
                    lhat_y.insert(y.clone(), g.len());
                }
                ClassId::Interval(_) => unreachable!("box runner never builds interval classes"),
            }
        }
        let m = select_class_hyperrects(&lhat_x, &lhat_y, self.params.k(), d, self.meta.d_bound);
        self.action = Some(Checker::new(&self.kind_for(&m), d)?);
        self.chosen = Some(m);
        Ok(())
    }

    pub fn finish(self) -> Result<BoundedOutcome> {
        if self.seen != self.meta.n {
            return Err(protocol(format!(
                "runner expected {} arrivals, received {}",
                self.meta.n, self.seen
            )));
        }
        let estimates = self.estimates();
        Ok(BoundedOutcome {
            selected: self.selected,
            chosen: self.chosen,
            estimates,
            fallback_used: self.fallback_used,
        })
    }
}

impl OnlineSelector for BoundedHyperrectRunner {
    fn offer(&mut self, h: &HyperRect) -> Result<bool> {
        h.check_dim(self.meta.dim)?;
        if self.seen >= self.meta.n {
            return Err(protocol(format!("more than the announced {} arrivals", self.meta.n)));
        }
        let pos = self.seen;
        self.seen += 1;
        let class = hyperrect_class(h, &self.params)?;

        let Some(m) = &self.chosen else {
            let g = match self.observed.get_mut(&class) {
                Some(g) => g,
                None => {
                    let kind = self.kind_for(&class);
                    self.observed
                        .entry(class.clone())
                        .or_insert(Checker::new(&kind, self.meta.dim)?)
                }
            };
            g.independence_update(h)?;
            if self.seen == self.meta.observation_len() {
                self.end_observation()?;
            }
            return Ok(false);
        };

        let action = self.action.as_mut().expect("set with chosen");
        let take = if &class == m && action.independence_update(h)? {
            true
        } else if self.seen == self.meta.n && action.is_empty() {
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

/// Runs the box algorithm over a full arrival sequence.
pub fn run_bounded_hyperrects(stream: &[HyperRect], meta: BoundedInstanceMeta) -> Result<BoundedOutcome> {
    if stream.len() != meta.n {
        return Err(protocol(format!(
            "stream has {} boxes but n = {} was announced",
            stream.len(),
            meta.n
        )));
    }
    let mut runner = BoundedHyperrectRunner::new(meta)?;
    for h in stream {
        runner.offer(h)?;
    }
    runner.finish()
}
