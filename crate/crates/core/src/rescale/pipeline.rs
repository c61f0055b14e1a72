use crate::bounded_rom::{BoundedHyperrectRunner, BoundedInstanceMeta, BoundedIntervalRunner, BoundedOutcome};
use crate::error::{Error, Result};
use crate::geometry::{Coordinate, HyperRect, SigmaObject};
use crate::online::OnlineSelector;
use crate::oracle::ceil_log2;
use crate::structures::OrderedSet;

use super::Scale;

/// A bounded runner the pipeline can delegate its second phase to.
pub trait InnerRunner: OnlineSelector + Sized {
    fn build(meta: BoundedInstanceMeta) -> Result<Self>;
    fn finish(self) -> Result<BoundedOutcome>;
}

impl InnerRunner for BoundedIntervalRunner {
    fn build(meta: BoundedInstanceMeta) -> Result<Self> {
        BoundedIntervalRunner::new(meta)
    }

    fn finish(self) -> Result<BoundedOutcome> {
        BoundedIntervalRunner::finish(self)
    }
}

impl InnerRunner for BoundedHyperrectRunner {
    fn build(meta: BoundedInstanceMeta) -> Result<Self> {
        BoundedHyperrectRunner::new(meta)
    }

    fn finish(self) -> Result<BoundedOutcome> {
        BoundedHyperrectRunner::finish(self)
    }
}

/// Parameters the inner runner is given for a stream of `n` objects:
/// `K = ⌈n/2⌉`, `D = 4⌈log₂ n⌉`, and `n − ⌈n/2⌉` arrivals.
pub fn inner_meta(n: usize, dim: usize) -> BoundedInstanceMeta {
    let half = n.div_ceil(2);
    BoundedInstanceMeta::new(
        Coordinate::from(half.max(1)),
        4 * ceil_log2(n.max(1) as u64) as usize,
        n - half,
        dim,
    )
}

/// What happened to one second-phase arrival.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Routing {
    /// Replaced by the sentinel `[0,0]^d`.
    Ignored,
    Scaled,
}

/// Result of a full pipeline run.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    /// Arrival positions of the selected objects, increasing.
    pub selected: Vec<usize>,
    /// `|F|`.
    pub ignored: usize,
    /// Per axis, second-phase objects whose left endpoint lies outside
    /// that axis's breakpoint span.
    pub ignored_per_axis: Vec<usize>,
    /// Per axis, the number of breakpoints `t`.
    pub breakpoints: Vec<usize>,
    /// Scaled second-phase objects outside `F`, with their arrival
    /// positions. Empty unless recording was requested.
    pub scaled: Vec<(usize, HyperRect)>,
    pub outer_fallback: bool,
    pub inner: BoundedOutcome,
}

/// Online scale-and-delegate pipeline.
///
/// The first `⌈n/2⌉` arrivals only contribute their left endpoints. At the
/// boundary one [`Scale`] per axis is built; each later arrival is either
/// scaled and offered to the inner runner (selected iff the inner runner
/// selects it) or, when its left endpoint falls outside some axis's span,
/// replaced by the sentinel `[0,0]^d` whose selection is discarded.
#[derive(Debug)]
pub struct ScaledPipeline<S: InnerRunner> {
    n: usize,
    dim: usize,
    seen: usize,
    endpoints: Vec<OrderedSet>,
    scales: Vec<Scale>,
    inner: Option<S>,
    record: bool,
    selected: Vec<usize>,
    ignored_per_axis: Vec<usize>,
    ignored: usize,
    scaled: Vec<(usize, HyperRect)>,
    outer_fallback: bool,
}

impl<S: InnerRunner> ScaledPipeline<S> {
    pub fn new(n: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(ScaledPipeline {
            n,
            dim,
            seen: 0,
            endpoints: vec![OrderedSet::new(); dim],
            scales: Vec::new(),
            inner: None,
            record: false,
            selected: Vec::new(),
            ignored_per_axis: vec![0; dim],
            ignored: 0,
            scaled: Vec::new(),
            outer_fallback: false,
        })
    }

    /// Keep the scaled second-phase objects for later inspection.
    pub fn recording(mut self, on: bool) -> Self {
        self.record = on;
        self
    }

    pub fn prep_len(&self) -> usize {
        self.n.div_ceil(2)
    }

    pub fn scales(&self) -> &[Scale] {
        &self.scales
    }

    fn end_prep(&mut self) -> Result<()> {
        self.scales = std::mem::take(&mut self.endpoints)
            .into_iter()
            .map(|set| Scale::from_sorted(set.into_distinct()))
            .collect::<Result<_>>()?;
        self.inner = Some(S::build(inner_meta(self.n, self.dim))?);
        Ok(())
    }

    /// Sentinel or scaled copy of `h`.
    fn route(&mut self, h: &HyperRect) -> Result<(Routing, HyperRect)> {
        let mut outside = false;
        for (j, s) in self.scales.iter().enumerate() {
            if !s.spans(h.lo(j)) {
                self.ignored_per_axis[j] += 1;
                outside = true;
            }
        }
        if outside {
            self.ignored += 1;
            return Ok((Routing::Ignored, HyperRect::origin(self.dim)));
        }
        let scales = &self.scales;
        let lo = h.lows().iter().zip(scales).map(|(x, s)| s.apply(x)).collect::<Result<Vec<_>>>()?;
        let hi = h.highs().iter().zip(scales).map(|(x, s)| s.apply(x)).collect::<Result<Vec<_>>>()?;
        Ok((Routing::Scaled, HyperRect::new(lo, hi)?))
    }

    pub fn finish(self) -> Result<PipelineOutcome> {
        if self.seen != self.n {
            return Err(Error::Protocol(format!(
                "pipeline expected {} arrivals, received {}",
                self.n, self.seen
            )));
        }
        let breakpoints = self.scales.iter().map(Scale::len).collect();
        let inner = match self.inner {
            Some(r) => r.finish()?,
            None => BoundedOutcome {
                selected: Vec::new(),
                chosen: None,
                estimates: Default::default(),
                fallback_used: false,
            },
        };
        Ok(PipelineOutcome {
            selected: self.selected,
            ignored: self.ignored,
            ignored_per_axis: self.ignored_per_axis,
            breakpoints,
            scaled: self.scaled,
            outer_fallback: self.outer_fallback,
            inner,
        })
    }
}

impl<S: InnerRunner> OnlineSelector for ScaledPipeline<S> {
    fn offer(&mut self, h: &HyperRect) -> Result<bool> {
        h.check_dim(self.dim)?;
        if self.seen >= self.n {
            return Err(Error::Protocol(format!("more than the announced {} arrivals", self.n)));
        }
        let pos = self.seen;
        self.seen += 1;

        if self.inner.is_none() {
            for (j, set) in self.endpoints.iter_mut().enumerate() {
                set.insert(h.lo(j).clone());
            }
            if self.seen == self.prep_len() {
                self.end_prep()?;
            }
            return Ok(false);
        }

        let (routing, fed) = self.route(h)?;
        let inner_took = self.inner.as_mut().expect("built at boundary").offer(&fed)?;
        let take = match routing {
            Routing::Scaled => {
                if self.record {
                    self.scaled.push((pos, fed));
                }
                inner_took
            }
            Routing::Ignored => false,
        };
        let take = if !take && self.seen == self.n && self.selected.is_empty() {
            self.outer_fallback = true;
            true
        } else {
            take
        };
        if take {
            self.selected.push(pos);
        }
        Ok(take)
    }
}

fn drive<S: InnerRunner>(stream: &[HyperRect], dim: usize, record: bool) -> Result<PipelineOutcome> {
    let mut p = ScaledPipeline::<S>::new(stream.len(), dim)?.recording(record);
    for h in stream {
        p.offer(h)?;
    }
    p.finish()
}

/// Intervals with no bounding box, `n = stream.len()`.
pub fn run_full_intervals(stream: &[HyperRect]) -> Result<PipelineOutcome> {
    drive::<BoundedIntervalRunner>(stream, 1, true)
}

/// Same as [`run_full_intervals`] without keeping the scaled objects.
pub fn run_full_intervals_lean(stream: &[HyperRect]) -> Result<PipelineOutcome> {
    drive::<BoundedIntervalRunner>(stream, 1, false)
}

/// Boxes in `dim` dimensions with no bounding box.
pub fn run_full_hyperrects(stream: &[HyperRect], dim: usize) -> Result<PipelineOutcome> {
    drive::<BoundedHyperrectRunner>(stream, dim, true)
}

/// σ-rectangular objects: runs the box pipeline on their out-boxes.
pub fn run_full_sigma(stream: &[SigmaObject], dim: usize) -> Result<PipelineOutcome> {
    let boxes: Vec<HyperRect> = stream.iter().map(|f| f.out_box().clone()).collect();
    run_full_hyperrects(&boxes, dim)
}

/// Per axis, the largest gap between consecutive ranks of the first
/// `⌈n/2⌉` arrivals in the order of left endpoints (ties by arrival), with
/// sentinels at ranks 1 and `n`.
pub fn left_endpoint_gaps(stream: &[HyperRect], dim: usize) -> Vec<u64> {
    let n = stream.len();
    let half = n.div_ceil(2);
    (0..dim)
        .map(|j| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| stream[a].lo(j).cmp(stream[b].lo(j)).then(a.cmp(&b)));
            let ranks: Vec<u64> = order
                .iter()
                .enumerate()
                .filter(|(_, &pos)| pos < half)
                .map(|(r, _)| r as u64 + 1)
                .collect();
            crate::oracle::max_gap(&ranks, n as u64)
        })
        .collect()
}
