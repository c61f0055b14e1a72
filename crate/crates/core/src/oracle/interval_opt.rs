use crate::error::Result;
use crate::geometry::HyperRect;

/// Exact maximum independent set of closed intervals: sort by right
/// endpoint, accept whenever the left endpoint lies strictly right of the
/// last accepted right endpoint. Returns the size and witness positions.
pub fn exact_interval_opt(intervals: &[HyperRect]) -> Result<(usize, Vec<usize>)> {
    for iv in intervals {
        iv.check_dim(1)?;
    }
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals[a].hi(0).cmp(intervals[b].hi(0)));
    let mut witness = Vec::new();
    let mut last: Option<&HyperRect> = None;
    for i in order {
        let iv = &intervals[i];
        if last.map_or(true, |l| iv.lo(0) > l.hi(0)) {
            witness.push(i);
            last = Some(iv);
        }
    }
    Ok((witness.len(), witness))
}

/// Size only, without materializing the witness.
pub fn interval_opt_size(intervals: &[HyperRect]) -> usize {
    let mut refs: Vec<&HyperRect> = intervals.iter().collect();
    refs.sort_unstable_by(|a, b| a.hi(0).cmp(b.hi(0)));
    let mut count = 0;
    let mut last: Option<&HyperRect> = None;
    for iv in refs {
        if last.map_or(true, |l| iv.lo(0) > l.hi(0)) {
            count += 1;
            last = Some(iv);
        }
    }
    count
}
