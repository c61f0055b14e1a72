use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use smallvec::SmallVec;

use super::IndependenceChecker;
use crate::error::{Error, Result};
use crate::geometry::{Coordinate, HyperRect};

type CellKey = SmallVec<[BigInt; 2]>;

/// Sparse uniform grid for a similar-size class.
///
/// Every box has side in `(l_j, 2·l_j]` on axis `j`. Cells are the half-open
/// boxes `∏ [m_j·l_j, (m_j+1)·l_j)` anchored at the origin, so each box meets
/// at most `3^d` cells, and a cell meets at most `5^d` pairwise disjoint
/// stored boxes. Both caps are checked on every update.
#[derive(Clone, Debug)]
pub struct GridChecker {
    cell_sides: Vec<Coordinate>,
    cells: HashMap<CellKey, SmallVec<[usize; 2]>>,
    accepted: Vec<HyperRect>,
    max_cell_load: usize,
    max_cells_per_box: usize,
}

impl GridChecker {
    pub fn new(cell_sides: Vec<Coordinate>) -> Result<Self> {
        if cell_sides.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if cell_sides.iter().any(|l| l.is_negative() || l.is_zero()) {
            return Err(Error::InvalidParameter("grid cell sides must be positive".into()));
        }
        Ok(GridChecker {
            cell_sides,
            cells: HashMap::new(),
            accepted: Vec::new(),
            max_cell_load: 0,
            max_cells_per_box: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.cell_sides.len()
    }

    /// `5^d`.
    pub fn cell_load_cap(&self) -> usize {
        5usize.pow(self.dim() as u32)
    }

    /// `3^d`.
    pub fn cells_per_box_cap(&self) -> usize {
        3usize.pow(self.dim() as u32)
    }

    /// Largest number of stored boxes seen in one cell.
    pub fn max_cell_load(&self) -> usize {
        self.max_cell_load
    }

    /// Largest number of cells met by one accepted box.
    pub fn max_cells_per_box(&self) -> usize {
        self.max_cells_per_box
    }

    fn check_class(&self, h: &HyperRect) -> Result<()> {
        h.check_dim(self.dim())?;
        for (j, l) in self.cell_sides.iter().enumerate() {
            if h.side_cmp(j, l).is_le() || h.side_cmp(j, &(l + l)).is_gt() {
                return Err(Error::ClassMismatch(format!(
                    "{h:?}: side {} on axis {j} outside ({l}, 2·{l}]",
                    h.side(j)
                )));
            }
        }
        Ok(())
    }

    /// Cell index ranges per axis, `floor(lo/l) ..= floor(hi/l)`.
    fn cell_ranges(&self, h: &HyperRect) -> Vec<(BigInt, usize)> {
        self.cell_sides
            .iter()
            .enumerate()
            .map(|(j, l)| {
                let a = h.lo(j).floor_div(l);
                let b = h.hi(j).floor_div(l);
                let span = (&b - &a).to_usize().unwrap_or(usize::MAX) + 1;
                (a, span)
            })
            .collect()
    }

    fn cells_of(&self, h: &HyperRect) -> Result<Vec<CellKey>> {
        let ranges = self.cell_ranges(h);
        let total = ranges.iter().try_fold(1usize, |acc, (_, s)| acc.checked_mul(*s));
        match total {
            Some(t) if t <= self.cells_per_box_cap() => {}
            _ => {
                return Err(Error::Assertion(format!(
                    "{h:?} meets more than 3^{} grid cells",
                    self.dim()
                )))
            }
        }
        let mut keys: Vec<CellKey> = vec![CellKey::new()];
        for (start, span) in ranges {
            keys = keys
                .into_iter()
                .flat_map(|k| {
                    let start = &start;
                    (0..span).map(move |o| {
                        let mut k2 = k.clone();
                        k2.push(start + o);
                        k2
                    })
                })
                .collect();
        }
        Ok(keys)
    }

    fn candidates(&self, cells: &[CellKey]) -> Vec<usize> {
        let mut out: Vec<usize> = cells
            .iter()
            .filter_map(|c| self.cells.get(c))
            .flat_map(|ids| ids.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl IndependenceChecker for GridChecker {
    fn independence_update(&mut self, h: &HyperRect) -> Result<bool> {
        self.check_class(h)?;
        let cells = self.cells_of(h)?;
        if self.candidates(&cells).into_iter().any(|i| self.accepted[i].overlaps(h)) {
            return Ok(false);
        }
        let idx = self.accepted.len();
        let cap = self.cell_load_cap();
        self.max_cells_per_box = self.max_cells_per_box.max(cells.len());
        for c in cells {
            let slot = self.cells.entry(c).or_default();
            slot.push(idx);
            self.max_cell_load = self.max_cell_load.max(slot.len());
            if slot.len() > cap {
                return Err(Error::Assertion(format!(
                    "grid cell holds {} disjoint boxes, above 5^{}",
                    slot.len(),
                    self.cell_sides.len()
                )));
            }
        }
        self.accepted.push(h.clone());
        Ok(true)
    }

    fn enumerate_candidates(&self, h: &HyperRect) -> Result<Vec<usize>> {
        self.check_class(h)?;
        let cells = self.cells_of(h)?;
        Ok(self.candidates(&cells))
    }

    fn accepted(&self) -> &[HyperRect] {
        &self.accepted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x: i64, y: i64, s: i64) -> HyperRect {
        HyperRect::from_bounds([(x, x + s), (y, y + s)]).unwrap()
    }

    #[test]
    fn identical_square_rejected() {
        let mut g = GridChecker::new(vec![Coordinate::one(), Coordinate::one()]).unwrap();
        assert!(g.independence_update(&sq(0, 0, 2)).unwrap());
        assert!(!g.independence_update(&sq(0, 0, 2)).unwrap());
        assert!(g.max_cells_per_box() <= 9);
    }

    #[test]
    fn candidate_count_bounded_by_cells() {
        // Cell side 2: four stored 3x3 squares, each inside its own 2x2 block of cells.
        let mut g = GridChecker::new(vec![Coordinate::from(2), Coordinate::from(2)]).unwrap();
        for (x, y) in [(0, 0), (4, 0), (0, 4), (4, 4)] {
            let b = HyperRect::from_bounds([
                (Coordinate::from(x) + Coordinate::ratio(1, 4), Coordinate::from(x) + Coordinate::ratio(13, 4)),
                (Coordinate::from(y) + Coordinate::ratio(1, 4), Coordinate::from(y) + Coordinate::ratio(13, 4)),
            ])
            .unwrap();
            assert!(g.independence_update(&b).unwrap());
        }
        let q = HyperRect::from_bounds([(2, 5), (2, 5)]).unwrap();
        let cands = g.enumerate_candidates(&q).unwrap();
        assert!(cands.len() <= 4);
        let far = HyperRect::from_bounds([(100, 103), (100, 103)]).unwrap();
        assert!(g.enumerate_candidates(&far).unwrap().is_empty());
    }

    #[test]
    fn rejects_wrong_class() {
        let mut g = GridChecker::new(vec![Coordinate::one()]).unwrap();
        assert!(matches!(
            g.independence_update(&HyperRect::interval(0, 1).unwrap()),
            Err(Error::ClassMismatch(_))
        ));
        assert!(matches!(
            g.independence_update(&HyperRect::interval(0, 3).unwrap()),
            Err(Error::ClassMismatch(_))
        ));
    }
}
