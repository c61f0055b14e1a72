use std::collections::BTreeMap;

use crate::geometry::Coordinate;

/// Ordered multiset of coordinates with logarithmic insert and neighbour
/// lookups. Collects left endpoints during scale preparation.
#[derive(Clone, Debug, Default)]
pub struct OrderedSet {
    counts: BTreeMap<Coordinate, usize>,
    len: usize,
}

impl OrderedSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: Coordinate) {
        *self.counts.entry(x).or_insert(0) += 1;
        self.len += 1;
    }

    /// Number of stored values, with multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn multiplicity(&self, x: &Coordinate) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    /// Largest stored value `≤ x`.
    pub fn predecessor(&self, x: &Coordinate) -> Option<&Coordinate> {
        self.counts.range(..=x.clone()).next_back().map(|(k, _)| k)
    }

    /// Smallest stored value `≥ x`.
    pub fn successor(&self, x: &Coordinate) -> Option<&Coordinate> {
        self.counts.range(x.clone()..).next().map(|(k, _)| k)
    }

    pub fn min(&self) -> Option<&Coordinate> {
        self.counts.keys().next()
    }

    pub fn max(&self) -> Option<&Coordinate> {
        self.counts.keys().next_back()
    }

    /// Distinct values in increasing order.
    pub fn iter_distinct(&self) -> impl Iterator<Item = &Coordinate> {
        self.counts.keys()
    }

    pub fn into_distinct(self) -> Vec<Coordinate> {
        self.counts.into_keys().collect()
    }
}

impl FromIterator<Coordinate> for OrderedSet {
    fn from_iter<I: IntoIterator<Item = Coordinate>>(iter: I) -> Self {
        let mut s = OrderedSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbours_and_multiplicity() {
        let s: OrderedSet = [3, 1, 3, 7].into_iter().map(Coordinate::from).collect();
        assert_eq!(s.len(), 4);
        assert_eq!(s.distinct(), 3);
        assert_eq!(s.multiplicity(&Coordinate::from(3)), 2);
        assert_eq!(s.predecessor(&Coordinate::from(5)), Some(&Coordinate::from(3)));
        assert_eq!(s.successor(&Coordinate::from(5)), Some(&Coordinate::from(7)));
        assert_eq!(s.predecessor(&Coordinate::from(0)), None);
        assert_eq!(s.successor(&Coordinate::from(7)), Some(&Coordinate::from(7)));
    }
}
