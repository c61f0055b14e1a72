use crate::error::{Error, Result};
use crate::geometry::Coordinate;

/// The piecewise-linear map `s` through breakpoints `p_1 < … < p_t`.
///
/// `s(p_i) = i`, linear between consecutive breakpoints, and `s(x) = t`
/// for `x > p_t`. Undefined below `p_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scale {
    breakpoints: Vec<Coordinate>,
}

impl Scale {
    /// From already sorted, duplicate-free breakpoints.
    pub fn from_sorted(breakpoints: Vec<Coordinate>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::Empty("scale breakpoints"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("breakpoints must be strictly increasing".into()));
        }
        Ok(Scale { breakpoints })
    }

    pub fn breakpoints(&self) -> &[Coordinate] {
        &self.breakpoints
    }

    /// Number of breakpoints `t`.
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &Coordinate {
        &self.breakpoints[0]
    }

    pub fn last(&self) -> &Coordinate {
        &self.breakpoints[self.breakpoints.len() - 1]
    }

    /// `p_1 ≤ x ≤ p_t`.
    pub fn spans(&self, x: &Coordinate) -> bool {
        x >= self.first() && x <= self.last()
    }

    pub fn apply(&self, x: &Coordinate) -> Result<Coordinate> {
        apply_scale(self, x)
    }
}

/// Sorted distinct values of `points`.
pub fn build_scale(points: impl IntoIterator<Item = Coordinate>) -> Result<Scale> {
    let mut v: Vec<Coordinate> = points.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    Scale::from_sorted(v)
}

pub fn apply_scale(scale: &Scale, x: &Coordinate) -> Result<Coordinate> {
    let p = &scale.breakpoints;
    if x < &p[0] {
        return Err(Error::ScaleDomain(format!("{x} is below the first breakpoint {}", p[0])));
    }
    match p.binary_search(x) {
        Ok(i) => Ok(Coordinate::from(i + 1)),
        Err(i) if i == p.len() => Ok(Coordinate::from(p.len())),
        Err(i) => {
            let (a, b) = (&p[i - 1], &p[i]);
            Ok(Coordinate::from(i) + (x - a) / (b - a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Coordinate {
        Coordinate::from(v)
    }

    #[test]
    fn build_dedups_and_sorts() {
        let s = build_scale([3, 1, 3, 7].map(c)).unwrap();
        assert_eq!(s.breakpoints(), &[c(1), c(3), c(7)]);
        assert_eq!(build_scale([c(5)]).unwrap().len(), 1);
        assert!(build_scale(std::iter::empty()).is_err());
    }

    #[test]
    fn apply_cases() {
        let s = build_scale([1, 3, 7].map(c)).unwrap();
        assert_eq!(apply_scale(&s, &c(3)).unwrap(), c(2));
        assert_eq!(apply_scale(&s, &c(2)).unwrap(), Coordinate::ratio(3, 2));
        assert_eq!(apply_scale(&s, &c(100)).unwrap(), c(3));
        assert_eq!(apply_scale(&s, &c(1)).unwrap(), c(1));
        assert_eq!(apply_scale(&s, &c(4)).unwrap(), Coordinate::ratio(9, 4));
        assert!(matches!(apply_scale(&s, &c(0)), Err(Error::ScaleDomain(_))));
    }

    #[test]
    fn monotone() {
        let s = build_scale([0, 2, 5, 11, 12].map(c)).unwrap();
        let xs: Vec<Coordinate> = (0..60).map(|i| Coordinate::ratio(i, 4)).collect();
        for w in xs.windows(2) {
            let (a, b) = (s.apply(&w[0]).unwrap(), s.apply(&w[1]).unwrap());
            if s.spans(&w[1]) {
                assert!(a < b);
            } else {
                assert!(a <= b);
            }
        }
    }
}
