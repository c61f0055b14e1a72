//! Size classes with ε = 1.
//!
//! Lengths split into `range_0 = [0, 1]` and `range_i = (2^(i-1), 2^i]` for
//! `i = 1..=k`, `k = ⌈log₂ K⌉`. Intervals map to the index of their range.
//! Boxes with some side in `range_0` form a thin class `X(x)` (x the first
//! such axis); all others form a similar-size class `Y(y)` with
//! `y_j` the range index of side `j`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::geometry::{Coordinate, HyperRect};

/// Parameters shared by every classification call of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassParams {
    k: u32,
    dim: usize,
    bound: Coordinate,
}

/// ⌈log₂ c⌉ for an integer c ≥ 1.
fn ceil_log2(c: &BigInt) -> u32 {
    debug_assert!(c.is_positive());
    if c.is_one() {
        0
    } else {
        (c - 1u32).bits() as u32
    }
}

impl ClassParams {
    /// `k = max(1, ⌈log₂ K⌉)`.
    pub fn new(bounding_side: &Coordinate, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let c = bounding_side.ceil();
        let k = if c.is_positive() { ceil_log2(&c).max(1) } else { 1 };
        Ok(ClassParams {
            k,
            dim,
            bound: Coordinate::pow2(k),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// ε is fixed; exposed for reporting.
    pub fn epsilon(&self) -> u32 {
        1
    }

    /// `d + k^d`, the number of hyperrectangle classes.
    pub fn class_count(&self) -> BigInt {
        BigInt::from(self.dim) + BigInt::from(self.k).pow(self.dim as u32)
    }
}

/// A size-class label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    /// Interval class `S_i`, `i ∈ 0..=k`.
    Interval(u32),
    /// Thin class `S_x`: axis `x` (0-based) is the first with side ≤ 1.
    Thin(usize),
    /// Similar-size class `S_y`, entries in `1..=k`.
    Similar(SmallVec<[u32; 2]>),
}

impl ClassId {
    pub fn similar(y: impl IntoIterator<Item = u32>) -> Self {
        ClassId::Similar(y.into_iter().collect())
    }

    pub fn is_thin(&self) -> bool {
        matches!(self, ClassId::Thin(_))
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Interval(i) => write!(f, "S{i}"),
            ClassId::Thin(x) => write!(f, "X{}", x + 1),
            ClassId::Similar(y) => {
                f.write_str("Y(")?;
                for (i, v) in y.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Range index of a length: 0 for `[0,1]`, else the `i` with `len ∈ (2^(i-1), 2^i]`.
pub fn size_class(len: &Coordinate, params: &ClassParams) -> Result<u32> {
    if len.is_negative() {
        return Err(Error::InvalidParameter(format!("negative length {len}")));
    }
    if len <= &Coordinate::one() {
        return Ok(0);
    }
    if len > &params.bound {
        return Err(Error::LengthOutOfRange {
            len: len.to_string(),
            k: params.k,
        });
    }
    // 2^i ≥ len ⇔ 2^i ≥ ⌈len⌉ since 2^i is an integer.
    Ok(ceil_log2(&len.ceil()))
}

/// Class of an interval by its length.
pub fn interval_class(len: &Coordinate, params: &ClassParams) -> Result<u32> {
    size_class(len, params)
}

/// [`size_class`] of the side of `h` on `axis`.
pub(crate) fn side_class(h: &HyperRect, axis: usize, params: &ClassParams) -> Result<u32> {
    if h.side_cmp(axis, &Coordinate::one()).is_le() {
        return Ok(0);
    }
    if h.side_cmp(axis, &params.bound).is_gt() {
        return Err(Error::LengthOutOfRange {
            len: h.side(axis).to_string(),
            k: params.k,
        });
    }
    Ok(ceil_log2(&h.side_ceil(axis)))
}

/// Class of a box: thin on its first side ≤ 1, otherwise similar-size.
pub fn hyperrect_class(h: &HyperRect, params: &ClassParams) -> Result<ClassId> {
    h.check_dim(params.dim)?;
    let mut y = SmallVec::new();
    for j in 0..h.dim() {
        match side_class(h, j, params)? {
            0 => return Ok(ClassId::Thin(j)),
            c => y.push(c),
        }
    }
    Ok(ClassId::Similar(y))
}

/// Lower side bound `2^(y_j - 1)` per axis of a similar-size class; sides in
/// the class lie in `(bound, 2·bound]`.
pub fn similar_lower_bounds(y: &[u32]) -> Vec<Coordinate> {
    y.iter().map(|&v| Coordinate::pow2(v.saturating_sub(1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: i64, d: usize) -> ClassParams {
        ClassParams::new(&Coordinate::from(k), d).unwrap()
    }

    #[test]
    fn k_from_bounding_side() {
        assert_eq!(params(16, 1).k(), 4);
        assert_eq!(params(17, 1).k(), 5);
        assert_eq!(params(2, 1).k(), 1);
        assert_eq!(params(1, 1).k(), 1);
        assert_eq!(ClassParams::new(&Coordinate::ratio(33, 2), 1).unwrap().k(), 5);
        assert_eq!(params(4, 2).class_count(), BigInt::from(2 + 4));
    }

    #[test]
    fn interval_examples() {
        let p = params(16, 1);
        assert_eq!(interval_class(&Coordinate::ratio(1, 2), &p).unwrap(), 0);
        assert_eq!(interval_class(&Coordinate::ratio(3, 2), &p).unwrap(), 1);
        assert_eq!(interval_class(&Coordinate::one(), &p).unwrap(), 0);
        assert_eq!(interval_class(&Coordinate::from(2), &p).unwrap(), 1);
        assert_eq!(interval_class(&Coordinate::ratio(5, 2), &p).unwrap(), 2);
        assert_eq!(interval_class(&Coordinate::from(16), &p).unwrap(), 4);
        assert!(matches!(
            interval_class(&Coordinate::ratio(33, 2), &p),
            Err(Error::LengthOutOfRange { .. })
        ));
    }

    #[test]
    fn hyperrect_examples() {
        let p = params(16, 2);
        let r = |a: Coordinate, b: Coordinate| {
            HyperRect::from_bounds([(Coordinate::zero(), a), (Coordinate::zero(), b)]).unwrap()
        };
        assert_eq!(
            hyperrect_class(&r(Coordinate::ratio(1, 2), Coordinate::from(5)), &p).unwrap(),
            ClassId::Thin(0)
        );
        assert_eq!(
            hyperrect_class(&r(Coordinate::from(5), Coordinate::ratio(1, 2)), &p).unwrap(),
            ClassId::Thin(1)
        );
        assert_eq!(
            hyperrect_class(&r(Coordinate::ratio(3, 2), Coordinate::from(3)), &p).unwrap(),
            ClassId::similar([1, 2])
        );
        // Side exactly 1 is thin.
        assert_eq!(
            hyperrect_class(&r(Coordinate::from(3), Coordinate::one()), &p).unwrap(),
            ClassId::Thin(1)
        );
        assert_eq!(ClassId::Thin(0).to_string(), "X1");
        assert_eq!(ClassId::similar([1, 2]).to_string(), "Y(1,2)");
    }

    /// Independent check: enumerate the ranges and test membership directly.
    #[test]
    fn matches_range_enumeration() {
        let p = params(1 << 10, 1);
        for num in 0..=4096i64 {
            let len = Coordinate::ratio(num, 4);
            let expect = if len <= Coordinate::one() {
                0
            } else {
                (1..=p.k())
                    .find(|&i| len > Coordinate::pow2(i - 1) && len <= Coordinate::pow2(i))
                    .unwrap()
            };
            assert_eq!(size_class(&len, &p).unwrap(), expect, "len = {len}");
        }
    }
}
