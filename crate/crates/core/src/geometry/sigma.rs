use super::{Coordinate, HyperRect};
use crate::error::{Error, Result};

/// Generator-side description of the true shape. Never used by algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeTag {
    Unspecified,
    Box,
    Ellipsoid {
        center: Vec<Coordinate>,
        semi_axes: Vec<Coordinate>,
    },
}

/// An object sandwiched between two axis-aligned boxes,
/// `in_box ⊆ shape ⊆ out_box`, with `l_j(in_box) ≥ l_j(out_box) / sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaObject {
    out_box: HyperRect,
    in_box: HyperRect,
    sigma: Coordinate,
    shape: ShapeTag,
}

impl SigmaObject {
    pub fn new(out_box: HyperRect, in_box: HyperRect, sigma: Coordinate, shape: ShapeTag) -> Result<Self> {
        if sigma <= Coordinate::one() {
            return Err(Error::InvalidSigma(format!("sigma must exceed 1, got {sigma}")));
        }
        if in_box.dim() != out_box.dim() {
            return Err(Error::DimensionMismatch {
                expected: out_box.dim(),
                actual: in_box.dim(),
            });
        }
        if !in_box.is_inside(&out_box) {
            return Err(Error::InvalidSigma("inner box is not contained in outer box".into()));
        }
        for j in 0..out_box.dim() {
            if &in_box.side(j) * &sigma < out_box.side(j) {
                return Err(Error::InvalidSigma(format!(
                    "axis {j}: inner side {} is below outer side {} / sigma {sigma}",
                    in_box.side(j),
                    out_box.side(j)
                )));
            }
        }
        Ok(SigmaObject {
            out_box,
            in_box,
            sigma,
            shape,
        })
    }

    /// A plain box viewed as a σ-rectangular object for any σ > 1.
    pub fn from_box(b: HyperRect, sigma: Coordinate) -> Result<Self> {
        Self::new(b.clone(), b, sigma, ShapeTag::Box)
    }

    /// Axis-aligned ellipsoid. The inscribed box uses the rational half-width
    /// factor `r = p/1000`, the largest below 1 with `d·r² ≤ 1`, so
    /// `sigma = 1/r > 1` is a rational upper approximation of `√d` (√2 for
    /// ellipses).
    pub fn ellipsoid(center: Vec<Coordinate>, semi_axes: Vec<Coordinate>) -> Result<Self> {
        if center.len() != semi_axes.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                actual: semi_axes.len(),
            });
        }
        if semi_axes.iter().any(|a| a.is_negative() || a.is_zero()) {
            return Err(Error::InvalidSigma("semi-axes must be positive".into()));
        }
        let d = center.len() as i64;
        let q = 1000i64;
        let p = (1..q).rev().find(|p| d * p * p <= q * q).unwrap_or(1);
        let r = Coordinate::ratio(p, q);
        let out = HyperRect::from_bounds(center.iter().zip(&semi_axes).map(|(c, a)| (c - a, c + a)))?;
        let inn = HyperRect::from_bounds(center.iter().zip(&semi_axes).map(|(c, a)| {
            let h = a * &r;
            (c - &h, c + &h)
        }))?;
        let sigma = Coordinate::ratio(q, p);
        Self::new(
            out,
            inn,
            sigma,
            ShapeTag::Ellipsoid {
                center,
                semi_axes,
            },
        )
    }

    pub fn out_box(&self) -> &HyperRect {
        &self.out_box
    }

    pub fn in_box(&self) -> &HyperRect {
        &self.in_box
    }

    pub fn sigma(&self) -> &Coordinate {
        &self.sigma
    }

    pub fn shape(&self) -> &ShapeTag {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.out_box.dim()
    }
}

/// The circumscribing box the algorithms consume in place of the object.
pub fn out_box(f: &SigmaObject) -> HyperRect {
    f.out_box.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_out_box() {
        let e = SigmaObject::ellipsoid(
            vec![Coordinate::one(), Coordinate::one()],
            vec![Coordinate::one(), Coordinate::ratio(1, 2)],
        )
        .unwrap();
        let expect = HyperRect::from_bounds([
            (Coordinate::zero(), Coordinate::from(2)),
            (Coordinate::ratio(1, 2), Coordinate::ratio(3, 2)),
        ])
        .unwrap();
        assert_eq!(out_box(&e), expect);
    }

    #[test]
    fn ellipse_sigma_approximates_sqrt2_from_above() {
        let e = SigmaObject::ellipsoid(
            vec![Coordinate::from(5), Coordinate::from(5)],
            vec![Coordinate::from(3), Coordinate::from(2)],
        )
        .unwrap();
        let s = e.sigma();
        let s2 = s * s;
        assert!(s2 >= Coordinate::from(2));
        assert!(&s2 - &Coordinate::from(2) < Coordinate::ratio(1, 100));
        for j in 0..2 {
            assert!(&e.in_box().side(j) * s >= e.out_box().side(j));
        }
        // Corners of the inner box lie inside the ellipse: sum (h_j/a_j)^2 ≤ 1.
        if let ShapeTag::Ellipsoid { semi_axes, .. } = e.shape() {
            let sum: Coordinate = (0..2)
                .map(|j| {
                    let half = e.in_box().side(j) / Coordinate::from(2);
                    let t = &half / &semi_axes[j];
                    &t * &t
                })
                .sum();
            assert!(sum <= Coordinate::one());
        }
    }

    #[test]
    fn unit_square_with_sigma_near_one() {
        let sq = HyperRect::from_bounds([(0, 1), (0, 1)]).unwrap();
        let f = SigmaObject::from_box(sq.clone(), Coordinate::ratio(101, 100)).unwrap();
        assert_eq!(out_box(&f), sq);
    }

    #[test]
    fn rejects_thin_inner_box() {
        let out = HyperRect::from_bounds([(0, 4)]).unwrap();
        let inn = HyperRect::from_bounds([(1, 2)]).unwrap();
        assert!(SigmaObject::new(out, inn, Coordinate::from(2), ShapeTag::Unspecified).is_err());
    }
}
