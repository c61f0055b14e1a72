//! Randomized properties: exact arithmetic, checker equivalence, scaling and
//! instance I/O.

use num_bigint::BigInt;
use proptest::prelude::*;

use rom_mis::geometry::io::{parse_instance, write_instance};
use rom_mis::geometry::{is_independent_set, Coordinate, HyperRect, Instance, SigmaObject};
use rom_mis::greedy::{greedy_run, greedy_run_indices, is_maximal};
use rom_mis::rescale::build_scale;
use rom_mis::structures::CheckerKind;

fn coordinate() -> impl Strategy<Value = Coordinate> {
    prop_oneof![
        (any::<i64>(), 1..=i64::MAX).prop_map(|(n, d)| Coordinate::ratio(n, d)),
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Coordinate::ratio(n, d)),
        (any::<i128>(), 0u32..80, 1u64..u64::MAX).prop_map(|(n, e, d)| {
            Coordinate::from_big_ratio(BigInt::from(n) << e as usize, BigInt::from(d))
        }),
    ]
}

fn nonzero() -> impl Strategy<Value = Coordinate> {
    coordinate().prop_filter("nonzero", |c| !c.is_zero())
}

/// Boxes with half-integer corners in `[0, 30]^d`; each side is `side / 2`.
fn boxes(d: usize, side: std::ops::RangeInclusive<i64>, n: usize) -> impl Strategy<Value = Vec<HyperRect>> {
    prop::collection::vec(
        prop::collection::vec((0i64..60, side), d).prop_map(|axes| {
            HyperRect::from_bounds(axes.into_iter().map(|(a, l)| (Coordinate::ratio(a, 2), Coordinate::ratio(a + l, 2))))
                .unwrap()
        }),
        0..=n,
    )
}

fn decisions(seq: &[HyperRect], kind: &CheckerKind) -> Vec<usize> {
    greedy_run_indices(seq, kind).unwrap()
}

proptest! {
    #[test]
    fn arithmetic_is_exact(a in coordinate(), b in coordinate(), c in nonzero()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &c) / &c, a.clone());
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn order_agrees_with_cross_multiplication(a in coordinate(), b in coordinate()) {
        let lhs = a.numer() * b.denom();
        let rhs = b.numer() * a.denom();
        prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
        prop_assert_eq!(a == b, lhs == rhs);
    }

    #[test]
    fn text_form_round_trips(a in coordinate()) {
        let back: Coordinate = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn floor_and_ceil_bracket(a in coordinate()) {
        let f = Coordinate::from_bigint(a.floor());
        let c = Coordinate::from_bigint(a.ceil());
        prop_assert!(f <= a && a <= c);
        prop_assert!(&c - &f <= Coordinate::one());
    }

    #[test]
    fn interval_checker_matches_naive(seq in boxes(1, 0..=12, 60)) {
        prop_assert_eq!(decisions(&seq, &CheckerKind::Interval), decisions(&seq, &CheckerKind::Naive));
    }

    #[test]
    fn thin_checker_matches_naive(seq in boxes(2, 0..=2, 60), axis in 0usize..2) {
        // Sides on the thin axis are at most one; widen the other axis freely.
        let seq: Vec<HyperRect> = seq
            .into_iter()
            .map(|h| h.map_axes(|j, c| if j == axis { c.clone() } else { c * &Coordinate::from(3) }).unwrap())
            .collect();
        let thin = CheckerKind::Thin { axis, width: Coordinate::one() };
        prop_assert_eq!(decisions(&seq, &thin), decisions(&seq, &CheckerKind::Naive));
    }

    #[test]
    fn grid_checker_matches_naive(seq in boxes(2, 5..=8, 60)) {
        // Sides in (2, 4] on both axes: the similar-size class with lower bound 2.
        let grid = CheckerKind::Grid { cell_sides: vec![Coordinate::from(2), Coordinate::from(2)] };
        prop_assert_eq!(decisions(&seq, &grid), decisions(&seq, &CheckerKind::Naive));
    }

    #[test]
    fn greedy_is_independent_and_maximal(seq in boxes(2, 0..=10, 40)) {
        let out = greedy_run(&seq, &CheckerKind::Naive).unwrap();
        prop_assert!(is_independent_set(&out).unwrap());
        prop_assert!(is_maximal(&seq, &out));
    }

    #[test]
    fn scale_is_monotone(points in prop::collection::vec(-50i64..50, 1..20), xs in prop::collection::vec(-50i64..80, 2)) {
        let scale = build_scale(points.into_iter().map(Coordinate::from)).unwrap();
        let (a, b) = (Coordinate::from(xs[0].min(xs[1])), Coordinate::from(xs[0].max(xs[1])));
        prop_assume!(a >= *scale.first());
        let (sa, sb) = (scale.apply(&a).unwrap(), scale.apply(&b).unwrap());
        prop_assert!(sa <= sb);
        if a < b && b <= *scale.last() {
            prop_assert!(sa < sb);
        }
        prop_assert!(sb <= Coordinate::from(scale.len()));
    }

    #[test]
    fn scale_preserves_intersections(
        points in prop::collection::vec(0i64..100, 1..15),
        seq in prop::collection::vec((0i64..200, 0i64..60), 2..12),
    ) {
        let scale = build_scale(points.into_iter().map(|p| Coordinate::ratio(p, 2))).unwrap();
        let ivs: Vec<HyperRect> = seq
            .iter()
            .map(|&(a, l)| HyperRect::interval(Coordinate::ratio(a, 4), Coordinate::ratio(a + l, 4)).unwrap())
            .filter(|h| scale.spans(h.lo(0)))
            .collect();
        let scaled: Vec<HyperRect> = ivs.iter().map(|h| h.map_axes(|_, c| scale.apply(c).unwrap()).unwrap()).collect();
        for i in 0..ivs.len() {
            for j in 0..ivs.len() {
                prop_assert_eq!(
                    ivs[i].intersects(&ivs[j]).unwrap(),
                    scaled[i].intersects(&scaled[j]).unwrap()
                );
            }
        }
    }

    #[test]
    fn box_instances_round_trip(seq in boxes(3, 0..=9, 20)) {
        prop_assume!(!seq.is_empty());
        let inst = Instance::from_boxes(3, seq, Some(Coordinate::from(40))).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn sigma_instances_round_trip(centers in prop::collection::vec((coordinate(), coordinate()), 1..8)) {
        let objs: Vec<SigmaObject> = centers
            .into_iter()
            .map(|(x, y)| SigmaObject::ellipsoid(vec![x, y], vec![Coordinate::from(2), Coordinate::ratio(3, 2)]).unwrap())
            .collect();
        let inst = Instance::from_sigma(2, objs, None).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        // The text form carries the boxes and σ, not the shape tag.
        prop_assert_eq!(write_instance(&back), text);
        let (a, b) = (inst.sigma_objects().unwrap(), back.sigma_objects().unwrap());
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            prop_assert_eq!(x.out_box(), y.out_box());
            prop_assert_eq!(x.in_box(), y.in_box());
            prop_assert_eq!(x.sigma(), y.sigma());
        }
    }
}
