//! The bounded-instance algorithms: class choice on planted instances,
//! phase discipline, estimate quality and protocol handling.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng as _;

use rom_mis::bounded_rom::{
    run_bounded_hyperrects, run_bounded_intervals, select_class_intervals, unit_cell_load, BoundedHyperrectRunner,
    BoundedInstanceMeta, BoundedIntervalRunner, Phase,
};
use rom_mis::classifier::{hyperrect_class, interval_class, ClassId, ClassParams};
use rom_mis::geometry::{is_independent_set, Coordinate, HyperRect};
use rom_mis::greedy::greedy_run;
use rom_mis::harness::generators::{gen_cross, gen_planted_classes, gen_sparse_bounded, left_endpoints_per_cell};
use rom_mis::online::OnlineSelector;
use rom_mis::oracle::{brute_force_mis, interval_opt_size};
use rom_mis::rng::{derive_seed, rng_from_seed, Rng};
use rom_mis::structures::CheckerKind;
use rom_mis::Error;

fn shuffled(v: &[HyperRect], rng: &mut Rng) -> Vec<HyperRect> {
    let mut v = v.to_vec();
    v.shuffle(rng);
    v
}

fn meta(k: i64, d_bound: usize, n: usize, dim: usize) -> BoundedInstanceMeta {
    BoundedInstanceMeta::new(Coordinate::from(k), d_bound, n, dim)
}

fn picked(stream: &[HyperRect], selected: &[usize]) -> Vec<HyperRect> {
    selected.iter().map(|&p| stream[p].clone()).collect()
}

#[test]
fn planted_interval_class_is_chosen() {
    let inst = gen_planted_classes(1, 5).unwrap();
    let boxes = inst.out_boxes();
    let mut rng = rng_from_seed(11);
    let hits = (0..1000)
        .filter(|_| {
            let s = shuffled(&boxes, &mut rng);
            let out = run_bounded_intervals(&s, meta(1024, unit_cell_load(&s), s.len(), 1)).unwrap();
            out.chosen == Some(ClassId::Interval(3))
        })
        .count();
    assert!(hits >= 950, "class 3 chosen in {hits}/1000 trials");
}

#[test]
fn planted_similar_class_is_chosen() {
    let inst = gen_planted_classes(2, 6).unwrap();
    let boxes = inst.out_boxes();
    let mut rng = rng_from_seed(12);
    let hits = (0..1000)
        .filter(|_| {
            let s = shuffled(&boxes, &mut rng);
            let out = run_bounded_hyperrects(&s, meta(1024, unit_cell_load(&s), s.len(), 2)).unwrap();
            out.chosen == Some(ClassId::similar([2, 2]))
        })
        .count();
    assert!(hits >= 950, "Y(2,2) chosen in {hits}/1000 trials");
}

#[test]
fn interval_selection_rule_examples() {
    assert_eq!(select_class_intervals(&[50, 3, 4], 2), 0);
    assert_eq!(select_class_intervals(&[7, 3, 4], 2), 2);
    assert_eq!(select_class_intervals(&[0, 0, 0], 2), 1);
    assert_eq!(select_class_intervals(&[8, 4, 4], 2), 1);
}

fn random_boxes(rng: &mut Rng, n: usize, d: usize, k: i64) -> Vec<HyperRect> {
    let sides = [
        Coordinate::ratio(1, 2),
        Coordinate::one(),
        Coordinate::ratio(3, 2),
        Coordinate::from(2),
        Coordinate::from(3),
        Coordinate::from(5),
    ];
    (0..n)
        .map(|_| {
            HyperRect::from_bounds((0..d).map(|_| {
                let s = sides.choose(rng).unwrap().clone();
                let room = (Coordinate::from(k) - &s).floor_i64().unwrap();
                let a = Coordinate::ratio(rng.gen_range(0..=2 * room), 2);
                let b = &a + &s;
                (a, b)
            }))
            .unwrap()
        })
        .collect()
}

#[test]
fn no_selection_while_observing_and_action_stays_in_class() {
    for seed in 0..200 {
        let mut rng = rng_from_seed(derive_seed(13, seed));
        let d = rng.gen_range(1..=2);
        let n = rng.gen_range(2..80);
        let s = random_boxes(&mut rng, n, d, 24);
        let m = meta(24, unit_cell_load(&s), n, d);
        let params = ClassParams::new(&Coordinate::from(24), d).unwrap();
        let out = if d == 1 {
            run_bounded_intervals(&s, m.clone()).unwrap()
        } else {
            run_bounded_hyperrects(&s, m.clone()).unwrap()
        };
        let chosen = out.chosen.clone().expect("observation always ends");
        assert!(out.selected.iter().all(|&p| p >= m.observation_len()), "seed {seed}");
        assert!(!out.selected.is_empty(), "seed {seed}: empty output");
        assert!(is_independent_set(&picked(&s, &out.selected)).unwrap());
        for &p in &out.selected {
            let class = if d == 1 {
                ClassId::Interval(interval_class(&s[p].side_length(0).unwrap(), &params).unwrap())
            } else {
                hyperrect_class(&s[p], &params).unwrap()
            };
            let is_fallback = out.fallback_used && p == n - 1;
            assert!(class == chosen || is_fallback, "seed {seed}: {class} selected, m = {chosen}");
        }
    }
}

#[test]
fn two_arrivals_always_select_one() {
    let pairs = [
        (HyperRect::interval(0, 1).unwrap(), HyperRect::interval(5, 9).unwrap()),
        (HyperRect::interval(0, 1).unwrap(), HyperRect::interval(0, 1).unwrap()),
        (HyperRect::interval(0, 8).unwrap(), HyperRect::interval(1, 2).unwrap()),
    ];
    for (a, b) in pairs {
        for s in [vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]] {
            let out = run_bounded_intervals(&s, meta(16, unit_cell_load(&s), 2, 1)).unwrap();
            assert_eq!(out.selected, vec![1]);
        }
    }
    // Different classes: only the fallback can select the second arrival.
    let s = [HyperRect::interval(0, 8).unwrap(), HyperRect::interval(10, 11).unwrap()];
    let out = run_bounded_intervals(&s, meta(16, 0, 2, 1)).unwrap();
    assert!(out.fallback_used);
}

#[test]
fn estimates_are_sandwiched_by_observed_optima() {
    for seed in 0..60 {
        let mut rng = rng_from_seed(derive_seed(14, seed));
        let n = 40;
        let s = random_boxes(&mut rng, n, 2, 16);
        let m = meta(16, unit_cell_load(&s), n, 2);
        let params = ClassParams::new(&Coordinate::from(16), 2).unwrap();
        let mut runner = BoundedHyperrectRunner::new(m.clone()).unwrap();
        for h in &s[..m.observation_len()] {
            runner.offer(h).unwrap();
        }
        assert_eq!(runner.phase(), Phase::Action);
        let mut by_class: HashMap<ClassId, Vec<HyperRect>> = HashMap::new();
        for h in &s[..m.observation_len()] {
            by_class.entry(hyperrect_class(h, &params).unwrap()).or_default().push(h.clone());
        }
        let estimates = runner.estimates();
        for (class, members) in &by_class {
            let lhat = estimates[class];
            let opt = brute_force_mis(members).unwrap().0;
            assert_eq!(lhat, greedy_run(members, &CheckerKind::Naive).unwrap().len());
            assert!(lhat <= opt);
            match class {
                ClassId::Thin(x) => {
                    let d = left_endpoints_per_cell(members, *x);
                    assert!(opt <= 3 * d * lhat, "seed {seed} {class}: opt {opt}, L̂ {lhat}, D {d}");
                }
                _ => assert!(opt <= 16 * lhat, "seed {seed} {class}: opt {opt}, L̂ {lhat}"),
            }
        }
    }
}

/// Fraction of orders in which some class with a large optimum splits badly
/// between the two halves.
#[test]
fn large_classes_split_evenly() {
    // K = 2^13 gives k = 13; class 1 holds 4000 disjoint intervals, above
    // the 10³·log₂ k threshold.
    let k_side = 1 << 13;
    let params = ClassParams::new(&Coordinate::from(k_side), 1).unwrap();
    let k = params.k();
    let mut boxes: Vec<HyperRect> = (0..4000)
        .map(|i| HyperRect::interval(Coordinate::from(2 * i), Coordinate::ratio(4 * i + 3, 2)).unwrap())
        .collect();
    let mut rng = rng_from_seed(15);
    boxes.extend(random_boxes(&mut rng, 500, 1, k_side));
    let classify = |h: &HyperRect| interval_class(&h.side_length(0).unwrap(), &params).unwrap() as usize;
    let split = |v: &[HyperRect]| -> Vec<Vec<HyperRect>> {
        let mut out = vec![Vec::new(); k as usize + 1];
        for h in v {
            out[classify(h)].push(h.clone());
        }
        out
    };
    let whole: Vec<usize> = split(&boxes).iter().map(|c| interval_opt_size(c)).collect();
    let threshold = 1000.0 * (k as f64).log2();
    assert!(whole.iter().any(|&o| o as f64 >= threshold));
    let trials = 200;
    let bad = (0..trials)
        .filter(|_| {
            let s = shuffled(&boxes, &mut rng);
            let (first, second) = s.split_at(s.len().div_ceil(2));
            let (l, r) = (split(first), split(second));
            (0..=k as usize).any(|i| {
                whole[i] as f64 >= threshold && {
                    let lo = interval_opt_size(&l[i]).min(interval_opt_size(&r[i]));
                    (lo as f64) < 0.9 * whole[i] as f64 / 2.0
                }
            })
        })
        .count();
    let rate = bad as f64 / trials as f64;
    assert!(rate <= 3.0 / k as f64, "bad split in {bad}/{trials} orders");
}

#[test]
fn accelerated_and_pairwise_runners_agree() {
    for seed in 0..40 {
        let mut rng = rng_from_seed(seed);
        let mut boxes = gen_sparse_bounded(300, 2, 120, 3, seed).unwrap().out_boxes();
        boxes.extend(random_boxes(&mut rng, 200, 2, 120));
        let s = shuffled(&boxes, &mut rng);
        let m = meta(120, unit_cell_load(&s), s.len(), 2);
        let run = |accelerated| {
            let mut r = BoundedHyperrectRunner::with_backend(m.clone(), accelerated).unwrap();
            let decisions: Vec<bool> = s.iter().map(|h| r.offer(h).unwrap()).collect();
            (decisions, r.finish().unwrap())
        };
        assert_eq!(run(true), run(false), "seed {seed}");
    }
}

#[test]
fn fixed_order_gives_fixed_output() {
    let inst = gen_sparse_bounded(200, 1, 120, 2, 3).unwrap();
    let s = shuffled(&inst.out_boxes(), &mut rng_from_seed(4));
    let m = meta(120, unit_cell_load(&s), s.len(), 1);
    assert_eq!(run_bounded_intervals(&s, m.clone()).unwrap(), run_bounded_intervals(&s, m).unwrap());
}

#[test]
fn cross_instance_output_is_independent() {
    let inst = gen_cross(40).unwrap();
    for seed in 0..50 {
        let s = shuffled(&inst.out_boxes(), &mut rng_from_seed(seed));
        let k = inst.declared_k().cloned().unwrap();
        let out = run_bounded_hyperrects(&s, BoundedInstanceMeta::new(k, unit_cell_load(&s), s.len(), 2)).unwrap();
        assert!(!out.selected.is_empty());
        assert!(is_independent_set(&picked(&s, &out.selected)).unwrap());
    }
}

#[test]
fn protocol_violations_are_errors() {
    let s = vec![HyperRect::interval(0, 1).unwrap(); 3];
    assert!(matches!(run_bounded_intervals(&s, meta(4, 0, 2, 1)), Err(Error::Protocol(_))));
    assert!(matches!(run_bounded_hyperrects(&s, meta(4, 0, 4, 1)), Err(Error::Protocol(_))));

    let mut r = BoundedIntervalRunner::new(meta(4, 0, 2, 1)).unwrap();
    r.offer(&s[0]).unwrap();
    assert!(matches!(r.clone().finish(), Err(Error::Protocol(_))));
    r.offer(&s[1]).unwrap();
    assert!(matches!(r.offer(&s[2]), Err(Error::Protocol(_))));

    let square = HyperRect::from_bounds([(0, 1), (0, 1)]).unwrap();
    let mut r = BoundedIntervalRunner::new(meta(4, 0, 2, 1)).unwrap();
    assert!(matches!(r.offer(&square), Err(Error::DimensionMismatch { .. })));
    assert!(BoundedIntervalRunner::new(meta(4, 0, 2, 2)).is_err());

    let mut r = BoundedIntervalRunner::new(meta(4, 0, 2, 1)).unwrap();
    let too_long = HyperRect::interval(0, 9).unwrap();
    assert!(matches!(r.offer(&too_long), Err(Error::LengthOutOfRange { .. })));
}
