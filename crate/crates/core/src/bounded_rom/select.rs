use std::collections::BTreeMap;

use num_bigint::BigInt;
use smallvec::SmallVec;

use crate::classifier::ClassId;

/// Class choice for intervals from exact per-class optima `opt_l[0..=k]`.
///
/// `m` is the first index in `1..=k` maximizing `opt_l`; it is replaced by 0
/// iff `opt_l[0] > k · opt_l[m]`.
pub fn select_class_intervals(opt_l: &[usize], k: u32) -> u32 {
    assert_eq!(opt_l.len(), k as usize + 1, "one optimum per class 0..=k");
    let mut m = 1usize;
    for i in 2..=k as usize {
        if opt_l[i] > opt_l[m] {
            m = i;
        }
    }
    if opt_l[0] as u128 > k as u128 * opt_l[m] as u128 {
        0
    } else {
        m as u32
    }
}

/// Class choice for boxes from greedy estimates.
///
/// `m₁` is the best thin class (first axis on ties), `m₂` the best
/// similar-size class (lexicographically smallest tuple on ties; tuples
/// missing from `lhat_y` count as 0). Picks `m₁` iff
/// `L̂_{m₁} ≥ (k+1)^d / max(D, 1) · L̂_{m₂}`.
pub fn select_class_hyperrects(
    lhat_x: &[usize],
    lhat_y: &BTreeMap<SmallVec<[u32; 2]>, usize>,
    k: u32,
    d: usize,
    d_bound: usize,
) -> ClassId {
    assert_eq!(lhat_x.len(), d, "one estimate per axis");
    let mut m1 = 0;
    for x in 1..d {
        if lhat_x[x] > lhat_x[m1] {
            m1 = x;
        }
    }
    let best_y = lhat_y.values().copied().max().unwrap_or(0);
    let (m2, l2) = if best_y == 0 {
        (std::iter::repeat(1).take(d).collect::<SmallVec<[u32; 2]>>(), 0)
    } else {
        let (y, &v) = lhat_y.iter().find(|(_, &v)| v == best_y).expect("max exists");
        (y.clone(), v)
    };
    let lhs = BigInt::from(lhat_x[m1]) * BigInt::from(d_bound.max(1));
    let rhs = BigInt::from(k + 1).pow(d as u32) * BigInt::from(l2);
    if lhs >= rhs {
        ClassId::Thin(m1)
    } else {
        ClassId::Similar(m2)
    }
}
