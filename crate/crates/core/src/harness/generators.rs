use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::bounded_rom::unit_cell_load;
use crate::error::{Error, Result};
use crate::geometry::{Coordinate, HyperRect, Instance, SigmaObject};
use crate::rng::{rng_from_seed, Rng};

/// Instance families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// √n disjoint unit intervals plus `n − √n` copies of one interval
    /// meeting all of them.
    GreedyLb,
    /// Intervals (or boxes thin on axis 0) of length ≤ 1 with at most `D`
    /// left endpoints per unit cell.
    SparseBounded,
    /// Boxes with integer sides in `[2, 2Δ]`, so side ratios are within `Δ`.
    SimilarSize,
    /// One size class holding 100 disjoint objects, two objects in a few
    /// other classes.
    PlantedClasses,
    /// `t` disjoint unit boxes at coordinates near `2^bits`, plus noise
    /// objects each containing a planted box.
    HugeCoordinates,
    /// `n/2` tall thin and `n/2` short wide rectangles, every tall one
    /// crossing every wide one.
    CrossFig5,
    /// Axis-aligned ellipses as σ-rectangular objects.
    Ellipses,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::GreedyLb,
        Family::SparseBounded,
        Family::SimilarSize,
        Family::PlantedClasses,
        Family::HugeCoordinates,
        Family::CrossFig5,
        Family::Ellipses,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GreedyLb => "greedy-lb",
            Family::SparseBounded => "sparse-bounded",
            Family::SimilarSize => "similar-size",
            Family::PlantedClasses => "planted-classes",
            Family::HugeCoordinates => "huge-coordinates",
            Family::CrossFig5 => "cross",
            Family::Ellipses => "ellipses",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::InvalidParameter(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Family plus its parameters. Unused parameters are ignored; missing ones
/// take per-family defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub k_side: Option<u64>,
    pub d_bound: Option<usize>,
    pub delta: Option<u32>,
    pub sigma: Option<Coordinate>,
    pub t: Option<usize>,
    pub bits: Option<u32>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            d: 1,
            k_side: None,
            d_bound: None,
            delta: None,
            sigma: None,
            t: None,
            bits: None,
            seed,
        }
    }

    pub fn dim(mut self, d: usize) -> Self {
        self.d = d;
        self
    }
}

/// Builds the instance described by `spec` and runs its verifier.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    let s = spec;
    let inst = match s.family {
        Family::GreedyLb => gen_greedy_lb(s.n),
        Family::SparseBounded => gen_sparse_bounded(
            s.n,
            s.d,
            s.k_side.unwrap_or(s.n.max(2) as u64),
            s.d_bound.unwrap_or(3),
            s.seed,
        ),
        Family::SimilarSize => gen_similar_size(s.n, s.d, s.delta.unwrap_or(2), s.k_side, s.seed),
        Family::PlantedClasses => gen_planted_classes(s.d, s.seed),
        Family::HugeCoordinates => gen_huge_coordinates(
            s.n,
            s.t.unwrap_or_else(|| (s.n as f64).sqrt() as usize).max(1),
            s.d,
            s.bits.unwrap_or(100),
            s.seed,
        ),
        Family::CrossFig5 => gen_cross(s.n),
        Family::Ellipses => gen_ellipses(s.n, s.d, s.k_side, s.sigma.clone(), s.seed),
    }?;
    verify_family(s.family, &inst, s)?;
    Ok(inst)
}

fn unit_interval(a: i64) -> HyperRect {
    HyperRect::interval(a, a + 1).expect("a ≤ a + 1")
}

/// `n` must be a perfect square ≥ 4. Planted optimum `√n`.
pub fn gen_greedy_lb(n: usize) -> Result<Instance> {
    let s = (n as f64).sqrt().round() as usize;
    if n < 4 || s * s != n {
        return Err(Error::InvalidParameter(format!("greedy-lb needs a perfect square n ≥ 4, got {n}")));
    }
    let mut v: Vec<HyperRect> = (0..s as i64).map(|i| unit_interval(2 * i)).collect();
    let blocker = HyperRect::interval(0, 2 * s as i64 - 1)?;
    v.extend(std::iter::repeat(blocker).take(n - s));
    Ok(Instance::from_boxes(1, v, Some(Coordinate::from(2 * s)))?.with_planted_opt(s))
}

/// Random rational in `(0, 1)` with denominator 64.
fn frac(rng: &mut Rng) -> Coordinate {
    Coordinate::ratio(rng.gen_range(1..64), 64)
}

/// Axis 0 has length ≤ 1 and a non-integer left endpoint; each unit cell
/// `[i, i+1)` of axis 0 receives at most `D` left endpoints. Other axes are
/// random subintervals of `[0, K]`.
pub fn gen_sparse_bounded(n: usize, d: usize, k_side: u64, d_bound: usize, seed: u64) -> Result<Instance> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if k_side < 2 || d_bound == 0 || (n as u128) > (k_side as u128 - 1) * d_bound as u128 {
        return Err(Error::InvalidParameter(format!(
            "sparse-bounded cannot place n = {n} with K = {k_side}, D = {d_bound}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    // Cells 0..K-1 keep hi ≤ K for lengths ≤ 1.
    let mut slots: Vec<u64> = (0..k_side - 1).flat_map(|c| std::iter::repeat(c).take(d_bound)).collect();
    let (chosen, _) = slots.partial_shuffle(&mut rng, n);
    let k = Coordinate::from(k_side);
    let mut v = Vec::with_capacity(n);
    for &cell in chosen.iter() {
        let lo = Coordinate::from(cell) + frac(&mut rng);
        let hi = std::cmp::min(&lo + &frac(&mut rng), k.clone());
        let mut bounds = vec![(lo, hi)];
        for _ in 1..d {
            let a = rng.gen_range(0..k_side);
            let b = rng.gen_range(a..=k_side);
            bounds.push((Coordinate::from(a), Coordinate::from(b)));
        }
        v.push(HyperRect::from_bounds(bounds)?);
    }
    Instance::from_boxes(d, v, Some(k))
}

/// Integer sides in `[2, 2Δ]` placed uniformly in `[0, K]^d`.
pub fn gen_similar_size(n: usize, d: usize, delta: u32, k_side: Option<u64>, seed: u64) -> Result<Instance> {
    if delta < 1 {
        return Err(Error::InvalidParameter("similar-size needs Δ ≥ 1".into()));
    }
    let max_len = 2 * delta as u64;
    let per_axis = (n as f64).powf(1.0 / d.max(1) as f64).ceil() as u64;
    let k_side = k_side.unwrap_or(2 * max_len * per_axis.max(1));
    if k_side < max_len {
        return Err(Error::InvalidParameter(format!("K = {k_side} is below the largest side {max_len}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        let bounds = (0..d).map(|_| {
            let len = rng.gen_range(2..=max_len);
            let a = rng.gen_range(0..=k_side - len);
            (Coordinate::from(a), Coordinate::from(a + len))
        });
        v.push(HyperRect::from_bounds(bounds)?);
    }
    Instance::from_boxes(d, v, Some(Coordinate::from(k_side)))
}

/// `K = 1024`. For `d = 1` class 3 holds 100 disjoint intervals of length 5
/// and every other class two random intervals. For `d = 2` class `Y(2,2)`
/// holds 100 disjoint 3×3 squares and a few other classes two boxes each.
pub fn gen_planted_classes(d: usize, seed: u64) -> Result<Instance> {
    const K: i64 = 1024;
    let mut rng = rng_from_seed(seed);
    let mut v = Vec::new();
    let noise = |len: &Coordinate, rng: &mut Rng| -> (Coordinate, Coordinate) {
        let room = (Coordinate::from(K) - len).floor_i64().expect("small");
        let a = Coordinate::from(rng.gen_range(0..=room));
        let b = &a + len;
        (a, b)
    };
    match d {
        1 => {
            v.extend((0..100).map(|i| HyperRect::interval(10 * i, 10 * i + 5).unwrap()));
            for class in (0..=10u32).filter(|&c| c != 3) {
                let len = if class == 0 {
                    Coordinate::ratio(1, 2)
                } else {
                    Coordinate::pow2(class)
                };
                for _ in 0..2 {
                    let (a, b) = noise(&len, &mut rng);
                    v.push(HyperRect::interval(a, b)?);
                }
            }
        }
        2 => {
            for a in 0..10 {
                for b in 0..10 {
                    v.push(HyperRect::from_bounds([(10 * a, 10 * a + 3), (10 * b, 10 * b + 3)])?);
                }
            }
            let shapes: [(Coordinate, Coordinate); 6] = [
                (Coordinate::ratio(1, 2), Coordinate::from(40)),
                (Coordinate::from(40), Coordinate::ratio(1, 2)),
                (Coordinate::from(6), Coordinate::from(6)),
                (Coordinate::from(3), Coordinate::from(100)),
                (Coordinate::from(64), Coordinate::from(2)),
                (Coordinate::from(512), Coordinate::from(512)),
            ];
            for (w, h) in &shapes {
                for _ in 0..2 {
                    let x = noise(w, &mut rng);
                    let y = noise(h, &mut rng);
                    v.push(HyperRect::from_bounds([x, y])?);
                }
            }
        }
        _ => {
            return Err(Error::InvalidParameter(format!("planted-classes supports d ∈ {{1, 2}}, got {d}")));
        }
    }
    Instance::from_boxes(d, v, Some(Coordinate::from(K)))
}

/// `t` disjoint unit boxes near `2^bits` (listed first) plus `n − t` noise
/// boxes, each a superset of one planted box stretched by up to `2^bits`
/// per side. Any independent set contains at most one object per planted
/// box, so the optimum is exactly `t`.
pub fn gen_huge_coordinates(n: usize, t: usize, d: usize, bits: u32, seed: u64) -> Result<Instance> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if t == 0 || t > n {
        return Err(Error::InvalidParameter(format!("need 1 ≤ t ≤ n, got t = {t}, n = {n}")));
    }
    if bits < 8 || (1u128 << bits.min(127)) < 4 * t as u128 {
        return Err(Error::InvalidParameter(format!("2^{bits} is too small for t = {t}")));
    }
    let mut rng = rng_from_seed(seed);
    let base = Coordinate::pow2(bits);
    // t slots of width 2^bits / t starting at 2^bits; one unit box per slot.
    let slot = Coordinate::from_bigint(num_bigint::BigInt::from(1u8) << bits) / Coordinate::from(t);
    let slot_room = (&slot - &Coordinate::from(2)).floor();
    let random_below = |rng: &mut Rng, bound: &num_bigint::BigInt| -> num_bigint::BigInt {
        use num_bigint::RandBigInt;
        if bound <= &num_bigint::BigInt::from(0) {
            num_bigint::BigInt::from(0)
        } else {
            rng.gen_bigint_range(&num_bigint::BigInt::from(0), bound)
        }
    };
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut p: Vec<usize> = (0..t).collect();
        if j > 0 {
            p.shuffle(&mut rng);
        }
        perms.push(p);
    }
    let mut planted = Vec::with_capacity(t);
    for i in 0..t {
        let bounds = (0..d).map(|j| {
            let s = perms[j][i];
            let off = (&slot * &Coordinate::from(s)).floor() + random_below(&mut rng, &slot_room);
            let lo = &base + &Coordinate::from_bigint(off);
            let hi = &lo + &Coordinate::one();
            (lo, hi)
        });
        planted.push(HyperRect::from_bounds(bounds.collect::<Vec<_>>())?);
    }
    let mut v = planted.clone();
    for _ in t..n {
        let p = &planted[rng.gen_range(0..t)];
        let bounds = (0..d).map(|j| {
            let mut stretch = || {
                let e = rng.gen_range(0..=bits);
                Coordinate::from_bigint(random_below(&mut rng, &(num_bigint::BigInt::from(1u8) << e)))
            };
            let lo = p.lo(j) - &stretch();
            let hi = p.hi(j) + &stretch();
            (lo, hi)
        });
        v.push(HyperRect::from_bounds(bounds.collect::<Vec<_>>())?);
    }
    Ok(Instance::from_boxes(d, v, Some(Coordinate::pow2(bits + 2)))?.with_planted_opt(t))
}

/// `n` even. Tall `[2i + 1/4, 2i + 3/4] × [0, n]` and wide
/// `[0, n] × [2i + 1/4, 2i + 3/4]` for `i < n/2`; optimum `n/2`.
pub fn gen_cross(n: usize) -> Result<Instance> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!("cross needs an even n ≥ 2, got {n}")));
    }
    let h = (n / 2) as i64;
    let full = (Coordinate::zero(), Coordinate::from(n));
    let thin = |i: i64| (Coordinate::ratio(8 * i + 1, 4), Coordinate::ratio(8 * i + 3, 4));
    let mut v = Vec::with_capacity(n);
    for i in 0..h {
        v.push(HyperRect::from_bounds([thin(i), full.clone()])?);
    }
    for i in 0..h {
        v.push(HyperRect::from_bounds([full.clone(), thin(i)])?);
    }
    Ok(Instance::from_boxes(2, v, Some(Coordinate::from(n)))?.with_planted_opt(n / 2))
}

/// Ellipses (ellipsoids for `d ≠ 2`) with semi-axes in `{1, 3/2, 2}` and
/// centers on a quarter grid. `sigma`, if given, replaces the recorded σ
/// and must be at least the shape's own.
pub fn gen_ellipses(n: usize, d: usize, k_side: Option<u64>, sigma: Option<Coordinate>, seed: u64) -> Result<Instance> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let per_axis = (n as f64).powf(1.0 / d as f64).ceil() as u64;
    let k_side = k_side.unwrap_or(4 * per_axis.max(1) + 4);
    if k_side < 5 {
        return Err(Error::InvalidParameter(format!("ellipses need K ≥ 5, got {k_side}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        let center: Vec<Coordinate> = (0..d)
            .map(|_| Coordinate::ratio(rng.gen_range(8..=4 * (k_side as i64 - 2)), 4))
            .collect();
        let semi: Vec<Coordinate> = (0..d).map(|_| Coordinate::ratio(rng.gen_range(2..=4), 2)).collect();
        let mut f = SigmaObject::ellipsoid(center, semi)?;
        if let Some(s) = &sigma {
            f = SigmaObject::new(f.out_box().clone(), f.in_box().clone(), s.clone(), f.shape().clone())?;
        }
        v.push(f);
    }
    Instance::from_sigma(d, v, Some(Coordinate::from(k_side)))
}

/// `n` intervals with integer endpoints: left endpoint uniform in
/// `[0, max_coord)`, length uniform in `[0, max_len]`. No bounding box.
pub fn random_intervals(n: usize, max_coord: i64, max_len: i64, seed: u64) -> Vec<HyperRect> {
    let mut rng = rng_from_seed(seed);
    (0..n)
        .map(|_| {
            let a = rng.gen_range(0..max_coord);
            let l = rng.gen_range(0..=max_len);
            HyperRect::interval(a, a + l).expect("l ≥ 0")
        })
        .collect()
}

/// Most left endpoints in one half-open unit cell `[i, i+1)` of `axis`.
pub fn left_endpoints_per_cell(objs: &[HyperRect], axis: usize) -> usize {
    let mut counts = std::collections::HashMap::new();
    let mut best = 0;
    for h in objs {
        let c = counts.entry(h.lo(axis).floor()).or_insert(0usize);
        *c += 1;
        best = best.max(*c);
    }
    best
}

/// Largest ratio between two side lengths on the same axis, as `(num, den)`
/// of the worst pair; `None` when some side is zero.
pub fn max_side_ratio(objs: &[HyperRect]) -> Option<Coordinate> {
    let d = objs.first()?.dim();
    let mut worst = Coordinate::one();
    for j in 0..d {
        let min = objs.iter().map(|h| h.side(j)).min()?;
        let max = objs.iter().map(|h| h.side(j)).max()?;
        if min.is_zero() {
            return None;
        }
        worst = worst.max(max / min);
    }
    Some(worst)
}

/// Checks the structural guarantee a family promises.
pub fn verify_family(family: Family, inst: &Instance, spec: &GeneratorSpec) -> Result<()> {
    let boxes = inst.out_boxes();
    let fail = |msg: String| Err(Error::Assertion(format!("{family} instance: {msg}")));
    match family {
        Family::SparseBounded => {
            let d_bound = spec.d_bound.unwrap_or(3);
            if boxes.iter().any(|h| h.side(0) > Coordinate::one() || h.lo(0).is_integer()) {
                return fail("axis 0 must be short with non-integer start".into());
            }
            let per_cell = left_endpoints_per_cell(&boxes, 0);
            let contained = unit_cell_load(&boxes);
            if per_cell > d_bound || contained > d_bound {
                return fail(format!("{per_cell} starts / {contained} contained per unit cell exceed D = {d_bound}"));
            }
        }
        Family::SimilarSize => {
            let delta = Coordinate::from(u64::from(spec.delta.unwrap_or(2)));
            if let Some(r) = max_side_ratio(&boxes) {
                if r > delta {
                    return fail(format!("side ratio {r} exceeds Δ = {delta}"));
                }
            }
        }
        Family::GreedyLb | Family::HugeCoordinates | Family::CrossFig5 => {
            let t = inst.planted_opt().expect("planted");
            if boxes.len() < t || !crate::geometry::is_independent_set(&boxes[..t])? {
                return fail(format!("planted optimum {t} is not independent"));
            }
        }
        Family::PlantedClasses | Family::Ellipses => {}
    }
    Ok(())
}
