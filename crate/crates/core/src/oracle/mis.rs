use crate::error::{Error, Result};
use crate::geometry::HyperRect;

/// Largest instance [`brute_force_mis`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Exact maximum independent set by branch and bound over the intersection
/// graph. Returns the size and the positions of one optimal set.
///
/// Branches on a maximum-degree vertex (take it, or drop it) and prunes when
/// the current set plus every remaining candidate cannot beat the incumbent,
/// which starts from a min-degree greedy solution.
pub fn brute_force_mis(objs: &[HyperRect]) -> Result<(usize, Vec<usize>)> {
    let n = objs.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleLimit {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let dim = objs[0].dim();
    for o in objs {
        o.check_dim(dim)?;
    }
    let mut adj = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if objs[i].overlaps(&objs[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all: u32 = (1u32 << n) - 1;

    let mut best = greedy_min_degree(&adj, all);
    branch(&adj, all, 0, &mut best);

    let witness = (0..n).filter(|&i| best & (1 << i) != 0).collect::<Vec<_>>();
    Ok((witness.len(), witness))
}

fn greedy_min_degree(adj: &[u32], mut cand: u32) -> u32 {
    let mut chosen = 0;
    while cand != 0 {
        let v = bits(cand)
            .min_by_key(|&v| (adj[v] & cand).count_ones())
            .expect("nonempty");
        chosen |= 1 << v;
        cand &= !(adj[v] | (1 << v));
    }
    chosen
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

fn branch(adj: &[u32], cand: u32, cur: u32, best: &mut u32) {
    if cur.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    // Vertices with no neighbour among the candidates are always taken.
    let (mut free, mut pivot, mut pivot_deg) = (0u32, None, 0u32);
    for v in bits(cand) {
        let deg = (adj[v] & cand).count_ones();
        if deg == 0 {
            free |= 1 << v;
        } else if deg > pivot_deg {
            pivot = Some(v);
            pivot_deg = deg;
        }
    }
    let cur = cur | free;
    let cand = cand & !free;
    let Some(v) = pivot else {
        if cur.count_ones() > best.count_ones() {
            *best = cur;
        }
        return;
    };
    branch(adj, cand & !(adj[v] | (1 << v)), cur | (1 << v), best);
    branch(adj, cand & !(1 << v), cur, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_independent_set;

    #[test]
    fn small_examples() {
        let r = |a, b| HyperRect::from_bounds([(a, b), (0, 1)]).unwrap();
        assert_eq!(brute_force_mis(&[r(0, 3), r(1, 4), r(2, 5)]).unwrap().0, 1);
        let disjoint: Vec<_> = (0..5).map(|i| r(3 * i, 3 * i + 1)).collect();
        assert_eq!(brute_force_mis(&disjoint).unwrap().0, 5);
        assert_eq!(brute_force_mis(&[]).unwrap().0, 0);
        let too_many: Vec<_> = (0..25).map(|i| r(i, i)).collect();
        assert!(matches!(brute_force_mis(&too_many), Err(Error::OracleLimit { .. })));
    }

    /// Cross-check against plain subset enumeration on small inputs.
    #[test]
    fn agrees_with_subset_enumeration() {
        use rand::Rng;
        let mut rng = crate::rng::rng_from_seed(11);
        for _ in 0..200 {
            let n = rng.gen_range(0..=11);
            let objs: Vec<_> = (0..n)
                .map(|_| {
                    let x = rng.gen_range(0..12);
                    let y = rng.gen_range(0..12);
                    HyperRect::from_bounds([(x, x + rng.gen_range(0..4)), (y, y + rng.gen_range(0..4))]).unwrap()
                })
                .collect();
            let mut best = 0;
            for mask in 0u32..(1 << n) {
                let pick: Vec<_> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| objs[i].clone()).collect();
                if pick.len() > best && is_independent_set(&pick).unwrap() {
                    best = pick.len();
                }
            }
            let (size, wit) = brute_force_mis(&objs).unwrap();
            assert_eq!(size, best);
            let w: Vec<_> = wit.iter().map(|&i| objs[i].clone()).collect();
            assert!(is_independent_set(&w).unwrap());
        }
    }
}
