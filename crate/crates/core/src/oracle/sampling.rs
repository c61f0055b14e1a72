//! Samplers behind the concentration checks: hypergeometric draws and the
//! maximum gap left by a uniform half-subset of `[n]`.

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed, Rng};

/// Number of red balls in a uniform `n_samples`-subset of `N` balls with `M`
/// red ones. Draws one ball at a time from the shrinking urn (or from its
/// complement when that is shorter), so the law is exactly hypergeometric.
pub fn sample_hypergeometric(total: u64, red: u64, n_samples: u64, rng: &mut Rng) -> Result<u64> {
    if red > total || n_samples > total {
        return Err(Error::InvalidParameter(format!(
            "need 0 ≤ M ≤ N and 0 ≤ n ≤ N, got N={total} M={red} n={n_samples}"
        )));
    }
    let complement = n_samples > total / 2;
    let draws = if complement { total - n_samples } else { n_samples };
    let (mut left, mut reds, mut got) = (total, red, 0u64);
    for _ in 0..draws {
        if reds > 0 && rng.gen_range(0..left) < reds {
            reds -= 1;
            got += 1;
        }
        left -= 1;
    }
    Ok(if complement { red - got } else { got })
}

/// Empirical tail frequencies against the concentration bounds
/// `Pr[X ≥ (1+δ)pn] ≤ exp(-δ²pn/3)` and `Pr[X ≤ (1-δ)pn] ≤ exp(-δ²pn/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailBoundReport {
    pub total: u64,
    pub red: u64,
    pub n_samples: u64,
    pub delta: f64,
    pub draws: u64,
    pub empirical_upper_tail: f64,
    pub empirical_lower_tail: f64,
    pub bound_upper: f64,
    pub bound_lower: f64,
    pub mean: f64,
}

impl TailBoundReport {
    fn slack(bound: f64, draws: u64) -> f64 {
        3.0 * (bound * (1.0 - bound) / draws as f64).sqrt()
    }

    /// Upper-tail frequency within the bound plus three standard errors.
    pub fn upper_ok(&self) -> bool {
        self.empirical_upper_tail <= self.bound_upper + Self::slack(self.bound_upper, self.draws)
    }

    pub fn lower_ok(&self) -> bool {
        self.empirical_lower_tail <= self.bound_lower + Self::slack(self.bound_lower, self.draws)
    }

    pub fn expected_mean(&self) -> f64 {
        self.n_samples as f64 * self.red as f64 / self.total as f64
    }
}

const CHUNK: u64 = 4096;

/// Draws `draws` hypergeometric samples in parallel chunks (seeded per
/// chunk, so the result does not depend on the thread count).
pub fn tail_bound_report(
    total: u64,
    red: u64,
    n_samples: u64,
    delta: f64,
    draws: u64,
    seed: u64,
) -> Result<TailBoundReport> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!("delta {delta} outside [0, 1]")));
    }
    if draws == 0 || total == 0 {
        return Err(Error::InvalidParameter("need draws ≥ 1 and N ≥ 1".into()));
    }
    let pn = n_samples as f64 * red as f64 / total as f64;
    let hi = (1.0 + delta) * pn;
    let lo = (1.0 - delta) * pn;
    let chunks = draws.div_ceil(CHUNK);
    let (upper, lower, sum) = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<(u64, u64, u64)> {
            let mut rng = rng_from_seed(derive_seed(seed, c));
            let count = CHUNK.min(draws - c * CHUNK);
            let mut acc = (0, 0, 0);
            for _ in 0..count {
                let x = sample_hypergeometric(total, red, n_samples, &mut rng)?;
                let xf = x as f64;
                acc.0 += (xf >= hi) as u64;
                acc.1 += (xf <= lo) as u64;
                acc.2 += x;
            }
            Ok(acc)
        })
        .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
    Ok(TailBoundReport {
        total,
        red,
        n_samples,
        delta,
        draws,
        empirical_upper_tail: upper as f64 / draws as f64,
        empirical_lower_tail: lower as f64 / draws as f64,
        bound_upper: (-delta * delta * pn / 3.0).exp(),
        bound_lower: (-delta * delta * pn / 2.0).exp(),
        mean: sum as f64 / draws as f64,
    })
}

/// `4⌈log₂ n⌉`, the gap threshold.
pub fn gap_threshold(n: u64) -> u64 {
    4 * ceil_log2(n) as u64
}

pub(crate) fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Largest gap of a sorted subset `t` of `[n]` with sentinels `X_0 = 1` and
/// `X_{|t|+1} = n`.
pub fn max_gap(sorted: &[u64], n: u64) -> u64 {
    let mut prev = 1;
    let mut best = 0;
    for &x in sorted.iter().chain(std::iter::once(&n)) {
        best = best.max(x.saturating_sub(prev));
        prev = x;
    }
    best
}

/// Uniform `⌈n/2⌉`-subset of `[n]` by partial Fisher–Yates.
pub fn sample_half_subset(n: u64, rng: &mut Rng) -> Vec<u64> {
    let h = n.div_ceil(2) as usize;
    let mut pool: Vec<u64> = (1..=n).collect();
    for i in 0..h {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(h);
    pool.sort_unstable();
    pool
}

/// Maximum gap of a fresh uniform half-subset of `[n]`.
pub fn sample_max_gap(n: u64, rng: &mut Rng) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n ≥ 2, got {n}")));
    }
    Ok(max_gap(&sample_half_subset(n, rng), n))
}

/// Exact law of the maximum gap: `counts[g]` is the number of
/// `⌈n/2⌉`-subsets whose maximum gap is `g`. Exhaustive; `n ≤ 24`.
pub fn max_gap_distribution(n: u64) -> Result<Vec<u64>> {
    if !(2..=24).contains(&n) {
        return Err(Error::InvalidParameter(format!("exhaustive enumeration needs 2 ≤ n ≤ 24, got {n}")));
    }
    let h = n.div_ceil(2) as u32;
    let mut counts = vec![0u64; n as usize];
    let mut buf = Vec::with_capacity(h as usize);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != h {
            continue;
        }
        buf.clear();
        buf.extend((0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1));
        counts[max_gap(&buf, n) as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergeometric_edge_cases() {
        let mut rng = rng_from_seed(1);
        for _ in 0..100 {
            assert_eq!(sample_hypergeometric(50, 0, 20, &mut rng).unwrap(), 0);
            assert_eq!(sample_hypergeometric(50, 17, 50, &mut rng).unwrap(), 17);
            assert_eq!(sample_hypergeometric(50, 50, 13, &mut rng).unwrap(), 13);
        }
        assert!(sample_hypergeometric(5, 6, 1, &mut rng).is_err());
        assert!(sample_hypergeometric(5, 1, 6, &mut rng).is_err());
    }

    #[test]
    fn hypergeometric_mean_within_three_standard_errors() {
        let (total, red, n) = (200u64, 37u64, 61u64);
        let draws = 100_000u64;
        let r = tail_bound_report(total, red, n, 0.2, draws, 5).unwrap();
        let p = red as f64 / total as f64;
        let var = n as f64 * p * (1.0 - p) * (total - n) as f64 / (total - 1) as f64;
        let se = (var / draws as f64).sqrt();
        assert!((r.mean - r.expected_mean()).abs() <= 3.0 * se, "{r:?}");
    }

    #[test]
    fn gap_small_cases() {
        let mut rng = rng_from_seed(2);
        for _ in 0..50 {
            assert_eq!(sample_max_gap(2, &mut rng).unwrap(), 1);
        }
        // n = 4, by hand: {2,3} → 1; {1,4} → 3; the other four → 2.
        let d = max_gap_distribution(4).unwrap();
        assert_eq!(d, vec![0, 1, 4, 1]);
        assert!(d.iter().enumerate().all(|(g, &c)| c == 0 || g as u64 <= gap_threshold(4)));
        assert_eq!(max_gap(&[2, 3], 4), 1);
        assert_eq!(max_gap(&[1, 4], 4), 3);
        assert_eq!(gap_threshold(4096), 48);
    }
}
