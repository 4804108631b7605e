//! Seeded Monte Carlo estimators for the analytic quantities of this crate.
//!
//! Samples are split into chunks of [`CHUNK_SIZE`]; chunk `c` draws from
//! stream `c` of the seed (see [`crate::rng`]) and partial results are
//! reduced in chunk order. The result is therefore a pure function of the
//! inputs and the seed: the `workers` count only changes how many chunks run
//! at once.

use crate::error::{Error, Result};
use crate::orders::{hr_upper_prob_raw, OrderKind};
use crate::rng::{Seed, GENERATOR_NAME};
use crate::simplex::{SamplingMethod, SimplexSampler};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const CHUNK_SIZE: u64 = 1 << 16;

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: Seed,
}

impl MCEstimate {
    fn bernoulli(hits: u64, samples: u64, seed: Seed) -> Self {
        let p = hits as f64 / samples as f64;
        MCEstimate { estimate: p, std_error: (p * (1.0 - p) / samples as f64).sqrt(), samples, seed }
    }

    fn from_moments(sum: f64, sum_sq: f64, samples: u64, seed: Seed) -> Self {
        let n = samples as f64;
        let mean = sum / n;
        let var = if samples > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
        MCEstimate { estimate: mean, std_error: (var / n).sqrt(), samples, seed }
    }

    /// Name of the generator and stream derivation behind every estimate.
    pub fn generator(&self) -> &'static str {
        GENERATOR_NAME
    }

    /// Whether `target` lies within `k` standard errors of the estimate.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.estimate - target).abs() <= k * self.std_error
    }
}

/// Runs `job(rng, count)` for every chunk and returns the results in chunk
/// order.
fn run_chunks<T, F>(samples: u64, seed: Seed, workers: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    if samples == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    if workers == 0 {
        return Err(Error::domain("worker count must be at least 1"));
    }
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let run = |c: u64| {
        let count = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
        job(&mut seed.stream(c), count)
    };
    if workers == 1 {
        return Ok((0..chunks).map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| (0..chunks).into_par_iter().map(run).collect()))
}

fn sampler(n: usize, u: f64, rng: &mut ChaCha8Rng) -> SimplexSampler<&mut ChaCha8Rng> {
    SimplexSampler::with_rng(n, u, SamplingMethod::Spacings, rng).expect("validated dimensions")
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::domain("simplex dimension must be at least 1"))
    } else {
        Ok(())
    }
}

fn check_size(u: f64) -> Result<()> {
    if u > 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("simplex size must be positive, got {u}")))
    }
}

/// Fraction of independent uniform pairs `(Θ, Θ')` on the `n`-simplex with
/// `Θ <= Θ'` in `order`.
pub fn mc_restrictiveness(order: OrderKind, n: usize, samples: u64, seed: Seed, workers: usize) -> Result<MCEstimate> {
    check_dim(n)?;
    let hits = run_chunks(samples, seed, workers, |rng, count| {
        let mut s = sampler(n, 1.0, rng);
        let (mut a, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n));
        let mut hits = 0u64;
        for _ in 0..count {
            s.sample_into(&mut a);
            s.sample_into(&mut b);
            hits += order.holds(&a, &b) as u64;
        }
        hits
    })?;
    Ok(MCEstimate::bernoulli(hits.iter().sum(), samples, seed))
}

/// Empirical CDF of `max(Θ)` at each point of `b_grid`, all from one shared
/// sample set.
pub fn mc_max_cdf(
    n: usize,
    u: f64,
    b_grid: &[f64],
    samples: u64,
    seed: Seed,
    workers: usize,
) -> Result<Vec<MCEstimate>> {
    check_dim(n)?;
    check_size(u)?;
    let counts = run_chunks(samples, seed, workers, |rng, count| {
        let mut s = sampler(n, u, rng);
        let mut x = Vec::with_capacity(n);
        let mut counts = vec![0u64; b_grid.len()];
        for _ in 0..count {
            s.sample_into(&mut x);
            let m = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (c, &b) in counts.iter_mut().zip(b_grid) {
                *c += (m <= b) as u64;
            }
        }
        counts
    })?;
    Ok((0..b_grid.len()).map(|i| MCEstimate::bernoulli(counts.iter().map(|c| c[i]).sum(), samples, seed)).collect())
}

/// Sample mean of `max(Θ)^t`.
pub fn mc_moment(n: usize, u: f64, t: u32, samples: u64, seed: Seed, workers: usize) -> Result<MCEstimate> {
    check_dim(n)?;
    check_size(u)?;
    if n == 1 {
        // max(Θ) = u surely; skip the rounding of summing identical terms.
        run_chunks(samples, seed, workers, |_, _| ())?;
        return Ok(MCEstimate { estimate: u.powi(t as i32), std_error: 0.0, samples, seed });
    }
    let parts = run_chunks(samples, seed, workers, |rng, count| {
        let mut s = sampler(n, u, rng);
        let mut x = Vec::with_capacity(n);
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..count {
            s.sample_into(&mut x);
            let v = x.iter().copied().fold(f64::NEG_INFINITY, f64::max).powi(t as i32);
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    })?;
    let (sum, sum_sq) = parts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    Ok(MCEstimate::from_moments(sum, sum_sq, samples, seed))
}

/// Fraction of uniform draws `Θ` with `Θ_i <= θ_i` for every `i`.
pub fn mc_joint_cdf(theta: &[f64], u: f64, samples: u64, seed: Seed, workers: usize) -> Result<MCEstimate> {
    check_dim(theta.len())?;
    check_size(u)?;
    let n = theta.len();
    let hits = run_chunks(samples, seed, workers, |rng, count| {
        let mut s = sampler(n, u, rng);
        let mut x = Vec::with_capacity(n);
        let mut hits = 0u64;
        for _ in 0..count {
            s.sample_into(&mut x);
            hits += x.iter().zip(theta).all(|(a, b)| a <= b) as u64;
        }
        hits
    })?;
    Ok(MCEstimate::bernoulli(hits.iter().sum(), samples, seed))
}

/// Fraction of uniform draws `Θ` (same size as `theta`) with `theta <= Θ` in
/// the hr order, decided by the linear-time comparator.
pub fn mc_hr_upper_prob(theta: &[f64], u: f64, samples: u64, seed: Seed, workers: usize) -> Result<MCEstimate> {
    check_dim(theta.len())?;
    check_size(u)?;
    let n = theta.len();
    let hits = run_chunks(samples, seed, workers, |rng, count| {
        let mut s = sampler(n, u, rng);
        let mut x = Vec::with_capacity(n);
        let mut hits = 0u64;
        for _ in 0..count {
            s.sample_into(&mut x);
            hits += OrderKind::Hr.holds(theta, &x) as u64;
        }
        hits
    })?;
    Ok(MCEstimate::bernoulli(hits.iter().sum(), samples, seed))
}

/// Sample mean of the exact hr upper-set probability at uniform points:
/// integrating it over the simplex gives the hr restrictiveness.
pub fn mc_hr_upper_mean(n: usize, samples: u64, seed: Seed, workers: usize) -> Result<MCEstimate> {
    check_dim(n)?;
    let parts = run_chunks(samples, seed, workers, |rng, count| {
        let mut s = sampler(n, 1.0, rng);
        let mut x = Vec::with_capacity(n);
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..count {
            s.sample_into(&mut x);
            let v = hr_upper_prob_raw(&x);
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    })?;
    let (sum, sum_sq) = parts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    Ok(MCEstimate::from_moments(sum, sum_sq, samples, seed))
}
