//! Randomness testing with stochastic orders.
//!
//! A stream is cut into groups of `n` numbers; each group becomes a point of
//! the `(n+1)`-simplex by spacings, consecutive points are paired, and the
//! number of pairs ordered by the chosen stochastic order is compared with
//! its null distribution `Binomial(pairs, p0)` where `p0` is the order's
//! restrictiveness in dimension `n + 1`.

mod binomial;
mod report;
mod stream;

pub use binomial::{binomial_test_f64, exact_binomial_test, RELATIVE_SLACK};
pub use report::{write_order_csv, write_table1_csv, OrderTestRecord, Table1Row};
pub use stream::{read_stream, StreamSource};

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational};
use crate::maxcoord::{mean_unit_exact, variance_unit_exact};
use crate::orders::{restrictiveness_constant, OrderKind};
use crate::rng::Seed;
use crate::simplex::spacings_into;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Outcome of one order-based test.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderTestReport {
    pub order: OrderKind,
    /// Numbers per group; the simplex dimension is one more.
    pub group_size: usize,
    pub pairs: u64,
    pub successes: u64,
    pub p0: Rational,
    pub p_value: f64,
    pub source: StreamSource,
}

impl OrderTestReport {
    /// Fraction of pairs that were ordered.
    pub fn success_fraction(&self) -> f64 {
        self.successes as f64 / self.pairs as f64
    }
}

fn check_group_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::domain("group size n must be at least 1"))
    } else {
        Ok(())
    }
}

fn values_needed(n: usize, per_unit: usize, units: u64) -> Result<usize> {
    (n as u64)
        .checked_mul(per_unit as u64)
        .and_then(|x| x.checked_mul(units))
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Capacity(format!("{units} units of {n} numbers overflow the address space")))
}

/// Counts ordered pairs in already-read values and runs the binomial test.
pub fn order_test_on_values(values: &[f64], order: OrderKind, n: usize, pairs: u64) -> Result<(u64, Rational, f64)> {
    check_group_size(n)?;
    if pairs == 0 {
        return Err(Error::domain("pairs must be at least 1"));
    }
    let needed = values_needed(n, 2, pairs)?;
    if values.len() < needed {
        return Err(Error::Truncated { needed, read: values.len() });
    }
    let (mut a, mut b) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
    let mut successes = 0u64;
    for pair in values[..needed].chunks_exact(2 * n) {
        spacings_into(&pair[..n], 1.0, &mut a)?;
        spacings_into(&pair[n..], 1.0, &mut b)?;
        successes += order.holds(&a, &b) as u64;
    }
    let p0 = restrictiveness_constant(order, n + 1)?;
    let p_value = exact_binomial_test(successes, pairs, &p0)?;
    Ok((successes, p0, p_value))
}

/// Reads `2 n pairs` numbers from `source` and tests them with `order`.
pub fn run_order_test(source: &StreamSource, order: OrderKind, n: usize, pairs: u64) -> Result<OrderTestReport> {
    check_group_size(n)?;
    if pairs == 0 {
        return Err(Error::domain("pairs must be at least 1"));
    }
    let values = read_stream(source, values_needed(n, 2, pairs)?)?;
    let (successes, p0, p_value) = order_test_on_values(&values, order, n, pairs)?;
    Ok(OrderTestReport { order, group_size: n, pairs, successes, p0, p_value, source: source.clone() })
}

/// Comparison of the sample mean of `max` over groups with its exact mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxMeanReport {
    pub n: usize,
    pub groups: u64,
    pub sample_mean: f64,
    pub analytic_mean: f64,
    pub analytic_variance: f64,
    /// `(sample_mean - analytic_mean) / sqrt(analytic_variance / groups)`.
    pub z: f64,
}

/// Mean of the largest spacing over `groups` groups of `n` numbers, against
/// `H_{n+1} / (n+1)`.
pub fn max_mean_test(source: &StreamSource, n: usize, groups: u64) -> Result<MaxMeanReport> {
    check_group_size(n)?;
    if groups == 0 {
        return Err(Error::domain("groups must be at least 1"));
    }
    let values = read_stream(source, values_needed(n, 1, groups)?)?;
    let mut x = Vec::with_capacity(n + 1);
    let mut sum = 0.0;
    for group in values.chunks_exact(n) {
        spacings_into(group, 1.0, &mut x)?;
        sum += x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    }
    let dim = u32::try_from(n + 1).map_err(|_| Error::Capacity(format!("group size {n} too large")))?;
    let analytic_mean = rational_to_f64(&mean_unit_exact(dim)?);
    let analytic_variance = rational_to_f64(&variance_unit_exact(dim)?);
    let sample_mean = sum / groups as f64;
    let z = (sample_mean - analytic_mean) / (analytic_variance / groups as f64).sqrt();
    Ok(MaxMeanReport { n, groups, sample_mean, analytic_mean, analytic_variance, z })
}

/// Generator model in the two-model comparison experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Autoregressive,
    Uniform,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Autoregressive => "autoregressive",
            Model::Uniform => "uniform",
        }
    }
}

/// Configuration of the two-model, three-order experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Config {
    pub reps: usize,
    pub n: usize,
    pub pairs: u64,
    pub alpha: f64,
    pub seed: Seed,
    pub workers: usize,
}

impl Default for Table1Config {
    fn default() -> Self {
        Table1Config { reps: 100, n: 2, pairs: 10_000, alpha: 0.1, seed: Seed(0), workers: 1 }
    }
}

/// Mean and standard deviation of p-values per (model, order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Summary {
    pub reps: usize,
    pub n: usize,
    pub pairs: u64,
    pub alpha: f64,
    pub seed: Seed,
    pub rows: Vec<Table1Row>,
}

impl Table1Summary {
    pub fn row(&self, model: Model, order: OrderKind) -> Option<&Table1Row> {
        self.rows.iter().find(|r| r.model == model && r.order == order)
    }
}

/// Runs `reps` order tests for each model and order and summarizes the
/// p-values (population standard deviation, so one repetition gives 0).
///
/// Repetition `r` of a model reads the stream seeded with
/// `seed.derive(model_tag << 32 | r)`; the three orders test the same stream.
pub fn table1_experiment(config: &Table1Config) -> Result<Table1Summary> {
    let Table1Config { reps, n, pairs, alpha, seed, workers } = *config;
    if reps == 0 {
        return Err(Error::domain("reps must be at least 1"));
    }
    if workers == 0 {
        return Err(Error::domain("worker count must be at least 1"));
    }
    check_group_size(n)?;
    let needed = values_needed(n, 2, pairs)?;
    let ar = StreamSource::autoregressive(alpha, seed)?;

    let mut rows = Vec::with_capacity(6);
    for (tag, model) in [(0u64, Model::Autoregressive), (1, Model::Uniform)] {
        let run = |r: usize| -> Result<Vec<f64>> {
            let rep_seed = seed.derive((tag << 32) | r as u64);
            let source = match model {
                Model::Autoregressive => ar.reseeded(rep_seed),
                Model::Uniform => StreamSource::uniform(rep_seed),
            };
            let values = read_stream(&source, needed)?;
            OrderKind::ALL.iter().map(|&order| order_test_on_values(&values, order, n, pairs).map(|r| r.2)).collect()
        };
        let per_rep: Vec<Vec<f64>> = if workers == 1 {
            (0..reps).map(run).collect::<Result<_>>()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
            pool.install(|| (0..reps).into_par_iter().map(run).collect::<Result<_>>())?
        };
        for (i, &order) in OrderKind::ALL.iter().enumerate() {
            let ps: Vec<f64> = per_rep.iter().map(|v| v[i]).collect();
            let mean = ps.iter().sum::<f64>() / reps as f64;
            let var = ps.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / reps as f64;
            let p0 = restrictiveness_constant(order, n + 1)?;
            rows.push(Table1Row::new(model, order, mean, var.sqrt(), reps, &p0)?);
        }
    }
    Ok(Table1Summary { reps, n, pairs, alpha, seed, rows })
}
