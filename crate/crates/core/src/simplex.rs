//! Points of the simplex of size `u`, uniform sampling, and the exact joint
//! distribution function of a uniform point.

use crate::error::{Error, Result};
use crate::rng::Seed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

/// Largest dimension accepted by [`joint_cdf`]; the inclusion-exclusion sum
/// has `2^n` terms.
pub const JOINT_CDF_MAX_DIM: usize = 25;

/// Absolute tolerance on the coordinate sum of a simplex point, relative to
/// `max(1, u)`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A point of the simplex `{x in R^n : x_i >= 0, sum x_i = u}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexVector {
    coords: Vec<f64>,
    size: f64,
}

impl SimplexVector {
    /// Validates nonnegativity and the coordinate sum.
    pub fn new(coords: Vec<f64>, size: f64) -> Result<Self> {
        if !(size.is_finite() && size > 0.0) {
            return Err(Error::domain(format!("simplex size must be positive, got {size}")));
        }
        if coords.is_empty() {
            return Err(Error::domain("simplex vector must have at least one coordinate"));
        }
        if let Some((i, c)) = coords.iter().enumerate().find(|(_, c)| !(**c >= 0.0 && c.is_finite())) {
            return Err(Error::domain(format!("coordinate {i} is {c}, expected a finite value >= 0")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - size).abs() > SUM_TOLERANCE * size.max(1.0) {
            return Err(Error::domain(format!("coordinates sum to {sum}, expected {size}")));
        }
        Ok(SimplexVector { coords, size })
    }

    /// A point of the probability simplex (`u = 1`).
    pub fn probability(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords, 1.0)
    }

    pub(crate) fn from_parts_unchecked(coords: Vec<f64>, size: f64) -> Self {
        SimplexVector { coords, size }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Total mass `u`.
    pub fn size(&self) -> f64 {
        self.size
    }

    /// Dimension `n`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.coords.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl AsRef<[f64]> for SimplexVector {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

fn check_size(u: f64) -> Result<()> {
    if u.is_finite() && u > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("simplex size must be positive, got {u}")))
    }
}

/// Maps `n` points of `[0, 1]` to a point of the `(n+1)`-simplex of size `u`
/// by sorting them and taking successive differences, with 0 and 1 appended
/// as end points. Ties give zero coordinates.
pub fn spacings(points: &[f64], u: f64) -> Result<SimplexVector> {
    check_size(u)?;
    let mut out = Vec::with_capacity(points.len() + 1);
    spacings_into(points, u, &mut out)?;
    Ok(SimplexVector::from_parts_unchecked(out, u))
}

/// [`spacings`] writing into a caller-owned buffer; `out` is cleared first.
pub fn spacings_into(points: &[f64], u: f64, out: &mut Vec<f64>) -> Result<()> {
    if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p)) {
        return Err(Error::domain(format!("point {i} is {p}, outside [0, 1]")));
    }
    out.clear();
    out.extend_from_slice(points);
    out.sort_by(f64::total_cmp);
    out.push(1.0);
    let mut prev = 0.0;
    for x in out.iter_mut() {
        let cur = *x;
        *x = u * (cur - prev);
        prev = cur;
    }
    Ok(())
}

/// The two constructions of a uniform point on the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMethod {
    /// Spacings of `n - 1` sorted uniforms on `[0, 1)`.
    Spacings,
    /// `n` iid standard exponentials divided by their sum.
    Exponential,
}

/// A seeded generator of uniform points on the simplex of size `u`.
///
/// Owns its generator state; use one sampler per thread.
#[derive(Debug, Clone)]
pub struct SimplexSampler<R = ChaCha8Rng> {
    n: usize,
    u: f64,
    method: SamplingMethod,
    rng: R,
}

impl SimplexSampler<ChaCha8Rng> {
    pub fn new(n: usize, u: f64, method: SamplingMethod, seed: Seed) -> Result<Self> {
        Self::with_rng(n, u, method, seed.rng())
    }
}

impl<R: Rng> SimplexSampler<R> {
    pub fn with_rng(n: usize, u: f64, method: SamplingMethod, rng: R) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("simplex dimension must be at least 1"));
        }
        check_size(u)?;
        Ok(SimplexSampler { n, u, method, rng })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sample(&mut self) -> SimplexVector {
        let mut out = Vec::with_capacity(self.n);
        self.sample_into(&mut out);
        SimplexVector::from_parts_unchecked(out, self.u)
    }

    /// Draws one point into `out`, reusing its allocation.
    pub fn sample_into(&mut self, out: &mut Vec<f64>) {
        out.clear();
        match self.method {
            SamplingMethod::Spacings => {
                out.extend((1..self.n).map(|_| self.rng.random::<f64>()));
                out.sort_by(f64::total_cmp);
                out.push(1.0);
                let mut prev = 0.0;
                for x in out.iter_mut() {
                    let cur = *x;
                    *x = self.u * (cur - prev);
                    prev = cur;
                }
            }
            SamplingMethod::Exponential => {
                out.extend((0..self.n).map(|_| self.rng.sample::<f64, _>(Exp1)));
                let total: f64 = out.iter().sum();
                for x in out.iter_mut() {
                    *x = self.u * *x / total;
                }
            }
        }
    }
}

/// One uniform draw by the spacings construction.
pub fn sample_spacings(n: usize, u: f64, seed: Seed) -> Result<SimplexVector> {
    Ok(SimplexSampler::new(n, u, SamplingMethod::Spacings, seed)?.sample())
}

/// One uniform draw by normalizing iid exponentials.
pub fn sample_exponential(n: usize, u: f64, seed: Seed) -> Result<SimplexVector> {
    Ok(SimplexSampler::new(n, u, SamplingMethod::Exponential, seed)?.sample())
}

/// `P(Θ_1 <= θ_1, ..., Θ_n <= θ_n)` for `Θ` uniform on the simplex of size
/// `u`, by inclusion-exclusion over all subsets `K` of the coordinates:
/// `sum_K (-1)^|K| (max(u - sum_{k in K} θ_k, 0) / u)^(n-1)`.
///
/// Subsets whose partial sum already reaches `u` contribute nothing, and
/// neither do their supersets, so the enumeration prunes them.
pub fn joint_cdf(theta: &[f64], u: f64) -> Result<f64> {
    check_size(u)?;
    let n = theta.len();
    if n == 0 {
        return Err(Error::domain("joint_cdf needs at least one coordinate"));
    }
    if theta.iter().any(|t| t.is_nan()) {
        return Err(Error::domain("joint_cdf argument contains NaN"));
    }
    if n > JOINT_CDF_MAX_DIM {
        return Err(Error::Capacity(format!(
            "joint_cdf enumerates 2^n subsets; n = {n} exceeds the limit {JOINT_CDF_MAX_DIM}"
        )));
    }
    if n == 1 {
        return Ok(if theta[0] >= u { 1.0 } else { 0.0 });
    }
    if theta.iter().any(|&t| t <= 0.0) {
        return Ok(0.0);
    }
    let exp = (n - 1) as i32;
    let total = inclusion_exclusion(theta, 0, 0.0, false, u, exp);
    Ok(total.clamp(0.0, 1.0))
}

fn inclusion_exclusion(theta: &[f64], start: usize, partial: f64, odd: bool, u: f64, exp: i32) -> f64 {
    let rest = u - partial;
    if rest <= 0.0 {
        return 0.0;
    }
    let term = (rest / u).powi(exp);
    let mut acc = if odd { -term } else { term };
    for k in start..theta.len() {
        acc += inclusion_exclusion(theta, k + 1, partial + theta[k], !odd, u, exp);
    }
    acc
}

/// `P(Θ_1 > θ_1, ..., Θ_n > θ_n) = (max(u - sum θ_k, 0) / u)^(n-1)` for
/// nonnegative `θ`.
pub fn tail_prob(theta: &[f64], u: f64) -> Result<f64> {
    check_size(u)?;
    let n = theta.len();
    if n == 0 {
        return Err(Error::domain("tail_prob needs at least one coordinate"));
    }
    if let Some((i, t)) = theta.iter().enumerate().find(|(_, t)| t.is_nan() || **t < 0.0) {
        return Err(Error::domain(format!("coordinate {i} is {t}, expected >= 0")));
    }
    let rest = u - theta.iter().sum::<f64>();
    if n == 1 {
        // Θ_1 = u almost surely.
        return Ok(if rest > 0.0 { 1.0 } else { 0.0 });
    }
    Ok((rest.max(0.0) / u).powi((n - 1) as i32))
}

/// `(n-1)`-dimensional volume of the simplex of size `u`:
/// `sqrt(n) u^(n-1) / (n-1)!`.
pub fn simplex_volume(n: usize, u: f64) -> Result<f64> {
    check_size(u)?;
    if n == 0 {
        return Err(Error::domain("simplex dimension must be at least 1"));
    }
    let scaled: f64 = (1..n).map(|k| u / k as f64).product();
    Ok((n as f64).sqrt() * scaled)
}
