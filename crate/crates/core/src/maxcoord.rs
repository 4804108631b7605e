//! Distribution of the largest coordinate of a uniform point on the simplex
//! of size `u`: Whitworth's CDF and the moments of every order.

use crate::error::{Error, Result};
use crate::exact::{binomial, rational_from_f64, rational_to_f64, Rational};
use crate::identities::f_table;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxDistParams {
    n: u32,
    u: f64,
}

impl MaxDistParams {
    /// `n = 1` is accepted as the degenerate one-point simplex.
    pub fn new(n: u32, u: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("dimension n must be at least 1"));
        }
        if !(u > 0.0 && u.is_finite()) {
            return Err(Error::domain(format!("simplex size must be positive, got {u}")));
        }
        Ok(MaxDistParams { n, u })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Support of the maximum: `[u/n, u]`.
    pub fn support(&self) -> (f64, f64) {
        (self.u / self.n as f64, self.u)
    }
}

/// The `m` in `[0, n-2]` with `u/(n-m) < b <= u/(n-m-1)`.
///
/// Breakpoints `b = u/k` belong to the interval on their left.
pub fn m_index(params: &MaxDistParams, b: f64) -> Result<u32> {
    let MaxDistParams { n, u } = *params;
    if n < 2 || !(b > u / n as f64 && b <= u) {
        return Err(Error::domain(format!("b = {b} outside (u/n, u] = ({}, {u}]", u / n as f64)));
    }
    // k = n - m - 1 is the largest count of coordinates that can all reach b.
    let mut k = ((u / b).floor() as u32).clamp(1, n - 1);
    while k > 1 && b > u / k as f64 {
        k -= 1;
    }
    while k < n - 1 && b <= u / (k + 1) as f64 {
        k += 1;
    }
    Ok(n - 1 - k)
}

/// Whitworth's sum with `m + 1` terms,
/// `u^-(n-1) sum_{k=0}^{m} C(n, k) (-1)^k ((n-k) b - u)^(n-1)`,
/// evaluated exactly on the binary values of `b` and `u` and rounded once.
///
/// [`whitworth_cdf`] calls this with `m = m_index(b)`; other `m` are exposed
/// to check that neighbouring branches meet at the breakpoints.
pub fn whitworth_sum(params: &MaxDistParams, b: f64, m: u32) -> Result<f64> {
    let n = params.n;
    if m >= n {
        return Err(Error::domain(format!("m = {m} must be below n = {n}")));
    }
    if !b.is_finite() {
        return Err(Error::domain(format!("b must be finite, got {b}")));
    }
    // Bring b and u over a common denominator so the sum runs in integers.
    let (bn, bd) = rational_from_f64(b).into_raw();
    let (un, ud) = rational_from_f64(params.u).into_raw();
    let p = bn * &ud;
    let q = un * &bd;
    let mut sum = BigInt::zero();
    for k in 0..=m {
        let base = BigInt::from(n - k) * &p - &q;
        let term = base.pow(n - 1) * binomial(n as u64, k as u64);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(rational_to_f64(&Rational::new(sum, q.pow(n - 1))))
}

/// `P(max(Θ) <= b)` for `Θ` uniform on the simplex of size `u`.
///
/// Zero for `b <= u/n`, one for `b > u`; exact up to a single final rounding
/// in between, so the value is monotone in `b` for every `n`.
pub fn whitworth_cdf(params: &MaxDistParams, b: f64) -> f64 {
    let MaxDistParams { n, u } = *params;
    if b.is_nan() {
        return f64::NAN;
    }
    if n == 1 {
        return if b >= u { 1.0 } else { 0.0 };
    }
    if b <= u / n as f64 {
        return 0.0;
    }
    if b > u {
        return 1.0;
    }
    let m = m_index(params, b).expect("b inside (u/n, u]");
    whitworth_sum(params, b, m).expect("valid m").clamp(0.0, 1.0)
}

/// `E[max(Θ)^t] / u^t = f(n, t) / C(n-1+t, t)`, exactly.
pub fn moment_unit_exact(n: u32, t: u32) -> Result<Rational> {
    let table = f_table(n, t)?;
    let f = &table[t as usize][n as usize - 1];
    Ok(f / binomial((n - 1 + t) as u64, t as u64))
}

/// `E[max(Θ)^t] = u^t f(n, t) / C(n-1+t, t)`; `t = 0` gives 1.
pub fn moment(params: &MaxDistParams, t: u32) -> f64 {
    let unit = moment_unit_exact(params.n, t).expect("n >= 1");
    params.u.powi(t as i32) * rational_to_f64(&unit)
}

/// `Var(max(Θ)) / u^2`, exactly, from the first two moments.
pub fn variance_unit_exact(n: u32) -> Result<Rational> {
    let m1 = moment_unit_exact(n, 1)?;
    let m2 = moment_unit_exact(n, 2)?;
    Ok(m2 - &m1 * &m1)
}

pub fn variance(params: &MaxDistParams) -> f64 {
    let unit = variance_unit_exact(params.n).expect("n >= 1");
    params.u * params.u * rational_to_f64(&unit)
}

/// `E[max(Θ)] / u = H_n / n`, exactly.
pub fn mean_unit_exact(n: u32) -> Result<Rational> {
    moment_unit_exact(n, 1)
}
