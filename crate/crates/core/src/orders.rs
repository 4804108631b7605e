//! The usual stochastic (st), hazard rate (hr) and likelihood ratio (lr)
//! orders on simplex points, read as distributions over `n` ordered outcomes.
//!
//! `a <= b` in each order means `b` shifts mass towards the later
//! coordinates. Comparisons take an optional slack `eps` (default 0, strict
//! floating point), added to the larger side of every inequality.

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::simplex::{SimplexVector, SUM_TOLERANCE};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    St,
    Hr,
    Lr,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::St, OrderKind::Hr, OrderKind::Lr];

    pub fn as_str(self) -> &'static str {
        match self {
            OrderKind::St => "st",
            OrderKind::Hr => "hr",
            OrderKind::Lr => "lr",
        }
    }

    /// Whether `a <= b` under this order with zero slack.
    ///
    /// Unchecked fast entry point for hot loops: `a` and `b` must have the
    /// same length and total mass.
    pub fn holds(self, a: &[f64], b: &[f64]) -> bool {
        match self {
            OrderKind::St => st_raw(a, b, 0.0),
            OrderKind::Hr => hr_linear_raw(a, b),
            OrderKind::Lr => lr_raw(a, b, 0.0),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "st" => Ok(OrderKind::St),
            "hr" => Ok(OrderKind::Hr),
            "lr" => Ok(OrderKind::Lr),
            other => Err(Error::domain(format!("unknown order '{other}', expected st, hr or lr"))),
        }
    }
}

/// Suffix sums `S_i = sum_{k >= i} x_k`, stored 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct SuffixSums(Vec<f64>);

impl SuffixSums {
    pub fn of(x: &[f64]) -> Self {
        let mut sums = vec![0.0; x.len()];
        let mut acc = 0.0;
        for (s, &v) in sums.iter_mut().zip(x).rev() {
            acc += v;
            *s = acc;
        }
        SuffixSums(sums)
    }

    /// `S_i` for 0-based `i`; zero past the end.
    pub fn get(&self, i: usize) -> f64 {
        self.0.get(i).copied().unwrap_or(0.0)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Order comparisons with a configurable slack.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Comparator {
    pub eps: f64,
}

impl Comparator {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::domain(format!("comparison slack must be finite and >= 0, got {eps}")));
        }
        Ok(Comparator { eps })
    }

    pub fn leq(&self, order: OrderKind, a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
        match order {
            OrderKind::St => self.leq_st(a, b),
            OrderKind::Hr => self.leq_hr(a, b),
            OrderKind::Lr => self.leq_lr(a, b),
        }
    }

    /// Every suffix sum of `a` is at most the matching suffix sum of `b`.
    pub fn leq_st(&self, a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
        check_pair(a, b)?;
        Ok(st_raw(a.coords(), b.coords(), self.eps))
    }

    /// `S_i(a) S_j(b) >= S_j(a) S_i(b)` for all `i <= j`, checked over every
    /// pair. This is the reference semantics of the hr order.
    pub fn leq_hr(&self, a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
        check_pair(a, b)?;
        Ok(hr_definitional_raw(a.coords(), b.coords(), self.eps))
    }

    /// Linear-time hr check using adjacent cross products only.
    ///
    /// Past the last positive suffix sum of `a` every inequality holds
    /// trivially; before it the ratio `S_i(b) / S_i(a)` must be
    /// nondecreasing, which adjacent steps decide. Agrees with
    /// [`Comparator::leq_hr`] when `eps` is zero.
    pub fn leq_hr_linear(&self, a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
        check_pair(a, b)?;
        Ok(hr_linear_eps_raw(a.coords(), b.coords(), self.eps))
    }

    /// `a_i b_j >= b_i a_j` for all `i <= j`: the likelihood ratio `b_k / a_k`
    /// is nondecreasing, in product form so zero coordinates need no division.
    pub fn leq_lr(&self, a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
        check_pair(a, b)?;
        Ok(lr_raw(a.coords(), b.coords(), self.eps))
    }

    /// The hr order decided recursively: `a <= b` iff `b_1 <= a_1` and the
    /// tails, with `a`'s tail rescaled to the mass of `b`'s tail, compare in
    /// one dimension less. Independent of the suffix-sum scans above.
    pub fn hr_reduce(&self, a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
        check_pair(a, b)?;
        Ok(hr_reduce_raw(a.coords().to_vec(), b.coords(), self.eps))
    }
}

pub fn leq_st(a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
    Comparator::default().leq_st(a, b)
}

pub fn leq_hr(a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
    Comparator::default().leq_hr(a, b)
}

pub fn leq_hr_linear(a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
    Comparator::default().leq_hr_linear(a, b)
}

pub fn leq_lr(a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
    Comparator::default().leq_lr(a, b)
}

pub fn hr_reduce(a: &SimplexVector, b: &SimplexVector) -> Result<bool> {
    Comparator::default().hr_reduce(a, b)
}

fn check_pair(a: &SimplexVector, b: &SimplexVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::domain(format!("dimension mismatch: {} vs {}", a.len(), b.len())));
    }
    let (u, v) = (a.size(), b.size());
    if (u - v).abs() > SUM_TOLERANCE * u.max(v).max(1.0) {
        return Err(Error::domain(format!("size mismatch: {u} vs {v}")));
    }
    Ok(())
}

fn st_raw(a: &[f64], b: &[f64], eps: f64) -> bool {
    // S_1 is the total mass, equal for both by precondition. Comparing the
    // rounded sums would turn an exact tie into a coin flip.
    let (mut sa, mut sb) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b).skip(1).rev() {
        sa += x;
        sb += y;
        if sa > sb + eps {
            return false;
        }
    }
    true
}

fn hr_definitional_raw(a: &[f64], b: &[f64], eps: f64) -> bool {
    let sa = SuffixSums::of(a);
    let sb = SuffixSums::of(b);
    let (sa, sb) = (sa.as_slice(), sb.as_slice());
    let n = a.len();
    for i in 0..n {
        for j in i..n {
            if sa[i] * sb[j] + eps < sa[j] * sb[i] {
                return false;
            }
        }
    }
    true
}

fn hr_linear_raw(a: &[f64], b: &[f64]) -> bool {
    hr_linear_eps_raw(a, b, 0.0)
}

fn hr_linear_eps_raw(a: &[f64], b: &[f64], eps: f64) -> bool {
    // Walk from the back so suffix sums accumulate in the same order as
    // `SuffixSums::of`. Where S_{k+1}(a) == 0 the right-hand side vanishes
    // and the check passes, which covers every pair past the last positive
    // suffix sum of `a`.
    let (mut sa_next, mut sb_next) = (0.0, 0.0);
    for k in (0..a.len()).rev() {
        let sa = sa_next + a[k];
        let sb = sb_next + b[k];
        if sa * sb_next + eps < sa_next * sb {
            return false;
        }
        sa_next = sa;
        sb_next = sb;
    }
    true
}

fn lr_raw(a: &[f64], b: &[f64], eps: f64) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if a[i] * b[j] + eps < b[i] * a[j] {
                return false;
            }
        }
    }
    true
}

fn hr_reduce_raw(mut a: Vec<f64>, b: &[f64], eps: f64) -> bool {
    let mut offset = 0;
    loop {
        let (a_rest, b_rest) = (&a[offset..], &b[offset..]);
        if a_rest.len() <= 1 {
            return true;
        }
        let tail_a: f64 = a_rest[1..].iter().sum();
        let tail_b: f64 = b_rest[1..].iter().sum();
        if tail_b <= 0.0 {
            // b = (u, 0, ..., 0) only dominates a point of the same shape.
            return tail_a <= eps;
        }
        if b_rest[0] > a_rest[0] + eps {
            return false;
        }
        if tail_a <= 0.0 {
            return true;
        }
        let scale = tail_b / tail_a;
        for x in &mut a[offset + 1..] {
            *x *= scale;
        }
        offset += 1;
    }
}

/// Probability that a fresh uniform point of the simplex of the same size
/// dominates `theta` in the hr order:
/// `prod_{i=1}^{n-1} (1 - (S_{i+1} / S_i)^(n-i))`.
///
/// A factor with `S_i = 0` (trailing zeros in `theta`) is taken as 1: the
/// corresponding inequalities hold for every competitor.
pub fn hr_upper_prob(theta: &SimplexVector) -> f64 {
    hr_upper_prob_raw(theta.coords())
}

/// Whether [`hr_upper_prob`] hits a vanishing suffix sum `S_i`, `i <= n-1`.
pub fn has_zero_suffix(theta: &SimplexVector) -> bool {
    let s = SuffixSums::of(theta.coords());
    let n = theta.len();
    n >= 2 && s.as_slice()[..n - 1].iter().any(|&x| x <= 0.0)
}

pub(crate) fn hr_upper_prob_raw(theta: &[f64]) -> f64 {
    let n = theta.len();
    let s = SuffixSums::of(theta);
    let mut prob = 1.0;
    for i in 0..n.saturating_sub(1) {
        let (cur, next) = (s.get(i), s.get(i + 1));
        if cur > 0.0 {
            prob *= 1.0 - (next / cur).powi((n - 1 - i) as i32);
        }
    }
    prob
}

/// Probability that two independent uniform points of the `n`-simplex are
/// comparable: `1/n` (st), `1/2^(n-1)` (hr), `1/n!` (lr).
pub fn restrictiveness_constant(order: OrderKind, n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("simplex dimension must be at least 1"));
    }
    let den = match order {
        OrderKind::St => BigInt::from(n),
        OrderKind::Hr => BigInt::one() << (n - 1),
        OrderKind::Lr => factorial(n as u64),
    };
    Ok(Rational::new(BigInt::one(), den))
}
