//! Exact combinatorics behind the moments of the maximal coordinate.
//!
//! `f(n, t) = sum_{k=1}^{n} (-1)^(k-1) C(n, k) / k^t` is evaluated through
//! the positive recursion `f(n, t) = f(n-1, t) + f(n, t-1) / n`; the
//! alternating definition is kept for cross-checking. Everything here that
//! returns a [`Rational`] or [`BigInt`] is exact.

use crate::error::{Error, Result};
use crate::exact::{binomial, pow, rational_from_f64, rational_to_f64, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::domain("n must be at least 1"))
    } else {
        Ok(())
    }
}

/// Generalized harmonic number `H_n^(t) = sum_{s=1}^{n} 1 / s^t`.
pub fn harmonic(n: u32, t: u32) -> Result<Rational> {
    check_n(n)?;
    Ok((1..=n).map(|s| Rational::new(BigInt::one(), BigInt::from(s).pow(t))).fold(Rational::zero(), |acc, x| acc + x))
}

/// Table `f(s, t')` for `1 <= s <= n`, `0 <= t' <= t`, indexed `[t'][s - 1]`.
pub fn f_table(n: u32, t: u32) -> Result<Vec<Vec<Rational>>> {
    check_n(n)?;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(t as usize + 1);
    rows.push(vec![Rational::one(); n as usize]);
    for tt in 1..=t as usize {
        let mut row = Vec::with_capacity(n as usize);
        row.push(Rational::one());
        for s in 2..=n as usize {
            let v = &row[s - 2] + &rows[tt - 1][s - 1] / BigInt::from(s);
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// `f(n, t)` by the recursion; `f(n, 0) = f(1, t) = 1`.
pub fn f_nt(n: u32, t: u32) -> Result<Rational> {
    let mut table = f_table(n, t)?;
    Ok(table.pop().and_then(|mut row| row.pop()).expect("non-empty table"))
}

/// `f(n, t)` straight from its alternating-sum definition.
pub fn f_nt_alternating(n: u32, t: u32) -> Result<Rational> {
    check_n(n)?;
    let mut acc = Rational::zero();
    for k in 1..=n {
        let term = Rational::new(binomial(n as u64, k as u64), BigInt::from(k).pow(t));
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Checks `f(n, 1) = H_n` and `f(n, 2) = (H_n^2 + H_n^(2)) / 2` exactly.
pub fn f_closed_forms_check(n: u32) -> Result<bool> {
    let table = f_table(n, 2)?;
    let h1 = harmonic(n, 1)?;
    let h2 = harmonic(n, 2)?;
    let f1 = &table[1][n as usize - 1];
    let f2 = &table[2][n as usize - 1];
    Ok(*f1 == h1 && *f2 == (&h1 * &h1 + h2) / BigInt::from(2))
}

/// Left side of the binomial identity
/// `sum_{l=i+1}^{t+1} (-1)^(t+l-1) C(n-1+t, n+l-2) C(n+l-2, n+i-1)`,
/// which equals 1 when `i = t` and 0 when `i < t`.
pub fn let_identity(n: u32, t: u32, i: u32) -> Result<BigInt> {
    check_n(n)?;
    if i > t {
        return Err(Error::domain(format!("index i = {i} exceeds t = {t}")));
    }
    let (n, t, i) = (n as u64, t as u64, i as u64);
    let mut acc = BigInt::zero();
    for l in i + 1..=t + 1 {
        let term = binomial(n - 1 + t, n + l - 2) * binomial(n + l - 2, n + i - 1);
        if (t + l - 1) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `F(x, y, n, r) = sum_{k=0}^{n-1} (-1)^k C(n, k) ((n-k) x - y)^(n-1+r) / (n-k)^r`
/// evaluated exactly on rational arguments.
pub fn f_xynr_direct_exact(x: &Rational, y: &Rational, n: u32, r: u32) -> Result<Rational> {
    check_n(n)?;
    let mut acc = Rational::zero();
    for k in 0..n {
        let m = n - k;
        let base = x * BigInt::from(m) - y;
        let term = pow(&base, n - 1 + r) * binomial(n as u64, k as u64) / BigInt::from(m).pow(r);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// The same quantity through `f`:
/// `sum_{i=0}^{r} x^(r-i) y^(n-1+i) C(n+r-1, n+i-1) (-1)^i f(n, i)`.
pub fn f_xynr_series_exact(x: &Rational, y: &Rational, n: u32, r: u32) -> Result<Rational> {
    let table = f_table(n, r)?;
    let mut acc = Rational::zero();
    for i in 0..=r {
        let term = pow(x, r - i)
            * pow(y, n - 1 + i)
            * binomial((n + r - 1) as u64, (n + i - 1) as u64)
            * &table[i as usize][n as usize - 1];
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

/// `F(x, y, n, r)` by its defining alternating sum. The sum is carried out
/// exactly on the binary values of `x` and `y` and rounded once, since in
/// floating point its terms cancel catastrophically.
pub fn f_xynr(x: f64, y: f64, n: u32, r: u32) -> Result<f64> {
    check_finite("x", x)?;
    check_finite("y", y)?;
    let v = f_xynr_direct_exact(&rational_from_f64(x), &rational_from_f64(y), n, r)?;
    Ok(rational_to_f64(&v))
}

/// `F(x, y, n, r)` through its expansion in `f(n, i)`.
pub fn f_xynr_series(x: f64, y: f64, n: u32, r: u32) -> Result<f64> {
    check_finite("x", x)?;
    check_finite("y", y)?;
    let v = f_xynr_series_exact(&rational_from_f64(x), &rational_from_f64(y), n, r)?;
    Ok(rational_to_f64(&v))
}

/// Closed form of `int_{u/b}^{u/a} x^p (b x - u)^q dx`:
/// `(u/a)^(p+q+1) sum_{k=1}^{p+1} (-1)^(k-1) (b-a)^(q+k) prod_{j<k}(p-j+1) / (b^k prod_{j<=k}(q+j))`.
pub fn beta_diff(u: f64, a: f64, b: f64, p: u32, q: u32) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::domain(format!("u must be positive, got {u}")));
    }
    if !(a > 0.0 && b.is_finite()) {
        return Err(Error::domain(format!("need 0 < a <= b, got a = {a}, b = {b}")));
    }
    if a > b {
        return Err(Error::domain(format!("need a <= b, got a = {a}, b = {b}")));
    }
    let d = b - a;
    let mut sum = 0.0;
    // ratio = prod_{j=1}^{k-1} (p-j+1) / prod_{j=1}^{k} (q+j), updated per k.
    let mut ratio = 1.0 / (q as f64 + 1.0);
    let mut power = d.powi(q as i32 + 1) / b;
    for k in 1..=p + 1 {
        let term = ratio * power;
        sum += if k % 2 == 1 { term } else { -term };
        ratio *= (p + 1 - k) as f64 / (q + k + 1) as f64;
        power *= d / b;
    }
    Ok((u / a).powi((p + q + 1) as i32) * sum)
}

/// `|a - b| <= tol * max(|a|, |b|)`, with exact equality covering zeros.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
