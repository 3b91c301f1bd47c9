//! Modified Bessel function of the first kind, I_n(x), for real order and argument.

use std::f64::consts::PI;

use super::gamma::gamma;

use crate::error::{Error, Result};

/// Largest argument accepted by the power series.
pub const SERIES_MAX_ARG: f64 = 200.0;
/// Term cap of the power series.
pub const SERIES_MAX_TERMS: usize = 500;

/// Above this ratio of Σ|terms| to |sum| the finite exponential sum hands over to the series.
const HALF_ODD_CONDITION_LIMIT: f64 = 16.0;

/// Returns ν when n = ν + 1/2 for a non-negative integer ν.
pub fn half_odd_index(n: f64) -> Option<u32> {
    let nu = n - 0.5;
    let rounded = nu.round();
    if rounded >= 0.0 && (nu - rounded).abs() <= 1e-12 * n.abs().max(1.0) && rounded < 1e6 {
        Some(rounded as u32)
    } else {
        None
    }
}

/// True when n + 1/2 is a natural number.
pub fn is_half_odd(n: f64) -> bool {
    half_odd_index(n).is_some()
}

/// Order and argument of I_n(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselArgs {
    n: f64,
    x: f64,
    half_odd: bool,
}

impl BesselArgs {
    /// General real order n ≥ 0.
    pub fn new(n: f64, x: f64) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::domain(format!(
                "Bessel order must be ≥ 0 (got n = {n})"
            )));
        }
        if !(x >= 0.0) {
            return Err(Error::domain(format!(
                "Bessel argument must be ≥ 0 (got x = {x})"
            )));
        }
        Ok(BesselArgs {
            n,
            x,
            half_odd: is_half_odd(n),
        })
    }

    /// Order asserted to satisfy n + 1/2 ∈ ℕ.
    pub fn half_odd(n: f64, x: f64) -> Result<Self> {
        let args = Self::new(n, x)?;
        if !args.half_odd {
            return Err(Error::domain(format!(
                "half-odd Bessel expansion requires n + 1/2 ∈ ℕ (got n = {n})"
            )));
        }
        Ok(args)
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn is_half_odd(&self) -> bool {
        self.half_odd
    }
}

/// I_n(x) for n + 1/2 ∈ ℕ from the finite exponential expansion
///
/// I_{ν+1/2}(x) = (2πx)^{-1/2} Σ_{k=0}^{ν} (ν+k)! / (k! (ν−k)! (2x)^k) · [(−1)^k e^x + (−1)^{ν+1} e^{−x}].
///
/// At small x the expansion cancels badly; its condition number is estimated from the
/// same terms and the power series is used instead once it exceeds a small limit.
pub fn bessel_i_half_odd(args: BesselArgs) -> Result<f64> {
    let nu = half_odd_index(args.n)
        .filter(|_| args.half_odd)
        .ok_or_else(|| {
            Error::domain(format!(
                "half-odd Bessel expansion requires n + 1/2 ∈ ℕ (got n = {})",
                args.n
            ))
        })?;
    let x = args.x;
    if x == 0.0 {
        return Ok(0.0);
    }
    let (sum, abs_sum) = half_odd_terms(nu, x);
    if abs_sum > HALF_ODD_CONDITION_LIMIT * sum.abs() && x <= SERIES_MAX_ARG {
        return bessel_i_series(args.n, x);
    }
    Ok(sum / (2.0 * PI * x).sqrt())
}

/// Signed and absolute sums of the bracketed finite expansion, without the (2πx)^{-1/2} factor.
fn half_odd_terms(nu: u32, x: f64) -> (f64, f64) {
    let (cosh2, sinh2) = (2.0 * x.cosh(), 2.0 * x.sinh());
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut inv_power = 1.0;
    for k in 0..=nu {
        let coeff = half_odd_coefficient(nu, k) * inv_power;
        // (−1)^k e^x + (−1)^{ν+1} e^{−x} collapses to ±2cosh or ±2sinh
        let pair = if (k + nu + 1).is_multiple_of(2) {
            cosh2
        } else {
            sinh2
        };
        let term = if k % 2 == 0 {
            coeff * pair
        } else {
            -coeff * pair
        };
        sum += term;
        abs_sum += term.abs();
        inv_power /= 2.0 * x;
    }
    (sum, abs_sum)
}

/// (ν+k)! / (k! (ν−k)!).
pub(crate) fn half_odd_coefficient(nu: u32, k: u32) -> f64 {
    let mut c = 1.0;
    for j in (nu - k + 1)..=(nu + k) {
        c *= f64::from(j);
    }
    for j in 1..=k {
        c /= f64::from(j);
    }
    c
}

/// I_n(x) from its ascending power series.
pub fn bessel_i_series(n: f64, x: f64) -> Result<f64> {
    let reduced = bessel_i_series_reduced(n, x)?;
    Ok((0.5 * x).powf(n) * reduced)
}

/// I_n(x) / (x/2)^n = Σ_k (x²/4)^k / (k! Γ(n+k+1)).
///
/// Finite at x = 0, so integrands can fold the (x/2)^n factor into their own power of x.
pub fn bessel_i_series_reduced(n: f64, x: f64) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::domain(format!(
            "Bessel order must be ≥ 0 (got n = {n})"
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(format!(
            "Bessel argument must be ≥ 0 (got x = {x})"
        )));
    }
    if x > SERIES_MAX_ARG {
        return Err(Error::domain(format!(
            "Bessel power series is limited to x ≤ {SERIES_MAX_ARG} (got x = {x})"
        )));
    }
    let q = 0.25 * x * x;
    let mut term = 1.0 / gamma(n + 1.0);
    let mut sum = term;
    if q == 0.0 {
        return Ok(sum);
    }
    for k in 1..SERIES_MAX_TERMS {
        let k = k as f64;
        term *= q / (k * (n + k));
        sum += term;
        if term < 1e-17 * sum {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        terms: SERIES_MAX_TERMS,
        partial: sum,
    })
}

/// (x^{-1} d/dx)^i (sinh x / x), i.e. the modified spherical Bessel function i_i(x) / x^i.
///
/// Equals 1/(2i+1)!! at x = 0.
pub(crate) fn spherical_reduced(i: u32, x: f64) -> Result<f64> {
    let n = f64::from(i) + 0.5;
    if x <= SERIES_MAX_ARG {
        Ok(PI.sqrt() * 0.5f64.powi(i as i32 + 1) * bessel_i_series_reduced(n, x)?)
    } else {
        let value = bessel_i_half_odd(BesselArgs::half_odd(n, x)?)?;
        Ok((PI / (2.0 * x)).sqrt() * value / x.powi(i as i32))
    }
}
