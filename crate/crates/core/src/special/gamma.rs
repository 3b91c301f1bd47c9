//! Lower incomplete gamma, its regularized forms, and the Pochhammer symbol.

use statrs::function::gamma::{gamma as lanczos_gamma, ln_gamma};

use crate::error::{Error, Result};

const MAX_ITER: usize = 2000;
const EPS: f64 = 1e-17;
const FPMIN: f64 = 1e-300;

/// Arguments of γ(s, x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaArgs {
    s: f64,
    x: f64,
}

impl GammaArgs {
    pub fn new(s: f64, x: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::domain(format!(
                "incomplete gamma requires s > 0 (got s = {s})"
            )));
        }
        if !(x >= 0.0) {
            return Err(Error::domain(format!(
                "incomplete gamma requires x ≥ 0 (got x = {x})"
            )));
        }
        Ok(GammaArgs { s, x })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Γ(s), exact products on the integer and half-integer lattice up to 2s = 60.
pub fn gamma(s: f64) -> f64 {
    let twice = 2.0 * s;
    if twice.fract() == 0.0 && (1.0..=60.0).contains(&twice) {
        let start = if twice % 2.0 == 0.0 {
            1.0
        } else {
            std::f64::consts::PI.sqrt()
        };
        let base = if twice % 2.0 == 0.0 { 1.0 } else { 0.5 };
        return (0..(s - base) as u32).fold(start, |acc, i| acc * (base + f64::from(i)));
    }
    lanczos_gamma(s)
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + f64::from(i)))
}

/// γ(s, x) = ∫₀ˣ t^{s−1} e^{−t} dt.
///
/// Series for x < s + 1, otherwise Γ(s) minus the continued-fraction tail.
pub fn lower_incomplete_gamma(args: GammaArgs) -> Result<f64> {
    let GammaArgs { s, x } = args;
    if x == 0.0 {
        return Ok(0.0);
    }
    let log_prefactor = s * x.ln() - x;
    if x < s + 1.0 {
        Ok(log_prefactor.exp() * lower_series(s, x)?)
    } else {
        let tail = log_prefactor.exp() * upper_continued_fraction(s, x)?;
        Ok(gamma(s) - tail)
    }
}

/// Convenience wrapper around [`lower_incomplete_gamma`].
pub fn lower_gamma(s: f64, x: f64) -> Result<f64> {
    lower_incomplete_gamma(GammaArgs::new(s, x)?)
}

/// Regularized lower incomplete gamma P(s, x) = γ(s, x) / Γ(s).
pub fn regularized_gamma_p(s: f64, x: f64) -> Result<f64> {
    regularized_pair(GammaArgs::new(s, x)?).map(|(p, _)| p)
}

/// Regularized upper incomplete gamma Q(s, x) = 1 − P(s, x).
pub fn regularized_gamma_q(s: f64, x: f64) -> Result<f64> {
    regularized_pair(GammaArgs::new(s, x)?).map(|(_, q)| q)
}

/// (P, Q), each computed on the side where it does not suffer cancellation.
pub(crate) fn regularized_pair(args: GammaArgs) -> Result<(f64, f64)> {
    let GammaArgs { s, x } = args;
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    let log_prefactor = s * x.ln() - x - ln_gamma(s);
    if x < s + 1.0 {
        let p = (log_prefactor.exp() * lower_series(s, x)?).min(1.0);
        Ok((p, 1.0 - p))
    } else {
        let q = (log_prefactor.exp() * upper_continued_fraction(s, x)?).min(1.0);
        Ok((1.0 - q, q))
    }
}

/// ∫₀ˣ u^l e^{−u²} du for any real x (odd in x for even l, even for odd l).
pub fn gaussian_moment(l: u32, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let half = 0.5 * lower_gamma(0.5 * f64::from(l + 1), x * x)?;
    if x > 0.0 || l % 2 == 1 {
        Ok(half)
    } else {
        Ok(-half)
    }
}

/// ∫ₓʸ u^l e^{−u²} du.
///
/// Intervals in a Gaussian tail are taken as a difference of upper incomplete gammas, so the
/// result keeps its relative accuracy where G_l(y) − G_l(x) would cancel.
pub fn gaussian_moment_between(l: u32, x: f64, y: f64) -> Result<f64> {
    if x > y {
        return gaussian_moment_between(l, y, x).map(|v| -v);
    }
    if y <= 0.0 {
        let mirrored = gaussian_moment_between(l, -y, -x)?;
        return Ok(if l.is_multiple_of(2) {
            mirrored
        } else {
            -mirrored
        });
    }
    let s = 0.5 * f64::from(l + 1);
    if x >= 0.0 && x * x >= s + 1.0 {
        return Ok(0.5 * (upper_tail(s, x * x)? - upper_tail(s, y * y)?));
    }
    Ok(gaussian_moment(l, y)? - gaussian_moment(l, x)?)
}

/// Γ(s, x) for x ≥ s + 1.
fn upper_tail(s: f64, x: f64) -> Result<f64> {
    Ok((s * x.ln() - x).exp() * upper_continued_fraction(s, x)?)
}

/// Σ_k x^k / (s (s+1) ... (s+k)); multiply by x^s e^{−x} to get γ(s, x).
fn lower_series(s: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    for k in 1..MAX_ITER {
        term *= x / (s + k as f64);
        sum += term;
        if term.abs() < sum.abs() * EPS {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_ITER,
        partial: sum,
    })
}

/// Modified Lentz evaluation of Γ(s, x) / (x^s e^{−x}).
fn upper_continued_fraction(s: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_ITER,
        partial: h,
    })
}
