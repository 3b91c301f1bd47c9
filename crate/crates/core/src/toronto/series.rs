//! Two infinite-series representations of T_B(m, n, r), with a = (m + 1)/2:
//!
//! T = B^{2a} r^{2(n−a+1)} e^{−B²−r²} / Γ(n+1) · Σ_k B^{2k} Y_k / (a)_{k+1},
//!     Y_k = Σ_{i≤k} (a)_i r^{2i} / ((n+1)_i i!)
//!
//! T = r^{2(n−a+1)} e^{−r²} Σ_k r^{2k} γ(a+k, B²) / (k! Γ(n+k+1))
//!
//! Terms are formed in the log domain so that large B or r do not overflow the partial sums.

use statrs::function::gamma::ln_gamma;

use super::TorontoParams;
use crate::error::{Error, Result};
use crate::special::regularized_gamma_p;

/// Truncation control shared by both series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(Error::domain(format!(
                "series tolerance must be > 0 (got {rel_tol})"
            )));
        }
        if max_terms == 0 {
            return Err(Error::domain("series term cap must be at least 1"));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

/// A converged partial sum with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms_used: usize,
    pub last_term: f64,
}

/// Power of the outer factor in the Y_k series.
///
/// `B` reproduces the defining integral. `R` is the variant with r^{2k} in place of B^{2k};
/// it coincides with `B` only when r = B and is kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Series3Power {
    #[default]
    B,
    R,
}

/// Second argument of γ(a+k, ·) in the incomplete-gamma series.
///
/// `BSquared` reproduces the defining integral. `B` is kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Series4Argument {
    #[default]
    BSquared,
    B,
}

/// Sums `term(k)` until |term| / |partial| < rel_tol for three consecutive terms.
fn accumulate(ctl: &SeriesControl, mut term: impl FnMut(usize) -> f64) -> Result<SeriesSum> {
    let mut partial = 0.0;
    let mut quiet = 0;
    for k in 0..ctl.max_terms {
        let last = term(k);
        partial += last;
        if !partial.is_finite() {
            return Err(Error::NonConvergence {
                terms: k + 1,
                partial,
            });
        }
        if partial != 0.0 && (last / partial).abs() < ctl.rel_tol {
            quiet += 1;
            if quiet == 3 {
                return Ok(SeriesSum {
                    value: partial,
                    terms_used: k + 1,
                    last_term: last,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: ctl.max_terms,
        partial,
    })
}

fn zero() -> SeriesSum {
    SeriesSum {
        value: 0.0,
        terms_used: 0,
        last_term: 0.0,
    }
}

/// T_B(m, n, r) through the Y_k series with default control.
pub fn toronto_series_3(p: &TorontoParams, ctl: &SeriesControl) -> Result<f64> {
    toronto_series_3_with(p, ctl, Series3Power::default()).map(|s| s.value)
}

pub fn toronto_series_3_with(
    p: &TorontoParams,
    ctl: &SeriesControl,
    power: Series3Power,
) -> Result<SeriesSum> {
    let (n, r, b) = (p.n(), p.r(), p.b());
    if b == 0.0 {
        return Ok(zero());
    }
    let a = 0.5 * (p.m() + 1.0);
    let (ln_r2, ln_b2) = ((r * r).ln(), (b * b).ln());
    let ln_outer = match power {
        Series3Power::B => ln_b2,
        Series3Power::R => ln_r2,
    };
    let ln_prefactor = a * ln_b2 + (n - a + 1.0) * ln_r2 - ln_gamma(n + 1.0) - b * b - r * r;

    // ln of B^{2k} / (a)_{k+1}, ln of the newest Y term, ln Y_k
    let mut ln_outer_k = -a.ln();
    let mut ln_y_term = 0.0;
    let mut ln_y = 0.0;
    accumulate(ctl, |k| {
        if k > 0 {
            let kf = k as f64;
            ln_outer_k += ln_outer - (a + kf).ln();
            ln_y_term += (a + kf - 1.0).ln() + ln_r2 - (n + kf).ln() - kf.ln();
            ln_y = log_add(ln_y, ln_y_term);
        }
        (ln_prefactor + ln_outer_k + ln_y).exp()
    })
}

fn log_add(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

/// T_B(m, n, r) through the incomplete-gamma series with default control.
pub fn toronto_series_4(p: &TorontoParams, ctl: &SeriesControl) -> Result<f64> {
    toronto_series_4_with(p, ctl, Series4Argument::default()).map(|s| s.value)
}

pub fn toronto_series_4_with(
    p: &TorontoParams,
    ctl: &SeriesControl,
    argument: Series4Argument,
) -> Result<SeriesSum> {
    let (n, r, b) = (p.n(), p.r(), p.b());
    if b == 0.0 {
        return Ok(zero());
    }
    let a = 0.5 * (p.m() + 1.0);
    let x = match argument {
        Series4Argument::BSquared => b * b,
        Series4Argument::B => b,
    };
    let ln_r2 = (r * r).ln();
    let ln_prefactor = (n - a + 1.0) * ln_r2 - r * r;
    let mut failure = None;
    let sum = accumulate(ctl, |k| {
        let kf = k as f64;
        let s = a + kf;
        let p_reg = match regularized_gamma_p(s, x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                return f64::NAN;
            }
        };
        if p_reg == 0.0 {
            return 0.0;
        }
        let ln_term = ln_prefactor + kf * ln_r2 + p_reg.ln() + ln_gamma(s)
            - ln_gamma(kf + 1.0)
            - ln_gamma(n + kf + 1.0);
        ln_term.exp()
    });
    match failure {
        Some(e) => Err(e),
        None => sum,
    }
}
