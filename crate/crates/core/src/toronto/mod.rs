//! The incomplete Toronto function
//!
//! T_B(m, n, r) = 2 r^{n−m+1} e^{−r²} ∫₀^B t^{m−n} e^{−t²} I_n(2rt) dt
//!
//! in closed form (half-odd n), as two convergent series, through the Marcum Q-function
//! when n = (m−1)/2, and bracketed by closed forms at neighbouring half-odd orders.

mod bounds;
mod closed;
mod series;

pub use bounds::{toronto_bounds, toronto_lower_bound, toronto_upper_bound};
pub use closed::{
    closed_form_route, toronto_closed_form, toronto_closed_form_via, ClosedFormRoute,
};
pub use series::{
    toronto_series_3, toronto_series_3_with, toronto_series_4, toronto_series_4_with, Series3Power,
    Series4Argument, SeriesControl, SeriesSum,
};

use crate::error::{Error, Result};
use crate::special::{marcum_q_complement, MarcumArgs};

/// Parameters (m, n, r, B) of T_B(m, n, r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorontoParams {
    m: f64,
    n: f64,
    r: f64,
    b: f64,
}

impl TorontoParams {
    pub fn new(m: f64, n: f64, r: f64, b: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain(format!(
                "Toronto function requires m > 0 (got m = {m})"
            )));
        }
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::domain(format!(
                "Toronto function requires n ≥ 0 (got n = {n})"
            )));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!(
                "Toronto function requires r > 0 (got r = {r})"
            )));
        }
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::domain(format!(
                "Toronto function requires B ≥ 0 (got B = {b})"
            )));
        }
        if m < n {
            return Err(Error::domain(format!(
                "Toronto function requires m ≥ n (got m = {m}, n = {n})"
            )));
        }
        Ok(TorontoParams { m, n, r, b })
    }

    /// Same (m, r, B) at another order.
    pub fn with_n(&self, n: f64) -> Result<Self> {
        Self::new(self.m, n, self.r, self.b)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Upper integration limit B.
    pub fn b(&self) -> f64 {
        self.b
    }
}

/// T_B(m, (m−1)/2, r) = 1 − Q_{(m+1)/2}(r√2, B√2).
pub fn toronto_marcum_identity(m: f64, r: f64, b: f64) -> Result<f64> {
    if !(m >= 1.0) || !m.is_finite() {
        return Err(Error::domain(format!(
            "Marcum identity needs n = (m−1)/2 ≥ 0, i.e. m ≥ 1 (got m = {m})"
        )));
    }
    if !(r > 0.0) {
        return Err(Error::domain(format!(
            "Marcum identity requires r > 0 (got r = {r})"
        )));
    }
    let s2 = std::f64::consts::SQRT_2;
    marcum_q_complement(MarcumArgs::new(0.5 * (m + 1.0), r * s2, b * s2)?)
}
