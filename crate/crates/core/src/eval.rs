//! One entry point per function that picks or honours an evaluation method.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ilhi::{ilhi_closed_form, ilhi_lower_bound, ilhi_upper_bound, IlhiParams};
use crate::quadrature::{ilhi_oracle, toronto_oracle, QuadSpec};
use crate::toronto::{
    toronto_closed_form, toronto_lower_bound, toronto_series_3, toronto_series_4,
    toronto_upper_bound, SeriesControl, TorontoParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    ClosedForm,
    Series3,
    Series4,
    Lower,
    Upper,
    Oracle,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Series3 => "series-3",
            Method::Series4 => "series-4",
            Method::Lower => "lower",
            Method::Upper => "upper",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" | "closed-form" => Ok(Method::ClosedForm),
            "series3" | "series-3" => Ok(Method::Series3),
            "series4" | "series-4" => Ok(Method::Series4),
            "lower" => Ok(Method::Lower),
            "upper" => Ok(Method::Upper),
            "oracle" => Ok(Method::Oracle),
            _ => Err(Error::domain(format!(
                "unknown method '{s}' (expected closed, series3, series4, lower, upper or oracle)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    /// Present for the oracle only.
    pub error_estimate: Option<f64>,
}

impl EvalResult {
    fn exact(value: f64, method: Method) -> Self {
        EvalResult {
            value,
            method,
            error_estimate: None,
        }
    }
}

/// Evaluation settings shared by both functions.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvalOptions {
    pub series: SeriesControl,
    pub quad: QuadSpec,
}

/// T_B(m, n, r) by `method`, or by the closed form with the oracle as fallback when `None`.
pub fn eval_toronto(
    p: &TorontoParams,
    method: Option<Method>,
    opts: &EvalOptions,
) -> Result<EvalResult> {
    let Some(method) = method else {
        return match toronto_closed_form(p) {
            Ok(v) => Ok(EvalResult::exact(v, Method::ClosedForm)),
            Err(e) if e.is_domain() => eval_toronto(p, Some(Method::Oracle), opts),
            Err(e) => Err(e),
        };
    };
    let value = match method {
        Method::ClosedForm => toronto_closed_form(p)?,
        Method::Series3 => toronto_series_3(p, &opts.series)?,
        Method::Series4 => toronto_series_4(p, &opts.series)?,
        Method::Lower => toronto_lower_bound(p)?,
        Method::Upper => toronto_upper_bound(p)?,
        Method::Oracle => {
            let q = toronto_oracle(p, &opts.quad)?;
            return Ok(EvalResult {
                value: q.value,
                method,
                error_estimate: Some(q.error_estimate),
            });
        }
    };
    Ok(EvalResult::exact(value, method))
}

/// Ie_{m,n}(a, z) by `method`, or by the closed form with the oracle as fallback when `None`.
pub fn eval_ilhi(p: &IlhiParams, method: Option<Method>, opts: &EvalOptions) -> Result<EvalResult> {
    let Some(method) = method else {
        return match ilhi_closed_form(p) {
            Ok(v) => Ok(EvalResult::exact(v, Method::ClosedForm)),
            Err(e) if e.is_domain() => eval_ilhi(p, Some(Method::Oracle), opts),
            Err(e) => Err(e),
        };
    };
    let value = match method {
        Method::ClosedForm => ilhi_closed_form(p)?,
        Method::Series3 | Method::Series4 => {
            return Err(Error::domain(format!(
                "no {method} representation exists for the ILHI"
            )))
        }
        Method::Lower => ilhi_lower_bound(p)?,
        Method::Upper => ilhi_upper_bound(p)?,
        Method::Oracle => {
            let q = ilhi_oracle(p, &opts.quad)?;
            return Ok(EvalResult {
                value: q.value,
                method,
                error_estimate: Some(q.error_estimate),
            });
        }
    };
    Ok(EvalResult::exact(value, method))
}
