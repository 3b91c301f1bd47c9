//! Incomplete Lipschitz-Hankel integrals of the modified Bessel function,
//!
//! Ie_{m,n}(a, z) = ∫₀ᶻ x^m e^{−ax} I_n(x) dx,
//!
//! in closed form for half-odd n and bracketed by closed forms at neighbouring half-odd orders.

use std::f64::consts::PI;

use crate::bounds::{ceil_snap, check_snap_le_m, floor_snap, BoundPair};
use crate::error::{Error, Result};
use crate::special::{half_odd_coefficient, half_odd_index, lower_gamma};

/// Parameters (m, n, a, z) of Ie_{m,n}(a, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlhiParams {
    m: f64,
    n: f64,
    a: f64,
    z: f64,
}

impl IlhiParams {
    pub fn new(m: f64, n: f64, a: f64, z: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain(format!("ILHI requires m > 0 (got m = {m})")));
        }
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::domain(format!("ILHI requires n ≥ 0 (got n = {n})")));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::domain(format!("ILHI requires a > 0 (got a = {a})")));
        }
        if !(z >= 0.0) || !z.is_finite() {
            return Err(Error::domain(format!("ILHI requires z ≥ 0 (got z = {z})")));
        }
        if m < n {
            return Err(Error::domain(format!(
                "ILHI requires m ≥ n (got m = {m}, n = {n})"
            )));
        }
        Ok(IlhiParams { m, n, a, z })
    }

    /// Same (m, a, z) at another order.
    pub fn with_n(&self, n: f64) -> Result<Self> {
        Self::new(self.m, n, self.a, self.z)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Ie_{m,n}(a, z) in closed form, for half-odd n and a ≥ 1.
///
/// With ν = n − 1/2 and P = m − k + 1/2,
/// Σ_k w_k [(−1)^k γ(P, (a−1)z)/(a−1)^P + (−1)^{ν+1} γ(P, (a+1)z)/(a+1)^P],
/// w_k = (ν+k)! / (√π k! (ν−k)! 2^{k+1/2}). At a = 1 the first ratio is z^P / P.
pub fn ilhi_closed_form(p: &IlhiParams) -> Result<f64> {
    let nu = half_odd_index(p.n()).ok_or_else(|| {
        Error::domain(format!(
            "closed form requires n + 1/2 ∈ ℕ (got n = {})",
            p.n()
        ))
    })?;
    let (m, a, z) = (p.m(), p.a(), p.z());
    if a < 1.0 {
        return Err(Error::domain(format!(
            "closed form requires a ≥ 1 (got a = {a}); use the oracle for a in (0, 1)"
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let far_sign = if nu % 2 == 0 { -1.0 } else { 1.0 };
    let mut total = 0.0;
    for k in 0..=nu {
        let kf = f64::from(k);
        let weight = half_odd_coefficient(nu, k) / (PI.sqrt() * 2f64.powf(kf + 0.5));
        let power = m - kf + 0.5;
        let near = if a == 1.0 {
            z.powf(power) / power
        } else {
            let d = a - 1.0;
            lower_gamma(power, d * z)? / d.powf(power)
        };
        let far = lower_gamma(power, (a + 1.0) * z)? / (a + 1.0).powf(power);
        let near = if k % 2 == 0 { near } else { -near };
        total += weight * (near + far_sign * far);
    }
    Ok(total)
}

/// Closed form at order ⌈n + 1/2⌉ − 1/2.
pub fn ilhi_lower_bound(p: &IlhiParams) -> Result<f64> {
    let snapped = ceil_snap(p.n());
    check_snap_le_m(p.m(), snapped, "lower")?;
    ilhi_closed_form(&p.with_n(snapped)?)
}

/// Closed form at order ⌊n − 1/2⌋ + 1/2. Fails for n < 1/2.
pub fn ilhi_upper_bound(p: &IlhiParams) -> Result<f64> {
    let snapped = floor_snap(p.n())?;
    check_snap_le_m(p.m(), snapped, "upper")?;
    ilhi_closed_form(&p.with_n(snapped)?)
}

pub fn ilhi_bounds(p: &IlhiParams) -> Result<BoundPair> {
    let lower = ilhi_lower_bound(p)?;
    let upper = ilhi_upper_bound(p)?;
    if lower > upper {
        return Err(Error::BoundsInverted { lower, upper });
    }
    Ok(BoundPair {
        lower,
        upper,
        n_lower_snap: ceil_snap(p.n()),
        n_upper_snap: floor_snap(p.n())?,
    })
}
