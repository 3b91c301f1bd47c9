//! Closed form of T_B(m, n, r) for half-odd n and integer m.
//!
//! Substituting the finite exponential expansion of I_{ν+1/2} turns the defining integral
//! into Σ_k w_k r^{n−m+1/2−k} ∫₀^B t^{L_k} [(−1)^k e^{−(t−r)²} + (−1)^{ν+1} e^{−(t+r)²}] dt with
//! L_k = m − n − 1/2 − k. Two exact routes evaluate it:
//!
//! * [`ClosedFormRoute::BinomialSum`] expands (u ± r)^{L_k} binomially and sums Gaussian
//!   moments G_l(x) = ∫₀ˣ u^l e^{−u²} du at B + r, B − r and r. Needs every L_k ≥ 0 (m ≥ 2n).
//! * [`ClosedFormRoute::IntegrationByParts`] writes I_{ν+1/2} as x^{ν+1/2} (x^{-1} d/dx)^ν
//!   (sinh x / x) and integrates by parts ν times. Needs every intermediate polynomial to
//!   vanish at 0, which holds when m is odd or m ≥ 2n.
//!
//! For even m < 2n a non-elementary ∫ sinh(2rt) e^{−t²} / t dt survives and no closed form
//! in incomplete gammas exists.

use std::f64::consts::PI;

use super::TorontoParams;
use crate::error::{Error, Result};
use crate::special::{
    gaussian_moment_between, half_odd_coefficient, half_odd_index, spherical_reduced,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormRoute {
    BinomialSum,
    IntegrationByParts,
}

/// Order index ν = n − 1/2 and integer m, or why the closed form does not apply.
fn lattice(p: &TorontoParams) -> Result<(u32, u32)> {
    let nu = half_odd_index(p.n()).ok_or_else(|| {
        Error::domain(format!(
            "closed form requires n + 1/2 ∈ ℕ (got n = {})",
            p.n()
        ))
    })?;
    let m = p.m().round();
    if (p.m() - m).abs() > 1e-12 * p.m().max(1.0) || m > 1e4 {
        return Err(Error::domain(format!(
            "closed form requires m − n − 1/2 ∈ ℕ, i.e. integer m (got m = {})",
            p.m()
        )));
    }
    Ok((nu, m as u32))
}

/// Route used by [`toronto_closed_form`], or the reason none applies.
pub fn closed_form_route(p: &TorontoParams) -> Result<ClosedFormRoute> {
    let (nu, m) = lattice(p)?;
    if m > 2 * nu {
        Ok(ClosedFormRoute::BinomialSum)
    } else if m % 2 == 1 {
        Ok(ClosedFormRoute::IntegrationByParts)
    } else {
        Err(Error::ClosedFormUnavailable(format!(
            "even m = {m} below 2n = {}: a non-elementary ∫ sinh(2rt) e^(−t²)/t dt remains",
            2 * nu + 1
        )))
    }
}

/// T_B(m, n, r) in closed form.
pub fn toronto_closed_form(p: &TorontoParams) -> Result<f64> {
    let route = closed_form_route(p)?;
    toronto_closed_form_via(p, route)
}

/// T_B(m, n, r) through a specific route; fails if that route does not apply.
pub fn toronto_closed_form_via(p: &TorontoParams, route: ClosedFormRoute) -> Result<f64> {
    let (nu, m) = lattice(p)?;
    let available = match route {
        ClosedFormRoute::BinomialSum => m > 2 * nu,
        ClosedFormRoute::IntegrationByParts => m > 2 * nu || m % 2 == 1,
    };
    if !available {
        closed_form_route(p)?;
        return Err(Error::ClosedFormUnavailable(format!(
            "{route:?} needs m ≥ 2n (got m = {m}, n = {})",
            p.n()
        )));
    }
    if p.b() == 0.0 {
        return Ok(0.0);
    }
    match route {
        ClosedFormRoute::BinomialSum => binomial_sum(m, nu, p.r(), p.b()),
        ClosedFormRoute::IntegrationByParts => by_parts(m, nu, p.r(), p.b()),
    }
}

fn sign(e: u32) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Gaussian moments over [r, r + B] and [r − B, r] for l = 0..=max_l.
fn moments(max_l: u32, r: f64, b: f64) -> Result<Vec<[f64; 2]>> {
    (0..=max_l)
        .map(|l| {
            Ok([
                gaussian_moment_between(l, r, r + b)?,
                gaussian_moment_between(l, r - b, r)?,
            ])
        })
        .collect()
}

/// Σ_k Σ_{l≤L_k} w_k C(L_k, l) r^{−2k−l}
///   · [(−1)^{m−k−l} G_l(B+r) + (−1)^k G_l(B−r) + ((−1)^{k+l} − (−1)^{m−k−l}) G_l(r)],
/// grouped as (−1)^{m−k−l} ∫_r^{r+B} + (−1)^{k+l} ∫_{r−B}^r of u^l e^{−u²},
/// w_k = (ν+k)! / (√π k! (ν−k)! 4^k).
fn binomial_sum(m: u32, nu: u32, r: f64, b: f64) -> Result<f64> {
    let top = m - nu - 1;
    let g = moments(top, r, b)?;
    let mut total = 0.0;
    for k in 0..=nu {
        let weight = half_odd_coefficient(nu, k) / (PI.sqrt() * 4f64.powi(k as i32));
        let len = top - k;
        for l in 0..=len {
            let coeff = weight * binomial(len, l) * r.powi(-((2 * k + l) as i32));
            let [above, below] = g[l as usize];
            total += coeff * (sign(m + k + l) * above + sign(k + l) * below);
        }
    }
    Ok(total)
}

fn double_factorial(n: u32) -> f64 {
    (1..=n).rev().step_by(2).map(f64::from).product()
}

/// ∫₀^B t^m e^{−t²} D^ν g dt with D = t^{-1} d/dt and g(t) = sinh(2rt)/(2rt), reduced by ν
/// integrations by parts: P₀ = t^m, P_{j+1} = 2P_j − (P_j/t)', leaving elementary boundary
/// terms and ∫₀^B (P_ν/t) e^{−t²} sinh(2rt) dt / (2r), which expands into Gaussian moments.
fn by_parts(m: u32, nu: u32, r: f64, b: f64) -> Result<f64> {
    let n = f64::from(nu) + 0.5;
    let scale = 2.0 * (2.0 / PI).sqrt() * 2f64.powf(1.0 - n) * r.powi(2 - m as i32);
    let four_r2 = 4.0 * r * r;
    let x = 2.0 * r * b;
    let exp_r2 = (-r * r).exp();
    // e^{−r²−B²} φ_i(2rB) = e^{−(B−r)²} · e^{−2rB} φ_i(2rB)
    let boundary_decay = (-(b - r) * (b - r)).exp() * (-x).exp();

    let mut poly = vec![0.0; m as usize + 1];
    poly[m as usize] = 1.0;
    let mut total = 0.0;
    for j in 0..nu {
        let quotient = divide_by_t(&poly)?;
        let i = nu - 1 - j;
        let level = four_r2.powi(i as i32);
        total += horner(&quotient, b) * boundary_decay * level * spherical_reduced(i, x)?;
        total -= quotient[0] * exp_r2 * level / double_factorial(2 * i + 1);

        let mut next: Vec<f64> = poly.iter().map(|c| 2.0 * c).collect();
        for (q, c) in quotient.iter().enumerate().skip(1) {
            next[q - 1] -= q as f64 * c;
        }
        poly = next;
    }

    let quotient = divide_by_t(&poly)?;
    let g = moments(quotient.len() as u32 - 1, r, b)?;
    let mut remainder = 0.0;
    for (q, &c) in quotient.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let q = q as u32;
        // e^{−r²} ∫₀^B t^q e^{−t²} sinh(2rt) dt
        let mut h = 0.0;
        for l in 0..=q {
            let [above, below] = g[l as usize];
            h += binomial(q, l) * r.powi((q - l) as i32) * (sign(l) * below - sign(q - l) * above);
        }
        remainder += c * 0.5 * h;
    }
    total += remainder / (2.0 * r);
    Ok(scale * total)
}

fn divide_by_t(poly: &[f64]) -> Result<Vec<f64>> {
    if poly[0] != 0.0 {
        return Err(Error::ClosedFormUnavailable(
            "integration by parts left a term not divisible by t".into(),
        ));
    }
    Ok(poly[1..].to_vec())
}

fn horner(poly: &[f64], t: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, c| acc * t + c)
}
