//! Grid verification of every analytic representation against the quadrature oracle.

use std::fmt;

use crate::bounds::{ceil_snap, floor_snap};
use crate::error::{Error, Result};
use crate::ilhi::{ilhi_closed_form, ilhi_lower_bound, ilhi_upper_bound, IlhiParams};
use crate::quadrature::{ilhi_oracle, toronto_oracle, QuadSpec};
use crate::special::is_half_odd;
use crate::toronto::{
    closed_form_route, toronto_closed_form, toronto_lower_bound, toronto_marcum_identity,
    toronto_series_3, toronto_series_4, toronto_upper_bound, SeriesControl, TorontoParams,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Oracle settings used for verification: relative accuracy only, since grid values span
/// many decades.
pub fn verification_quad() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-250,
        rel_tol: 1e-12,
        max_subdivisions: 4000,
    }
}

/// Axes of the verification grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    pub toronto_m: Vec<f64>,
    /// Orders checked for closed form, series and oracle agreement.
    pub toronto_n: Vec<f64>,
    /// Orders checked against the bound sandwich.
    pub sandwich_n: Vec<f64>,
    pub sandwich_m: Vec<f64>,
    pub r: Vec<f64>,
    pub b: Vec<f64>,
    pub identity_m: Vec<f64>,
    pub identity_r: Vec<f64>,
    pub ilhi_m: Vec<f64>,
    pub ilhi_n: Vec<f64>,
    pub ilhi_sandwich_n: Vec<f64>,
    pub a: Vec<f64>,
    pub z: Vec<f64>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        VerifyGrid {
            toronto_m: vec![1.0, 2.0, 3.0, 4.0],
            toronto_n: vec![0.5, 1.5, 2.5],
            sandwich_n: vec![0.4, 0.6, 1.3, 2.4, 2.6],
            sandwich_m: vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            r: vec![0.5, 1.0, 2.0, 4.0],
            b: vec![0.5, 1.0, 2.0, 4.0],
            identity_m: vec![2.0, 4.0],
            identity_r: vec![0.5, 1.0, 2.0],
            ilhi_m: vec![1.0, 2.0, 3.0],
            ilhi_n: vec![0.5, 1.5, 2.5],
            ilhi_sandwich_n: vec![0.4, 0.6, 1.3, 1.7, 2.4, 2.6],
            a: vec![1.0, 1.5, 2.0, 3.0, 5.0],
            z: vec![0.5, 1.0, 2.0, 5.0],
        }
    }
}

/// Which functions a verification run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Toronto,
    Ilhi,
}

/// Worst case of one comparison over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub name: &'static str,
    /// Largest error, or for sandwiches the largest signed violation (negative means strict).
    pub worst: f64,
    pub limit: f64,
    pub worst_at: String,
    pub points: usize,
    pub skipped: usize,
    pub failures: usize,
}

impl Comparison {
    fn new(name: &'static str, limit: f64) -> Self {
        Comparison {
            name,
            worst: f64::NEG_INFINITY,
            limit,
            worst_at: String::new(),
            points: 0,
            skipped: 0,
            failures: 0,
        }
    }

    fn record(&mut self, error: f64, at: impl FnOnce() -> String) {
        self.points += 1;
        let bad = !(error <= self.limit);
        if bad {
            self.failures += 1;
        }
        if error > self.worst || error.is_nan() || self.worst_at.is_empty() {
            self.worst = error;
            self.worst_at = at();
        }
    }

    /// For strict inequalities the limit is 0 and the recorded error must stay below it.
    fn record_strict(&mut self, violation: f64, at: impl FnOnce() -> String) {
        self.points += 1;
        if !(violation < 0.0) {
            self.failures += 1;
        }
        if violation > self.worst || violation.is_nan() || self.worst_at.is_empty() {
            self.worst = violation;
            self.worst_at = at();
        }
    }

    fn fail(&mut self, at: String, err: &Error) {
        self.points += 1;
        self.failures += 1;
        self.worst = f64::INFINITY;
        self.worst_at = format!("{at}: {err}");
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<28} max {:>10.3e} (limit {:.1e}) over {} points",
            self.name, self.worst, self.limit, self.points
        )?;
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        if self.failures > 0 {
            write!(f, ", {} failing; worst at {}", self.failures, self.worst_at)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub comparisons: Vec<Comparison>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(Comparison::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.name == name)
    }

    /// The failing comparison with the largest violation relative to its limit.
    pub fn worst_offender(&self) -> Option<&Comparison> {
        self.comparisons
            .iter()
            .filter(|c| !c.passed())
            .max_by(|a, b| {
                let scale = |c: &Comparison| {
                    if c.limit > 0.0 {
                        c.worst / c.limit
                    } else {
                        c.worst
                    }
                };
                scale(a).total_cmp(&scale(b))
            })
    }
}

fn rel(value: f64, reference: f64) -> f64 {
    if value == reference {
        0.0
    } else {
        ((value - reference) / reference).abs()
    }
}

fn toronto_at(m: f64, n: f64, r: f64, b: f64) -> String {
    format!("toronto(m={m}, n={n}, r={r}, B={b})")
}

fn ilhi_at(m: f64, n: f64, a: f64, z: f64) -> String {
    format!("ilhi(m={m}, n={n}, a={a}, z={z})")
}

/// Runs every comparison on `grid`. `tol` is the closed-form-versus-oracle tolerance; the
/// series are held to 10·tol against the closed form and the Marcum identity to tol/10 in
/// absolute terms.
pub fn run_verify(
    grid: &VerifyGrid,
    scope: Scope,
    tol: f64,
    quad: &QuadSpec,
) -> Result<VerifyReport> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "verification tolerance must be > 0 (got {tol})"
        )));
    }
    let mut comparisons = Vec::new();
    if scope != Scope::Ilhi {
        comparisons.extend(toronto_checks(grid, tol, quad));
    }
    if scope != Scope::Toronto {
        comparisons.extend(ilhi_checks(grid, tol, quad));
    }
    Ok(VerifyReport { comparisons })
}

fn toronto_checks(grid: &VerifyGrid, tol: f64, quad: &QuadSpec) -> Vec<Comparison> {
    let ctl = SeriesControl::default();
    let mut closed = Comparison::new("toronto closed vs oracle", tol);
    let mut s3 = Comparison::new("toronto series-3 vs closed", 10.0 * tol);
    let mut s4 = Comparison::new("toronto series-4 vs closed", 10.0 * tol);
    let mut identity = Comparison::new("toronto Marcum identity", tol / 10.0);
    let mut sandwich = Comparison::new("toronto bound sandwich", 0.0);

    for &m in &grid.toronto_m {
        for &n in grid.toronto_n.iter().filter(|&&n| n <= m && is_half_odd(n)) {
            for &r in &grid.r {
                for &b in &grid.b {
                    let at = || toronto_at(m, n, r, b);
                    let Ok(p) = TorontoParams::new(m, n, r, b) else {
                        closed.skipped += 1;
                        continue;
                    };
                    if closed_form_route(&p).is_err() {
                        closed.skipped += 1;
                        continue;
                    }
                    let c = match toronto_closed_form(&p) {
                        Ok(v) => v,
                        Err(e) => {
                            closed.fail(at(), &e);
                            continue;
                        }
                    };
                    match toronto_oracle(&p, quad) {
                        Ok(q) => closed.record(rel(c, q.value), at),
                        Err(e) => closed.fail(at(), &e),
                    }
                    match toronto_series_3(&p, &ctl) {
                        Ok(v) => s3.record(rel(v, c), at),
                        Err(e) => s3.fail(at(), &e),
                    }
                    match toronto_series_4(&p, &ctl) {
                        Ok(v) => s4.record(rel(v, c), at),
                        Err(e) => s4.fail(at(), &e),
                    }
                }
            }
        }
    }

    for &m in grid
        .identity_m
        .iter()
        .filter(|&&m| m >= 1.0 && is_half_odd(0.5 * (m - 1.0)))
    {
        for &r in &grid.identity_r {
            for &b in &grid.b {
                let at = || toronto_at(m, 0.5 * (m - 1.0), r, b);
                let outcome = TorontoParams::new(m, 0.5 * (m - 1.0), r, b)
                    .and_then(|p| toronto_closed_form(&p))
                    .and_then(|c| Ok((c - toronto_marcum_identity(m, r, b)?).abs()));
                match outcome {
                    Ok(d) => identity.record(d, at),
                    Err(e) => identity.fail(at(), &e),
                }
            }
        }
    }

    for &m in &grid.sandwich_m {
        for &n in grid.sandwich_n.iter().filter(|&&n| !is_half_odd(n)) {
            if ceil_snap(n) > m {
                continue;
            }
            for &r in &grid.r {
                for &b in &grid.b {
                    let Ok(p) = TorontoParams::new(m, n, r, b) else {
                        sandwich.skipped += 1;
                        continue;
                    };
                    let at = || toronto_at(m, n, r, b);
                    let lower = toronto_lower_bound(&p);
                    let upper = if floor_snap(n).is_ok() {
                        Some(toronto_upper_bound(&p))
                    } else {
                        None
                    };
                    if matches!(lower, Err(Error::ClosedFormUnavailable(_)))
                        || matches!(upper, Some(Err(Error::ClosedFormUnavailable(_))))
                    {
                        sandwich.skipped += 1;
                        continue;
                    }
                    check_sandwich(
                        &mut sandwich,
                        lower,
                        upper,
                        toronto_oracle(&p, quad).map(|q| q.value),
                        at,
                    );
                }
            }
        }
    }

    vec![closed, s3, s4, identity, sandwich]
}

/// Records max((lower − exact)/exact, (exact − upper)/exact); strictness needs it below 0.
fn check_sandwich(
    cmp: &mut Comparison,
    lower: Result<f64>,
    upper: Option<Result<f64>>,
    exact: Result<f64>,
    at: impl Fn() -> String,
) {
    let outcome = (|| {
        let exact = exact?;
        let mut violation = (lower? - exact) / exact;
        if let Some(upper) = upper {
            violation = violation.max((exact - upper?) / exact);
        }
        Ok::<f64, Error>(violation)
    })();
    match outcome {
        Ok(v) => cmp.record_strict(v, at),
        Err(e) => cmp.fail(at(), &e),
    }
}

fn ilhi_checks(grid: &VerifyGrid, tol: f64, quad: &QuadSpec) -> Vec<Comparison> {
    let mut closed = Comparison::new("ilhi closed vs oracle", tol);
    let mut sandwich = Comparison::new("ilhi bound sandwich", 0.0);
    for &m in &grid.ilhi_m {
        for &a in &grid.a {
            for &z in &grid.z {
                for &n in grid.ilhi_n.iter().filter(|&&n| n <= m && is_half_odd(n)) {
                    let at = || ilhi_at(m, n, a, z);
                    let outcome = IlhiParams::new(m, n, a, z).and_then(|p| {
                        let c = ilhi_closed_form(&p)?;
                        Ok(rel(c, ilhi_oracle(&p, quad)?.value))
                    });
                    match outcome {
                        Ok(e) => closed.record(e, at),
                        Err(e) if a < 1.0 && e.is_domain() => closed.skipped += 1,
                        Err(e) => closed.fail(at(), &e),
                    }
                }
                for &n in grid.ilhi_sandwich_n.iter().filter(|&&n| !is_half_odd(n)) {
                    if ceil_snap(n) > m || a < 1.0 {
                        continue;
                    }
                    let Ok(p) = IlhiParams::new(m, n, a, z) else {
                        sandwich.skipped += 1;
                        continue;
                    };
                    let upper = if floor_snap(n).is_ok() {
                        Some(ilhi_upper_bound(&p))
                    } else {
                        None
                    };
                    check_sandwich(
                        &mut sandwich,
                        ilhi_lower_bound(&p),
                        upper,
                        ilhi_oracle(&p, quad).map(|q| q.value),
                        || ilhi_at(m, n, a, z),
                    );
                }
            }
        }
    }
    vec![closed, sandwich]
}
