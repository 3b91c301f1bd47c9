//! Adaptive Gauss–Kronrod quadrature and the two defining-integral oracles.
//!
//! Panels are bisected worst-first until the summed |K15 − G7| estimate falls below
//! `max(abs_tol, rel_tol·|value|)`. Both integrands fold the (x/2)^n factor of I_n into their
//! own power of the integration variable, so nothing is ever raised to a negative power at 0.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ilhi::IlhiParams;
use crate::special::{bessel_i_series_reduced, SERIES_MAX_ARG};
use crate::toronto::TorontoParams;

/// Tolerances and budget of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_subdivisions: 2000,
        }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = QuadSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Both tolerances halved, same budget.
    pub fn halved(&self) -> Self {
        QuadSpec {
            abs_tol: self.abs_tol / 2.0,
            rel_tol: self.rel_tol / 2.0,
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be > 0"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("quadrature needs max_subdivisions ≥ 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
}

// 15-point Kronrod abscissae (positive half) and weights; the embedded 7-point Gauss
// rule uses every other abscissa.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F>(f: &F, lo: f64, hi: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() {
        return Err(Error::domain(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

/// ∫_lo^hi f(t) dt by worst-first adaptive bisection with a Kronrod-15/Gauss-7 pair.
pub fn integrate<F>(f: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    if lo == hi {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions_used: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod_panel(&f, lo, hi)?;
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut subdivisions = 0;
    loop {
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
            if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
                return Ok(QuadResult {
                    value,
                    error_estimate: error,
                    subdivisions_used: subdivisions,
                });
            }
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::ToleranceNotMet {
                value,
                error_estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = kronrod_panel(&f, worst.lo, mid)?;
        let right = kronrod_panel(&f, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }
}

/// Integrand of the incomplete Toronto function, 2 r^{n−m+1} e^{−r²} t^{m−n} e^{−t²} I_n(2rt),
/// evaluated as 2 r^{2n−m+1} t^m e^{−(t−r)²} · e^{−2rt} I_n(2rt)/(rt)^n.
pub fn toronto_integrand(p: &TorontoParams, t: f64) -> Result<f64> {
    let (m, n, r) = (p.m(), p.n(), p.r());
    let x = 2.0 * r * t;
    let reduced = bessel_i_series_reduced(n, x)? * (-x).exp();
    Ok(2.0 * r.powf(2.0 * n - m + 1.0) * t.powf(m) * (-(t - r) * (t - r)).exp() * reduced)
}

/// Integrand of the ILHI, x^m e^{−ax} I_n(x) = 2^{−n} x^{m+n} e^{−ax} · I_n(x)/(x/2)^n.
pub fn ilhi_integrand(p: &IlhiParams, x: f64) -> Result<f64> {
    let (m, n, a) = (p.m(), p.n(), p.a());
    let reduced = bessel_i_series_reduced(n, x)?;
    Ok(0.5f64.powf(n) * x.powf(m + n) * (-a * x).exp() * reduced)
}

/// T_B(m, n, r) by direct integration of its defining integral; any real n.
pub fn toronto_oracle(p: &TorontoParams, q: &QuadSpec) -> Result<QuadResult> {
    let x_max = 2.0 * p.r() * p.b();
    if x_max > SERIES_MAX_ARG {
        return Err(Error::domain(format!(
            "oracle needs 2rB ≤ {SERIES_MAX_ARG} for the Bessel series (got {x_max})"
        )));
    }
    integrate(|t| toronto_integrand(p, t), 0.0, p.b(), q)
}

/// Ie_{m,n}(a, z) by direct integration of its defining integral; any real n and any a > 0.
pub fn ilhi_oracle(p: &IlhiParams, q: &QuadSpec) -> Result<QuadResult> {
    if p.z() > SERIES_MAX_ARG {
        return Err(Error::domain(format!(
            "oracle needs z ≤ {SERIES_MAX_ARG} for the Bessel series (got {})",
            p.z()
        )));
    }
    integrate(|x| ilhi_integrand(p, x), 0.0, p.z(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ok<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        let r = integrate(
            ok(|x| 3.0 * x * x + 2.0 * x + 1.0),
            0.0,
            2.0,
            &QuadSpec::default(),
        )
        .unwrap();
        assert!((r.value - 14.0).abs() < 1e-13);
        assert_eq!(r.subdivisions_used, 0);
    }

    #[test]
    fn handles_endpoint_power_singularity() {
        // ∫₀¹ x^{-1/2} dx = 2
        let r = integrate(ok(|x: f64| 1.0 / x.sqrt()), 0.0, 1.0, &QuadSpec::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
        assert!(r.subdivisions_used > 0);
    }

    #[test]
    fn reports_exhausted_budget() {
        let spec = QuadSpec::new(1e-15, 1e-15, 3).unwrap();
        let err = integrate(ok(|x: f64| x.sqrt().sin()), 0.0, 50.0, &spec).unwrap_err();
        assert!(matches!(
            err,
            Error::ToleranceNotMet {
                subdivisions: 3,
                ..
            }
        ));
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(QuadSpec::new(0.0, 1e-10, 10).is_err());
        assert!(QuadSpec::new(1e-10, 1e-10, 0).is_err());
    }

    #[test]
    fn error_estimate_within_tolerance_on_success() {
        let spec = QuadSpec::default();
        let r = integrate(ok(|x: f64| (-x * x).exp()), 0.0, 3.0, &spec).unwrap();
        assert!(r.error_estimate <= spec.abs_tol.max(spec.rel_tol * r.value.abs()));
        let erf3 = 0.999_977_909_503_001_4;
        assert!((r.value - PI.sqrt() / 2.0 * erf3).abs() < 1e-13);
    }

    #[test]
    fn toronto_marcum_point() {
        let p = TorontoParams::new(2.0, 0.5, 1.0, 1.0).unwrap();
        let r = toronto_oracle(&p, &QuadSpec::default()).unwrap();
        assert!((r.value - 0.220_733_087_074_121_24).abs() < 1e-12);
    }

    #[test]
    fn empty_interval_is_exact_zero() {
        let p = TorontoParams::new(3.0, 1.2, 2.0, 0.0).unwrap();
        let r = toronto_oracle(&p, &QuadSpec::default()).unwrap();
        assert_eq!((r.value, r.error_estimate), (0.0, 0.0));
        let p = IlhiParams::new(1.0, 0.5, 2.0, 0.0).unwrap();
        assert_eq!(ilhi_oracle(&p, &QuadSpec::default()).unwrap().value, 0.0);
    }

    /// ∫₀¹ √(2/π) x^{1/2} e^{−2x} sinh x dx after x = u² (smooth integrand), composite
    /// Simpson at h and h/2 with one Richardson step.
    fn ilhi_half_order_reference() -> f64 {
        let g = |u: f64| {
            let x = u * u;
            2.0 * u * (2.0 / PI).sqrt() * u * (-2.0 * x).exp() * x.sinh()
        };
        let simpson = |n: usize| {
            let h = 1.0 / n as f64;
            let mut s = g(0.0) + g(1.0);
            for i in 1..n {
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
            }
            s * h / 3.0
        };
        let (coarse, fine) = (simpson(2000), simpson(4000));
        fine + (fine - coarse) / 15.0
    }

    #[test]
    fn ilhi_half_order_matches_fixed_rule() {
        let reference = ilhi_half_order_reference();
        let p = IlhiParams::new(1.0, 0.5, 2.0, 1.0).unwrap();
        let r = ilhi_oracle(&p, &QuadSpec::default()).unwrap();
        assert!(
            (r.value - reference).abs() < 1e-13,
            "{} vs {reference}",
            r.value
        );
        assert!((r.value - 0.090_729_791_617_495_55).abs() < 1e-14);
    }

    #[test]
    fn ilhi_below_unit_decay_rate() {
        let p = IlhiParams::new(1.0, 0.0, 0.5, 1.0).unwrap();
        let spec = QuadSpec::default();
        let a = ilhi_oracle(&p, &spec).unwrap();
        let b = ilhi_oracle(&p, &spec.halved()).unwrap();
        assert!((a.value - 0.404_590_040_245_200_4).abs() < 1e-13);
        assert!((a.value - b.value).abs() <= a.error_estimate);
    }

    #[test]
    fn small_order_stays_finite() {
        for &n in &[0.05, 0.2, 0.45] {
            let p = TorontoParams::new(0.5, n, 1.0, 2.0).unwrap();
            assert!(toronto_oracle(&p, &QuadSpec::default())
                .unwrap()
                .value
                .is_finite());
            let p = IlhiParams::new(0.5, n, 2.0, 2.0).unwrap();
            assert!(ilhi_oracle(&p, &QuadSpec::default())
                .unwrap()
                .value
                .is_finite());
        }
    }

    #[test]
    fn additive_over_split_interval() {
        let spec = QuadSpec::default();
        let p = TorontoParams::new(3.0, 1.3, 2.0, 3.0).unwrap();
        let whole = toronto_oracle(&p, &spec).unwrap();
        let f = |t| toronto_integrand(&p, t);
        let left = integrate(f, 0.0, 1.5, &spec).unwrap();
        let right = integrate(f, 1.5, 3.0, &spec).unwrap();
        let slack = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-15;
        assert!((whole.value - left.value - right.value).abs() <= slack);
    }

    #[test]
    fn toronto_oracle_domain_guard() {
        let p = TorontoParams::new(3.0, 1.0, 12.0, 10.0).unwrap();
        assert!(toronto_oracle(&p, &QuadSpec::default())
            .unwrap_err()
            .is_domain());
    }
}
