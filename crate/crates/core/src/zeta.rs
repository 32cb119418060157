//! Riemann zeta, Gamma and Hardy Z evaluation in double precision.
//!
//! Routing for `zeta`:
//!
//! * `Re(s) >= 1/2`: the alternating (Dirichlet eta) series
//!   `zeta(s) = eta(s) / (1 - 2^(1-s))`, accelerated with Borwein's
//!   Chebyshev-weighted partial sums. Close to the zeros of `1 - 2^(1-s)`
//!   (the line `Re(s) = 1`, `Im(s) = 2 pi k / ln 2`) and whenever the term
//!   budget is exhausted the direct Euler-Maclaurin sum takes over.
//! * `Re(s) < 1/2`: the functional equation
//!   `zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)`.
//!
//! Error estimates cover truncation of the series. Floating-point rounding
//! adds a relative error of a few ulps on top, so the absolute error of
//! large values (far left half-plane) is bounded by `|zeta(s)| * 1e-15`
//! rather than by `target_abs_tol`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_finite_c, Error, Result};

const EPS: f64 = f64::EPSILON;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Radius around s = 1 treated as the pole.
pub const POLE_RADIUS: f64 = 1e-12;

/// Below this value of `|1 - 2^(1-s)|` the eta route hands over to
/// Euler-Maclaurin.
const ETA_PREFACTOR_FLOOR: f64 = 1e-3;

/// `B_{2k} / (2k)!` for k = 1..=20.
const BERNOULLI_OVER_FACTORIAL: [f64; 20] = [
    1.666_666_666_666_666_6e-1 / 2.0,
    -3.333_333_333_333_333e-2 / 24.0,
    2.380_952_380_952_381e-2 / 720.0,
    -3.333_333_333_333_333e-2 / 40_320.0,
    7.575_757_575_757_576e-2 / 3_628_800.0,
    -2.531_135_531_135_531e-1 / 479_001_600.0,
    1.166_666_666_666_666_7 / 87_178_291_200.0,
    -7.092_156_862_745_098 / 20_922_789_888_000.0,
    54.971_177_944_862_16 / 6_402_373_705_728_000.0,
    -529.124_242_424_242_4 / 2_432_902_008_176_640_000.0,
    6_192.123_188_405_797 / 1.124_000_727_777_607_7e21,
    -86_580.253_113_553_11 / 6.204_484_017_332_394e23,
    1_425_517.166_666_666_7 / 4.032_914_611_266_056_3e26,
    -27_298_231.067_816_09 / 3.048_883_446_117_138_4e29,
    601_580_873.900_642_4 / 2.652_528_598_121_910_3e32,
    -15_116_315_767.092_157 / 2.631_308_369_336_935e35,
    429_614_643_061.166_7 / 2.952_327_990_396_041_2e38,
    -13_711_655_205_088.332 / 3.719_933_267_899_012e41,
    488_332_318_973_593.2 / 5.230_226_174_666_011e44,
    -19_296_579_341_940_068.0 / 8.159_152_832_478_977e47,
];

/// Bernoulli numbers `B_{2k}` for the log-gamma Stirling series, k = 1..=10.
const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvalConfig {
    /// Absolute truncation-error target.
    pub target_abs_tol: f64,
    /// Upper bound on the number of accelerated eta-series terms.
    pub series_terms_max: usize,
    /// Minimum number of directly summed terms in Euler-Maclaurin.
    pub euler_maclaurin_cutoff: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-10,
            series_terms_max: 320,
            euler_maclaurin_cutoff: 16,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0 && self.target_abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "target_abs_tol must be positive, got {}",
                self.target_abs_tol
            )));
        }
        if self.series_terms_max < 16 {
            return Err(Error::InvalidConfig(format!(
                "series_terms_max must be at least 16, got {}",
                self.series_terms_max
            )));
        }
        if self.euler_maclaurin_cutoff == 0 {
            return Err(Error::InvalidConfig("euler_maclaurin_cutoff must be positive".into()));
        }
        Ok(())
    }
}

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMethod {
    EtaSeries,
    EulerMaclaurin,
    Reflection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEval {
    pub value: Complex64,
    /// Truncation-error estimate.
    pub error_estimate: f64,
    pub method: ZetaMethod,
}

/// `n^(-s)` for a positive real base.
#[inline]
pub(crate) fn real_pow_neg(n: f64, s: Complex64) -> Complex64 {
    let ln_n = n.ln();
    let mag = (-s.re * ln_n).exp();
    let phase = -s.im * ln_n;
    Complex64::new(mag * phase.cos(), mag * phase.sin())
}

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// `cos(pi x)` with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let a = r.abs();
    if a <= 0.5 {
        sin_pi(0.5 - a)
    } else {
        -sin_pi(a - 0.5)
    }
}

/// `sin(pi z)` for complex z.
pub fn sin_pi_c(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

/// Stirling series for `ln Gamma(z)`, valid in `Re(z) > 0`.
///
/// The argument is shifted to `Re(z) >= 20` with the recurrence, summing
/// principal logarithms of `z + j`; every such logarithm is continuous in the
/// right half-plane, so the result is the continuous branch there.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 20.0 {
        shift += w.ln();
        w += 1.0;
    }
    let ln_w = w.ln();
    let mut series = (w - 0.5) * ln_w - w + HALF_LN_2PI;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let k = (k + 1) as f64;
        series += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    series - shift
}

fn near_non_positive_integer(s: Complex64) -> Option<i64> {
    let r = s.re.round();
    if r <= 0.0 && (s.re - r).abs() < POLE_RADIUS && s.im.abs() < POLE_RADIUS {
        Some(r as i64)
    } else {
        None
    }
}

/// A logarithm of Gamma(s). Continuous branch for `Re(s) >= 1/2`; on the
/// left the reflection formula is applied with principal logarithms.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    ensure_finite_c("s", s)?;
    if let Some(n) = near_non_positive_integer(s) {
        return Err(Error::PoleAtNonPositiveInteger(n));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        Ok(Complex64::new(LN_PI, 0.0) - sin_pi_c(s).ln() - ln_gamma_right(1.0 - s))
    }
}

/// Gamma(s) for complex s.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    ensure_finite_c("s", s)?;
    if let Some(n) = near_non_positive_integer(s) {
        return Err(Error::PoleAtNonPositiveInteger(n));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s).exp())
    } else {
        Ok(PI / (sin_pi_c(s) * ln_gamma_right(1.0 - s).exp()))
    }
}

/// Number of Borwein terms for truncation error `tol` at height `t`.
fn borwein_terms(t: f64, prefactor_abs: f64, tol: f64) -> usize {
    let ln_bound = (3.0 * (1.0 + 2.0 * t.abs())).ln() + 0.5 * PI * t.abs() - prefactor_abs.ln() - tol.ln();
    let n = (ln_bound / (3.0 + 8f64.sqrt()).ln()).ceil();
    n.max(16.0) as usize
}

/// Borwein's accelerated alternating sum for eta(s) with `n` terms.
fn eta_borwein(s: Complex64, n: usize) -> Complex64 {
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf;
    let mut acc = term;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, dk) in d[..n].iter().enumerate() {
        let w = (dk - dn) / dn;
        let t = real_pow_neg((k + 1) as f64, s) * w;
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    -sum
}

/// `1 - 2^(1-s)`.
fn eta_prefactor(s: Complex64) -> Complex64 {
    1.0 - real_pow_neg(2.0, s - 1.0)
}

/// zeta through the accelerated Dirichlet eta series. Requires `Re(s) > 0`.
pub fn zeta_eta(s: Complex64, cfg: &EvalConfig) -> Result<ZetaEval> {
    ensure_finite_c("s", s)?;
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::PoleAtOne);
    }
    if s.re <= 0.0 {
        return Err(Error::InvalidRange(format!("eta series needs Re(s) > 0, got {s}")));
    }
    let pre = eta_prefactor(s);
    let pre_abs = pre.norm();
    if pre_abs == 0.0 {
        return Err(Error::PoleEncountered(s));
    }
    // Aim well below the target so the prefactor division stays inside it.
    let wanted = borwein_terms(s.im, pre_abs, cfg.target_abs_tol * 1e-3);
    let n = wanted.min(cfg.series_terms_max);
    let truncation =
        3.0 * (1.0 + 2.0 * s.im.abs()) * (0.5 * PI * s.im.abs()).exp() / (3.0 + 8f64.sqrt()).powi(n as i32) / pre_abs;
    let value = eta_borwein(s, n) / pre;
    Ok(ZetaEval {
        value,
        error_estimate: truncation + 4.0 * EPS * (n as f64) / pre_abs,
        method: ZetaMethod::EtaSeries,
    })
}

/// zeta through Euler-Maclaurin summation. Valid for every `s != 1`, but
/// accurate only where the direct partial sums do not cancel (`Re(s)` not
/// far below zero).
pub fn zeta_euler_maclaurin(s: Complex64, cfg: &EvalConfig) -> Result<ZetaEval> {
    ensure_finite_c("s", s)?;
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::PoleAtOne);
    }
    let n = cfg
        .euler_maclaurin_cutoff
        .max(((s.norm() + 20.0) / 2.0).ceil() as usize);
    let nf = n as f64;

    let mut direct = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for k in 1..n {
        let t = real_pow_neg(k as f64, s);
        magnitude += t.norm();
        direct += t;
    }
    let n_pow = real_pow_neg(nf, s);
    let mut total = direct + n_pow * nf / (s - 1.0) + n_pow * 0.5;

    // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    let mut rising = s;
    let mut n_factor = n_pow / nf;
    let inv_n2 = 1.0 / (nf * nf);
    let mut last = f64::INFINITY;
    for (idx, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if idx > 0 {
            let k = (idx + 1) as f64;
            rising *= (s + (2.0 * k - 3.0)) * (s + (2.0 * k - 2.0));
            n_factor *= inv_n2;
        }
        let term = rising * n_factor * *c;
        let size = term.norm();
        if size > last {
            break;
        }
        total += term;
        last = size;
        if size <= EPS * EPS * total.norm().max(1e-300) {
            break;
        }
    }
    Ok(ZetaEval {
        value: total,
        error_estimate: last + 4.0 * EPS * magnitude,
        method: ZetaMethod::EulerMaclaurin,
    })
}

/// Evaluation in the half-plane `Re(s) >= 1/2`.
fn zeta_right(s: Complex64, cfg: &EvalConfig) -> Result<ZetaEval> {
    if eta_prefactor(s).norm() >= ETA_PREFACTOR_FLOOR {
        let eval = zeta_eta(s, cfg)?;
        if eval.error_estimate <= cfg.target_abs_tol {
            return Ok(eval);
        }
    }
    zeta_euler_maclaurin(s, cfg)
}

/// zeta(s) with its error estimate; does not fail on precision loss.
pub fn zeta_eval(s: Complex64, cfg: &EvalConfig) -> Result<ZetaEval> {
    ensure_finite_c("s", s)?;
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::PoleAtOne);
    }
    if s.re >= 0.5 {
        return zeta_right(s, cfg);
    }
    if s.norm() < 0.5 {
        // reflection would meet the pole of zeta(1 - s) at s = 0
        return zeta_euler_maclaurin(s, cfg);
    }
    let reflected = zeta_right(1.0 - s, cfg)?;
    let sin_half = sin_pi_c(s * 0.5);
    if sin_half == Complex64::new(0.0, 0.0) {
        // trivial zero: the other factors are finite here
        return Ok(ZetaEval {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            method: ZetaMethod::Reflection,
        });
    }
    let log_factor = s * LN_2 + (s - 1.0) * LN_PI + ln_gamma_right(1.0 - s);
    let chi = log_factor.exp() * sin_half;
    Ok(ZetaEval {
        value: chi * reflected.value,
        error_estimate: chi.norm() * reflected.error_estimate,
        method: ZetaMethod::Reflection,
    })
}

/// The Riemann zeta function.
///
/// Fails with [`Error::PrecisionLoss`] (carrying the computed value) when the
/// error estimate exceeds `cfg.target_abs_tol`, scaled by `|zeta(s)|` once
/// that exceeds 1. Double precision cannot hold a fixed absolute error on
/// values in the thousands and beyond.
pub fn zeta(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let eval = zeta_eval(s, cfg)?;
    if eval.error_estimate > cfg.target_abs_tol * eval.value.norm().max(1.0) {
        return Err(Error::PrecisionLoss {
            value: eval.value,
            estimate: eval.error_estimate,
            target: cfg.target_abs_tol,
        });
    }
    Ok(eval.value)
}

/// `b(s) = zeta(s) zeta(1 - s)`, symmetric under `s -> 1 - s`.
pub fn b(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    ensure_finite_c("s", s)?;
    if s.norm() < POLE_RADIUS || (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::PoleAtEndpoint(s));
    }
    Ok(zeta(s, cfg)? * zeta(1.0 - s, cfg)?)
}

/// Riemann-Siegel theta, `theta(t) = Im ln Gamma(1/4 + i t / 2) - (t / 2) ln pi`.
pub fn hardy_theta(t: f64) -> Result<f64> {
    ensure_finite("t", t)?;
    let lg = ln_gamma_right(Complex64::new(0.25, 0.5 * t));
    Ok(lg.im - 0.5 * t * LN_PI)
}

/// `e^(i theta(t)) zeta(1/2 + i t)`; real up to rounding.
pub fn hardy_z_rotated(t: f64, cfg: &EvalConfig) -> Result<Complex64> {
    let theta = hardy_theta(t)?;
    let z = zeta(Complex64::new(0.5, t), cfg)?;
    Ok(Complex64::from_polar(1.0, theta) * z)
}

/// Hardy's Z-function. Real for real t, `|Z(t)| = |zeta(1/2 + i t)|`.
pub fn hardy_z(t: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(hardy_z_rotated(t, cfg)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn zeta_at_two() {
        let z = zeta(c(2.0, 0.0), &cfg()).unwrap();
        assert!((z.re - 1.644_934_066_848_226_4).abs() <= 1e-10);
        assert!(z.im.abs() <= 1e-14);
    }

    #[test]
    fn zeta_at_half() {
        let z = zeta(c(0.5, 0.0), &cfg()).unwrap();
        assert!((z.re + 1.460_354_508_809_586_8).abs() <= 1e-10);
    }

    #[test]
    fn zeta_pole() {
        assert_eq!(zeta(c(1.0, 0.0), &cfg()), Err(Error::PoleAtOne));
        assert_eq!(zeta(c(1.0 + 1e-13, 0.0), &cfg()), Err(Error::PoleAtOne));
        assert!(zeta(c(1.0 + 1e-6, 0.0), &cfg()).is_ok());
    }

    #[test]
    fn zeta_rejects_nan() {
        assert!(matches!(zeta(c(f64::NAN, 0.0), &cfg()), Err(Error::NonFinite(_))));
    }

    #[test]
    fn trivial_zeros_are_exact() {
        for n in 1..=5 {
            let z = zeta(c(-2.0 * n as f64, 0.0), &cfg()).unwrap();
            assert_eq!(z, c(0.0, 0.0));
        }
    }

    #[test]
    fn zeta_at_zero_and_minus_one() {
        assert_relative_eq!(zeta(c(0.0, 0.0), &cfg()).unwrap().re, -0.5, epsilon = 1e-14);
        assert_relative_eq!(zeta(c(-1.0, 0.0), &cfg()).unwrap().re, -1.0 / 12.0, epsilon = 1e-14);
    }

    #[test]
    fn routes_agree_near_eta_singularity() {
        // 1 - 2^(1-s) vanishes at s = 1 + 2 pi i / ln 2
        let s = c(1.0, 2.0 * PI / LN_2 + 1e-7);
        let direct = zeta_eval(s, &cfg()).unwrap();
        assert_eq!(direct.method, ZetaMethod::EulerMaclaurin);
        let nearby = zeta_eta(c(1.0, 2.0 * PI / LN_2 + 0.05), &cfg()).unwrap();
        let em = zeta_euler_maclaurin(c(1.0, 2.0 * PI / LN_2 + 0.05), &cfg()).unwrap();
        assert!((nearby.value - em.value).norm() < 1e-11);
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma(c(1.0, 0.0)).unwrap().re, 1.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(c(5.0, 0.0)).unwrap().re, 24.0, max_relative = 1e-13);
        assert_relative_eq!(
            gamma(c(0.5, 0.0)).unwrap().re,
            1.772_453_850_905_516,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            gamma(c(-0.5, 0.0)).unwrap().re,
            -3.544_907_701_811_032,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gamma_poles() {
        assert_eq!(gamma(c(0.0, 0.0)), Err(Error::PoleAtNonPositiveInteger(0)));
        assert_eq!(gamma(c(-3.0, 0.0)), Err(Error::PoleAtNonPositiveInteger(-3)));
        assert!(gamma(c(-3.0, 1e-6)).is_ok());
    }

    #[test]
    fn gamma_recurrence_on_complex_grid() {
        for re in [-7.3, -2.5, 0.2, 1.1, 9.7, 30.0] {
            for im in [-20.0, -1.0, 0.3, 5.0, 25.0] {
                let s = c(re, im);
                let lhs = gamma(s + 1.0).unwrap();
                let rhs = s * gamma(s).unwrap();
                assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "s = {s}");
            }
        }
    }

    #[test]
    fn b_endpoints_and_symmetry() {
        assert!(matches!(b(c(0.0, 0.0), &cfg()), Err(Error::PoleAtEndpoint(_))));
        assert!(matches!(b(c(1.0, 0.0), &cfg()), Err(Error::PoleAtEndpoint(_))));
        let s = c(0.3, 2.0);
        let lhs = b(s, &cfg()).unwrap();
        let rhs = b(1.0 - s, &cfg()).unwrap();
        assert!((lhs - rhs).norm() <= 1e-9);
        let half = b(c(0.5, 0.0), &cfg()).unwrap();
        let zeta_half: f64 = -1.460_354_508_809_586_8;
        assert!((half.re - zeta_half * zeta_half).abs() <= 1e-10);
    }

    #[test]
    fn hardy_z_at_origin_matches_zeta_half() {
        let z0 = hardy_z(0.0, &cfg()).unwrap();
        assert!((z0.abs() - 1.460_354_508_809_586_8).abs() <= 1e-10);
    }

    #[test]
    fn hardy_z_is_real_and_changes_sign_at_first_zero() {
        let rot = hardy_z_rotated(10.0, &cfg()).unwrap();
        assert!(rot.im.abs() <= 1e-9);
        let a = hardy_z(14.0, &cfg()).unwrap();
        let b = hardy_z(14.2, &cfg()).unwrap();
        assert!(a.signum() != b.signum());
    }

    #[test]
    fn precision_loss_carries_value() {
        let tight = EvalConfig {
            series_terms_max: 16,
            euler_maclaurin_cutoff: 1,
            target_abs_tol: 1e-30,
        };
        match zeta(c(0.5, 80.0), &tight) {
            Err(Error::PrecisionLoss { value, estimate, .. }) => {
                assert!(value.norm().is_finite());
                assert!(estimate > 1e-30);
            }
            other => panic!("expected precision loss, got {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::default().validate().is_ok());
        let bad = EvalConfig {
            series_terms_max: 8,
            ..EvalConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = EvalConfig {
            target_abs_tol: 0.0,
            ..EvalConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -20..=20 {
            assert_eq!(sin_pi(k as f64), 0.0);
            assert_eq!(cos_pi(k as f64 + 0.5), 0.0);
        }
        assert_relative_eq!(sin_pi(0.25), (PI / 4.0).sin(), max_relative = 1e-15);
        assert_relative_eq!(cos_pi(1.0), -1.0);
    }
}
