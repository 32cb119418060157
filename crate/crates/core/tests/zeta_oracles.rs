use num_complex::Complex64;
use proptest::prelude::*;
use zetasym::error::Error;
use zetasym::zeta::{b, hardy_theta, hardy_z, hardy_z_rotated, zeta, zeta_eval, EvalConfig};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

/// sum_{n<=N} n^-2 plus the Euler-Maclaurin tail 1/N - 1/(2N^2) + 1/(6N^3) - 1/(30N^5).
fn zeta2_brute_force() -> f64 {
    let n = 100_000u64;
    let mut partial = 0.0;
    for k in (1..=n).rev() {
        let k = k as f64;
        partial += 1.0 / (k * k);
    }
    let n = n as f64;
    partial + 1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n.powi(3)) - 1.0 / (30.0 * n.powi(5))
}

/// zeta(1/2) from eta(1/2) = sum (-1)^(n-1) n^(-1/2), with repeated averaging
/// of partial sums (the Euler transform of an alternating series).
fn zeta_half_by_averaging() -> f64 {
    let mut partial = Vec::with_capacity(60);
    let mut acc = 0.0;
    for n in 1..=60 {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign / (n as f64).sqrt();
        partial.push(acc);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0] / (1.0 - 2f64.sqrt())
}

#[test]
fn zeta_two_matches_partial_sum() {
    let oracle = zeta2_brute_force();
    assert!((oracle - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    let z = zeta(c(2.0, 0.0), &cfg()).unwrap();
    assert!((z.re - oracle).abs() <= 1e-10);
    assert!(z.im.abs() <= 1e-15);
}

#[test]
fn zeta_half_matches_averaged_eta() {
    let oracle = zeta_half_by_averaging();
    let z = zeta(c(0.5, 0.0), &cfg()).unwrap();
    assert!((z.re - oracle).abs() <= 1e-10, "{} vs {oracle}", z.re);
}

#[test]
fn trivial_zeros_and_pole() {
    for n in 1..=5 {
        let z = zeta(c(-2.0 * n as f64, 0.0), &cfg()).unwrap();
        assert!(z.norm() <= 1e-10, "zeta(-{}) = {z}", 2 * n);
    }
    assert_eq!(zeta(c(1.0, 0.0), &cfg()), Err(Error::PoleAtOne));
    assert!(zeta(c(1.0, 1e-3), &cfg()).is_ok());
}

#[test]
fn reference_table() {
    // 30-digit reference evaluations, rounded to double
    let table = [
        ((-0.5, 3.0), (0.352_913_879_819_287_25, 0.012_124_954_416_036_982)),
        ((0.3, 5.0), (0.675_648_998_116_023_3, 0.254_144_786_554_677_4)),
        ((2.0, 10.0), (1.197_982_500_674_184_6, -0.079_170_491_720_525_75)),
        ((-7.5, -20.0), (8_899.575_240_699_668, 9_367.112_526_573_218)),
        ((0.5, 100.0), (2.692_619_885_681_324, -0.020_386_029_602_598_162)),
        ((3.0, 1.0), (1.107_214_408_431_409_2, -0.148_290_867_178_175_35)),
        ((-2.0, -1.0), (0.029_195_593_243_464_28, 0.017_787_106_970_842_08)),
        ((25.0, 0.0), (1.000_000_029_803_503_5, 0.0)),
        ((-25.5, 40.0), (4.016_683_518_082_71e21, -7.527_225_265_369_58e20)),
    ];
    for ((re, im), (want_re, want_im)) in table {
        let want = c(want_re, want_im);
        let got = zeta_eval(c(re, im), &cfg()).unwrap().value;
        assert!(
            (got - want).norm() <= 1e-12 * want.norm(),
            "zeta({re}+{im}i) = {got}, want {want}"
        );
    }
}

#[test]
fn hardy_theta_reference() {
    assert!((hardy_theta(10.0).unwrap() + 3.067_074_396_289_895_3).abs() <= 1e-12);
    assert!((hardy_theta(50.0).unwrap() - 26.461_366_070_161_41).abs() <= 1e-12);
}

#[test]
fn hardy_z_is_real_on_a_grid() {
    for i in 0..=600 {
        let t = i as f64 * 0.1;
        let z = hardy_z_rotated(t, &cfg()).unwrap();
        assert!(z.im.abs() <= 1e-10 * z.re.abs().max(1.0), "t = {t}: {z}");
    }
}

#[test]
fn hardy_z_sign_changes_straddle_first_zero() {
    assert!(hardy_z(14.13, &cfg()).unwrap() * hardy_z(14.14, &cfg()).unwrap() < 0.0);
}

fn away_from_one() -> impl Strategy<Value = Complex64> {
    (-20.0f64..20.0, -80.0f64..80.0)
        .prop_filter("pole", |(re, im)| (c(*re, *im) - 1.0).norm() > 1e-3)
        .prop_map(|(re, im)| c(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn schwarz_reflection(s in away_from_one()) {
        let a = zeta_eval(s, &cfg()).unwrap().value;
        let b = zeta_eval(s.conj(), &cfg()).unwrap().value;
        prop_assert!((a.conj() - b).norm() <= 1e-12 * a.norm().max(1e-300));
    }

    #[test]
    fn b_is_symmetric(s in (-6.0f64..7.0, -40.0f64..40.0).prop_map(|(re, im)| c(re, im))) {
        prop_assume!((s - 1.0).norm() > 1e-3 && s.norm() > 1e-3);
        let x = b(s, &cfg()).unwrap();
        let y = b(c(1.0, 0.0) - s, &cfg()).unwrap();
        prop_assert!((x - y).norm() <= 1e-13 * x.norm().max(1e-300));
    }

    #[test]
    fn functional_equation_in_right_half_plane(s in (0.6f64..8.0, -50.0f64..50.0).prop_map(|(re, im)| c(re, im))) {
        prop_assume!((s - 1.0).norm() > 1e-2);
        // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s), evaluated in log space
        let one = c(1.0, 0.0);
        let z1ms = zeta_eval(one - s, &cfg()).unwrap().value;
        let lg = zetasym::zeta::ln_gamma(one - s).unwrap();
        let log_factor = s * 2f64.ln() + (s - 1.0) * std::f64::consts::PI.ln() + lg;
        let sin = (s * std::f64::consts::FRAC_PI_2).sin();
        let rhs = log_factor.exp() * sin * z1ms;
        let lhs = zeta(s, &cfg()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0), "{} vs {}", lhs, rhs);
    }
}
