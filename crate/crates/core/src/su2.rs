//! SU(2) generators built from the ladder operators, normalized by
//! `sqrt(b(k))`, and verification of the spin-1/2 representation on the
//! nontrivial-zero and trivial-zero state pairs.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::hilbert::{
    dirac_inner, make_su2_state, make_trivial_state, modified_inner, IntervalDomain, Monomial, SpinProjection,
    StateVector, EXPONENT_MERGE_TOL,
};
use crate::operators::zeta_at;
use crate::zeros::critical_line_residual;
use crate::zeta::EvalConfig;

pub const DEFAULT_REP_TOLERANCE: f64 = 1e-7;
/// Required agreement between the composed and closed-form Casimir.
pub const CASIMIR_PATH_TOL: f64 = 1e-9;
const BRANCH_TOL: f64 = 1e-10;

pub const REL_JP_JM: &str = "Jp_Jm_eq_2J0";
pub const REL_J0_JM: &str = "J0_Jm_eq_negJm";
pub const REL_J0_JP: &str = "J0_Jp_eq_Jp";
pub const REL_CASIMIR: &str = "casimir_three_quarters";
pub const REL_ORTHONORMAL: &str = "orthonormality";
/// Generator actions on the basis states match their expected images.
pub const REL_LADDER: &str = "ladder_actions";
/// `J₀` returns the expected `±1/2` eigenvalues.
pub const REL_J0_EIGEN: &str = "j0_eigenvalues";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Su2Family {
    NontrivialZeros,
    TrivialZeros,
    /// Arbitrary `k`, principal square root.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Su2Context {
    pub k: Complex64,
    pub omega: f64,
    pub b_k: Complex64,
    /// The chosen square root of `b_k`.
    pub sqrt_b_k: Complex64,
    pub family: Su2Family,
}

fn b_at(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(zeta_at(s, cfg)? * zeta_at(Complex64::new(1.0, 0.0) - s, cfg)?)
}

impl Su2Context {
    fn build(k: Complex64, omega: f64, sqrt_b_k: Complex64, b_k: Complex64, family: Su2Family) -> Result<Self> {
        ensure_finite("omega", omega)?;
        if b_k.norm() == 0.0 || !b_k.is_finite() {
            return Err(Error::InvalidRange(format!(
                "b(k) = {b_k} cannot normalize the generators"
            )));
        }
        let ctx = Self {
            k,
            omega,
            b_k,
            sqrt_b_k,
            family,
        };
        if ctx.branch_defect() > BRANCH_TOL {
            return Err(Error::InvalidRange(format!(
                "sqrt_b_k = {sqrt_b_k} does not square to b(k) = {b_k}"
            )));
        }
        Ok(ctx)
    }

    /// `k = 1/2` with `sqrt(b(1/2)) = zeta(1/2)`, the negative root. This
    /// branch gives `Jx |1/2,+1/2> = +1/2 |1/2,-1/2>`.
    pub fn nontrivial(omega: f64, cfg: &EvalConfig) -> Result<Self> {
        let k = Complex64::new(0.5, 0.0);
        let root = zeta_at(k, cfg)?;
        Self::build(k, omega, root, root * root, Su2Family::NontrivialZeros)
    }

    /// `k = -2N - i omega`, principal root.
    pub fn trivial(n: u32, omega: f64, cfg: &EvalConfig) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRange("trivial-zero index N must be at least 1".into()));
        }
        if omega.is_nan() || omega <= 0.0 {
            return Err(Error::InvalidRange(format!("omega must be positive, got {omega}")));
        }
        let k = Complex64::new(-2.0 * n as f64, -omega);
        let b_k = b_at(k, cfg)?;
        Self::build(k, omega, b_k.sqrt(), b_k, Su2Family::TrivialZeros)
    }

    pub fn general(k: Complex64, omega: f64, cfg: &EvalConfig) -> Result<Self> {
        let b_k = b_at(k, cfg)?;
        Self::build(k, omega, b_k.sqrt(), b_k, Su2Family::General)
    }

    /// `|sqrt_b_k^2 - b(k)| / |b(k)|`.
    pub fn branch_defect(&self) -> f64 {
        (self.sqrt_b_k * self.sqrt_b_k - self.b_k).norm() / self.b_k.norm()
    }

    fn iw(&self) -> Complex64 {
        Complex64::new(0.0, self.omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Jplus,
    Jminus,
    J0,
    Jx,
    Jy,
}

/// `J₀` coefficient on `x^(-s)`: `[b(s) - b(s - iω)] / (2 b(k))`.
pub fn j0_coefficient(ctx: &Su2Context, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok((b_at(s, cfg)? - b_at(s - ctx.iw(), cfg)?) / (ctx.b_k * 2.0))
}

fn map_terms<F>(v: &StateVector, f: F) -> Result<StateVector>
where
    F: Fn(&Monomial) -> Result<Monomial>,
{
    let terms = v.terms().iter().map(f).collect::<Result<Vec<_>>>()?;
    StateVector::from_terms(*v.domain(), terms)
}

pub fn apply_generator(g: Generator, ctx: &Su2Context, v: &StateVector, cfg: &EvalConfig) -> Result<StateVector> {
    if (ctx.omega - v.omega()).abs() > 1e-12 * ctx.omega.abs().max(v.omega().abs()) {
        return Err(Error::DomainMismatch(format!(
            "context omega {} vs state omega {}",
            ctx.omega,
            v.omega()
        )));
    }
    let iw = ctx.iw();
    let one = Complex64::new(1.0, 0.0);
    match g {
        Generator::Jminus => map_terms(v, |t| {
            Ok(Monomial {
                exponent: t.exponent + iw,
                coefficient: t.coefficient * zeta_at(t.exponent, cfg)? / ctx.sqrt_b_k,
                parity: t.parity,
            })
        }),
        Generator::Jplus => map_terms(v, |t| {
            Ok(Monomial {
                exponent: t.exponent - iw,
                coefficient: t.coefficient * zeta_at(one - t.exponent + iw, cfg)? / ctx.sqrt_b_k,
                parity: t.parity,
            })
        }),
        Generator::J0 => map_terms(v, |t| {
            Ok(Monomial {
                coefficient: t.coefficient * j0_coefficient(ctx, t.exponent, cfg)?,
                ..*t
            })
        }),
        Generator::Jx => {
            let p = apply_generator(Generator::Jplus, ctx, v, cfg)?;
            let m = apply_generator(Generator::Jminus, ctx, v, cfg)?;
            Ok(p.add(&m)?.scale(Complex64::new(0.5, 0.0)))
        }
        Generator::Jy => {
            let p = apply_generator(Generator::Jplus, ctx, v, cfg)?;
            let m = apply_generator(Generator::Jminus, ctx, v, cfg)?;
            // 1/(2i) = -i/2
            Ok(p.sub(&m)?.scale(Complex64::new(0.0, -0.5)))
        }
    }
}

fn apply_twice(g: Generator, h: Generator, ctx: &Su2Context, v: &StateVector, cfg: &EvalConfig) -> Result<StateVector> {
    apply_generator(g, ctx, &apply_generator(h, ctx, v, cfg)?, cfg)
}

/// Closed-form Casimir eigenvalue on `x^(-s)`:
/// `[b(s-iω) + b(s)] / (2b(k)) + ([b(s-iω) - b(s)] / (2b(k)))²`.
pub fn casimir_closed_form(ctx: &Su2Context, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let bs = b_at(s, cfg)?;
    let bl = b_at(s - ctx.iw(), cfg)?;
    let two_bk = ctx.b_k * 2.0;
    let j0 = (bl - bs) / two_bk;
    Ok((bl + bs) / two_bk + j0 * j0)
}

/// `J² = Jx² + Jy² + J₀²` by generator composition.
pub fn casimir_composed(ctx: &Su2Context, v: &StateVector, cfg: &EvalConfig) -> Result<StateVector> {
    let xx = apply_twice(Generator::Jx, Generator::Jx, ctx, v, cfg)?;
    let yy = apply_twice(Generator::Jy, Generator::Jy, ctx, v, cfg)?;
    let zz = apply_twice(Generator::J0, Generator::J0, ctx, v, cfg)?;
    let scale = xx
        .coefficient_norm()
        .max(yy.coefficient_norm())
        .max(zz.coefficient_norm());
    // the ±2iω pieces of Jx² and Jy² cancel; drop their rounding residue
    Ok(xx.add(&yy)?.add(&zz)?.pruned(1e-12 * scale))
}

/// Eigenvalue `λ` with `out = λ v`, or `NotAnEigenvector`.
fn eigenvalue_in(v: &StateVector, out: &StateVector, what: &str) -> Result<Complex64> {
    let Some(first) = v.terms().first() else {
        return Err(Error::NotAnEigenvector(format!("{what} of the zero state")));
    };
    for t in out.terms() {
        let known = v.terms().iter().any(|u| {
            u.parity == t.parity
                && (u.exponent.re - t.exponent.re).abs() <= EXPONENT_MERGE_TOL
                && (u.exponent.im - t.exponent.im).abs() <= EXPONENT_MERGE_TOL
        });
        if !known {
            return Err(Error::NotAnEigenvector(format!(
                "{what} produced exponent {} not present in the input",
                t.exponent
            )));
        }
    }
    let lambda = out.coefficient_of(first.exponent, first.parity) / first.coefficient;
    for t in v.terms() {
        let l = out.coefficient_of(t.exponent, t.parity) / t.coefficient;
        if (l - lambda).norm() > CASIMIR_PATH_TOL * lambda.norm().max(1.0) {
            return Err(Error::NotAnEigenvector(format!(
                "{what} eigenvalues differ across terms ({lambda} vs {l})"
            )));
        }
    }
    Ok(lambda)
}

/// The `J²` eigenvalue of `v`, computed by composition and checked against
/// the closed form term by term.
pub fn casimir(ctx: &Su2Context, v: &StateVector, cfg: &EvalConfig) -> Result<Complex64> {
    let composed = eigenvalue_in(v, &casimir_composed(ctx, v, cfg)?, "J^2")?;
    for t in v.terms() {
        let closed = casimir_closed_form(ctx, t.exponent, cfg)?;
        if (closed - composed).norm() > CASIMIR_PATH_TOL * closed.norm().max(1.0) {
            return Err(Error::CasimirMismatch {
                composed,
                closed_form: closed,
            });
        }
    }
    Ok(composed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommutatorPair {
    /// `[J₊, J₋] = 2J₀`
    JpJm,
    /// `[J₀, J₋] = -J₋`
    J0Jm,
    /// `[J₀, J₊] = J₊`
    J0Jp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorCheck {
    /// Coefficient norm of `[X, Y] v - rhs v`.
    pub defect: f64,
    /// Coefficient norm of the explicit commutator minus its closed form.
    pub closed_form_gap: f64,
}

/// Closed-form commutator on a single term.
fn commutator_closed(pair: CommutatorPair, ctx: &Su2Context, t: &Monomial, cfg: &EvalConfig) -> Result<Monomial> {
    let s = t.exponent;
    let iw = ctx.iw();
    let one = Complex64::new(1.0, 0.0);
    let denom = ctx.sqrt_b_k * ctx.b_k * 2.0;
    let (coefficient, exponent) = match pair {
        CommutatorPair::JpJm => ((b_at(s, cfg)? - b_at(s - iw, cfg)?) / ctx.b_k, s),
        CommutatorPair::J0Jm => {
            let curv = b_at(s + iw, cfg)? + b_at(s - iw, cfg)? - b_at(s, cfg)? * 2.0;
            (curv * zeta_at(s, cfg)? / denom, s + iw)
        }
        CommutatorPair::J0Jp => {
            let curv = b_at(s - iw, cfg)? * 2.0 - b_at(s - iw * 2.0, cfg)? - b_at(s, cfg)?;
            (curv * zeta_at(one - s + iw, cfg)? / denom, s - iw)
        }
    };
    Ok(Monomial {
        exponent,
        coefficient: coefficient * t.coefficient,
        parity: t.parity,
    })
}

pub fn commutator_check(
    pair: CommutatorPair,
    ctx: &Su2Context,
    v: &StateVector,
    cfg: &EvalConfig,
) -> Result<CommutatorCheck> {
    let (x, y, rhs) = match pair {
        CommutatorPair::JpJm => (Generator::Jplus, Generator::Jminus, Generator::J0),
        CommutatorPair::J0Jm => (Generator::J0, Generator::Jminus, Generator::Jminus),
        CommutatorPair::J0Jp => (Generator::J0, Generator::Jplus, Generator::Jplus),
    };
    let rhs_factor = match pair {
        CommutatorPair::JpJm => 2.0,
        CommutatorPair::J0Jm => -1.0,
        CommutatorPair::J0Jp => 1.0,
    };
    let explicit = apply_twice(x, y, ctx, v, cfg)?.sub(&apply_twice(y, x, ctx, v, cfg)?)?;
    let rhs = apply_generator(rhs, ctx, v, cfg)?.scale(Complex64::new(rhs_factor, 0.0));
    let closed = map_terms(v, |t| commutator_closed(pair, ctx, t, cfg))?;
    Ok(CommutatorCheck {
        defect: explicit.sub(&rhs)?.coefficient_norm(),
        closed_form_gap: explicit.sub(&closed)?.coefficient_norm(),
    })
}

/// Coefficient norm of `[X, Y] v - rhs v`.
pub fn commutator_residual(pair: CommutatorPair, ctx: &Su2Context, v: &StateVector, cfg: &EvalConfig) -> Result<f64> {
    Ok(commutator_check(pair, ctx, v, cfg)?.defect)
}

/// Closed-form `Jx²` (`sign = 1`) or `Jy²` (`sign = -1`) on a single term:
/// `(1/4)[±P₊ x^(-(s-2iω)) + (b(s) + b(s-iω))/b(k) x^(-s) ± P₋ x^(-(s+2iω))]`
/// with `P₊ = ζ(1-s+iω) ζ(1-s+2iω) / b(k)` and `P₋ = ζ(s) ζ(s+iω) / b(k)`.
fn quadratic_closed(ctx: &Su2Context, t: &Monomial, sign: f64, cfg: &EvalConfig) -> Result<Vec<Monomial>> {
    let s = t.exponent;
    let iw = ctx.iw();
    let one = Complex64::new(1.0, 0.0);
    let q = t.coefficient / (ctx.b_k * 4.0);
    let raise = zeta_at(one - s + iw, cfg)? * zeta_at(one - s + iw * 2.0, cfg)?;
    let lower = zeta_at(s, cfg)? * zeta_at(s + iw, cfg)?;
    let diag = b_at(s, cfg)? + b_at(s - iw, cfg)?;
    let mk = |exponent, coefficient| Monomial {
        exponent,
        coefficient,
        parity: t.parity,
    };
    Ok(vec![
        mk(s - iw * 2.0, q * raise * sign),
        mk(s, q * diag),
        mk(s + iw * 2.0, q * lower * sign),
    ])
}

/// Gap between `g(g(v))` by composition and its closed form, for `g` in
/// `{Jx, Jy}`.
pub fn quadratic_gap(g: Generator, ctx: &Su2Context, v: &StateVector, cfg: &EvalConfig) -> Result<f64> {
    let sign = match g {
        Generator::Jx => 1.0,
        Generator::Jy => -1.0,
        other => {
            return Err(Error::InvalidRange(format!(
                "quadratic closed form exists for Jx and Jy only, got {other:?}"
            )))
        }
    };
    let composed = apply_twice(g, g, ctx, v, cfg)?;
    let mut terms = Vec::new();
    for t in v.terms() {
        terms.extend(quadratic_closed(ctx, t, sign, cfg)?);
    }
    let closed = StateVector::from_terms(*v.domain(), terms)?;
    Ok(composed.sub(&closed)?.coefficient_norm())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub family: Su2Family,
    pub omega: f64,
    pub k: Complex64,
    pub sqrt_b_k: Complex64,
    pub relation_residuals: BTreeMap<String, f64>,
    /// On the `m = +1/2` state.
    pub casimir_value: Complex64,
    /// Keyed by `"+1/2"` and `"-1/2"`.
    pub j0_values: BTreeMap<String, Complex64>,
    /// Checks reported for information only; they do not affect `passed`.
    pub diagnostics: BTreeMap<String, f64>,
    pub passed: bool,
    pub tolerance: f64,
}

fn finish(
    ctx: &Su2Context,
    relation_residuals: BTreeMap<String, f64>,
    casimir_value: Complex64,
    j0_values: BTreeMap<String, Complex64>,
    diagnostics: BTreeMap<String, f64>,
    tolerance: f64,
) -> AlgebraReport {
    let passed = relation_residuals.values().all(|r| *r <= tolerance) && (casimir_value - 0.75).norm() <= tolerance;
    AlgebraReport {
        family: ctx.family,
        omega: ctx.omega,
        k: ctx.k,
        sqrt_b_k: ctx.sqrt_b_k,
        relation_residuals,
        casimir_value,
        j0_values,
        diagnostics,
        passed,
        tolerance,
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidRange(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn gap(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.sub(b)?.coefficient_norm())
}

fn gram_defect(
    states: &[&StateVector; 2],
    inner: impl Fn(&StateVector, &StateVector) -> Result<Complex64>,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, f) in states.iter().enumerate() {
        for (j, g) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner(f, g)? - want).norm());
        }
    }
    Ok(worst)
}

/// Checks the spin-1/2 representation on `|1/2, ±1/2>` at a nontrivial zero
/// ordinate `omega`.
pub fn verify_nontrivial_rep(omega: f64, tol: f64, cfg: &EvalConfig) -> Result<AlgebraReport> {
    check_tolerance(tol)?;
    ensure_finite("omega", omega)?;
    let residual = critical_line_residual(omega, cfg)?.max(critical_line_residual(-omega, cfg)?);
    if residual > tol {
        return Err(Error::NotAZero { omega, residual });
    }
    let ctx = Su2Context::nontrivial(omega, cfg)?;
    let dom = IntervalDomain::new(omega)?;
    let up = make_su2_state(0.5, SpinProjection::Up, dom);
    let down = make_su2_state(0.5, SpinProjection::Down, dom);
    let half = Complex64::new(0.5, 0.0);
    let i_half = Complex64::new(0.0, 0.5);

    let mut rel = BTreeMap::new();
    for (name, pair) in [
        (REL_JP_JM, CommutatorPair::JpJm),
        (REL_J0_JM, CommutatorPair::J0Jm),
        (REL_J0_JP, CommutatorPair::J0Jp),
    ] {
        let worst = commutator_residual(pair, &ctx, &up, cfg)?.max(commutator_residual(pair, &ctx, &down, cfg)?);
        rel.insert(name.to_string(), worst);
    }

    let c_up = casimir(&ctx, &up, cfg)?;
    let c_down = casimir(&ctx, &down, cfg)?;
    rel.insert(REL_CASIMIR.into(), (c_up - 0.75).norm().max((c_down - 0.75).norm()));
    rel.insert(REL_ORTHONORMAL.into(), gram_defect(&[&up, &down], dirac_inner)?);

    // Jx|±> = 1/2 |∓>, Jy|+> = -(1/2i)|->, Jy|-> = (1/2i)|+>
    let ladder = [
        gap(&apply_generator(Generator::Jx, &ctx, &up, cfg)?, &down.scale(half))?,
        gap(&apply_generator(Generator::Jx, &ctx, &down, cfg)?, &up.scale(half))?,
        gap(&apply_generator(Generator::Jy, &ctx, &up, cfg)?, &down.scale(i_half))?,
        gap(&apply_generator(Generator::Jy, &ctx, &down, cfg)?, &up.scale(-i_half))?,
    ];
    rel.insert(REL_LADDER.into(), ladder.into_iter().fold(0.0, f64::max));

    let j0_up = eigenvalue_in(&up, &apply_generator(Generator::J0, &ctx, &up, cfg)?, "J0")?;
    let j0_down = eigenvalue_in(&down, &apply_generator(Generator::J0, &ctx, &down, cfg)?, "J0")?;
    rel.insert(REL_J0_EIGEN.into(), (j0_up - 0.5).norm().max((j0_down + 0.5).norm()));

    let j0_values = BTreeMap::from([("+1/2".to_string(), j0_up), ("-1/2".to_string(), j0_down)]);
    let diagnostics = BTreeMap::from([
        ("zero_residual".to_string(), residual),
        ("casimir_down_gap".to_string(), (c_down - 0.75).norm()),
    ]);
    Ok(finish(&ctx, rel, c_up, j0_values, diagnostics, tol))
}

/// Checks the trivial-zero pair `ψ_{-2N, ±1/2}` with `k = -2N - iω`.
///
/// Gated relations are evaluated on `ψ_{-2N, +1/2}`, the state annihilated
/// by `J₋`. `[J₀, J₊] = J₊` holds there only up to `b(-2N - 2iω) / b(k)`, so
/// its defect is reported under `diagnostics`.
pub fn verify_trivial_rep(n: u32, omega: f64, tol: f64, cfg: &EvalConfig) -> Result<AlgebraReport> {
    check_tolerance(tol)?;
    let ctx = Su2Context::trivial(n, omega, cfg)?;
    let dom = IntervalDomain::new(omega)?;
    let up = make_trivial_state(n, SpinProjection::Up, dom)?;
    let down = make_trivial_state(n, SpinProjection::Down, dom)?;
    let sigma = -2.0 * n as f64;

    let mut rel = BTreeMap::new();
    rel.insert(
        REL_JP_JM.into(),
        commutator_residual(CommutatorPair::JpJm, &ctx, &up, cfg)?,
    );
    rel.insert(
        REL_J0_JM.into(),
        commutator_residual(CommutatorPair::J0Jm, &ctx, &up, cfg)?,
    );

    let c_up = casimir(&ctx, &up, cfg)?;
    rel.insert(REL_CASIMIR.into(), (c_up - 0.75).norm());
    rel.insert(
        REL_ORTHONORMAL.into(),
        gram_defect(&[&up, &down], |f, g| modified_inner(f, g, sigma))?,
    );

    // Jx ψ₊ = ζ(1+2N+iω)/(2 sqrt_b_k) ψ₋ and Jy ψ₊ = ζ(1+2N+iω)/(2i sqrt_b_k) ψ₋
    let ratio = zeta_at(Complex64::new(1.0 + 2.0 * n as f64, omega), cfg)? / (ctx.sqrt_b_k * 2.0);
    let ladder = [
        gap(&apply_generator(Generator::Jx, &ctx, &up, cfg)?, &down.scale(ratio))?,
        gap(
            &apply_generator(Generator::Jy, &ctx, &up, cfg)?,
            &down.scale(ratio * Complex64::new(0.0, -1.0)),
        )?,
        apply_generator(Generator::Jminus, &ctx, &up, cfg)?.coefficient_norm(),
    ];
    rel.insert(REL_LADDER.into(), ladder.into_iter().fold(0.0, f64::max));

    let j0_up = eigenvalue_in(&up, &apply_generator(Generator::J0, &ctx, &up, cfg)?, "J0")?;
    let j0_down = eigenvalue_in(&down, &apply_generator(Generator::J0, &ctx, &down, cfg)?, "J0")?;
    rel.insert(REL_J0_EIGEN.into(), (j0_up + 0.5).norm());

    let j0_values = BTreeMap::from([("+1/2".to_string(), j0_up), ("-1/2".to_string(), j0_down)]);
    let c_down = casimir(&ctx, &down, cfg)?;
    let diagnostics = BTreeMap::from([
        (
            REL_J0_JP.to_string(),
            commutator_residual(CommutatorPair::J0Jp, &ctx, &up, cfg)?,
        ),
        ("casimir_down_gap".to_string(), (c_down - 0.75).norm()),
        ("branch_defect".to_string(), ctx.branch_defect()),
    ]);
    Ok(finish(&ctx, rel, c_up, j0_values, diagnostics, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::zeta;
    use proptest::prelude::*;

    const FIRST_ZERO: f64 = 14.134_725_141_734_693;
    const SECOND_ZERO: f64 = 21.022_039_638_771_555;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coef(v: &StateVector) -> Complex64 {
        assert_eq!(v.len(), 1);
        v.terms()[0].coefficient
    }

    #[test]
    fn branch_choice() {
        let ctx = Su2Context::nontrivial(FIRST_ZERO, &cfg()).unwrap();
        assert!(ctx.sqrt_b_k.re < 0.0);
        assert!(ctx.branch_defect() <= 1e-10);
        let t = Su2Context::trivial(2, 1.0, &cfg()).unwrap();
        assert!(t.sqrt_b_k.re >= 0.0);
        assert!(t.branch_defect() <= 1e-10);
        assert!(Su2Context::trivial(0, 1.0, &cfg()).is_err());
        assert!(Su2Context::trivial(1, 0.0, &cfg()).is_err());
        assert!(matches!(
            Su2Context::general(c(1.0, 0.0), 1.0, &cfg()),
            Err(Error::PoleEncountered(_))
        ));
    }

    #[test]
    fn generator_actions_at_first_zero() {
        let ctx = Su2Context::nontrivial(FIRST_ZERO, &cfg()).unwrap();
        let d = IntervalDomain::new(FIRST_ZERO).unwrap();
        let up = make_su2_state(0.5, SpinProjection::Up, d);
        let down = make_su2_state(0.5, SpinProjection::Down, d);

        let jx = apply_generator(Generator::Jx, &ctx, &up, &cfg()).unwrap().pruned(1e-9);
        assert!(gap(&jx, &down.scale(c(0.5, 0.0))).unwrap() <= 1e-9);

        let j0 = apply_generator(Generator::J0, &ctx, &down, &cfg()).unwrap();
        assert!(gap(&j0, &down.scale(c(-0.5, 0.0))).unwrap() <= 1e-9);
    }

    #[test]
    fn trivial_j0() {
        let ctx = Su2Context::trivial(1, 1.0, &cfg()).unwrap();
        let d = IntervalDomain::new(1.0).unwrap();
        let up = make_trivial_state(1, SpinProjection::Up, d).unwrap();
        let j0 = apply_generator(Generator::J0, &ctx, &up, &cfg()).unwrap();
        assert!(gap(&j0, &up.scale(c(-0.5, 0.0))).unwrap() <= 1e-12);
    }

    #[test]
    fn domain_mismatch() {
        let ctx = Su2Context::nontrivial(FIRST_ZERO, &cfg()).unwrap();
        let up = make_su2_state(0.5, SpinProjection::Up, IntervalDomain::new(3.0).unwrap());
        assert!(matches!(
            apply_generator(Generator::J0, &ctx, &up, &cfg()),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn casimir_examples() {
        let ctx = Su2Context::nontrivial(FIRST_ZERO, &cfg()).unwrap();
        let d = IntervalDomain::new(FIRST_ZERO).unwrap();
        for m in [SpinProjection::Up, SpinProjection::Down] {
            let v = casimir(&ctx, &make_su2_state(0.5, m, d), &cfg()).unwrap();
            assert!((v - 0.75).norm() <= 1e-8, "{v}");
        }

        let ctx = Su2Context::trivial(1, 1.0, &cfg()).unwrap();
        let d = IntervalDomain::new(1.0).unwrap();
        let up = make_trivial_state(1, SpinProjection::Up, d).unwrap();
        assert!((casimir(&ctx, &up, &cfg()).unwrap() - 0.75).norm() <= 1e-8);
        let down = make_trivial_state(1, SpinProjection::Down, d).unwrap();
        let closed = casimir_closed_form(&ctx, down.terms()[0].exponent, &cfg()).unwrap();
        assert!((casimir(&ctx, &down, &cfg()).unwrap() - closed).norm() <= 1e-9 * closed.norm().max(1.0));

        let s = c(0.3, 2.0);
        let g = Su2Context::general(s, 2.0, &cfg()).unwrap();
        let v = StateVector::monomial(IntervalDomain::new(2.0).unwrap(), Monomial::new(s, c(1.0, 0.0))).unwrap();
        let closed = casimir_closed_form(&g, s, &cfg()).unwrap();
        assert!((casimir(&g, &v, &cfg()).unwrap() - closed).norm() <= 1e-9 * closed.norm().max(1.0));
    }

    #[test]
    fn casimir_rejects_mixed_eigenvalues() {
        let ctx = Su2Context::general(c(0.3, 2.0), 2.0, &cfg()).unwrap();
        let d = IntervalDomain::new(2.0).unwrap();
        let v = StateVector::from_terms(
            d,
            vec![
                Monomial::new(c(0.3, 2.0), c(1.0, 0.0)),
                Monomial::new(c(0.7, -1.0), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        assert!(matches!(casimir(&ctx, &v, &cfg()), Err(Error::NotAnEigenvector(_))));
        assert!(matches!(
            casimir(&ctx, &StateVector::zero(d), &cfg()),
            Err(Error::NotAnEigenvector(_))
        ));
    }

    #[test]
    fn ladder_relations_need_the_zero() {
        let d = IntervalDomain::new(FIRST_ZERO).unwrap();
        let ctx = Su2Context::nontrivial(FIRST_ZERO, &cfg()).unwrap();
        let up = make_su2_state(0.5, SpinProjection::Up, d);
        assert!(commutator_residual(CommutatorPair::JpJm, &ctx, &up, &cfg()).unwrap() <= 1e-8);
        assert!(commutator_residual(CommutatorPair::J0Jm, &ctx, &up, &cfg()).unwrap() <= 1e-8);

        // away from a zero [J+, J-] = 2 J0 still holds by construction, the
        // spin-1/2 ladder relations do not
        let w = 3.0;
        let g = Su2Context::general(c(0.5, 0.0), w, &cfg()).unwrap();
        let v =
            StateVector::monomial(IntervalDomain::new(w).unwrap(), Monomial::new(c(0.3, 2.0), c(1.0, 0.0))).unwrap();
        assert!(commutator_residual(CommutatorPair::JpJm, &g, &v, &cfg()).unwrap() <= 1e-12);
        assert!(commutator_residual(CommutatorPair::J0Jm, &g, &v, &cfg()).unwrap() > 1e-3);
    }

    #[test]
    fn nontrivial_reports() {
        let r = verify_nontrivial_rep(FIRST_ZERO, DEFAULT_REP_TOLERANCE, &cfg()).unwrap();
        assert!(r.passed, "{r:?}");
        assert!((r.casimir_value - 0.75).norm() <= 1e-8);
        assert!((r.j0_values["+1/2"] - 0.5).norm() <= 1e-8);
        assert!((r.j0_values["-1/2"] + 0.5).norm() <= 1e-8);
        for name in [REL_JP_JM, REL_J0_JM, REL_J0_JP, REL_CASIMIR, REL_ORTHONORMAL] {
            assert!(r.relation_residuals.contains_key(name));
        }
        assert!(
            verify_nontrivial_rep(SECOND_ZERO, DEFAULT_REP_TOLERANCE, &cfg())
                .unwrap()
                .passed
        );
        assert!(matches!(
            verify_nontrivial_rep(10.0, DEFAULT_REP_TOLERANCE, &cfg()),
            Err(Error::NotAZero { .. })
        ));
    }

    #[test]
    fn trivial_reports() {
        let r = verify_trivial_rep(1, 1.0, DEFAULT_REP_TOLERANCE, &cfg()).unwrap();
        assert!(r.passed, "{r:?}");
        assert!((r.casimir_value - 0.75).norm() <= 1e-8);
        assert!((r.j0_values["+1/2"] + 0.5).norm() <= 1e-8);

        let ctx = Su2Context::trivial(1, 1.0, &cfg()).unwrap();
        let d = IntervalDomain::new(1.0).unwrap();
        let up = make_trivial_state(1, SpinProjection::Up, d).unwrap();
        let jx = apply_generator(Generator::Jx, &ctx, &up, &cfg()).unwrap().pruned(0.0);
        let want = zeta(c(3.0, 1.0), &cfg()).unwrap()
            / (2.0 * (zeta(c(-2.0, -1.0), &cfg()).unwrap() * zeta(c(3.0, 1.0), &cfg()).unwrap()).sqrt());
        assert!((coef(&jx) / up.terms()[0].coefficient - want).norm() <= 1e-12);

        assert!(
            verify_trivial_rep(3, 0.5, DEFAULT_REP_TOLERANCE, &cfg())
                .unwrap()
                .passed
        );
    }

    fn s_strategy() -> impl Strategy<Value = Complex64> {
        (-1.5f64..2.5, -15.0f64..15.0).prop_map(|(re, im)| c(re, im))
    }

    fn far_from_poles(s: Complex64, w: f64) -> bool {
        let iw = c(0.0, w);
        [s, s + iw, s - iw, s - iw * 2.0, s + iw * 2.0]
            .iter()
            .all(|z| (z - 1.0).norm() > 1e-2 && z.norm() > 1e-2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn casimir_paths_agree(s in s_strategy(), k in s_strategy(), w in 0.3f64..8.0) {
            prop_assume!(far_from_poles(s, w) && far_from_poles(k, 0.0));
            let ctx = Su2Context::general(k, w, &cfg()).unwrap();
            let v = StateVector::monomial(IntervalDomain::new(w).unwrap(), Monomial::new(s, c(1.0, 0.0))).unwrap();
            prop_assert!(casimir(&ctx, &v, &cfg()).is_ok());
        }

        #[test]
        fn commutators_match_closed_forms(s in s_strategy(), w in 0.3f64..8.0) {
            prop_assume!(far_from_poles(s, w));
            let ctx = Su2Context::nontrivial(w, &cfg()).unwrap();
            let v = StateVector::monomial(IntervalDomain::new(w).unwrap(), Monomial::new(s, c(1.0, 0.0))).unwrap();
            for pair in [CommutatorPair::JpJm, CommutatorPair::J0Jm, CommutatorPair::J0Jp] {
                let chk = commutator_check(pair, &ctx, &v, &cfg()).unwrap();
                let scale = apply_generator(Generator::Jx, &ctx, &v, &cfg()).unwrap().coefficient_norm().max(1.0);
                prop_assert!(chk.closed_form_gap <= 1e-9 * scale * scale, "{:?} {}", pair, chk.closed_form_gap);
            }
            for g in [Generator::Jx, Generator::Jy] {
                let gap = quadratic_gap(g, &ctx, &v, &cfg()).unwrap();
                let scale = apply_twice(g, g, &ctx, &v, &cfg()).unwrap().coefficient_norm().max(1.0);
                prop_assert!(gap <= 1e-12 * scale);
            }
        }

        #[test]
        fn jp_jm_is_two_j0(s in s_strategy(), w in 0.3f64..8.0) {
            prop_assume!(far_from_poles(s, w));
            let ctx = Su2Context::general(c(0.5, 0.0), w, &cfg()).unwrap();
            let v = StateVector::monomial(IntervalDomain::new(w).unwrap(), Monomial::new(s, c(1.0, 0.0))).unwrap();
            let j0 = apply_generator(Generator::J0, &ctx, &v, &cfg()).unwrap().coefficient_norm();
            prop_assert!(commutator_residual(CommutatorPair::JpJm, &ctx, &v, &cfg()).unwrap() <= 1e-12 * j0.max(1.0));
        }
    }
}
