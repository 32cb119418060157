//! SUSY-breaking classification from the zero-energy conditions, and the PT
//! symmetry residual of `H₋`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::hilbert::{IntervalDomain, Monomial, Parity, StateVector};
use crate::operators::{eigenvalue_of, zeta_at, OperatorDescriptor};
use crate::zeros::is_nontrivial_zero;
use crate::zeta::EvalConfig;

/// `|sigma - 1/2|` at or below this counts as the critical line.
pub const CRITICAL_LINE_TOL: f64 = 1e-12;
pub const DEFAULT_PT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SusyCategory {
    UnbrokenNontrivialZero,
    SpontaneouslyBroken,
    BrokenComplexSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SusyVerdict {
    pub category: SusyCategory,
    pub sigma: f64,
    pub omega: f64,
    /// `b(sigma + i omega)`, the `H₋` eigenvalue of `x^(-s)`.
    pub ground_energy: Complex64,
    /// `|zeta(sigma + i omega)|`.
    pub zero_residual: f64,
    pub tolerance: f64,
    /// Zero-energy bosonic states.
    pub n_b: u8,
    /// Zero-energy fermionic states.
    pub n_f: u8,
}

impl SusyVerdict {
    pub fn witten_index(&self) -> i32 {
        i32::from(self.n_b) - i32::from(self.n_f)
    }
}

/// Decides which zero-energy condition `(sigma, omega)` satisfies.
///
/// Off the critical line the spectrum is complex and SUSY is broken; on it,
/// zero energy is reached exactly at the nontrivial zeros.
pub fn witten_classify(sigma: f64, omega: f64, tol: f64, cfg: &EvalConfig) -> Result<SusyVerdict> {
    ensure_finite("sigma", sigma)?;
    ensure_finite("omega", omega)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidRange(format!("tolerance must be positive, got {tol}")));
    }
    let s = Complex64::new(sigma, omega);
    let z = zeta_at(s, cfg)?;
    let ground_energy = z * zeta_at(Complex64::new(1.0, 0.0) - s, cfg)?;
    let on_line = (sigma - 0.5).abs() <= CRITICAL_LINE_TOL;
    let category = if !on_line {
        SusyCategory::BrokenComplexSpectrum
    } else if is_nontrivial_zero(omega, tol, cfg)? && ground_energy.norm() <= tol {
        SusyCategory::UnbrokenNontrivialZero
    } else {
        SusyCategory::SpontaneouslyBroken
    };
    let count = u8::from(category == SusyCategory::UnbrokenNontrivialZero);
    Ok(SusyVerdict {
        category,
        sigma,
        omega,
        ground_energy,
        zero_residual: z.norm(),
        tolerance: tol,
        n_b: count,
        n_f: count,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PtVerdict {
    pub residual: Complex64,
    pub unbroken: bool,
    pub sigma: f64,
    pub omega: f64,
    pub tolerance: f64,
}

/// `ζ(σ+iω)ζ(1−σ−iω) − ζ(σ−iω)ζ(1−σ+iω)`, from four separate evaluations.
/// Purely imaginary up to rounding.
pub fn pt_residual(sigma: f64, omega: f64, cfg: &EvalConfig) -> Result<Complex64> {
    ensure_finite("sigma", sigma)?;
    ensure_finite("omega", omega)?;
    let one = Complex64::new(1.0, 0.0);
    let s = Complex64::new(sigma, omega);
    let sc = s.conj();
    let forward = zeta_at(s, cfg)? * zeta_at(one - s, cfg)?;
    let backward = zeta_at(sc, cfg)? * zeta_at(one - sc, cfg)?;
    let r = forward - backward;
    debug_assert!(
        r.re.abs() <= 1e-9 * forward.norm().max(1.0),
        "PT residual has real part {} at ({sigma}, {omega})",
        r.re
    );
    Ok(r)
}

pub fn pt_check(sigma: f64, omega: f64, tol: f64, cfg: &EvalConfig) -> Result<PtVerdict> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidRange(format!("tolerance must be positive, got {tol}")));
    }
    let residual = pt_residual(sigma, omega, cfg)?;
    Ok(PtVerdict {
        residual,
        unbroken: residual.norm() <= tol,
        sigma,
        omega,
        tolerance: tol,
    })
}

/// PT on a parity-tagged state: conjugate coefficients and exponents, and
/// flip the sign of odd terms.
pub fn pt_transform(v: &StateVector) -> Result<StateVector> {
    let terms = v
        .terms()
        .iter()
        .map(|t| {
            let sign = t.parity.sign().ok_or(Error::ParityUntagged)?;
            Ok(Monomial {
                exponent: t.exponent.conj(),
                coefficient: t.coefficient.conj() * sign,
                parity: t.parity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    StateVector::from_terms(*v.domain(), terms)
}

/// Even (`ψ₁`) or odd (`ψ₂`) extension of `|x|^(-sigma - i omega)`.
pub fn pt_state(sigma: f64, omega: f64, parity: Parity, domain: IntervalDomain) -> Result<StateVector> {
    if parity == Parity::None {
        return Err(Error::ParityUntagged);
    }
    StateVector::monomial(
        domain,
        Monomial::new(Complex64::new(sigma, omega), Complex64::new(1.0, 0.0)).with_parity(parity),
    )
}

/// `[PT, H₋] ψ` for a single parity-tagged monomial, with `H₋` acting as its
/// energy `E = b(s)` in the sector of `ψ`:
/// `PT(Eψ) − E·PTψ = (conj(E) − E)·PTψ`.
///
/// Returns the coefficient norm of that state and the PT verdict at
/// `s = sigma + i omega` read off the monomial. The norm equals
/// `|pt_residual| · ‖ψ‖`.
pub fn pt_commutator_check(psi: &StateVector, tol: f64, cfg: &EvalConfig) -> Result<(f64, PtVerdict)> {
    let term = match psi.terms() {
        [t] => *t,
        terms => {
            return Err(Error::InvalidRange(format!(
                "PT commutator needs a single-monomial state, got {} terms",
                terms.len()
            )))
        }
    };
    if term.parity == Parity::None {
        return Err(Error::ParityUntagged);
    }
    let h = OperatorDescriptor::h_minus(psi.omega());
    let energy = eigenvalue_of(&h, &term, psi.domain(), cfg)?;
    let pt_then_h = pt_transform(psi)?.scale(energy);
    let h_then_pt = pt_transform(&psi.scale(energy))?;
    let defect = h_then_pt.sub(&pt_then_h)?.coefficient_norm();
    let verdict = pt_check(term.exponent.re, term.exponent.im, tol, cfg)?;
    Ok((defect, verdict))
}
