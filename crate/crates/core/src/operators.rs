//! Ladder operators and partner Hamiltonians as exact shift-and-multiply maps
//! on monomial superpositions.
//!
//! On a term `c x^(-s)`:
//!
//! | operator      | multiplier        | new exponent |
//! |---------------|-------------------|--------------|
//! | `Ω`           | `ζ(s)`            | `s`          |
//! | `Ω†`          | `ζ(1 - s)`        | `s`          |
//! | `A = x^(-iω)Ω`| `ζ(s)`            | `s + iω`     |
//! | `A† = Ω†x^(iω)`| `ζ(1 - s + iω)`  | `s - iω`     |
//! | `H₋ = A†A`    | `ζ(s) ζ(1 - s)`   | `s`          |
//! | `x^(-iω)`     | 1                 | `s + iω`     |
//! | `x^(iω)`      | 1                 | `s - iω`     |
//!
//! `H₊ = x^(-iω) Ω Ω† x^(iω)` is kept as that four-factor product and is
//! never simplified by hand.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::hilbert::{Monomial, StateVector, EXPONENT_MERGE_TOL};
use crate::zeta::{zeta, EvalConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Omega,
    OmegaDagger,
    A,
    ADagger,
    HMinus,
    HPlus,
    /// Multiplication by `x^(-iω)`.
    ShiftDown,
    /// Multiplication by `x^(iω)`.
    ShiftUp,
    Composite,
}

impl OperatorKind {
    fn name(self) -> &'static str {
        match self {
            OperatorKind::Omega => "Omega",
            OperatorKind::OmegaDagger => "Omegadag",
            OperatorKind::A => "A",
            OperatorKind::ADagger => "Adag",
            OperatorKind::HMinus => "Hminus",
            OperatorKind::HPlus => "Hplus",
            OperatorKind::ShiftDown => "Xneg",
            OperatorKind::ShiftUp => "Xpos",
            OperatorKind::Composite => "compose",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        let kind = match name.trim().to_ascii_lowercase().as_str() {
            "omega" => OperatorKind::Omega,
            "omegadag" | "omega_dag" => OperatorKind::OmegaDagger,
            "a" => OperatorKind::A,
            "adag" | "a_dag" => OperatorKind::ADagger,
            "hminus" => OperatorKind::HMinus,
            "hplus" => OperatorKind::HPlus,
            "xneg" => OperatorKind::ShiftDown,
            "xpos" => OperatorKind::ShiftUp,
            _ => return None,
        };
        Some(kind)
    }

    fn shifts(self) -> bool {
        !matches!(
            self,
            OperatorKind::Omega | OperatorKind::OmegaDagger | OperatorKind::HMinus
        )
    }
}

/// An operator with its `ω` shift parameter. Composite factors are listed
/// in written order and applied right to left.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorDescriptor {
    pub kind: OperatorKind,
    pub omega: f64,
    pub factors: Vec<OperatorDescriptor>,
}

impl OperatorDescriptor {
    fn primitive(kind: OperatorKind, omega: f64) -> Self {
        Self {
            kind,
            omega,
            factors: Vec::new(),
        }
    }

    pub fn omega_op(omega: f64) -> Self {
        Self::primitive(OperatorKind::Omega, omega)
    }

    pub fn omega_dagger(omega: f64) -> Self {
        Self::primitive(OperatorKind::OmegaDagger, omega)
    }

    pub fn a(omega: f64) -> Self {
        Self::primitive(OperatorKind::A, omega)
    }

    pub fn a_dagger(omega: f64) -> Self {
        Self::primitive(OperatorKind::ADagger, omega)
    }

    pub fn h_minus(omega: f64) -> Self {
        Self::primitive(OperatorKind::HMinus, omega)
    }

    pub fn shift_down(omega: f64) -> Self {
        Self::primitive(OperatorKind::ShiftDown, omega)
    }

    pub fn shift_up(omega: f64) -> Self {
        Self::primitive(OperatorKind::ShiftUp, omega)
    }

    /// `x^(-iω) Ω Ω† x^(iω)`.
    pub fn h_plus(omega: f64) -> Self {
        Self {
            kind: OperatorKind::HPlus,
            omega,
            factors: vec![
                Self::shift_down(omega),
                Self::omega_op(omega),
                Self::omega_dagger(omega),
                Self::shift_up(omega),
            ],
        }
    }

    pub fn from_kind(kind: OperatorKind, omega: f64) -> Self {
        match kind {
            OperatorKind::HPlus => Self::h_plus(omega),
            k => Self::primitive(k, omega),
        }
    }
}

impl fmt::Display for OperatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OperatorKind::Composite => {
                let names: Vec<String> = self.factors.iter().map(inner_name).collect();
                write!(f, "compose({})(omega={})", names.join(","), self.omega)
            }
            k => write!(f, "{}(omega={})", k.name(), self.omega),
        }
    }
}

fn inner_name(op: &OperatorDescriptor) -> String {
    match op.kind {
        OperatorKind::Composite => {
            let names: Vec<String> = op.factors.iter().map(inner_name).collect();
            format!("compose({})", names.join(","))
        }
        k => k.name().to_string(),
    }
}

fn parse_omega_suffix(s: &str) -> Result<f64> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(omega=<number>)`, got `{s}`")))?;
    let value = inner
        .trim()
        .strip_prefix("omega")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected `omega=<number>`, got `{inner}`")))?;
    let omega: f64 = value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{}` is not a number", value.trim())))?;
    ensure_finite("omega", omega)?;
    Ok(omega)
}

/// Parses `Hminus(omega=14.1347)` or `compose(Adag,A)(omega=14.1347)`.
impl FromStr for OperatorDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("compose(") {
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed compose in `{s}`")))?;
            let omega = parse_omega_suffix(rest[close + 1..].trim())?;
            let factors = rest[..close]
                .split(',')
                .map(|name| {
                    OperatorKind::from_name(name)
                        .map(|k| OperatorDescriptor::from_kind(k, omega))
                        .ok_or_else(|| Error::Parse(format!("unknown operator `{}`", name.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            return compose(factors);
        }
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected `<name>(omega=<number>)`, got `{s}`")))?;
        let kind = OperatorKind::from_name(&s[..open])
            .ok_or_else(|| Error::Parse(format!("unknown operator `{}`", &s[..open])))?;
        let omega = parse_omega_suffix(&s[open..])?;
        Ok(OperatorDescriptor::from_kind(kind, omega))
    }
}

/// zeta with the pole reported against the offending argument.
pub(crate) fn zeta_at(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    zeta(s, cfg).map_err(|e| match e {
        Error::PoleAtOne => Error::PoleEncountered(s),
        other => other,
    })
}

/// Multiplier and exponent shift of a primitive operator on `x^(-s)`.
fn primitive_action(kind: OperatorKind, omega: f64, s: Complex64, cfg: &EvalConfig) -> Result<(Complex64, Complex64)> {
    let iw = Complex64::new(0.0, omega);
    let one = Complex64::new(1.0, 0.0);
    Ok(match kind {
        OperatorKind::Omega => (zeta_at(s, cfg)?, s),
        OperatorKind::OmegaDagger => (zeta_at(one - s, cfg)?, s),
        OperatorKind::A => (zeta_at(s, cfg)?, s + iw),
        OperatorKind::ADagger => (zeta_at(one - s + iw, cfg)?, s - iw),
        OperatorKind::HMinus => (zeta_at(s, cfg)? * zeta_at(one - s, cfg)?, s),
        OperatorKind::ShiftDown => (one, s + iw),
        OperatorKind::ShiftUp => (one, s - iw),
        OperatorKind::HPlus | OperatorKind::Composite => unreachable!("composite handled by caller"),
    })
}

fn check_omega(op: &OperatorDescriptor, v: &StateVector) -> Result<()> {
    if op.kind.shifts() && (op.omega - v.omega()).abs() > 1e-12 * op.omega.abs().max(v.omega().abs()) {
        return Err(Error::DomainMismatch(format!(
            "operator omega {} vs state omega {}",
            op.omega,
            v.omega()
        )));
    }
    Ok(())
}

/// Applies `op` to `v`, term by term and linearly.
pub fn apply(op: &OperatorDescriptor, v: &StateVector, cfg: &EvalConfig) -> Result<StateVector> {
    check_omega(op, v)?;
    match op.kind {
        OperatorKind::HPlus | OperatorKind::Composite => {
            let mut out = v.clone();
            for factor in op.factors.iter().rev() {
                out = apply(factor, &out, cfg)?;
            }
            Ok(out)
        }
        kind => {
            let terms = v
                .terms()
                .iter()
                .map(|t| {
                    let (mult, exponent) = primitive_action(kind, op.omega, t.exponent, cfg)?;
                    Ok(Monomial {
                        exponent,
                        coefficient: t.coefficient * mult,
                        parity: t.parity,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            StateVector::from_terms(*v.domain(), terms)
        }
    }
}

/// Scalar `λ` with `op x^(-s) = λ x^(-s)`.
pub fn eigenvalue_of(
    op: &OperatorDescriptor,
    mono: &Monomial,
    domain: &crate::hilbert::IntervalDomain,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let unit = Monomial {
        coefficient: Complex64::new(1.0, 0.0),
        ..*mono
    };
    let out = apply(op, &StateVector::monomial(*domain, unit)?, cfg)?;
    match out.terms() {
        [t] if (t.exponent.re - mono.exponent.re).abs() <= EXPONENT_MERGE_TOL
            && (t.exponent.im - mono.exponent.im).abs() <= EXPONENT_MERGE_TOL =>
        {
            Ok(t.coefficient)
        }
        [t] => Err(Error::NotAnEigenvector(format!(
            "{op} maps exponent {} to {}",
            mono.exponent, t.exponent
        ))),
        terms => Err(Error::NotAnEigenvector(format!("{op} produced {} terms", terms.len()))),
    }
}

/// Product of `ops` in written order: `compose([X, Y])` applies `Y` first.
pub fn compose(ops: Vec<OperatorDescriptor>) -> Result<OperatorDescriptor> {
    let first = ops.first().ok_or(Error::EmptyComposition)?;
    let omega = first.omega;
    for op in &ops {
        if (op.omega - omega).abs() > 1e-12 * omega.abs().max(op.omega.abs()) {
            return Err(Error::MixedOmega(omega, op.omega));
        }
    }
    Ok(OperatorDescriptor {
        kind: OperatorKind::Composite,
        omega,
        factors: ops,
    })
}
