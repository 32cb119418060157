//! Finite superpositions of monomials `x^(-s)` on `[1, a]` with
//! `a = e^(2 pi / omega)`, optionally extended by parity to
//! `[-a, -1] ∪ [1, a]`.
//!
//! Inner products are evaluated in closed form from
//! `∫_1^a x^p dx = (a^(p+1) - 1) / (p + 1)` (or `log a` when `p = -1`).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_finite_c, Error, Result};

/// Exponents closer than this (componentwise) are merged.
pub const EXPONENT_MERGE_TOL: f64 = 1e-12;
/// Allowed deviation of `Re(s)` from sigma in the modified inner product.
pub const REAL_PART_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    /// Sign picked up under `x -> -x`; `None` for untagged terms.
    pub fn sign(self) -> Option<f64> {
        match self {
            Parity::Even => Some(1.0),
            Parity::Odd => Some(-1.0),
            Parity::None => None,
        }
    }
}

/// The magnetic quantum number of the two-level states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinProjection {
    #[serde(rename = "+1/2")]
    Up,
    #[serde(rename = "-1/2")]
    Down,
}

impl SpinProjection {
    pub fn value(self) -> f64 {
        match self {
            SpinProjection::Up => 0.5,
            SpinProjection::Down => -0.5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SpinProjection::Up => "+1/2",
            SpinProjection::Down => "-1/2",
        }
    }
}

/// `[1, a]` with `a = exp(2 pi / omega)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalDomain {
    omega: f64,
    log_a: f64,
    a: f64,
}

impl IntervalDomain {
    pub fn new(omega: f64) -> Result<Self> {
        ensure_finite("omega", omega)?;
        if omega <= 0.0 {
            return Err(Error::InvalidRange(format!("omega must be positive, got {omega}")));
        }
        let log_a = 2.0 * PI / omega;
        let a = log_a.exp();
        if !a.is_finite() {
            return Err(Error::InvalidRange(format!(
                "omega = {omega} gives an interval end beyond double range"
            )));
        }
        Ok(Self { omega, log_a, a })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `log a = 2 pi / omega`, kept exactly rather than recomputed from `a`.
    pub fn log_a(&self) -> f64 {
        self.log_a
    }

    pub fn same_as(&self, other: &IntervalDomain) -> bool {
        (self.omega - other.omega).abs() <= 1e-12 * self.omega.abs().max(other.omega.abs())
    }
}

/// `coefficient * P(x) * |x|^(-exponent)` where `P` is 1, or `sgn(x)` for odd
/// parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub exponent: Complex64,
    pub coefficient: Complex64,
    pub parity: Parity,
}

impl Monomial {
    pub fn new(exponent: Complex64, coefficient: Complex64) -> Self {
        Self {
            exponent,
            coefficient,
            parity: Parity::None,
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Pointwise value; `x` may be negative only for parity-tagged terms.
    pub fn eval(&self, x: f64) -> Complex64 {
        let mag = x.abs();
        let sign = if x < 0.0 && self.parity == Parity::Odd {
            -1.0
        } else {
            1.0
        };
        self.coefficient * crate::zeta::real_pow_neg(mag, self.exponent) * sign
    }

    fn same_exponent(&self, other: &Monomial) -> bool {
        self.parity == other.parity
            && (self.exponent.re - other.exponent.re).abs() <= EXPONENT_MERGE_TOL
            && (self.exponent.im - other.exponent.im).abs() <= EXPONENT_MERGE_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    terms: Vec<Monomial>,
    domain: IntervalDomain,
}

impl StateVector {
    /// The zero state.
    pub fn zero(domain: IntervalDomain) -> Self {
        Self {
            terms: Vec::new(),
            domain,
        }
    }

    pub fn monomial(domain: IntervalDomain, term: Monomial) -> Result<Self> {
        Self::from_terms(domain, vec![term])
    }

    /// Builds a state, merging terms whose exponents agree within
    /// [`EXPONENT_MERGE_TOL`].
    pub fn from_terms(domain: IntervalDomain, terms: Vec<Monomial>) -> Result<Self> {
        let mut state = Self::zero(domain);
        for t in terms {
            state.push(t)?;
        }
        Ok(state)
    }

    fn push(&mut self, term: Monomial) -> Result<()> {
        ensure_finite_c("exponent", term.exponent)?;
        ensure_finite_c("coefficient", term.coefficient)?;
        if let Some(first) = self.terms.first() {
            let tagged = first.parity != Parity::None;
            if tagged != (term.parity != Parity::None) {
                return Err(Error::DomainMismatch(
                    "cannot mix parity-tagged and untagged terms".into(),
                ));
            }
        }
        match self.terms.iter_mut().find(|t| t.same_exponent(&term)) {
            Some(existing) => existing.coefficient += term.coefficient,
            None => self.terms.push(term),
        }
        Ok(())
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn domain(&self) -> &IntervalDomain {
        &self.domain
    }

    pub fn omega(&self) -> f64 {
        self.domain.omega
    }

    pub fn is_parity_tagged(&self) -> bool {
        self.terms.iter().any(|t| t.parity != Parity::None)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Monomial {
                    coefficient: t.coefficient * c,
                    ..*t
                })
                .collect(),
            domain: self.domain,
        }
    }

    fn check_domain(&self, other: &StateVector) -> Result<()> {
        if self.domain.same_as(&other.domain) {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "omega {} vs {}",
                self.domain.omega, other.domain.omega
            )))
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for t in &other.terms {
            out.push(*t)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &StateVector) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Coefficient of the term with the given exponent (and parity), zero if
    /// absent.
    pub fn coefficient_of(&self, exponent: Complex64, parity: Parity) -> Complex64 {
        let probe = Monomial {
            exponent,
            coefficient: Complex64::new(0.0, 0.0),
            parity,
        };
        self.terms
            .iter()
            .find(|t| t.same_exponent(&probe))
            .map(|t| t.coefficient)
            .unwrap_or_default()
    }

    /// Drops terms whose coefficient magnitude is at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|t| t.coefficient.norm() > tol)
                .collect(),
            domain: self.domain,
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let parities: Vec<Parity> = self.terms.iter().map(|t| t.parity).collect();
        let uniform = parities.windows(2).all(|w| w[0] == w[1]);
        let parity = match (uniform, parities.first()) {
            (_, None) => "none",
            (true, Some(Parity::Even)) => "even",
            (true, Some(Parity::Odd)) => "odd",
            (true, Some(Parity::None)) => "none",
            (false, _) => "mixed",
        };
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                let mut obj = serde_json::json!({
                    "exponent": [t.exponent.re, t.exponent.im],
                    "coefficient": [t.coefficient.re, t.coefficient.im],
                });
                if !uniform {
                    obj["parity"] = serde_json::to_value(t.parity).expect("parity serializes");
                }
                obj
            })
            .collect();
        serde_json::json!({
            "domain": {"omega": self.domain.omega},
            "parity": parity,
            "terms": terms,
        })
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let file: StateFile = serde_json::from_value(value.clone()).map_err(|e| Error::Schema {
            path: "state".into(),
            message: e.to_string(),
        })?;
        let domain = IntervalDomain::new(file.domain.omega)?;
        let default_parity = match file.parity.as_str() {
            "even" => Some(Parity::Even),
            "odd" => Some(Parity::Odd),
            "none" => Some(Parity::None),
            "mixed" => None,
            other => {
                return Err(Error::Schema {
                    path: "parity".into(),
                    message: format!("unknown parity `{other}`"),
                })
            }
        };
        let terms = file
            .terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let parity = t.parity.or(default_parity).ok_or_else(|| Error::Schema {
                    path: format!("terms[{i}].parity"),
                    message: "mixed states tag every term".into(),
                })?;
                Ok(Monomial {
                    exponent: Complex64::new(t.exponent[0], t.exponent[1]),
                    coefficient: Complex64::new(t.coefficient[0], t.coefficient[1]),
                    parity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(domain, terms)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    domain: DomainFile,
    parity: String,
    terms: Vec<TermFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainFile {
    omega: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    exponent: [f64; 2],
    coefficient: [f64; 2],
    #[serde(default)]
    parity: Option<Parity>,
}

/// The two-level state `x^(-sigma + i (m - 1/2) omega) / sqrt(log a)` used
/// for nontrivial zeros.
pub fn make_su2_state(sigma: f64, m: SpinProjection, dom: IntervalDomain) -> StateVector {
    let exponent = Complex64::new(sigma, -(m.value() - 0.5) * dom.omega);
    let coefficient = Complex64::new(1.0 / dom.log_a.sqrt(), 0.0);
    StateVector {
        terms: vec![Monomial::new(exponent, coefficient)],
        domain: dom,
    }
}

/// The trivial-zero state `x^(-sigma + i (1/2 - m) omega) / sqrt(log a)` with
/// `sigma = -2N`. The sign of the `omega` shift is opposite to
/// [`make_su2_state`].
pub fn make_trivial_state(n: u32, m: SpinProjection, dom: IntervalDomain) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::InvalidRange("trivial-zero index N must be at least 1".into()));
    }
    let sigma = -2.0 * n as f64;
    let exponent = Complex64::new(sigma, -(0.5 - m.value()) * dom.omega);
    let coefficient = Complex64::new(1.0 / dom.log_a.sqrt(), 0.0);
    Ok(StateVector {
        terms: vec![Monomial::new(exponent, coefficient)],
        domain: dom,
    })
}

/// `(e^z - 1) / z`, accurate near zero.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 0.1 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..30 {
            term *= z / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `∫_1^a x^p dx`.
fn power_integral(p: Complex64, log_a: f64) -> Complex64 {
    exprel((p + 1.0) * log_a) * log_a
}

/// Multiplicity of the `[1, a]` integral once the mirrored half is included:
/// 1 for untagged terms, `1 + p_f p_g` for parity-tagged ones.
fn parity_weight(f: Parity, g: Parity) -> Result<f64> {
    match (f.sign(), g.sign()) {
        (None, None) => Ok(1.0),
        (Some(pf), Some(pg)) => Ok(1.0 + pf * pg),
        _ => Err(Error::DomainMismatch(
            "cannot pair parity-tagged and untagged states".into(),
        )),
    }
}

/// `∫ conj(f) g |x|^w dx` over the state domain, in closed form.
pub fn weighted_inner(f: &StateVector, g: &StateVector, weight_exponent: f64) -> Result<Complex64> {
    f.check_domain(g)?;
    let log_a = f.domain.log_a;
    let mut acc = Complex64::new(0.0, 0.0);
    for tf in &f.terms {
        for tg in &g.terms {
            let w = parity_weight(tf.parity, tg.parity)?;
            if w == 0.0 {
                continue;
            }
            let p = -tf.exponent.conj() - tg.exponent + weight_exponent;
            acc += tf.coefficient.conj() * tg.coefficient * power_integral(p, log_a) * w;
        }
    }
    Ok(acc)
}

/// The L2 inner product on `[1, a]` (plus its mirror for parity-tagged
/// states). Conjugate-linear in `f`.
pub fn dirac_inner(f: &StateVector, g: &StateVector) -> Result<Complex64> {
    weighted_inner(f, g, 0.0)
}

/// Inner product with weight `x^(2 sigma - 1)`, under which the
/// `Re(s) = sigma` states are orthonormal for any sigma. Equals
/// [`dirac_inner`] at `sigma = 1/2`.
pub fn modified_inner(f: &StateVector, g: &StateVector, sigma: f64) -> Result<Complex64> {
    ensure_finite("sigma", sigma)?;
    for t in f.terms.iter().chain(g.terms.iter()) {
        if (t.exponent.re - sigma).abs() > REAL_PART_TOL {
            return Err(Error::RealPartMismatch {
                expected: sigma,
                found: t.exponent.re,
            });
        }
    }
    weighted_inner(f, g, 2.0 * sigma - 1.0)
}
