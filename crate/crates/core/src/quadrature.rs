//! Numerical quadrature of state inner products, used to check the closed
//! forms in `hilbert`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::StateVector;

const GAUSS_ORDER: usize = 10;
const MAX_DOUBLINGS: u32 = 12;
/// Successive refinements must agree to this before a result is returned.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite rule on `[1, a]` with `panels` geometric panels
/// (`x_k = a^(k / panels)`) so oscillation in `log x` is spread evenly.
fn composite<F: Fn(f64) -> Complex64>(f: &F, a: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> Complex64 {
    let log_a = a.ln();
    let (nodes, weights) = rule;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut lo = 1.0;
    for k in 1..=panels {
        let hi = if k == panels {
            a
        } else {
            (log_a * k as f64 / panels as f64).exp()
        };
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut panel = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(weights) {
            panel += f(mid + half * x) * *w;
        }
        acc += panel * half;
        lo = hi;
    }
    acc
}

/// `∫ conj(f(x)) g(x) |x|^w dx` over the state domain by composite
/// Gauss-Legendre, starting from `n_points` panels and doubling until two
/// successive refinements agree.
///
/// Parity-tagged states are integrated over both `[1, a]` and `[-a, -1]`
/// using their pointwise values.
pub fn quadrature_inner(f: &StateVector, g: &StateVector, weight_exponent: f64, n_points: usize) -> Result<Complex64> {
    if n_points < 64 {
        return Err(Error::InvalidRange(format!(
            "n_points must be at least 64, got {n_points}"
        )));
    }
    if !f.domain().same_as(g.domain()) {
        return Err(Error::DomainMismatch(format!("omega {} vs {}", f.omega(), g.omega())));
    }
    if f.is_parity_tagged() != g.is_parity_tagged() && !f.is_empty() && !g.is_empty() {
        return Err(Error::DomainMismatch(
            "cannot pair parity-tagged and untagged states".into(),
        ));
    }
    let mirrored = f.is_parity_tagged() || g.is_parity_tagged();
    let a = f.domain().a();
    let integrand = |x: f64| {
        let mut v = f.eval(x).conj() * g.eval(x) * x.powf(weight_exponent);
        if mirrored {
            v += f.eval(-x).conj() * g.eval(-x) * x.powf(weight_exponent);
        }
        v
    };
    let rule = gauss_legendre(GAUSS_ORDER);
    let mut panels = n_points;
    let mut prev = composite(&integrand, a, panels, &rule);
    let mut diff = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let next = composite(&integrand, a, panels, &rule);
        diff = (next - prev).norm();
        prev = next;
        if diff <= 1e-13 * next.norm().max(1.0) {
            return Ok(next);
        }
    }
    if diff > CONVERGENCE_TOL {
        return Err(Error::NonConvergence(diff));
    }
    Ok(prev)
}
