//! Truncated-Fock-basis oracle.
//!
//! Expands coherent states in the photon-number basis to cross-check the
//! analytic overlap formula and Gram-based norms by brute force. The
//! truncation error is controlled by the analytic Poisson tail bound, and
//! the oracle refuses rather than silently degrades when the bound is too
//! large.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{ModeAmplitude, StateSuperposition};

/// Tail bounds above this are refused.
pub const TAIL_LIMIT: f64 = 1e-8;

/// Default truncation level; keeps the tail negligible for `|alpha| <= 2`.
pub const DEFAULT_N_MAX: usize = 60;

/// Coherent state expanded over `|0> .. |n_max>`, entry
/// `n = e^{-|a|^2/2} a^n / sqrt(n!)`.
#[derive(Debug, Clone)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
    /// Poisson tail mass beyond the truncation, `sum_{n > n_max} e^{-|a|^2} |a|^{2n} / n!`.
    tail_bound: f64,
}

impl FockVector {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Expand a coherent state in the truncated Fock basis using the running
/// recurrence `coeff_{n+1} = coeff_n * a / sqrt(n+1)`.
pub fn coherent_to_fock(alpha: ModeAmplitude, n_max: usize) -> Result<FockVector> {
    if n_max < 1 {
        return Err(Error::InvalidConfig(format!(
            "n_max must be at least 1, got {n_max}"
        )));
    }
    let a = alpha.value();
    let mean = a.norm_sqr();

    // Poisson partial sum for the tail bound
    let mut poisson_term = (-mean).exp();
    let mut retained = poisson_term;
    for n in 1..=n_max {
        poisson_term *= mean / n as f64;
        retained += poisson_term;
    }
    let tail_bound = (1.0 - retained).max(0.0);
    if tail_bound > TAIL_LIMIT {
        return Err(Error::FockTruncation {
            amplitude: alpha.magnitude(),
            n_max,
            bound: tail_bound,
            limit: TAIL_LIMIT,
        });
    }

    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut c = Complex64::new((-mean / 2.0).exp(), 0.0);
    coeffs.push(c);
    for n in 0..n_max {
        c *= a / ((n + 1) as f64).sqrt();
        coeffs.push(c);
    }
    Ok(FockVector { coeffs, tail_bound })
}

/// `sum_n conj(v1_n) v2_n`.
pub fn fock_overlap(v1: &FockVector, v2: &FockVector) -> Result<Complex64> {
    if v1.coeffs.len() != v2.coeffs.len() {
        return Err(Error::LengthMismatch(v1.coeffs.len(), v2.coeffs.len()));
    }
    Ok(v1
        .coeffs
        .iter()
        .zip(v2.coeffs.iter())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Norm^2 of a single-mode superposition computed entirely in the truncated
/// Fock basis. Independent of the Gram-matrix route.
pub fn fock_norm_squared(s: &StateSuperposition, n_max: usize) -> Result<f64> {
    if s.modes().len() != 1 {
        return Err(Error::ModeCountMismatch(s.modes().len(), 1));
    }
    let mut total = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for t in s.terms() {
        let v = coherent_to_fock(t.amps[0], n_max)?;
        for (acc, c) in total.iter_mut().zip(v.coeffs.iter()) {
            *acc += t.coeff * c;
        }
    }
    Ok(total.iter().map(|c| c.norm_sqr()).sum())
}
