//! Measurement-like primitives: vacuum post-selection with ideal detectors,
//! photon-number measurement that does not distinguish `|alpha>` from
//! `|-alpha>`, and the closed-form success probabilities.
//!
//! Post-selection is term filtering, the protocols' operational rule, not a
//! rigorous vacuum projection (which would leak amplitude between
//! non-orthogonal branches). Both the closed-form and the Gram-exact
//! probabilities are reported everywhere, since the closed forms neglect the
//! overlap between the two kept branches.

use crate::error::{Error, Result};
use crate::protocol::{ProtocolConfig, ProtocolKind};
use crate::state::{ModeLabel, StateSuperposition, Term};

/// `|amp|` below this counts as "no photon" at an ideal detector. Protocol
/// amplitudes are either exactly 0 or O(alpha), so anything well above the
/// accumulation noise floor works.
pub const VACUUM_TOL: f64 = 1e-9;

/// Measured-mode amplitudes must share a single magnitude within this.
pub const MAGNITUDE_TOL: f64 = 1e-9;

/// Result of vacuum post-selection.
#[derive(Debug, Clone)]
pub struct PostSelectOutcome {
    /// Surviving terms with the vacuum modes deleted, NOT renormalized.
    pub kept_state: StateSuperposition,
    /// Closed-form probability from the protocol formulas; defaults to the
    /// exact value until a protocol layer fills it in.
    pub paper_probability: f64,
    /// Gram-exact norm^2 of the kept sub-superposition.
    pub exact_probability: f64,
}

/// Keep only the terms whose amplitude on every listed mode is vacuum, then
/// delete those modes from the registry.
///
/// Expects a normalized input; the kept norm^2 is then the success
/// probability of observing no photon at the listed detectors.
pub fn post_select_vacuum(
    s: &StateSuperposition,
    modes: &[ModeLabel],
) -> Result<PostSelectOutcome> {
    let indices: Vec<usize> = modes
        .iter()
        .map(|m| s.mode_index(m))
        .collect::<Result<_>>()?;

    let kept: Vec<Term> = s
        .terms()
        .iter()
        .filter(|t| indices.iter().all(|&i| t.amps[i].is_vacuum(VACUUM_TOL)))
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptySelection { probability: 0.0 });
    }

    // probability from the kept sub-superposition, vacuum modes still present
    let sub = StateSuperposition::new(s.modes().to_vec(), kept.clone())?;
    let exact_probability = sub.norm_squared()?;

    let kept_modes: Vec<ModeLabel> = s
        .modes()
        .iter()
        .enumerate()
        .filter(|(i, _)| !indices.contains(i))
        .map(|(_, m)| m.clone())
        .collect();
    let kept_terms: Vec<Term> = kept
        .into_iter()
        .map(|t| {
            let amps = t
                .amps
                .iter()
                .enumerate()
                .filter(|(i, _)| !indices.contains(i))
                .map(|(_, a)| *a)
                .collect();
            Term::new(t.coeff, amps)
        })
        .collect();

    Ok(PostSelectOutcome {
        kept_state: StateSuperposition::new(kept_modes, kept_terms)?,
        paper_probability: exact_probability,
        exact_probability,
    })
}

/// Photon-number measurement of one mode without distinguishing
/// `|alpha>` from `|-alpha>`: the mode is deleted from every term and the
/// state renormalized. Only defined when the measured mode's amplitudes
/// share a single magnitude across terms.
pub fn measure_remove_mode(
    s: &StateSuperposition,
    mode: &ModeLabel,
) -> Result<StateSuperposition> {
    let idx = s.mode_index(mode)?;
    if s.terms().is_empty() {
        return Err(Error::EmptyState);
    }
    let reference = s.terms()[0].amps[idx].magnitude();
    for t in s.terms() {
        let m = t.amps[idx].magnitude();
        if (m - reference).abs() > MAGNITUDE_TOL {
            return Err(Error::MagnitudeMismatch {
                mode: mode.name().to_owned(),
                expected: reference,
                found: m,
            });
        }
    }

    let modes: Vec<ModeLabel> = s
        .modes()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, m)| m.clone())
        .collect();
    let terms: Vec<Term> = s
        .terms()
        .iter()
        .map(|t| {
            let amps = t
                .amps
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, a)| *a)
                .collect();
            Term::new(t.coeff, amps)
        })
        .collect();
    StateSuperposition::new(modes, terms)?.normalize()
}

/// The closed-form success probabilities,
/// `P = 2 (N1 N2 beta gamma)^2` for protocol 1 and
/// `P = 2 (N^2 delta eta)^2` for protocol 2, with
/// `N1 = [b^2 + g^2 + 2 b g e^{-6 a^2}]^{-1/2}`,
/// `N2 = [b^2 + g^2 + 2 b g e^{-2 a^2}]^{-1/2}`, and
/// `N = [d^2 + e^2 + 2 d e e^{-6 a^2}]^{-1/2}`.
pub fn success_probability_paper(kind: ProtocolKind, cfg: &ProtocolConfig) -> Result<f64> {
    let (a, c1, c2) = (cfg.alpha, cfg.c1, cfg.c2);
    if c1 <= 0.0 {
        return Err(Error::NonPositiveCoefficient(c1));
    }
    if c2 <= 0.0 {
        return Err(Error::NonPositiveCoefficient(c2));
    }
    let a2 = a * a;
    let sum = c1 * c1 + c2 * c2;
    let cross = 2.0 * c1 * c2;
    match kind {
        ProtocolKind::One => {
            let n1_sq = 1.0 / (sum + cross * (-6.0 * a2).exp());
            let n2_sq = 1.0 / (sum + cross * (-2.0 * a2).exp());
            Ok(2.0 * n1_sq * n2_sq * (c1 * c2).powi(2))
        }
        ProtocolKind::Two => {
            let n_sq = 1.0 / (sum + cross * (-6.0 * a2).exp());
            Ok(2.0 * (n_sq * c1 * c2).powi(2))
        }
    }
}
