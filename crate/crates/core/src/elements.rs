//! Linear-optical elements acting on [`StateSuperposition`]: 50:50 beam
//! splitter, phase shifter, and vacuum-mode injection.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{ModeAmplitude, ModeLabel, StateSuperposition, Term};

/// A 50:50 beam splitter mapping per-term amplitudes `(a, b)` on the two
/// input modes to `((a+b)/sqrt(2), (a-b)/sqrt(2))` on the output modes.
/// Output relabeling is part of the element since the relabeled ports are
/// how the protocols track modes.
#[derive(Debug, Clone)]
pub struct BeamSplitterSpec {
    pub mode_in_1: ModeLabel,
    pub mode_in_2: ModeLabel,
    pub mode_out_1: ModeLabel,
    pub mode_out_2: ModeLabel,
}

impl BeamSplitterSpec {
    pub fn new(
        mode_in_1: impl Into<ModeLabel>,
        mode_in_2: impl Into<ModeLabel>,
        mode_out_1: impl Into<ModeLabel>,
        mode_out_2: impl Into<ModeLabel>,
    ) -> Self {
        Self {
            mode_in_1: mode_in_1.into(),
            mode_in_2: mode_in_2.into(),
            mode_out_1: mode_out_1.into(),
            mode_out_2: mode_out_2.into(),
        }
    }
}

/// Phase shifter multiplying one mode's amplitude by `e^{i phase}`.
/// The protocols use `phase = pi`, which maps `|alpha>` to `|-alpha>`.
#[derive(Debug, Clone)]
pub struct PhaseShiftSpec {
    pub mode: ModeLabel,
    pub phase: f64,
}

impl PhaseShiftSpec {
    pub fn new(mode: impl Into<ModeLabel>, phase: f64) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::InvalidConfig(format!("non-finite phase {phase}")));
        }
        Ok(Self {
            mode: mode.into(),
            phase,
        })
    }
}

pub fn apply_beam_splitter(
    s: &StateSuperposition,
    spec: &BeamSplitterSpec,
) -> Result<StateSuperposition> {
    if spec.mode_in_1 == spec.mode_in_2 {
        return Err(Error::LabelCollision(spec.mode_in_2.name().to_owned()));
    }
    let i1 = s.mode_index(&spec.mode_in_1)?;
    let i2 = s.mode_index(&spec.mode_in_2)?;

    let mut modes: Vec<ModeLabel> = s.modes().to_vec();
    modes[i1] = spec.mode_out_1.clone();
    modes[i2] = spec.mode_out_2.clone();

    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let terms = s
        .terms()
        .iter()
        .map(|t| {
            let a = t.amps[i1];
            let b = t.amps[i2];
            let mut amps = t.amps.clone();
            amps[i1] = ModeAmplitude::combined(&a, &b, inv_sqrt2, inv_sqrt2);
            amps[i2] = ModeAmplitude::combined(&a, &b, inv_sqrt2, -inv_sqrt2);
            Term::new(t.coeff, amps)
        })
        .collect();

    StateSuperposition::new(modes, terms)
}

pub fn apply_phase_shift(
    s: &StateSuperposition,
    spec: &PhaseShiftSpec,
) -> Result<StateSuperposition> {
    let idx = s.mode_index(&spec.mode)?;
    let rot = Complex64::new(0.0, spec.phase).exp();
    let terms = s
        .terms()
        .iter()
        .map(|t| {
            let mut amps = t.amps.clone();
            amps[idx] = amps[idx].scaled(rot);
            Term::new(t.coeff, amps)
        })
        .collect();
    StateSuperposition::new(s.modes().to_vec(), terms)
}

/// Register a new mode in the vacuum state on every term. This is the tacit
/// second input port of the splitting beam splitters.
pub fn inject_vacuum(s: &StateSuperposition, label: ModeLabel) -> Result<StateSuperposition> {
    if s.modes().contains(&label) {
        return Err(Error::LabelCollision(label.name().to_owned()));
    }
    let mut modes = s.modes().to_vec();
    modes.push(label);
    let terms = s
        .terms()
        .iter()
        .map(|t| {
            let mut amps = t.amps.clone();
            amps.push(ModeAmplitude::vacuum());
            Term::new(t.coeff, amps)
        })
        .collect();
    StateSuperposition::new(modes, terms)
}
