//! Simulator for linear-optics entanglement concentration of 3-mode
//! GHZ-type entangled coherent states.
//!
//! States are finite superpositions of multimode coherent product terms,
//! handled exactly through Gram matrices of pairwise overlaps. On top of the
//! state algebra sit the linear-optical elements (50:50 beam splitter, phase
//! shifter, vacuum injection), the measurement primitives (vacuum
//! post-selection, photon-number measurement), the two concentration
//! pipelines, and a truncated-Fock-basis oracle for independent
//! verification.

pub mod elements;
pub mod error;
pub mod fock;
pub mod measure;
pub mod protocol;
pub mod state;

pub use error::{Error, Result};
pub use protocol::{ProtocolConfig, ProtocolKind, ProtocolReport, SweepRow};
pub use state::{GramMatrix, ModeAmplitude, ModeLabel, StateSuperposition, Term};
