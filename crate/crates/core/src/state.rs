//! Exact algebra of finite superpositions of multimode coherent-state
//! product terms.
//!
//! Coherent states are never orthogonal, so every norm, probability, and
//! fidelity in this crate goes through the Gram matrix of pairwise term
//! overlaps rather than assuming an orthonormal basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Componentwise tolerance for merging equal amplitude tuples.
pub const MERGE_TOL: f64 = 1e-12;
/// Terms with |coeff| below this are dropped by [`StateSuperposition::simplify`].
pub const DROP_TOL: f64 = 1e-12;
/// States with norm^2 below this cannot be normalized.
pub const NORM_FLOOR: f64 = 1e-24;

/// Complex coherent-state amplitude for one optical mode.
///
/// Construction rejects non-finite values, so downstream overlap code can
/// treat amplitudes as always finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitude {
    value: Complex64,
}

impl ModeAmplitude {
    pub fn new(value: Complex64) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() {
            Ok(Self { value })
        } else {
            Err(Error::InvalidAmplitude(value))
        }
    }

    /// Amplitude on the real axis, the common protocol case.
    pub fn real(value: f64) -> Result<Self> {
        Self::new(Complex64::new(value, 0.0))
    }

    pub fn vacuum() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }

    pub fn is_vacuum(&self, tol: f64) -> bool {
        self.value.norm() < tol
    }

    /// Componentwise closeness, the merge criterion for [`StateSuperposition::simplify`].
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.value.re - other.value.re).abs() <= tol
            && (self.value.im - other.value.im).abs() <= tol
    }

    pub(crate) fn scaled(&self, factor: Complex64) -> Self {
        Self {
            value: self.value * factor,
        }
    }

    pub(crate) fn combined(a: &Self, b: &Self, sa: f64, sb: f64) -> Self {
        Self {
            value: a.value * sa + b.value * sb,
        }
    }
}

/// Name of one optical mode within a state's registry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeLabel(String);

impl ModeLabel {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ModeLabel {
    fn from(name: &str) -> Self {
        Self(name.to_owned())
    }
}

/// One coherent product term: a complex coefficient times an ordered tuple
/// of mode amplitudes, one per registered mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub amps: Vec<ModeAmplitude>,
}

impl Term {
    pub fn new(coeff: Complex64, amps: Vec<ModeAmplitude>) -> Self {
        Self { coeff, amps }
    }

    pub fn real(coeff: f64, amps: Vec<ModeAmplitude>) -> Self {
        Self::new(Complex64::new(coeff, 0.0), amps)
    }
}

/// Overlap of two single-mode coherent states,
/// `<a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)`.
pub fn coherent_overlap(a: ModeAmplitude, b: ModeAmplitude) -> Complex64 {
    let av = a.value();
    let bv = b.value();
    let exponent = -0.5 * av.norm_sqr() - 0.5 * bv.norm_sqr() + av.conj() * bv;
    exponent.exp()
}

/// Gram matrix of pairwise term overlaps (coefficients excluded).
///
/// Hermitian with unit diagonal by construction; positive semidefinite up
/// to eigenvalue rounding.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Largest componentwise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = (self.entries[(i, j)] - self.entries[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let eig = self.entries.clone().symmetric_eigen();
        eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Largest deviation of a diagonal entry from 1.
    pub fn unit_diagonal_defect(&self) -> f64 {
        (0..self.dim())
            .map(|i| (self.entries[(i, i)] - Complex64::new(1.0, 0.0)).norm())
            .fold(0.0, f64::max)
    }
}

/// Finite superposition of multimode coherent product terms over a registry
/// of named modes. The universal state representation of this crate.
#[derive(Debug, Clone)]
pub struct StateSuperposition {
    modes: Vec<ModeLabel>,
    terms: Vec<Term>,
}

impl StateSuperposition {
    pub fn new(modes: Vec<ModeLabel>, terms: Vec<Term>) -> Result<Self> {
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::LabelCollision(m.name().to_owned()));
            }
        }
        for t in &terms {
            if t.amps.len() != modes.len() {
                return Err(Error::ModeCountMismatch(t.amps.len(), modes.len()));
            }
        }
        Ok(Self { modes, terms })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn mode_index(&self, label: &ModeLabel) -> Result<usize> {
        self.modes
            .iter()
            .position(|m| m == label)
            .ok_or_else(|| Error::UnknownMode(label.name().to_owned()))
    }

    /// Overlap `<term_i|term_j>` excluding coefficients: the product of the
    /// per-mode coherent overlaps.
    pub fn term_overlap(&self, i: usize, j: usize) -> Result<Complex64> {
        let len = self.terms.len();
        let ti = self.terms.get(i).ok_or(Error::IndexOutOfRange { index: i, len })?;
        let tj = self.terms.get(j).ok_or(Error::IndexOutOfRange { index: j, len })?;
        let mut acc = Complex64::new(1.0, 0.0);
        for (a, b) in ti.amps.iter().zip(tj.amps.iter()) {
            acc *= coherent_overlap(*a, *b);
        }
        Ok(acc)
    }

    pub fn gram(&self) -> Result<GramMatrix> {
        if self.terms.is_empty() {
            return Err(Error::EmptyState);
        }
        let n = self.terms.len();
        let mut entries = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                entries[(i, j)] = self.term_overlap(i, j)?;
            }
        }
        Ok(GramMatrix { entries })
    }

    /// `c^H G c` with `c` the coefficient vector; clamped to be nonnegative.
    pub fn norm_squared(&self) -> Result<f64> {
        let gram = self.gram()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, ti) in self.terms.iter().enumerate() {
            for (j, tj) in self.terms.iter().enumerate() {
                acc += ti.coeff.conj() * gram.entry(i, j) * tj.coeff;
            }
        }
        Ok(acc.re.max(0.0))
    }

    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm_squared()?;
        if n2 <= NORM_FLOOR {
            return Err(Error::DegenerateState(n2));
        }
        let scale = 1.0 / n2.sqrt();
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.coeff * scale, t.amps.clone()))
            .collect();
        Ok(Self {
            modes: self.modes.clone(),
            terms,
        })
    }

    /// Tensor product; mode registries concatenate, coefficients multiply.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        for m in other.modes() {
            if self.modes.contains(m) {
                return Err(Error::LabelCollision(m.name().to_owned()));
            }
        }
        let mut modes = self.modes.clone();
        modes.extend(other.modes.iter().cloned());
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for t1 in &self.terms {
            for t2 in &other.terms {
                let mut amps = t1.amps.clone();
                amps.extend(t2.amps.iter().cloned());
                terms.push(Term::new(t1.coeff * t2.coeff, amps));
            }
        }
        Self::new(modes, terms)
    }

    /// Merge terms with componentwise-equal amplitude tuples and drop terms
    /// with negligible coefficients.
    pub fn simplify(&self) -> Self {
        let mut merged: Vec<Term> = Vec::new();
        for t in &self.terms {
            match merged.iter_mut().find(|m| {
                m.amps
                    .iter()
                    .zip(t.amps.iter())
                    .all(|(a, b)| a.approx_eq(b, MERGE_TOL))
            }) {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t.clone()),
            }
        }
        merged.retain(|t| t.coeff.norm() >= DROP_TOL);
        Self {
            modes: self.modes.clone(),
            terms: merged,
        }
    }

    /// Full inner product `<self|other>` with positional mode identification.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.modes.len() != other.modes.len() {
            return Err(Error::ModeCountMismatch(self.modes.len(), other.modes.len()));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ti in &self.terms {
            for tj in &other.terms {
                let mut ov = Complex64::new(1.0, 0.0);
                for (a, b) in ti.amps.iter().zip(tj.amps.iter()) {
                    ov *= coherent_overlap(*a, *b);
                }
                acc += ti.coeff.conj() * tj.coeff * ov;
            }
        }
        Ok(acc)
    }

    /// `|<s1|s2>|^2 / (norm^2(s1) norm^2(s2))`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        let n1 = self.norm_squared()?;
        let n2 = other.norm_squared()?;
        if n1 <= NORM_FLOOR {
            return Err(Error::DegenerateState(n1));
        }
        if n2 <= NORM_FLOOR {
            return Err(Error::DegenerateState(n2));
        }
        let ip = self.inner_product(other)?;
        Ok(ip.norm_sqr() / (n1 * n2))
    }
}
