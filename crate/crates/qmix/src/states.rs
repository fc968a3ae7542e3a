//! State representations: pure states, density matrices, weighted
//! ensembles, and labeled subsystem registers.
//!
//! Every state validates its defining invariants at construction, so a
//! value of one of these types can be assumed well-formed downstream.

use num_complex::Complex64;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

/// Absolute tolerance for state invariants: normalization, unit trace,
/// positivity, orthonormality.
pub const STATE_TOL: f64 = 1e-10;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Normalized pure state of a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    qubits: usize,
    amplitudes: ComplexVector,
}

impl PureState {
    pub fn new(qubits: usize, amplitudes: ComplexVector) -> Result<Self> {
        if qubits == 0 || amplitudes.dim() != 1 << qubits {
            return Err(Error::DimensionMismatch {
                left: 1 << qubits,
                right: amplitudes.dim(),
            });
        }
        let norm_sqr = amplitudes.norm_sqr();
        if (norm_sqr - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { qubits, amplitudes })
    }

    pub fn from_amplitudes(qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::new(qubits, ComplexVector::new(amplitudes)?)
    }

    /// Computational basis state `|index⟩` on a register of `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Self {
        assert!(qubits >= 1);
        Self {
            qubits,
            amplitudes: ComplexVector::basis(1 << qubits, index),
        }
    }

    pub fn ket0() -> Self {
        Self::basis(1, 0)
    }

    pub fn ket1() -> Self {
        Self::basis(1, 1)
    }

    /// (|0⟩ + |1⟩)/√2.
    pub fn plus() -> Self {
        Self::from_amplitudes(1, vec![FRAC_1_SQRT_2.into(), FRAC_1_SQRT_2.into()])
            .expect("|+⟩ is normalized")
    }

    /// (|0⟩ − |1⟩)/√2.
    pub fn minus() -> Self {
        Self::from_amplitudes(
            1,
            vec![FRAC_1_SQRT_2.into(), Complex64::new(-FRAC_1_SQRT_2, 0.0)],
        )
        .expect("|−⟩ is normalized")
    }

    /// The maximally entangled pair (|00⟩ + |11⟩)/√2.
    pub fn bell() -> Self {
        Self::from_amplitudes(
            2,
            vec![
                FRAC_1_SQRT_2.into(),
                Complex64::ZERO,
                Complex64::ZERO,
                FRAC_1_SQRT_2.into(),
            ],
        )
        .expect("the Bell pair is normalized")
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// Tensor product; `self` becomes the most significant factor.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            qubits: self.qubits + other.qubits,
            amplitudes: self.amplitudes.kron(&other.amplitudes),
        }
    }

    /// Overlap `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amplitudes.inner(&other.amplitudes)
    }

    /// The rank-1 projector |ψ⟩⟨ψ| as a density matrix.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.qubits, self.amplitudes.outer(&self.amplitudes))
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on a qubit
/// register: the most general description of the register's statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        if qubits == 0 || matrix.dim() != 1 << qubits {
            return Err(Error::DimensionMismatch {
                left: 1 << qubits,
                right: matrix.dim(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eigenvalues = matrix.hermitian_eigenvalues()?;
        if let Some(&smallest) = eigenvalues.last() {
            if smallest < -STATE_TOL {
                return Err(Error::NotPositiveSemidefinite {
                    eigenvalue: smallest,
                });
            }
        }
        Ok(Self { qubits, matrix })
    }

    /// The state I/2ⁿ of complete ignorance.
    pub fn maximally_mixed(qubits: usize) -> Self {
        assert!(qubits >= 1);
        let dim = 1usize << qubits;
        Self {
            qubits,
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// tr(ρ²); 1 exactly for pure states, 1/2ⁿ for the maximally mixed one.
    pub fn purity(&self) -> f64 {
        self.matrix
            .matmul(&self.matrix)
            .expect("same dimension")
            .trace()
            .re
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// Partial trace keeping only the subsystems named in `keep`.
    ///
    /// The register must cover the state exactly; the kept subsystems retain
    /// their relative order.
    pub fn reduce(&self, register: &Register, keep: &[&str]) -> Result<DensityMatrix> {
        if register.total_qubits() != self.qubits {
            return Err(Error::RegisterCoverage {
                register_qubits: register.total_qubits(),
                state_qubits: self.qubits,
            });
        }
        if keep.is_empty() {
            return Err(Error::BadKeepSet);
        }
        let mut keep_positions = Vec::with_capacity(keep.len());
        for name in keep {
            let label = register.label(name).ok_or_else(|| Error::UnknownLabel {
                name: (*name).to_string(),
            })?;
            keep_positions.push(label.position);
        }
        keep_positions.sort_unstable();
        keep_positions.dedup();
        let traced: Vec<usize> = (0..register.labels().len())
            .filter(|position| !keep_positions.contains(position))
            .collect();
        if traced.is_empty() {
            return Err(Error::BadKeepSet);
        }
        let dims: Vec<usize> = register
            .labels()
            .iter()
            .map(|label| 1usize << label.qubits)
            .collect();
        let reduced = self.matrix.partial_trace(&dims, &traced)?;
        let kept_qubits: usize = keep_positions
            .iter()
            .map(|&position| register.labels()[position].qubits)
            .sum();
        DensityMatrix::new(kept_qubits, reduced)
    }

    /// Traces out the listed qubit positions (0 = most significant).
    pub fn trace_out_qubits(&self, traced: &[usize]) -> Result<DensityMatrix> {
        let dims = vec![2usize; self.qubits];
        let reduced = self.matrix.partial_trace(&dims, traced)?;
        let mut unique = traced.to_vec();
        unique.sort_unstable();
        unique.dedup();
        DensityMatrix::new(self.qubits - unique.len(), reduced)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DensityMatrix", 2)?;
        s.serialize_field("qubits", &self.qubits)?;
        s.serialize_field("matrix", &MatrixEntries(&self.matrix))?;
        s.end()
    }
}

/// Serializes a matrix as nested rows of `[re, im]` pairs.
pub(crate) struct MatrixEntries<'a>(pub &'a ComplexMatrix);

impl Serialize for MatrixEntries<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dim = self.0.dim();
        let mut rows = serializer.serialize_seq(Some(dim))?;
        for r in 0..dim {
            let row: Vec<[f64; 2]> = (0..dim)
                .map(|c| {
                    let z = self.0.get(r, c);
                    [z.re, z.im]
                })
                .collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}

/// Statistical mixture presented by its preparation recipe: a weighted list
/// of pure states over the same register.
///
/// Distinct ensembles can share one density matrix; keeping the recipe
/// around is what lets the rest of the crate ask whether that difference is
/// ever observable.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::EmptyEnsemble);
        };
        let qubits = first.1.qubits();
        for (weight, state) in &members {
            if !weight.is_finite() || *weight < -STATE_TOL || *weight > 1.0 + STATE_TOL {
                return Err(Error::WeightOutOfRange { weight: *weight });
            }
            if state.qubits() != qubits {
                return Err(Error::MixedQubitCounts);
            }
        }
        let sum: f64 = members.iter().map(|(weight, _)| weight).sum();
        if (sum - 1.0).abs() > STATE_TOL {
            return Err(Error::WeightSum { sum });
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn qubits(&self) -> usize {
        self.members[0].1.qubits()
    }

    /// Zero-weight members are legal (they arise from degenerate parameter
    /// choices) but worth surfacing; one warning line per such member.
    pub fn warnings(&self) -> Vec<String> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, (weight, _))| *weight <= 0.0)
            .map(|(index, _)| format!("ensemble member {index} has zero weight"))
            .collect()
    }

    /// The mixture Σᵢ wᵢ |ψᵢ⟩⟨ψᵢ|.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dim = 1usize << self.qubits();
        let mut accumulated = ComplexMatrix::zeros(dim);
        for (weight, state) in &self.members {
            let projector = state.amplitudes().outer(state.amplitudes());
            accumulated = accumulated.add(&projector.scale(Complex64::new(*weight, 0.0)));
        }
        DensityMatrix::new(self.qubits(), accumulated)
    }
}

/// Named subsystem inside a composite register.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsystemLabel {
    pub name: String,
    /// Index of the subsystem in tensor order (0 = most significant).
    pub position: usize,
    pub qubits: usize,
}

impl SubsystemLabel {
    pub fn new(name: &str, position: usize, qubits: usize) -> Self {
        Self {
            name: name.to_string(),
            position,
            qubits,
        }
    }
}

/// Ordered partition of a register into uniquely named subsystems occupying
/// contiguous positions 0, 1, 2, …
#[derive(Debug, Clone)]
pub struct Register {
    labels: Vec<SubsystemLabel>,
}

impl Register {
    pub fn new(mut labels: Vec<SubsystemLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::BadRegister);
        }
        labels.sort_by_key(|label| label.position);
        for (expected, label) in labels.iter().enumerate() {
            if label.position != expected || label.qubits == 0 {
                return Err(Error::BadRegister);
            }
        }
        for i in 1..labels.len() {
            if labels[..i].iter().any(|label| label.name == labels[i].name) {
                return Err(Error::BadRegister);
            }
        }
        Ok(Self { labels })
    }

    /// Builds a register from `(name, qubits)` pairs given in tensor order.
    pub fn of(parts: &[(&str, usize)]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .enumerate()
                .map(|(position, (name, qubits))| SubsystemLabel::new(name, position, *qubits))
                .collect(),
        )
    }

    pub fn labels(&self) -> &[SubsystemLabel] {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<&SubsystemLabel> {
        self.labels.iter().find(|label| label.name == name)
    }

    pub fn total_qubits(&self) -> usize {
        self.labels.iter().map(|label| label.qubits).sum()
    }
}
