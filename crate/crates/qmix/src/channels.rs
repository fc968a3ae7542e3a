//! State transformations: unitary gates, embedding of gates into larger
//! registers, projective collapse in both its nonselective and selective
//! forms, and the construction of basis-targeted measurement circuits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, PureState, STATE_TOL};

/// Absolute tolerance for the unitarity check `U†U = I`.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Outcomes with Born probability below this threshold are treated as
/// impossible: conditioning on them is refused rather than amplified into
/// numerical noise.
pub const ZERO_PROBABILITY_TOL: f64 = 1e-12;

/// Unitary gate on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    arity: usize,
    matrix: ComplexMatrix,
}

impl Gate {
    pub fn new(arity: usize, matrix: ComplexMatrix) -> Result<Self> {
        if arity == 0 || matrix.dim() != 1 << arity {
            return Err(Error::DimensionMismatch {
                left: 1 << arity,
                right: matrix.dim(),
            });
        }
        let deviation = matrix.unitarity_deviation();
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { arity, matrix })
    }

    /// NOT gate: X|0⟩ = |1⟩, X|1⟩ = |0⟩.
    pub fn x() -> Self {
        Self {
            arity: 1,
            matrix: ComplexMatrix::from_fn(2, |r, c| {
                if r != c {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                }
            }),
        }
    }

    /// Hadamard gate: H|0⟩ = |+⟩, H|1⟩ = |−⟩.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            arity: 1,
            matrix: ComplexMatrix::from_fn(2, |r, c| {
                if r == 1 && c == 1 {
                    Complex64::new(-h, 0.0)
                } else {
                    Complex64::new(h, 0.0)
                }
            }),
        }
    }

    /// Controlled-NOT: the first (most significant) qubit controls, the
    /// second flips. |00⟩↦|00⟩, |01⟩↦|01⟩, |10⟩↦|11⟩, |11⟩↦|10⟩.
    pub fn cnot() -> Self {
        Self {
            arity: 2,
            matrix: ComplexMatrix::from_fn(4, |r, c| {
                let flipped = if c >= 2 { c ^ 1 } else { c };
                if r == flipped {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                }
            }),
        }
    }

    pub fn identity(arity: usize) -> Self {
        assert!(arity >= 1);
        Self {
            arity,
            matrix: ComplexMatrix::identity(1 << arity),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Embeds the gate into a register of `register_qubits` qubits, acting
    /// on `targets` and as the identity elsewhere.
    ///
    /// `targets[0]` receives the gate's most significant qubit; targets need
    /// not be adjacent or ordered.
    pub fn lift(&self, register_qubits: usize, targets: &[usize]) -> Result<Gate> {
        validate_targets(self.arity, register_qubits, targets)?;
        Ok(Gate {
            arity: register_qubits,
            matrix: lift_matrix(&self.matrix, register_qubits, targets),
        })
    }
}

fn validate_targets(arity: usize, register_qubits: usize, targets: &[usize]) -> Result<()> {
    if targets.len() != arity {
        return Err(Error::BadTargets {
            reason: format!("expected {arity} targets, got {}", targets.len()),
        });
    }
    for (i, &target) in targets.iter().enumerate() {
        if target >= register_qubits {
            return Err(Error::BadTargets {
                reason: format!("target {target} outside a register of {register_qubits} qubits"),
            });
        }
        if targets[..i].contains(&target) {
            return Err(Error::BadTargets {
                reason: format!("duplicate target {target}"),
            });
        }
    }
    Ok(())
}

/// Embeds `m`, defined on `targets.len()` qubits, into a register of
/// `register_qubits` qubits. Entry (i, j) of the result is m(a, b) when the
/// non-target bits of i and j agree — where a and b are the target bits of
/// i and j read in target order — and 0 otherwise.
fn lift_matrix(m: &ComplexMatrix, register_qubits: usize, targets: &[usize]) -> ComplexMatrix {
    let dim = 1usize << register_qubits;
    let k = targets.len();
    // qubit 0 is the most significant bit of a basis index
    let weight = |qubit: usize| 1usize << (register_qubits - 1 - qubit);
    let target_mask: usize = targets.iter().map(|&qubit| weight(qubit)).sum();
    ComplexMatrix::from_fn(dim, |row, col| {
        if row & !target_mask != col & !target_mask {
            return Complex64::ZERO;
        }
        let mut a = 0usize;
        let mut b = 0usize;
        for (slot, &qubit) in targets.iter().enumerate() {
            let bit = 1usize << (k - 1 - slot);
            if row & weight(qubit) != 0 {
                a |= bit;
            }
            if col & weight(qubit) != 0 {
                b |= bit;
            }
        }
        m.get(a, b)
    })
}

/// Conjugation ρ ↦ UρU†.
pub fn apply_unitary(rho: &DensityMatrix, gate: &Gate) -> Result<DensityMatrix> {
    if rho.dim() != gate.matrix().dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: gate.matrix().dim(),
        });
    }
    let conjugated = gate
        .matrix()
        .matmul(rho.matrix())?
        .matmul(&gate.matrix().dagger())?;
    DensityMatrix::new(rho.qubits(), conjugated)
}

/// Orthonormal measurement basis with named outcomes.
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    qubits: usize,
    vectors: Vec<PureState>,
    outcome_labels: Vec<String>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<PureState>, outcome_labels: Vec<String>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::EmptyDimension);
        };
        let qubits = first.qubits();
        let dim = 1usize << qubits;
        if vectors.len() != dim || vectors.iter().any(|v| v.qubits() != qubits) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: vectors.len(),
            });
        }
        if outcome_labels.len() != vectors.len() {
            return Err(Error::LabelCount {
                labels: outcome_labels.len(),
                vectors: vectors.len(),
            });
        }
        let mut deviation = 0.0f64;
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((a.overlap(b) - expected).norm());
            }
        }
        if deviation > STATE_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self {
            qubits,
            vectors,
            outcome_labels,
        })
    }

    /// Computational basis; outcomes are labeled by their bit strings.
    pub fn computational(qubits: usize) -> Self {
        assert!(qubits >= 1);
        let dim = 1usize << qubits;
        let vectors = (0..dim).map(|i| PureState::basis(qubits, i)).collect();
        let labels = (0..dim).map(|i| format!("{i:0qubits$b}")).collect();
        Self::new(vectors, labels).expect("the computational basis is orthonormal")
    }

    /// The single-qubit {|+⟩, |−⟩} basis with outcomes "+" and "-".
    pub fn plus_minus() -> Self {
        Self::new(
            vec![PureState::plus(), PureState::minus()],
            vec!["+".to_string(), "-".to_string()],
        )
        .expect("the ± basis is orthonormal")
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcome_labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.outcome_labels.iter().position(|l| l == label)
    }

    /// Projector onto the `index`-th basis vector.
    pub fn projector(&self, index: usize) -> Projector {
        let v = self.vectors[index].amplitudes();
        Projector { matrix: v.outer(v) }
    }

    /// Basis-change unitary B with B|i⟩ = |bᵢ⟩ (basis vectors as columns).
    pub fn change_of_basis(&self) -> Gate {
        let dim = 1usize << self.qubits;
        let matrix = ComplexMatrix::from_fn(dim, |r, c| self.vectors[c].amplitudes().get(r));
        Gate::new(self.qubits, matrix).expect("orthonormal columns form a unitary")
    }
}

/// Hermitian idempotent operator.
#[derive(Debug, Clone)]
pub struct Projector {
    matrix: ComplexMatrix,
}

impl Projector {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let idempotency = matrix.matmul(&matrix)?.max_abs_diff(&matrix);
        if idempotency > STATE_TOL {
            return Err(Error::NotIdempotent {
                deviation: idempotency,
            });
        }
        Ok(Self { matrix })
    }

    /// The rank-1 projector |ψ⟩⟨ψ|.
    pub fn onto(state: &PureState) -> Self {
        Self {
            matrix: state.amplitudes().outer(state.amplitudes()),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Nonselective projective measurement: ρ ↦ Σₘ Pₘ ρ Pₘ with the basis
/// projectors embedded on `targets`.
///
/// This is the collapse rule applied without learning the outcome. It is
/// trace preserving, kills the coherences between the basis subspaces, and
/// never increases purity.
pub fn ontic_collapse(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    targets: &[usize],
) -> Result<DensityMatrix> {
    validate_targets(basis.qubits(), rho.qubits(), targets)?;
    let mut accumulated = ComplexMatrix::zeros(rho.dim());
    for index in 0..basis.vectors().len() {
        let projector = lift_matrix(basis.projector(index).matrix(), rho.qubits(), targets);
        let term = projector.matmul(rho.matrix())?.matmul(&projector)?;
        accumulated = accumulated.add(&term);
    }
    DensityMatrix::new(rho.qubits(), accumulated)
}

/// Selective measurement update: returns (Pₘ ρ Pₘ / p, p) for the outcome
/// named by `outcome`, where p = tr(Pₘ ρ Pₘ) is its Born probability.
///
/// Conditioning on an outcome with probability below
/// [`ZERO_PROBABILITY_TOL`] is an error.
pub fn epistemic_collapse(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    targets: &[usize],
    outcome: &str,
) -> Result<(DensityMatrix, f64)> {
    validate_targets(basis.qubits(), rho.qubits(), targets)?;
    let index = basis
        .index_of(outcome)
        .ok_or_else(|| Error::UnknownOutcome {
            label: outcome.to_string(),
        })?;
    let projector = lift_matrix(basis.projector(index).matrix(), rho.qubits(), targets);
    let projected = projector.matmul(rho.matrix())?.matmul(&projector)?;
    let probability = projected.trace().re;
    if probability < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbability {
            label: outcome.to_string(),
            threshold: ZERO_PROBABILITY_TOL,
        });
    }
    let state = DensityMatrix::new(
        rho.qubits(),
        projected.scale(Complex64::new(1.0 / probability, 0.0)),
    )?;
    Ok((state, probability))
}

/// Born probabilities of every outcome of a projective measurement on
/// `targets`, in the basis's outcome order.
pub fn outcome_probabilities(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    targets: &[usize],
) -> Result<Vec<f64>> {
    validate_targets(basis.qubits(), rho.qubits(), targets)?;
    let mut probabilities = Vec::with_capacity(basis.vectors().len());
    for index in 0..basis.vectors().len() {
        let projector = lift_matrix(basis.projector(index).matrix(), rho.qubits(), targets);
        probabilities.push(projector.matmul(rho.matrix())?.trace().re);
    }
    Ok(probabilities)
}

/// Two-qubit system-apparatus interaction that measures a single-qubit
/// basis {|b₀⟩, |b₁⟩}: the unitary (B ⊗ B) · CNOT · (B† ⊗ I) with
/// B|i⟩ = |bᵢ⟩.
///
/// With the apparatus prepared in |0⟩ it copies the measured basis into the
/// apparatus: (α|b₀⟩ + β|b₁⟩) ⊗ |0⟩ ↦ α|b₀⟩|b₀⟩ + β|b₁⟩|b₁⟩. For the
/// computational basis it reduces to a plain CNOT.
pub fn measurement_circuit(basis: &MeasurementBasis) -> Result<Gate> {
    if basis.qubits() != 1 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: 1 << basis.qubits(),
        });
    }
    let b = basis.change_of_basis();
    let identity = ComplexMatrix::identity(2);
    let prepare = b.matrix().dagger().kron(&identity);
    let correlate = b.matrix().kron(b.matrix());
    let matrix = correlate.matmul(Gate::cnot().matrix())?.matmul(&prepare)?;
    Gate::new(2, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::Register;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn apply_to_state(gate: &Gate, state: &PureState) -> PureState {
        let amplitudes = gate.matrix().mul_vec(state.amplitudes());
        PureState::new(state.qubits(), amplitudes).expect("unitaries preserve norm")
    }

    #[test]
    fn cnot_truth_table() {
        let cnot = Gate::cnot();
        let expected = [(0usize, 0usize), (1, 1), (2, 3), (3, 2)];
        for (input, output) in expected {
            let result = apply_to_state(&cnot, &PureState::basis(2, input));
            assert_eq!(result, PureState::basis(2, output), "CNOT on |{input:02b}⟩");
        }
    }

    #[test]
    fn cnot_matches_projector_decomposition() {
        // |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ X
        let p0 = Projector::onto(&PureState::ket0());
        let p1 = Projector::onto(&PureState::ket1());
        let decomposition = p0
            .matrix()
            .kron(&ComplexMatrix::identity(2))
            .add(&p1.matrix().kron(Gate::x().matrix()));
        assert!(Gate::cnot().matrix().max_abs_diff(&decomposition) == 0.0);
    }

    #[test]
    fn hadamard_maps_computational_to_plus_minus() {
        let h = Gate::hadamard();
        assert!(
            apply_to_state(&h, &PureState::ket0())
                .overlap(&PureState::plus())
                .re
                > 1.0 - 1e-12
        );
        assert!(
            apply_to_state(&h, &PureState::ket1())
                .overlap(&PureState::minus())
                .re
                > 1.0 - 1e-12
        );
    }

    #[test]
    fn gate_rejects_non_unitary_matrices() {
        let shrink = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(
            Gate::new(1, shrink),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn lift_places_x_on_each_qubit() {
        for target in 0..3usize {
            let lifted = Gate::x().lift(3, &[target]).unwrap();
            // |000⟩ must map to the basis state with exactly that bit set
            let result = apply_to_state(&lifted, &PureState::basis(3, 0));
            let expected_index = 1usize << (2 - target);
            assert_eq!(result, PureState::basis(3, expected_index));
        }
    }

    #[test]
    fn lift_on_adjacent_targets_matches_kron() {
        let cnot = Gate::cnot();
        let expected = cnot.matrix().kron(&ComplexMatrix::identity(2));
        let lifted = cnot.lift(3, &[0, 1]).unwrap();
        assert!(lifted.matrix().max_abs_diff(&expected) == 0.0);

        let expected_tail = ComplexMatrix::identity(2).kron(cnot.matrix());
        let lifted_tail = cnot.lift(3, &[1, 2]).unwrap();
        assert!(lifted_tail.matrix().max_abs_diff(&expected_tail) == 0.0);
    }

    #[test]
    fn lift_entangles_distant_qubits() {
        // CNOT on qubits (0, 2) of (|00⟩+|11⟩)/√2 ⊗ |0⟩ gives the 3-qubit
        // maximally entangled state (|000⟩ + |111⟩)/√2
        let initial = PureState::bell().tensor(&PureState::ket0());
        let lifted = Gate::cnot().lift(3, &[0, 2]).unwrap();
        let result = apply_to_state(&lifted, &initial);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut expected = vec![Complex64::ZERO; 8];
        expected[0] = c(h, 0.0);
        expected[7] = c(h, 0.0);
        let expected = PureState::from_amplitudes(3, expected).unwrap();
        assert!(result.overlap(&expected).re > 1.0 - 1e-12);
    }

    #[test]
    fn lift_with_reversed_targets_swaps_control_and_target() {
        let reversed = Gate::cnot().lift(2, &[1, 0]).unwrap();
        // now qubit 1 controls: |01⟩ ↦ |11⟩
        let result = apply_to_state(&reversed, &PureState::basis(2, 1));
        assert_eq!(result, PureState::basis(2, 3));
        // and |10⟩ is untouched
        let untouched = apply_to_state(&reversed, &PureState::basis(2, 2));
        assert_eq!(untouched, PureState::basis(2, 2));
    }

    #[test]
    fn lift_validates_targets() {
        assert!(matches!(
            Gate::cnot().lift(3, &[0]),
            Err(Error::BadTargets { .. })
        ));
        assert!(matches!(
            Gate::cnot().lift(3, &[0, 3]),
            Err(Error::BadTargets { .. })
        ));
        assert!(matches!(
            Gate::cnot().lift(3, &[1, 1]),
            Err(Error::BadTargets { .. })
        ));
    }

    #[test]
    fn apply_unitary_preserves_purity_and_trace() {
        let rho = PureState::plus().to_density().unwrap();
        let evolved = apply_unitary(&rho, &Gate::hadamard()).unwrap();
        assert!((evolved.purity() - 1.0).abs() <= 1e-12);
        // H|+⟩ = |0⟩
        assert!(evolved.max_abs_diff(&PureState::ket0().to_density().unwrap()) <= 1e-12);
    }

    #[test]
    fn measurement_basis_rejects_non_orthonormal_vectors() {
        let tilted = PureState::from_amplitudes(1, vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        assert!(matches!(
            MeasurementBasis::new(
                vec![PureState::ket0(), tilted],
                vec!["0".into(), "1".into()]
            ),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn computational_basis_labels_are_bit_strings() {
        let basis = MeasurementBasis::computational(2);
        assert_eq!(basis.outcome_labels(), &["00", "01", "10", "11"]);
        assert_eq!(basis.index_of("10"), Some(2));
    }

    #[test]
    fn projectors_from_a_basis_are_complete() {
        let basis = MeasurementBasis::plus_minus();
        let sum = basis.projector(0).matrix().add(basis.projector(1).matrix());
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-15);
        assert!(Projector::new(basis.projector(0).matrix().clone()).is_ok());
    }

    #[test]
    fn projector_rejects_non_idempotent_matrices() {
        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(
            Projector::new(half),
            Err(Error::NotIdempotent { .. })
        ));
    }

    #[test]
    fn ontic_collapse_kills_coherences() {
        let rho = PureState::plus().to_density().unwrap();
        let collapsed = ontic_collapse(&rho, &MeasurementBasis::computational(1), &[0]).unwrap();
        assert!(collapsed.max_abs_diff(&DensityMatrix::maximally_mixed(1)) <= 1e-15);
        // and is idempotent as a channel
        let twice = ontic_collapse(&collapsed, &MeasurementBasis::computational(1), &[0]).unwrap();
        assert!(twice.max_abs_diff(&collapsed) <= 1e-15);
    }

    #[test]
    fn ontic_collapse_in_the_eigenbasis_is_the_identity() {
        let rho = PureState::plus().to_density().unwrap();
        let collapsed = ontic_collapse(&rho, &MeasurementBasis::plus_minus(), &[0]).unwrap();
        assert!(collapsed.max_abs_diff(&rho) <= 1e-15);
    }

    #[test]
    fn epistemic_collapse_returns_the_born_rule() {
        let psi = PureState::from_amplitudes(1, vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let rho = psi.to_density().unwrap();
        let basis = MeasurementBasis::computational(1);
        let (state0, p0) = epistemic_collapse(&rho, &basis, &[0], "0").unwrap();
        assert!((p0 - 0.36).abs() <= 1e-12);
        assert!(state0.max_abs_diff(&PureState::ket0().to_density().unwrap()) <= 1e-12);
        let (state1, p1) = epistemic_collapse(&rho, &basis, &[0], "1").unwrap();
        assert!((p1 - 0.64).abs() <= 1e-12);
        assert!(state1.max_abs_diff(&PureState::ket1().to_density().unwrap()) <= 1e-12);
        assert!((p0 + p1 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn epistemic_collapse_rejects_impossible_outcomes() {
        let rho = PureState::ket0().to_density().unwrap();
        let basis = MeasurementBasis::computational(1);
        assert!(matches!(
            epistemic_collapse(&rho, &basis, &[0], "1"),
            Err(Error::ZeroProbability { .. })
        ));
        assert!(matches!(
            epistemic_collapse(&rho, &basis, &[0], "2"),
            Err(Error::UnknownOutcome { .. })
        ));
    }

    #[test]
    fn collapse_on_one_qubit_of_a_pair_leaves_the_other_marginal_fixed() {
        let joint = PureState::bell().to_density().unwrap();
        let collapsed = ontic_collapse(&joint, &MeasurementBasis::computational(1), &[0]).unwrap();
        let register = Register::of(&[("S", 1), ("O", 1)]).unwrap();
        let before = joint.reduce(&register, &["O"]).unwrap();
        let after = collapsed.reduce(&register, &["O"]).unwrap();
        assert!(before.max_abs_diff(&after) <= 1e-15);
    }

    #[test]
    fn outcome_probabilities_sum_to_one() {
        let rho = PureState::plus().to_density().unwrap();
        let probabilities =
            outcome_probabilities(&rho, &MeasurementBasis::computational(1), &[0]).unwrap();
        assert!((probabilities.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        assert!((probabilities[0] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn measurement_circuit_for_computational_basis_is_cnot() {
        let circuit = measurement_circuit(&MeasurementBasis::computational(1)).unwrap();
        assert!(circuit.matrix().max_abs_diff(Gate::cnot().matrix()) == 0.0);
    }

    #[test]
    fn measurement_circuit_copies_the_measured_basis() {
        // (α|+⟩ + β|−⟩)|0⟩ ↦ α|+⟩|+⟩ + β|−⟩|−⟩
        let alpha = c(0.6, 0.0);
        let beta = c(0.0, 0.8);
        let system = PureState::new(
            1,
            PureState::plus()
                .amplitudes()
                .scale(alpha)
                .add(&PureState::minus().amplitudes().scale(beta)),
        )
        .unwrap();
        let circuit = measurement_circuit(&MeasurementBasis::plus_minus()).unwrap();
        let result = apply_to_state(&circuit, &system.tensor(&PureState::ket0()));

        let expected = PureState::new(
            2,
            PureState::plus()
                .tensor(&PureState::plus())
                .amplitudes()
                .scale(alpha)
                .add(
                    &PureState::minus()
                        .tensor(&PureState::minus())
                        .amplitudes()
                        .scale(beta),
                ),
        )
        .unwrap();
        assert!(result.overlap(&expected).norm() > 1.0 - 1e-12);
    }

    #[test]
    fn measurement_circuit_requires_a_single_qubit_basis() {
        assert!(measurement_circuit(&MeasurementBasis::computational(2)).is_err());
    }
}
