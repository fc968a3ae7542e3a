//! Distinguishability analysis: expectation values, trace distance,
//! proper-vs-improper audits, composite witnesses, and the unitary mixing
//! freedom that makes ensembles ambiguous.

use num_complex::Complex64;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::channels::MeasurementBasis;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, HERMITICITY_TOL};
use crate::sampling;
use crate::states::{DensityMatrix, Ensemble, MatrixEntries, PureState, Register, SubsystemLabel};

/// Hermitian observable scoped to a named subsystem.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: ComplexMatrix,
    subsystem: SubsystemLabel,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, subsystem: SubsystemLabel) -> Result<Self> {
        if matrix.dim() != 1 << subsystem.qubits {
            return Err(Error::DimensionMismatch {
                left: 1 << subsystem.qubits,
                right: matrix.dim(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix, subsystem })
    }

    /// Pauli Z (diag(1, −1)) on a single-qubit subsystem.
    pub fn pauli_z(subsystem: SubsystemLabel) -> Result<Self> {
        let matrix = ComplexMatrix::from_rows(vec![
            vec![Complex64::ONE, Complex64::ZERO],
            vec![Complex64::ZERO, -Complex64::ONE],
        ])
        .expect("2x2 literal");
        Self::new(matrix, subsystem)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn subsystem(&self) -> &SubsystemLabel {
        &self.subsystem
    }
}

impl Serialize for Observable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Observable", 2)?;
        s.serialize_field("matrix", &MatrixEntries(&self.matrix))?;
        s.serialize_field("subsystem", &self.subsystem)?;
        s.end()
    }
}

/// Born-rule average ⟨A⟩ = tr(Aρ). Real for Hermitian A and valid ρ.
pub fn expectation(observable: &Observable, rho: &DensityMatrix) -> Result<f64> {
    if observable.matrix.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: observable.matrix.dim(),
            right: rho.dim(),
        });
    }
    let value = observable.matrix.matmul(rho.matrix())?.trace();
    debug_assert!(value.im.abs() <= 1e-10);
    Ok(value.re)
}

/// Trace distance ½‖ρ − σ‖₁ = ½ Σ |eig(ρ − σ)|.
///
/// This bounds every single-measurement statistical gap: no effect can
/// separate the two states by more than this, and some projector achieves
/// it.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let eigenvalues = rho.matrix().sub(sigma.matrix()).hermitian_eigenvalues()?;
    Ok(eigenvalues.iter().map(|e| e.abs()).sum::<f64>() / 2.0)
}

/// Result of a proper-vs-improper distinguishability audit.
#[derive(Debug, Clone, Serialize)]
pub struct AuditResult {
    pub trials: usize,
    /// Largest statistical gap found across all sampled observables and
    /// measurement distributions; nonnegative by construction.
    pub max_abs_gap: f64,
    pub worst_observable: Observable,
    pub seed: u64,
}

/// Tolerance for the precondition that the two presentations describe the
/// same subsystem state.
pub const PREPARATION_TOL: f64 = 1e-10;

/// Pits the "proper" presentation of a subsystem state (an ignorance
/// ensemble) against the "improper" one (the reduced state of an entangled
/// joint state) and hunts for any observable difference.
///
/// The ensemble fixes the subsystem S; the trailing qubits of `joint` are
/// traced out. Each trial samples a random Hermitian observable on S and a
/// random rank-1 projective measurement on S, and records the largest gap
/// in expectation values and outcome probabilities. Trials are derived
/// independently from (`seed`, trial index), so results are reproducible
/// and order-independent.
pub fn proper_improper_audit(
    ensemble: &Ensemble,
    joint: &DensityMatrix,
    n_observables: usize,
    seed: u64,
) -> Result<AuditResult> {
    if n_observables == 0 {
        return Err(Error::NoTrials);
    }
    let s_qubits = ensemble.qubits();
    if joint.qubits() <= s_qubits {
        return Err(Error::DimensionMismatch {
            left: joint.qubits(),
            right: s_qubits,
        });
    }
    let register = Register::of(&[("S", s_qubits), ("O", joint.qubits() - s_qubits)])?;
    let proper = ensemble.to_density()?;
    let improper = joint.reduce(&register, &["S"])?;
    let preparation_gap = proper.max_abs_diff(&improper);
    if preparation_gap > PREPARATION_TOL {
        return Err(Error::PreparationMismatch {
            deviation: preparation_gap,
        });
    }

    let dim = proper.dim();
    let scope = SubsystemLabel::new("S", 0, s_qubits);
    let mut max_abs_gap = f64::NEG_INFINITY;
    let mut worst: Option<ComplexMatrix> = None;
    let mut record = |gap: f64, candidate: &ComplexMatrix| {
        if gap > max_abs_gap {
            max_abs_gap = gap;
            worst = Some(candidate.clone());
        }
    };

    for trial in 0..n_observables as u64 {
        let mut rng = sampling::trial_rng(seed, trial);

        // expectation value of a random Hermitian observable
        let hermitian = sampling::random_hermitian(&mut rng, dim);
        let gap = (hermitian.matmul(proper.matrix())?.trace().re
            - hermitian.matmul(improper.matrix())?.trace().re)
            .abs();
        record(gap, &hermitian);

        // full outcome distribution of a random projective measurement
        let basis = sampling::random_orthonormal_basis(&mut rng, dim);
        for vector in &basis {
            let projector = vector.outer(vector);
            let gap = (projector.matmul(proper.matrix())?.trace().re
                - projector.matmul(improper.matrix())?.trace().re)
                .abs();
            record(gap, &projector);
        }
    }

    let worst = worst.expect("at least one trial ran");
    Ok(AuditResult {
        trials: n_observables,
        max_abs_gap,
        worst_observable: Observable::new(worst, scope)?,
        seed,
    })
}

/// Sampled-statistics audit of the same comparison.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloAudit {
    pub shots: usize,
    /// Largest z-score across outcome frequencies of the two presentations.
    pub max_z_score: f64,
    /// True when every frequency pair agrees within three standard errors.
    pub agrees: bool,
}

/// Simulates finite-statistics experiments on both presentations: the
/// proper side picks an ensemble member and Born-samples it, the improper
/// side Born-samples the reduced state. Frequencies are compared per
/// outcome with a two-sample z-test; agreement within three standard errors
/// is the expected behavior for equal distributions.
pub fn monte_carlo_audit(
    ensemble: &Ensemble,
    joint: &DensityMatrix,
    shots: usize,
    seed: u64,
) -> Result<MonteCarloAudit> {
    if shots == 0 {
        return Err(Error::NoTrials);
    }
    let s_qubits = ensemble.qubits();
    if joint.qubits() <= s_qubits {
        return Err(Error::DimensionMismatch {
            left: joint.qubits(),
            right: s_qubits,
        });
    }
    let register = Register::of(&[("S", s_qubits), ("O", joint.qubits() - s_qubits)])?;
    let improper = joint.reduce(&register, &["S"])?;
    let basis = MeasurementBasis::computational(s_qubits);
    let dim = 1usize << s_qubits;

    let sample_index = |probabilities: &[f64], rng: &mut rand_chacha::ChaCha8Rng| -> usize {
        let draw: f64 = rng.random_range(0.0..1.0);
        let mut cumulative = 0.0;
        for (index, p) in probabilities.iter().enumerate() {
            cumulative += p.max(0.0);
            if draw < cumulative {
                return index;
            }
        }
        probabilities.len() - 1
    };

    // Born distribution of each ensemble member and of the reduced state
    let member_distributions: Vec<Vec<f64>> = ensemble
        .members()
        .iter()
        .map(|(_, state)| {
            (0..dim)
                .map(|outcome| {
                    basis.vectors()[outcome]
                        .amplitudes()
                        .inner(state.amplitudes())
                        .norm_sqr()
                })
                .collect()
        })
        .collect();
    let weights: Vec<f64> = ensemble.members().iter().map(|(w, _)| *w).collect();
    let improper_distribution: Vec<f64> = (0..dim)
        .map(|outcome| improper.matrix().get(outcome, outcome).re)
        .collect();

    let mut proper_counts = vec![0usize; dim];
    let mut improper_counts = vec![0usize; dim];
    for shot in 0..shots as u64 {
        let mut rng = sampling::trial_rng(seed, shot);
        let member = sample_index(&weights, &mut rng);
        proper_counts[sample_index(&member_distributions[member], &mut rng)] += 1;
        improper_counts[sample_index(&improper_distribution, &mut rng)] += 1;
    }

    let mut max_z_score = 0.0f64;
    for outcome in 0..dim {
        let f_proper = proper_counts[outcome] as f64 / shots as f64;
        let f_improper = improper_counts[outcome] as f64 / shots as f64;
        let pooled =
            (proper_counts[outcome] + improper_counts[outcome]) as f64 / (2.0 * shots as f64);
        let variance = pooled * (1.0 - pooled) * 2.0 / shots as f64;
        let z = if variance > 0.0 {
            (f_proper - f_improper).abs() / variance.sqrt()
        } else {
            0.0 // both counts are 0 or both are `shots`: frequencies agree exactly
        };
        max_z_score = max_z_score.max(z);
    }
    Ok(MonteCarloAudit {
        shots,
        max_z_score,
        agrees: max_z_score <= 3.0,
    })
}

/// Number of random effects tried by [`composite_witness`] alongside the
/// canonical entangled-vector projector.
const WITNESS_TRIALS: u64 = 64;
const WITNESS_SEED: u64 = 11;

/// Searches a canonical family of effects (Hermitian operators with
/// spectrum in [0, 1]) for the largest expectation gap between two
/// composite states.
///
/// The family always contains the projector onto the leading eigenvector of
/// `pure_joint`. When `pure_joint` is pure and `mixed_joint` is the
/// corresponding classical mixture, that projector achieves the trace
/// distance exactly, and no effect can exceed it — so the returned gap
/// equals the trace distance up to solver noise. The remaining family
/// members are seeded random Hermitians rescaled into effects.
pub fn composite_witness(
    pure_joint: &DensityMatrix,
    mixed_joint: &DensityMatrix,
) -> Result<(Observable, f64)> {
    if pure_joint.dim() != mixed_joint.dim() {
        return Err(Error::DimensionMismatch {
            left: pure_joint.dim(),
            right: mixed_joint.dim(),
        });
    }
    let dim = pure_joint.dim();
    let scope = SubsystemLabel::new("SO", 0, pure_joint.qubits());

    let gap_of = |candidate: &ComplexMatrix| -> Result<f64> {
        let on_pure = candidate.matmul(pure_joint.matrix())?.trace().re;
        let on_mixed = candidate.matmul(mixed_joint.matrix())?.trace().re;
        Ok((on_pure - on_mixed).abs())
    };

    let (_, eigenvectors) = pure_joint.matrix().hermitian_eigen()?;
    let principal = &eigenvectors[0];
    let mut best = principal.outer(principal);
    let mut best_gap = gap_of(&best)?;

    for trial in 0..WITNESS_TRIALS {
        let mut rng = sampling::trial_rng(WITNESS_SEED, trial);
        let hermitian = sampling::random_hermitian(&mut rng, dim);
        let eigenvalues = hermitian.hermitian_eigenvalues()?;
        let (high, low) = (eigenvalues[0], eigenvalues[dim - 1]);
        if high - low < 1e-12 {
            continue;
        }
        let effect = hermitian
            .sub(&ComplexMatrix::identity(dim).scale(Complex64::new(low, 0.0)))
            .scale(Complex64::new(1.0 / (high - low), 0.0));
        let gap = gap_of(&effect)?;
        if gap > best_gap {
            best_gap = gap;
            best = effect;
        }
    }
    Ok((Observable::new(best, scope)?, best_gap))
}

/// Rewrites an ensemble into an observationally identical one via a mixing
/// matrix: member j of the result is the normalization of
/// Σᵢ mixing[j][i] √wᵢ |ψᵢ⟩, weighted by its squared norm.
///
/// `mixing` must be at least as large as the member count and must have
/// orthonormal columns over the occupied member slots; that condition is
/// exactly what preserves the density matrix. Extra input columns are
/// treated as empty slots, and output members whose squared norm falls
/// below 1e-12 are dropped.
pub fn ensemble_mix(ensemble: &Ensemble, mixing: &ComplexMatrix) -> Result<Ensemble> {
    let n = ensemble.members().len();
    let k = mixing.dim();
    if k < n {
        return Err(Error::DimensionMismatch { left: k, right: n });
    }
    let mut deviation = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut sum = Complex64::ZERO;
            for row in 0..k {
                sum += mixing.get(row, i).conj() * mixing.get(row, j);
            }
            let expected = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            deviation = deviation.max((sum - expected).norm());
        }
    }
    if deviation > 1e-10 {
        return Err(Error::NotIsometry { deviation });
    }

    let dim = 1usize << ensemble.qubits();
    let mut members = Vec::with_capacity(k);
    for row in 0..k {
        let mut accumulated = ComplexVector::zeros(dim);
        for (i, (weight, state)) in ensemble.members().iter().enumerate() {
            let coefficient = mixing.get(row, i) * Complex64::new(weight.sqrt(), 0.0);
            accumulated = accumulated.add(&state.amplitudes().scale(coefficient));
        }
        let new_weight = accumulated.norm_sqr();
        if new_weight < 1e-12 {
            continue;
        }
        let normalized = accumulated.scale(Complex64::new(1.0 / new_weight.sqrt(), 0.0));
        members.push((new_weight, PureState::new(ensemble.qubits(), normalized)?));
    }
    Ensemble::new(members)
}

/// The orthonormal qubit pair at angle θ:
/// (cos θ|0⟩ + sin θ|1⟩, −sin θ|0⟩ + cos θ|1⟩).
///
/// The equal mixture of any such pair is I/2, independent of θ.
pub fn rotated_pair(theta: f64) -> (PureState, PureState) {
    let (sin, cos) = theta.sin_cos();
    let a = PureState::from_amplitudes(1, vec![Complex64::new(cos, 0.0), Complex64::new(sin, 0.0)])
        .expect("normalized by construction");
    let b =
        PureState::from_amplitudes(1, vec![Complex64::new(-sin, 0.0), Complex64::new(cos, 0.0)])
            .expect("normalized by construction");
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn s_label() -> SubsystemLabel {
        SubsystemLabel::new("S", 0, 1)
    }

    fn ignorance_ensemble() -> Ensemble {
        Ensemble::new(vec![(0.5, PureState::ket0()), (0.5, PureState::ket1())]).unwrap()
    }

    #[test]
    fn expectation_of_pauli_z() {
        let z = Observable::pauli_z(s_label()).unwrap();
        let plus = PureState::plus().to_density().unwrap();
        assert!(expectation(&z, &plus).unwrap().abs() <= 1e-12);
        let zero = PureState::ket0().to_density().unwrap();
        assert!((expectation(&z, &zero).unwrap() - 1.0).abs() <= 1e-12);
        let one = PureState::ket1().to_density().unwrap();
        assert!((expectation(&z, &one).unwrap() + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn observable_rejects_non_hermitian_matrices() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            Observable::new(m, s_label()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn trace_distance_of_identical_states_is_zero() {
        let rho = PureState::plus().to_density().unwrap();
        assert!(trace_distance(&rho, &rho).unwrap() <= 1e-15);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let zero = PureState::ket0().to_density().unwrap();
        let one = PureState::ket1().to_density().unwrap();
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn trace_distance_between_bell_and_its_decohered_mixture_is_half() {
        let entangled = PureState::bell().to_density().unwrap();
        let mixture = Ensemble::new(vec![
            (0.5, PureState::basis(2, 0)),
            (0.5, PureState::basis(2, 3)),
        ])
        .unwrap()
        .to_density()
        .unwrap();
        assert!((trace_distance(&entangled, &mixture).unwrap() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn audit_finds_no_gap_between_equal_presentations() {
        let result = proper_improper_audit(
            &ignorance_ensemble(),
            &PureState::bell().to_density().unwrap(),
            50,
            42,
        )
        .unwrap();
        assert_eq!(result.trials, 50);
        assert_eq!(result.seed, 42);
        assert!(result.max_abs_gap >= 0.0);
        assert!(result.max_abs_gap <= 1e-12, "gap {}", result.max_abs_gap);
    }

    #[test]
    fn audit_is_reproducible_for_a_fixed_seed() {
        let joint = PureState::bell().to_density().unwrap();
        let a = proper_improper_audit(&ignorance_ensemble(), &joint, 10, 7).unwrap();
        let b = proper_improper_audit(&ignorance_ensemble(), &joint, 10, 7).unwrap();
        assert_eq!(a.max_abs_gap, b.max_abs_gap);
        assert!(
            a.worst_observable
                .matrix()
                .max_abs_diff(b.worst_observable.matrix())
                == 0.0
        );
    }

    #[test]
    fn audit_rejects_mismatched_preparations() {
        // ensemble for |0⟩ against a joint whose marginal is I/2
        let ensemble = Ensemble::new(vec![(1.0, PureState::ket0())]).unwrap();
        let joint = PureState::bell().to_density().unwrap();
        assert!(matches!(
            proper_improper_audit(&ensemble, &joint, 10, 0),
            Err(Error::PreparationMismatch { .. })
        ));
    }

    #[test]
    fn audit_requires_trials_and_a_larger_joint() {
        let joint = PureState::bell().to_density().unwrap();
        assert!(matches!(
            proper_improper_audit(&ignorance_ensemble(), &joint, 0, 0),
            Err(Error::NoTrials)
        ));
        let too_small = PureState::ket0().to_density().unwrap();
        assert!(proper_improper_audit(&ignorance_ensemble(), &too_small, 1, 0).is_err());
    }

    #[test]
    fn monte_carlo_audit_agrees_for_equal_presentations() {
        let result = monte_carlo_audit(
            &ignorance_ensemble(),
            &PureState::bell().to_density().unwrap(),
            4000,
            1,
        )
        .unwrap();
        assert!(result.agrees, "max z-score {}", result.max_z_score);
    }

    #[test]
    fn composite_witness_separates_bell_from_its_mixture() {
        let entangled = PureState::bell().to_density().unwrap();
        let mixture = Ensemble::new(vec![
            (0.5, PureState::basis(2, 0)),
            (0.5, PureState::basis(2, 3)),
        ])
        .unwrap()
        .to_density()
        .unwrap();
        let (witness, gap) = composite_witness(&entangled, &mixture).unwrap();
        assert!((gap - 0.5).abs() <= 1e-12, "gap {gap}");
        assert_eq!(witness.subsystem().qubits, 2);
        // the gap saturates the trace distance
        let distance = trace_distance(&entangled, &mixture).unwrap();
        assert!((gap - distance).abs() <= 1e-12);
    }

    #[test]
    fn composite_witness_vanishes_for_equal_states() {
        let rho = PureState::basis(2, 0).to_density().unwrap();
        let (_, gap) = composite_witness(&rho, &rho).unwrap();
        assert!(gap <= 1e-12);
    }

    #[test]
    fn ensemble_mix_with_identity_is_a_no_op() {
        let ensemble = ignorance_ensemble();
        let mixed = ensemble_mix(&ensemble, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(mixed.members().len(), 2);
        for ((w1, s1), (w2, s2)) in ensemble.members().iter().zip(mixed.members()) {
            assert!((w1 - w2).abs() <= 1e-12);
            assert!((s1.overlap(s2).norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn hadamard_mixing_turns_computational_into_plus_minus() {
        let mixed = ensemble_mix(
            &ignorance_ensemble(),
            crate::channels::Gate::hadamard().matrix(),
        )
        .unwrap();
        assert_eq!(mixed.members().len(), 2);
        assert!((mixed.members()[0].0 - 0.5).abs() <= 1e-12);
        assert!((mixed.members()[0].1.overlap(&PureState::plus()).norm() - 1.0).abs() <= 1e-12);
        assert!((mixed.members()[1].1.overlap(&PureState::minus()).norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ensemble_mix_rejects_non_isometries() {
        let shrink = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(
            ensemble_mix(&ignorance_ensemble(), &shrink),
            Err(Error::NotIsometry { .. })
        ));
        assert!(matches!(
            ensemble_mix(&ignorance_ensemble(), &ComplexMatrix::identity(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ensemble_mix_into_more_members_preserves_the_density_matrix() {
        // 3x3 mixing with orthonormal columns over the 2 occupied slots:
        // splits |0⟩ across two output members with opposite signs
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mixing = ComplexMatrix::from_rows(vec![
            vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(-h, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let mixed = ensemble_mix(&ignorance_ensemble(), &mixing).unwrap();
        assert_eq!(mixed.members().len(), 3);
        assert!((mixed.members()[0].0 - 0.25).abs() <= 1e-12);
        assert!((mixed.members()[1].0 - 0.25).abs() <= 1e-12);
        assert!((mixed.members()[2].0 - 0.5).abs() <= 1e-12);
        let original = ignorance_ensemble().to_density().unwrap();
        let rewritten = mixed.to_density().unwrap();
        assert!(original.max_abs_diff(&rewritten) <= 1e-12);
    }

    #[test]
    fn ensemble_mix_drops_empty_output_members() {
        // second output row receives nothing: a 2x2 isometry concentrated on row 0
        // cannot exist, so use 3 slots where row 1 is annihilated
        let mixing = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        // member 1 of the output draws only from the unoccupied third slot
        let mixed = ensemble_mix(&ignorance_ensemble(), &mixing).unwrap();
        assert_eq!(mixed.members().len(), 2);
        let total: f64 = mixed.members().iter().map(|(w, _)| w).sum();
        assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn rotated_pair_is_orthonormal_and_mixes_to_identity() {
        let (a, b) = rotated_pair(0.7);
        assert!(a.overlap(&b).norm() <= 1e-12);
        let mixture = Ensemble::new(vec![(0.5, a), (0.5, b)])
            .unwrap()
            .to_density()
            .unwrap();
        assert!(mixture.max_abs_diff(&DensityMatrix::maximally_mixed(1)) <= 1e-15);
    }

    proptest! {
        #[test]
        fn random_unitary_mixing_preserves_the_density_matrix(seed in 0u64..1000) {
            let mut rng = sampling::trial_rng(seed, 0);
            let mixing = sampling::random_unitary(&mut rng, 2);
            let ensemble = ignorance_ensemble();
            let mixed = ensemble_mix(&ensemble, &mixing).unwrap();
            let distance = trace_distance(
                &ensemble.to_density().unwrap(),
                &mixed.to_density().unwrap(),
            ).unwrap();
            prop_assert!(distance <= 1e-12);
        }

        #[test]
        fn trace_distance_is_a_metric_on_random_states(seed in 0u64..500) {
            let mut rng = sampling::trial_rng(seed, 1);
            let a = sampling::random_qubit_density(&mut rng);
            let b = sampling::random_qubit_density(&mut rng);
            let d = sampling::random_qubit_density(&mut rng);
            let ab = trace_distance(&a, &b).unwrap();
            let ba = trace_distance(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-12);
            prop_assert!(ab >= 0.0);
            // triangle inequality with numerical slack
            let ad = trace_distance(&a, &d).unwrap();
            let db = trace_distance(&d, &b).unwrap();
            prop_assert!(ab <= ad + db + 1e-10);
        }

        #[test]
        fn expectation_is_linear_in_the_observable(seed in 0u64..200) {
            let mut rng = sampling::trial_rng(seed, 2);
            let rho = sampling::random_qubit_density(&mut rng);
            let a = sampling::random_hermitian(&mut rng, 2);
            let b = sampling::random_hermitian(&mut rng, 2);
            let sum = Observable::new(a.add(&b), s_label()).unwrap();
            let a = Observable::new(a, s_label()).unwrap();
            let b = Observable::new(b, s_label()).unwrap();
            let lhs = expectation(&sum, &rho).unwrap();
            let rhs = expectation(&a, &rho).unwrap() + expectation(&b, &rho).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
        }
    }
}
