//! Executable measurement scenarios.
//!
//! Each runner works a standard configuration end to end — build the input,
//! apply the interaction circuit, reduce, compare against the closed-form
//! expectation — snapshotting every intermediate state and recording each
//! comparison as an explicit pass/fail check, so a report is both a
//! regression artifact and a readable walkthrough of the computation.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis;
use crate::channels::{
    apply_unitary, epistemic_collapse, measurement_circuit, ontic_collapse, outcome_probabilities,
    Gate, MeasurementBasis,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::sampling;
use crate::states::{DensityMatrix, Ensemble, PureState, Register, SubsystemLabel, STATE_TOL};

/// Default absolute tolerance for scenario checks.
pub const DEFAULT_CHECK_TOLERANCE: f64 = 1e-12;

/// One recorded comparison; passes iff |expected − actual| ≤ tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn scalar(description: &str, expected: f64, actual: f64, tolerance: f64) -> Self {
        Self {
            description: description.to_string(),
            expected,
            actual,
            tolerance,
            passed: (expected - actual).abs() <= tolerance,
        }
    }

    /// Matrix comparison, recorded as a scalar check on the largest
    /// entrywise deviation.
    pub fn matrices(
        description: &str,
        expected: &ComplexMatrix,
        actual: &ComplexMatrix,
        tolerance: f64,
    ) -> Self {
        Self::scalar(description, 0.0, expected.max_abs_diff(actual), tolerance)
    }
}

/// Labeled snapshot of an intermediate state.
#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub label: String,
    pub state: DensityMatrix,
}

/// Structured record of one scenario run.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub stages: Vec<Stage>,
    pub metrics: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    fn new(scenario_id: &str) -> Self {
        Self {
            scenario_id: scenario_id.to_string(),
            parameters: BTreeMap::new(),
            stages: Vec::new(),
            metrics: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn stage(&mut self, label: &str, state: &DensityMatrix) {
        self.stages.push(Stage {
            label: label.to_string(),
            state: state.clone(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|check| check.passed)
    }
}

/// How one observer describes the measured subsystem: who they are, what
/// outcome they know (if any), and the density matrix they assign.
#[derive(Debug, Clone, Serialize)]
pub struct ObserverRecord {
    pub observer: SubsystemLabel,
    pub known_outcome: Option<String>,
    pub description_of_s: DensityMatrix,
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn amplitudes_json(state: &PureState) -> Value {
    Value::Array(
        state
            .amplitudes()
            .entries()
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect(),
    )
}

fn validate_pair(alpha: Complex64, beta: Complex64) -> Result<()> {
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > STATE_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(())
}

/// w₀|φ₀⟩⟨φ₀| + w₁|φ₁⟩⟨φ₁|.
fn two_state_mixture(weights: [f64; 2], states: [&PureState; 2]) -> ComplexMatrix {
    let first = states[0]
        .amplitudes()
        .outer(states[0].amplitudes())
        .scale(weights[0].into());
    let second = states[1]
        .amplitudes()
        .outer(states[1].amplitudes())
        .scale(weights[1].into());
    first.add(&second)
}

fn register_so() -> Register {
    Register::of(&[("S", 1), ("O", 1)]).expect("two distinct labels")
}

/// Computational-basis measurement of a pure qubit α|0⟩ + β|1⟩: the
/// apparatus latches onto the system by a CNOT, and tracing it out leaves S
/// in exactly the |α|², |β|² collapse mixture.
pub fn scenario_fig1(alpha: Complex64, beta: Complex64, tolerance: f64) -> Result<ScenarioReport> {
    validate_pair(alpha, beta)?;
    let mut report = ScenarioReport::new("fig1");
    report
        .parameters
        .insert("alpha".into(), complex_json(alpha));
    report.parameters.insert("beta".into(), complex_json(beta));
    report
        .parameters
        .insert("interpretation_basis".into(), json!("computational"));

    let system = PureState::from_amplitudes(1, vec![alpha, beta])?;
    let input = system.tensor(&PureState::ket0()).to_density()?;
    report.stage("input", &input);

    let joint = apply_unitary(&input, &Gate::cnot())?;
    report.stage("post_cnot", &joint);

    let reduced = joint.reduce(&register_so(), &["S"])?;
    report.stage("reduced_S", &reduced);

    let expected = two_state_mixture(
        [alpha.norm_sqr(), beta.norm_sqr()],
        [&PureState::ket0(), &PureState::ket1()],
    );
    let expected_purity = alpha.norm_sqr().powi(2) + beta.norm_sqr().powi(2);

    report.metrics.insert("purity_joint".into(), joint.purity());
    report
        .metrics
        .insert("purity_reduced_S".into(), reduced.purity());
    report.metrics.insert(
        "reduced_S_deviation".into(),
        reduced.matrix().max_abs_diff(&expected),
    );

    report.checks.push(Check::matrices(
        "reduced state equals the collapse mixture diag(|α|², |β|²)",
        &expected,
        reduced.matrix(),
        tolerance,
    ));
    report.checks.push(Check::scalar(
        "joint state stays pure through the interaction",
        1.0,
        joint.purity(),
        tolerance,
    ));
    report.checks.push(Check::scalar(
        "reduced purity equals |α|⁴ + |β|⁴",
        expected_purity,
        reduced.purity(),
        tolerance,
    ));
    Ok(report)
}

/// Computational-basis measurement of a genuinely mixed input, computed two
/// ways: conjugating ρ ⊗ |0⟩⟨0| by the circuit and tracing out the
/// apparatus, versus applying the nonselective projection rule directly to
/// ρ. The two routes must agree entry by entry.
pub fn scenario_mixed_input(ensemble: &Ensemble, tolerance: f64) -> Result<ScenarioReport> {
    if ensemble.qubits() != 1 || ensemble.members().len() != 2 {
        return Err(Error::InvalidParam {
            name: "ensemble".into(),
            reason: "expected exactly two single-qubit members".into(),
        });
    }
    let mut report = ScenarioReport::new("mixed_input");
    let (weight_a, state_a) = &ensemble.members()[0];
    let (weight_b, state_b) = &ensemble.members()[1];
    report.parameters.insert("p_a".into(), json!(weight_a));
    report.parameters.insert("p_b".into(), json!(weight_b));
    report
        .parameters
        .insert("a".into(), amplitudes_json(state_a));
    report
        .parameters
        .insert("b".into(), amplitudes_json(state_b));
    let warnings = ensemble.warnings();
    if !warnings.is_empty() {
        report.parameters.insert("warnings".into(), json!(warnings));
    }

    let input = ensemble.to_density()?;
    report.stage("input", &input);

    let apparatus = PureState::ket0().to_density()?;
    let joint = DensityMatrix::new(2, input.matrix().kron(apparatus.matrix()))?;
    let evolved = apply_unitary(&joint, &Gate::cnot())?;
    report.stage("post_cnot", &evolved);
    let circuit_route = evolved.reduce(&register_so(), &["S"])?;
    report.stage("reduced_S", &circuit_route);

    let rule_route = ontic_collapse(&input, &MeasurementBasis::computational(1), &[0])?;
    report.stage("rule_route", &rule_route);

    // closed form: the diagonal of the input in the measured basis
    let p0 = weight_a * state_a.amplitudes().get(0).norm_sqr()
        + weight_b * state_b.amplitudes().get(0).norm_sqr();
    let p1 = weight_a * state_a.amplitudes().get(1).norm_sqr()
        + weight_b * state_b.amplitudes().get(1).norm_sqr();
    let closed_form = ComplexMatrix::from_rows(vec![
        vec![Complex64::new(p0, 0.0), Complex64::ZERO],
        vec![Complex64::ZERO, Complex64::new(p1, 0.0)],
    ])?;

    report.metrics.insert(
        "route_deviation".into(),
        circuit_route.max_abs_diff(&rule_route),
    );
    report.metrics.insert("purity_input".into(), input.purity());
    report
        .metrics
        .insert("purity_reduced_S".into(), circuit_route.purity());

    report.checks.push(Check::matrices(
        "circuit route equals the projection rule",
        circuit_route.matrix(),
        rule_route.matrix(),
        tolerance,
    ));
    report.checks.push(Check::matrices(
        "circuit route equals the closed-form diagonal",
        &closed_form,
        circuit_route.matrix(),
        tolerance,
    ));
    report.checks.push(Check::matrices(
        "projection rule equals the closed-form diagonal",
        &closed_form,
        rule_route.matrix(),
        tolerance,
    ));
    Ok(report)
}

/// Measurement of the {|+⟩, |−⟩} observable on α|+⟩ + β|−⟩ via the
/// Hadamard-conjugated CNOT. The reduced state is the ± collapse mixture —
/// which, at α = β = 1/√2, is the same matrix the computational-basis
/// circuit produces, even though the two runs suggest different ignorance
/// interpretations.
pub fn scenario_fig2(alpha: Complex64, beta: Complex64, tolerance: f64) -> Result<ScenarioReport> {
    validate_pair(alpha, beta)?;
    let mut report = ScenarioReport::new("fig2");
    report
        .parameters
        .insert("alpha".into(), complex_json(alpha));
    report.parameters.insert("beta".into(), complex_json(beta));
    report
        .parameters
        .insert("interpretation_basis".into(), json!("plus_minus"));

    let amplitudes = PureState::plus()
        .amplitudes()
        .scale(alpha)
        .add(&PureState::minus().amplitudes().scale(beta));
    let system = PureState::new(1, amplitudes)?;
    let input = system.tensor(&PureState::ket0()).to_density()?;
    report.stage("input", &input);

    let circuit = measurement_circuit(&MeasurementBasis::plus_minus())?;
    let joint = apply_unitary(&input, &circuit)?;
    report.stage("post_circuit", &joint);

    let reduced = joint.reduce(&register_so(), &["S"])?;
    report.stage("reduced_S", &reduced);

    let expected = two_state_mixture(
        [alpha.norm_sqr(), beta.norm_sqr()],
        [&PureState::plus(), &PureState::minus()],
    );
    report.checks.push(Check::matrices(
        "reduced state equals the ± collapse mixture",
        &expected,
        reduced.matrix(),
        tolerance,
    ));
    report.checks.push(Check::scalar(
        "joint state stays pure through the interaction",
        1.0,
        joint.purity(),
        tolerance,
    ));

    let eigenvalues = reduced.matrix().hermitian_eigenvalues()?;
    report
        .metrics
        .insert("reduced_eigenvalue_0".into(), eigenvalues[0]);
    report
        .metrics
        .insert("reduced_eigenvalue_1".into(), eigenvalues[1]);
    report
        .metrics
        .insert("purity_reduced_S".into(), reduced.purity());

    if (alpha - beta).norm() <= 1e-9 {
        // equal amplitudes: compare against the computational-basis circuit
        let computational = scenario_fig1(alpha, beta, tolerance)?;
        let fig1_reduced = &computational
            .stages
            .iter()
            .find(|stage| stage.label == "reduced_S")
            .expect("fig1 records reduced_S")
            .state;
        report.metrics.insert(
            "trace_distance_to_computational_run".into(),
            analysis::trace_distance(&reduced, fig1_reduced)?,
        );
        report.checks.push(Check::matrices(
            "reduced state matches the computational-basis run entry by entry",
            fig1_reduced.matrix(),
            reduced.matrix(),
            tolerance,
        ));
    }
    Ok(report)
}

/// Measurement on half of an entangled pair. An apparatus qubit interacts
/// by CNOT with the first qubit of (|00⟩ + |11⟩)/√2; unconditionally the
/// pair is left in the half-half mixture of |00⟩ and |11⟩, and conditioning
/// on either readout collapses it onto the corresponding branch. The
/// outcome relabels ("alive"/"dead") carried in the parameters stress that
/// the branch structure is independent of what the outcomes are called.
pub fn scenario_fig3(tolerance: f64) -> ScenarioReport {
    let mut report = ScenarioReport::new("fig3");
    report
        .parameters
        .insert("relabels".into(), json!({"0": "alive", "1": "dead"}));

    let initial = PureState::bell()
        .tensor(&PureState::ket0())
        .to_density()
        .expect("pure input");
    report.stage("initial", &initial);

    let lifted = Gate::cnot().lift(3, &[0, 2]).expect("targets in range");
    let joint = apply_unitary(&initial, &lifted).expect("matched dimensions");
    report.stage("post_cnot", &joint);

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut ghz_amplitudes = vec![Complex64::ZERO; 8];
    ghz_amplitudes[0] = Complex64::new(h, 0.0);
    ghz_amplitudes[7] = Complex64::new(h, 0.0);
    let ghz = PureState::from_amplitudes(3, ghz_amplitudes).expect("normalized");
    report.checks.push(Check::matrices(
        "interaction produces (|000⟩ + |111⟩)/√2",
        ghz.to_density().expect("pure").matrix(),
        joint.matrix(),
        tolerance,
    ));

    let register = Register::of(&[("S", 2), ("A", 1)]).expect("two distinct labels");
    let reduced = joint.reduce(&register, &["S"]).expect("valid reduction");
    report.stage("reduced_S", &reduced);

    let expected = two_state_mixture(
        [0.5, 0.5],
        [&PureState::basis(2, 0), &PureState::basis(2, 3)],
    );
    report.checks.push(Check::matrices(
        "unconditional pair state is ½|00⟩⟨00| + ½|11⟩⟨11|",
        &expected,
        reduced.matrix(),
        tolerance,
    ));
    report.checks.push(Check::scalar(
        "unconditional pair purity",
        0.5,
        reduced.purity(),
        tolerance,
    ));

    let readout_basis = MeasurementBasis::computational(1);
    let mut total_probability = 0.0;
    for (outcome, branch_index) in [("0", 0usize), ("1", 3usize)] {
        let (collapsed, probability) = epistemic_collapse(&joint, &readout_basis, &[2], outcome)
            .expect("both branches have weight 1/2");
        let branch = collapsed
            .reduce(&register, &["S"])
            .expect("valid reduction");
        report.stage(&format!("branch_{outcome}_S"), &branch);
        let projector = PureState::basis(2, branch_index)
            .to_density()
            .expect("pure");
        report.checks.push(Check::matrices(
            &format!("readout {outcome} collapses the pair onto |{branch_index:02b}⟩⟨{branch_index:02b}|"),
            projector.matrix(),
            branch.matrix(),
            tolerance,
        ));
        report.checks.push(Check::scalar(
            &format!("readout {outcome} has probability 1/2"),
            0.5,
            probability,
            tolerance,
        ));
        report.metrics.insert(format!("p_{outcome}"), probability);
        total_probability += probability;
    }
    report.checks.push(Check::scalar(
        "branch probabilities sum to 1",
        1.0,
        total_probability,
        tolerance,
    ));
    report
        .metrics
        .insert("purity_reduced_S".into(), reduced.purity());
    report
}

/// Builds the two observer descriptions for the nested-measurement setup:
/// F measures S inside the lab and accounts for the interaction with the
/// projection rule; W stays outside, treats the whole lab unitarily, and
/// reduces to S. Their unconditional descriptions of S are the same matrix.
/// If `friend_outcome` is declared, F's record sharpens to the selective
/// post-measurement state while W's is unchanged.
pub fn wigner_observer_records(
    alpha: Complex64,
    beta: Complex64,
    friend_outcome: Option<&str>,
) -> Result<(ObserverRecord, ObserverRecord)> {
    validate_pair(alpha, beta)?;
    let system = PureState::from_amplitudes(1, vec![alpha, beta])?;
    let joint = apply_unitary(
        &system.tensor(&PureState::ket0()).to_density()?,
        &Gate::cnot(),
    )?;
    let register = Register::of(&[("S", 1), ("F", 1)])?;
    let wigner_description = joint.reduce(&register, &["S"])?;

    let readout_basis = MeasurementBasis::computational(1);
    let friend_ontic = ontic_collapse(&system.to_density()?, &readout_basis, &[0])?;
    let friend = match friend_outcome {
        None => ObserverRecord {
            observer: SubsystemLabel::new("F", 1, 1),
            known_outcome: None,
            description_of_s: friend_ontic,
        },
        Some(outcome) => {
            let (sharpened, _) = epistemic_collapse(&friend_ontic, &readout_basis, &[0], outcome)?;
            ObserverRecord {
                observer: SubsystemLabel::new("F", 1, 1),
                known_outcome: Some(outcome.to_string()),
                description_of_s: sharpened,
            }
        }
    };
    let wigner = ObserverRecord {
        observer: SubsystemLabel::new("W", 2, 1),
        known_outcome: None,
        description_of_s: wigner_description,
    };
    Ok((wigner, friend))
}

/// Nested observers: F measures S by CNOT inside a closed lab, W describes
/// the lab from outside as one unitary evolution. Unconditionally their
/// descriptions of S agree exactly; a declared outcome changes only what F
/// writes down, never the agreement about the unconditional state.
pub fn scenario_wigner(
    alpha: Complex64,
    beta: Complex64,
    friend_outcome: Option<&str>,
    tolerance: f64,
) -> Result<ScenarioReport> {
    let (wigner, friend) = wigner_observer_records(alpha, beta, friend_outcome)?;
    let mut report = ScenarioReport::new("wigner");
    report
        .parameters
        .insert("alpha".into(), complex_json(alpha));
    report.parameters.insert("beta".into(), complex_json(beta));
    report.parameters.insert(
        "friend_outcome".into(),
        friend_outcome.map_or(Value::Null, |o| json!(o)),
    );

    let system = PureState::from_amplitudes(1, vec![alpha, beta])?;
    let system_density = system.to_density()?;
    report.stage("initial_S", &system_density);
    let joint = apply_unitary(
        &system.tensor(&PureState::ket0()).to_density()?,
        &Gate::cnot(),
    )?;
    report.stage("post_interaction", &joint);
    report.stage("wigner_view_S", &wigner.description_of_s);

    let readout_basis = MeasurementBasis::computational(1);
    let friend_ontic = ontic_collapse(&system_density, &readout_basis, &[0])?;
    report.stage("friend_ontic_view_S", &friend_ontic);

    report.checks.push(Check::matrices(
        "inside and outside descriptions of S agree",
        wigner.description_of_s.matrix(),
        friend_ontic.matrix(),
        tolerance,
    ));

    let probabilities = outcome_probabilities(&friend_ontic, &readout_basis, &[0])?;
    report.metrics.insert("p_0".into(), probabilities[0]);
    report.metrics.insert("p_1".into(), probabilities[1]);
    report.checks.push(Check::scalar(
        "branch probabilities sum to 1",
        1.0,
        probabilities.iter().sum(),
        tolerance,
    ));

    if let Some(outcome) = friend_outcome {
        report.stage("friend_epistemic_view_S", &friend.description_of_s);
        let index = readout_basis
            .index_of(outcome)
            .ok_or_else(|| Error::UnknownOutcome {
                label: outcome.to_string(),
            })?;
        let projector = readout_basis.projector(index);
        report.checks.push(Check::matrices(
            "declared outcome collapses F's description onto the outcome projector",
            projector.matrix(),
            friend.description_of_s.matrix(),
            tolerance,
        ));
        let expected_probability = if index == 0 {
            alpha.norm_sqr()
        } else {
            beta.norm_sqr()
        };
        report.checks.push(Check::scalar(
            "declared outcome carries its Born probability",
            expected_probability,
            probabilities[index],
            tolerance,
        ));
        report
            .metrics
            .insert("born_probability".into(), probabilities[index]);
    }
    Ok(report)
}

/// Ensemble ambiguity: sweeps rotated orthonormal pairs and unitary
/// rewrites of the half-half computational ensemble, confirming that every
/// one of these very different preparations yields the same I/2 and is
/// therefore indistinguishable by any measurement on the qubit alone.
pub fn scenario_ambiguity(n_theta: usize, seed: u64, tolerance: f64) -> Result<ScenarioReport> {
    if n_theta == 0 {
        return Err(Error::InvalidParam {
            name: "n_theta".into(),
            reason: "must be positive".into(),
        });
    }
    let mut report = ScenarioReport::new("ambiguity");
    report.parameters.insert("n_theta".into(), json!(n_theta));
    report.parameters.insert("seed".into(), json!(seed));

    let maximally_mixed = DensityMatrix::maximally_mixed(1);
    report.stage("target", &maximally_mixed);

    let mut max_distance = 0.0f64;
    for k in 0..n_theta {
        let theta = std::f64::consts::PI * k as f64 / n_theta as f64;
        let (a, b) = analysis::rotated_pair(theta);
        let mixture = Ensemble::new(vec![(0.5, a), (0.5, b)])?.to_density()?;
        max_distance = max_distance.max(analysis::trace_distance(&mixture, &maximally_mixed)?);
    }
    report
        .metrics
        .insert("max_trace_distance_rotated".into(), max_distance);
    report.checks.push(Check::scalar(
        "every rotated equal mixture reproduces I/2",
        0.0,
        max_distance,
        tolerance,
    ));

    let computational = Ensemble::new(vec![(0.5, PureState::ket0()), (0.5, PureState::ket1())])?;
    let hadamard_rewrite = analysis::ensemble_mix(&computational, Gate::hadamard().matrix())?;
    report.stage("hadamard_rewrite", &hadamard_rewrite.to_density()?);
    report.checks.push(Check::matrices(
        "the Hadamard rewrite preserves the density matrix",
        computational.to_density()?.matrix(),
        hadamard_rewrite.to_density()?.matrix(),
        tolerance,
    ));
    report.checks.push(Check::scalar(
        "first rewritten member is |+⟩ up to phase",
        1.0,
        hadamard_rewrite.members()[0]
            .1
            .overlap(&PureState::plus())
            .norm(),
        tolerance,
    ));
    report.checks.push(Check::scalar(
        "second rewritten member is |−⟩ up to phase",
        1.0,
        hadamard_rewrite.members()[1]
            .1
            .overlap(&PureState::minus())
            .norm(),
        tolerance,
    ));

    let mut max_unitary_distance = 0.0f64;
    for trial in 0..8u64 {
        let mut rng = sampling::trial_rng(seed, trial);
        let mixing = sampling::random_unitary(&mut rng, 2);
        let rewritten = analysis::ensemble_mix(&computational, &mixing)?.to_density()?;
        max_unitary_distance =
            max_unitary_distance.max(analysis::trace_distance(&rewritten, &maximally_mixed)?);
    }
    report
        .metrics
        .insert("max_trace_distance_unitary".into(), max_unitary_distance);
    report.checks.push(Check::scalar(
        "seeded random unitary rewrites preserve the density matrix",
        0.0,
        max_unitary_distance,
        tolerance,
    ));
    Ok(report)
}
