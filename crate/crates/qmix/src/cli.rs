//! Scenario specifications and the runner behind the command-line binary.
//!
//! A run is described by a small JSON document — scenario name, parameters,
//! tolerance, seed, trial count — parsed into a [`ScenarioSpec`], validated
//! against the scenario's parameter schema, and dispatched to the matching
//! runner in [`crate::scenarios`]. Output is either pretty-printed JSON
//! (stable byte-for-byte for a given spec) or a human-readable text digest.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{self, AuditResult};
use crate::error::{Error, Result};
use crate::scenarios::{
    scenario_ambiguity, scenario_fig1, scenario_fig2, scenario_fig3, scenario_mixed_input,
    scenario_wigner, ScenarioReport, DEFAULT_CHECK_TOLERANCE,
};
use crate::states::{Ensemble, PureState};

/// Default number of randomized trials for the audit scenario.
pub const DEFAULT_TRIALS: usize = 1000;

/// Default seed for scenarios that draw random objects.
pub const DEFAULT_SEED: u64 = 0;

/// The scenarios the runner knows, in their canonical (alphabetical) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioId {
    Ambiguity,
    Audit,
    Fig1,
    Fig2,
    Fig3,
    MixedInput,
    Wigner,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 7] = [
        ScenarioId::Ambiguity,
        ScenarioId::Audit,
        ScenarioId::Fig1,
        ScenarioId::Fig2,
        ScenarioId::Fig3,
        ScenarioId::MixedInput,
        ScenarioId::Wigner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::Ambiguity => "ambiguity",
            ScenarioId::Audit => "audit",
            ScenarioId::Fig1 => "fig1",
            ScenarioId::Fig2 => "fig2",
            ScenarioId::Fig3 => "fig3",
            ScenarioId::MixedInput => "mixed_input",
            ScenarioId::Wigner => "wigner",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownScenario {
                name: s.to_string(),
            })
    }
}

/// A fully resolved run request.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioSpec {
    pub scenario: ScenarioId,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Value>,
    pub tolerance: f64,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    scenario: String,
    #[serde(default)]
    params: BTreeMap<String, Value>,
    tolerance: Option<f64>,
    seed: Option<u64>,
    trials: Option<usize>,
}

/// Parses a JSON spec document and validates it against the scenario's
/// parameter schema.
pub fn parse_spec(text: &str) -> Result<ScenarioSpec> {
    let raw: RawSpec = serde_json::from_str(text)?;
    let spec = ScenarioSpec {
        scenario: raw.scenario.parse()?,
        params: raw.params,
        tolerance: raw.tolerance.unwrap_or(DEFAULT_CHECK_TOLERANCE),
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        trials: raw.trials.unwrap_or(DEFAULT_TRIALS),
    };
    validate_spec(&spec)?;
    Ok(spec)
}

fn allowed_params(scenario: ScenarioId) -> &'static [&'static str] {
    match scenario {
        ScenarioId::Ambiguity => &["n_theta"],
        ScenarioId::Audit | ScenarioId::Fig3 => &[],
        ScenarioId::Fig1 | ScenarioId::Fig2 => &["alpha", "beta"],
        ScenarioId::MixedInput => &["p_a", "p_b", "a", "b"],
        ScenarioId::Wigner => &["alpha", "beta", "outcome"],
    }
}

fn required_params(scenario: ScenarioId) -> &'static [&'static str] {
    match scenario {
        ScenarioId::Ambiguity | ScenarioId::Audit | ScenarioId::Fig3 => &[],
        ScenarioId::Fig1 | ScenarioId::Fig2 => &["alpha", "beta"],
        ScenarioId::MixedInput => &["p_a", "p_b", "a", "b"],
        ScenarioId::Wigner => &["alpha", "beta"],
    }
}

/// Checks that the parameter map carries exactly the names the scenario
/// understands and that the values decode into valid domain objects
/// (normalized amplitudes, well-formed ensembles, positive sweep sizes).
pub fn validate_spec(spec: &ScenarioSpec) -> Result<()> {
    let allowed = allowed_params(spec.scenario);
    for name in spec.params.keys() {
        if !allowed.contains(&name.as_str()) {
            return Err(Error::InvalidParam {
                name: name.clone(),
                reason: format!("not a parameter of scenario {}", spec.scenario),
            });
        }
    }
    for name in required_params(spec.scenario) {
        if !spec.params.contains_key(*name) {
            return Err(Error::MissingParam {
                name: (*name).to_string(),
            });
        }
    }
    if !(spec.tolerance.is_finite() && spec.tolerance > 0.0) {
        return Err(Error::InvalidParam {
            name: "tolerance".into(),
            reason: "must be finite and positive".into(),
        });
    }
    match spec.scenario {
        ScenarioId::Ambiguity => {
            n_theta_param(&spec.params)?;
        }
        ScenarioId::Audit | ScenarioId::Fig3 => {}
        ScenarioId::Fig1 | ScenarioId::Fig2 => {
            normalized_amplitude_pair(&spec.params)?;
        }
        ScenarioId::MixedInput => {
            mixed_input_ensemble(&spec.params)?;
        }
        ScenarioId::Wigner => {
            normalized_amplitude_pair(&spec.params)?;
            outcome_param(&spec.params)?;
        }
    }
    Ok(())
}

/// Reads a complex parameter given as `x` (real) or `[re, im]`.
fn complex_param(params: &BTreeMap<String, Value>, name: &str) -> Result<Complex64> {
    let value = params.get(name).ok_or_else(|| Error::MissingParam {
        name: name.to_string(),
    })?;
    let invalid = |reason: &str| Error::InvalidParam {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    match value {
        Value::Number(n) => {
            let re = n
                .as_f64()
                .ok_or_else(|| invalid("not representable as f64"))?;
            Ok(Complex64::new(re, 0.0))
        }
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0]
                .as_f64()
                .ok_or_else(|| invalid("real part is not a number"))?;
            let im = parts[1]
                .as_f64()
                .ok_or_else(|| invalid("imaginary part is not a number"))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(invalid("expected a number or a [re, im] pair")),
    }
}

/// Reads (α, β) and rejects pairs that do not satisfy |α|² + |β|² = 1
/// within the state-validation tolerance.
fn normalized_amplitude_pair(params: &BTreeMap<String, Value>) -> Result<(Complex64, Complex64)> {
    let alpha = complex_param(params, "alpha")?;
    let beta = complex_param(params, "beta")?;
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > crate::states::STATE_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok((alpha, beta))
}

/// Reads a single-qubit state given as a two-entry amplitude list.
fn state_param(params: &BTreeMap<String, Value>, name: &str) -> Result<PureState> {
    let value = params.get(name).ok_or_else(|| Error::MissingParam {
        name: name.to_string(),
    })?;
    let invalid = |reason: &str| Error::InvalidParam {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let entries = value
        .as_array()
        .ok_or_else(|| invalid("expected a two-entry amplitude list"))?;
    if entries.len() != 2 {
        return Err(invalid("expected exactly two amplitudes"));
    }
    let mut amplitudes = Vec::with_capacity(2);
    for entry in entries {
        let amplitude = match entry {
            Value::Number(n) => Complex64::new(
                n.as_f64()
                    .ok_or_else(|| invalid("not representable as f64"))?,
                0.0,
            ),
            Value::Array(parts) if parts.len() == 2 => Complex64::new(
                parts[0]
                    .as_f64()
                    .ok_or_else(|| invalid("real part is not a number"))?,
                parts[1]
                    .as_f64()
                    .ok_or_else(|| invalid("imaginary part is not a number"))?,
            ),
            _ => return Err(invalid("amplitudes must be numbers or [re, im] pairs")),
        };
        amplitudes.push(amplitude);
    }
    PureState::from_amplitudes(1, amplitudes)
}

fn weight_param(params: &BTreeMap<String, Value>, name: &str) -> Result<f64> {
    params
        .get(name)
        .ok_or_else(|| Error::MissingParam {
            name: name.to_string(),
        })?
        .as_f64()
        .ok_or_else(|| Error::InvalidParam {
            name: name.to_string(),
            reason: "expected a number".into(),
        })
}

fn mixed_input_ensemble(params: &BTreeMap<String, Value>) -> Result<Ensemble> {
    Ensemble::new(vec![
        (weight_param(params, "p_a")?, state_param(params, "a")?),
        (weight_param(params, "p_b")?, state_param(params, "b")?),
    ])
}

fn n_theta_param(params: &BTreeMap<String, Value>) -> Result<usize> {
    match params.get("n_theta") {
        None => Ok(50),
        Some(value) => value
            .as_u64()
            .map(|n| n as usize)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidParam {
                name: "n_theta".into(),
                reason: "expected a positive integer".into(),
            }),
    }
}

fn outcome_param(params: &BTreeMap<String, Value>) -> Result<Option<String>> {
    match params.get("outcome") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(Error::InvalidParam {
            name: "outcome".into(),
            reason: "expected an outcome label string".into(),
        }),
    }
}

/// The payload of a finished run: a scenario report or an audit result.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportBody {
    Scenario(ScenarioReport),
    Audit(AuditResult),
}

/// Pass/fail verdict of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Pass,
    Fail,
}

/// A completed run: the spec that produced it, its payload, its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub spec: ScenarioSpec,
    pub report: ReportBody,
    pub exit_status: ExitStatus,
}

/// The ignorance ensemble and entangled joint state behind the canonical
/// audit: ½|0⟩ + ½|1⟩ on S versus the Bell pair on S ⊗ O.
pub fn canonical_audit_inputs() -> Result<(Ensemble, crate::states::DensityMatrix)> {
    let ensemble = Ensemble::new(vec![(0.5, PureState::ket0()), (0.5, PureState::ket1())])?;
    let joint = PureState::bell().to_density()?;
    Ok((ensemble, joint))
}

/// Executes a validated spec.
pub fn run(spec: &ScenarioSpec) -> Result<RunSummary> {
    validate_spec(spec)?;
    let (report, passed) = match spec.scenario {
        ScenarioId::Ambiguity => {
            let n_theta = n_theta_param(&spec.params)?;
            let report = scenario_ambiguity(n_theta, spec.seed, spec.tolerance)?;
            let passed = report.all_passed();
            (ReportBody::Scenario(report), passed)
        }
        ScenarioId::Audit => {
            let (ensemble, joint) = canonical_audit_inputs()?;
            let audit = analysis::proper_improper_audit(&ensemble, &joint, spec.trials, spec.seed)?;
            let passed = audit.max_abs_gap <= spec.tolerance;
            (ReportBody::Audit(audit), passed)
        }
        ScenarioId::Fig1 => {
            let (alpha, beta) = normalized_amplitude_pair(&spec.params)?;
            let report = scenario_fig1(alpha, beta, spec.tolerance)?;
            let passed = report.all_passed();
            (ReportBody::Scenario(report), passed)
        }
        ScenarioId::Fig2 => {
            let (alpha, beta) = normalized_amplitude_pair(&spec.params)?;
            let report = scenario_fig2(alpha, beta, spec.tolerance)?;
            let passed = report.all_passed();
            (ReportBody::Scenario(report), passed)
        }
        ScenarioId::Fig3 => {
            let report = scenario_fig3(spec.tolerance);
            let passed = report.all_passed();
            (ReportBody::Scenario(report), passed)
        }
        ScenarioId::MixedInput => {
            let ensemble = mixed_input_ensemble(&spec.params)?;
            let report = scenario_mixed_input(&ensemble, spec.tolerance)?;
            let passed = report.all_passed();
            (ReportBody::Scenario(report), passed)
        }
        ScenarioId::Wigner => {
            let (alpha, beta) = normalized_amplitude_pair(&spec.params)?;
            let outcome = outcome_param(&spec.params)?;
            let report = scenario_wigner(alpha, beta, outcome.as_deref(), spec.tolerance)?;
            let passed = report.all_passed();
            (ReportBody::Scenario(report), passed)
        }
    };
    Ok(RunSummary {
        spec: spec.clone(),
        report,
        exit_status: if passed {
            ExitStatus::Pass
        } else {
            ExitStatus::Fail
        },
    })
}

/// The default spec each scenario runs with when no document is supplied.
pub fn canonical_spec(scenario: ScenarioId) -> ScenarioSpec {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut params = BTreeMap::new();
    match scenario {
        ScenarioId::Ambiguity => {
            params.insert("n_theta".into(), json!(50));
        }
        ScenarioId::Audit | ScenarioId::Fig3 => {}
        ScenarioId::Fig1 | ScenarioId::Fig2 => {
            params.insert("alpha".into(), json!([h, 0.0]));
            params.insert("beta".into(), json!([h, 0.0]));
        }
        ScenarioId::MixedInput => {
            params.insert("p_a".into(), json!(0.5));
            params.insert("p_b".into(), json!(0.5));
            params.insert("a".into(), json!([[h, 0.0], [h, 0.0]]));
            params.insert(
                "b".into(),
                json!([[0.3f64.sqrt(), 0.0], [0.7f64.sqrt(), 0.0]]),
            );
        }
        ScenarioId::Wigner => {
            params.insert("alpha".into(), json!([h, 0.0]));
            params.insert("beta".into(), json!([h, 0.0]));
            params.insert("outcome".into(), json!("1"));
        }
    }
    ScenarioSpec {
        scenario,
        params,
        tolerance: DEFAULT_CHECK_TOLERANCE,
        seed: DEFAULT_SEED,
        trials: DEFAULT_TRIALS,
    }
}

/// Runs every scenario with its canonical spec, applying any overrides.
pub fn run_all(
    tolerance: Option<f64>,
    seed: Option<u64>,
    trials: Option<usize>,
) -> Result<Vec<RunSummary>> {
    ScenarioId::ALL
        .into_iter()
        .map(|scenario| {
            let mut spec = canonical_spec(scenario);
            if let Some(tolerance) = tolerance {
                spec.tolerance = tolerance;
            }
            if let Some(seed) = seed {
                spec.seed = seed;
            }
            if let Some(trials) = trials {
                spec.trials = trials;
            }
            validate_spec(&spec)?;
            run(&spec)
        })
        .collect()
}

/// Output encoding for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Usage {
                message: format!("unknown format {other:?}; expected json or text"),
            }),
        }
    }
}

/// Serializes one run. JSON output is pretty-printed with a trailing
/// newline and is byte-for-byte stable for a given spec.
pub fn emit_report(summary: &RunSummary, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(summary)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Text => Ok(render_text(summary).into_bytes()),
    }
}

/// Serializes a full sweep: a JSON array, or one text verdict line per
/// scenario followed by an overall verdict.
pub fn emit_run_all(summaries: &[RunSummary], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(summaries)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Text => {
            let mut out = String::new();
            for summary in summaries {
                let detail = match &summary.report {
                    ReportBody::Scenario(report) => format!(
                        "{}/{} checks passed",
                        report.checks.iter().filter(|check| check.passed).count(),
                        report.checks.len()
                    ),
                    ReportBody::Audit(audit) => format!(
                        "max |gap| {:.3e} over {} trials",
                        audit.max_abs_gap, audit.trials
                    ),
                };
                out.push_str(&format!(
                    "{:<12} {}  ({detail})\n",
                    summary.spec.scenario.name(),
                    match summary.exit_status {
                        ExitStatus::Pass => "PASS",
                        ExitStatus::Fail => "FAIL",
                    },
                ));
            }
            let all_passed = summaries
                .iter()
                .all(|summary| summary.exit_status == ExitStatus::Pass);
            out.push_str(&format!(
                "overall: {} ({} scenarios)\n",
                if all_passed { "PASS" } else { "FAIL" },
                summaries.len()
            ));
            Ok(out.into_bytes())
        }
    }
}

fn render_text(summary: &RunSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario: {}\n", summary.spec.scenario));
    out.push_str(&format!(
        "tolerance: {:e}  seed: {}  trials: {}\n",
        summary.spec.tolerance, summary.spec.seed, summary.spec.trials
    ));
    match &summary.report {
        ReportBody::Scenario(report) => {
            if !report.parameters.is_empty() {
                out.push_str("parameters:\n");
                for (name, value) in &report.parameters {
                    out.push_str(&format!("  {name} = {value}\n"));
                }
            }
            out.push_str(&format!(
                "stages: {}\n",
                report
                    .stages
                    .iter()
                    .map(|stage| stage.label.as_str())
                    .collect::<Vec<_>>()
                    .join(" -> ")
            ));
            if !report.metrics.is_empty() {
                out.push_str("metrics:\n");
                for (name, value) in &report.metrics {
                    out.push_str(&format!("  {name} = {value:.15e}\n"));
                }
            }
            out.push_str("checks:\n");
            let width = report
                .checks
                .iter()
                .map(|check| check.description.chars().count())
                .max()
                .unwrap_or(0);
            for check in &report.checks {
                let padding = " ".repeat(width - check.description.chars().count());
                out.push_str(&format!(
                    "  {} {}{}  expected {:>13.6e}  actual {:>13.6e}  tolerance {:.1e}\n",
                    if check.passed { "✓" } else { "✗" },
                    check.description,
                    padding,
                    check.expected,
                    check.actual,
                    check.tolerance
                ));
            }
        }
        ReportBody::Audit(audit) => {
            out.push_str(&format!(
                "audit: {} trials, max |gap| = {:.3e}, worst observable on {}\n",
                audit.trials,
                audit.max_abs_gap,
                audit.worst_observable.subsystem().name
            ));
        }
    }
    out.push_str(&format!(
        "result: {}\n",
        match summary.exit_status {
            ExitStatus::Pass => "PASS",
            ExitStatus::Fail => "FAIL",
        }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_ids_are_alphabetical_and_round_trip() {
        let names: Vec<&str> = ScenarioId::ALL.iter().map(|id| id.name()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
        for id in ScenarioId::ALL {
            assert_eq!(id.name().parse::<ScenarioId>().unwrap(), id);
        }
        assert!(matches!(
            "fig9".parse::<ScenarioId>(),
            Err(Error::UnknownScenario { .. })
        ));
    }

    #[test]
    fn parse_spec_applies_defaults() {
        let spec = parse_spec(r#"{"scenario": "fig3"}"#).unwrap();
        assert_eq!(spec.scenario, ScenarioId::Fig3);
        assert_eq!(spec.tolerance, DEFAULT_CHECK_TOLERANCE);
        assert_eq!(spec.seed, DEFAULT_SEED);
        assert_eq!(spec.trials, DEFAULT_TRIALS);
    }

    #[test]
    fn parse_spec_rejects_unknown_fields_and_params() {
        assert!(parse_spec(r#"{"scenario": "fig3", "bogus": 1}"#).is_err());
        assert!(matches!(
            parse_spec(r#"{"scenario": "fig3", "params": {"alpha": 1.0}}"#),
            Err(Error::InvalidParam { .. })
        ));
        assert!(matches!(
            parse_spec(r#"{"scenario": "fig1", "params": {"alpha": [0.6, 0.0]}}"#),
            Err(Error::MissingParam { .. })
        ));
    }

    #[test]
    fn parse_spec_rejects_unnormalized_amplitudes() {
        // |α|² + |β|² = 2 must be caught at parse time, before any run
        assert!(matches!(
            parse_spec(r#"{"scenario": "fig1", "params": {"alpha": [1, 0], "beta": [1, 0]}}"#),
            Err(Error::NotNormalized { .. })
        ));
        // mixed_input weights that do not sum to one are equally rejected
        assert!(parse_spec(
            r#"{"scenario": "mixed_input",
                "params": {"p_a": 0.9, "p_b": 0.9, "a": [1, 0], "b": [0, 1]}}"#
        )
        .is_err());
    }

    #[test]
    fn parse_spec_rejects_bad_tolerances() {
        for text in [
            r#"{"scenario": "fig3", "tolerance": 0.0}"#,
            r#"{"scenario": "fig3", "tolerance": -1e-9}"#,
        ] {
            assert!(matches!(parse_spec(text), Err(Error::InvalidParam { .. })));
        }
    }

    #[test]
    fn complex_params_accept_numbers_and_pairs() {
        let spec =
            parse_spec(r#"{"scenario": "fig1", "params": {"alpha": 0.6, "beta": [0.0, 0.8]}}"#)
                .unwrap();
        let (alpha, beta) = normalized_amplitude_pair(&spec.params).unwrap();
        assert_eq!(alpha, Complex64::new(0.6, 0.0));
        assert_eq!(beta, Complex64::new(0.0, 0.8));
    }

    #[test]
    fn canonical_specs_all_pass() {
        for scenario in ScenarioId::ALL {
            let spec = canonical_spec(scenario);
            validate_spec(&spec).unwrap();
            let summary = run(&spec).unwrap();
            assert_eq!(
                summary.exit_status,
                ExitStatus::Pass,
                "canonical {scenario} failed"
            );
        }
    }

    #[test]
    fn run_all_covers_every_scenario_in_order() {
        let summaries = run_all(None, None, Some(50)).unwrap();
        let order: Vec<ScenarioId> = summaries.iter().map(|s| s.spec.scenario).collect();
        assert_eq!(order.as_slice(), &ScenarioId::ALL);
        assert!(summaries.iter().all(|s| s.exit_status == ExitStatus::Pass));
    }

    #[test]
    fn json_output_is_deterministic() {
        let spec = canonical_spec(ScenarioId::Fig1);
        let first = emit_report(&run(&spec).unwrap(), Format::Json).unwrap();
        let second = emit_report(&run(&spec).unwrap(), Format::Json).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.last(), Some(&b'\n'));
    }

    #[test]
    fn audit_json_is_seeded_and_deterministic() {
        let mut spec = canonical_spec(ScenarioId::Audit);
        spec.trials = 25;
        let first = emit_report(&run(&spec).unwrap(), Format::Json).unwrap();
        let second = emit_report(&run(&spec).unwrap(), Format::Json).unwrap();
        assert_eq!(first, second);

        spec.seed = 7;
        let reseeded = emit_report(&run(&spec).unwrap(), Format::Json).unwrap();
        assert_ne!(first, reseeded);
    }

    #[test]
    fn text_output_carries_verdicts() {
        let spec = canonical_spec(ScenarioId::Fig3);
        let text =
            String::from_utf8(emit_report(&run(&spec).unwrap(), Format::Text).unwrap()).unwrap();
        assert!(text.contains("scenario: fig3"));
        assert!(text.contains("✓"));
        assert!(!text.contains("✗"));
        assert!(text.trim_end().ends_with("result: PASS"));
        // every recorded check appears as its own line
        let check_lines = text.lines().filter(|line| line.contains("✓")).count();
        let summary = run(&spec).unwrap();
        let ReportBody::Scenario(report) = &summary.report else {
            panic!("fig3 emits a scenario report");
        };
        assert_eq!(check_lines, report.checks.len());
    }

    #[test]
    fn impossible_tolerance_fails_the_run_but_not_the_process() {
        let mut spec = canonical_spec(ScenarioId::Audit);
        spec.trials = 10;
        spec.tolerance = 1e-300;
        // randomized-audit gaps are tiny but nonzero, so this must FAIL
        let summary = run(&spec).unwrap();
        assert_eq!(summary.exit_status, ExitStatus::Fail);
        let text = String::from_utf8(emit_report(&summary, Format::Text).unwrap()).unwrap();
        assert!(text.trim_end().ends_with("result: FAIL"));
    }

    #[test]
    fn run_all_emission_has_an_overall_line() {
        let summaries = run_all(None, None, Some(25)).unwrap();
        let text = String::from_utf8(emit_run_all(&summaries, Format::Text).unwrap()).unwrap();
        // one verdict line per scenario plus the overall line
        assert_eq!(text.lines().count(), 8);
        for id in ScenarioId::ALL {
            assert!(text.contains(id.name()), "missing line for {id}");
        }
        assert!(text.contains("overall: PASS (7 scenarios)"));
        let json = emit_run_all(&summaries, Format::Json).unwrap();
        let value: Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(value.as_array().unwrap().len(), 7);
    }

    #[test]
    fn specs_serialize_round_trip_through_their_own_json() {
        let spec = canonical_spec(ScenarioId::Wigner);
        let text = serde_json::to_string(&spec).unwrap();
        let reparsed = parse_spec(&text).unwrap();
        assert_eq!(reparsed.scenario, spec.scenario);
        assert_eq!(reparsed.params, spec.params);
        assert_eq!(reparsed.tolerance, spec.tolerance);
    }
}
