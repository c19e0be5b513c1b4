// Copyright 2026 The qcausal Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! JSON experiment configuration: one file per reproducible run.
//!
//! Angles are written in units of π (`theta_over_pi = 0.375` means 3π/8) so
//! figures can be transcribed without decimal-π rounding.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qcausal::{
    Channel, ChannelSpec, Complex64, ComplexMatrix, DensityMatrix, ScenarioConfig, StateSpec, Tolerances,
};

use crate::harness::{HarnessError, RunPlan, SweepParameter, SweepSpec};

/// Top-level config file.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub pathway: Pathway,
    #[serde(default)]
    pub tolerances: ToleranceSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: KindTag,
    #[serde(default)]
    pub initial: Option<StateSpecDe>,
    #[serde(default)]
    pub channel: Option<ChannelSpecDe>,
    #[serde(default)]
    pub joint: Option<StateSpecDe>,
    /// Mixture weight on the cause-effect component.
    #[serde(default)]
    pub weight: Option<f64>,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub theta_over_pi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    CauseEffect,
    CommonCause,
    Mixture,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpecDe {
    /// `(1−λ)·I/2 + λ·|+⟩⟨+|` at the scenario's λ.
    LambdaPlus,
    MaximallyMixed { qubits: usize },
    Computational { bits: String },
    Plus,
    BellPhiPlus,
    Product { factors: Vec<StateSpecDe> },
    /// Explicit density matrix, row-major real and imaginary parts.
    Matrix { re: Vec<Vec<f64>>, #[serde(default)] im: Option<Vec<Vec<f64>>> },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpecDe {
    Identity { qubits: usize },
    MeasurePrepare,
    PartialSwap {
        #[serde(default)]
        ancilla: Option<Box<StateSpecDe>>,
    },
    Constant { state: Box<StateSpecDe> },
    /// Explicit Kraus operators.
    Kraus { ops: Vec<MatrixDe> },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDe {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pathway {
    #[default]
    ClosedForm,
    Scattering,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: ParamTag,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamTag {
    Lambda,
    /// Swept in units of π.
    Theta,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    /// Verdict threshold ε.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub tier: Tier,
}

fn default_epsilon() -> f64 {
    1e-7
}

impl Default for ToleranceSection {
    fn default() -> Self {
        ToleranceSection { epsilon: default_epsilon(), tier: Tier::Exact }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    #[default]
    Exact,
    Experimental,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub report: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
    }

    /// Validate and resolve into an executable plan.
    pub fn into_plan(self) -> Result<RunPlan, HarnessError> {
        let scenario = build_scenario(&self.scenario)?;
        // Resolving once up front surfaces contradictions (dimension
        // mismatches, out-of-range parameters) as config errors.
        scenario
            .resolve()
            .map_err(|e| HarnessError::Config(format!("scenario: {e}")))?;

        let sweep = match &self.sweep {
            Some(s) => SweepSpec::new(
                match s.parameter {
                    ParamTag::Lambda => SweepParameter::Lambda,
                    ParamTag::Theta => SweepParameter::Theta,
                },
                s.start,
                s.stop,
                s.steps,
            )?,
            None => {
                // A config without a sweep runs the scenario at its fixed
                // parameters as a single-point "sweep" over λ.
                SweepSpec::new(SweepParameter::Lambda, self.scenario.lambda, self.scenario.lambda, 1)?
            }
        };

        if self.pathway == Pathway::Scattering && self.scenario.kind != KindTag::CauseEffect {
            return Err(HarnessError::Config(
                "the scattering pathway simulates cause-effect scenarios only".into(),
            ));
        }

        let tolerances = match self.tolerances.tier {
            Tier::Exact => Tolerances::exact(),
            Tier::Experimental => Tolerances::experimental(),
        }
        .with_epsilon(self.tolerances.epsilon);
        if self.tolerances.epsilon < 0.0 {
            return Err(HarnessError::Config(format!(
                "epsilon must be nonnegative, got {}",
                self.tolerances.epsilon
            )));
        }

        Ok(RunPlan {
            scenario,
            sweep,
            pathway: self.pathway,
            tolerances,
            csv_path: self.output.csv,
            report_path: self.output.report,
        })
    }
}

fn build_scenario(section: &ScenarioSection) -> Result<ScenarioConfig, HarnessError> {
    let config = match section.kind {
        KindTag::CauseEffect => {
            let initial = section
                .initial
                .as_ref()
                .ok_or_else(|| HarnessError::Config("cause_effect scenario needs `initial`".into()))?;
            let channel = section
                .channel
                .as_ref()
                .ok_or_else(|| HarnessError::Config("cause_effect scenario needs `channel`".into()))?;
            ScenarioConfig::cause_effect(build_state(initial)?, build_channel(channel)?)
        }
        KindTag::CommonCause => {
            let joint = section
                .joint
                .as_ref()
                .ok_or_else(|| HarnessError::Config("common_cause scenario needs `joint`".into()))?;
            ScenarioConfig::common_cause(build_state(joint)?)
        }
        KindTag::Mixture => {
            let weight = section
                .weight
                .ok_or_else(|| HarnessError::Config("mixture scenario needs `weight`".into()))?;
            let initial = section
                .initial
                .as_ref()
                .ok_or_else(|| HarnessError::Config("mixture scenario needs `initial`".into()))?;
            let channel = section
                .channel
                .as_ref()
                .ok_or_else(|| HarnessError::Config("mixture scenario needs `channel`".into()))?;
            let joint = section
                .joint
                .as_ref()
                .ok_or_else(|| HarnessError::Config("mixture scenario needs `joint`".into()))?;
            ScenarioConfig::mixture(weight, build_state(initial)?, build_channel(channel)?, build_state(joint)?)
        }
    };
    Ok(config
        .with_lambda(section.lambda)
        .with_theta(section.theta_over_pi * std::f64::consts::PI))
}

fn build_state(spec: &StateSpecDe) -> Result<StateSpec, HarnessError> {
    Ok(match spec {
        StateSpecDe::LambdaPlus => StateSpec::LambdaPlus,
        StateSpecDe::MaximallyMixed { qubits } => StateSpec::MaximallyMixed { qubits: *qubits },
        StateSpecDe::Computational { bits } => StateSpec::Computational { bits: bits.clone() },
        StateSpecDe::Plus => StateSpec::Plus,
        StateSpecDe::BellPhiPlus => StateSpec::BellPhiPlus,
        StateSpecDe::Product { factors } => {
            let mut out = Vec::with_capacity(factors.len());
            for f in factors {
                out.push(build_state(f)?);
            }
            StateSpec::Product(out)
        }
        StateSpecDe::Matrix { re, im } => {
            let matrix = build_matrix(re, im.as_ref())?;
            let state = DensityMatrix::new(matrix)
                .map_err(|e| HarnessError::Config(format!("explicit state: {e}")))?;
            StateSpec::Explicit(state)
        }
    })
}

fn build_channel(spec: &ChannelSpecDe) -> Result<ChannelSpec, HarnessError> {
    Ok(match spec {
        ChannelSpecDe::Identity { qubits } => ChannelSpec::Identity { qubits: *qubits },
        ChannelSpecDe::MeasurePrepare => ChannelSpec::MeasurePrepare,
        ChannelSpecDe::PartialSwap { ancilla } => ChannelSpec::PartialSwap {
            ancilla: match ancilla {
                Some(a) => Some(Box::new(build_state(a)?)),
                None => None,
            },
        },
        ChannelSpecDe::Constant { state } => ChannelSpec::Constant { state: Box::new(build_state(state)?) },
        ChannelSpecDe::Kraus { ops } => {
            let mut kraus = Vec::with_capacity(ops.len());
            for op in ops {
                kraus.push(build_matrix(&op.re, op.im.as_ref())?);
            }
            let channel = Channel::from_kraus(kraus)
                .map_err(|e| HarnessError::Config(format!("kraus channel: {e}")))?;
            ChannelSpec::Explicit(channel)
        }
    })
}

fn build_matrix(re: &[Vec<f64>], im: Option<&Vec<Vec<f64>>>) -> Result<ComplexMatrix, HarnessError> {
    let dim = re.len();
    let zero_rows;
    let im = match im {
        Some(rows) => rows,
        None => {
            zero_rows = vec![vec![0.0; dim]; dim];
            &zero_rows
        }
    };
    if im.len() != dim || re.iter().any(|r| r.len() != dim) || im.iter().any(|r| r.len() != dim) {
        return Err(HarnessError::Config(format!(
            "matrix must be square with matching re/im parts (got {dim} rows)"
        )));
    }
    let rows: Vec<Vec<Complex64>> = re
        .iter()
        .zip(im)
        .map(|(rr, ir)| rr.iter().zip(ir).map(|(&a, &b)| Complex64::new(a, b)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| HarnessError::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DECOHERING: &str = r#"{
        "scenario": {
            "kind": "cause_effect",
            "initial": {"type": "lambda_plus"},
            "channel": {"type": "measure_prepare"},
            "lambda": 0.7
        },
        "sweep": {"parameter": "lambda", "start": 0.0, "stop": 1.0, "steps": 11},
        "output": {"csv": "out.csv"}
    }"#;

    #[test]
    fn parses_decohering_config() {
        let cfg: ConfigFile = serde_json::from_str(DECOHERING).unwrap();
        let plan = cfg.into_plan().unwrap();
        assert_eq!(plan.sweep.steps, 11);
        assert_eq!(plan.pathway, Pathway::ClosedForm);
        assert!((plan.tolerances.epsilon - 1e-7).abs() < 1e-20);
    }

    #[test]
    fn theta_is_in_pi_units() {
        let cfg: ConfigFile = serde_json::from_str(
            r#"{
            "scenario": {
                "kind": "cause_effect",
                "initial": {"type": "lambda_plus"},
                "channel": {"type": "partial_swap"},
                "lambda": 0.7,
                "theta_over_pi": 0.375
            }
        }"#,
        )
        .unwrap();
        let plan = cfg.into_plan().unwrap();
        assert!((plan.scenario.theta - 3.0 * std::f64::consts::PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = r#"{"scenario": {"kind": "cause_effect", "bogus": 1}}"#;
        assert!(serde_json::from_str::<ConfigFile>(bad).is_err());
    }

    #[test]
    fn missing_sections_are_config_errors() {
        let cfg: ConfigFile = serde_json::from_str(
            r#"{"scenario": {"kind": "cause_effect", "initial": {"type": "lambda_plus"}}}"#,
        )
        .unwrap();
        assert!(matches!(cfg.into_plan(), Err(HarnessError::Config(_))));

        let cfg: ConfigFile =
            serde_json::from_str(r#"{"scenario": {"kind": "common_cause"}}"#).unwrap();
        assert!(matches!(cfg.into_plan(), Err(HarnessError::Config(_))));
    }

    #[test]
    fn scattering_requires_cause_effect() {
        let cfg: ConfigFile = serde_json::from_str(
            r#"{
            "scenario": {"kind": "common_cause", "joint": {"type": "bell_phi_plus"}},
            "pathway": "scattering"
        }"#,
        )
        .unwrap();
        assert!(matches!(cfg.into_plan(), Err(HarnessError::Config(_))));
    }

    #[test]
    fn explicit_matrix_state_parses() {
        let cfg: ConfigFile = serde_json::from_str(
            r#"{
            "scenario": {
                "kind": "common_cause",
                "joint": {"type": "matrix", "re": [
                    [0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]
                ]}
            }
        }"#,
        )
        .unwrap();
        let plan = cfg.into_plan().unwrap();
        assert_eq!(plan.scenario.slot_qubits().unwrap(), 1);
    }

    #[test]
    fn bad_explicit_state_is_config_error() {
        let cfg: ConfigFile = serde_json::from_str(
            r#"{
            "scenario": {
                "kind": "common_cause",
                "joint": {"type": "matrix", "re": [
                    [1.5, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]
                ]}
            }
        }"#,
        )
        .unwrap();
        assert!(matches!(cfg.into_plan(), Err(HarnessError::Config(_))));
    }
}
