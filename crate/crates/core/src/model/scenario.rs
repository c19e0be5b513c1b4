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

//! Scenario configuration: which causal structure generates the data, from
//! which initial state, through which channel, at which sweep parameters.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::channel::Channel;
use crate::model::state::{lambda_plus_state, DensityMatrix};

/// Symbolic state specification, resolved against the scenario's λ.
#[derive(Debug, Clone)]
pub enum StateSpec {
    /// `(1−λ)·I/2 + λ·|+⟩⟨+|` using the scenario's polarization parameter.
    LambdaPlus,
    /// `I/2ⁿ`.
    MaximallyMixed { qubits: usize },
    /// Computational basis state from a bit string such as `"01"`.
    Computational { bits: String },
    /// `|+⟩⟨+|`.
    Plus,
    /// The two-qubit Bell state `(|00⟩ + |11⟩)/√2`.
    BellPhiPlus,
    /// Tensor product of the factors, first factor most significant.
    Product(Vec<StateSpec>),
    /// An explicit, already-validated state.
    Explicit(DensityMatrix),
}

impl StateSpec {
    pub fn resolve(&self, lambda: f64) -> Result<DensityMatrix> {
        match self {
            StateSpec::LambdaPlus => lambda_plus_state(lambda),
            StateSpec::MaximallyMixed { qubits } => {
                if *qubits == 0 {
                    return Err(Error::BadScenario("maximally mixed state needs at least one qubit".into()));
                }
                Ok(DensityMatrix::maximally_mixed(*qubits))
            }
            StateSpec::Computational { bits } => DensityMatrix::computational(bits),
            StateSpec::Plus => Ok(DensityMatrix::plus()),
            StateSpec::BellPhiPlus => Ok(DensityMatrix::bell_phi_plus()),
            StateSpec::Product(factors) => {
                let mut resolved = Vec::with_capacity(factors.len());
                for f in factors {
                    resolved.push(f.resolve(lambda)?);
                }
                resolved
                    .into_iter()
                    .reduce(|acc, s| acc.tensor(&s))
                    .ok_or_else(|| Error::BadScenario("empty product state".into()))
            }
            StateSpec::Explicit(s) => Ok(s.clone()),
        }
    }
}

/// Symbolic channel specification, resolved against the scenario's λ and θ.
#[derive(Debug, Clone)]
pub enum ChannelSpec {
    Identity { qubits: usize },
    /// The fully decohering measure-and-prepare channel.
    MeasurePrepare,
    /// Partial swap at the scenario's θ; the ancilla defaults to |0⟩⟨0|.
    PartialSwap { ancilla: Option<Box<StateSpec>> },
    /// The constant channel `ρ ↦ ω`.
    Constant { state: Box<StateSpec> },
    /// An explicit, already-validated channel.
    Explicit(Channel),
}

impl ChannelSpec {
    pub fn resolve(&self, lambda: f64, theta: f64) -> Result<Channel> {
        match self {
            ChannelSpec::Identity { qubits } => {
                if *qubits == 0 {
                    return Err(Error::BadScenario("identity channel needs at least one qubit".into()));
                }
                Ok(Channel::identity(*qubits))
            }
            ChannelSpec::MeasurePrepare => Ok(Channel::measure_prepare()),
            ChannelSpec::PartialSwap { ancilla } => {
                let anc = match ancilla {
                    Some(spec) => spec.resolve(lambda)?,
                    None => DensityMatrix::computational("0")?,
                };
                Channel::partial_swap(theta, anc)
            }
            ChannelSpec::Constant { state } => Ok(Channel::constant(state.resolve(lambda)?)),
            ChannelSpec::Explicit(c) => Ok(c.clone()),
        }
    }
}

/// The causal structure hypothesis generating the data.
#[derive(Debug, Clone)]
pub enum ScenarioKind {
    /// The system observed at t₁ feeds a channel whose output is observed at t₂.
    CauseEffect { initial: StateSpec, channel: ChannelSpec },
    /// Both observations probe one joint state; correlations are initial only.
    CommonCause { joint: StateSpec },
    /// Convex mixture: `weight` on the cause-effect data, the rest on the
    /// common-cause data.
    Mixture { weight: f64, initial: StateSpec, channel: ChannelSpec, joint: StateSpec },
}

/// A fully parameterized experiment description.
///
/// `lambda` is the polarization parameter of the initial state family and
/// `theta` the channel interaction angle (radians in `[0, π]`); both are
/// carried here so parameter sweeps only rewrite one field.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub lambda: f64,
    pub theta: f64,
}

/// A scenario with all specifications resolved to concrete states/channels.
#[derive(Debug, Clone)]
pub enum ResolvedScenario {
    CauseEffect { initial: DensityMatrix, channel: Channel },
    CommonCause { joint: DensityMatrix },
    Mixture { weight: f64, initial: DensityMatrix, channel: Channel, joint: DensityMatrix },
}

impl ScenarioConfig {
    pub fn cause_effect(initial: StateSpec, channel: ChannelSpec) -> Self {
        ScenarioConfig { kind: ScenarioKind::CauseEffect { initial, channel }, lambda: 0.0, theta: 0.0 }
    }

    pub fn common_cause(joint: StateSpec) -> Self {
        ScenarioConfig { kind: ScenarioKind::CommonCause { joint }, lambda: 0.0, theta: 0.0 }
    }

    pub fn mixture(weight: f64, initial: StateSpec, channel: ChannelSpec, joint: StateSpec) -> Self {
        ScenarioConfig {
            kind: ScenarioKind::Mixture { weight, initial, channel, joint },
            lambda: 0.0,
            theta: 0.0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    /// Resolve all specifications and check consistency.
    pub fn resolve(&self) -> Result<ResolvedScenario> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::OutOfRange { name: "lambda", value: self.lambda, lo: 0.0, hi: 1.0 });
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::OutOfRange { name: "theta", value: self.theta, lo: 0.0, hi: PI });
        }
        match &self.kind {
            ScenarioKind::CauseEffect { initial, channel } => {
                let initial = initial.resolve(self.lambda)?;
                let channel = channel.resolve(self.lambda, self.theta)?;
                check_cause_effect(&initial, &channel)?;
                Ok(ResolvedScenario::CauseEffect { initial, channel })
            }
            ScenarioKind::CommonCause { joint } => {
                let joint = joint.resolve(self.lambda)?;
                if joint.qubits() % 2 != 0 {
                    return Err(Error::BadScenario(format!(
                        "common-cause joint state must cover two equal slots, got {} qubits",
                        joint.qubits()
                    )));
                }
                Ok(ResolvedScenario::CommonCause { joint })
            }
            ScenarioKind::Mixture { weight, initial, channel, joint } => {
                if !(0.0..=1.0).contains(weight) {
                    return Err(Error::OutOfRange { name: "weight", value: *weight, lo: 0.0, hi: 1.0 });
                }
                let initial = initial.resolve(self.lambda)?;
                let channel = channel.resolve(self.lambda, self.theta)?;
                check_cause_effect(&initial, &channel)?;
                let joint = joint.resolve(self.lambda)?;
                if joint.qubits() != 2 * initial.qubits() {
                    return Err(Error::BadScenario(format!(
                        "mixture joint state has {} qubits, expected {}",
                        joint.qubits(),
                        2 * initial.qubits()
                    )));
                }
                Ok(ResolvedScenario::Mixture { weight: *weight, initial, channel, joint })
            }
        }
    }

    /// Qubits per time slot for the resolved scenario.
    pub fn slot_qubits(&self) -> Result<usize> {
        Ok(match self.resolve()? {
            ResolvedScenario::CauseEffect { initial, .. } => initial.qubits(),
            ResolvedScenario::CommonCause { joint } => joint.qubits() / 2,
            ResolvedScenario::Mixture { initial, .. } => initial.qubits(),
        })
    }
}

fn check_cause_effect(initial: &DensityMatrix, channel: &Channel) -> Result<()> {
    if channel.qubits_in() != initial.qubits() || channel.qubits_out() != initial.qubits() {
        return Err(Error::BadScenario(format!(
            "channel acts on {} → {} qubits but the system has {}",
            channel.qubits_in(),
            channel.qubits_out(),
            initial.qubits()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decohering_scenario_resolves() {
        let cfg = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
            .with_lambda(0.7);
        match cfg.resolve().unwrap() {
            ResolvedScenario::CauseEffect { initial, channel } => {
                assert_eq!(initial.qubits(), 1);
                assert_eq!(channel.qubits_in(), 1);
                assert!((initial.matrix().get(0, 1).re - 0.35).abs() < 1e-15);
            }
            _ => panic!("wrong kind"),
        }
        assert_eq!(cfg.slot_qubits().unwrap(), 1);
    }

    #[test]
    fn partial_swap_defaults_to_ground_ancilla() {
        let cfg = ScenarioConfig::cause_effect(
            StateSpec::LambdaPlus,
            ChannelSpec::PartialSwap { ancilla: None },
        )
        .with_lambda(0.7)
        .with_theta(std::f64::consts::FRAC_PI_2);
        match cfg.resolve().unwrap() {
            ResolvedScenario::CauseEffect { channel, .. } => {
                let dil = channel.dilation().expect("dilation preserved");
                let zero = DensityMatrix::computational("0").unwrap();
                assert!(dil.ancilla.matrix().approx_eq(zero.matrix(), 0.0));
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn parameter_ranges_enforced() {
        let cfg = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
            .with_lambda(1.2);
        assert!(cfg.resolve().is_err());
        let cfg = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
            .with_theta(4.0);
        assert!(cfg.resolve().is_err());
        let cfg = ScenarioConfig::mixture(
            1.5,
            StateSpec::LambdaPlus,
            ChannelSpec::MeasurePrepare,
            StateSpec::BellPhiPlus,
        );
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn channel_dim_mismatch_rejected() {
        let cfg = ScenarioConfig::cause_effect(
            StateSpec::Product(vec![StateSpec::LambdaPlus, StateSpec::Plus]),
            ChannelSpec::MeasurePrepare,
        );
        assert!(matches!(cfg.resolve(), Err(Error::BadScenario(_))));
    }

    #[test]
    fn odd_joint_state_rejected() {
        let cfg = ScenarioConfig::common_cause(StateSpec::Plus);
        assert!(cfg.resolve().is_err());
    }
}
