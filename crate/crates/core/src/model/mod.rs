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

//! States, channels, and the two experimental scenario families: the partial
//! swap (unitary interaction with a fresh ancilla) and the fully decohering
//! measure-and-prepare channel.

mod channel;
mod scenario;
mod state;

pub use channel::{partial_swap_unitary, Channel, Dilation, OutputSlot};
pub use scenario::{ChannelSpec, ResolvedScenario, ScenarioConfig, ScenarioKind, StateSpec};
pub use state::{lambda_plus_state, DensityMatrix};
