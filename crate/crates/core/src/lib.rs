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

//! `qcausal` — quantum causal inference from noninvasive two-time measurements.
//!
//! An observer records binary coarse-grained Pauli measurements on a small
//! qubit register at two times and wants to know which causal structure
//! produced the data: a common cause (correlated initial state), a channel
//! from A to B, a channel from B to A, either direction, or a mixture.
//!
//! The library provides the full analysis pipeline:
//!
//! 1. [`pdm::generate_table`] — two-time Pauli correlators for a configured
//!    scenario, either in closed form or gate-by-gate through a probe-qubit
//!    scattering circuit ([`scattering`]).
//! 2. [`pdm::build_pdm`] — assemble the pseudo-density matrix (PDM), a
//!    Hermitian unit-trace matrix over the two time slots that may have
//!    negative eigenvalues.
//! 3. [`pdm::negativity`] — the trace-norm negativity `f(O) = ‖O‖₁ − Tr O`,
//!    which is zero exactly when `O` is positive semidefinite.
//! 4. [`choi::extract_choi`] — recover the channel's Choi matrix from the PDM
//!    for both temporal orderings by solving an anticommutator equation.
//! 5. [`choi::classify`] — threshold the three negativities and match the
//!    unique row of the causal decision table.
//!
//! Everything is dense linear algebra over registers of at most a few qubits;
//! all values are immutable after construction and all operations are pure.

pub mod choi;
pub mod error;
pub mod linalg;
pub mod model;
pub mod pdm;
pub mod random;
pub mod scattering;
pub mod tolerance;

pub use num_complex::Complex64;

pub use choi::{
    classify, extract_choi, extract_choi_with, infer_causal_structure, infer_causal_structure_with,
    CausalTag, CausalVerdict, ChoiReconstruction,
};
pub use error::{Error, Result};
pub use linalg::{anticommutator, hermitian_eigen, slot_swap, trace_norm, ComplexMatrix, HermitianEigen, Pauli, PauliString};
pub use model::{
    lambda_plus_state, partial_swap_unitary, Channel, ChannelSpec, DensityMatrix, Dilation, OutputSlot,
    ResolvedScenario, ScenarioConfig, ScenarioKind, StateSpec,
};
pub use pdm::{
    build_pdm, build_pdm_with, generate_table, generate_table_sampled, marginal_at_time,
    marginal_at_time_with, negativity, reduce_pdm, time_reverse, two_time_expectation, ExpectationTable,
    Pdm, TimeSlot,
};
pub use scattering::{controlled_pauli, generate_table_scattering, scattering_expectation, ScatteringCircuit};
pub use tolerance::Tolerances;
