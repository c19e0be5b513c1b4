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

//! Dense complex linear algebra for small qubit registers.
//!
//! Everything in scope lives on at most five qubits (matrix dimension 32), so
//! storage is dense and algorithms favor transparency over asymptotics. The
//! Hermitian eigensolver is a cyclic complex Jacobi iteration, which is
//! unconditionally convergent and accurate to machine precision at these
//! sizes.

mod eigen;
mod matrix;
mod pauli;

pub use eigen::{hermitian_eigen, hermitian_eigen_with_tol, trace_norm, HermitianEigen};
pub use matrix::{anticommutator, slot_swap, ComplexMatrix};
pub use pauli::{Pauli, PauliString};
