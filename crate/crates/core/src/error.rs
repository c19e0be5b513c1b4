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

//! Error type shared by the whole crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.6e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace {trace:.12} deviates from 1 by more than {tol:.3e}")]
    NotUnitTrace { trace: f64, tol: f64 },

    #[error("matrix is not unitary: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("Kraus completeness violated: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    KrausIncomplete { residual: f64, tol: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange { name: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("expectation table incomplete: {missing} of {total} entries missing (first missing: ({first_i1}, {first_i2}))")]
    IncompleteTable { missing: usize, total: usize, first_i1: String, first_i2: String },

    #[error("table normalization violated: (identity, identity) entry is {value} (expected 1 within {tol:.3e})")]
    BadNormalization { value: f64, tol: f64 },

    #[error("correlator ({i1}, {i2}) = {value} exceeds magnitude 1 + {tol:.3e}")]
    CorrelatorOutOfRange { i1: String, i2: String, value: f64, tol: f64 },

    #[error("invalid Pauli label {0:?} (expected characters from I, X, Y, Z)")]
    BadPauliLabel(String),

    #[error("invalid subsystem selection: {0}")]
    BadSubsystem(String),

    #[error("time reversal requires equal slot sizes, got {n1} and {n2} qubits")]
    UnequalSlots { n1: usize, n2: usize },

    #[error("anticommutator equation has empty support (state marginal vanishes)")]
    EmptySupport,

    #[error("invalid scenario: {0}")]
    BadScenario(String),

    #[error("csv parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Attach a path to a raw I/O error.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
