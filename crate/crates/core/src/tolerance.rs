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

//! Centralized numerical tolerances.
//!
//! Two tiers exist: [`Tolerances::exact`] for simulated data, which is exact
//! up to floating-point rounding, and [`Tolerances::experimental`] for tables
//! imported from lab measurements, which carry statistical and systematic
//! noise. Every validation threshold in the crate is drawn from one of these
//! records so that a pipeline runs under a single consistent tier.

/// Numerical tolerance configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum accepted Hermiticity residual `max |a_ij − conj(a_ji)|`.
    pub hermiticity: f64,
    /// Maximum accepted deviation of a density-matrix trace from 1.
    pub state_trace: f64,
    /// How negative a state (or marginal) eigenvalue may be.
    pub state_psd: f64,
    /// Maximum accepted deviation of a PDM trace from 1.
    pub pdm_trace: f64,
    /// Maximum accepted deviation of the (identity, identity) table entry from 1.
    pub table_normalization: f64,
    /// Entrywise tolerance for matrix equality checks.
    pub equality: f64,
    /// Support cutoff for eigenvalue-pair sums in the anticommutator solve.
    pub rank: f64,
    /// Verdict threshold ε: negativities at or below ε count as zero.
    pub epsilon: f64,
}

impl Tolerances {
    /// Tier for simulated (closed-form or statevector) data.
    pub const fn exact() -> Self {
        Tolerances {
            hermiticity: 1e-8,
            state_trace: 1e-10,
            state_psd: 1e-10,
            pdm_trace: 1e-9,
            table_normalization: 1e-10,
            equality: 1e-10,
            rank: 1e-10,
            epsilon: 1e-7,
        }
    }

    /// Tier for tables imported from laboratory data.
    ///
    /// The verdict threshold must still be chosen explicitly by the caller;
    /// 0.02 is a reasonable starting point for percent-level correlator noise.
    pub const fn experimental() -> Self {
        Tolerances {
            hermiticity: 1e-3,
            state_trace: 1e-3,
            state_psd: 1e-3,
            pdm_trace: 1e-3,
            table_normalization: 1e-3,
            equality: 1e-3,
            rank: 1e-6,
            epsilon: 0.02,
        }
    }

    /// Replace the verdict threshold.
    pub const fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::exact()
    }
}
