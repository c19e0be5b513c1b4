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

//! Pseudo-density matrices over two time slots.
//!
//! The two-time PDM for `n` qubits is assembled from coarse-grained Pauli
//! correlators as
//!
//! ```text
//! R = (1/2^{2n}) Σ_{i₁,i₂} ⟨σ_{i₁}, σ_{i₂}⟩ σ_{i₁} ⊗ σ_{i₂}
//! ```
//!
//! It is Hermitian with unit trace but, unlike a density matrix, may have
//! negative eigenvalues; the trace-norm negativity [`negativity`] witnesses
//! temporal correlations.

mod table;

use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::linalg::{anticommutator, hermitian_eigen, slot_swap, trace_norm, ComplexMatrix, PauliString};
use crate::model::{Channel, DensityMatrix, ResolvedScenario, ScenarioConfig};
use crate::tolerance::Tolerances;

pub use table::{ExpectationTable, TABLE_CSV_HEADER};

/// One of the two time slots of a PDM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeSlot {
    First,
    Second,
}

/// A two-time pseudo-density matrix.
///
/// Hermitian with unit trace (within the construction tier), not necessarily
/// positive semidefinite. Slots may end up with different qubit counts after
/// asymmetric reduction; time reversal requires them equal.
#[derive(Debug, Clone)]
pub struct Pdm {
    matrix: ComplexMatrix,
    n1: usize,
    n2: usize,
    labels: (String, String),
}

impl Pdm {
    /// Validate a matrix as a PDM under the exact tier.
    pub fn new(matrix: ComplexMatrix, n1: usize, n2: usize) -> Result<Self> {
        Self::new_with(matrix, n1, n2, &Tolerances::exact())
    }

    /// Validate a matrix as a PDM under an explicit tier; slots keep the
    /// default labels `t1`, `t2`.
    pub fn new_with(matrix: ComplexMatrix, n1: usize, n2: usize, tol: &Tolerances) -> Result<Self> {
        Self::with_labels(matrix, n1, n2, ("t1".into(), "t2".into()), tol)
    }

    fn with_labels(
        matrix: ComplexMatrix,
        n1: usize,
        n2: usize,
        labels: (String, String),
        tol: &Tolerances,
    ) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::BadSubsystem("PDM slots need at least one qubit".into()));
        }
        if matrix.dim() != 1 << (n1 + n2) {
            return Err(Error::DimMismatch(format!(
                "PDM matrix dim {} vs slots of {} and {} qubits",
                matrix.dim(),
                n1,
                n2
            )));
        }
        let residual = matrix.hermiticity_residual();
        if residual > tol.hermiticity {
            return Err(Error::NotHermitian { residual, tol: tol.hermiticity });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol.pdm_trace {
            return Err(Error::NotUnitTrace { trace, tol: tol.pdm_trace });
        }
        Ok(Pdm { matrix, n1, n2, labels })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Qubits in the first time slot.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Qubits in the second time slot.
    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Ordered pair of time tags.
    pub fn labels(&self) -> (&str, &str) {
        (&self.labels.0, &self.labels.1)
    }

    /// Trace-norm negativity of the PDM matrix.
    pub fn negativity(&self) -> f64 {
        negativity(&self.matrix)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        // PDMs are Hermitian by construction (real correlators, Hermitian
        // basis), so the solver cannot reject them.
        hermitian_eigen(&self.matrix).expect("PDM is Hermitian").values
    }
}

/// The coarse-grained two-time correlator
/// `⟨σ₁, σ₂⟩ = Tr[σ₂ · 𝓔({σ₁, ρ}/2)]`.
///
/// A binary coarse-grained measurement of `σ₁` leaves the outcome-weighted
/// ensemble `Σ_a a Π_a ρ Π_a = {σ₁, ρ}/2`; propagating it through the channel
/// and taking the `σ₂` expectation gives the product-of-outcomes average.
pub fn two_time_expectation(
    rho: &DensityMatrix,
    channel: &Channel,
    sigma1: &PauliString,
    sigma2: &PauliString,
) -> Result<f64> {
    if sigma1.n() != rho.qubits() || channel.qubits_in() != rho.qubits() {
        return Err(Error::DimMismatch(format!(
            "slot-1 observable on {} qubits, channel input {}, state {}",
            sigma1.n(),
            channel.qubits_in(),
            rho.qubits()
        )));
    }
    if sigma2.n() != channel.qubits_out() {
        return Err(Error::DimMismatch(format!(
            "slot-2 observable on {} qubits, channel output {}",
            sigma2.n(),
            channel.qubits_out()
        )));
    }
    let disturbed = anticommutator(&sigma1.matrix(), rho.matrix())?.scale_re(0.5);
    let evolved = channel.apply_matrix(&disturbed)?;
    Ok((&sigma2.matrix() * &evolved).trace().re)
}

/// The correlator of a common-cause experiment: both observables probe one
/// joint state, `⟨σ₁, σ₂⟩ = Tr[(σ₁ ⊗ σ₂) ρ]`.
pub fn joint_expectation(joint: &DensityMatrix, sigma1: &PauliString, sigma2: &PauliString) -> Result<f64> {
    if sigma1.n() + sigma2.n() != joint.qubits() {
        return Err(Error::DimMismatch(format!(
            "observables on {}+{} qubits vs joint state on {}",
            sigma1.n(),
            sigma2.n(),
            joint.qubits()
        )));
    }
    joint.expectation(&sigma1.matrix().tensor(&sigma2.matrix()))
}

/// Generate the complete correlator table for a scenario in closed form.
pub fn generate_table(scenario: &ScenarioConfig) -> Result<ExpectationTable> {
    match scenario.resolve()? {
        ResolvedScenario::CauseEffect { initial, channel } => {
            ExpectationTable::from_fn(initial.qubits(), |p1, p2| {
                two_time_expectation(&initial, &channel, p1, p2)
            })
        }
        ResolvedScenario::CommonCause { joint } => {
            ExpectationTable::from_fn(joint.qubits() / 2, |p1, p2| joint_expectation(&joint, p1, p2))
        }
        ResolvedScenario::Mixture { weight, initial, channel, joint } => {
            let ce = ExpectationTable::from_fn(initial.qubits(), |p1, p2| {
                two_time_expectation(&initial, &channel, p1, p2)
            })?;
            let cc = ExpectationTable::from_fn(joint.qubits() / 2, |p1, p2| {
                joint_expectation(&joint, p1, p2)
            })?;
            ExpectationTable::mix(weight, &ce, &cc)
        }
    }
}

/// Generate a table with simulated shot noise.
///
/// Each correlator is estimated from `shots` independent ±1 products drawn at
/// the exact expectation, i.e. binomial noise of width `~1/√shots`. Meant for
/// realism studies; the analysis contract is the exact path
/// [`generate_table`].
pub fn generate_table_sampled(scenario: &ScenarioConfig, shots: u64, seed: u64) -> Result<ExpectationTable> {
    if shots == 0 {
        return Err(Error::OutOfRange { name: "shots", value: 0.0, lo: 1.0, hi: f64::INFINITY });
    }
    let exact = generate_table(scenario)?;
    let mut rng = crate::random::rng(seed);
    let n = exact.n();
    let mut noisy = ExpectationTable::new(n);
    for (i1, i2, value) in exact.entries() {
        let p_plus = ((1.0 + value) / 2.0).clamp(0.0, 1.0);
        let successes = if p_plus <= 0.0 {
            0
        } else if p_plus >= 1.0 {
            shots
        } else {
            Binomial::new(shots, p_plus).expect("valid probability").sample(&mut rng)
        };
        let estimate = 2.0 * (successes as f64) / (shots as f64) - 1.0;
        noisy.set(
            &PauliString::from_index(n, i1).expect("in range"),
            &PauliString::from_index(n, i2).expect("in range"),
            estimate,
        )?;
    }
    Ok(noisy)
}

/// Assemble the PDM from a complete table (exact tier).
pub fn build_pdm(table: &ExpectationTable) -> Result<Pdm> {
    build_pdm_with(table, &Tolerances::exact())
}

/// Assemble the PDM from a complete table under an explicit tier.
pub fn build_pdm_with(table: &ExpectationTable, tol: &Tolerances) -> Result<Pdm> {
    table.require_complete()?;
    let n = table.n();
    let identity = table.get_by_index(0, 0).expect("complete");
    if (identity - 1.0).abs() > tol.table_normalization {
        return Err(Error::BadNormalization { value: identity, tol: tol.table_normalization });
    }
    let dim = 1usize << (2 * n);
    let mut sum = ComplexMatrix::zeros(dim);
    for (i1, i2, value) in table.entries() {
        if value == 0.0 {
            continue;
        }
        let p1 = PauliString::from_index(n, i1).expect("in range");
        let p2 = PauliString::from_index(n, i2).expect("in range");
        sum = &sum + &p1.matrix().tensor(&p2.matrix()).scale_re(value);
    }
    let matrix = sum.scale_re(1.0 / 4f64.powi(n as i32));
    Pdm::new_with(matrix, n, n, tol)
}

/// Trace-norm negativity `f(O) = Tr √(O O†) − Tr O`.
///
/// Zero exactly when `O` is positive semidefinite, strictly positive when `O`
/// has negative eigenvalues. Clamped at zero so rounding never reports a
/// negative negativity.
pub fn negativity(m: &ComplexMatrix) -> f64 {
    (trace_norm(m) - m.trace().re).max(0.0)
}

/// The time-reversed PDM `R₂₁ = S R₁₂ S†`, with `S` the unitary that swaps
/// the two time slots; slot labels travel with their slots.
pub fn time_reverse(r: &Pdm) -> Result<Pdm> {
    if r.n1 != r.n2 {
        return Err(Error::UnequalSlots { n1: r.n1, n2: r.n2 });
    }
    let s = slot_swap(1 << r.n1);
    let reversed = &(&s * &r.matrix) * &s.adjoint();
    Ok(Pdm {
        matrix: reversed,
        n1: r.n2,
        n2: r.n1,
        labels: (r.labels.1.clone(), r.labels.0.clone()),
    })
}

/// Reduce a PDM by tracing out qubits within each time slot.
///
/// `keep1`/`keep2` are strictly increasing kept-qubit positions per slot;
/// each slot must keep at least one qubit. Equivalent to building the PDM
/// from the identity-padded sub-table.
pub fn reduce_pdm(r: &Pdm, keep1: &[usize], keep2: &[usize]) -> Result<Pdm> {
    if keep1.is_empty() || keep2.is_empty() {
        return Err(Error::BadSubsystem("cannot discard an entire time slot".into()));
    }
    if keep1.windows(2).any(|w| w[0] >= w[1]) || keep1.iter().any(|&k| k >= r.n1) {
        return Err(Error::BadSubsystem(format!("keep set {keep1:?} invalid for slot of {} qubits", r.n1)));
    }
    if keep2.windows(2).any(|w| w[0] >= w[1]) || keep2.iter().any(|&k| k >= r.n2) {
        return Err(Error::BadSubsystem(format!("keep set {keep2:?} invalid for slot of {} qubits", r.n2)));
    }
    let dims = vec![2usize; r.n1 + r.n2];
    let keep: Vec<usize> = keep1.iter().copied().chain(keep2.iter().map(|&k| k + r.n1)).collect();
    let matrix = r.matrix.partial_trace(&dims, &keep)?;
    Ok(Pdm {
        matrix,
        n1: keep1.len(),
        n2: keep2.len(),
        labels: r.labels.clone(),
    })
}

/// The reduced state at one time slot (exact tier).
pub fn marginal_at_time(r: &Pdm, slot: TimeSlot) -> Result<DensityMatrix> {
    marginal_at_time_with(r, slot, &Tolerances::exact())
}

/// The reduced state at one time slot under an explicit tier.
///
/// Tracing a PDM over the other slot always yields a unit-trace Hermitian
/// matrix, but only a valid (positive) state when the data is well formed; a
/// negative marginal signals a malformed or overly noisy table.
pub fn marginal_at_time_with(r: &Pdm, slot: TimeSlot, tol: &Tolerances) -> Result<DensityMatrix> {
    let dims = [1 << r.n1, 1 << r.n2];
    let keep = match slot {
        TimeSlot::First => [0usize],
        TimeSlot::Second => [1usize],
    };
    let reduced = r.matrix.partial_trace(&dims, &keep)?;
    DensityMatrix::new_with(reduced, tol)
}
