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

//! Gate-level simulation of the probe-qubit scattering circuit.
//!
//! A probe prepared in |0⟩ is put on the interferometric path
//! `H — controlled-σ₁ — (channel on the system) — controlled-σ₂ — H`; its
//! final ⟨σ_z⟩ equals the coarse-grained two-time correlator ⟨σ₁, σ₂⟩. The
//! simulator verifies this against the closed-form path numerically.
//!
//! The probe is noiseless and the channel touches only system wires. When the
//! channel carries a dilation, the circuit is laid out physically: the
//! ancilla occupies its own wires, the joint unitary runs across system and
//! ancilla, and the second observable is measured on whichever wires the
//! dilation designates as output. Kraus-only channels act in place on the
//! system wires.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PauliString};
use crate::model::{Channel, DensityMatrix, OutputSlot, ResolvedScenario, ScenarioConfig};
use crate::pdm::ExpectationTable;

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ P` — the Pauli string applied when the control
/// qubit is set. With `control_first = false` the control is the last qubit
/// instead: `I ⊗ |0⟩⟨0| + P ⊗ |1⟩⟨1|`.
pub fn controlled_pauli(p: &PauliString, control_first: bool) -> ComplexMatrix {
    let pm = p.matrix();
    let d = pm.dim();
    let (zero, one) = (basis_projector(0), basis_projector(1));
    let id = ComplexMatrix::identity(d);
    if control_first {
        &zero.tensor(&id) + &one.tensor(&pm)
    } else {
        &id.tensor(&zero) + &pm.tensor(&one)
    }
}

fn basis_projector(bit: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m.set(bit, bit, Complex64::ONE);
    m
}

fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).expect("2x2")
}

/// Place `op` (acting on `targets.len()` qubits, first target most
/// significant) into a register of `total` qubits, identity elsewhere.
fn embed(total: usize, targets: &[usize], op: &ComplexMatrix) -> ComplexMatrix {
    debug_assert_eq!(op.dim(), 1 << targets.len());
    let dim = 1usize << total;
    let mut out = ComplexMatrix::zeros(dim);
    let k = targets.len();
    let rest: Vec<usize> = (0..total).filter(|q| !targets.contains(q)).collect();
    // Qubit q occupies bit (total − 1 − q).
    let bit = |q: usize| total - 1 - q;
    for rest_bits in 0..(1usize << rest.len()) {
        let mut base = 0usize;
        for (j, &q) in rest.iter().enumerate() {
            if (rest_bits >> (rest.len() - 1 - j)) & 1 == 1 {
                base |= 1 << bit(q);
            }
        }
        for i in 0..(1usize << k) {
            let mut row = base;
            for (j, &q) in targets.iter().enumerate() {
                if (i >> (k - 1 - j)) & 1 == 1 {
                    row |= 1 << bit(q);
                }
            }
            for l in 0..(1usize << k) {
                let v = op.get(i, l);
                if v == Complex64::ZERO {
                    continue;
                }
                let mut col = base;
                for (j, &q) in targets.iter().enumerate() {
                    if (l >> (k - 1 - j)) & 1 == 1 {
                        col |= 1 << bit(q);
                    }
                }
                out.set(row, col, v);
            }
        }
    }
    out
}

/// `op` on `targets`, applied only when `control` is set.
fn embed_controlled(total: usize, control: usize, targets: &[usize], op: &ComplexMatrix) -> ComplexMatrix {
    let p0 = embed(total, &[control], &basis_projector(0));
    let p1 = embed(total, &[control], &basis_projector(1));
    &p0 + &(&p1 * &embed(total, targets, op))
}

/// One scattering-circuit experiment: which wires carry the probe and the two
/// observation slots, which observables are scattered, and what evolves in
/// between.
#[derive(Debug, Clone)]
pub struct ScatteringCircuit {
    probe: usize,
    slot1: Vec<usize>,
    slot2: Vec<usize>,
    sigma1: PauliString,
    sigma2: PauliString,
    channel: Channel,
    initial: DensityMatrix,
    total_qubits: usize,
}

impl ScatteringCircuit {
    /// Canonical layout: probe on wire 0, the slot-1 system on the following
    /// wires, dilation ancilla wires (if any) appended after.
    ///
    /// `initial` is the state of the slot-1 system; the probe and any ancilla
    /// are prepared internally.
    pub fn new(
        sigma1: PauliString,
        sigma2: PauliString,
        channel: Channel,
        initial: DensityMatrix,
    ) -> Result<Self> {
        let n = initial.qubits();
        if sigma1.n() != n || channel.qubits_in() != n {
            return Err(Error::DimMismatch(format!(
                "slot-1 observable on {} qubits, channel input {}, system {}",
                sigma1.n(),
                channel.qubits_in(),
                n
            )));
        }
        if sigma2.n() != channel.qubits_out() {
            return Err(Error::DimMismatch(format!(
                "slot-2 observable on {} qubits, channel output {}",
                sigma2.n(),
                channel.qubits_out()
            )));
        }
        let slot1: Vec<usize> = (1..=n).collect();
        let (slot2, total_qubits) = match channel.dilation() {
            Some(dil) => {
                let anc: Vec<usize> = (n + 1..=n + dil.ancilla.qubits()).collect();
                let slot2 = match dil.output {
                    OutputSlot::First => slot1.clone(),
                    OutputSlot::Second => anc.clone(),
                };
                (slot2, 1 + n + dil.ancilla.qubits())
            }
            None => (slot1.clone(), 1 + n),
        };
        Ok(ScatteringCircuit { probe: 0, slot1, slot2, sigma1, sigma2, channel, initial, total_qubits })
    }

    pub fn probe(&self) -> usize {
        self.probe
    }

    pub fn slot1(&self) -> &[usize] {
        &self.slot1
    }

    pub fn slot2(&self) -> &[usize] {
        &self.slot2
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }

    /// Simulate the circuit and return ⟨σ_z⟩ of the probe's reduced state.
    pub fn expectation(&self) -> Result<f64> {
        let total = self.total_qubits;
        let dim = 1usize << total;

        // Initial register: probe |0⟩ ⊗ system ⊗ (ancilla when dilated).
        let mut state = basis_projector(0).tensor(self.initial.matrix());
        if let Some(dil) = self.channel.dilation() {
            state = state.tensor(dil.ancilla.matrix());
        }
        debug_assert_eq!(state.dim(), dim);

        let h = embed(total, &[self.probe], &hadamard());
        let c1 = embed_controlled(total, self.probe, &self.slot1, &self.sigma1.matrix());

        state = conjugate(&h, &state);
        state = conjugate(&c1, &state);

        // The channel, acting on system wires only.
        state = match self.channel.dilation() {
            Some(dil) => {
                let wires: Vec<usize> =
                    self.slot1.iter().copied().chain((self.slot1.len() + 1)..total).collect();
                let u = embed(total, &wires, &dil.unitary);
                conjugate(&u, &state)
            }
            None => {
                let mut next = ComplexMatrix::zeros(dim);
                for k in self.channel.kraus() {
                    let lifted = embed(total, &self.slot1, k);
                    next = &next + &conjugate(&lifted, &state);
                }
                next
            }
        };

        let c2 = embed_controlled(total, self.probe, &self.slot2, &self.sigma2.matrix());
        state = conjugate(&c2, &state);
        state = conjugate(&h, &state);

        let z = embed(total, &[self.probe], &crate::linalg::Pauli::Z.matrix());
        Ok((&z * &state).trace().re)
    }
}

fn conjugate(u: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    &(u * rho) * &u.adjoint()
}

/// The scattering expectation for one observable pair of a cause-effect
/// scenario (convenience over building the circuit by hand).
pub fn scattering_expectation(
    sigma1: &PauliString,
    sigma2: &PauliString,
    channel: &Channel,
    initial: &DensityMatrix,
) -> Result<f64> {
    ScatteringCircuit::new(*sigma1, *sigma2, channel.clone(), initial.clone())?.expectation()
}

/// Generate the complete correlator table of a cause-effect scenario by
/// running one scattering circuit per observable pair.
///
/// Matches [`crate::pdm::generate_table`] entrywise to numerical precision;
/// the probe interferometry is simulated, not assumed.
pub fn generate_table_scattering(scenario: &ScenarioConfig) -> Result<ExpectationTable> {
    match scenario.resolve()? {
        ResolvedScenario::CauseEffect { initial, channel } => {
            ExpectationTable::from_fn(initial.qubits(), |p1, p2| {
                scattering_expectation(p1, p2, &channel, &initial)
            })
        }
        _ => Err(Error::BadScenario(
            "scattering pathway simulates cause-effect scenarios only".into(),
        )),
    }
}
