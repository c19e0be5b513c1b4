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

//! Quantum channels in Kraus form, with optional Stinespring dilation data.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, slot_swap, ComplexMatrix};
use crate::model::state::DensityMatrix;
use crate::tolerance::Tolerances;

const COMPLETENESS_TOL: f64 = 1e-9;
const UNITARITY_TOL: f64 = 1e-9;

/// Which tensor slot of the dilation `input ⊗ ancilla` carries the channel
/// output after the joint unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputSlot {
    /// Keep the input slot, trace out the ancilla (standard Stinespring).
    First,
    /// Keep the ancilla slot, trace out the input (the receiving system takes
    /// what was swapped in).
    Second,
}

/// Stinespring dilation record: joint unitary on `input ⊗ ancilla`, the
/// ancilla state, and the slot kept as output.
#[derive(Debug, Clone)]
pub struct Dilation {
    pub unitary: ComplexMatrix,
    pub ancilla: DensityMatrix,
    pub output: OutputSlot,
}

/// A completely positive trace-preserving map on a qubit register.
///
/// Internally always normalized to a Kraus list `ρ ↦ Σ K ρ K†`; channels built
/// from a dilation keep the dilation record alongside, which the scattering
/// simulator uses to lay the circuit out gate by gate.
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<ComplexMatrix>,
    qubits_in: usize,
    qubits_out: usize,
    dilation: Option<Dilation>,
}

impl Channel {
    /// Channel from explicit Kraus operators; completeness `Σ K†K = I` is
    /// enforced within 1e-9.
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::DimMismatch("channel needs at least one Kraus operator".into()));
        }
        let dim = kraus[0].dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimMismatch(format!("Kraus dimension {dim} is not a qubit register")));
        }
        if kraus.iter().any(|k| k.dim() != dim) {
            return Err(Error::DimMismatch("Kraus operators differ in dimension".into()));
        }
        let qubits = dim.trailing_zeros() as usize;
        let channel = Channel { kraus, qubits_in: qubits, qubits_out: qubits, dilation: None };
        let residual = channel.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::KrausIncomplete { residual, tol: COMPLETENESS_TOL });
        }
        Ok(channel)
    }

    /// Channel from a Stinespring dilation.
    ///
    /// `unitary` acts on `input ⊗ ancilla`; the kept slot (see [`OutputSlot`])
    /// becomes the channel output and must match the input dimension.
    pub fn from_dilation(unitary: ComplexMatrix, ancilla: DensityMatrix, output: OutputSlot) -> Result<Self> {
        let joint = unitary.dim();
        let d_anc = ancilla.dim();
        if !joint.is_multiple_of(d_anc) || joint / d_anc < 2 {
            return Err(Error::DimMismatch(format!(
                "dilation unitary dim {joint} does not factor over ancilla dim {d_anc}"
            )));
        }
        let d_in = joint / d_anc;
        if output == OutputSlot::Second && d_anc != d_in {
            return Err(Error::DimMismatch(format!(
                "output on the ancilla slot needs ancilla dim {d_anc} equal to input dim {d_in}"
            )));
        }
        let residual = unitary.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary { residual, tol: UNITARITY_TOL });
        }

        // Spectral decomposition of the ancilla feeds one Kraus operator per
        // (environment basis state, ancilla eigenvector) pair.
        let anc_eig = hermitian_eigen(ancilla.matrix())?;
        let mut kraus = Vec::new();
        let d_env = match output {
            OutputSlot::First => d_anc,
            OutputSlot::Second => d_in,
        };
        let d_out = d_in;
        for (k, &weight) in anc_eig.values.iter().enumerate() {
            if weight <= 1e-14 {
                continue;
            }
            let root = weight.sqrt();
            for j in 0..d_env {
                let mut op = ComplexMatrix::zeros(d_out);
                for r in 0..d_out {
                    // Row index of the joint unitary for this output entry.
                    let row = match output {
                        OutputSlot::First => r * d_anc + j,
                        OutputSlot::Second => j * d_anc + r,
                    };
                    for c_in in 0..d_in {
                        let mut sum = Complex64::ZERO;
                        for c_anc in 0..d_anc {
                            sum += unitary.get(row, c_in * d_anc + c_anc) * anc_eig.vectors.get(c_anc, k);
                        }
                        op.set(r, c_in, sum * root);
                    }
                }
                kraus.push(op);
            }
        }
        if kraus.is_empty() {
            return Err(Error::EmptySupport);
        }
        let qubits = d_in.trailing_zeros() as usize;
        let channel = Channel {
            kraus,
            qubits_in: qubits,
            qubits_out: qubits,
            dilation: Some(Dilation { unitary, ancilla, output }),
        };
        let residual = channel.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::KrausIncomplete { residual, tol: COMPLETENESS_TOL });
        }
        Ok(channel)
    }

    /// The identity channel on `qubits` qubits.
    pub fn identity(qubits: usize) -> Self {
        Channel {
            kraus: vec![ComplexMatrix::identity(1 << qubits)],
            qubits_in: qubits,
            qubits_out: qubits,
            dilation: None,
        }
    }

    /// Unitary conjugation channel `ρ ↦ UρU†`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let residual = u.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary { residual, tol: UNITARITY_TOL });
        }
        Self::from_kraus(vec![u])
    }

    /// The constant channel `ρ ↦ ω`, which erases the input entirely.
    pub fn constant(omega: DensityMatrix) -> Self {
        // Measure-discard-prepare Kraus set: √w_k |a_k⟩⟨j|.
        let d = omega.dim();
        let eig = hermitian_eigen(omega.matrix()).expect("states are hermitian");
        let mut kraus = Vec::new();
        for (k, &weight) in eig.values.iter().enumerate() {
            if weight <= 1e-14 {
                continue;
            }
            let root = weight.sqrt();
            for j in 0..d {
                let mut op = ComplexMatrix::zeros(d);
                for r in 0..d {
                    op.set(r, j, eig.vectors.get(r, k) * root);
                }
                kraus.push(op);
            }
        }
        Channel {
            kraus,
            qubits_in: omega.qubits(),
            qubits_out: omega.qubits(),
            dilation: None,
        }
    }

    /// The fully decohering measure-and-prepare channel on one qubit:
    /// `ρ ↦ ⟨0|ρ|0⟩ |0⟩⟨0| + ⟨1|ρ|1⟩ |1⟩⟨1|`.
    pub fn measure_prepare() -> Self {
        let mut k0 = ComplexMatrix::zeros(2);
        k0.set(0, 0, Complex64::ONE);
        let mut k1 = ComplexMatrix::zeros(2);
        k1.set(1, 1, Complex64::ONE);
        Channel { kraus: vec![k0, k1], qubits_in: 1, qubits_out: 1, dilation: None }
    }

    /// The partial-swap channel: the input interacts with a fresh one-qubit
    /// ancilla through `exp(−iθS)` and the ancilla slot is the output.
    ///
    /// θ = π/2 transports the input intact (full swap); θ = 0 and θ = π leave
    /// the ancilla untouched, so the output is the ancilla state regardless of
    /// the input — a channel with no causal influence.
    pub fn partial_swap(theta: f64, ancilla: DensityMatrix) -> Result<Self> {
        if ancilla.qubits() != 1 {
            return Err(Error::DimMismatch(format!(
                "partial swap ancilla must be one qubit, got {}",
                ancilla.qubits()
            )));
        }
        Self::from_dilation(partial_swap_unitary(theta), ancilla, OutputSlot::Second)
    }

    /// Sequential composition: `(self ∘ before)(ρ) = self(before(ρ))`.
    pub fn compose(&self, before: &Channel) -> Result<Channel> {
        if self.qubits_in != before.qubits_out {
            return Err(Error::DimMismatch(format!(
                "composition of {}-qubit output into {}-qubit input",
                before.qubits_out, self.qubits_in
            )));
        }
        let kraus: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|a| before.kraus.iter().map(move |b| a * b))
            .collect();
        Ok(Channel {
            kraus,
            qubits_in: before.qubits_in,
            qubits_out: self.qubits_out,
            dilation: None,
        })
    }

    /// Parallel composition `self ⊗ other`.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let kraus: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| a.tensor(b)))
            .collect();
        Channel {
            kraus,
            qubits_in: self.qubits_in + other.qubits_in,
            qubits_out: self.qubits_out + other.qubits_out,
            dilation: None,
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dilation(&self) -> Option<&Dilation> {
        self.dilation.as_ref()
    }

    pub fn qubits_in(&self) -> usize {
        self.qubits_in
    }

    pub fn qubits_out(&self) -> usize {
        self.qubits_out
    }

    pub fn dim_in(&self) -> usize {
        1 << self.qubits_in
    }

    pub fn dim_out(&self) -> usize {
        1 << self.qubits_out
    }

    /// `max |Σ K†K − I|`.
    pub fn completeness_residual(&self) -> f64 {
        let dim = self.dim_in();
        let mut sum = ComplexMatrix::zeros(dim);
        for k in &self.kraus {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_diff(&ComplexMatrix::identity(dim))
    }

    /// Linear action `Σ K m K†` on an arbitrary operator.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.dim() != self.dim_in() {
            return Err(Error::DimMismatch(format!(
                "channel input dim {} vs operator dim {}",
                self.dim_in(),
                m.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out());
        for k in &self.kraus {
            out = &out + &(&(k * m) * &k.adjoint());
        }
        Ok(out)
    }

    /// Apply to a state; the output is validated as a density matrix.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.apply_with(rho, &Tolerances::exact())
    }

    /// Apply with an explicit validation tier.
    pub fn apply_with(&self, rho: &DensityMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
        DensityMatrix::new_with(self.apply_matrix(rho.matrix())?, tol)
    }

    /// The Choi matrix `C = Σ_ij |i⟩⟨j| ⊗ 𝓔(|i⟩⟨j|)`, positive semidefinite
    /// with `Tr C = dim_in` exactly when the channel is completely positive
    /// and trace preserving.
    pub fn choi(&self) -> ComplexMatrix {
        let d_in = self.dim_in();
        let d_out = self.dim_out();
        let mut c = ComplexMatrix::zeros(d_in * d_out);
        for k in &self.kraus {
            for i in 0..d_in {
                for m in 0..d_out {
                    let left = k.get(m, i);
                    if left == Complex64::ZERO {
                        continue;
                    }
                    for j in 0..d_in {
                        for n in 0..d_out {
                            let prev = c.get(i * d_out + m, j * d_out + n);
                            c.set(i * d_out + m, j * d_out + n, prev + left * k.get(n, j).conj());
                        }
                    }
                }
            }
        }
        c
    }
}

/// The partial-swap unitary `exp(−iθS) = cos(θ)·I − i·sin(θ)·S` on two
/// qubits, with `S` the swap operator (`S² = I` makes the expansion exact).
pub fn partial_swap_unitary(theta: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(4).scale(Complex64::new(theta.cos(), 0.0));
    let swap = slot_swap(2).scale(Complex64::new(0.0, -theta.sin()));
    &id + &swap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Pauli;
    use std::f64::consts::PI;

    #[test]
    fn partial_swap_unitary_endpoints() {
        assert!(partial_swap_unitary(0.0).approx_eq(&ComplexMatrix::identity(4), 0.0));
        // θ = π is the identity up to a global phase.
        assert!(partial_swap_unitary(PI).approx_eq(&ComplexMatrix::identity(4).scale_re(-1.0), 1e-15));
        let full = partial_swap_unitary(PI / 2.0);
        assert!(full.approx_eq(&slot_swap(2).scale(Complex64::new(0.0, -1.0)), 1e-15));
    }

    #[test]
    fn partial_swap_unitary_is_unitary() {
        for k in 0..=16 {
            let theta = PI * k as f64 / 16.0;
            assert!(partial_swap_unitary(theta).unitarity_residual() < 1e-14, "θ = {theta}");
        }
    }

    #[test]
    fn full_swap_is_identity_channel() {
        let chan = Channel::partial_swap(PI / 2.0, DensityMatrix::computational("0").unwrap()).unwrap();
        let rho = crate::random::random_density(&mut crate::random::rng(5), 1);
        let out = chan.apply(&rho).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn zero_angle_is_constant_channel() {
        for theta in [0.0, PI] {
            let anc = lambda_anc();
            let chan = Channel::partial_swap(theta, anc.clone()).unwrap();
            let rho = crate::random::random_density(&mut crate::random::rng(6), 1);
            let out = chan.apply(&rho).unwrap();
            assert!(out.matrix().approx_eq(anc.matrix(), 1e-12), "θ = {theta}");
        }
    }

    fn lambda_anc() -> DensityMatrix {
        crate::model::state::lambda_plus_state(0.3).unwrap()
    }

    #[test]
    fn quarter_swap_on_one() {
        // θ = π/4 from |1⟩⟨1| with ancilla |0⟩⟨0| mixes the populations evenly.
        let chan = Channel::partial_swap(PI / 4.0, DensityMatrix::computational("0").unwrap()).unwrap();
        let rho = DensityMatrix::computational("1").unwrap();
        let out = chan.apply(&rho).unwrap();
        assert!(out.matrix().approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-12));
    }

    #[test]
    fn measure_prepare_fixed_point_and_decoherence() {
        let chan = Channel::measure_prepare();
        let zero = DensityMatrix::computational("0").unwrap();
        assert!(chan.apply(&zero).unwrap().matrix().approx_eq(zero.matrix(), 0.0));

        let plus = DensityMatrix::plus();
        let out = chan.apply(&plus).unwrap();
        assert!(out.matrix().approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-15));

        let polarized = crate::model::state::lambda_plus_state(0.7).unwrap();
        let out = chan.apply(&polarized).unwrap();
        assert!(out.matrix().approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-15));
    }

    #[test]
    fn identity_kraus_leaves_state() {
        let chan = Channel::identity(1);
        let rho = crate::random::random_density(&mut crate::random::rng(8), 1);
        assert!(chan.apply(&rho).unwrap().matrix().approx_eq(rho.matrix(), 0.0));
    }

    #[test]
    fn kraus_and_dilation_representations_agree() {
        // Stinespring equivalence: the Kraus form extracted from the dilation
        // acts identically to tracing the dilated unitary evolution.
        let theta = PI / 5.0;
        let anc = lambda_anc();
        let chan = Channel::partial_swap(theta, anc.clone()).unwrap();
        let rho = crate::random::random_density(&mut crate::random::rng(9), 1);

        let joint = rho.matrix().tensor(anc.matrix());
        let u = partial_swap_unitary(theta);
        let evolved = &(&u * &joint) * &u.adjoint();
        let reduced = evolved.partial_trace(&[2, 2], &[1]).unwrap();

        let via_kraus = chan.apply_matrix(rho.matrix()).unwrap();
        assert!(via_kraus.approx_eq(&reduced, 1e-10));
    }

    #[test]
    fn channels_preserve_trace_and_positivity() {
        let mut rng = crate::random::rng(10);
        let scenarios = [
            Channel::measure_prepare(),
            Channel::partial_swap(0.9, DensityMatrix::computational("0").unwrap()).unwrap(),
            Channel::constant(lambda_anc()),
            crate::random::random_channel(&mut rng, 1, 2),
        ];
        for chan in &scenarios {
            let rho = crate::random::random_density(&mut rng, chan.qubits_in());
            let out = chan.apply(&rho).unwrap();
            assert!((out.matrix().trace().re - 1.0).abs() < 1e-10);
            let min = hermitian_eigen(out.matrix()).unwrap().min();
            assert!(min > -1e-9);
        }
    }

    #[test]
    fn choi_of_identity_is_rank_one_bell() {
        let c = Channel::identity(1).choi();
        let amp = [Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::ONE];
        let bell2 = ComplexMatrix::outer(&amp, &amp).unwrap();
        assert!(c.approx_eq(&bell2, 0.0));
        let eig = hermitian_eigen(&c).unwrap();
        assert!((eig.values[0] - 2.0).abs() < 1e-12);
        assert!(eig.values[1].abs() < 1e-12, "rank one");
    }

    #[test]
    fn choi_of_measure_prepare_is_classical_diagonal() {
        let c = Channel::measure_prepare().choi();
        let expected = ComplexMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(c.approx_eq(&expected, 0.0));
    }

    #[test]
    fn choi_of_random_cptp_is_positive_with_trace_d() {
        let mut rng = crate::random::rng(11);
        for _ in 0..5 {
            let chan = crate::random::random_channel(&mut rng, 1, 2);
            let c = chan.choi();
            assert!((c.trace().re - 2.0).abs() < 1e-10);
            assert!(hermitian_eigen(&c).unwrap().min() > -1e-10);
        }
    }

    #[test]
    fn partial_swap_endpoint_chois_are_constant_channel() {
        // Committed endpoint invariant: θ ∈ {0, π} both give ρ ↦ ancilla,
        // whose Choi matrix is I ⊗ ω.
        let anc = lambda_anc();
        let expected = ComplexMatrix::identity(2).tensor(anc.matrix());
        for theta in [0.0, PI] {
            let c = Channel::partial_swap(theta, anc.clone()).unwrap().choi();
            assert!(c.approx_eq(&expected, 1e-12), "θ = {theta}");
        }
    }

    #[test]
    fn incomplete_kraus_rejected() {
        let half = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(matches!(
            Channel::from_kraus(vec![half]),
            Err(Error::KrausIncomplete { .. })
        ));
    }

    #[test]
    fn non_unitary_dilation_rejected() {
        let bad = ComplexMatrix::identity(4).scale_re(0.9);
        let anc = DensityMatrix::computational("0").unwrap();
        assert!(matches!(
            Channel::from_dilation(bad, anc, OutputSlot::Second),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn compose_and_tensor() {
        let mp = Channel::measure_prepare();
        let id = Channel::identity(1);
        let composed = mp.compose(&id).unwrap();
        let rho = DensityMatrix::plus();
        assert!(composed
            .apply(&rho)
            .unwrap()
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-14));

        let pair = mp.tensor(&id);
        assert_eq!(pair.qubits_in(), 2);
        let x = Pauli::X.matrix();
        let joint = DensityMatrix::plus().tensor(&DensityMatrix::plus());
        let out = pair.apply(&joint).unwrap();
        // First qubit decoheres (⟨X⟩ → 0), second survives (⟨X⟩ = 1).
        let xi = x.tensor(&ComplexMatrix::identity(2));
        let ix = ComplexMatrix::identity(2).tensor(&x);
        assert!(out.expectation(&xi).unwrap().abs() < 1e-12);
        assert!((out.expectation(&ix).unwrap() - 1.0).abs() < 1e-12);
    }
}
