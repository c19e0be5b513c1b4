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

//! Density matrices on qubit registers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen_with_tol, ComplexMatrix};
use crate::tolerance::Tolerances;

/// A density matrix: Hermitian, unit trace, positive semidefinite (all within
/// the validation tier used at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    qubits: usize,
}

impl DensityMatrix {
    /// Validate a matrix as a state under the exact tier.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::exact())
    }

    /// Validate a matrix as a state under an explicit tolerance tier.
    pub fn new_with(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::DimMismatch(format!(
                "state dimension {dim} is not a power of two ≥ 2"
            )));
        }
        let qubits = dim.trailing_zeros() as usize;
        let eig = hermitian_eigen_with_tol(&matrix, tol.hermiticity)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol.state_trace {
            return Err(Error::NotUnitTrace { trace, tol: tol.state_trace });
        }
        let min = eig.min();
        if min < -tol.state_psd {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(DensityMatrix { matrix, qubits })
    }

    /// Pure state from an amplitude vector (normalized internally).
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq < 1e-300 {
            return Err(Error::NotUnitTrace { trace: 0.0, tol: 0.0 });
        }
        let scale = norm_sq.sqrt();
        let normalized: Vec<Complex64> = amplitudes.iter().map(|a| a / scale).collect();
        Self::new(ComplexMatrix::outer(&normalized, &normalized)?)
    }

    /// Computational basis state, e.g. `"01"` for |01⟩.
    pub fn computational(bits: &str) -> Result<Self> {
        if bits.is_empty() || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(Error::BadSubsystem(format!("invalid bit string {bits:?}")));
        }
        let n = bits.chars().count();
        let index = bits.chars().fold(0usize, |acc, c| (acc << 1) | (c == '1') as usize);
        let mut amp = vec![Complex64::ZERO; 1 << n];
        amp[index] = Complex64::ONE;
        Self::from_pure(&amp)
    }

    /// `|+⟩⟨+| = (I + X)/2` on one qubit.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_pure(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)]).expect("normalized")
    }

    /// `I/2ⁿ` on `qubits` qubits.
    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        DensityMatrix {
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
            qubits,
        }
    }

    /// The Bell state `(|00⟩ + |11⟩)/√2` as a density matrix.
    pub fn bell_phi_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_pure(&[
            Complex64::new(h, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(h, 0.0),
        ])
        .expect("normalized")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Product state `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        DensityMatrix {
            matrix: self.matrix.tensor(&other.matrix),
            qubits: self.qubits + other.qubits,
        }
    }

    /// `Tr[obs · ρ]` as a real number (the observable must be Hermitian for
    /// this to be meaningful).
    pub fn expectation(&self, obs: &ComplexMatrix) -> Result<f64> {
        if obs.dim() != self.dim() {
            return Err(Error::DimMismatch(format!(
                "observable dim {} vs state dim {}",
                obs.dim(),
                self.dim()
            )));
        }
        Ok((obs * &self.matrix).trace().re)
    }
}

/// The polarization family `(1−λ)·I/2 + λ·|+⟩⟨+|`.
///
/// λ = 0 is the maximally mixed state with no coherence, λ = 1 is the pure
/// `|+⟩⟨+|` state.
pub fn lambda_plus_state(lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda, lo: 0.0, hi: 1.0 });
    }
    let mixed = ComplexMatrix::identity(2).scale_re((1.0 - lambda) / 2.0);
    let plus = DensityMatrix::plus();
    DensityMatrix::new(&mixed + &plus.matrix().scale_re(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Pauli;

    #[test]
    fn lambda_zero_is_maximally_mixed() {
        let rho = lambda_plus_state(0.0).unwrap();
        assert!(rho.matrix().approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 0.0));
    }

    #[test]
    fn lambda_one_is_plus_projector() {
        let rho = lambda_plus_state(1.0).unwrap();
        let expected = &ComplexMatrix::identity(2).scale_re(0.5) + &Pauli::X.matrix().scale_re(0.5);
        assert!(rho.matrix().approx_eq(&expected, 1e-15));
    }

    #[test]
    fn lambda_sets_off_diagonals() {
        let rho = lambda_plus_state(0.7).unwrap();
        assert!((rho.matrix().get(0, 1).re - 0.35).abs() < 1e-15);
        assert!((rho.matrix().get(0, 0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lambda_out_of_range_rejected() {
        assert!(lambda_plus_state(-0.1).is_err());
        assert!(lambda_plus_state(1.1).is_err());
    }

    #[test]
    fn validation_rejects_bad_states() {
        // Trace 2.
        let m = ComplexMatrix::identity(2);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotUnitTrace { .. })));
        // Negative eigenvalue.
        let neg = ComplexMatrix::from_real_rows(&[vec![1.5, 0.0], vec![0.0, -0.5]]).unwrap();
        assert!(matches!(DensityMatrix::new(neg), Err(Error::NotPositive { .. })));
        // Non-Hermitian.
        let nh = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.1, 0.2)],
            vec![Complex64::new(0.1, 0.2), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(DensityMatrix::new(nh), Err(Error::NotHermitian { .. })));
        // Dimension 3 is not a qubit register.
        assert!(DensityMatrix::new(ComplexMatrix::identity(3).scale_re(1.0 / 3.0)).is_err());
    }

    #[test]
    fn computational_and_bell() {
        let s = DensityMatrix::computational("01").unwrap();
        assert_eq!(s.qubits(), 2);
        assert!((s.matrix().get(1, 1).re - 1.0).abs() < 1e-15);
        let bell = DensityMatrix::bell_phi_plus();
        assert!((bell.matrix().get(0, 3).re - 0.5).abs() < 1e-15);
        assert!((bell.matrix().trace().re - 1.0).abs() < 1e-15);
    }
}
