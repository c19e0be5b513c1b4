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

//! The n-qubit Pauli operator basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Base-4 digit: I=0, X=1, Y=2, Z=3.
    pub fn digit(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }

    pub fn from_digit(d: usize) -> Option<Pauli> {
        Pauli::ALL.get(d).copied()
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_label(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// The 2×2 matrix.
    pub fn matrix(self) -> ComplexMatrix {
        let c = Complex64::new;
        let rows = match self {
            Pauli::I => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
            Pauli::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            Pauli::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
            Pauli::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        };
        ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2")
    }
}

/// An n-qubit Pauli basis operator, one of the `4ⁿ` products
/// `{I, X, Y, Z}^⊗n`.
///
/// Canonically identified by its base-4 `index` in `[0, 4ⁿ)` with I=0, X=1,
/// Y=2, Z=3; the most significant digit is qubit 0, which is also the most
/// significant tensor factor of [`PauliString::matrix`]. Index and label
/// representations round-trip exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    index: usize,
}

impl PauliString {
    /// From the base-4 index; `index` must be below `4ⁿ`.
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadSubsystem("PauliString needs at least one qubit".into()));
        }
        let count = 4usize.pow(n as u32);
        if index >= count {
            return Err(Error::OutOfRange {
                name: "pauli index",
                value: index as f64,
                lo: 0.0,
                hi: (count - 1) as f64,
            });
        }
        Ok(PauliString { n, index })
    }

    /// From a label string such as `"XZ"`, most significant qubit first.
    pub fn from_labels(labels: &str) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::BadPauliLabel(labels.to_string()));
        }
        let mut index = 0usize;
        for ch in labels.chars() {
            let p = Pauli::from_label(ch).ok_or_else(|| Error::BadPauliLabel(labels.to_string()))?;
            index = index * 4 + p.digit();
        }
        Ok(PauliString { n: labels.chars().count(), index })
    }

    /// From explicit per-qubit factors, qubit 0 first.
    pub fn from_factors(factors: &[Pauli]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::BadSubsystem("PauliString needs at least one qubit".into()));
        }
        let index = factors.iter().fold(0usize, |acc, p| acc * 4 + p.digit());
        Ok(PauliString { n: factors.len(), index })
    }

    /// The all-identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        PauliString { n, index: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    /// Per-qubit factors, qubit 0 first.
    pub fn factors(&self) -> Vec<Pauli> {
        let mut out = vec![Pauli::I; self.n];
        let mut rem = self.index;
        for q in (0..self.n).rev() {
            out[q] = Pauli::from_digit(rem % 4).expect("digit < 4");
            rem /= 4;
        }
        out
    }

    /// The factor acting on qubit `q`.
    pub fn factor(&self, q: usize) -> Pauli {
        let shift = self.n - 1 - q;
        Pauli::from_digit((self.index / 4usize.pow(shift as u32)) % 4).expect("digit < 4")
    }

    /// Label string, for instance `"XZ"`.
    pub fn labels(&self) -> String {
        self.factors().iter().map(|p| p.label()).collect()
    }

    /// The realized `2ⁿ × 2ⁿ` matrix; Hermitian and unitary, traceless unless
    /// the string is all identities.
    pub fn matrix(&self) -> ComplexMatrix {
        self.factors()
            .iter()
            .map(|p| p.matrix())
            .reduce(|acc, m| acc.tensor(&m))
            .expect("at least one factor")
    }

    /// All `4ⁿ` strings in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..4usize.pow(n as u32)).map(move |index| PauliString { n, index })
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.labels())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_label_round_trip_exhaustive() {
        for n in 1..=3 {
            for p in PauliString::all(n) {
                let via_labels = PauliString::from_labels(&p.labels()).unwrap();
                assert_eq!(p, via_labels);
                let via_index = PauliString::from_index(n, p.index()).unwrap();
                assert_eq!(p, via_index);
                assert_eq!(PauliString::from_factors(&p.factors()).unwrap(), p);
            }
        }
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        let p = PauliString::from_labels("XZ").unwrap();
        // X = digit 1 on qubit 0 (weight 4), Z = digit 3 on qubit 1.
        assert_eq!(p.index(), 7);
        assert_eq!(p.factor(0), Pauli::X);
        assert_eq!(p.factor(1), Pauli::Z);
        let expected = Pauli::X.matrix().tensor(&Pauli::Z.matrix());
        assert!(p.matrix().approx_eq(&expected, 0.0));
    }

    #[test]
    fn standard_pauli_matrices() {
        let y = PauliString::from_labels("Y").unwrap().matrix();
        assert_eq!(y.get(0, 1), Complex64::new(0.0, -1.0));
        assert_eq!(y.get(1, 0), Complex64::new(0.0, 1.0));
        let i = PauliString::from_labels("I").unwrap().matrix();
        assert!(i.approx_eq(&ComplexMatrix::identity(2), 0.0));
    }

    #[test]
    fn matrices_are_hermitian_unitary_traceless() {
        for p in PauliString::all(2) {
            let m = p.matrix();
            assert!(m.hermiticity_residual() == 0.0, "{p}");
            assert!(m.unitarity_residual() < 1e-15, "{p}");
            if p.is_identity() {
                assert_eq!(m.trace(), Complex64::new(4.0, 0.0));
            } else {
                assert!(m.trace().norm() < 1e-15, "{p}");
            }
        }
    }

    #[test]
    fn orthogonality_under_trace_inner_product() {
        // Tr(σ_p σ_q) = 2ⁿ δ_pq, the expansion mechanism behind the PDM.
        for n in 1..=2usize {
            let dim = 2f64.powi(n as i32);
            for p in PauliString::all(n) {
                let pm = p.matrix();
                for q in PauliString::all(n) {
                    let inner = (&pm * &q.matrix()).trace();
                    let expected = if p == q { dim } else { 0.0 };
                    assert!(
                        (inner - Complex64::new(expected, 0.0)).norm() < 1e-13,
                        "⟨{p},{q}⟩ = {inner}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(PauliString::from_labels("XQ").is_err());
        assert!(PauliString::from_labels("").is_err());
        assert!(PauliString::from_index(1, 4).is_err());
        assert!(PauliString::from_index(0, 0).is_err());
    }
}
