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

//! Seeded random fixtures: Hermitian matrices, unitaries, full-rank states and
//! CPTP channels. Deterministic given the seed, which keeps randomized tests
//! reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::model::{Channel, DensityMatrix, OutputSlot};

/// A seeded deterministic generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Ginibre matrix: independent complex Gaussian entries.
pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

/// Random Hermitian matrix `(G + G†)/2`.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = random_matrix(rng, dim);
    (&g + &g.adjoint()).scale_re(0.5)
}

/// Haar-flavored random unitary `exp(iH)` for random Hermitian `H`.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    let eig = crate::linalg::hermitian_eigen(&h).expect("hermitian by construction");
    let n = dim;
    let mut vp = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let phase = Complex64::new(0.0, eig.values[c]).exp();
            vp.set(r, c, eig.vectors.get(r, c) * phase);
        }
    }
    &vp * &eig.vectors.adjoint()
}

/// Random full-rank density matrix on `qubits` qubits.
///
/// A normalized Wishart matrix mixed with 10% of the maximally mixed state, so
/// the smallest eigenvalue stays comfortably away from zero.
pub fn random_density(rng: &mut ChaCha8Rng, qubits: usize) -> DensityMatrix {
    let dim = 1usize << qubits;
    let g = random_matrix(rng, dim);
    let w = &g * &g.adjoint();
    let normalized = w.scale_re(1.0 / w.trace().re);
    let mixed = &normalized.scale_re(0.9) + &ComplexMatrix::identity(dim).scale_re(0.1 / dim as f64);
    DensityMatrix::new(mixed).expect("valid by construction")
}

/// Random CPTP channel on `qubits` qubits from a Stinespring dilation with an
/// `env_qubits`-qubit environment prepared in |0…0⟩.
pub fn random_channel(rng: &mut ChaCha8Rng, qubits: usize, env_qubits: usize) -> Channel {
    let env = DensityMatrix::computational(&"0".repeat(env_qubits)).expect("basis state");
    let u = random_unitary(rng, 1 << (qubits + env_qubits));
    Channel::from_dilation(u, env, OutputSlot::First).expect("valid dilation")
}
