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

//! Hermitian eigendecomposition and the trace norm.
//!
//! The solver is a cyclic Jacobi iteration with complex Givens rotations. For
//! the matrix sizes in scope (≤ 32) it converges in a handful of sweeps and
//! delivers eigenvalues and orthonormal eigenvectors at machine precision.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

/// Result of a Hermitian eigendecomposition: `m = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered to match `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Reassemble `V diag(values) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut vd = ComplexMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                vd.set(r, c, self.vectors.get(r, c) * self.values[c]);
            }
        }
        &vd * &self.vectors.adjoint()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Eigendecomposition of a Hermitian matrix, default Hermiticity tolerance 1e-8.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen_with_tol(m, 1e-8)
}

/// Eigendecomposition of a Hermitian matrix with an explicit Hermiticity
/// tolerance; inputs further from Hermitian than `tol` are rejected.
pub fn hermitian_eigen_with_tol(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let residual = m.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    Ok(jacobi_hermitian(m))
}

/// Trace norm `Tr √(m m†)`, the sum of singular values.
///
/// For Hermitian input this equals the sum of eigenvalue magnitudes and is
/// computed directly from the eigendecomposition; general square matrices go
/// through the Hermitian matrix `m†m` whose eigenvalues are squared singular
/// values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    let scale = 1.0f64.max(m.max_abs());
    if m.hermiticity_residual() <= 1e-12 * scale {
        jacobi_hermitian(m).values.iter().map(|v| v.abs()).sum()
    } else {
        let gram = &m.adjoint() * m;
        jacobi_hermitian(&gram).values.iter().map(|v| v.max(0.0).sqrt()).sum()
    }
}

/// Cyclic complex Jacobi iteration. The input is symmetrized first, so any
/// residual non-Hermiticity below the caller's tolerance is averaged away.
fn jacobi_hermitian(m: &ComplexMatrix) -> HermitianEigen {
    let n = m.dim();
    // Work on the Hermitian average (a + a†)/2.
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|i| {
            let (r, c) = (i / n, i % n);
            (m.get(r, c) + m.get(c, r).conj()) * 0.5
        })
        .collect();
    let mut v: Vec<Complex64> = ComplexMatrix::identity(n).data().to_vec();

    let scale = 1.0f64.max(m.max_abs());
    let target = 1e-14 * scale;
    let max_sweeps = 60;

    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].norm());
            }
        }
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let x = a[p * n + p].re;
                let y = a[q * n + q].re;
                // Rotation angle from tan(2θ) = 2r/(x − y).
                let tau = (x - y) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_conj_phase = phase.conj() * s;
                let s_phase = phase * s;

                // Rows/columns p and q of the Hermitian working matrix.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = akp * c + akq * s_conj_phase;
                    let new_kq = akq * c - akp * s_phase;
                    a[k * n + p] = new_kp;
                    a[k * n + q] = new_kq;
                    a[p * n + k] = new_kp.conj();
                    a[q * n + k] = new_kq.conj();
                }
                let d = 2.0 * c * s * r;
                a[p * n + p] = Complex64::new(c * c * x + d + s * s * y, 0.0);
                a[q * n + q] = Complex64::new(s * s * x - d + c * c * y, 0.0);
                a[p * n + q] = Complex64::ZERO;
                a[q * n + p] = Complex64::ZERO;

                // Accumulate the eigenvector rotation V ← V·J.
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * s_conj_phase;
                    v[k * n + q] = vkq * c - vkp * s_phase;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.partial_cmp(&a[i * n + i].re).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[r * n + order[c]]);
    HermitianEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::slot_swap;
    use crate::linalg::pauli::Pauli;

    #[test]
    fn pauli_z_spectrum() {
        let eig = hermitian_eigen(&Pauli::Z.matrix()).unwrap();
        assert_eq!(eig.values.len(), 2);
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn half_swap_spectrum() {
        // SWAP/2 splits into the symmetric (+1/2, threefold) and antisymmetric
        // (−1/2) eigenspaces.
        let m = slot_swap(2).scale_re(0.5);
        let eig = hermitian_eigen(&m).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (got, want) in eig.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{:?}", eig.values);
        }
    }

    #[test]
    fn reconstructs_random_hermitian() {
        let mut rng = crate::random::rng(42);
        for dim in [2usize, 3, 4, 8, 16] {
            let m = crate::random::random_hermitian(&mut rng, dim);
            let eig = hermitian_eigen(&m).unwrap();
            let residual = eig.reconstruct().max_diff(&m);
            assert!(residual < 1e-9, "dim {dim}: residual {residual}");
            // Orthonormal columns.
            assert!(eig.vectors.unitarity_residual() < 1e-12);
            // Eigenvalue sum matches the trace.
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-9);
            // Descending order.
            assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn trace_norm_of_identity() {
        assert!((trace_norm(&ComplexMatrix::identity(4)) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_of_half_swap() {
        let m = slot_swap(2).scale_re(0.5);
        assert!((trace_norm(&m) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_is_unitarily_invariant() {
        let mut rng = crate::random::rng(3);
        for _ in 0..5 {
            let m = crate::random::random_hermitian(&mut rng, 4);
            let u = crate::random::random_unitary(&mut rng, 4);
            let rotated = &(&u * &m) * &u.adjoint();
            assert!((trace_norm(&rotated) - trace_norm(&m)).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_norm_of_non_hermitian_matches_singular_values() {
        // Upper shift matrix has singular values (1, 0).
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!((trace_norm(&m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_dominates_trace_with_equality_iff_psd() {
        let mut rng = crate::random::rng(9);
        for _ in 0..10 {
            let m = crate::random::random_hermitian(&mut rng, 4);
            let tn = trace_norm(&m);
            assert!(tn >= m.trace().re.abs() - 1e-12);
            let min = hermitian_eigen(&m).unwrap().min();
            let gap = tn - m.trace().re;
            if min >= -1e-9 {
                assert!(gap <= 2e-9);
            } else {
                assert!(gap > 1e-9);
            }
        }
        // A manifestly positive matrix hits equality.
        let psd = ComplexMatrix::from_real_rows(&[vec![0.7, 0.1], vec![0.1, 0.3]]).unwrap();
        assert!((trace_norm(&psd) - psd.trace().re).abs() < 1e-12);
    }
}
