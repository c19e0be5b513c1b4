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

//! Dense square complex matrix with row-major storage.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense square complex matrix.
///
/// The substrate for every matrix-valued object in the crate: states,
/// channels, Pauli operators, PDMs and Choi matrices. Entries are stored
/// row-major; indices are `(row, col)`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `dim` (must be at least 1).
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        ComplexMatrix { dim, data: vec![Complex64::ZERO; dim * dim] }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
        }
        m
    }

    /// Build from a function of `(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.data[r * dim + c] = f(r, c);
            }
        }
        m
    }

    /// Build from nested rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimMismatch(format!(
                "expected {dim} square rows of length {dim}"
            )));
        }
        Ok(ComplexMatrix { dim, data: rows.iter().flatten().copied().collect() })
    }

    /// Build from nested rows of real entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&complex)
    }

    /// Rank-one matrix `|v⟩⟨w|` from two amplitude vectors of equal length.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Result<Self> {
        if v.len() != w.len() || v.is_empty() {
            return Err(Error::DimMismatch(format!(
                "outer product needs equal nonzero lengths, got {} and {}",
                v.len(),
                w.len()
            )));
        }
        let dim = v.len();
        Ok(Self::from_fn(dim, |r, c| v[r] * w[c].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// Raw row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    /// Plain transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Scale by a complex factor.
    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    /// Scale by a real factor.
    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest entry magnitude, `max_ij |a_ij|`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to another matrix.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_diff(other) <= tol
    }

    /// `max_ij |a_ij − conj(a_ji)|`; zero for exactly Hermitian matrices.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `max |U†U − I|`; zero for exactly unitary matrices.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = &self.adjoint() * self;
        gram.max_diff(&Self::identity(self.dim))
    }

    /// Kronecker product `self ⊗ other`.
    ///
    /// The left operand is the most significant tensor factor: indices of the
    /// product decompose as `i = i_a · dim(b) + i_b`.
    pub fn tensor(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        Self::from_fn(da * db, |r, c| {
            self.get(r / db, c / db) * other.get(r % db, c % db)
        })
    }

    /// Partial trace over the subsystems *not* listed in `keep`.
    ///
    /// `dims` are the subsystem dimensions in tensor order (first entry most
    /// significant) and must multiply to the matrix dimension. `keep` must be
    /// strictly increasing; kept subsystems retain their relative order.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || total != self.dim {
            return Err(Error::DimMismatch(format!(
                "subsystem dims {dims:?} do not multiply to matrix dim {}",
                self.dim
            )));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadSubsystem(format!("keep set {keep:?} must be strictly increasing")));
        }
        if keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::BadSubsystem(format!(
                "keep set {keep:?} references subsystems beyond {}",
                dims.len()
            )));
        }

        let discard: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
        let strides = index_strides(dims);
        let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
        let disc_dims: Vec<usize> = discard.iter().map(|&k| dims[k]).collect();
        let dim_keep: usize = kept_dims.iter().product();
        let dim_disc: usize = disc_dims.iter().product();

        let mut out = Self::zeros(dim_keep.max(1));
        for kr in 0..dim_keep {
            let row_base = compose_index(kr, &kept_dims, keep, &strides);
            for kc in 0..dim_keep {
                let col_base = compose_index(kc, &kept_dims, keep, &strides);
                let mut sum = Complex64::ZERO;
                for e in 0..dim_disc {
                    let off = compose_index(e, &disc_dims, &discard, &strides);
                    sum += self.get(row_base + off, col_base + off);
                }
                out.set(kr, kc, sum);
            }
        }
        Ok(out)
    }

    /// Partial transpose on the first tensor factor of a `d1 ⊗ d2` bipartition.
    pub fn partial_transpose_first(&self, dim_first: usize) -> Result<Self> {
        if dim_first == 0 || !self.dim.is_multiple_of(dim_first) {
            return Err(Error::DimMismatch(format!(
                "first factor {dim_first} does not divide matrix dim {}",
                self.dim
            )));
        }
        let d2 = self.dim / dim_first;
        Ok(Self::from_fn(self.dim, |r, c| {
            let (a, m) = (r / d2, r % d2);
            let (b, n) = (c / d2, c % d2);
            self.get(b * d2 + m, a * d2 + n)
        }))
    }
}

/// Positions of each subsystem in a flattened index: `stride[i] = Π dims[i+1..]`.
fn index_strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// Spread a packed multi-index over the listed subsystem positions.
fn compose_index(packed: usize, sub_dims: &[usize], positions: &[usize], strides: &[usize]) -> usize {
    let mut rem = packed;
    let mut idx = 0usize;
    for j in (0..sub_dims.len()).rev() {
        let digit = rem % sub_dims[j];
        rem /= sub_dims[j];
        idx += digit * strides[positions[j]];
    }
    idx
}

/// The unitary that swaps two equal-dimension tensor slots: `S(|a⟩⊗|b⟩) = |b⟩⊗|a⟩`.
pub fn slot_swap(slot_dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(slot_dim * slot_dim, |r, c| {
        let (a, b) = (r / slot_dim, r % slot_dim);
        let (cc, dd) = (c / slot_dim, c % slot_dim);
        if a == dd && b == cc {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    })
}

/// `ab + ba`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "anticommutator of dims {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(&(a * b) + &(b * a))
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  [")?;
            for c in 0..self.dim {
                let z = self.get(r, c);
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix addition dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix subtraction dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::Pauli;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.tensor(&i2).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn tensor_z_z_is_diagonal() {
        let z = Pauli::Z.matrix();
        let zz = z.tensor(&z);
        let expected =
            ComplexMatrix::from_real_rows(&[
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0, 0.0],
                vec![0.0, 0.0, -1.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0],
            ])
            .unwrap();
        assert!(zz.approx_eq(&expected, 0.0));
    }

    #[test]
    fn nested_tensor_matches_pauli_string() {
        // tensor(X, I) nested once more against the 3-qubit label oracle.
        use crate::linalg::pauli::PauliString;
        let x = Pauli::X.matrix();
        let i2 = ComplexMatrix::identity(2);
        let nested = x.tensor(&i2).tensor(&i2);
        // Oracle: Kronecker factor by factor from labels.
        let oracle = PauliString::from_labels("XII").unwrap().matrix();
        assert!(nested.approx_eq(&oracle, 0.0));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho = ComplexMatrix::from_real_rows(&[vec![0.75, 0.25], vec![0.25, 0.25]]).unwrap();
        let sigma = ComplexMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        let joint = rho.tensor(&sigma);
        let back = joint.partial_trace(&[2, 2], &[0]).unwrap();
        assert!(back.approx_eq(&rho, 1e-15));
    }

    #[test]
    fn partial_trace_of_bell_projector_is_maximally_mixed() {
        // 2|Φ+⟩⟨Φ+| has both marginals equal to I₂.
        let amp = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let m = ComplexMatrix::outer(&amp, &amp).unwrap();
        let marginal = m.partial_trace(&[2, 2], &[0]).unwrap();
        assert!(marginal.approx_eq(&ComplexMatrix::identity(2), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(4);
        assert!(m.partial_trace(&[3, 2], &[0]).is_err());
        assert!(m.partial_trace(&[2, 2], &[2]).is_err());
        assert!(m.partial_trace(&[2, 2], &[1, 0]).is_err());
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let m = crate::random::random_hermitian(&mut crate::random::rng(7), 8);
        let reduced = m.partial_trace(&[2, 2, 2], &[1]).unwrap();
        assert!((reduced.trace() - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn slot_swap_swaps() {
        let s = slot_swap(2);
        let x = Pauli::X.matrix();
        let z = Pauli::Z.matrix();
        let xz = x.tensor(&z);
        let zx = z.tensor(&x);
        let conj = &(&s * &xz) * &s.adjoint();
        assert!(conj.approx_eq(&zx, 1e-15));
        assert!((&s * &s).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn anticommutator_cases() {
        let x = Pauli::X.matrix();
        let z = Pauli::Z.matrix();
        let two_i = ComplexMatrix::identity(2).scale_re(2.0);
        assert!(anticommutator(&x, &x).unwrap().approx_eq(&two_i, 0.0));
        assert!(anticommutator(&x, &z).unwrap().approx_eq(&ComplexMatrix::zeros(2), 0.0));
        assert!(anticommutator(&x, &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn anticommutator_of_hermitian_is_hermitian() {
        let mut rng = crate::random::rng(11);
        let a = crate::random::random_hermitian(&mut rng, 4);
        let b = crate::random::random_hermitian(&mut rng, 4);
        let ab = anticommutator(&a, &b).unwrap();
        assert!(ab.hermiticity_residual() < 1e-12);
    }

    #[test]
    fn partial_transpose_of_swap_is_bell_projector() {
        let s = slot_swap(2);
        let pt = s.partial_transpose_first(2).unwrap();
        let amp = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let bell2 = ComplexMatrix::outer(&amp, &amp).unwrap();
        assert!(pt.approx_eq(&bell2, 0.0));
    }
}
