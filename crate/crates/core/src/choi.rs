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

//! Choi-matrix extraction from a PDM and the causal-structure classifier.
//!
//! A cause-effect PDM with initial state ρ and channel 𝓔 satisfies
//!
//! ```text
//! R = (1/2) { ρ ⊗ I , X }          with X = C^{T₁},
//! ```
//!
//! where `C = Σ |i⟩⟨j| ⊗ 𝓔(|i⟩⟨j|)` is the channel's Choi matrix and `T₁`
//! the partial transpose on the first slot. Extraction therefore solves the
//! anticommutator (Sylvester-type) equation for `X` in the eigenbasis of
//! `P = ρ ⊗ I`, where it is diagonal: `X_mn = 2 R_mn / (p_m + p_n)`. The
//! partial transpose of the solution is the object whose positivity the
//! decision table tests: positive in exactly one temporal ordering for a
//! genuine cause-effect process.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{anticommutator, hermitian_eigen, ComplexMatrix};
use crate::pdm::{build_pdm_with, marginal_at_time_with, negativity, time_reverse, ExpectationTable, Pdm, TimeSlot};
use crate::tolerance::Tolerances;

/// Result of recovering the channel representation from a PDM.
#[derive(Debug, Clone)]
pub struct ChoiReconstruction {
    /// The matrix whose positivity is tested. On a rank-deficient marginal it
    /// is restricted to `supp(ρ) ⊗ H₂`, with the partial transpose taken over
    /// the support factor; the spectrum (hence any negativity verdict) does
    /// not depend on the basis choice.
    pub choi: ComplexMatrix,
    /// Solution `X` of `(1/2){ρ⊗I, X} = R` on the full space, zero outside
    /// the support.
    pub anticommutator_solution: ComplexMatrix,
    /// `max |(1/2){ρ⊗I, X} − R|`.
    pub residual: f64,
    /// Set when some eigenvalue-pair sum fell below the rank tolerance and
    /// the reconstruction was restricted to the support of ρ.
    pub rank_deficiency_flag: bool,
}

/// Extract the Choi matrix of the channel a PDM is compatible with (exact tier).
pub fn extract_choi(r: &Pdm) -> Result<ChoiReconstruction> {
    extract_choi_with(r, &Tolerances::exact())
}

/// Extract the Choi matrix under an explicit tolerance tier.
pub fn extract_choi_with(r: &Pdm, tol: &Tolerances) -> Result<ChoiReconstruction> {
    let rho = marginal_at_time_with(r, TimeSlot::First, tol)?;
    let d1 = rho.dim();
    let d2 = r.dim() / d1;

    // Eigenbasis of P = ρ ⊗ I comes straight from the eigenbasis of ρ; each
    // ρ-eigenvalue repeats d2 times.
    let rho_eig = hermitian_eigen(rho.matrix())?;
    let v = rho_eig.vectors.tensor(&ComplexMatrix::identity(d2));
    let p: Vec<f64> = rho_eig
        .values
        .iter()
        .flat_map(|&w| std::iter::repeat_n(w, d2))
        .collect();

    let r_tilde = &(&v.adjoint() * r.matrix()) * &v;

    let dim = r.dim();
    let mut x_tilde = ComplexMatrix::zeros(dim);
    let mut flag = false;
    let mut any_support = false;
    for m in 0..dim {
        for n in 0..dim {
            let denom = p[m] + p[n];
            if denom > tol.rank {
                x_tilde.set(m, n, r_tilde.get(m, n) * (2.0 / denom));
                any_support = true;
            } else {
                flag = true;
            }
        }
    }
    if !any_support {
        return Err(Error::EmptySupport);
    }

    let x = &(&v * &x_tilde) * &v.adjoint();

    let p_full = rho.matrix().tensor(&ComplexMatrix::identity(d2));
    let reproduced = anticommutator(&p_full, &x)?.scale_re(0.5);
    let residual = reproduced.max_diff(r.matrix());

    let choi = if !flag {
        x.partial_transpose_first(d1)?
    } else {
        // Keep only ρ-eigenvectors with weight above the cutoff; the solution
        // restricted to supp(ρ) ⊗ H₂ is expressed in that eigenbasis, where
        // the partial transpose over the (reduced) first factor is defined.
        let support: Vec<usize> = (0..d1).filter(|&i| rho_eig.values[i] > tol.rank).collect();
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let rows: Vec<usize> = support
            .iter()
            .flat_map(|&i| (0..d2).map(move |j| i * d2 + j))
            .collect();
        let restricted =
            ComplexMatrix::from_fn(rows.len(), |a, b| x_tilde.get(rows[a], rows[b]));
        restricted.partial_transpose_first(support.len())?
    };

    Ok(ChoiReconstruction { choi, anticommutator_solution: x, residual, rank_deficiency_flag: flag })
}

/// The five causal structures distinguished by the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalTag {
    CommonCause,
    AtoB,
    BtoA,
    EitherDirection,
    Mixture,
}

impl fmt::Display for CausalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalTag::CommonCause => "CommonCause",
            CausalTag::AtoB => "AtoB",
            CausalTag::BtoA => "BtoA",
            CausalTag::EitherDirection => "EitherDirection",
            CausalTag::Mixture => "Mixture",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CausalTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "CommonCause" => Ok(CausalTag::CommonCause),
            "AtoB" => Ok(CausalTag::AtoB),
            "BtoA" => Ok(CausalTag::BtoA),
            "EitherDirection" => Ok(CausalTag::EitherDirection),
            "Mixture" => Ok(CausalTag::Mixture),
            _ => Err(Error::BadScenario(format!("unknown verdict tag {s:?}"))),
        }
    }
}

/// The classifier's verdict with its supporting negativities and threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalVerdict {
    pub tag: CausalTag,
    /// Negativity of the PDM itself.
    pub f_r: f64,
    /// Negativity of the Choi matrix extracted in the given time order.
    pub f_ab: f64,
    /// Negativity of the Choi matrix extracted after time reversal.
    pub f_ba: f64,
    /// Threshold below which a negativity counts as zero.
    pub epsilon: f64,
    /// Set when a Choi extraction was restricted to the support of a
    /// rank-deficient marginal; the verdict is then valid on that support.
    pub support_restricted: bool,
}

impl fmt::Display for CausalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "verdict={} f_R={} f_MAB={} f_MBA={} epsilon={} support_restricted={}",
            self.tag, self.f_r, self.f_ab, self.f_ba, self.epsilon, self.support_restricted
        )
    }
}

/// Threshold the three negativities at ε and match the decision table.
///
/// | f(R) | f(M_AB) | f(M_BA) | verdict          |
/// |------|---------|---------|------------------|
/// | 0    | any     | any     | CommonCause      |
/// | >0   | 0       | >0      | AtoB             |
/// | >0   | >0      | 0       | BtoA             |
/// | >0   | 0       | 0       | EitherDirection  |
/// | >0   | >0      | >0      | Mixture          |
pub fn classify(f_r: f64, f_ab: f64, f_ba: f64, epsilon: f64) -> CausalVerdict {
    let tag = if f_r <= epsilon {
        CausalTag::CommonCause
    } else {
        match (f_ab > epsilon, f_ba > epsilon) {
            (false, true) => CausalTag::AtoB,
            (true, false) => CausalTag::BtoA,
            (false, false) => CausalTag::EitherDirection,
            (true, true) => CausalTag::Mixture,
        }
    };
    CausalVerdict { tag, f_r, f_ab, f_ba, epsilon, support_restricted: false }
}

/// Run the full pipeline on a complete correlator table (exact tier).
///
/// Builds the PDM, computes its negativity, extracts the Choi matrices for
/// both temporal orderings and classifies against ε.
pub fn infer_causal_structure(table: &ExpectationTable, epsilon: f64) -> Result<CausalVerdict> {
    infer_causal_structure_with(table, epsilon, &Tolerances::exact())
}

/// Full pipeline under an explicit tolerance tier.
///
/// When `f(R) ≤ ε` the verdict is CommonCause regardless of the Choi
/// extractions, so extraction failures are tolerated there (the negativities
/// are reported as NaN); otherwise they propagate.
pub fn infer_causal_structure_with(
    table: &ExpectationTable,
    epsilon: f64,
    tol: &Tolerances,
) -> Result<CausalVerdict> {
    let pdm = build_pdm_with(table, tol)?;
    let f_r = negativity(pdm.matrix());
    let reversed = time_reverse(&pdm)?;

    let forward = extract_choi_with(&pdm, tol);
    let backward = extract_choi_with(&reversed, tol);

    let common_cause = f_r <= epsilon;
    let (f_ab, restricted_ab) = match forward {
        Ok(rec) => (negativity(&rec.choi), rec.rank_deficiency_flag),
        Err(_) if common_cause => (f64::NAN, false),
        Err(e) => return Err(e),
    };
    let (f_ba, restricted_ba) = match backward {
        Ok(rec) => (negativity(&rec.choi), rec.rank_deficiency_flag),
        Err(_) if common_cause => (f64::NAN, false),
        Err(e) => return Err(e),
    };

    let mut verdict = classify(f_r, f_ab, f_ba, epsilon);
    verdict.support_restricted = restricted_ab || restricted_ba;
    Ok(verdict)
}
