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

//! The built-in oracle suite behind `qcausal selftest`.
//!
//! Each check recomputes a known result through an independent route (closed
//! forms, eigendecomposition, brute-force enumeration) and compares.

use std::f64::consts::PI;

use qcausal::{
    build_pdm, classify, extract_choi, generate_table, generate_table_scattering, hermitian_eigen,
    infer_causal_structure, negativity, time_reverse, CausalTag, Channel, ChannelSpec, ExpectationTable,
    PauliString, ScenarioConfig, StateSpec,
};

type Check = (&'static str, fn() -> Result<(), String>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pauli_orthogonality() -> Result<(), String> {
    for n in 1..=2usize {
        let dim = (1 << n) as f64;
        for p in PauliString::all(n) {
            for q in PauliString::all(n) {
                let inner = (&p.matrix() * &q.matrix()).trace().re;
                let expected = if p == q { dim } else { 0.0 };
                ensure((inner - expected).abs() < 1e-12, format!("Tr[{p}·{q}] = {inner}"))?;
            }
        }
    }
    Ok(())
}

fn eigen_reconstruction() -> Result<(), String> {
    let mut rng = qcausal::random::rng(2026);
    for dim in [2usize, 4, 8] {
        let m = qcausal::random::random_hermitian(&mut rng, dim);
        let eig = hermitian_eigen(&m).map_err(|e| e.to_string())?;
        let residual = eig.reconstruct().max_diff(&m);
        ensure(residual < 1e-9, format!("dim {dim}: reconstruction residual {residual}"))?;
    }
    Ok(())
}

fn identity_channel_anchor() -> Result<(), String> {
    let scenario = ScenarioConfig::cause_effect(
        StateSpec::MaximallyMixed { qubits: 1 },
        ChannelSpec::Identity { qubits: 1 },
    );
    let table = generate_table(&scenario).map_err(|e| e.to_string())?;
    let pdm = build_pdm(&table).map_err(|e| e.to_string())?;
    ensure((pdm.negativity() - 1.0).abs() < 1e-9, "f(SWAP/2) must be 1")?;
    let rec = extract_choi(&pdm).map_err(|e| e.to_string())?;
    let expected = Channel::identity(1).choi();
    ensure(rec.choi.max_diff(&expected) < 1e-8, "identity-channel Choi anchor")?;
    let verdict = infer_causal_structure(&table, 1e-7).map_err(|e| e.to_string())?;
    ensure(verdict.tag == CausalTag::EitherDirection, format!("identity verdict {}", verdict.tag))
}

fn decohering_closed_form() -> Result<(), String> {
    for lambda in [0.0, 0.4, 0.7, 1.0] {
        let scenario = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
            .with_lambda(lambda);
        let table = generate_table(&scenario).map_err(|e| e.to_string())?;
        let f = build_pdm(&table).map_err(|e| e.to_string())?.negativity();
        let expected = (1.0 + lambda * lambda).sqrt() - 1.0;
        ensure((f - expected).abs() < 1e-9, format!("λ = {lambda}: f = {f}, expected {expected}"))?;
    }
    Ok(())
}

fn partial_swap_endpoints() -> Result<(), String> {
    for theta in [0.0, PI] {
        let scenario = ScenarioConfig::cause_effect(
            StateSpec::LambdaPlus,
            ChannelSpec::PartialSwap { ancilla: None },
        )
        .with_lambda(0.7)
        .with_theta(theta);
        let table = generate_table(&scenario).map_err(|e| e.to_string())?;
        let f = build_pdm(&table).map_err(|e| e.to_string())?.negativity();
        ensure(f <= 1e-9, format!("θ = {theta}: f = {f}"))?;
    }
    Ok(())
}

fn pathway_equivalence() -> Result<(), String> {
    let scenario = ScenarioConfig::cause_effect(
        StateSpec::LambdaPlus,
        ChannelSpec::PartialSwap { ancilla: None },
    )
    .with_lambda(0.9)
    .with_theta(3.0 * PI / 8.0);
    let closed = generate_table(&scenario).map_err(|e| e.to_string())?;
    let scattered = generate_table_scattering(&scenario).map_err(|e| e.to_string())?;
    for (i1, i2, v) in closed.entries() {
        let s = scattered.get_by_index(i1, i2).expect("complete");
        ensure((v - s).abs() <= 1e-10, format!("pathways diverge at ({i1}, {i2}): {v} vs {s}"))?;
    }
    Ok(())
}

fn time_reversal_symmetry() -> Result<(), String> {
    let scenario = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
        .with_lambda(0.6);
    let pdm = build_pdm(&generate_table(&scenario).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let rev = time_reverse(&pdm).map_err(|e| e.to_string())?;
    let back = time_reverse(&rev).map_err(|e| e.to_string())?;
    ensure(back.matrix().max_diff(pdm.matrix()) == 0.0, "time reversal must be an involution")?;
    ensure(
        (negativity(rev.matrix()) - negativity(pdm.matrix())).abs() < 1e-10,
        "negativity must be reversal-invariant",
    )
}

fn classifier_rows() -> Result<(), String> {
    let eps = 1e-7;
    ensure(classify(0.0, 0.3, 0.7, eps).tag == CausalTag::CommonCause, "row 1")?;
    ensure(classify(0.4, 0.0, 0.8, eps).tag == CausalTag::AtoB, "row 2")?;
    ensure(classify(0.4, 0.8, 0.0, eps).tag == CausalTag::BtoA, "row 3")?;
    ensure(classify(1.0, 0.0, 0.0, eps).tag == CausalTag::EitherDirection, "row 4")?;
    ensure(classify(0.4, 0.3, 0.3, eps).tag == CausalTag::Mixture, "row 5")
}

fn table_csv_round_trip() -> Result<(), String> {
    let scenario = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
        .with_lambda(0.7);
    let table = generate_table(&scenario).map_err(|e| e.to_string())?;
    let csv = table.to_csv_string();
    let back = ExpectationTable::read_csv(csv.as_bytes()).map_err(|e| e.to_string())?;
    ensure(back == table, "table CSV round trip must be exact")
}

fn marginal_consistency() -> Result<(), String> {
    let lambda = 0.7;
    let scenario = ScenarioConfig::cause_effect(StateSpec::LambdaPlus, ChannelSpec::MeasurePrepare)
        .with_lambda(lambda);
    let pdm = build_pdm(&generate_table(&scenario).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let marginal = qcausal::marginal_at_time(&pdm, qcausal::TimeSlot::First).map_err(|e| e.to_string())?;
    let expected = qcausal::lambda_plus_state(lambda).map_err(|e| e.to_string())?;
    ensure(
        marginal.matrix().max_diff(expected.matrix()) < 1e-10,
        "slot-1 marginal must match the initial state",
    )
}

/// All selftest checks in execution order.
pub fn checks() -> Vec<Check> {
    vec![
        ("pauli_orthogonality", pauli_orthogonality),
        ("eigen_reconstruction", eigen_reconstruction),
        ("identity_channel_anchor", identity_channel_anchor),
        ("decohering_closed_form", decohering_closed_form),
        ("partial_swap_endpoints", partial_swap_endpoints),
        ("pathway_equivalence", pathway_equivalence),
        ("time_reversal_symmetry", time_reversal_symmetry),
        ("classifier_rows", classifier_rows),
        ("table_csv_round_trip", table_csv_round_trip),
        ("marginal_consistency", marginal_consistency),
    ]
}

/// Run every check, printing one line per check; returns the failure count.
pub fn run(mut out: impl std::io::Write) -> std::io::Result<usize> {
    let mut failures = 0usize;
    for (name, check) in checks() {
        match check() {
            Ok(()) => writeln!(out, "ok      {name}")?,
            Err(msg) => {
                failures += 1;
                writeln!(out, "FAILED  {name}: {msg}")?;
            }
        }
    }
    if failures == 0 {
        writeln!(out, "selftest: all {} checks passed", checks().len())?;
    } else {
        writeln!(out, "selftest: {failures} of {} checks failed", checks().len())?;
    }
    Ok(failures)
}
