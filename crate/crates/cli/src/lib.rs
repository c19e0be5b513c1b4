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

//! Experiment driver for `qcausal`: JSON scenario configs, parameter sweeps,
//! deterministic CSV emission, and causal verdicts for imported correlator
//! tables.

pub mod config;
pub mod harness;
pub mod selftest;

pub use config::{ConfigFile, Pathway};
pub use harness::{
    emit_csv, emit_report, import_lab_table, read_rows_csv, report_string, rows_to_csv, run_plan,
    HarnessError, ReportRow, RunPlan, SweepParameter, SweepSpec,
};
