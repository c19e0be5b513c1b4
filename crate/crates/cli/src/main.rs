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

//! `qcausal` command line: run scenario sweeps, classify tables, self-check.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 1 other (I/O).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qcausal_cli::config::ConfigFile;
use qcausal_cli::harness::{
    emit_csv, emit_report, import_lab_table, run_plan, write_verdict, HarnessError,
};
use qcausal_cli::selftest;
use qcausal_cli::Pathway;

#[derive(Parser)]
#[command(name = "qcausal", version, about = "Quantum causal inference from two-time correlator data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured parameter sweep and emit the data CSV (and report).
    Sweep {
        /// JSON experiment configuration.
        #[arg(long)]
        config: PathBuf,
        /// Override the configured CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the verdict threshold ε.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Override the correlator pathway.
        #[arg(long, value_enum)]
        pathway: Option<PathwayArg>,
    },
    /// Classify a single correlator table CSV (header: i1_labels,i2_labels,value).
    Infer {
        /// Path to the table CSV.
        table: PathBuf,
        /// Verdict threshold ε; must be chosen to match the data's noise
        /// floor (0.02 is a reasonable start for lab data).
        #[arg(long)]
        epsilon: f64,
        /// Also write the verdict record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in derived-oracle checks.
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PathwayArg {
    ClosedForm,
    Scattering,
}

impl From<PathwayArg> for Pathway {
    fn from(p: PathwayArg) -> Self {
        match p {
            PathwayArg::ClosedForm => Pathway::ClosedForm,
            PathwayArg::Scattering => Pathway::Scattering,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Sweep { config, out, epsilon, pathway } => {
            let mut file = ConfigFile::load(&config)?;
            if let Some(eps) = epsilon {
                file.tolerances.epsilon = eps;
            }
            if let Some(p) = pathway {
                file.pathway = p.into();
            }
            if let Some(path) = out {
                file.output.csv = Some(path);
            }
            let plan = file.into_plan()?;
            let csv_path = plan.csv_path.clone().ok_or_else(|| {
                HarnessError::Config("no CSV output path: set output.csv in the config or pass --out".into())
            })?;

            let rows = run_plan(&plan)?;
            emit_csv(&rows, &csv_path)?;
            if let Some(report_path) = &plan.report_path {
                emit_report(&rows, &plan, report_path)?;
            }
            println!(
                "wrote {} row(s) to {} ({} sweep over [{}, {}])",
                rows.len(),
                csv_path.display(),
                plan.sweep.parameter.name(),
                plan.sweep.start,
                plan.sweep.stop
            );
            for row in &rows {
                println!(
                    "  {} = {:.6}: f(R) = {:.6e}, verdict {}",
                    row.parameter, row.value, row.f_r, row.verdict
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Infer { table, epsilon, out } => {
            let verdict = import_lab_table(&table, epsilon)?;
            println!("{verdict}");
            if verdict.support_restricted {
                println!("note: support-restricted — verdict valid on the support of the slot-1 marginal");
            }
            if let Some(path) = out {
                write_verdict(&verdict, &path)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let failures = selftest::run(std::io::stdout())
                .map_err(|e| HarnessError::Io { path: "stdout".into(), source: e })?;
            if failures == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
    }
}
