// Copyright 2026 The farstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command implementations behind the `farstate` binary.
//!
//! Exit codes: 0 success, 2 usage, 3 precondition failure, 4 violation of
//! the distance-bound chain (which signals a bug, since the chain is a
//! theorem).

pub mod sweep;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use farstate_core::bounds::{gv_condition, gv_threshold_k0, param_count, param_count_closed, param_count_upper};
use farstate_core::codes::{codeword, codeword_auto, max_far_locality, preset_code, validate_code};
use farstate_core::hamiltonian::{preset_hamiltonian, random_local, PresetParams};
use farstate_core::spectra::{verify_theorem_with, BoundReport, TheoremOptions};
use farstate_core::{Error, LocalHamiltonian, StabilizerCode, StateVector};

use crate::sweep::{run_sweep, to_csv, to_json, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

/// Overrides the largest register the spectral commands will diagonalise.
pub const MAX_QUBITS_ENV: &str = "FARSTATE_MAX_QUBITS";
pub const DEFAULT_MAX_QUBITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "farstate", version, about = "States far from the eigenstates of any local Hamiltonian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the real parameters of an L-local operator.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        locality: usize,
        /// Local dimension.
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Evaluate the Gilbert-Varshamov existence condition.
    Gv {
        #[arg(long, required_unless_present = "threshold")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "threshold")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "threshold")]
        t: Option<usize>,
        /// Print the asymptotic k = 0 threshold on t/n instead.
        #[arg(long, conflicts_with_all = ["n", "k", "t"])]
        threshold: bool,
    },
    /// Write a codeword of a stabilizer code as an amplitude file.
    MakeState {
        #[command(flatten)]
        source: CodeSource,
        /// Computational-basis seed; by default seeds 0, 1, 2, ... are tried.
        #[arg(long)]
        seed: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a preset or random Hamiltonian file.
    MakeHamiltonian {
        #[arg(long)]
        preset: Option<HamiltonianKind>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        coupling: f64,
        #[arg(long, default_value_t = 1.0)]
        field: f64,
        /// Random locality (with --random-seed) instead of a preset.
        #[arg(long, conflicts_with = "preset", requires = "random_seed")]
        locality: Option<usize>,
        #[arg(long)]
        random_seed: Option<u64>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certify the distance-bound chain for one state and Hamiltonian.
    Verify {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        hamiltonian: PathBuf,
        /// Reject Hamiltonian terms heavier than this.
        #[arg(long)]
        locality: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        degeneracy_tol: Option<f64>,
    },
    /// Certify the chain over a seeded ensemble of random local Hamiltonians.
    Sweep {
        #[command(flatten)]
        source: StateSource,
        /// Expected qubit count; checked against the state.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        locality: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        degeneracy_tol: Option<f64>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CodeSource {
    #[arg(long)]
    pub preset: Option<String>,
    /// Stabilizer file: one signed IXYZ generator per line.
    #[arg(long)]
    pub code: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StateSource {
    /// Use the first codeword of a preset code.
    #[arg(long)]
    pub preset: Option<String>,
    /// Amplitude file.
    #[arg(long)]
    pub state: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HamiltonianKind {
    TransverseIsing,
    Heisenberg,
}

/// A failed command: exit code plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PRECONDITION, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::precondition(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command. Reports go to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if f.code == EXIT_USAGE {
                let _ = writeln!(err, "\nFor more information, try '--help'.");
            }
            f.code
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::precondition(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn max_qubits() -> std::result::Result<usize, Failure> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&q: &usize| q < 63)
            .ok_or_else(|| Failure::usage(format!("{MAX_QUBITS_ENV}={v} is not a qubit count"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

fn theorem_options(degeneracy_tol: Option<f64>) -> std::result::Result<TheoremOptions, Failure> {
    if let Some(tol) = degeneracy_tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Failure::usage(format!("degeneracy tolerance {tol} must be finite and non-negative")));
        }
    }
    Ok(TheoremOptions { degeneracy_tol, max_dim: 1usize << max_qubits()? })
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Count { n, locality, d } => cmd_count(n, locality, d, out),
        Command::Gv { n, k, t, threshold } => cmd_gv(n, k, t, threshold, out),
        Command::MakeState { source, seed, output } => cmd_make_state(&source, seed, &output, out, err),
        Command::MakeHamiltonian { preset, n, coupling, field, locality, random_seed, scale, output } => {
            cmd_make_hamiltonian(preset, n, coupling, field, locality, random_seed, scale, &output, out)
        }
        Command::Verify { state, hamiltonian, locality, format, degeneracy_tol } => {
            cmd_verify(&state, &hamiltonian, locality, format, degeneracy_tol, out)
        }
        Command::Sweep { source, n, locality, trials, seed, scale, format, output, degeneracy_tol } => {
            let config = SweepConfig {
                locality,
                trials,
                master_seed: seed,
                scale,
                theorem: theorem_options(degeneracy_tol)?,
            };
            cmd_sweep(&source, n, &config, format, output.as_deref(), out, err)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::precondition(format!("writing output: {e}")))
}

pub fn cmd_count(n: usize, locality: usize, d: u32, out: &mut dyn Write) -> CmdResult {
    if locality > n {
        return Err(Failure::usage(format!("--locality {locality} exceeds --n {n}")));
    }
    if d < 2 {
        return Err(Failure::usage(format!("--d {d} must be at least 2")));
    }
    let count = param_count(n, locality, d)?;
    let mut text = format!("param_count: {count}\n");
    if d == 2 && matches!(locality, 2 | 3) {
        text += &format!("closed_form: {}\n", param_count_closed(n, locality)?);
    }
    let upper = param_count_upper(n, locality, d)?;
    text += &format!("upper_bound: {}", upper.value);
    if !upper.in_regime {
        text += " (unverified: L > n/2)";
    }
    text.push('\n');
    emit(out, &text)?;
    Ok(EXIT_OK)
}

pub fn cmd_gv(n: Option<usize>, k: Option<usize>, t: Option<usize>, threshold: bool, out: &mut dyn Write) -> CmdResult {
    if threshold {
        emit(out, &format!("{:.4}\n", gv_threshold_k0()))?;
        return Ok(EXIT_OK);
    }
    let (Some(n), Some(k), Some(t)) = (n, k, t) else {
        return Err(Failure::usage("gv needs --n, --k and --t, or --threshold"));
    };
    if n == 0 || k > n || 2 * t > n {
        return Err(Failure::usage(format!("need n >= 1, k <= n and 2t <= n (n={n}, k={k}, t={t})")));
    }
    let c = gv_condition(n, k, t).map_err(|e| Failure::usage(e.to_string()))?;
    let rhs = match c.exact_rhs() {
        Some(v) => v.to_string(),
        None => format!("{}/{}", c.numerator, c.denominator),
    };
    let relation = if c.exists { "<" } else { "≥" };
    emit(out, &format!("exists: {} ({} {relation} {rhs})\n", c.exists, c.count))?;
    Ok(EXIT_OK)
}

fn load_code(source: &CodeSource) -> std::result::Result<StabilizerCode, Failure> {
    match (&source.preset, &source.code) {
        (Some(name), _) => Ok(preset_code(name)?),
        (None, Some(path)) => StabilizerCode::parse(&read(path)?)
            .map_err(|e| Failure::precondition(format!("{}: {e}", path.display()))),
        (None, None) => Err(Failure::usage("one of --preset or --code is required")),
    }
}

pub fn cmd_make_state(
    source: &CodeSource,
    seed: Option<usize>,
    output: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let code = load_code(source)?;
    if let Err(defect) = validate_code(&code) {
        return Err(Failure::precondition(format!("invalid stabilizer code: {defect}")));
    }
    let (seed, psi) = match seed {
        Some(s) => (s, codeword(&code, s)?),
        None => codeword_auto(&code)?,
    };
    write_file(output, &psi.format_amplitudes())?;
    let (max_l, witness) = max_far_locality(&psi)?;
    let mut text = format!(
        "n: {}\nk: {}\nseed: {seed}\nmax_locality: {max_l}\n",
        code.n(),
        code.logical_qubits()
    );
    if let Some((rho, e)) = witness {
        text += &format!("witness: {rho} (weight {}, expectation {:.6}{:+.6}i)\n", rho.weight(), e.re, e.im);
    }
    emit(out, &text)?;
    let _ = writeln!(err, "wrote {} amplitudes to {}", psi.dim(), output.display());
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_make_hamiltonian(
    preset: Option<HamiltonianKind>,
    n: usize,
    coupling: f64,
    field: f64,
    locality: Option<usize>,
    random_seed: Option<u64>,
    scale: f64,
    output: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    let h = match (preset, locality, random_seed) {
        (Some(kind), _, _) => {
            let name = match kind {
                HamiltonianKind::TransverseIsing => "transverse_ising",
                HamiltonianKind::Heisenberg => "heisenberg",
            };
            preset_hamiltonian(name, n, PresetParams { coupling, field }).map_err(|e| Failure::usage(e.to_string()))?
        }
        (None, Some(l), Some(seed)) => random_local(n, l, seed, scale).map_err(|e| Failure::usage(e.to_string()))?,
        _ => return Err(Failure::usage("give --preset, or --locality with --random-seed")),
    };
    write_file(output, &h.format())?;
    emit(out, &format!("n: {}\nterms: {}\nlocality: {}\n", h.n(), h.terms().len(), h.locality()))?;
    Ok(EXIT_OK)
}

const VERIFY_CSV_HEADER: &str =
    "n,locality,min_distance,bound_intrinsic,bound_generic,bound_coarse,l2_norm,l1_norm,operator_norm,passed";

fn render_report(report: &BoundReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "{VERIFY_CSV_HEADER}\n{},{},{},{},{},{},{},{},{},{}\n",
            report.n,
            report.locality,
            report.min_distance,
            report.bound_intrinsic,
            report.bound_generic,
            report.bound_coarse,
            report.l2_norm,
            report.l1_norm,
            report.operator_norm,
            report.passed()
        ),
        Format::Text => {
            let c = &report.checks;
            let flag = |b: bool| if b { "pass" } else { "FAIL" };
            format!(
                "n: {}\nlocality: {}\neigenspaces: {}\nmin_distance: {:.6}\nclosest_eigenvalue: {:.6}\n\
                 bound_intrinsic: {:.6}\nbound_generic: {:.6}\nbound_coarse: {:.6}\n\
                 l2_norm: {:.6}\nl1_norm: {:.6}\noperator_norm: {:.6}\neigen_residual: {:.3e}\n\
                 check distance >= |H'psi|/|H'|: {}\ncheck |H'psi| = |h'|_2: {}\ncheck |H'| <= |h'|_1: {}\n\
                 check distance >= |h'|_2/|h'|_1: {}\ncheck |h'|_2/|h'|_1 >= intrinsic: {}\n\
                 check min_distance >= intrinsic: {}\ncheck intrinsic >= generic: {}\ncheck generic >= coarse: {}\n\
                 chain: {}\n",
                report.n,
                report.locality,
                report.eigenspaces.len(),
                report.min_distance,
                report.closest_eigenvalue,
                report.bound_intrinsic,
                report.bound_generic,
                report.bound_coarse,
                report.l2_norm,
                report.l1_norm,
                report.operator_norm,
                report.eigen_residual,
                flag(c.distance_ge_action_ratio),
                flag(c.action_equals_l2),
                flag(c.operator_norm_le_l1),
                flag(c.distance_ge_ratio),
                flag(c.ratio_ge_intrinsic),
                flag(c.distance_ge_intrinsic),
                flag(c.intrinsic_ge_generic),
                flag(c.generic_ge_coarse),
                flag(report.passed()),
            )
        }
    }
}

pub fn cmd_verify(
    state: &Path,
    hamiltonian: &Path,
    locality: Option<usize>,
    format: Format,
    degeneracy_tol: Option<f64>,
    out: &mut dyn Write,
) -> CmdResult {
    let opts = theorem_options(degeneracy_tol)?;
    let psi = StateVector::parse_amplitudes(&read(state)?)
        .map_err(|e| Failure::precondition(format!("{}: {e}", state.display())))?;
    let h = LocalHamiltonian::parse(&read(hamiltonian)?, locality)
        .map_err(|e| Failure::precondition(format!("{}: {e}", hamiltonian.display())))?;
    let report = verify_theorem_with(&psi, &h, &opts)?;
    emit(out, &render_report(&report, format))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

fn load_state(source: &StateSource) -> std::result::Result<StateVector, Failure> {
    match (&source.preset, &source.state) {
        (Some(name), _) => Ok(codeword_auto(&preset_code(name)?)?.1),
        (None, Some(path)) => StateVector::parse_amplitudes(&read(path)?)
            .map_err(|e| Failure::precondition(format!("{}: {e}", path.display()))),
        (None, None) => Err(Failure::usage("one of --preset or --state is required")),
    }
}

pub fn cmd_sweep(
    source: &StateSource,
    n: Option<usize>,
    config: &SweepConfig,
    format: SweepFormat,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if config.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if config.locality == 0 {
        return Err(Failure::usage("--locality must be at least 1"));
    }
    if !(config.scale.is_finite() && config.scale > 0.0) {
        return Err(Failure::usage(format!("--scale {} must be positive", config.scale)));
    }
    let psi = load_state(source)?;
    if let Some(n) = n {
        if n != psi.n() {
            return Err(Failure::usage(format!("--n {n} does not match the {}-qubit state", psi.n())));
        }
    }
    if config.locality > psi.n() {
        return Err(Failure::usage(format!("--locality {} exceeds n = {}", config.locality, psi.n())));
    }
    let records = run_sweep(&psi, config)?;
    let text = match format {
        SweepFormat::Csv => to_csv(&records),
        SweepFormat::Json => to_json(&records),
    };
    match output {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    let failures = records.iter().filter(|r| !r.passed()).count();
    let worst = records.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let _ = writeln!(err, "{} trials, {failures} chain failures, smallest margin {worst:.6}", records.len());
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VIOLATION })
}
