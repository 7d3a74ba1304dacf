//! Command-line surface: scenario runs, dressed-state diagnostics,
//! adiabaticity reports, gate and truth-table verification, figure-style
//! trajectory exports, parameter scans, and medium propagation.
//!
//! Exit codes: 0 success, 2 gate/truth-table mismatch, 3 accuracy or
//! adiabaticity hard failure, 4 configuration error. CSV files carry the full
//! resolved parameter set as '#' header comments; JSON summaries embed it
//! directly. Numeric CSV fields use 12 significant digits.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::adiabaticity::{check_five_sequence, check_lambda3_sequence, Thresholds};
use crate::dressed::{
    eigen_residual, five_eigenvalues_tied, five_eigenvectors_tied, lambda3_dressed,
    numeric_spectrum,
};
use crate::dynamics::{integrate, InitialState, TimeGrid, Trajectory};
use crate::error::{Error, Result};
use crate::gates::{
    run_gate, truth_table, GateInput, GateKind, GateParams, ReadoutBit,
};
use crate::model::{build_hamiltonian, LevelScheme, PulseEnvelope, PulseSet, SchemeKind};
use crate::propagation::{propagate_medium, MediumConfig};
use crate::scenario::ScenarioFile;

/// Environment variable bounding the worker pool used by truth tables and
/// scans.
pub const THREADS_ENV: &str = "STIRAP_GATES_THREADS";

#[derive(Parser)]
#[command(
    name = "stirap-gates",
    version,
    about = "Adiabatic population transfer and Toffoli gates in few-level systems"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for generated files.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateKindArg {
    Toffoli3,
    Toffoli4,
}

impl From<GateKindArg> for GateKind {
    fn from(k: GateKindArg) -> Self {
        match k {
            GateKindArg::Toffoli3 => GateKind::Toffoli3,
            GateKindArg::Toffoli4 => GateKind::Toffoli4,
        }
    }
}

#[derive(Args, Clone)]
struct GateParamArgs {
    /// Single-photon detuning [1/T].
    #[arg(long)]
    delta: Option<f64>,
    /// Peak Rabi frequency of every pulse [1/T].
    #[arg(long)]
    peak: Option<f64>,
    /// Short-pulse width [T].
    #[arg(long)]
    short_width: Option<f64>,
    /// Long-pulse width [T] (four-bit gate).
    #[arg(long)]
    long_width: Option<f64>,
    /// Center offset of the short pulses from mid-sequence [T].
    #[arg(long)]
    delay: Option<f64>,
    /// Readout threshold on the logical-state population.
    #[arg(long)]
    threshold: Option<f64>,
    /// Integrator tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Five-level topology: m5 or extended-lambda5.
    #[arg(long, value_enum)]
    topology: Option<TopologyArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    M5,
    ExtendedLambda5,
}

impl GateParamArgs {
    fn resolve(&self) -> Result<GateParams> {
        let mut p = GateParams::default();
        if let Some(v) = self.delta {
            p.delta = v;
        }
        if let Some(v) = self.peak {
            p.peak = v;
        }
        if let Some(v) = self.short_width {
            p.short_width = v;
        }
        if let Some(v) = self.long_width {
            p.long_width = v;
        }
        if let Some(v) = self.delay {
            p.delay = v;
        }
        if let Some(v) = self.threshold {
            p.threshold = v;
        }
        if let Some(v) = self.tol {
            p.tol = v;
        }
        if let Some(t) = self.topology {
            p.five_level_kind = match t {
                TopologyArg::M5 => SchemeKind::M5,
                TopologyArg::ExtendedLambda5 => SchemeKind::ExtendedLambda5,
            };
        }
        for (name, v) in [
            ("delta", p.delta),
            ("peak", p.peak),
            ("short-width", p.short_width),
            ("long-width", p.long_width),
            ("tol", p.tol),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be positive and finite")));
            }
        }
        if !(p.threshold > 0.5 && p.threshold < 1.0) {
            return Err(Error::Config("threshold must lie in (0.5, 1)".into()));
        }
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario file and export the population trajectory.
    Simulate {
        /// Scenario JSON path.
        #[arg(long = "config", value_name = "FILE", alias = "scenario")]
        config: PathBuf,
    },
    /// Print analytic and numeric dressed states at fixed Rabi frequencies.
    Dressed {
        #[arg(long)]
        delta: f64,
        /// Omega_1 (and Omega_4 when three couplings are given).
        #[arg(long)]
        omega1: f64,
        #[arg(long)]
        omega2: f64,
        /// Providing Omega_3 selects the tied five-level system.
        #[arg(long)]
        omega3: Option<f64>,
    },
    /// Evaluate the adiabaticity criteria of a scenario's pulse sequence.
    Adiabaticity {
        #[arg(long = "config", value_name = "FILE")]
        config: PathBuf,
        /// Numeric reading of "much greater than 1".
        #[arg(long, default_value_t = 10.0)]
        much_greater: f64,
        /// Numeric reading of "much less than 1".
        #[arg(long, default_value_t = 0.1)]
        much_less: f64,
    },
    /// Run one gate input and report the readout.
    Gate {
        #[arg(long, value_enum)]
        kind: GateKindArg,
        /// Bit string, controls first, target last (e.g. 110 or 1110).
        #[arg(long)]
        input: String,
        #[command(flatten)]
        params: GateParamArgs,
    },
    /// Verify the full truth table of a gate.
    TruthTable {
        #[arg(long, value_enum)]
        kind: GateKindArg,
        #[command(flatten)]
        params: GateParamArgs,
    },
    /// Export the trajectory of a canonical transfer/return scenario
    /// (3: five-level transfer, 4: reverse transfer, 5: two-level return,
    /// 6: nested three-level return).
    Figure {
        #[arg(long)]
        id: u32,
    },
    /// Sweep one parameter and record fidelity and the worst criterion.
    Scan {
        #[arg(long, value_enum)]
        axis: ScanAxis,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value = "toffoli3")]
        kind: GateKindArg,
        /// Gate input to probe (default: all controls on, target 0).
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        params: GateParamArgs,
    },
    /// Propagate the scenario's pulses through a medium (needs a medium
    /// section) and export the field cube and exit fidelities.
    Propagate {
        #[arg(long = "config", value_name = "FILE")]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanAxis {
    Delta,
    Peak,
    Delay,
    Width,
    Ql,
}

/// Parse arguments from the process environment and run.
pub fn run() -> i32 {
    init_worker_pool();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn init_worker_pool() {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Accuracy(_) | Error::ZStepInstability { .. } | Error::NonHermitian(_) => 3,
        _ => 4,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate { config } => cmd_simulate(&config, &cli.out),
        Command::Dressed { delta, omega1, omega2, omega3 } => {
            cmd_dressed(delta, omega1, omega2, omega3)
        }
        Command::Adiabaticity { config, much_greater, much_less } => {
            cmd_adiabaticity(&config, much_greater, much_less)
        }
        Command::Gate { kind, input, params } => cmd_gate(kind.into(), &input, &params),
        Command::TruthTable { kind, params } => cmd_truth_table(kind.into(), &params),
        Command::Figure { id } => cmd_figure(id, &cli.out),
        Command::Scan { axis, start, stop, points, kind, input, params } => {
            cmd_scan(axis, start, stop, points, kind.into(), input.as_deref(), &params, &cli.out)
        }
        Command::Propagate { config } => cmd_propagate(&config, &cli.out),
    }
}

fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, contents)?;
    Ok(())
}

fn trajectory_csv(traj: &Trajectory, params: &serde_json::Value) -> String {
    let dim = traj.dimension();
    let mut out = String::new();
    let _ = writeln!(out, "# parameters: {params}");
    let mut header = String::from("t");
    for j in 0..dim {
        let _ = write!(header, ",rho_{}", j + 1);
    }
    header.push_str(",norm");
    let _ = writeln!(out, "{header}");
    for (k, t) in traj.times.iter().enumerate() {
        let _ = write!(out, "{}", fmt_sig(*t));
        for j in 0..dim {
            let _ = write!(out, ",{}", fmt_sig(traj.population(k, j)));
        }
        let _ = writeln!(out, ",{}", fmt_sig(traj.states[k].norm()));
    }
    out
}

fn pulses_csv(pulses: &PulseSet, grid: &TimeGrid, params: &serde_json::Value) -> String {
    let n = 1001usize;
    let mut out = String::new();
    let _ = writeln!(out, "# parameters: {params}");
    let mut header = String::from("t");
    for i in 0..pulses.transitions() {
        let _ = write!(header, ",omega_{}", i + 1);
    }
    let _ = writeln!(out, "{header}");
    for k in 0..n {
        let t = grid.t_start + grid.span() * (k as f64) / ((n - 1) as f64);
        let _ = write!(out, "{}", fmt_sig(t));
        for v in pulses.values(t) {
            let _ = write!(out, ",{}", fmt_sig(v));
        }
        let _ = writeln!(out, "");
    }
    out
}

fn cmd_simulate(config: &Path, out_dir: &Path) -> Result<i32> {
    let scenario = ScenarioFile::load(config)?;
    let traj = integrate(
        &scenario.scheme,
        &scenario.pulses,
        &InitialState::Bare(scenario.initial_state),
        &scenario.grid,
    )?;
    let params = serde_json::to_value(&scenario)?;
    let output = scenario.output.clone().unwrap_or_default();
    let resolve = |p: Option<PathBuf>, default: &str| -> PathBuf {
        let p = p.unwrap_or_else(|| PathBuf::from(default));
        if p.is_absolute() {
            p
        } else {
            out_dir.join(p)
        }
    };
    let traj_path = resolve(output.trajectory_csv, "trajectory.csv");
    let pulse_path = resolve(output.pulses_csv, "pulses.csv");
    let summary_path = resolve(output.summary_json, "summary.json");
    write_file(&traj_path, &trajectory_csv(&traj, &params))?;
    write_file(&pulse_path, &pulses_csv(&scenario.pulses, &scenario.grid, &params))?;
    let final_pops: Vec<f64> = traj.final_state().iter().map(|a| a.norm_sqr()).collect();
    let summary = json!({
        "parameters": params,
        "final_populations": final_pops,
        "max_norm_drift": traj.max_norm_drift(),
    });
    write_file(&summary_path, &serde_json::to_string_pretty(&summary)?)?;
    println!("wrote {}, {}, {}", traj_path.display(), pulse_path.display(), summary_path.display());
    Ok(0)
}

fn cmd_dressed(delta: f64, omega1: f64, omega2: f64, omega3: Option<f64>) -> Result<i32> {
    let report = match omega3 {
        None => {
            let d = lambda3_dressed(omega1, omega2, delta, (0.0, 0.0))?;
            let scheme = LevelScheme::lambda3(delta);
            let flat = |p: f64| PulseEnvelope::new(p, 0.0, 1.0, 0.0);
            let pulses = PulseSet::lambda3(flat(omega1)?, flat(omega2)?);
            let h = build_hamiltonian(&scheme, &pulses, 0.0)?;
            let numeric = numeric_spectrum(&h)?;
            json!({
                "scheme": "lambda3",
                "analytic_eigenvalues": d.eigenvalues,
                "numeric_eigenvalues": numeric.values,
                "mixing_angle_theta": d.theta,
                "mixing_angle_phi": d.phi,
                "residuals": {
                    "dark": eigen_residual(&h.matrix, d.eigenvalues[0], &d.dark),
                    "bright1": eigen_residual(&h.matrix, d.eigenvalues[1], &d.bright1),
                    "bright2": eigen_residual(&h.matrix, d.eigenvalues[2], &d.bright2),
                },
            })
        }
        Some(o3) => {
            let d = five_eigenvectors_tied(omega1, omega2, o3, delta)?;
            let lambdas = five_eigenvalues_tied(omega1, omega2, o3, delta);
            let scheme = LevelScheme::m5_resonant(delta);
            let e = |p: f64| PulseEnvelope::new(p, 0.0, 1.0, 0.0);
            let pulses = PulseSet::five_tied(e(omega1)?, e(omega2)?, e(o3)?);
            let h = build_hamiltonian(&scheme, &pulses, 0.0)?;
            let numeric = numeric_spectrum(&h)?;
            json!({
                "scheme": "five_level_tied",
                "analytic_eigenvalues": lambdas,
                "numeric_eigenvalues": numeric.values,
                "angles": {
                    "theta": d.theta, "phi1": d.phi1, "phi2": d.phi2, "phi": d.phi,
                },
                "residuals": {
                    "transfer_state": eigen_residual(&h.matrix, d.lambdas[1], &d.vec_lambda1),
                    "bright_partner": eigen_residual(&h.matrix, d.lambdas[2], &d.vec_lambda2),
                },
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(0)
}

fn cmd_adiabaticity(config: &Path, much_greater: f64, much_less: f64) -> Result<i32> {
    let scenario = ScenarioFile::load(config)?;
    let thr = Thresholds { much_greater, much_less };
    let delta = scenario.scheme.single_photon_detunings[0].abs();
    let width = scenario
        .pulses
        .envelopes
        .iter()
        .filter(|e| e.peak > 0.0)
        .map(|e| e.width)
        .fold(f64::INFINITY, f64::min);
    if !width.is_finite() {
        return Err(Error::Config("all pulses are switched off".into()));
    }
    let report = match scenario.scheme.dimension() {
        3 => check_lambda3_sequence(&scenario.pulses, delta, width, &thr)?,
        5 => check_five_sequence(&scenario.pulses, delta, width, &thr)?,
        d => {
            return Err(Error::Config(format!(
                "adiabaticity reports cover 3- and 5-level schemes, not {d}-level"
            )))
        }
    };
    print!("{report}");
    Ok(if report.overall { 0 } else { 3 })
}

fn cmd_gate(kind: GateKind, input: &str, args: &GateParamArgs) -> Result<i32> {
    let params = args.resolve()?;
    let input = GateInput::parse(kind, input)?;
    let outcome = run_gate(kind, &input, &params)?;
    let expected = input.expected_output();
    let matched = outcome.output_target == ReadoutBit::Bit(expected);
    let report = json!({
        "input": input.bit_string(),
        "expected_target": expected,
        "observed_target": outcome.output_target,
        "fidelity": outcome.fidelity,
        "leakage": outcome.leakage,
        "match": matched,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if matched { 0 } else { 2 })
}

fn cmd_truth_table(kind: GateKind, args: &GateParamArgs) -> Result<i32> {
    let params = args.resolve()?;
    let table = truth_table(kind, &params)?;
    if !table.adiabaticity_ok {
        eprintln!("warning: pulse configuration fails the adiabaticity pre-check");
    }
    for row in &table.rows {
        let observed = match row.observed_target {
            ReadoutBit::Bit(b) => b.to_string(),
            ReadoutBit::Indeterminate => "?".to_string(),
        };
        println!(
            "{}  expected {}  observed {}  fidelity {:.6}  {}",
            row.input,
            row.expected_target,
            observed,
            row.fidelity,
            if row.ok { "ok" } else { "MISMATCH" }
        );
    }
    println!("truth table: {}", if table.pass { "PASS" } else { "FAIL" });
    Ok(if table.pass { 0 } else { 2 })
}

/// The canonical trajectory exports: four-bit gate runs showing forward
/// transfer (3), reverse transfer (4), two-level return (5), and the nested
/// three-level return (6).
pub fn figure_input(id: u32) -> Result<(GateKind, GateInput)> {
    let bits = match id {
        3 => "1110",
        4 => "1111",
        5 => "1000",
        6 => "1100",
        other => {
            return Err(Error::Config(format!(
                "figure id {other} out of range; valid ids are 3-6"
            )))
        }
    };
    Ok((GateKind::Toffoli4, GateInput::parse(GateKind::Toffoli4, bits)?))
}

fn cmd_figure(id: u32, out_dir: &Path) -> Result<i32> {
    let (kind, input) = figure_input(id)?;
    let params = GateParams::default();
    let scenario = crate::gates::encode(kind, &input, &params)?;
    let traj = integrate(
        &scenario.scheme,
        &scenario.pulses,
        &InitialState::Bare(scenario.initial_index),
        &scenario.grid,
    )?;
    let meta = json!({
        "figure": id,
        "gate": kind,
        "input": input.bit_string(),
        "params": params,
        "scheme": scenario.scheme,
        "pulses": scenario.pulses,
        "grid": scenario.grid,
        "initial_state": scenario.initial_index,
    });
    let traj_path = out_dir.join(format!("figure{id}_trajectory.csv"));
    let pulse_path = out_dir.join(format!("figure{id}_pulses.csv"));
    let sidecar = out_dir.join(format!("figure{id}_params.json"));
    write_file(&traj_path, &trajectory_csv(&traj, &meta))?;
    write_file(&pulse_path, &pulses_csv(&scenario.pulses, &scenario.grid, &meta))?;
    write_file(&sidecar, &serde_json::to_string_pretty(&meta)?)?;
    println!("wrote {}, {}, {}", traj_path.display(), pulse_path.display(), sidecar.display());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    axis: ScanAxis,
    start: f64,
    stop: f64,
    points: usize,
    kind: GateKind,
    input: Option<&str>,
    args: &GateParamArgs,
    out_dir: &Path,
) -> Result<i32> {
    if points == 0 {
        return Err(Error::Config("scan needs at least one grid point".into()));
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err(Error::Config("scan bounds must be finite".into()));
    }
    let base = args.resolve()?;
    let input = match input {
        Some(bits) => GateInput::parse(kind, bits)?,
        None => GateInput::new(kind, vec![1; kind.control_count()], 0)?,
    };
    let values: Vec<f64> = (0..points)
        .map(|k| {
            if points == 1 {
                start
            } else {
                start + (stop - start) * (k as f64) / ((points - 1) as f64)
            }
        })
        .collect();

    let rows: Result<Vec<(f64, f64, f64)>> = values
        .par_iter()
        .map(|v| scan_point(axis, *v, kind, &input, &base))
        .collect();
    let rows = rows?;

    let params = json!({
        "axis": axis_name(axis), "start": start, "stop": stop, "points": points,
        "gate": kind, "input": input.bit_string(), "base_params": base,
    });
    let mut csv = String::new();
    let _ = writeln!(csv, "# parameters: {params}");
    let _ = writeln!(csv, "{},fidelity,min_criterion", axis_name(axis));
    for (v, fidelity, margin) in &rows {
        let _ = writeln!(csv, "{},{},{}", fmt_sig(*v), fmt_sig(*fidelity), fmt_sig(*margin));
    }
    let path = out_dir.join(format!("scan_{}.csv", axis_name(axis)));
    write_file(&path, &csv)?;
    println!("wrote {}", path.display());
    Ok(0)
}

fn axis_name(axis: ScanAxis) -> &'static str {
    match axis {
        ScanAxis::Delta => "delta",
        ScanAxis::Peak => "peak",
        ScanAxis::Delay => "delay",
        ScanAxis::Width => "width",
        ScanAxis::Ql => "ql_over_delta",
    }
}

/// One scan row: expected-state fidelity of the probed gate input, plus the
/// smallest adiabaticity margin (lower-bound criteria only).
fn scan_point(
    axis: ScanAxis,
    value: f64,
    kind: GateKind,
    input: &GateInput,
    base: &GateParams,
) -> Result<(f64, f64, f64)> {
    if matches!(axis, ScanAxis::Ql) {
        let cfg = MediumConfig::gate_default(value)?;
        let run = propagate_medium(&cfg)?;
        let fidelity = *run.exit_fidelity.last().expect("at least one z sample");
        return Ok((value, fidelity, if run.adiabaticity_ok { 1.0 } else { 0.0 }));
    }
    let mut p = base.clone();
    match axis {
        ScanAxis::Delta => p.delta = value,
        ScanAxis::Peak => p.peak = value,
        ScanAxis::Delay => p.delay = value,
        ScanAxis::Width => p.short_width = value,
        ScanAxis::Ql => unreachable!(),
    }
    if !(p.delta > 0.0 && p.peak > 0.0 && p.short_width > 0.0 && p.delay > 0.0) {
        return Err(Error::Config(format!(
            "scan value {value} makes the configuration unphysical"
        )));
    }
    let outcome = run_gate(kind, input, &p)?;
    let expected = input.expected_output();
    let fidelity = crate::gates::expected_state_population(&outcome, kind, expected);
    let scenario = crate::gates::encode(kind, input, &p)?;
    let thr = Thresholds::default();
    let report = match kind {
        GateKind::Toffoli3 => {
            check_lambda3_sequence(&scenario.pulses, p.delta, p.short_width, &thr)?
        }
        GateKind::Toffoli4 => check_five_sequence(&scenario.pulses, p.delta, p.short_width, &thr)?,
    };
    Ok((value, fidelity, report.min_margin().unwrap_or(f64::INFINITY)))
}

fn cmd_propagate(config: &Path, out_dir: &Path) -> Result<i32> {
    let scenario = ScenarioFile::load(config)?;
    let cfg = scenario
        .medium()?
        .ok_or_else(|| Error::Config("scenario has no medium section".into()))?;
    let run = propagate_medium(&cfg)?;
    if !run.adiabaticity_ok {
        eprintln!("warning: entry-face pulses fail the adiabaticity pre-check");
    }
    let params = serde_json::to_value(&cfg)?;

    let mut csv = String::new();
    let _ = writeln!(csv, "# parameters: {params}");
    let _ = writeln!(csv, "z,tau,omega_1,omega_2,omega_3,omega_4");
    for (iz, z) in run.z.iter().enumerate() {
        for (ik, tau) in run.tau_coarse.iter().enumerate() {
            let o = run.fields[iz][ik];
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                fmt_sig(*z),
                fmt_sig(*tau),
                fmt_sig(o[0]),
                fmt_sig(o[1]),
                fmt_sig(o[2]),
                fmt_sig(o[3])
            );
        }
    }
    let cube_path = out_dir.join("propagation_fields.csv");
    write_file(&cube_path, &csv)?;

    let delta = cfg.scheme.single_photon_detunings[0].abs();
    let indicators: Vec<f64> = cfg
        .couplings
        .iter()
        .map(|q| if delta > 0.0 { q * cfg.length / delta } else { f64::INFINITY })
        .collect();
    let summary = json!({
        "parameters": params,
        "z": run.z,
        "exit_fidelity": run.exit_fidelity,
        "exit_populations": run.exit_populations,
        "max_detuning_drift": run.max_detuning_drift,
        "coupling_length_over_delta": indicators,
        "adiabaticity_ok": run.adiabaticity_ok,
    });
    let summary_path = out_dir.join("propagation_summary.json");
    write_file(&summary_path, &serde_json::to_string_pretty(&summary)?)?;
    println!("wrote {}, {}", cube_path.display(), summary_path.display());
    Ok(0)
}
