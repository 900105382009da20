//! The `acring` command line tool.
//!
//! Every subcommand writes a single table, as CSV (default) or JSON, to
//! `--output` (standard output when `-`). A plain-text `key=value` file given
//! with `--config` supplies defaults for any long flag; flags on the command
//! line win.
//!
//! Exit status: 0 success, 2 usage error, 3 validation error,
//! 4 non-convergence. Validation and convergence failures print one line
//! `error: kind=<kind> msg=<message>` to standard error.

use crate::reduction::{self, TrapSetup};
use crate::ring::{self, ground_winding, mu_uniform};
use crate::solver::{self, SolverSettings};
use crate::sweeps::{self, StaircaseMode, StaircaseSpec};
use crate::units::{self, CrossedFieldSetup, LineChargeSetup, TorusChargeSetup};
use crate::{Error, RingParams};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use std::f64::consts::TAU;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Directory that relative `--output` paths resolve against.
pub const OUTPUT_DIR_ENV: &str = "ACRING_OUTPUT_DIR";

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

const SUBCOMMANDS: [&str; 7] =
    ["estimate", "reduce", "ground", "solve", "staircase", "landscape", "hysteresis"];

/// Format with 12 significant digits, `%.12g` style.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "acring", version, about = "Circulating ground states of a ring condensate under an Aharonov-Casher phase")]
pub struct Cli {
    /// Plain-text key=value file of defaults for long flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output path, or `-` for standard output. Relative paths resolve
    /// under $ACRING_OUTPUT_DIR when it is set.
    #[arg(long, short, global = true, default_value = "-")]
    pub output: String,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase eta and field strengths from laboratory parameters.
    Estimate(EstimateArgs),
    /// Ring parameters (eta, u_tilde) from a 3D toroidal trap.
    Reduce(ReduceArgs),
    /// Analytic ground winding m = [eta].
    Ground(GroundArgs),
    /// Numerical ground state by imaginary-time relaxation.
    Solve(SolveArgs),
    /// Winding staircase versus eta with classical and thermal curves.
    Staircase(StaircaseArgs),
    /// Two-mode chemical potential landscape between m and m+1.
    Landscape(LandscapeArgs),
    /// Adiabatic eta sweep following metastable windings.
    Hysteresis(HysteresisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    Line,
    Torus,
    Cross,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub geometry: Geometry,
    /// [line] Linear charge density in elementary charges per meter.
    #[arg(long = "n-e")]
    pub n_e: Option<f64>,
    /// [line, torus] Target phase used when no charge is given (dimensionless).
    #[arg(long, default_value_t = 1.0)]
    pub eta_target: f64,
    /// [line, torus] Landé factor g_F (dimensionless, nonzero).
    #[arg(long = "g-f", default_value_t = 1.0, allow_negative_numbers = true)]
    pub g_f: f64,
    /// [line] Distance from the wire in meters.
    #[arg(long, default_value_t = 1e-3)]
    pub distance: f64,
    /// [torus] Total elementary charges on the central sphere.
    #[arg(long)]
    pub charges: Option<f64>,
    /// [torus] Torus radius in meters.
    #[arg(long, default_value_t = 1e-3)]
    pub radius: f64,
    /// [cross] Static polarizability in units of a0^3.
    #[arg(long, default_value_t = 300.0)]
    pub polarizability: f64,
    /// [cross] Elementary charges per Bohr radius.
    #[arg(long, default_value_t = 1.0)]
    pub charges_per_bohr: f64,
    /// [cross] Axial magnetic field in gauss.
    #[arg(long, default_value_t = 1.0)]
    pub field_gauss: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ReduceArgs {
    /// Number of condensed atoms (dimensionless).
    #[arg(long)]
    pub atoms: f64,
    /// s-wave scattering length in meters.
    #[arg(long, allow_negative_numbers = true)]
    pub scattering_length: f64,
    /// Atomic mass in kilograms.
    #[arg(long)]
    pub mass: f64,
    /// Torus radius in meters.
    #[arg(long)]
    pub radius: f64,
    /// Radial Gaussian width sigma_rho in meters.
    #[arg(long)]
    pub width_rho: f64,
    /// Axial Gaussian width sigma_z in meters.
    #[arg(long)]
    pub width_z: f64,
    /// Transverse-averaged trap potential in joules.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub potential_mean: f64,
    /// Aharonov-Casher phase (dimensionless).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta: f64,
}

#[derive(Debug, Args, Clone)]
pub struct Interaction {
    /// Interaction u_tilde in units of hbar^2/(2 M rho0^2).
    #[arg(long, conflicts_with = "u_tilde_over_2pi", allow_negative_numbers = true)]
    pub u_tilde: Option<f64>,
    /// Uniform-ring interaction energy u_tilde/2pi (dimensionless).
    #[arg(long = "u-tilde-over-2pi", allow_negative_numbers = true)]
    pub u_tilde_over_2pi: Option<f64>,
}

impl Interaction {
    fn resolve(&self) -> Result<f64, Error> {
        match (self.u_tilde, self.u_tilde_over_2pi) {
            (Some(u), _) => Ok(u),
            (None, Some(c)) => Ok(c * TAU),
            (None, None) => Err(Error::invalid("one of --u-tilde or --u-tilde-over-2pi is required")),
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct SolverArgs {
    /// Azimuthal grid points (power of two >= 64).
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    /// Imaginary-time step (dimensionless).
    #[arg(long, default_value_t = 1e-3)]
    pub tau_step: f64,
    /// Convergence threshold on |d mu| / max(|mu|, 1) per step.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 200_000)]
    pub max_iterations: usize,
    /// Relative seed noise amplitude (dimensionless). Defaults to 0 for a
    /// single relaxation and 1e-3 for global searches.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Seed for the noise generator.
    #[arg(long, default_value_t = 0x5eed)]
    pub rng_seed: u64,
}

impl SolverArgs {
    fn settings(&self, seed_winding: i64, default_noise: f64) -> SolverSettings {
        SolverSettings {
            grid_size: self.grid,
            tau_step: self.tau_step,
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
            seed_winding,
            noise_amplitude: self.noise.unwrap_or(default_noise),
            rng_seed: self.rng_seed,
        }
    }
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct GroundArgs {
    /// Aharonov-Casher phase (dimensionless).
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[command(flatten)]
    pub interaction: Interaction,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct SolveArgs {
    /// Aharonov-Casher phase (dimensionless).
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[command(flatten)]
    pub interaction: Interaction,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Winding of the initial plane wave.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub seed_winding: i64,
    /// Search seeds [eta]-2..=[eta]+2 and keep the lowest energy.
    #[arg(long)]
    pub global: bool,
    /// Write the final wavefunction as `phi re im` rows to this file.
    #[arg(long, value_name = "FILE")]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    Numeric,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct StaircaseArgs {
    /// Phase range `start:stop:step` (dimensionless, inclusive).
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
    #[command(flatten)]
    pub interaction: Interaction,
    /// Condensate weight w in [0, 1] for the thermal curve.
    #[arg(long, default_value_t = 1.0)]
    pub weight: f64,
    #[arg(long, value_enum, default_value = "analytic")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct LandscapeArgs {
    /// Lower winding m of the two-mode path m -> m+1.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m: i64,
    /// Phases as `start:stop:step` or a comma list (dimensionless).
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
    #[command(flatten)]
    pub interaction: Interaction,
    /// Step in the mixing parameter x.
    #[arg(long, default_value_t = 0.01)]
    pub x_step: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct HysteresisArgs {
    /// Phase path as `start:stop:step` (descending when stop < start) or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
    #[command(flatten)]
    pub interaction: Interaction,
    /// Initial winding. Defaults to the ground winding at the first phase.
    #[arg(long, allow_negative_numbers = true)]
    pub start_winding: Option<i64>,
    /// Append the reversed path to sweep back.
    #[arg(long = "round-trip")]
    pub round_trip: bool,
}

/// Parse `start:stop:step` or a comma-separated list.
pub fn parse_values(text: &str) -> Result<Vec<f64>, Error> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::invalid(format!("not a number: {s:?}")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => text.split(',').map(num).collect(),
        3 => sweeps::grid(num(parts[0])?, num(parts[1])?, num(parts[2])?),
        _ => Err(Error::invalid(format!("expected start:stop:step, got {text:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Column-ordered output table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
        s.push('\n');
        s
    }
}

/// A failure carrying its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, kind: "usage", message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        CliError { code: 1, kind: "io", message: message.into() }
    }

    pub fn line(&self) -> String {
        let msg = self.message.replace(['\n', '\r'], " ");
        format!("error: kind={} msg={}", self.kind, msg)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConverged { .. } => {
                CliError { code: EXIT_NOT_CONVERGED, kind: "not-converged", message: e.to_string() }
            }
            _ => CliError { code: EXIT_VALIDATION, kind: "validation", message: e.to_string() },
        }
    }
}

/// Read a `key=value` config file. Blank lines and `#` comments are skipped;
/// keys are long flag names with or without the leading `--`.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::usage(format!("config line {}: invalid key", n + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Insert config entries right after the subcommand name so that flags
/// given on the command line, which come later, override them.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut config = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            config = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            config = Some(p.to_string());
        }
    }
    let Some(path) = config else { return Ok(args) };
    let entries = read_config(Path::new(&path))?;
    let Some(pos) = args.iter().skip(1).position(|a| SUBCOMMANDS.contains(&a.as_str())) else {
        return Ok(args);
    };
    let insert_at = pos + 2;
    let mut injected = Vec::new();
    for (k, v) in entries {
        match v.as_str() {
            "true" => injected.push(format!("--{k}")),
            "false" => {}
            _ => injected.push(format!("--{k}={v}")),
        }
    }
    let mut out = args[..insert_at].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[insert_at..]);
    Ok(out)
}

/// Result of a subcommand: the table plus an optional deferred failure
/// (non-convergence is reported after the table is written).
struct Outcome {
    table: Table,
    failure: Option<CliError>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome { table, failure: None }
    }
}

fn not_converged(what: &str) -> CliError {
    CliError { code: EXIT_NOT_CONVERGED, kind: "not-converged", message: what.to_string() }
}

fn quantity(table: &mut Table, name: &str, value: impl Into<Cell>, unit: &str) {
    table.push(vec![Cell::from(name), value.into(), Cell::from(unit)]);
}

fn run_estimate(a: &EstimateArgs) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["quantity", "value", "unit"]);
    match a.geometry {
        Geometry::Line => {
            let n_e = match a.n_e {
                Some(n) => n,
                None => units::required_line_density(a.eta_target, a.g_f)?,
            };
            let setup = LineChargeSetup { linear_charge_density: n_e, lande_g: a.g_f, probe_distance: a.distance };
            let eta = units::eta_line_charge(&setup)?;
            let field = units::field_line_charge(&setup)?;
            quantity(&mut t, "geometry", "line", "");
            quantity(&mut t, "n_e", n_e, "1/m");
            quantity(&mut t, "g_F", a.g_f, "");
            quantity(&mut t, "distance", a.distance, "m");
            quantity(&mut t, "charges_per_compton_length", setup.charges_per_compton_length(), "");
            quantity(&mut t, "eta", eta, "");
            quantity(&mut t, "field", field, "a.u.");
            quantity(&mut t, "field_si", units::au_field_to_volts_per_cm(field), "V/cm");
            quantity(&mut t, "n_e_for_unit_eta", units::required_line_density(1.0, a.g_f)?, "1/m");
            quantity(&mut t, "field_at_unit_eta", units::threshold_field_line_charge(a.g_f, a.distance)?, "a.u.");
        }
        Geometry::Torus => {
            let charges = match a.charges {
                Some(n) => n,
                None => units::required_sphere_charge(a.eta_target, a.g_f, a.radius)?,
            };
            let setup = TorusChargeSetup { sphere_charge_count: charges, torus_radius: a.radius, lande_g: a.g_f };
            let eta = units::eta_torus(&setup)?;
            let field = units::field_torus(&setup)?;
            quantity(&mut t, "geometry", "torus", "");
            quantity(&mut t, "charges", charges, "");
            quantity(&mut t, "g_F", a.g_f, "");
            quantity(&mut t, "radius", a.radius, "m");
            quantity(&mut t, "eta", eta, "");
            quantity(&mut t, "field", field, "a.u.");
            quantity(&mut t, "field_si", units::au_field_to_volts_per_cm(field), "V/cm");
            quantity(&mut t, "charges_for_unit_eta", units::required_sphere_charge(1.0, a.g_f, a.radius)?, "");
        }
        Geometry::Cross => {
            let setup = CrossedFieldSetup {
                static_polarizability: a.polarizability,
                charges_per_bohr: a.charges_per_bohr,
                magnetic_field: a.field_gauss,
            };
            let eta = units::eta_cross_field(&setup)?;
            quantity(&mut t, "geometry", "cross", "");
            quantity(&mut t, "polarizability", a.polarizability, "a0^3");
            quantity(&mut t, "charges_per_bohr", a.charges_per_bohr, "");
            quantity(&mut t, "field_gauss", a.field_gauss, "G");
            quantity(&mut t, "zeeman_ratio_per_gauss", units::CONSTANTS.zeeman_ratio_per_gauss, "1/G");
            quantity(&mut t, "eta", eta, "");
        }
    }
    Ok(t.into())
}

fn run_reduce(a: &ReduceArgs) -> Result<Outcome, CliError> {
    let trap = TrapSetup {
        atom_count: a.atoms,
        scattering_length: a.scattering_length,
        atom_mass: a.mass,
        torus_radius: a.radius,
        width_rho: a.width_rho,
        width_z: a.width_z,
        potential_mean: a.potential_mean,
    };
    let params = reduction::build_ring_params(&trap, a.eta)?;
    let mut t = Table::new(&["quantity", "value", "unit"]);
    quantity(&mut t, "eta", params.eta, "");
    quantity(&mut t, "u_tilde", params.u_tilde, "hbar^2/(2 M rho0^2)");
    quantity(&mut t, "u_tilde_over_2pi", params.u_over_2pi(), "hbar^2/(2 M rho0^2)");
    quantity(&mut t, "mu_offset", params.mu_offset, "hbar^2/(2 M rho0^2)");
    quantity(&mut t, "transverse_kinetic_offset", reduction::transverse_kinetic_offset(&trap)?, "hbar^2/(2 M rho0^2)");
    quantity(&mut t, "dropped_radial_term", reduction::dropped_radial_term(&trap)?, "hbar^2/(2 M rho0^2)");
    quantity(&mut t, "energy_unit", trap.energy_unit(), "J");
    quantity(&mut t, "ground_winding", ground_winding(&params).winding, "");
    Ok(t.into())
}

fn run_ground(a: &GroundArgs) -> Result<Outcome, CliError> {
    let params = RingParams::new(a.eta, a.interaction.resolve()?);
    params.validate()?;
    let g = ground_winding(&params);
    let mut t = Table::new(&["eta", "u_tilde", "winding", "degenerate", "mu_eff", "barrier_height"]);
    // Barrier toward the nearer neighbor, when interactions are repulsive.
    let height = if params.u_tilde > 0.0 {
        let lower = if a.eta >= g.winding as f64 { g.winding } else { g.winding - 1 };
        ring::barrier(lower, &params)?.map(|b| {
            if lower == g.winding { b.height_from_m } else { b.height_from_m_plus_1 }
        })
    } else {
        None
    };
    t.push(vec![a.eta.into(), params.u_tilde.into(), g.winding.into(), g.degenerate.into(), g.mu_eff.into(), height.into()]);
    Ok(t.into())
}

fn run_solve(a: &SolveArgs, dump_base: Option<&Path>) -> Result<Outcome, CliError> {
    let params = RingParams::new(a.eta, a.interaction.resolve()?);
    params.validate()?;
    let default_noise = if a.global { 1e-3 } else { 0.0 };
    let settings = a.solver.settings(a.seed_winding, default_noise);
    let report = if a.global {
        solver::global_search(&params, &settings)?
    } else {
        solver::relax(&params, &settings)?
    };
    if let Some(path) = &a.dump {
        let path = resolve_path(path, dump_base);
        let file = fs::File::create(&path)
            .map_err(|e| CliError::io(format!("cannot create {}: {e}", path.display())))?;
        report
            .wavefunction
            .write_dump(std::io::BufWriter::new(file))
            .map_err(|e| CliError::io(e.to_string()))?;
    }
    let mut t = Table::new(&[
        "eta", "u_tilde", "winding", "mu", "energy_per_particle", "mu_plane_wave", "iterations", "converged",
    ]);
    t.push(vec![
        a.eta.into(),
        params.u_tilde.into(),
        report.winding.into(),
        report.mu.into(),
        report.energy_per_particle.into(),
        mu_uniform(report.winding, &params).into(),
        (report.iterations as i64).into(),
        report.converged.into(),
    ]);
    let failure = (!report.converged).then(|| not_converged("relaxation did not reach the tolerance"));
    Ok(Outcome { table: t, failure })
}

fn run_staircase(a: &StaircaseArgs) -> Result<Outcome, CliError> {
    let (start, stop, step) = parse_range(&a.eta)?;
    let mode = match a.mode {
        ModeArg::Analytic => StaircaseMode::Analytic,
        ModeArg::Numeric => StaircaseMode::Numeric,
    };
    let spec = StaircaseSpec {
        eta_start: start,
        eta_stop: stop,
        eta_step: step,
        u_tilde: a.interaction.resolve()?,
        mode,
        condensate_weight: a.weight,
        solver: a.solver.settings(0, 1e-3),
    };
    let records = sweeps::staircase(&spec)?;
    let mut t = Table::new(&["eta", "winding_T0", "classical_mean", "thermal_mean", "mu_eff", "degenerate"]);
    let mut unconverged = Vec::new();
    for r in &records {
        if !r.converged {
            unconverged.push(format_float(r.eta));
        }
        t.push(vec![
            r.eta.into(),
            r.winding_t0.into(),
            r.classical_mean.into(),
            r.thermal_mean.into(),
            r.mu_eff.into(),
            r.degenerate.into(),
        ]);
    }
    let failure = (!unconverged.is_empty())
        .then(|| not_converged(&format!("no seed converged at eta = {}", unconverged.join(" "))));
    Ok(Outcome { table: t, failure })
}

fn parse_range(text: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::from(Error::invalid(format!("expected start:stop:step, got {text:?}"))));
    }
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::from(Error::invalid(format!("not a number: {s:?}"))))
    };
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])?))
}

fn run_landscape(a: &LandscapeArgs) -> Result<Outcome, CliError> {
    let etas = parse_values(&a.eta)?;
    let rows = sweeps::landscape(a.m, &etas, a.interaction.resolve()?, a.x_step)?;
    let mut t = Table::new(&["eta", "x", "mu_eff", "x_peak", "mu_peak"]);
    for r in rows {
        t.push(vec![r.eta.into(), r.x.into(), r.mu_eff.into(), r.x_peak.into(), r.mu_peak.into()]);
    }
    Ok(t.into())
}

fn run_hysteresis(a: &HysteresisArgs) -> Result<Outcome, CliError> {
    let mut path = parse_values(&a.eta)?;
    if path.is_empty() {
        return Err(Error::invalid("empty eta path").into());
    }
    if a.round_trip {
        let back: Vec<f64> = path.iter().rev().skip(1).copied().collect();
        path.extend(back);
    }
    let u = a.interaction.resolve()?;
    let start = a
        .start_winding
        .unwrap_or_else(|| ground_winding(&RingParams::new(path[0], u)).winding);
    let records = sweeps::hysteresis(&path, u, start)?;
    let mut t = Table::new(&["eta", "direction", "winding", "barrier_height"]);
    for r in records {
        t.push(vec![r.eta.into(), r.direction.as_str().into(), r.winding.into(), r.barrier_height.into()]);
    }
    Ok(t.into())
}

fn resolve_path(path: &Path, base: Option<&Path>) -> PathBuf {
    match base {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// Run with explicit arguments (including the program name), writing tables
/// bound for standard output to `stdout`.
pub fn run<W: Write>(args: Vec<String>, stdout: &mut W) -> Result<(), CliError> {
    let args = expand_config(args)?;
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(stdout, "{e}").map_err(|e| CliError::io(e.to_string()))?;
                return Ok(());
            }
            return Err(CliError::usage(e.to_string().trim().to_string()));
        }
    };
    let out_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    let outcome = match &cli.command {
        Command::Estimate(a) => run_estimate(a)?,
        Command::Reduce(a) => run_reduce(a)?,
        Command::Ground(a) => run_ground(a)?,
        Command::Solve(a) => run_solve(a, out_dir.as_deref())?,
        Command::Staircase(a) => run_staircase(a)?,
        Command::Landscape(a) => run_landscape(a)?,
        Command::Hysteresis(a) => run_hysteresis(a)?,
    };
    let text = match cli.format {
        Format::Csv => outcome.table.to_csv(),
        Format::Json => outcome.table.to_json(),
    };
    if cli.output == "-" {
        stdout.write_all(text.as_bytes()).map_err(|e| CliError::io(e.to_string()))?;
    } else {
        let path = resolve_path(Path::new(&cli.output), out_dir.as_deref());
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::io(format!("cannot create {}: {e}", parent.display())))?;
        }
        fs::write(&path, text).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
    }
    match outcome.failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// Entry point for the binary. Returns the process exit status.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            if e.kind == "usage" {
                eprintln!("{}", e.message);
            } else {
                eprintln!("{}", e.line());
            }
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> Result<String, CliError> {
        let mut out = Vec::new();
        let mut argv = vec!["acring".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        run(argv, &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(2.09), "2.09");
        assert_eq!(format_float(0.3 * 3.0), "0.9");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(-12.5), "-12.5");
        assert_eq!(format_float(3.548e14), "3.548e14");
        assert_eq!(format_float(2.1272e-10), "2.1272e-10");
        assert_eq!(format_float(123456789012.4), "123456789012");
        assert_eq!(format_float(0.000123), "0.000123");
        assert_eq!(format_float(9.9999999999996), "10");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("0.3,0.5").unwrap(), vec![0.3, 0.5]);
        assert_eq!(parse_values("0:1:0.5").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_values("0:1").is_err());
        assert!(parse_values("abc").is_err());
    }

    #[test]
    fn ground_subcommand() {
        let out = run_str(&["ground", "--eta", "0.7", "--u-tilde-over-2pi", "2"]).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), "eta,u_tilde,winding,degenerate,mu_eff,barrier_height");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[2], "1");
        assert_eq!(row[3], "false");
        assert_eq!(row[4], "2.09");
    }

    #[test]
    fn exit_codes() {
        let usage = run_str(&["ground", "--bogus"]).unwrap_err();
        assert_eq!(usage.code, EXIT_USAGE);
        let missing = run_str(&["ground", "--eta", "0.2"]).unwrap_err();
        assert_eq!(missing.code, EXIT_VALIDATION);
        let bad = run_str(&["landscape", "--eta", "0.5", "--u-tilde", "0"]).unwrap_err();
        assert_eq!(bad.code, EXIT_VALIDATION);
        assert!(!bad.line().contains('\n'));
        let slow = run_str(&[
            "solve", "--eta", "0.3", "--u-tilde", "1", "--noise", "0.1", "--max-iterations", "2",
        ])
        .unwrap_err();
        assert_eq!(slow.code, EXIT_NOT_CONVERGED);
    }

    #[test]
    fn json_rows() {
        let out = run_str(&["--format", "json", "ground", "--eta", "0.5", "--u-tilde-over-2pi", "2"]).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["winding"], 0);
        assert_eq!(v[0]["degenerate"], true);
        let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
        assert_eq!(keys[0], "eta");
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.conf");
        fs::write(&cfg, "# defaults\neta = 2.4\nu_tilde_over_2pi=2\n").unwrap();
        let c = cfg.to_str().unwrap();
        let out = run_str(&["--config", c, "ground"]).unwrap();
        assert_eq!(out.lines().nth(1).unwrap().split(',').nth(2), Some("2"));
        let out = run_str(&["--config", c, "ground", "--eta", "0.3"]).unwrap();
        assert_eq!(out.lines().nth(1).unwrap().split(',').nth(2), Some("0"));
        fs::write(&cfg, "not a pair\n").unwrap();
        assert_eq!(run_str(&["--config", c, "ground"]).unwrap_err().code, EXIT_USAGE);
    }
}
