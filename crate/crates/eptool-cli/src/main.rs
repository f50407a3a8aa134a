//! Command-line front end: series generation, exceptional-point scans,
//! contractivity audits, and figure-reproduction bundles, emitting CSV and
//! JSON. Exit codes: 0 success, 1 computation error, 2 configuration error.

mod config;
mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eptool::analysis::{
    contractivity_audit, locate_ep, random_pair_scan, sample_series, MeasureTag, SeriesParams,
    TimeGrid, WitnessConfig,
};
use eptool::hamiltonians::{HamiltonianModel, ModelFamily};
use eptool::states::StateSpec;

use config::{model_from_flags, parse_key_value, RunConfig};
use output::{emit_json, series_csv, write_text};

/// Wrapper distinguishing configuration mistakes (exit 2) from failures of
/// the computation itself (exit 1).
#[derive(Debug)]
pub struct CliError {
    message: String,
    exit: u8,
}

impl CliError {
    fn config(message: String) -> Self {
        Self { message, exit: 2 }
    }

    fn compute(message: String) -> Self {
        Self { message, exit: 1 }
    }
}

impl From<eptool::Error> for CliError {
    fn from(e: eptool::Error) -> Self {
        use eptool::Error::*;
        let exit = match e {
            InvalidParameter(_)
            | NotSquare(..)
            | DimMismatch(..)
            | CustomModel
            | NotNormalized(_)
            | DegenerateBracket { .. } => 2,
            _ => 1,
        };
        Self {
            message: e.to_string(),
            exit,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn log_level() -> u8 {
    match std::env::var("EPTOOL_LOG").as_deref() {
        Ok("debug") => 2,
        Ok("info") => 1,
        _ => 0,
    }
}

macro_rules! log_info {
    ($($arg:tt)*) => {
        if log_level() >= 1 { eprintln!("[info] {}", format!($($arg)*)); }
    };
}

macro_rules! log_debug {
    ($($arg:tt)*) => {
        if log_level() >= 2 { eprintln!("[debug] {}", format!($($arg)*)); }
    };
}

#[derive(Parser)]
#[command(
    name = "eptool",
    version,
    about = "Non-unitary dynamics under PT- and anti-PT-symmetric Hamiltonians: \
             measure series, exceptional-point scans, and contractivity audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample HSS / trace-distance / QFI series and write CSV files.
    Simulate(SimulateArgs),
    /// Locate an exceptional point by bisection on the family's scan parameter.
    ScanEp(ScanEpArgs),
    /// Audit trace-distance contractivity for a state pair or random pairs.
    Contractivity(ContractivityArgs),
    /// Emit the canned figure-reproduction CSV bundles.
    Figures(FiguresArgs),
}

#[derive(Args)]
struct ModelFlags {
    /// Configuration JSON; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Model family: pt_qubit | anti_pt_qubit | pt_qudit.
    #[arg(long)]
    family: Option<String>,
    /// Model parameter, e.g. --param a=0.6 (repeatable).
    #[arg(long = "param", value_parser = parse_key_value)]
    params: Vec<(String, f64)>,
}

impl ModelFlags {
    fn resolve(&self) -> Result<(RunConfig, HamiltonianModel), CliError> {
        let cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let model = match (&self.family, &cfg.model) {
            (Some(family), _) => model_from_flags(family, &self.params)?,
            (None, Some(model)) => model.clone(),
            (None, None) => {
                return Err(CliError::config(
                    "no model given: pass --family/--param or a --config with a model".into(),
                ))
            }
        };
        Ok((cfg, model))
    }
}

#[derive(Args)]
struct GridFlags {
    #[arg(long, default_value_t = 0.0)]
    t_start: f64,
    /// End of the dimensionless time window.
    #[arg(long)]
    t_end: Option<f64>,
    /// Number of grid points (uniform spacing).
    #[arg(long)]
    points: Option<usize>,
}

impl GridFlags {
    fn resolve(
        &self,
        cfg: &RunConfig,
        default_end: f64,
        default_points: usize,
    ) -> Result<TimeGrid, CliError> {
        let (mut t_start, mut t_end, mut points) = (0.0, default_end, default_points);
        if let Some(g) = &cfg.grid {
            t_start = g.t_start;
            t_end = g.t_end;
            points = g.num_points;
        }
        if self.t_start != 0.0 {
            t_start = self.t_start;
        }
        if let Some(e) = self.t_end {
            t_end = e;
        }
        if let Some(p) = self.points {
            points = p;
        }
        Ok(TimeGrid::new(t_start, t_end, points)?)
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelFlags,
    #[command(flatten)]
    grid: GridFlags,
    /// Measures to sample: hss, td, qfi (repeatable).
    #[arg(long = "measure", value_parser = parse_measure)]
    measures: Vec<MeasureTag>,
    /// Encoded phase of the probe state (HSS/QFI) or of the pair (TD).
    #[arg(long)]
    phi: Option<f64>,
    /// Extra phase of the qudit pair.
    #[arg(long)]
    theta: Option<f64>,
    /// Output file (single measure, `.csv`) or directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_measure(raw: &str) -> Result<MeasureTag, String> {
    match raw {
        "hss" => Ok(MeasureTag::Hss),
        "td" => Ok(MeasureTag::Td),
        "qfi" => Ok(MeasureTag::Qfi),
        other => Err(format!("unknown measure '{other}' (hss, td, qfi)")),
    }
}

#[derive(Args)]
struct ScanEpArgs {
    #[command(flatten)]
    model: ModelFlags,
    /// Scan bracket: two values of a (pt_qubit), lambda (anti_pt_qubit), or
    /// gamma/J (pt_qudit).
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    bracket: Vec<f64>,
    /// Bracket width at which bisection stops.
    #[arg(long)]
    tol: Option<f64>,
    /// Encoded phase of the witness probe state.
    #[arg(long)]
    phi: Option<f64>,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ContractivityArgs {
    #[command(flatten)]
    model: ModelFlags,
    #[command(flatten)]
    grid: GridFlags,
    /// Pair phase (uses the family's reference pair construction).
    #[arg(long)]
    phi: Option<f64>,
    /// Extra phase of the qudit pair.
    #[arg(long)]
    theta: Option<f64>,
    /// Audit this many random pairs instead of the reference pair.
    #[arg(long)]
    random: Option<usize>,
    /// Seed for the random scan.
    #[arg(long)]
    seed: Option<u64>,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Figure id: fig1a fig1b fig2 fig3a fig3b fig4a fig4b fig5a fig5b.
    figure: String,
    /// Output directory for the CSV bundle and manifest.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::ScanEp(args) => cmd_scan_ep(args),
        Command::Contractivity(args) => cmd_contractivity(args),
        Command::Figures(args) => cmd_figures(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit)
        }
    }
}

fn family_of(model: &HamiltonianModel) -> Result<ModelFamily, CliError> {
    model.family().ok_or_else(|| {
        CliError::config("this command needs one of the named model families".into())
    })
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let (cfg, model) = args.model.resolve()?;
    let grid = args.grid.resolve(&cfg, 12.0, 1201)?;
    let mut measures = if args.measures.is_empty() {
        cfg.measures.clone()
    } else {
        args.measures.clone()
    };
    if measures.is_empty() {
        measures.push(MeasureTag::Hss);
    }
    measures.dedup();

    let out = args
        .out
        .or(cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let single_file = measures.len() == 1
        && out
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));

    for measure in &measures {
        let (params, summary) = series_inputs(&model, *measure, &cfg, args.phi, args.theta)?;
        log_info!(
            "sampling {} for {} over [{}, {}] with {} points",
            measure.name(),
            model.summary(),
            grid.t_start,
            grid.t_end,
            grid.num_points
        );
        let series = sample_series(&model, *measure, &grid, &params)?;
        let path = if single_file {
            out.clone()
        } else {
            out.join(format!("{}.csv", measure.name()))
        };
        write_text(&path, &series_csv(&series, &summary))?;
        log_debug!("wrote {}", path.display());
    }
    Ok(())
}

/// Assemble the per-measure inputs, honoring config state/pair specs and
/// letting `--phi` / `--theta` override.
fn series_inputs(
    model: &HamiltonianModel,
    measure: MeasureTag,
    cfg: &RunConfig,
    phi: Option<f64>,
    theta: Option<f64>,
) -> Result<(SeriesParams, String), CliError> {
    let default_phi = std::f64::consts::FRAC_PI_4;
    match measure {
        MeasureTag::Hss | MeasureTag::Qfi => {
            let spec_phi = match &cfg.state {
                Some(StateSpec::PhaseSuperposition { phi, .. }) => Some(*phi),
                Some(_) => {
                    return Err(CliError::config(
                        "HSS/QFI need a phase_superposition state spec".into(),
                    ))
                }
                None => None,
            };
            let phi = phi.or(spec_phi).unwrap_or(default_phi);
            Ok((
                SeriesParams::Phase {
                    n: model.dimension(),
                    phi,
                },
                format!("phase_superposition n={} phi={phi}", model.dimension()),
            ))
        }
        MeasureTag::Td => {
            if phi.is_none() && theta.is_none() {
                if let Some(spec) = &cfg.pair {
                    let (first, second) = spec.materialize()?;
                    return Ok((
                        SeriesParams::Pair { first, second },
                        "pair from config".to_string(),
                    ));
                }
            }
            let family = family_of(model)?;
            let phi = phi.unwrap_or(default_phi);
            let (first, second) = eptool::states::td_pair(family, phi, theta)?;
            let summary = match theta {
                Some(theta) => format!("td_pair phi={phi} theta={theta}"),
                None => format!("td_pair phi={phi}"),
            };
            Ok((SeriesParams::Pair { first, second }, summary))
        }
    }
}

fn parse_family(name: &str) -> Result<ModelFamily, CliError> {
    match name {
        "pt_qubit" => Ok(ModelFamily::PtQubit),
        "anti_pt_qubit" => Ok(ModelFamily::AntiPtQubit),
        "pt_qudit" => Ok(ModelFamily::PtQudit),
        other => Err(CliError::config(format!(
            "unknown family '{other}' (pt_qubit, anti_pt_qubit, pt_qudit)"
        ))),
    }
}

fn cmd_scan_ep(args: ScanEpArgs) -> Result<(), CliError> {
    // the scanned parameter is supplied by the bisection itself, so only the
    // family and an optional energy scale are needed here
    let cfg = match &args.model.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let family = match (&args.model.family, &cfg.model) {
        (Some(name), _) => parse_family(name)?,
        (None, Some(model)) => family_of(model)?,
        (None, None) => {
            return Err(CliError::config(
                "no family given: pass --family or a --config with a model".into(),
            ))
        }
    };
    let scale = args
        .model
        .params
        .iter()
        .find(|(k, _)| matches!(k.as_str(), "epsilon" | "eta" | "J"))
        .map(|(_, v)| *v)
        .or_else(|| cfg.model.as_ref().map(|m| m.energy_scale()))
        .unwrap_or(1.0);
    let tolerances = cfg.tolerances.unwrap_or_default();
    let bracket = match args.bracket.as_slice() {
        [lo, hi] => (*lo, *hi),
        [] => (0.5, 1.5),
        _ => {
            return Err(CliError::config(
                "--bracket needs exactly two values".into(),
            ))
        }
    };
    let tol = args.tol.unwrap_or(tolerances.ep_tol);
    if !(scale > 0.0) {
        return Err(CliError::config(
            "energy scale must be positive for an EP scan".into(),
        ));
    }
    let witness = WitnessConfig {
        energy_scale: scale,
        phi: args.phi.unwrap_or(WitnessConfig::default().phi),
        rel_tol: tolerances.rel_tol,
        ..WitnessConfig::default()
    };
    log_info!(
        "bisecting {} over [{}, {}] to tolerance {tol}",
        family.name(),
        bracket.0,
        bracket.1
    );
    let report = locate_ep(family, &witness, bracket, tol)?;
    log_info!(
        "critical value {:.6} after {} bisections",
        report.critical_value,
        report.iterations
    );
    emit_json(&report, args.out.or(cfg.out).as_deref())
}

fn cmd_contractivity(args: ContractivityArgs) -> Result<(), CliError> {
    let (cfg, model) = args.model.resolve()?;
    let grid = args.grid.resolve(&cfg, 12.0, 2401)?;
    let out = args.out.or(cfg.out.clone());

    if let Some(count) = args.random {
        let seed = args.seed.or(cfg.seed).unwrap_or(0);
        log_info!(
            "auditing {count} random pairs of {} (seed {seed})",
            model.summary()
        );
        let report = random_pair_scan(&model, count, &grid, seed)?;
        log_info!("violating fraction {}", report.violating_fraction);
        return emit_json(&report, out.as_deref());
    }

    let (first, second) = if args.phi.is_none() && args.theta.is_none() && cfg.pair.is_some() {
        cfg.pair.as_ref().unwrap().materialize()?
    } else {
        let family = family_of(&model)?;
        let phi = args
            .phi
            .ok_or_else(|| CliError::config("pass --phi (and --theta for the qudit)".into()))?;
        eptool::states::td_pair(family, phi, args.theta)?
    };
    log_info!("auditing reference pair of {}", model.summary());
    let report = contractivity_audit(&model, (&first, &second), &grid)?;
    log_info!(
        "violating = {}, {} interval(s)",
        report.violating,
        report.violation_intervals.len()
    );
    emit_json(&report, out.as_deref())
}

fn cmd_figures(args: FiguresArgs) -> Result<(), CliError> {
    log_info!(
        "writing {} bundle to {}",
        args.figure,
        args.out_dir.display()
    );
    figures::emit_figure(&args.figure, &args.out_dir)
}
