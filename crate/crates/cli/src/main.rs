//! `qcorr`: correlation measures for two-qubit states and model sweeps.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcorr_core::states::density_matrix_from_json;
use qcorr_core::sweep::{run_sweep, Preset, SweepOutput, SweepSpec, SweepVariable};
use qcorr_core::{correlation_report, Model, ModelParams, OptimizerSettings, Subsystem};

#[derive(Debug, Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum discord, geometric discord and negativity of two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Time evolution of a model state, optionally over a purity or coupling grid.
    Sweep(SweepArgs),
    /// Correlation report for a density matrix stored as JSON.
    State {
        /// 4×4 nested array of [re, im] pairs, basis |00>, |01>, |10>, |11>.
        file: PathBuf,
        #[arg(long, default_value = "B", value_parser = parse_subsystem)]
        measured: Subsystem,
    },
    /// Reference time evolutions: f1a, f1b, f2a, f2b, f3a, f3b.
    Figure {
        #[arg(value_parser = parse_preset)]
        preset: Preset,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "B", value_parser = parse_subsystem)]
        measured: Subsystem,
    },
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_model)]
    model: Model,
    /// Purity of the initial Werner state.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Superposition angle in radians.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    theta: f64,
    /// Bath coupling γ/λ (dephasing model).
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, default_value_t = 12.0)]
    t_max: f64,
    /// Number of grid points in [0, t_max], endpoints included.
    #[arg(long, default_value_t = 1200)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = SweepKind::Time)]
    sweep: SweepKind,
    /// Comma-separated secondary grid for purity or coupling sweeps.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    #[arg(long, default_value = "B", value_parser = parse_subsystem)]
    measured: Subsystem,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    /// Output file; data goes to stdout and the summary to stderr when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    Time,
    Purity,
    Coupling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_subsystem(s: &str) -> Result<Subsystem, String> {
    s.parse().map_err(|e: qcorr_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: qcorr_core::Error| e.to_string())
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: qcorr_core::Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Physics(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Physics(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    fn io(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
        move |source| CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<qcorr_core::Error> for CliError {
    fn from(e: qcorr_core::Error) -> Self {
        match e {
            qcorr_core::Error::InvalidArgument(_) | qcorr_core::Error::Format(_) => CliError::Usage(e.to_string()),
            qcorr_core::Error::NotHermitian { .. } | qcorr_core::Error::InvalidState(_) => {
                CliError::Physics(e.to_string())
            }
        }
    }
}

fn stdout_error(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn sweep_spec(args: &SweepArgs) -> SweepSpec {
    let base = match args.model {
        Model::Cavity => ModelParams::cavity(args.p, args.theta, 0.0),
        Model::Dephasing => ModelParams::dephasing(args.p, args.theta, args.gamma, 0.0),
    };
    let variable = match args.sweep {
        SweepKind::Time => SweepVariable::Time,
        SweepKind::Purity => SweepVariable::Purity,
        SweepKind::Coupling => SweepVariable::Coupling,
    };
    SweepSpec {
        variable,
        values: args.values.clone().unwrap_or_else(|| variable.default_values()),
        measured: args.measured,
        ..SweepSpec::time(base, args.t_max, args.steps)
    }
}

fn write_data(out: &SweepOutput, format: Format, w: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Csv => out.write_csv(w)?,
        Format::Json => out.write_json(w)?,
    }
    w.flush()
}

fn emit(spec: &SweepSpec, output: &OutputArgs) -> Result<(), CliError> {
    let out = run_sweep(spec, &OptimizerSettings::default())?;
    match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(CliError::io(path))?;
            write_data(&out, output.format, &mut BufWriter::new(file)).map_err(CliError::io(path))?;
            print!("{out}");
            println!("wrote {} rows to {}", out.rows.len(), path.display());
        }
        None => {
            write_data(&out, output.format, &mut io::stdout().lock()).map_err(stdout_error)?;
            eprint!("{out}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => emit(&sweep_spec(&args), &args.output),
        Command::Figure {
            preset,
            output,
            measured,
        } => emit(
            &SweepSpec {
                measured,
                ..preset.spec()
            },
            &output,
        ),
        Command::State { file, measured } => {
            let text = std::fs::read_to_string(&file).map_err(CliError::io(&file))?;
            let rho = density_matrix_from_json(&text).map_err(|e| match CliError::from(e) {
                CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", file.display())),
                other => other,
            })?;
            let report = correlation_report(&rho, measured, &OptimizerSettings::default());
            let json = serde_json::to_string_pretty(&report).expect("reports hold finite numbers");
            println!("{json}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
