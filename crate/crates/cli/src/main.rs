//! `recoil`: nuclear recoil corrections from the command line.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_format, Format, RunConfig, Settings, OUTPUT_DIR_VAR};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(recoil::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_user_error() => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<recoil::Error> for CliError {
    fn from(e: recoil::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "recoil", version, about = "Relativistic nuclear recoil corrections to all orders in alpha Z")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

/// Shared options; the config file takes the same names without the
/// leading dashes.
#[derive(Args, Debug)]
struct Opts {
    /// Flat `key = value` file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Nuclear charge(s), comma separated.
    #[arg(long = "z", visible_alias = "Z", global = true, value_delimiter = ',')]
    z: Option<Vec<u32>>,
    /// State: 1s, 2s or 2p1/2 (others for `spectrum`).
    #[arg(long, global = true)]
    state: Option<String>,
    #[arg(long, global = true)]
    splines: Option<usize>,
    /// B-spline order.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Gauss-Legendre points per knot interval.
    #[arg(long, global = true)]
    quadrature: Option<usize>,
    /// Cavity radius in units of the electron Compton wavelength.
    #[arg(long, global = true)]
    box_radius: Option<f64>,
    /// Spline counts rerun for the uncertainty band, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    sweep: Option<Vec<usize>>,
    /// Panel width of the log-mapped y quadrature.
    #[arg(long, global = true)]
    y_panel: Option<f64>,
    /// Gauss-Legendre points per y panel.
    #[arg(long, global = true)]
    y_order: Option<usize>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file; relative paths land in $RECOIL_OUTPUT_DIR when it is set.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Energy unit: natural, ev or khz.
    #[arg(long, global = true)]
    unit: Option<String>,
    /// Mass number of the nucleus, for conversions to eV and kHz.
    #[arg(long, global = true)]
    mass_number: Option<u32>,
    #[arg(long, global = true)]
    alpha_inverse: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis-set Dirac spectrum of one channel.
    Spectrum,
    /// One-electron recoil function P and its parts.
    One,
    /// Two-electron recoil function Q of a lithium-like valence state.
    Two,
    /// P or Q over a range of nuclear charges (1: 1s, 2: 2s, 3: 2p1/2, 4: Q for 2p1/2).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
    },
    /// Low-Z expansion coefficients of P.
    Fit,
    /// Hydrogen recoil beyond the Salpeter term, in kHz.
    Lamb,
    /// Recoil contributions for hydrogen-like and lithium-like uranium.
    UraniumTransition,
    /// P against the spline count, plus one run in an enlarged box.
    Convergence {
        /// Factor applied to the box radius for the extra run.
        #[arg(long, default_value_t = 2.0)]
        box_scale: f64,
    },
}

impl Opts {
    fn settings(&self) -> Result<Settings, CliError> {
        let usage = |e: recoil::Error| CliError::Usage(e.to_string());
        Ok(Settings {
            z: self.z.clone(),
            state: self.state.as_deref().map(str::parse).transpose().map_err(usage)?,
            splines: self.splines,
            order: self.order,
            quadrature: self.quadrature,
            box_radius: self.box_radius,
            sweep: self.sweep.clone(),
            y_panel: self.y_panel,
            y_order: self.y_order,
            format: self.format.as_deref().map(parse_format).transpose()?,
            output: self.output.clone(),
            unit: self.unit.as_deref().map(str::parse).transpose().map_err(usage)?,
            mass_number: self.mass_number,
            alpha_inverse: self.alpha_inverse,
            ..Settings::default()
        })
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let file = match &cli.opts.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let cfg = RunConfig::resolve(cli.opts.settings()?.over(file))?;
    let report = match &cli.command {
        Command::Spectrum => commands::spectrum(&cfg)?,
        Command::One => commands::one(&cfg)?,
        Command::Two => commands::two(&cfg)?,
        Command::Table { which } => commands::table(*which, &cfg)?,
        Command::Fit => commands::fit(&cfg)?,
        Command::Lamb => commands::lamb(&cfg)?,
        Command::UraniumTransition => commands::uranium(&cfg)?,
        Command::Convergence { box_scale } => commands::convergence(&cfg, *box_scale)?,
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = match cfg.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(&cfg.echo()),
    };
    let env_dir = std::env::var_os(OUTPUT_DIR_VAR).map(PathBuf::from);
    match cfg.output_path(&report.command, env_dir) {
        Some(path) => {
            let io = |e: std::io::Error| CliError::Usage(format!("cannot write {}: {e}", path.display()));
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io)?;
            }
            std::fs::write(&path, text).map_err(io)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Usage(e.to_string()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("recoil: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
