//! `ifvm`: convergence studies, basis dumps and error profiles for the
//! immersed finite volume method.

mod config;
mod error;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ifvm::experiment::{
    dump_basis, dump_profile, preset, run, ExperimentConfig, Method, OutputFormat,
};

use config::{parse_real, Overrides};
use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "ifvm",
    version,
    about = "Immersed finite volume experiments on (0, 1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convergence table over a list of meshes.
    Run(RunArgs),
    /// Prebuilt table configuration.
    Reproduce {
        /// Table number, 1 to 10.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        table: u8,
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reference basis, Gauss and Lobatto data on a 401-point grid.
    DumpBasis {
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value = "1", value_parser = parse_real)]
        beta_minus: f64,
        #[arg(long, default_value = "5", value_parser = parse_real)]
        beta_plus: f64,
        /// Interface position on the reference interval.
        #[arg(long, default_value = "0.15", value_parser = parse_real, allow_hyphen_values = true)]
        alpha_hat: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise errors on one mesh.
    DumpProfile(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_parser = parse_real)]
    beta_minus: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    beta_plus: Option<f64>,
    /// Interface position; accepts `pi/6`.
    #[arg(long, value_parser = parse_real)]
    alpha: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long = "c-coef", value_parser = parse_real, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Order of the first flux derivative jump for `nonsmooth`.
    #[arg(long)]
    m: Option<u32>,
    /// Values of 1/h, e.g. `8,16,32`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    mesh: Option<Vec<usize>>,
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Smooth,
    Nonsmooth,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: ifvm::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: ifvm::Error| e.to_string())
}

impl RunArgs {
    fn resolve(&self) -> Result<(ExperimentConfig, Option<PathBuf>)> {
        let file = match &self.config {
            Some(path) => config::load(path)?,
            None => Overrides::default(),
        };
        let flags = Overrides {
            degree: self.degree,
            beta_minus: self.beta_minus,
            beta_plus: self.beta_plus,
            alpha: self.alpha,
            gamma: self.gamma,
            c: self.c,
            nonsmooth: self.kind.map(|k| k == Kind::Nonsmooth),
            m: self.m,
            meshes: self.mesh.clone(),
            method: self.method,
            format: self.format,
            out: self.out.clone(),
        };
        let merged = file.merged(flags);
        let cfg = merged.apply(ExperimentConfig::default());
        cfg.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok((cfg, merged.out))
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run(args) => {
            let (cfg, out) = args.resolve()?;
            let table = run(&cfg).map_err(CliError::Solver)?;
            emit(&table.render(cfg.format), out.as_deref())
        }
        Command::Reproduce { table, format, out } => {
            let mut cfg =
                preset(table).ok_or_else(|| CliError::Config(format!("no table {table}")))?;
            if let Some(f) = format {
                cfg.format = f;
            }
            let t = run(&cfg).map_err(CliError::Solver)?;
            emit(&t.render(cfg.format), out.as_deref())
        }
        Command::DumpBasis {
            degree,
            beta_minus,
            beta_plus,
            alpha_hat,
            out,
        } => {
            let valid = degree >= 1 && beta_minus > 0.0 && beta_plus > 0.0 && alpha_hat.abs() < 1.0;
            if !valid {
                return Err(CliError::Config(
                    "need degree >= 1, positive beta and |alpha_hat| < 1".into(),
                ));
            }
            let text =
                dump_basis(degree, beta_minus, beta_plus, alpha_hat).map_err(CliError::Solver)?;
            emit(&text, out.as_deref())
        }
        Command::DumpProfile(args) => {
            let (cfg, out) = args.resolve()?;
            let inv_h = match cfg.meshes.as_slice() {
                [n] => *n,
                _ => {
                    return Err(CliError::Config(
                        "dump-profile needs exactly one mesh".into(),
                    ))
                }
            };
            let text = dump_profile(&cfg, inv_h).map_err(CliError::Solver)?;
            emit(&text, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ifvm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
