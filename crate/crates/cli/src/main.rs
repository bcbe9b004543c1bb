//! Command-line front end: data subcommands emit CSV tables for a chosen
//! measure, and `verify` runs the named check suites.
//!
//! Exit codes: 0 on success with all checks passing, 1 when a numerical
//! check fails, 2 on invalid input or I/O problems.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use kaczmarz_cli::config::resolve_measure;
use kaczmarz_cli::report::Format;
use kaczmarz_cli::suites::{run_suite, SuiteParams, SUITE_NAMES};
use kaczmarz_cli::{data, DataParams};

#[derive(Parser)]
#[command(
    name = "kaczmarz",
    about = "Auxiliary sequences, transforms, and reproducing kernels of singular measures on the circle",
    version
)]
struct Cli {
    /// Series truncation order (each verify suite falls back to the order
    /// its tolerances were pinned at)
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Quadrature depth for digit-system measures
    #[arg(long, global = true, default_value_t = 12)]
    depth: u32,

    /// Seed for sampled points and test vectors
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,

    /// Multiplier applied to every tolerance
    #[arg(long, global = true, default_value_t = 1.0)]
    tol_scale: f64,

    /// Output path (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Moment table of a measure
    Fourier {
        /// Built-in name (delta0, half, comb2, comb4, mu3, mu4, mix,
        /// lopsided) or a TOML file
        measure: String,
    },
    /// Reciprocal coefficients of the moment series
    Alpha { measure: String },
    /// Gram matrix of the auxiliary sequence
    Gram { measure: String },
    /// Normalized Cauchy transform along both routes on a grid
    Transform { measure: String },
    /// Kernel values (closed form and double series) with reproduction error
    Kernel { measure: String },
    /// Dual-family frame bounds and reconstruction residuals
    Dual {
        measure: String,
        /// Companion (mixture) or reference (weighted) measure
        #[arg(long)]
        second: String,
        /// Mixture coefficient; ignored with --weighted
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        /// Density-weighted dual instead of a mixture dual
        #[arg(long, default_value_t = false)]
        weighted: bool,
    },
    /// Rotated-measure decomposition residuals
    Clark {
        measure: String,
        /// Number of rotations
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
    /// Layer decomposition norms and reconstruction error
    Wold {
        measure: String,
        /// Number of expanded layers
        #[arg(long, default_value_t = 8)]
        layers: usize,
    },
    /// Run a named verification suite
    Verify {
        /// One of the named suites, or `all`
        suite: String,
    },
    /// List available suites
    Suites,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to stdout"),
    }
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    if let Some(order) = cli.order {
        anyhow::ensure!(order >= 8, "--order must be at least 8, got {order}");
    }
    anyhow::ensure!(cli.depth >= 1, "--depth must be at least 1");
    anyhow::ensure!(
        cli.tol_scale > 0.0 && cli.tol_scale.is_finite(),
        "--tol-scale must be positive"
    );
    let dp = DataParams {
        order: cli.order.unwrap_or(128),
        depth: cli.depth,
    };
    match cli.cmd {
        Cmd::Fourier { measure } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::fourier_csv(&spec, dp.order))?;
            Ok(0)
        }
        Cmd::Alpha { measure } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::alpha_csv(&spec, dp.order))?;
            Ok(0)
        }
        Cmd::Gram { measure } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::gram_csv(&spec, dp.order.min(256)))?;
            Ok(0)
        }
        Cmd::Transform { measure } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::transform_csv(&spec, &dp)?)?;
            Ok(0)
        }
        Cmd::Kernel { measure } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::kernel_csv(&spec, &dp)?)?;
            Ok(0)
        }
        Cmd::Dual {
            measure,
            second,
            eta,
            weighted,
        } => {
            let mu = resolve_measure(&measure)?;
            let other = resolve_measure(&second)?;
            emit(
                &cli.out,
                &data::dual_csv(&mu, &other, eta, weighted, &dp, cli.seed)?,
            )?;
            Ok(0)
        }
        Cmd::Clark { measure, levels } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::clark_csv(&spec, levels, &dp)?)?;
            Ok(0)
        }
        Cmd::Wold { measure, layers } => {
            let spec = resolve_measure(&measure)?;
            emit(&cli.out, &data::wold_csv(&spec, layers, &dp)?)?;
            Ok(0)
        }
        Cmd::Verify { suite } => {
            let params = SuiteParams {
                order: cli.order,
                depth: cli.depth,
                seed: cli.seed,
                tol_scale: cli.tol_scale,
            };
            let report = run_suite(&suite, &params)?;
            let text = match cli.format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json() + "\n",
            };
            emit(&cli.out, &text)?;
            eprintln!(
                "suite {} (seed {:#x}, depth {}, tol-scale {})",
                report.suite, report.seed, report.depth, report.tol_scale
            );
            for c in &report.checks {
                eprintln!(
                    "{} {} (error {:.3e}, bound {:.3e})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.check,
                    c.error,
                    c.bound
                );
            }
            Ok(report.exit_code())
        }
        Cmd::Suites => {
            emit(&cli.out, &format!("{}\n", SUITE_NAMES.join("\n")))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
