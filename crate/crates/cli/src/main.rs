//! `semisimple`: exact analysis of polyhedral cones from the command line.
//!
//! Exit status: 0 on success, 2 when the computed verdict is negative (not
//! semisimple, no representation, certificate not met), 1 on input errors.

mod commands;
mod render;
mod source;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{Mode, NormChoice, Outcome};

#[derive(Parser)]
#[command(name = "semisimple", version, about = "Exact cone duality, order radicals and positive representations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Semisimplicity verdict, order radical and supporting hyperplanes.
    Analyze {
        /// Cone JSON file or builtin name (orthant, orthant3, halfplane, wedge, ice-cream-closure, full2, zero2).
        cone: String,
    },
    /// Canonical dual cone.
    Dual { cone: String },
    /// Synthesize (or verify) a positive or bipositive representation.
    Represent {
        cone: String,
        #[arg(long, value_enum, default_value_t = Mode::Positive)]
        mode: Mode,
        /// Verify this representation file instead of synthesizing one.
        #[arg(long)]
        verify: Option<String>,
        /// Vectors `x1;x2;...` at which to report the sup seminorm.
        #[arg(long)]
        samples: Option<String>,
    },
    /// Distance to the cone and the induced monotone seminorm at a point.
    Norm {
        #[arg(long)]
        cone: String,
        #[arg(long, value_enum, default_value_t = NormChoice::Ellinf)]
        norm: NormChoice,
        /// Unit-ball facets for `--norm polytope`.
        #[arg(long)]
        norm_file: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Pushforward to the quotient by the span of the kernel vectors.
    Quotient {
        #[arg(long)]
        cone: String,
        /// Kernel vectors `v1;v2;...`.
        #[arg(long, allow_hyphen_values = true)]
        kernel: String,
    },
    /// The second-order cone modulo the line through a ray.
    Soc {
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
        /// Accept rays that are not extremal.
        #[arg(long)]
        relaxed: bool,
        /// A quotient point to test for membership.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Length of the sequence of members approaching the witness.
        #[arg(long, default_value_t = 3)]
        terms: usize,
    },
    /// Function-space constructions.
    Lab {
        #[command(subcommand)]
        demo: Lab,
    },
}

#[derive(Subcommand)]
enum Lab {
    /// A nonnegative polynomial close to `g` on `[a, b]`.
    Density {
        /// Ascending coefficients, e.g. `0,-1` for `-x`.
        #[arg(long, allow_hyphen_values = true, default_value = "0,-1")]
        poly: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "2")]
        b: String,
        #[arg(long, default_value = "1")]
        eps: String,
    },
    /// Cauchy sequence for the C^1 norm (floating point).
    Completion {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Upper envelope of scaled ramps on `[0, window]`.
    Envelope {
        #[arg(long, default_value = "12")]
        window: String,
        /// Comma-separated scale factors; by default each ramp is scaled to
        /// sample seminorm `n`.
        #[arg(long)]
        alphas: Option<String>,
    },
}

fn run(command: &Command) -> Result<(serde_json::Value, Outcome)> {
    let (echo, outcome) = match command {
        Command::Analyze { cone } => (json!({"name": "analyze", "cone": cone}), commands::analyze(cone)?),
        Command::Dual { cone } => (json!({"name": "dual", "cone": cone}), commands::dual(cone)?),
        Command::Represent { cone, mode, verify, samples } => (
            json!({"name": "represent", "cone": cone, "mode": format!("{mode:?}").to_lowercase(), "verify": verify, "samples": samples}),
            commands::represent(cone, *mode, verify.as_deref(), samples.as_deref())?,
        ),
        Command::Norm { cone, norm, norm_file, point } => (
            json!({"name": "norm", "cone": cone, "norm": format!("{norm:?}").to_lowercase(), "norm_file": norm_file, "point": point}),
            commands::norm(cone, *norm, norm_file.as_deref(), point)?,
        ),
        Command::Quotient { cone, kernel } => {
            (json!({"name": "quotient", "cone": cone, "kernel": kernel}), commands::quotient(cone, kernel)?)
        }
        Command::Soc { ray, relaxed, point, terms } => (
            json!({"name": "soc", "ray": ray, "relaxed": relaxed, "point": point, "terms": terms}),
            commands::soc(ray, *relaxed, point.as_deref(), *terms)?,
        ),
        Command::Lab { demo } => match demo {
            Lab::Density { poly, a, b, eps } => (
                json!({"name": "lab density", "poly": poly, "a": a, "b": b, "eps": eps}),
                commands::lab_density(poly, a, b, eps)?,
            ),
            Lab::Completion { n_max } => {
                (json!({"name": "lab completion", "n_max": n_max}), commands::lab_completion(*n_max)?)
            }
            Lab::Envelope { window, alphas } => (
                json!({"name": "lab envelope", "window": window, "alphas": alphas}),
                commands::lab_envelope(window, alphas.as_deref())?,
            ),
        },
    };
    Ok((echo, outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((echo, outcome)) => {
            let text = match cli.format {
                Format::Json => {
                    let doc = json!({"command": echo, "report": outcome.report});
                    serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
                }
                Format::Text => render::text(&outcome.report),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.negative {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
