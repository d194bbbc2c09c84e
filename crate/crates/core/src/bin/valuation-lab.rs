use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use valuation_lab::generators::body_from_spec;
use valuation_lab::harness::{format_table, run_suite, Identity, SuiteConfig};
use valuation_lab::mixed::{self, BaseFunctional, PolarizationRequest};
use valuation_lab::quadrature::Method;
use valuation_lab::valuations;
use valuation_lab::{Error, PolytopeBody, Result, SymTensor};

/// Exact tensor valuations of convex polytopes, and quadrature checks of
/// Cauchy-type projection formulas.
#[derive(Parser)]
#[command(name = "valuation-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct VerifyArgs {
    /// cauchy, vector-cauchy, mixed-vector-cauchy, abs-moment,
    /// shadow-integral, directional-derivative, or all
    #[arg(long, default_value = "all")]
    identity: String,
    /// Body description (cube, cube:a:b, simplex, cross_polytope,
    /// random:seed, random:count:seed) or a body JSON file
    #[arg(long)]
    body: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// mc or grid (grid only in the plane)
    #[arg(long)]
    method: Option<Method>,
    /// Relative tolerance replacing the per-method default
    #[arg(long)]
    tol: Option<f64>,
    /// Number of directions for the directional-derivative check
    #[arg(long)]
    directions: Option<usize>,
    /// Suite configuration in JSON; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the reports as a JSON array
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check projection identities against sphere quadrature.
    Verify(VerifyArgs),
    /// Evaluate one functional of a body and print it as JSON.
    Compute {
        /// volume, z, q1, upsilon, xi, cone_volume, or psi2
        #[arg(long)]
        functional: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long)]
        body: String,
        /// Ambient dimension for generator bodies
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Fully mixed functional of n bodies (n + 1 for z) by polarization.
    Mixed {
        /// q1, upsilon1, moment_z, or ball_moment
        #[arg(long)]
        functional: String,
        /// Body descriptions or JSON files
        #[arg(long, num_args = 1.., required = true)]
        bodies: Vec<String>,
        /// Ambient dimension for generator bodies
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
}

impl VerifyArgs {
    /// The suite configuration: the config file (or defaults) with flags applied on top.
    fn suite_config(&self) -> Result<SuiteConfig> {
        let mut cfg = match &self.config {
            Some(path) => SuiteConfig::from_json_file(path)?,
            None => SuiteConfig::default(),
        };
        if self.identity != "all" {
            cfg.identities = vec![self.identity.parse::<Identity>()?];
        }
        if let Some(b) = &self.body {
            cfg.bodies = vec![b.clone()];
        }
        if let Some(n) = self.dim {
            cfg.dims = vec![n];
        }
        if let Some(s) = self.samples {
            cfg.samples = s;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if self.method.is_some() {
            cfg.method = self.method;
        }
        if self.tol.is_some() {
            cfg.tolerance = self.tol;
        }
        if let Some(d) = self.directions {
            cfg.directions = d;
        }
        Ok(cfg)
    }
}

fn compute(functional: &str, rank: usize, body: &PolytopeBody) -> Result<serde_json::Value> {
    let value = match functional {
        "volume" => serde_json::to_value(SymTensor::scalar(body.dim(), body.volume()))?,
        "z" => serde_json::to_value(SymTensor::from_vector(&body.moment()))?,
        "q1" => serde_json::to_value(SymTensor::from_vector(&valuations::q1(body)))?,
        "upsilon" => serde_json::to_value(valuations::upsilon(body, rank)?)?,
        "xi" => serde_json::to_value(valuations::xi(body, rank)?)?,
        "psi2" => serde_json::to_value(valuations::psi(body, 2)?)?,
        "cone_volume" => serde_json::to_value(valuations::cone_volume_atoms(body))?,
        _ => {
            return Err(Error::Unknown {
                kind: "functional",
                name: functional.to_string(),
            })
        }
    };
    Ok(json!({ "functional": functional, "rank": rank, "value": value }))
}

fn mixed(functional: &str, bodies: Vec<PolytopeBody>) -> Result<serde_json::Value> {
    let value = match functional {
        "ball_moment" => SymTensor::from_vector(&mixed::mixed_moment_with_ball(&bodies)?),
        _ => mixed::polarize(&PolarizationRequest::new(
            bodies,
            functional.parse::<BaseFunctional>()?,
        )?)?,
    };
    Ok(json!({ "functional": functional, "value": value }))
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(args) => {
            let reports = run_suite(&args.suite_config()?)?;
            let text = serde_json::to_string_pretty(&reports)?;
            if let Some(path) = &args.out {
                std::fs::write(path, &text)?;
            }
            if args.json {
                emit(&format!("{text}\n"))?;
            } else {
                emit(&format_table(&reports))?;
            }
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Compute {
            functional,
            rank,
            body,
            dim,
        } => {
            let body = body_from_spec(&body, dim)?;
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&compute(&functional, rank, &body)?)?
            ))?;
            Ok(true)
        }
        Command::Mixed {
            functional,
            bodies,
            dim,
        } => {
            let bodies = bodies
                .iter()
                .map(|b| body_from_spec(b, dim))
                .collect::<Result<Vec<_>>>()?;
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&mixed(&functional, bodies)?)?
            ))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
