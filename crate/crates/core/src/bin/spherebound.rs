use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spherebound::asymptotics;
use spherebound::matern::{self, Kappa, MaternConfig};
use spherebound::models::{
    default_k_max, hyperuniform_kissing, ModelKind, PackingDensity, RadialModel,
    StructureFactorCurve,
};
use spherebound::optimizer::{self, classical_bounds, find_minima, terminal, terminal_table};
use spherebound::output::{self, parse_dims};
use spherebound::variance::yamada_check;
use spherebound::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Step,
    Delta,
    Gap,
}

impl From<Model> for ModelKind {
    fn from(m: Model) -> Self {
        match m {
            Model::Step => ModelKind::Step,
            Model::Delta => ModelKind::StepDelta,
            Model::Gap => ModelKind::StepDeltaGap,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "spherebound", version, about = "Terminal densities of hard-core test pair correlations")]
struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel tables (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Random seed for simulations.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Terminal densities, one row per dimension.
    Table {
        /// Dimensions, e.g. "3,4,5" or "3..8".
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum, default_value = "gap")]
        model: Model,
    },
    /// Sampled structure factor S(k).
    Sk {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        d: u32,
        /// Volume fraction (default: the model's terminal density).
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        /// Contact kissing number (gap model default: the hyperuniform value).
        #[arg(long = "Z", alias = "z")]
        z: Option<f64>,
        #[arg(long)]
        kmax: Option<f64>,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
    },
    /// Large-d constants and predictions compared with the numeric optimum.
    Asymptotics {
        #[arg(long, default_value_t = 200)]
        d: u32,
    },
    /// Number variance against Yamada's bound.
    Yamada {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        d: u32,
        /// Volume fraction (default: the model's terminal density).
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long = "Z", alias = "z")]
        z: Option<f64>,
        #[arg(long, default_value_t = 10.0)]
        rmax: f64,
        #[arg(long, default_value_t = 500)]
        grid: usize,
    },
    /// Monte Carlo of ghost (kappa=1) or standard (kappa=0) RSA.
    Matern {
        #[arg(long)]
        d: u32,
        /// Time horizon (default: saturation deficit 1e-4).
        #[arg(long = "T", alias = "t")]
        t: Option<f64>,
        #[arg(long = "L", alias = "l", default_value_t = 40.0)]
        l: f64,
        #[arg(long, default_value_t = 1)]
        kappa: u8,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        /// Fill remaining gaps to saturation (kappa=0, d=1).
        #[arg(long)]
        saturate: bool,
        /// Also write accepted centers as CSV to this file.
        #[arg(long)]
        centers: Option<PathBuf>,
    },
    /// Classical lower and upper bounds.
    Classical {
        #[arg(long)]
        dims: String,
        /// Add the gap-model terminal density column.
        #[arg(long)]
        with_terminal: bool,
    },
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Model parameters with unspecified entries filled from the terminal optimum.
fn resolve_model(
    model: Model,
    d: u32,
    phi: Option<f64>,
    sigma: Option<f64>,
    z: Option<f64>,
) -> Result<(RadialModel, PackingDensity)> {
    let kind = ModelKind::from(model);
    let opt = match (kind, phi, sigma, z) {
        (ModelKind::Step, Some(_), _, _) => None,
        (ModelKind::StepDelta, Some(_), _, Some(_)) => None,
        (ModelKind::StepDeltaGap, Some(_), Some(_), _) => None,
        _ => Some(terminal(d, kind)?),
    };
    let phi = phi.or(opt.as_ref().map(|r| r.phi_star)).expect("filled above");
    let density = PackingDensity::new(d, phi)?;
    let model = match kind {
        ModelKind::Step => RadialModel::step(),
        ModelKind::StepDelta => {
            RadialModel::step_delta(z.or(opt.as_ref().map(|r| r.z_star)).expect("filled above"))?
        }
        ModelKind::StepDeltaGap => {
            let s = sigma.or(opt.as_ref().map(|r| r.sigma_star)).expect("filled above");
            let z = z.unwrap_or_else(|| hyperuniform_kissing(d, phi, s));
            RadialModel::gap(s, z)?
        }
    };
    Ok((model, density))
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Table { dims, model } => {
            let dims = parse_dims(dims)?;
            let kind = ModelKind::from(*model);
            let min_d = if kind == ModelKind::StepDeltaGap { 2 } else { 1 };
            let max_d = if kind == ModelKind::StepDeltaGap { 300 } else { 1000 };
            if dims.is_empty() || dims.iter().any(|&d| d < min_d || d > max_d) {
                return Err(Error::InvalidParameter(format!(
                    "dimensions for model {} must lie in {min_d}..={max_d}",
                    kind.name()
                )));
            }
            let rows = terminal_table(&dims, kind);
            let text = if json {
                output::table_json(&dims, &rows)?
            } else {
                output::table_csv(&dims, &rows)
            };
            emit(cli, &text)?;
            Ok(rows.iter().all(|r| r.is_ok()))
        }
        Command::Sk {
            model,
            d,
            phi,
            sigma,
            z,
            kmax,
            samples,
        } => {
            if *samples == 0 {
                return Err(Error::InvalidParameter("--samples must be positive".into()));
            }
            let (model, density) = resolve_model(*model, *d, *phi, *sigma, *z)?;
            let k_max = match kmax {
                Some(k) => *k,
                None => default_k_max(*d)?,
            };
            let mut curve = StructureFactorCurve::sample(model, density, k_max, *samples)?;
            if let Ok(scan) = find_minima(*d, density.phi, model.sigma, model.z, k_max) {
                let ks: Vec<f64> = scan.minima.iter().map(|m| m.k).collect();
                curve.refine_at(&ks)?;
            }
            let text = if json {
                output::curve_json(&curve)?
            } else {
                output::curve_csv(&curve)
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Command::Asymptotics { d } => {
            if *d < 20 || *d > 300 {
                return Err(Error::InvalidParameter(format!(
                    "asymptotics needs 20 <= d <= 300, got {d}"
                )));
            }
            let numeric = optimizer::terminal_gap(*d)?;
            let report = asymptotics::report(*d, &numeric)?;
            let text = if json {
                output::to_json(&report)?
            } else {
                output::asymptotics_csv(&report)
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Command::Yamada {
            model,
            d,
            phi,
            sigma,
            z,
            rmax,
            grid,
        } => {
            if let Some(p) = phi {
                if !(*p > 0.0 && *p < 1.0) {
                    return Err(Error::InvalidParameter(format!("phi must lie in (0, 1), got {p}")));
                }
            }
            let (model, density) = resolve_model(*model, *d, *phi, *sigma, *z)?;
            let check = yamada_check(&model, &density, *rmax, *grid)?;
            let text = if json {
                output::to_json(&check)?
            } else {
                output::variance_csv(&check)
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Command::Matern {
            d,
            t,
            l,
            kappa,
            bins,
            saturate,
            centers,
        } => {
            let horizon = t.unwrap_or_else(|| matern::horizon_for_deficit(*d, 1e-4));
            let mut config = MaternConfig::new(*d, *l, horizon, Kappa::from_int(*kappa)?, cli.seed);
            config.bins = *bins;
            config.saturate = *saturate;
            let result = matern::simulate(&config)?;
            if let Some(path) = centers {
                std::fs::write(path, output::centers_csv(&result))?;
            }
            let text = if json {
                output::to_json(&result)?
            } else {
                output::histogram_csv(&result)
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Command::Classical {
            dims,
            with_terminal,
        } => {
            let dims = parse_dims(dims)?;
            if dims.is_empty() || dims.iter().any(|&d| d < 2) {
                return Err(Error::InvalidParameter("classical bounds need d >= 2".into()));
            }
            let phis: Vec<Option<f64>> = if *with_terminal {
                terminal_table(&dims, ModelKind::StepDeltaGap)
                    .into_iter()
                    .map(|r| r.map(|r| Some(r.phi_star)))
                    .collect::<Result<_>>()?
            } else {
                vec![None; dims.len()]
            };
            let rows = dims
                .iter()
                .zip(phis)
                .map(|(&d, phi)| Ok((classical_bounds(d)?, phi)))
                .collect::<Result<Vec<_>>>()?;
            let text = if json {
                #[derive(serde::Serialize)]
                struct Row<'a> {
                    #[serde(flatten)]
                    bounds: &'a optimizer::ClassicalBounds,
                    phi_star: Option<f64>,
                }
                let rows: Vec<Row> = rows
                    .iter()
                    .map(|(b, p)| Row {
                        bounds: b,
                        phi_star: *p,
                    })
                    .collect();
                output::to_json(&rows)?
            } else {
                output::classical_csv(&rows)
            };
            emit(cli, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() || matches!(e, Error::Io(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
