use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use star_experiments::config::{BodySource, OutputPaths};
use star_experiments::emit::emit;
use star_experiments::run::converge_body;
use star_experiments::{
    generate_corpus, random_directions, run_experiment, Body, CorpusSpec, ExperimentConfig, Family, Geometry,
    Schedule, Tolerances,
};
use stargeom::petty::PettyOptions;
use stargeom::{BodyDefinition, SphereGrid};

#[derive(Parser)]
#[command(version, about = "Polar projection inequalities along Steiner symmetrization sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded corpus of body definitions.
    GenCorpus(GenCorpus),
    /// Compare a body with its rearrangement and trace the symmetrization sequence.
    Verify(Verify),
    /// Distance to the rearrangement along random symmetrizations.
    Converge(Converge),
    /// Evaluate the isoperimetric chain of a body.
    IsoperimetricChain(Chain),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Caps,
    Trig,
}

#[derive(Args)]
struct GenCorpus {
    #[arg(long, value_enum)]
    geometry: Geometry,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value = "trig")]
    family: FamilyKind,
    /// Radii of the cap family (angles for spherical caps).
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 0.7])]
    radii: Vec<f64>,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = 0.15)]
    amplitude: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BodyArgs {
    #[arg(long, value_enum)]
    geometry: Option<Geometry>,
    /// Body definition file.
    #[arg(long)]
    body: Option<PathBuf>,
    /// Grid resolution; defaults to 720 in the plane and 32 in space.
    #[arg(long)]
    resolution: Option<usize>,
}

impl BodyArgs {
    fn load(&self) -> anyhow::Result<(Geometry, Body)> {
        let geometry = self.geometry.context("--geometry is required")?;
        let path = self.body.as_ref().context("--body is required")?;
        let def = BodyDefinition::load(path)?;
        let resolution = self.resolution.unwrap_or(default_resolution(def.dim));
        let grid = Arc::new(SphereGrid::new(def.dim, resolution)?);
        Ok((geometry, Body::build(geometry, &def, grid)?))
    }
}

fn default_resolution(dim: usize) -> usize {
    if dim == 2 {
        720
    } else {
        32
    }
}

#[derive(Args)]
struct Verify {
    /// Run configuration; command-line flags are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    body: BodyArgs,
    #[arg(long, default_value_t = 20)]
    iterations: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Quadrature allowance; calibrated from the equality case when absent.
    #[arg(long)]
    eps_quad: Option<f64>,
    #[arg(long)]
    chain: bool,
    /// Output directory for `run.csv` and `run.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Converge {
    #[command(flatten)]
    body: BodyArgs,
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Record the distance every this many steps.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Chain {
    #[command(flatten)]
    body: BodyArgs,
    #[arg(long)]
    eps_quad: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
    }
    std::fs::write(path, contents).with_context(|| path.display().to_string())
}

fn gen_corpus(args: &GenCorpus) -> anyhow::Result<ExitCode> {
    let family = match args.family {
        FamilyKind::Caps => Family::Caps { radii: args.radii.clone() },
        FamilyKind::Trig => Family::trig_radial(args.geometry, args.max_degree, args.amplitude),
    };
    let spec = CorpusSpec::new(args.geometry, args.dim, args.seed, args.count, family);
    let corpus = generate_corpus(&spec)?;
    for (i, def) in corpus.iter().enumerate() {
        let path = args.out.join(format!("body_{i:03}.toml"));
        write_file(&path, &def.to_toml_string()?)?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &Verify) -> anyhow::Result<ExitCode> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => {
            let geometry = args.body.geometry.context("--geometry or --config is required")?;
            let body = args.body.body.clone().context("--body or --config is required")?;
            let dim = BodyDefinition::load(&body)?.dim;
            ExperimentConfig {
                geometry,
                body: BodySource::Path(body),
                resolution: args.body.resolution.unwrap_or(default_resolution(dim)),
                schedule: Schedule::Random { random: args.iterations, seed: args.seed },
                tolerances: Tolerances { eps_quad: args.eps_quad, ..Tolerances::default() },
                output: OutputPaths::default(),
                chain: args.chain,
            }
        }
    };
    if let Some(dir) = &args.out {
        config.output = OutputPaths { csv: Some(dir.join("run.csv")), json: Some(dir.join("run.json")) };
    }
    let report = run_experiment(&config)?;
    emit(&report, config.output.csv.as_deref(), config.output.json.as_deref())?;
    let summary = report.summary.as_ref();
    println!(
        "{} n={} resolution {}: lhs {:.12e} rhs {:.12e} margin {:.3e} eps_quad {:.3e} violations {} {}",
        report.geometry,
        report.dim,
        report.resolution,
        summary.map_or(f64::NAN, |s| s.lhs),
        summary.map_or(f64::NAN, |s| s.rhs),
        summary.map_or(f64::NAN, |s| s.margin),
        report.eps_quad,
        summary.map_or(0, |s| s.violations.len()),
        if report.passed() { "PASS" } else { "FAIL" },
    );
    if let Some(f) = &report.failure {
        eprintln!("stopped at iterate {}: {}", f.iterate, f.message);
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[derive(Serialize)]
struct ConvergenceSummary {
    geometry: Geometry,
    seed: u64,
    iterations: usize,
    initial_distance: f64,
    final_distance: f64,
    reduction: f64,
    max_local_increase: f64,
    max_measure_drift: f64,
}

fn converge(args: &Converge) -> anyhow::Result<ExitCode> {
    let (geometry, body) = args.body.load()?;
    let directions = random_directions(body.dim(), args.iterations, args.seed)?;
    let trace = converge_body(&body, &directions, args.stride)?;
    let mut csv = String::from("iter,dist_to_star\n");
    for (i, d) in &trace.distances {
        csv.push_str(&format!("{i},{d:.16e}\n"));
    }
    write_file(&args.out.join("converge.csv"), &csv)?;
    let summary = ConvergenceSummary {
        geometry,
        seed: args.seed,
        iterations: args.iterations,
        initial_distance: trace.initial_distance(),
        final_distance: trace.final_distance(),
        reduction: trace.reduction(),
        max_local_increase: trace.max_local_increase(),
        max_measure_drift: trace.max_measure_drift(),
    };
    write_file(&args.out.join("converge.json"), &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    println!(
        "{geometry}: distance {:.6e} -> {:.6e} (ratio {:.3e}) after {} steps",
        summary.initial_distance, summary.final_distance, summary.reduction, args.iterations
    );
    Ok(ExitCode::SUCCESS)
}

fn chain(args: &Chain) -> anyhow::Result<ExitCode> {
    let (geometry, body) = args.body.load()?;
    if geometry == Geometry::Euclidean {
        bail!("the isoperimetric chain is defined for spherical and hyperbolic bodies");
    }
    let eps_quad = match args.eps_quad {
        Some(e) => e,
        None => star_experiments::calibrate(geometry, body.dim(), body.chart().grid().resolution())?.eps_quad,
    };
    let options = PettyOptions { eps_quad, equality_band: Tolerances::default().equality_band };
    let report = body.chain(options)?.context("no chain for this geometry")?;
    let summary = star_experiments::run::ChainSummary::from(&report);
    let text = serde_json::to_string_pretty(&summary)? + "\n";
    match &args.out {
        Some(dir) => write_file(&dir.join("chain.json"), &text)?,
        None => print!("{text}"),
    }
    let holds = report.holds();
    println!("{geometry} chain {}", if holds { "PASS" } else { "FAIL" });
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::GenCorpus(a) => gen_corpus(a),
        Command::Verify(a) => verify(a),
        Command::Converge(a) => converge(a),
        Command::IsoperimetricChain(a) => chain(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
