//! Subcommands: `generate`, `solve`, `oracle`, `experiment`, `mutation-stats`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tsp_core::instance::{generate_convex, generate_grid, generate_with_inner};
use tsp_core::{oracle, Instance, MutationKind};

use crate::config::ExperimentConfig;
use crate::error::LabError;
use crate::experiment::{self, InstanceSummary, RunSpec};
use crate::format;
use crate::record;
use crate::stats;

#[derive(Debug, Parser)]
#[command(name = "tsp-lab", version, about = "Randomized search heuristics for the Euclidean TSP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Generate(GenerateArgs),
    /// Run RLS or the (mu+lambda) EA on an instance; prints one CSV row.
    Solve(SolveArgs),
    /// Compute an exact optimum.
    Oracle(OracleArgs),
    /// Run a batch experiment described by a config file.
    Experiment(ExperimentArgs),
    /// Check the mutation operators' sampling distributions.
    MutationStats(MutationStatsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Grid,
    Convex,
    Inner,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Number of points (grid, convex).
    #[arg(long)]
    pub n: Option<usize>,
    /// Hull points (inner).
    #[arg(long)]
    pub h: Option<usize>,
    /// Inner points (inner).
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; the instance goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgorithmArg {
    Rls,
    Ea,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MutationArg {
    #[value(name = "two_opt", alias = "two-opt")]
    TwoOpt,
    Mixed,
}

impl From<MutationArg> for MutationKind {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::TwoOpt => MutationKind::TwoOpt,
            MutationArg::Mixed => MutationKind::Mixed,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub algorithm: AlgorithmArg,
    /// Step (RLS) or generation (EA) budget.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub mu: usize,
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
    #[arg(long, value_enum, default_value = "two_opt")]
    pub mutation: MutationArg,
    /// Skip the exact oracle; the run is then budget-bound.
    #[arg(long)]
    pub no_oracle: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Brute,
    #[value(name = "held_karp", alias = "held-karp")]
    HeldKarp,
    #[value(name = "hull_order", alias = "hull-order")]
    HullOrder,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Writes the optimal tour here; otherwise it is printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the config's `out`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MutationStatsArgs {
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn instance_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into())
}

fn io_out(e: std::io::Error) -> LabError {
    LabError::io("<stdout>", e)
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), LabError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| LabError::Usage(format!("--{flag} is required for this family")));
    let inst: Instance = match args.family {
        FamilyArg::Grid => generate_grid(need(args.n, "n")?, args.m, args.seed)?,
        FamilyArg::Convex => generate_convex(need(args.n, "n")?, args.m, args.seed)?,
        FamilyArg::Inner => generate_with_inner(need(args.h, "h")?, args.k, args.m, args.seed)?,
    };
    let metrics = inst.metrics();
    let report = format!(
        "n={} k={} m={} epsilon={} gamma={}\n",
        inst.n(),
        inst.inner_count(),
        inst.grid_size(),
        metrics.epsilon,
        metrics.gamma
    );
    match &args.out {
        Some(path) => {
            format::write_instance(&inst, path)?;
            out.write_all(report.as_bytes()).map_err(io_out)?;
        }
        None => {
            out.write_all(format::format_instance(&inst).as_bytes()).map_err(io_out)?;
            eprint!("{report}");
        }
    }
    Ok(())
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), LabError> {
    let inst = format::read_instance(&args.instance)?;
    if args.mu == 0 || args.lambda == 0 {
        return Err(LabError::Usage("--mu and --lambda must be positive".into()));
    }
    let spec = match args.algorithm {
        AlgorithmArg::Rls => RunSpec::Rls { budget: args.budget },
        AlgorithmArg::Ea => RunSpec::Ea { mu: args.mu, lambda: args.lambda, mutation: args.mutation.into(), budget: args.budget },
    };
    let optimum = if args.no_oracle { None } else { oracle::strongest_optimum(&inst).map(|r| r.optimum_value) };
    let traj = spec.execute(&inst, args.seed, optimum);
    let info = InstanceSummary::of(instance_id(&args.instance), &inst);
    let row = experiment::record(&info, &spec, args.seed, optimum, &traj);
    record::write_csv(out, &[row])
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<(), LabError> {
    let inst = format::read_instance(&args.instance)?;
    let result = match args.method {
        MethodArg::Brute => oracle::brute_force_optimum(&inst)?,
        MethodArg::HeldKarp => oracle::held_karp_optimum(&inst)?,
        MethodArg::HullOrder => oracle::hull_order_optimum(&inst)?,
    };
    writeln!(out, "{}", result.optimum_value).map_err(io_out)?;
    match &args.out {
        Some(path) => format::write_tour(&result.optimum_tour, path)?,
        None => out.write_all(format::format_tour(&result.optimum_tour).as_bytes()).map_err(io_out)?,
    }
    Ok(())
}

pub fn cmd_experiment(args: &ExperimentArgs, out: &mut dyn Write) -> Result<(), LabError> {
    let text = fs::read_to_string(&args.config).map_err(|e| LabError::io(&args.config, e))?;
    let cfg = ExperimentConfig::parse(&text)?;
    let rows = experiment::run_experiment(&cfg)?;
    let csv = record::to_csv_string(&rows)?;
    match args.out.as_ref().or(cfg.out.as_ref()) {
        Some(path) => fs::write(path, &csv).map_err(|e| LabError::io(path, e))?,
        None => {
            out.write_all(csv.as_bytes()).map_err(io_out)?;
            writeln!(out).map_err(io_out)?;
        }
    }
    writeln!(out, "# summary").map_err(io_out)?;
    out.write_all(experiment::format_summary(&experiment::summarize(&rows)).as_bytes()).map_err(io_out)
}

pub fn cmd_mutation_stats(args: &MutationStatsArgs, out: &mut dyn Write) -> Result<(), LabError> {
    if args.n < 3 {
        return Err(LabError::Usage("--n must be at least 3".into()));
    }
    if args.samples < 100_000 {
        return Err(LabError::Usage("--samples must be at least 100000".into()));
    }
    let s = stats::mutation_stats(args.n, args.samples, args.seed);
    out.write_all(stats::format_report(&s).as_bytes()).map_err(io_out)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), LabError> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Experiment(a) => cmd_experiment(a, out),
        Command::MutationStats(a) => cmd_mutation_stats(a, out),
    }
}
