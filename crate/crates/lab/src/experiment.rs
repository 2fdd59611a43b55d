//! Batch runs over generated instances.
//!
//! Jobs (one per cell and seed) run in parallel; every job generates its
//! instance, computes the optimum with the strongest feasible oracle and then
//! runs each configured mutation on it with the same seed. Rows come back in
//! cell, seed, mutation order regardless of scheduling.

use std::fmt::Write as _;

use rayon::prelude::*;
use tsp_core::instance::{generate_convex, generate_grid, generate_with_inner};
use tsp_core::search::{run_ea, run_rls};
use tsp_core::{oracle, EaConfig, Instance, MutationKind, MutationSpec, RlsConfig, Trajectory};

use crate::config::{Algorithm, ExperimentConfig, Family};
use crate::error::LabError;
use crate::record::RunRecord;

/// What to run on one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunSpec {
    Rls { budget: u64 },
    Ea { mu: usize, lambda: usize, mutation: MutationKind, budget: u64 },
}

impl RunSpec {
    pub fn execute(&self, inst: &Instance, seed: u64, optimum: Option<f64>) -> Trajectory {
        match *self {
            RunSpec::Rls { budget } => run_rls(inst, &RlsConfig { budget, seed, optimum }),
            RunSpec::Ea { mu, lambda, mutation, budget } => {
                let cfg = EaConfig { mu, lambda, mutation: MutationSpec::new(mutation), max_generations: budget, seed };
                run_ea(inst, &cfg, optimum)
            }
        }
    }
}

/// Instance-level columns, computed once per instance.
#[derive(Debug, Clone)]
pub struct InstanceSummary {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub m: u32,
    pub epsilon: f64,
    pub gamma: f64,
}

impl InstanceSummary {
    pub fn of(id: impl Into<String>, inst: &Instance) -> Self {
        let metrics = inst.metrics();
        InstanceSummary {
            id: id.into(),
            n: inst.n(),
            k: inst.inner_count(),
            m: inst.grid_size(),
            epsilon: metrics.epsilon,
            gamma: metrics.gamma,
        }
    }
}

pub fn record(info: &InstanceSummary, spec: &RunSpec, seed: u64, optimum: Option<f64>, traj: &Trajectory) -> RunRecord {
    let (algorithm, mu, lambda, mutation) = match *spec {
        RunSpec::Rls { .. } => ("rls", 1, 1, "inversion"),
        RunSpec::Ea { mu, lambda, mutation, .. } => ("ea", mu, lambda, mutation.name()),
    };
    RunRecord {
        instance_id: info.id.clone(),
        n: info.n,
        k: info.k,
        m: info.m,
        epsilon: info.epsilon,
        gamma: info.gamma,
        algorithm: algorithm.to_string(),
        mu,
        lambda,
        mutation: mutation.to_string(),
        seed,
        generations: traj.generations,
        fitness_evals: traj.fitness_evals,
        alpha_steps: traj.alpha_steps,
        beta_steps: traj.beta_steps,
        reached_optimum: traj.reached_optimum,
        reached_local_optimum: traj.reached_local_optimum,
        final_length: traj.final_length,
        optimum_length: optimum,
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    size: usize,
    inner: usize,
}

fn cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    match cfg.family {
        Family::Inner => cfg
            .hull_sizes
            .iter()
            .flat_map(|&h| cfg.inner_counts.iter().map(move |&k| Cell { size: h, inner: k }))
            .collect(),
        _ => cfg.sizes.iter().map(|&n| Cell { size: n, inner: 0 }).collect(),
    }
}

fn generate(cfg: &ExperimentConfig, cell: Cell, seed: u64) -> Result<(String, Instance), LabError> {
    let m = cfg.m;
    Ok(match cfg.family {
        Family::Grid => (format!("grid-n{}-m{m}-s{seed}", cell.size), generate_grid(cell.size, m, seed)?),
        Family::Convex => (format!("convex-n{}-m{m}-s{seed}", cell.size), generate_convex(cell.size, m, seed)?),
        Family::Inner => (
            format!("inner-h{}-k{}-m{m}-s{seed}", cell.size, cell.inner),
            generate_with_inner(cell.size, cell.inner, m, seed)?,
        ),
    })
}

fn specs(cfg: &ExperimentConfig) -> Vec<RunSpec> {
    match cfg.algorithm {
        Algorithm::Rls => vec![RunSpec::Rls { budget: cfg.budget }],
        Algorithm::Ea => cfg
            .mutations
            .iter()
            .map(|&mutation| RunSpec::Ea { mu: cfg.mu, lambda: cfg.lambda, mutation, budget: cfg.budget })
            .collect(),
    }
}

/// Runs every (cell, seed, mutation) combination.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>, LabError> {
    let jobs: Vec<(Cell, u64)> = cells(cfg)
        .into_iter()
        .flat_map(|c| (0..cfg.runs).map(move |i| (c, cfg.base_seed + i)))
        .collect();
    let specs = specs(cfg);
    let per_job: Vec<Result<Vec<RunRecord>, LabError>> = jobs
        .par_iter()
        .map(|&(cell, seed)| {
            let (id, inst) = generate(cfg, cell, seed)?;
            let info = InstanceSummary::of(id, &inst);
            let optimum = oracle::strongest_optimum(&inst).map(|r| r.optimum_value);
            Ok(specs
                .iter()
                .map(|spec| record(&info, spec, seed, optimum, &spec.execute(&inst, seed, optimum)))
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for job in per_job {
        rows.extend(job?);
    }
    Ok(rows)
}

/// Median of a non-empty sample; even lengths average the two middle values.
pub fn median(values: &[u64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_unstable();
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid] as f64
    } else {
        (v[mid - 1] as f64 + v[mid] as f64) / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub k: usize,
    pub algorithm: String,
    pub mutation: String,
    pub runs: usize,
    pub reached: usize,
    pub median_generations: f64,
    pub mean_generations: f64,
    pub median_alpha: f64,
    pub median_beta: f64,
}

/// Per (n, k, algorithm, mutation) aggregates, in first-appearance order.
pub fn summarize(rows: &[RunRecord]) -> Vec<CellSummary> {
    let mut keys: Vec<(usize, usize, String, String)> = Vec::new();
    for r in rows {
        let key = (r.n, r.k, r.algorithm.clone(), r.mutation.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(n, k, algorithm, mutation)| {
            let group: Vec<&RunRecord> =
                rows.iter().filter(|r| r.n == n && r.k == k && r.algorithm == algorithm && r.mutation == mutation).collect();
            let gens: Vec<u64> = group.iter().map(|r| r.generations).collect();
            let alpha: Vec<u64> = group.iter().map(|r| r.alpha_steps).collect();
            let beta: Vec<u64> = group.iter().map(|r| r.beta_steps).collect();
            CellSummary {
                n,
                k,
                runs: group.len(),
                reached: group.iter().filter(|r| r.reached_optimum).count(),
                median_generations: median(&gens),
                mean_generations: gens.iter().sum::<u64>() as f64 / gens.len() as f64,
                median_alpha: median(&alpha),
                median_beta: median(&beta),
                algorithm,
                mutation,
            }
        })
        .collect()
}

pub fn format_summary(summary: &[CellSummary]) -> String {
    let mut out = String::from("n,k,algorithm,mutation,runs,reached_optimum,median_generations,mean_generations,median_alpha_steps,median_beta_steps\n");
    for s in summary {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            s.n, s.k, s.algorithm, s.mutation, s.runs, s.reached, s.median_generations, s.mean_generations, s.median_alpha, s.median_beta
        )
        .unwrap();
    }
    out
}
