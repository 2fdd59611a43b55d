//! Randomized search heuristics over tours.
//!
//! * [`two_opt_mutation`]: `s + 1` uniform inversions, `s ~ Poisson(1)`.
//! * [`mixed_mutation`]: with probability 1/2 the same, otherwise `s + 1`
//!   uniform jumps.
//! * [`run_rls`]: single-inversion hill climber accepting `f(y) <= f(x)`.
//! * [`run_ea`]: the (μ+λ) EA with plus-selection.
//!
//! Runs record a [`Trajectory`]: the generation counter `T`, the fitness
//! evaluation count `T_f`, and how many generations the best-so-far
//! individual spent in a state with crossings (`alpha_steps`) versus a
//! crossing-free but not optimal state (`beta_steps`). A run is only
//! declared optimal against an externally supplied optimum value.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::instance::Instance;
use crate::rng::{self, SearchRng};
use crate::tour::{self, Tour};

/// Relative slack when matching a tour length against a supplied optimum.
pub const OPTIMUM_REL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationKind {
    TwoOpt,
    Mixed,
}

impl MutationKind {
    pub fn name(self) -> &'static str {
        match self {
            MutationKind::TwoOpt => "two_opt",
            MutationKind::Mixed => "mixed",
        }
    }
}

/// Mutation operator choice. The Poisson mean is fixed at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationSpec {
    pub kind: MutationKind,
    poisson_mean: f64,
}

impl MutationSpec {
    pub const fn new(kind: MutationKind) -> Self {
        MutationSpec { kind, poisson_mean: 1.0 }
    }

    pub fn poisson_mean(&self) -> f64 {
        self.poisson_mean
    }
}

/// Which elementary move a mutation applied, and the positions it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationLog {
    pub jumps: bool,
    pub moves: Vec<(usize, usize)>,
}

/// `s + 1` inversions at uniformly drawn pairs `1 <= i < j <= n`.
pub fn two_opt_mutation<R: RngCore + ?Sized>(x: &Tour, rng: &mut R) -> Tour {
    two_opt_mutation_logged(x, rng).0
}

pub fn two_opt_mutation_logged<R: RngCore + ?Sized>(x: &Tour, rng: &mut R) -> (Tour, MutationLog) {
    let mut y = x.clone();
    let count = rng::poisson_plus_one(rng);
    let mut moves = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let (i, j) = rng::unordered_pair(rng, y.len());
        y.invert(i, j).expect("sampled pair is in range");
        moves.push((i, j));
    }
    (y, MutationLog { jumps: false, moves })
}

/// With probability 1/2 [`two_opt_mutation`], otherwise `s + 1` jumps at
/// uniformly drawn ordered pairs `i != j`.
pub fn mixed_mutation<R: RngCore + ?Sized>(x: &Tour, rng: &mut R) -> Tour {
    mixed_mutation_logged(x, rng).0
}

pub fn mixed_mutation_logged<R: RngCore + ?Sized>(x: &Tour, rng: &mut R) -> (Tour, MutationLog) {
    if rng::unit(rng) < 0.5 {
        return two_opt_mutation_logged(x, rng);
    }
    let mut y = x.clone();
    let count = rng::poisson_plus_one(rng);
    let mut moves = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let (i, j) = rng::ordered_pair(rng, y.len());
        y.jump(i, j).expect("sampled pair is in range");
        moves.push((i, j));
    }
    (y, MutationLog { jumps: true, moves })
}

pub fn mutate<R: RngCore + ?Sized>(spec: &MutationSpec, x: &Tour, rng: &mut R) -> Tour {
    match spec.kind {
        MutationKind::TwoOpt => two_opt_mutation(x, rng),
        MutationKind::Mixed => mixed_mutation(x, rng),
    }
}

/// Partition of the best-so-far states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    /// The cycle has at least one crossing.
    Alpha,
    /// Crossing-free, not optimal.
    Beta,
    Optimal,
}

pub fn matches_optimum(length: f64, optimum: f64) -> bool {
    (length - optimum).abs() <= OPTIMUM_REL_SLACK * optimum.abs()
}

pub fn classify_state(inst: &Instance, tour: &Tour, optimum: Option<f64>) -> StateClass {
    classify_with_length(inst, tour, tour::tour_length(inst, tour), optimum)
}

fn classify_with_length(inst: &Instance, tour: &Tour, length: f64, optimum: Option<f64>) -> StateClass {
    if optimum.is_some_and(|opt| matches_optimum(length, opt)) {
        StateClass::Optimal
    } else if tour::is_intersection_free(inst, tour) {
        StateClass::Beta
    } else {
        StateClass::Alpha
    }
}

/// Per-run record.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Generations (RLS: steps) executed, `T` when the optimum was hit.
    pub generations: u64,
    pub reached_optimum: bool,
    /// RLS only: the final tour has no strictly improving inversion.
    /// Always `false` for EA runs.
    pub reached_local_optimum: bool,
    pub fitness_evals: u64,
    pub alpha_steps: u64,
    pub beta_steps: u64,
    /// `(generation, best fitness)` at the start and at every strict
    /// improvement of the best-so-far fitness.
    pub best_fitness_series: Vec<(u64, f64)>,
    pub final_tour: Tour,
    pub final_length: f64,
}

/// Tracks the α/β accounting for the best-so-far individual.
struct Ledger {
    class: StateClass,
    alpha: u64,
    beta: u64,
}

impl Ledger {
    fn count(&mut self) {
        match self.class {
            StateClass::Alpha => self.alpha += 1,
            StateClass::Beta => self.beta += 1,
            StateClass::Optimal => {}
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RlsConfig {
    /// Maximum number of steps.
    pub budget: u64,
    pub seed: u64,
    /// Target length; the run stops when it is reached.
    pub optimum: Option<f64>,
}

/// Randomized local search with one uniform inversion per step.
///
/// Starts from a uniform random permutation. A step draws `1 <= i < j <= n`
/// and accepts `inv(i, j)` iff its exact two-edge exchange delta is `<= 0`
/// (ties accepted). Stops at the optimum (if supplied), at a certified 2-opt
/// local optimum, or when the budget is spent. Certification scans the full
/// neighborhood every `n²` accepted steps and once at the end.
pub fn run_rls(inst: &Instance, cfg: &RlsConfig) -> Trajectory {
    let n = inst.n();
    let mut rng = rng::seeded(cfg.seed);
    let mut x = Tour::from_perm_unchecked(rng::permutation(&mut rng, n));
    let mut fx = tour::tour_length(inst, &x);
    let mut ledger = Ledger { class: classify_with_length(inst, &x, fx, cfg.optimum), alpha: 0, beta: 0 };
    let mut series = alloc::vec![(0u64, fx)];
    let scan_every = (n * n) as u64;
    let mut accepted_since_scan = 0u64;
    let mut certified = false;
    let mut steps = 0u64;

    while steps < cfg.budget && ledger.class != StateClass::Optimal {
        ledger.count();
        steps += 1;
        let (i, j) = rng::unordered_pair(&mut rng, n);
        let delta = tour::inversion_delta(inst, &x, i, j);
        if delta <= 0.0 {
            x.invert(i, j).expect("sampled pair is in range");
            accepted_since_scan += 1;
            if !tour::inversion_is_noop(n, i, j) {
                fx = tour::tour_length(inst, &x);
                ledger.class = classify_with_length(inst, &x, fx, cfg.optimum);
                if delta < 0.0 {
                    series.push((steps, fx));
                }
            }
            if accepted_since_scan >= scan_every {
                accepted_since_scan = 0;
                if tour::is_two_opt_local_optimum(inst, &x) {
                    certified = true;
                    break;
                }
            }
        }
    }

    let reached_optimum = ledger.class == StateClass::Optimal;
    let reached_local_optimum = certified || reached_optimum || tour::is_two_opt_local_optimum(inst, &x);
    Trajectory {
        generations: steps,
        reached_optimum,
        reached_local_optimum,
        fitness_evals: 1 + steps,
        alpha_steps: ledger.alpha,
        beta_steps: ledger.beta,
        best_fitness_series: series,
        final_length: tour::tour_length(inst, &x),
        final_tour: x,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EaConfig {
    pub mu: usize,
    pub lambda: usize,
    pub mutation: MutationSpec,
    pub max_generations: u64,
    pub seed: u64,
}

struct Member {
    tour: Tour,
    fitness: f64,
    born: u64,
}

/// The (μ+λ) EA.
///
/// Each of the λ offspring picks its parent uniformly (with replacement)
/// from the current μ, then mutates it. Selection keeps the μ fittest of
/// parents and offspring; ties prefer offspring, then the earlier-born
/// individual. Stops when the best individual matches `optimum` or after
/// `max_generations`.
pub fn run_ea(inst: &Instance, cfg: &EaConfig, optimum: Option<f64>) -> Trajectory {
    assert!(cfg.mu >= 1 && cfg.lambda >= 1, "mu and lambda must be positive");
    let n = inst.n();
    let mut rng: SearchRng = rng::seeded(cfg.seed);
    let mut born = 0u64;
    let mut pop: Vec<Member> = (0..cfg.mu)
        .map(|_| {
            let tour = Tour::from_perm_unchecked(rng::permutation(&mut rng, n));
            let fitness = tour::tour_length(inst, &tour);
            born += 1;
            Member { tour, fitness, born: born - 1 }
        })
        .collect();
    sort_population(&mut pop, usize::MAX);

    let mut best_tour = pop[0].tour.clone();
    let mut best_fit = pop[0].fitness;
    let mut ledger = Ledger { class: classify_with_length(inst, &best_tour, best_fit, optimum), alpha: 0, beta: 0 };
    let mut series = alloc::vec![(0u64, best_fit)];
    let mut generation = 0u64;

    while generation < cfg.max_generations && ledger.class != StateClass::Optimal {
        ledger.count();
        generation += 1;
        let mut offspring: Vec<Member> = Vec::with_capacity(cfg.lambda);
        for _ in 0..cfg.lambda {
            let parent = &pop[rng::below(&mut rng, cfg.mu as u64) as usize];
            let tour = mutate(&cfg.mutation, &parent.tour, &mut rng);
            let fitness = tour::tour_length(inst, &tour);
            offspring.push(Member { tour, fitness, born });
            born += 1;
        }
        let offspring_from = pop.len();
        pop.extend(offspring);
        select(&mut pop, offspring_from, cfg.mu);

        let head = &pop[0];
        if head.fitness != best_fit || head.tour != best_tour {
            if head.fitness < best_fit {
                series.push((generation, head.fitness));
            }
            best_fit = head.fitness;
            best_tour = head.tour.clone();
            ledger.class = classify_with_length(inst, &best_tour, best_fit, optimum);
        }
    }

    Trajectory {
        generations: generation,
        reached_optimum: ledger.class == StateClass::Optimal,
        reached_local_optimum: false,
        fitness_evals: cfg.mu as u64 + cfg.lambda as u64 * generation,
        alpha_steps: ledger.alpha,
        beta_steps: ledger.beta,
        best_fitness_series: series,
        final_length: best_fit,
        final_tour: best_tour,
    }
}

fn sort_population(pop: &mut Vec<Member>, offspring_from: usize) {
    let mut tagged: Vec<(bool, Member)> = pop.drain(..).enumerate().map(|(i, m)| (i < offspring_from, m)).collect();
    tagged.sort_by(|(pa, a), (pb, b)| a.fitness.total_cmp(&b.fitness).then(pa.cmp(pb)).then(a.born.cmp(&b.born)));
    pop.extend(tagged.into_iter().map(|(_, m)| m));
}

/// Keeps the `mu` fittest; members at index `>= offspring_from` are offspring.
fn select(pop: &mut Vec<Member>, offspring_from: usize, mu: usize) {
    sort_population(pop, offspring_from);
    pop.truncate(mu);
}
