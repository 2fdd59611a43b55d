//! Empirical checks of the mutation operators' sampling distributions.

use std::fmt::Write as _;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use tsp_core::rng::{self, EXP_NEG_ONE};
use tsp_core::search::{mixed_mutation_logged, two_opt_mutation_logged};
use tsp_core::Tour;

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub name: String,
    pub empirical: f64,
    pub target: f64,
}

impl Estimate {
    pub fn deviation(&self) -> f64 {
        (self.empirical - self.target).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MutationStats {
    pub n: usize,
    pub samples: u64,
    pub estimates: Vec<Estimate>,
    /// Pearson statistic of the single-inversion pair counts.
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub single_inversion_samples: u64,
}

fn factorial(k: u64) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Draws `samples` 2-opt mutations and `samples` mixed mutations on the
/// identity tour of size `n`, all from one seeded stream.
pub fn mutation_stats(n: usize, samples: u64, seed: u64) -> MutationStats {
    assert!(n >= 3 && samples > 0);
    let mut rng = rng::seeded(seed);
    let x = Tour::identity(n);
    let pairs = n * (n - 1) / 2;
    let mut pair_counts = vec![0u64; pairs];
    let mut by_count = [0u64; 5];
    for _ in 0..samples {
        let (_, log) = two_opt_mutation_logged(&x, &mut rng);
        let c = log.moves.len();
        if c < by_count.len() {
            by_count[c] += 1;
        }
        if c == 1 {
            let (i, j) = log.moves[0];
            // rank of (i, j) in the lexicographic pair order
            let rank = (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
            pair_counts[rank] += 1;
        }
    }
    let mut inversion_branch = 0u64;
    for _ in 0..samples {
        let (_, log) = mixed_mutation_logged(&x, &mut rng);
        inversion_branch += (!log.jumps) as u64;
    }

    let frac = |c: u64| c as f64 / samples as f64;
    let mut estimates = vec![Estimate { name: "exactly_one_inversion".into(), empirical: frac(by_count[1]), target: EXP_NEG_ONE }];
    for k in 1..=2u64 {
        estimates.push(Estimate {
            name: format!("exactly_{}_inversions", 2 * k),
            empirical: frac(by_count[2 * k as usize]),
            target: EXP_NEG_ONE / factorial(2 * k - 1),
        });
    }
    estimates.push(Estimate { name: "mixed_inversion_branch".into(), empirical: frac(inversion_branch), target: 0.5 });

    let singles = by_count[1];
    let expected = singles as f64 / pairs as f64;
    let chi_square: f64 = pair_counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dof = pairs - 1;
    let p_value = ChiSquared::new(dof as f64).expect("positive dof").sf(chi_square);
    MutationStats { n, samples, estimates, chi_square, degrees_of_freedom: dof, p_value, single_inversion_samples: singles }
}

pub fn format_report(stats: &MutationStats) -> String {
    let mut out = String::from("metric,empirical,target,abs_deviation\n");
    for e in &stats.estimates {
        writeln!(out, "{},{},{},{}", e.name, e.empirical, e.target, e.deviation()).unwrap();
    }
    writeln!(
        out,
        "pair_uniformity_chi_square,{},{},dof={} p={} singles={}",
        stats.chi_square, stats.degrees_of_freedom, stats.degrees_of_freedom, stats.p_value, stats.single_inversion_samples
    )
    .unwrap();
    out
}
