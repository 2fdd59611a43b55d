//! Experiment configuration: flat `key = value` lines, `#` starts a comment.
//!
//! ```text
//! family = convex          # grid | convex | inner
//! n = 8, 16, 32            # grid/convex sizes
//! h = 9                    # inner: hull sizes
//! k = 3                    # inner: inner-point counts
//! m = 1024
//! algorithm = rls          # rls | ea
//! mu = 1
//! lambda = 1
//! mutation = two_opt, mixed
//! budget = 10000000
//! runs = 20
//! base_seed = 1
//! out = convex_rls.csv
//! ```
//!
//! Run `i` (0-based) of every cell uses seed `base_seed + i`, both for the
//! generated instance and for the search.

use std::collections::BTreeMap;
use std::path::PathBuf;

use tsp_core::MutationKind;

use crate::error::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Grid,
    Convex,
    Inner,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Convex => "convex",
            Family::Inner => "inner",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Rls,
    Ea,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Rls => "rls",
            Algorithm::Ea => "ea",
        }
    }
}

pub fn parse_mutation(s: &str) -> Option<MutationKind> {
    match s {
        "two_opt" | "two-opt" => Some(MutationKind::TwoOpt),
        "mixed" => Some(MutationKind::Mixed),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    /// Point counts for grid/convex families.
    pub sizes: Vec<usize>,
    /// Hull sizes and inner counts for the inner family.
    pub hull_sizes: Vec<usize>,
    pub inner_counts: Vec<usize>,
    pub m: u32,
    pub algorithm: Algorithm,
    pub mu: usize,
    pub lambda: usize,
    pub mutations: Vec<MutationKind>,
    pub budget: u64,
    pub runs: u64,
    pub base_seed: u64,
    pub out: Option<PathBuf>,
}

const KEYS: &[&str] = &["family", "n", "h", "k", "m", "algorithm", "mu", "lambda", "mutation", "budget", "runs", "base_seed", "out"];

struct Entry {
    line: usize,
    value: String,
}

fn err(line: usize, msg: impl Into<String>) -> LabError {
    LabError::Config { line, msg: msg.into() }
}

fn scalar<T: std::str::FromStr>(e: &Entry, key: &str) -> Result<T, LabError> {
    e.value.parse().map_err(|_| err(e.line, format!("{key}: cannot parse {:?}", e.value)))
}

fn list<T: std::str::FromStr>(e: &Entry, key: &str) -> Result<Vec<T>, LabError> {
    e.value
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| err(e.line, format!("{key}: cannot parse {:?}", t.trim()))))
        .collect()
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, LabError> {
        let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(err(line, format!("unknown key {key:?}")));
            }
            if entries.contains_key(key) {
                return Err(err(line, format!("duplicate key {key:?}")));
            }
            entries.insert(key.to_string(), Entry { line, value: value.trim().to_string() });
        }
        let last_line = text.lines().count().max(1);
        let need = |key: &str| entries.get(key).ok_or_else(|| err(last_line, format!("missing key {key:?}")));

        let fam = need("family")?;
        let family = match fam.value.as_str() {
            "grid" => Family::Grid,
            "convex" => Family::Convex,
            "inner" => Family::Inner,
            other => return Err(err(fam.line, format!("family must be grid, convex or inner, got {other:?}"))),
        };
        let alg = need("algorithm")?;
        let algorithm = match alg.value.as_str() {
            "rls" => Algorithm::Rls,
            "ea" => Algorithm::Ea,
            other => return Err(err(alg.line, format!("algorithm must be rls or ea, got {other:?}"))),
        };
        let (sizes, hull_sizes, inner_counts) = match family {
            Family::Inner => (Vec::new(), list(need("h")?, "h")?, list(need("k")?, "k")?),
            _ => (list(need("n")?, "n")?, Vec::new(), Vec::new()),
        };
        let mutations = match entries.get("mutation") {
            Some(e) => e
                .value
                .split(',')
                .map(|t| parse_mutation(t.trim()).ok_or_else(|| err(e.line, format!("unknown mutation {:?}", t.trim()))))
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![MutationKind::TwoOpt],
        };
        let opt = |key: &str, default: u64| -> Result<u64, LabError> {
            entries.get(key).map_or(Ok(default), |e| scalar(e, key))
        };
        let cfg = ExperimentConfig {
            family,
            sizes,
            hull_sizes,
            inner_counts,
            m: scalar(need("m")?, "m")?,
            algorithm,
            mu: opt("mu", 1)? as usize,
            lambda: opt("lambda", 1)? as usize,
            mutations,
            budget: scalar(need("budget")?, "budget")?,
            runs: opt("runs", 1)?,
            base_seed: opt("base_seed", 0)?,
            out: entries.get("out").map(|e| PathBuf::from(&e.value)),
        };
        if cfg.runs == 0 {
            return Err(err(entries["runs"].line, "runs must be at least 1"));
        }
        if cfg.mu == 0 || cfg.lambda == 0 {
            return Err(err(last_line, "mu and lambda must be at least 1"));
        }
        if cfg.budget == 0 {
            return Err(err(entries["budget"].line, "budget must be at least 1"));
        }
        Ok(cfg)
    }
}
