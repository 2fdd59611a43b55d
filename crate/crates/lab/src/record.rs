//! One CSV row per run.

use std::io::Write;

use crate::error::LabError;

pub const COLUMNS: [&str; 19] = [
    "instance_id",
    "n",
    "k",
    "m",
    "epsilon",
    "gamma",
    "algorithm",
    "mu",
    "lambda",
    "mutation",
    "seed",
    "generations",
    "fitness_evals",
    "alpha_steps",
    "beta_steps",
    "reached_optimum",
    "reached_local_optimum",
    "final_length",
    "optimum_length",
];

/// RLS rows report `mu = lambda = 1` and mutation `inversion`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance_id: String,
    pub n: usize,
    pub k: usize,
    pub m: u32,
    pub epsilon: f64,
    pub gamma: f64,
    pub algorithm: String,
    pub mu: usize,
    pub lambda: usize,
    pub mutation: String,
    pub seed: u64,
    pub generations: u64,
    pub fitness_evals: u64,
    pub alpha_steps: u64,
    pub beta_steps: u64,
    pub reached_optimum: bool,
    pub reached_local_optimum: bool,
    pub final_length: f64,
    pub optimum_length: Option<f64>,
}

impl RunRecord {
    /// Floats use Rust's shortest round-trip formatting.
    pub fn fields(&self) -> Vec<String> {
        vec![
            self.instance_id.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.m.to_string(),
            self.epsilon.to_string(),
            self.gamma.to_string(),
            self.algorithm.clone(),
            self.mu.to_string(),
            self.lambda.to_string(),
            self.mutation.clone(),
            self.seed.to_string(),
            self.generations.to_string(),
            self.fitness_evals.to_string(),
            self.alpha_steps.to_string(),
            self.beta_steps.to_string(),
            self.reached_optimum.to_string(),
            self.reached_local_optimum.to_string(),
            self.final_length.to_string(),
            self.optimum_length.map(|v| v.to_string()).unwrap_or_default(),
        ]
    }

    /// `T_f = mu + lambda * T`.
    pub fn accounting_holds(&self) -> bool {
        self.fitness_evals == self.mu as u64 + self.lambda as u64 * self.generations
    }
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<(), LabError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(COLUMNS)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush().map_err(|e| LabError::io("<csv>", e))?;
    Ok(())
}

pub fn to_csv_string(records: &[RunRecord]) -> Result<String, LabError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Reads rows back from CSV text produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<RunRecord>, LabError> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let bad = |msg: &str| LabError::Parse { line: 0, msg: msg.to_string() };
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let get = |i: usize| row.get(i).ok_or_else(|| bad("short row"));
        macro_rules! num {
            ($i:expr) => {
                get($i)?.parse().map_err(|_| bad(COLUMNS[$i]))?
            };
        }
        out.push(RunRecord {
            instance_id: get(0)?.to_string(),
            n: num!(1),
            k: num!(2),
            m: num!(3),
            epsilon: num!(4),
            gamma: num!(5),
            algorithm: get(6)?.to_string(),
            mu: num!(7),
            lambda: num!(8),
            mutation: get(9)?.to_string(),
            seed: num!(10),
            generations: num!(11),
            fitness_evals: num!(12),
            alpha_steps: num!(13),
            beta_steps: num!(14),
            reached_optimum: num!(15),
            reached_local_optimum: num!(16),
            final_length: num!(17),
            optimum_length: match get(18)? {
                "" => None,
                v => Some(v.parse().map_err(|_| bad(COLUMNS[18]))?),
            },
        });
    }
    Ok(out)
}
