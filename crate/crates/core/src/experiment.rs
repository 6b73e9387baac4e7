//! Seeded Monte Carlo runs of a tester over a set of inputs.

use crate::db::{read_db, Database, OracleHandle};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::generate::{generate, GeneratorSpec};
use crate::rational::{self, Rational};
use crate::tester::{
    derive_params, epsilon_tester, epsilon_tester_exact, trivial_tester_bip_or_odd, Mode, PropertySpec, TesterParams,
    Verdict,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    Generated(GeneratorSpec),
    File(PathBuf),
}

impl InputSpec {
    pub fn load(&self) -> Result<Database> {
        match self {
            InputSpec::Generated(g) => generate(g),
            InputSpec::File(p) => read_db(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TesterKind {
    /// Sampling tester.
    #[default]
    Epsilon,
    /// Sampling tester with the exact type distribution instead of a sample.
    Injected,
    /// Size-threshold tester for "bipartite or odd order".
    BipOrOdd,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub property: PropertySpec,
    pub epsilon: Rational,
    pub mode: Mode,
    pub tester: TesterKind,
    pub trials: u32,
    pub inputs: Vec<InputSpec>,
    pub seed: u64,
    /// Record wall-clock time per trial. Off by default so that reports are
    /// reproducible byte for byte.
    pub timing: bool,
    pub exec: Exec,
}

impl ExperimentConfig {
    pub fn new(property: PropertySpec, epsilon: Rational, inputs: Vec<InputSpec>) -> Self {
        ExperimentConfig {
            property,
            epsilon,
            mode: Mode::default(),
            tester: TesterKind::default(),
            trials: 1,
            inputs,
            seed: 0,
            timing: false,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Row {
    pub trial: u64,
    pub seed: u64,
    pub n: u32,
    pub branch: String,
    pub verdict: String,
    pub queries: u64,
    pub l1_min: Option<String>,
    pub runtime_us: u64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Summary {
    pub n: u32,
    pub trials: u64,
    pub accepted: u64,
    pub accept_rate: f64,
    pub max_queries: u64,
    pub total_runtime_us: u64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Report {
    pub property: String,
    pub epsilon: String,
    pub mode: Mode,
    pub tester: TesterKind,
    pub seed: u64,
    pub summaries: Vec<Summary>,
    pub rows: Vec<Row>,
}

pub const CSV_HEADER: &str = "trial,seed,n,branch,verdict,queries,l1_min,runtime_us";

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.trial,
                r.seed,
                r.n,
                r.branch,
                r.verdict,
                r.queries,
                r.l1_min.as_deref().unwrap_or(""),
                r.runtime_us
            );
        }
        out
    }
}

/// Derivation of `master + index`, so every trial can be replayed alone.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    master.wrapping_add(index)
}

fn run_one(
    config: &ExperimentConfig,
    db: &Database,
    params: Option<&TesterParams>,
    seed: u64,
) -> Result<Verdict> {
    let n = db.domain_size();
    match (config.tester, params) {
        (TesterKind::BipOrOdd, _) => trivial_tester_bip_or_odd(&mut OracleHandle::new(db), n, &config.epsilon),
        (TesterKind::Epsilon, Some(p)) => epsilon_tester(&mut OracleHandle::new(db), n, p, &config.property, seed),
        (TesterKind::Injected, Some(p)) => epsilon_tester_exact(db, p, &config.property, Exec::Sequential),
        (_, None) => unreachable!("parameters are derived for sampling testers"),
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    if config.trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (input_index, input) in config.inputs.iter().enumerate() {
        let db = input.load()?;
        let params = match config.tester {
            TesterKind::BipOrOdd => None,
            _ => Some(derive_params(&config.epsilon, db.degree_bound(), &config.property, config.mode)?),
        };
        let first = input_index as u64 * config.trials as u64;
        let results = config.exec.map_indices(config.trials as usize, |t| {
            let trial = first + t as u64;
            let seed = trial_seed(config.seed, trial);
            let start = Instant::now();
            let verdict = run_one(config, &db, params.as_ref(), seed)?;
            let runtime_us = if config.timing { start.elapsed().as_micros() as u64 } else { 0 };
            Ok(Row {
                trial,
                seed,
                n: db.domain_size(),
                branch: verdict.branch.to_string(),
                verdict: if verdict.accept { "accept" } else { "reject" }.to_string(),
                queries: verdict.queries,
                l1_min: verdict.l1_min().map(rational::display),
                runtime_us,
            })
        });
        let batch = results.into_iter().collect::<Result<Vec<Row>>>()?;
        let accepted = batch.iter().filter(|r| r.verdict == "accept").count() as u64;
        summaries.push(Summary {
            n: db.domain_size(),
            trials: batch.len() as u64,
            accepted,
            accept_rate: accepted as f64 / batch.len() as f64,
            max_queries: batch.iter().map(|r| r.queries).max().unwrap_or(0),
            total_runtime_us: batch.iter().map(|r| r.runtime_us).sum(),
        });
        rows.extend(batch);
    }
    Ok(Report {
        property: config.property.name.clone(),
        epsilon: rational::display(&config.epsilon),
        mode: config.mode,
        tester: config.tester,
        seed: config.seed,
        summaries,
        rows,
    })
}
