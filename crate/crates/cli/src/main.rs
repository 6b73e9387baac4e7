//! Command-line front end: run testers and experiments, compute exact
//! distances and histograms, derive parameters and generate fixtures.
//!
//! Exit status: 0 accept (or success), 1 reject, 2 error.

use bdrd_core::db::{serialize_db, Database, OracleHandle};
use bdrd_core::distances::{close_bdrd, close_pm, dist_bdrd, dist_pm, DistanceModel};
use bdrd_core::exec::Exec;
use bdrd_core::experiment::{run_experiment, ExperimentConfig, InputSpec, TesterKind, CSV_HEADER};
use bdrd_core::generate::{generate, Family, GeneratorSpec};
use bdrd_core::neighborhoods::{histogram_with, TypeRegistry};
use bdrd_core::rational::{self, Rational};
use bdrd_core::tester::{
    derive_params, epsilon_tester, epsilon_tester_exact, trivial_tester_bip_or_odd, Mode, PropertySpec, TesterParams,
    Verdict,
};
use bdrd_core::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bdrd", version, about = "Property testing for bounded-degree relational databases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(alias = "derived")]
    Paper,
    Calibrated,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Paper => Mode::Derived,
            ModeArg::Calibrated => Mode::Calibrated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Bdrd,
    Pm,
}

#[derive(Clone, Copy, ValueEnum)]
enum TesterArg {
    Epsilon,
    Injected,
    BipOrOdd,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "calibrated")]
    mode: ModeArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tester once on a database file or generated fixture.
    Test {
        /// Database file, or a generator such as `cycle:1000`.
        input: String,
        /// Built-in property name or property file.
        #[arg(long)]
        property: String,
        #[arg(long, default_value = "1/20", value_parser = parse_rational)]
        epsilon: Rational,
        /// Which tester to run.
        #[arg(long, value_enum, default_value = "epsilon")]
        tester: TesterArg,
        #[command(flatten)]
        common: Common,
    },
    /// Exact distance between two tiny databases.
    Distance {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "pm")]
        model: ModelArg,
        /// Also report whether the pair is ε-close.
        #[arg(long, value_parser = parse_rational)]
        epsilon: Option<Rational>,
        #[command(flatten)]
        common: Common,
    },
    /// r-type histogram of a database.
    Histogram {
        input: String,
        #[arg(long, default_value_t = 1)]
        radius: u32,
        /// Registry to start from; new types are appended.
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Write the final registry here.
        #[arg(long)]
        write_registry: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Tester parameters for a property.
    Params {
        #[arg(long)]
        property: String,
        #[arg(long, default_value = "1/20", value_parser = parse_rational)]
        epsilon: Rational,
        /// Degree bound of the input class.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Repeated seeded tester runs over several inputs.
    Experiment {
        #[arg(long)]
        property: String,
        #[arg(long, default_value = "1/20", value_parser = parse_rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Database file or generator; repeat for a size sweep.
        #[arg(long = "input", required = true)]
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value = "epsilon")]
        tester: TesterArg,
        /// Fill the runtime_us column (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        /// Run trials on one thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print a generated fixture in the database file format.
    Generate {
        /// e.g. `disjoint-triangles:2`, `grid:3x3`, `random-bounded-degree:50,4`.
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("not a rational number: `{s}`"))
}

fn r(x: &Rational) -> String {
    rational::display(x)
}

fn input_spec(text: &str, seed: u64) -> Result<InputSpec> {
    if Path::new(text).exists() {
        return Ok(InputSpec::File(text.into()));
    }
    match text.parse::<Family>() {
        Ok(family) => Ok(InputSpec::Generated(GeneratorSpec::new(family).with_seed(seed))),
        Err(_) => Err(Error::Precondition(format!("`{text}` is neither a file nor a generator"))),
    }
}

fn load(text: &str, seed: u64) -> Result<Database> {
    input_spec(text, seed)?.load()
}

fn params_json(p: &TesterParams) -> Value {
    json!({
        "epsilon": r(&p.epsilon), "d": p.d, "mode": p.mode.to_string(), "r": p.r, "lambda": r(&p.lambda),
        "c": p.c, "k": p.k, "v": p.v, "f": r(&p.f), "mu": r(&p.mu), "n0": r(&p.n0),
        "n_min": p.n_min, "n_max": p.n_max, "s": p.s,
    })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "verdict": if v.accept { "accept" } else { "reject" },
        "branch": v.branch.to_string(),
        "queries": v.queries,
        "seed": v.seed,
        "l1_min": v.l1_min().map(r),
        "nearest": v.nearest.as_ref().map(|h| h.histogram.clone()),
        "estimate": v.estimate.as_ref().map(|e| e.iter().map(r).collect::<Vec<_>>()),
    })
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn exec_of(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Test { input, property, epsilon, tester, common } => {
            let prop = PropertySpec::resolve(&property)?;
            let db = load(&input, common.seed)?;
            let n = db.domain_size();
            let params = match tester {
                TesterArg::BipOrOdd => None,
                _ => Some(derive_params(&epsilon, db.degree_bound(), &prop, common.mode.into())?),
            };
            let verdict = match (tester, &params) {
                (TesterArg::Epsilon, Some(p)) => {
                    epsilon_tester(&mut OracleHandle::new(&db), n, p, &prop, common.seed)?
                }
                (TesterArg::Injected, Some(p)) => epsilon_tester_exact(&db, p, &prop, Exec::default())?,
                _ => trivial_tester_bip_or_odd(&mut OracleHandle::new(&db), n, &epsilon)?,
            };
            match common.format {
                Format::Json => {
                    let mut out = verdict_json(&verdict);
                    out["property"] = json!(prop.name);
                    out["n"] = json!(n);
                    out["params"] = params.as_ref().map(params_json).unwrap_or(Value::Null);
                    print_json(&out);
                }
                Format::Csv => {
                    println!("{CSV_HEADER}");
                    println!(
                        "0,{},{n},{},{},{},{},0",
                        verdict.seed,
                        verdict.branch,
                        if verdict.accept { "accept" } else { "reject" },
                        verdict.queries,
                        verdict.l1_min().map(r).unwrap_or_default()
                    );
                }
            }
            Ok(if verdict.accept { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Distance { left, right, model, epsilon, common } => {
            let (a, b) = (load(&left, common.seed)?, load(&right, common.seed)?);
            let (result, close) = match model {
                ModelArg::Pm => (dist_pm(&a, &b)?, epsilon.as_ref().map(|e| close_pm(&a, &b, e)).transpose()?),
                ModelArg::Bdrd => (dist_bdrd(&a, &b)?, epsilon.as_ref().map(|e| close_bdrd(&a, &b, e)).transpose()?),
            };
            let model = match model {
                ModelArg::Pm => DistanceModel::Pm,
                ModelArg::Bdrd => DistanceModel::Bdrd,
            };
            match common.format {
                Format::Json => print_json(&json!({
                    "model": model,
                    "value": result.value.to_string(),
                    "close": close,
                    "witness": result.witness,
                })),
                Format::Csv => {
                    println!("model,value,close");
                    let model = serde_json::to_value(model).unwrap();
                    println!(
                        "{},{},{}",
                        model.as_str().unwrap(),
                        result.value,
                        close.map(|c| c.to_string()).unwrap_or_default()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Histogram { input, radius, registry, write_registry, common } => {
            let db = load(&input, common.seed)?;
            let mut reg = match registry {
                Some(path) => TypeRegistry::read(&path)?,
                None => TypeRegistry::new(),
            };
            let h = histogram_with(&db, radius, &mut reg, Exec::default())?;
            if let Some(path) = write_registry {
                reg.write(&path)?;
            }
            let counts = h.padded(reg.len());
            match common.format {
                Format::Json => {
                    let n = rational::from_u64(db.domain_size() as u64);
                    print_json(&json!({
                        "n": db.domain_size(),
                        "radius": radius,
                        "types": reg.codes().iter().map(|c| c.to_hex()).collect::<Vec<_>>(),
                        "counts": counts,
                        "distribution": counts.iter().map(|&c| r(&(rational::from_u64(c) / &n))).collect::<Vec<_>>(),
                    }))
                }
                Format::Csv => {
                    println!("type,code,count");
                    for (i, (code, count)) in reg.codes().iter().zip(&counts).enumerate() {
                        println!("{i},{},{count}", code.to_hex());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Params { property, epsilon, degree, common } => {
            let prop = PropertySpec::resolve(&property)?;
            let p = derive_params(&epsilon, degree, &prop, common.mode.into())?;
            let mut out = params_json(&p);
            out["property"] = json!(prop.name);
            out["provenance"] = json!(prop.profile.provenance());
            match common.format {
                Format::Json => print_json(&out),
                Format::Csv => {
                    let obj = out.as_object().unwrap();
                    println!("{}", obj.keys().cloned().collect::<Vec<_>>().join(","));
                    let cell = |v: &Value| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                    println!("{}", obj.values().map(cell).collect::<Vec<_>>().join(","));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { property, epsilon, trials, inputs, tester, timing, sequential, common } => {
            let prop = PropertySpec::resolve(&property)?;
            let inputs = inputs.iter().map(|i| input_spec(i, common.seed)).collect::<Result<Vec<_>>>()?;
            let mut config = ExperimentConfig::new(prop, epsilon, inputs);
            config.trials = trials;
            config.seed = common.seed;
            config.mode = common.mode.into();
            config.timing = timing;
            config.exec = exec_of(sequential);
            config.tester = match tester {
                TesterArg::Epsilon => TesterKind::Epsilon,
                TesterArg::Injected => TesterKind::Injected,
                TesterArg::BipOrOdd => TesterKind::BipOrOdd,
            };
            let report = run_experiment(&config)?;
            match common.format {
                Format::Json => print_json(&serde_json::to_value(&report).expect("report serializes")),
                Format::Csv => print!("{}", report.to_csv()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { family, seed, output } => {
            let family: Family = family.parse()?;
            let db = generate(&GeneratorSpec::new(family).with_seed(seed))?;
            match output {
                Some(path) => bdrd_core::db::write_db(&path, &db)?,
                None => print!("{}", serialize_db(&db)),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_resolve_to_generators() {
        assert_eq!(
            input_spec("cycle:10", 3).unwrap(),
            InputSpec::Generated(GeneratorSpec::new(Family::Cycle { n: 10 }).with_seed(3))
        );
        assert!(input_spec("no-such-thing", 0).is_err());
        assert!(bdrd_core::db::read_db(Path::new("no-such-file")).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
