//! The `bayesent` command line.
//!
//! Every verb prints one JSON document on stdout. Exit codes: 0 when the
//! answer is affirmative (holds, pass), 1 when negative (fails,
//! counterexample), 2 for usage or input errors, reported as one line on
//! stderr.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::audit::{enumerate_pool, Auditor, BaseMode, ConsequenceOracle, Property};
use crate::entail::{bayes_entails, map_entails, MapMode, Threshold, Verdict};
use crate::formula::{parse_formula, SymbolTable};
use crate::io::{self, verdict_to_json};
use crate::rational::format_rational;

#[derive(Debug, Parser)]
#[command(name = "bayesent", version, about = "Exact Bayesian, MAP and preferential entailment")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p(Δ), or p(α | Δ) when a conclusion is given, plus the posterior.
    Prob {
        #[arg(long)]
        world: PathBuf,
        #[command(flatten)]
        query: Query,
    },
    /// Bayesian entailment Δ ⊨_ω α.
    Entail {
        #[arg(long)]
        world: PathBuf,
        #[arg(long)]
        omega: Threshold,
        #[command(flatten)]
        query: Query,
    },
    /// Maximum-a-posteriori entailment.
    MapEntail {
        #[arg(long)]
        world: PathBuf,
        #[arg(long, default_value_t = MapMode::Universal)]
        mode: MapMode,
        #[command(flatten)]
        query: Query,
    },
    /// Preferential entailment over a structure file.
    PrefEntail {
        #[arg(long)]
        structure: PathBuf,
        /// Comma-separated symbols, for structure files without a "symbols" field.
        #[arg(long, value_delimiter = ',')]
        symbols: Option<Vec<String>>,
        #[command(flatten)]
        query: Query,
    },
    /// Check a consequence-relation property over a formula pool.
    Audit(AuditArgs),
    /// Forward-filter a temporal scenario and query the final state.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        conclusion: Option<String>,
        #[arg(long, default_value = "1")]
        omega: Threshold,
    },
}

#[derive(Debug, Args)]
struct Query {
    /// A premise formula; repeat for several.
    #[arg(long = "premise")]
    premises: Vec<String>,
    #[arg(long)]
    conclusion: Option<String>,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, conflicts_with = "structure")]
    world: Option<PathBuf>,
    /// Audit Bayesian entailment at this threshold.
    #[arg(long, requires = "world", conflicts_with = "map")]
    omega: Option<Threshold>,
    /// Audit MAP entailment instead.
    #[arg(long, requires = "world")]
    map: bool,
    #[arg(long, default_value_t = MapMode::Universal, requires = "map")]
    mode: MapMode,
    #[arg(long)]
    structure: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', requires = "structure")]
    symbols: Option<Vec<String>>,
    /// A property name, or `suite` for every property the relation is known to satisfy.
    #[arg(long)]
    property: PropertyArg,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Largest premise set tried.
    #[arg(long, default_value_t = 2)]
    cap: usize,
    /// The monotonic base used by the classical properties.
    #[arg(long, default_value_t = BaseMode::SupportRelative)]
    base: BaseMode,
}

#[derive(Debug, Clone, Copy)]
enum PropertyArg {
    Suite,
    One(Property),
}

impl FromStr for PropertyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "suite" {
            return Ok(PropertyArg::Suite);
        }
        s.parse().map(PropertyArg::One).map_err(|e: crate::audit::AuditError| e.to_string())
    }
}

/// One-line input error.
#[derive(Debug)]
struct Failure(String);

impl<E: fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Outcome {
    affirmative: bool,
    body: Value,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{first}");
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let rendered = if cli.pretty {
                serde_json::to_string_pretty(&outcome.body)
            } else {
                serde_json::to_string(&outcome.body)
            }
            .expect("JSON values always serialize");
            let _ = writeln!(out, "{rendered}");
            if outcome.affirmative {
                0
            } else {
                1
            }
        }
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {}", message.replace('\n', " "));
            2
        }
    }
}

fn required(conclusion: Option<&str>) -> Result<&str, Failure> {
    conclusion.ok_or_else(|| Failure("--conclusion is required".into()))
}

fn verdict(table: &SymbolTable, v: Verdict) -> Outcome {
    Outcome { affirmative: v.holds, body: verdict_to_json(table, &v) }
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Prob { world, query } => {
            let model = io::load_world(&world)?;
            let table = model.table().clone();
            let premises = io::parse_premises(&table, &query.premises)?;
            let alpha = query.conclusion.as_deref().map(|t| parse_formula(t, &table)).transpose()?;
            let probability = match &alpha {
                Some(a) => model.conditional(a, &premises),
                None => Some(model.prob(&premises)),
            };
            let posterior = model.posterior(&premises).map(|p| p.iter().map(format_rational).collect::<Vec<_>>());
            Ok(Outcome {
                affirmative: probability.is_some(),
                body: json!({
                    "probability": probability.as_ref().map(format_rational),
                    "evidence": format_rational(&model.prob(&premises)),
                    "posterior": posterior,
                }),
            })
        }
        Command::Entail { world, omega, query } => {
            let conclusion_text = required(query.conclusion.as_deref())?;
            let model = io::load_world(&world)?;
            let table = model.table().clone();
            let premises = io::parse_premises(&table, &query.premises)?;
            let alpha = parse_formula(conclusion_text, &table)?;
            Ok(verdict(&table, bayes_entails(&model, &premises, &alpha, &omega)))
        }
        Command::MapEntail { world, mode, query } => {
            let conclusion_text = required(query.conclusion.as_deref())?;
            let model = io::load_world(&world)?;
            let table = model.table().clone();
            let premises = io::parse_premises(&table, &query.premises)?;
            let alpha = parse_formula(conclusion_text, &table)?;
            Ok(verdict(&table, map_entails(&model, &premises, &alpha, mode)))
        }
        Command::PrefEntail { structure, symbols, query } => {
            let conclusion_text = required(query.conclusion.as_deref())?;
            let loaded = io::load_structure(&structure, symbols.as_deref())?;
            let s = loaded.structure;
            let table = s.table().clone();
            let premises = io::parse_premises(&table, &query.premises)?;
            let alpha = parse_formula(conclusion_text, &table)?;
            let maximal = s.maximal_models(&premises);
            let v = Verdict {
                holds: s.pref_entails(&premises, &alpha),
                probability: None,
                vacuous: maximal.is_empty(),
                witnesses: maximal,
            };
            let mut outcome = verdict(&table, v);
            let added: Vec<Value> = loaded.added_edges.iter().map(|&(x, y)| json!([x, y])).collect();
            outcome.body["closure_added_edges"] = Value::Array(added);
            Ok(outcome)
        }
        Command::Audit(args) => audit(args),
        Command::Simulate { scenario, conclusion: conclusion_text, omega } => {
            let conclusion_text = required(conclusion_text.as_deref())?;
            let scenario = io::load_scenario(&scenario)?;
            let model = &scenario.model;
            let table = model.table().clone();
            let alpha = parse_formula(conclusion_text, &table)?;
            let rationals = |ws: &[crate::rational::Rational]| ws.iter().map(format_rational).collect::<Vec<_>>();
            let steps: Vec<Value> = model
                .trajectory(&scenario.observations)
                .iter()
                .enumerate()
                .map(|(t, b)| json!({ "step": t + 1, "alive": b.alive, "belief": rationals(&b.weights) }))
                .collect();
            let v = model.temporal_entails(&scenario.observations, &alpha, &omega);
            Ok(Outcome {
                affirmative: v.holds,
                body: json!({
                    "prior": rationals(model.prior().probs()),
                    "steps": steps,
                    "verdict": verdict_to_json(&table, &v),
                }),
            })
        }
    }
}

fn suite_for(oracle: &OracleKind) -> Vec<Property> {
    use Property::*;
    match oracle {
        OracleKind::Bayes(omega) if *omega == Threshold::one() => vec![Reflexivity, Monotony, Cut],
        OracleKind::Bayes(_) => vec![Supraclassicality, Reflexivity, ClassicalCautiousMonotony, ClassicalCut],
        OracleKind::Other => vec![Supraclassicality, Reflexivity, CautiousMonotony, Cut, Or],
    }
}

enum OracleKind {
    Bayes(Threshold),
    Other,
}

fn audit(args: AuditArgs) -> Result<Outcome, Failure> {
    let (oracle, kind, table) = match (&args.world, &args.structure) {
        (Some(path), None) => {
            if args.omega.is_none() && !args.map {
                return Err(Failure("--world needs --omega or --map".into()));
            }
            let model = io::load_world(path)?;
            let table = model.table().clone();
            match args.omega {
                Some(omega) => {
                    (ConsequenceOracle::bayes(model, omega.clone(), args.base), OracleKind::Bayes(omega), table)
                }
                None => (ConsequenceOracle::map(model, args.mode, args.base), OracleKind::Other, table),
            }
        }
        (None, Some(path)) => {
            let loaded = io::load_structure(path, args.symbols.as_deref())?;
            let table = loaded.structure.table().clone();
            (ConsequenceOracle::preferential(loaded.structure), OracleKind::Other, table)
        }
        _ => return Err(Failure("give either --world or --structure".into())),
    };
    let pool = enumerate_pool(&table, args.depth)?;
    let auditor = Auditor::new(&oracle, &pool, args.cap);
    match args.property {
        PropertyArg::One(p) => {
            let report = auditor.check(p);
            Ok(Outcome { affirmative: report.passed(), body: report.to_json() })
        }
        PropertyArg::Suite => {
            let reports: Vec<_> = suite_for(&kind).into_iter().map(|p| auditor.check(p)).collect();
            let passed = reports.iter().all(|r| r.passed());
            Ok(Outcome {
                affirmative: passed,
                body: json!({
                    "oracle": oracle.label,
                    "verdict": if passed { "pass" } else { "counterexample" },
                    "pool_size": pool.len(),
                    "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }),
            })
        }
    }
}
