//! JSON file formats: world models, preferential structures and temporal
//! scenarios.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::entail::Verdict;
use crate::formula::{parse_formula, FormulaError, SymbolTable, Valuation};
use crate::preferential::{PreferentialStructure, Violation};
use crate::rational::{format_rational, parse_rational, ParseRationalError, Rational};
use crate::temporal::{TemporalError, TemporalModel};
use crate::worlds::{PremiseSet, WorldError, WorldModel};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("bad probability: {0}")]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Temporal(#[from] TemporalError),
    #[error("world {row}: {message}")]
    Assignment { row: usize, message: String },
    #[error("invalid structure: {}", join(.0))]
    Structure(Vec<Violation>),
    #[error("structure needs symbols (a \"symbols\" field or --symbols)")]
    MissingSymbols,
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldFile {
    symbols: Vec<String>,
    worlds: Vec<WorldRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldRow {
    assignment: BTreeMap<String, u8>,
    prob: String,
}

fn world_from_file(file: WorldFile) -> Result<WorldModel, IoError> {
    let table = SymbolTable::new(&file.symbols)?;
    let n = table.valuation_count();
    let mut probs: Vec<Option<Rational>> = vec![None; n];
    for (row, entry) in file.worlds.iter().enumerate() {
        let fail = |message: String| IoError::Assignment { row, message };
        if let Some(extra) = entry.assignment.keys().find(|k| table.position(k).is_none()) {
            return Err(fail(format!("unknown symbol `{extra}`")));
        }
        let mut bits = Vec::with_capacity(table.len());
        for name in table.names() {
            match entry.assignment.get(name) {
                Some(0) => bits.push(false),
                Some(1) => bits.push(true),
                Some(other) => return Err(fail(format!("`{name}` must be 0 or 1, got {other}"))),
                None => return Err(fail(format!("`{name}` is not assigned"))),
            }
        }
        let v = table.valuation_from_bits(&bits).expect("one bit per symbol");
        if probs[v.index()].is_some() {
            return Err(fail(format!("assignment {} appears twice", table.describe(v))));
        }
        probs[v.index()] = Some(parse_rational(&entry.prob)?);
    }
    if let Some(missing) = probs.iter().position(Option::is_none) {
        let v = table.valuation(missing).expect("in range");
        return Err(IoError::Assignment { row: file.worlds.len(), message: format!("assignment {} is missing", table.describe(v)) });
    }
    Ok(WorldModel::new(table, probs.into_iter().map(Option::unwrap).collect())?)
}

pub fn parse_world(text: &str) -> Result<WorldModel, IoError> {
    world_from_file(serde_json::from_str(text)?)
}

pub fn load_world(path: &Path) -> Result<WorldModel, IoError> {
    parse_world(&read_file(path)?)
}

/// The world file body for `model`, rows in valuation order.
pub fn world_to_json(model: &WorldModel) -> Value {
    let table = model.table();
    let worlds: Vec<Value> = table
        .valuations()
        .map(|v| json!({ "assignment": assignment_json(table, v), "prob": format_rational(model.p(v)) }))
        .collect();
    json!({ "symbols": table.names(), "worlds": worlds })
}

pub fn assignment_json(table: &SymbolTable, v: Valuation) -> Value {
    let mut map = Map::new();
    for (i, name) in table.names().iter().enumerate() {
        map.insert(name.clone(), json!(u8::from(v.bit(i))));
    }
    Value::Object(map)
}

pub fn verdict_to_json(table: &SymbolTable, verdict: &Verdict) -> Value {
    let witnesses: Vec<Value> = verdict
        .witnesses
        .iter()
        .map(|&v| json!({ "index": v.index(), "assignment": assignment_json(table, v) }))
        .collect();
    json!({
        "holds": verdict.holds,
        "probability": verdict.probability.as_ref().map(format_rational),
        "vacuous": verdict.vacuous,
        "witnesses": witnesses,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    #[serde(default)]
    symbols: Option<Vec<String>>,
    universe: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

/// A structure plus the edges that transitive closure had to add.
#[derive(Debug, Clone)]
pub struct LoadedStructure {
    pub structure: PreferentialStructure,
    pub added_edges: Vec<(usize, usize)>,
}

/// `fallback_symbols` is used when the file has no `symbols` field.
pub fn parse_structure(text: &str, fallback_symbols: Option<&[String]>) -> Result<LoadedStructure, IoError> {
    let file: StructureFile = serde_json::from_str(text)?;
    let names = file.symbols.as_deref().or(fallback_symbols).ok_or(IoError::MissingSymbols)?;
    let table = SymbolTable::new(names)?;
    let universe: BTreeSet<usize> = file.universe.into_iter().collect();
    let edges: BTreeSet<(usize, usize)> = file.edges.into_iter().collect();
    let (structure, added_edges) =
        PreferentialStructure::from_hasse(table, universe, edges).map_err(IoError::Structure)?;
    Ok(LoadedStructure { structure, added_edges })
}

pub fn load_structure(path: &Path, fallback_symbols: Option<&[String]>) -> Result<LoadedStructure, IoError> {
    parse_structure(&read_file(path)?, fallback_symbols)
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum TransitionSpec {
    Identity,
    Sticky { epsilon: String },
    Matrix { rows: Vec<Vec<String>> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    prior: WorldFile,
    transition: TransitionSpec,
    observations: Vec<Vec<String>>,
}

/// A temporal model with its observation sequence.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: TemporalModel,
    pub observations: Vec<PremiseSet>,
}

pub fn parse_scenario(text: &str) -> Result<Scenario, IoError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    let prior = world_from_file(file.prior)?;
    let table = prior.table().clone();
    let model = match file.transition {
        TransitionSpec::Identity => TemporalModel::identity(prior),
        TransitionSpec::Sticky { epsilon } => TemporalModel::sticky(prior, parse_rational(&epsilon)?)?,
        TransitionSpec::Matrix { rows } => {
            let rows = rows
                .iter()
                .map(|row| row.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            TemporalModel::new(prior, rows)?
        }
    };
    let observations = file
        .observations
        .iter()
        .map(|step| parse_premises(&table, step))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Scenario { model, observations })
}

pub fn load_scenario(path: &Path) -> Result<Scenario, IoError> {
    parse_scenario(&read_file(path)?)
}

pub fn parse_premises<S: AsRef<str>>(table: &SymbolTable, texts: &[S]) -> Result<PremiseSet, FormulaError> {
    texts.iter().map(|t| parse_formula(t.as_ref(), table)).collect()
}
