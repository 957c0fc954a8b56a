use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::entail::{MapMode, Threshold};
use crate::formula::{Formula, SymbolTable, TruthSet};
use crate::preferential::PreferentialStructure;
use crate::rational::Rational;
use crate::worlds::{PremiseSet, WorldModel};

/// A consequence relation `Δ |~ α` that only looks at the models of `Δ`
/// and of `α`, so it can be judged on truth sets.
pub trait Relation: Send + Sync {
    fn table(&self) -> &SymbolTable;

    /// The judgment given `⟦Δ⟧` and `⟦α⟧`.
    fn holds_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> bool;

    /// The exact `p(α | Δ)` behind a judgment, when the relation has one.
    fn probability_on(&self, _premises: &TruthSet, _conclusion: &TruthSet) -> Option<Rational> {
        None
    }

    fn describe(&self) -> String;

    fn holds(&self, premises: &PremiseSet, conclusion: &Formula) -> bool {
        let t = self.table();
        self.holds_on(&premises.truth_set(t), &conclusion.truth_set(t))
    }

    fn probability(&self, premises: &PremiseSet, conclusion: &Formula) -> Option<Rational> {
        let t = self.table();
        self.probability_on(&premises.truth_set(t), &conclusion.truth_set(t))
    }
}

fn conditional_on(model: &WorldModel, premises: &TruthSet, conclusion: &TruthSet) -> Option<Rational> {
    let den = model.mass(premises);
    if den.is_zero() {
        return None;
    }
    Some(model.mass(&premises.intersection(conclusion)) / den)
}

/// Propositional `⊨` over a table.
pub struct Classical {
    pub table: SymbolTable,
}

impl Relation for Classical {
    fn table(&self) -> &SymbolTable {
        &self.table
    }

    fn holds_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> bool {
        premises.is_subset(conclusion)
    }

    fn describe(&self) -> String {
        "classical".into()
    }
}

/// Bayesian `⊨_ω` over a fixed world model.
pub struct Bayes {
    pub model: WorldModel,
    pub omega: Threshold,
}

impl Relation for Bayes {
    fn table(&self) -> &SymbolTable {
        self.model.table()
    }

    fn holds_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> bool {
        // p(α∧Δ) ≥ ω·p(Δ), which is vacuously true when p(Δ) = 0
        let den = self.model.mass(premises);
        self.model.mass(&premises.intersection(conclusion)) >= den * self.omega.value()
    }

    fn probability_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> Option<Rational> {
        conditional_on(&self.model, premises, conclusion)
    }

    fn describe(&self) -> String {
        format!("bayes(omega={})", self.omega)
    }
}

/// MAP entailment over a fixed world model.
pub struct Map {
    pub model: WorldModel,
    pub mode: MapMode,
}

impl Relation for Map {
    fn table(&self) -> &SymbolTable {
        self.model.table()
    }

    fn holds_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> bool {
        let probs = self.model.probs();
        let Some(best) = premises.iter().map(|i| &probs[i]).max() else {
            return true;
        };
        if best.is_zero() {
            return true;
        }
        let mut modes = premises.iter().filter(|&i| &probs[i] == best);
        match self.mode {
            MapMode::Universal => modes.all(|i| conclusion.contains(i)),
            MapMode::Existential => modes.any(|i| conclusion.contains(i)),
        }
    }

    fn probability_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> Option<Rational> {
        conditional_on(&self.model, premises, conclusion)
    }

    fn describe(&self) -> String {
        format!("map({})", self.mode)
    }
}

/// Preferential entailment over a structure.
pub struct Preferential {
    pub structure: PreferentialStructure,
}

impl Relation for Preferential {
    fn table(&self) -> &SymbolTable {
        self.structure.table()
    }

    fn holds_on(&self, premises: &TruthSet, conclusion: &TruthSet) -> bool {
        self.structure.maximal_within(premises).into_iter().all(|v| conclusion.contains(v))
    }

    fn describe(&self) -> String {
        "preferential".into()
    }
}

/// Which monotonic relation plays `⊢` inside the classical properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BaseMode {
    /// Propositional `⊨` over all valuations.
    Strict,
    /// `⊨_1` over the same world model: zero-probability valuations are ignored.
    #[default]
    SupportRelative,
}

impl FromStr for BaseMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(BaseMode::Strict),
            "support-relative" | "support_relative" => Ok(BaseMode::SupportRelative),
            other => Err(format!("unknown base `{other}` (expected strict or support-relative)")),
        }
    }
}

impl fmt::Display for BaseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseMode::Strict => "strict",
            BaseMode::SupportRelative => "support-relative",
        })
    }
}

/// A relation under audit together with its monotonic base.
pub struct ConsequenceOracle {
    pub label: String,
    pub query: Box<dyn Relation>,
    pub base: Box<dyn Relation>,
}

impl ConsequenceOracle {
    pub fn new(label: impl Into<String>, query: Box<dyn Relation>, base: Box<dyn Relation>) -> Self {
        Self { label: label.into(), query, base }
    }

    fn base_for(model: &WorldModel, base: BaseMode) -> Box<dyn Relation> {
        match base {
            BaseMode::Strict => Box::new(Classical { table: model.table().clone() }),
            BaseMode::SupportRelative => Box::new(Bayes { model: model.clone(), omega: Threshold::one() }),
        }
    }

    pub fn bayes(model: WorldModel, omega: Threshold, base: BaseMode) -> Self {
        let label = format!("bayes(omega={omega}, base={base})");
        let base = Self::base_for(&model, base);
        Self::new(label, Box::new(Bayes { model, omega }), base)
    }

    pub fn map(model: WorldModel, mode: MapMode, base: BaseMode) -> Self {
        let label = format!("map(mode={mode}, base={base})");
        let base = Self::base_for(&model, base);
        Self::new(label, Box::new(Map { model, mode }), base)
    }

    /// Preferential entailment with propositional `⊨` as its base.
    pub fn preferential(structure: PreferentialStructure) -> Self {
        let table = structure.table().clone();
        Self::new("preferential(base=strict)", Box::new(Preferential { structure }), Box::new(Classical { table }))
    }

    pub fn classical(table: SymbolTable) -> Self {
        Self::new(
            "classical",
            Box::new(Classical { table: table.clone() }),
            Box::new(Classical { table }),
        )
    }
}
