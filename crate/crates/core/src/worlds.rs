//! Exact probability distributions over valuations and the marginal,
//! joint, conditional and posterior queries computed from them.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::formula::{Formula, SymbolTable, TruthSet, Valuation};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorldError {
    #[error("expected {expected} probabilities (2^n), found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("negative probability {value} for valuation index {index}")]
    Negative { index: usize, value: Rational },
    #[error("probabilities sum to {sum}, not 1 (deficit {deficit})")]
    NotNormalized { sum: Rational, deficit: Rational },
}

/// A finite set of premises. Duplicates are dropped; insertion order is kept
/// for display.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PremiseSet {
    formulas: Vec<Formula>,
}

impl PremiseSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        if self.formulas.contains(&f) {
            return false;
        }
        self.formulas.push(f);
        true
    }

    /// `Δ ∪ {f}`.
    pub fn with(&self, f: Formula) -> Self {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.formulas.iter()
    }

    /// Valuations satisfying every premise; all valuations when empty.
    pub fn truth_set(&self, table: &SymbolTable) -> TruthSet {
        let mut set = TruthSet::full(table.len());
        for f in &self.formulas {
            set.intersect_with(&f.truth_set(table));
        }
        set
    }
}

impl FromIterator<Formula> for PremiseSet {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        let mut out = Self::empty();
        for f in iter {
            out.insert(f);
        }
        out
    }
}

impl<'a> IntoIterator for &'a PremiseSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

/// The models of `Δ`, in index order.
pub fn models_of(table: &SymbolTable, premises: &PremiseSet) -> Vec<Valuation> {
    premises
        .truth_set(table)
        .iter()
        .map(|i| table.valuation(i).expect("index within table"))
        .collect()
}

/// An exact distribution `p(V)` over all 2^n valuations of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldModel {
    table: SymbolTable,
    probs: Vec<Rational>,
}

impl WorldModel {
    /// Validates length, nonnegativity and exact normalization.
    pub fn new(table: SymbolTable, probs: Vec<Rational>) -> Result<Self, WorldError> {
        let expected = table.valuation_count();
        if probs.len() != expected {
            return Err(WorldError::WrongLength { expected, found: probs.len() });
        }
        if let Some((index, value)) = probs.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(WorldError::Negative { index, value: value.clone() });
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            let deficit = Rational::one() - &sum;
            return Err(WorldError::NotNormalized { sum, deficit });
        }
        Ok(Self { table, probs })
    }

    pub fn uniform(table: SymbolTable) -> Self {
        let n = table.valuation_count();
        let p = Rational::new(1.into(), (n as i64).into());
        Self { probs: vec![p; n], table }
    }

    pub fn point_mass(table: SymbolTable, index: usize) -> Self {
        let mut probs = vec![Rational::zero(); table.valuation_count()];
        probs[index] = Rational::one();
        Self { table, probs }
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn p(&self, v: Valuation) -> &Rational {
        &self.probs[v.index()]
    }

    /// Total probability of a set of valuations.
    pub fn mass(&self, set: &TruthSet) -> Rational {
        set.iter().map(|i| &self.probs[i]).sum()
    }

    pub fn models_of(&self, premises: &PremiseSet) -> Vec<Valuation> {
        models_of(&self.table, premises)
    }

    /// `p(Δ)`; 1 for the empty set.
    pub fn prob(&self, premises: &PremiseSet) -> Rational {
        self.mass(&premises.truth_set(&self.table))
    }

    pub fn prob_formula(&self, f: &Formula) -> Rational {
        self.mass(&f.truth_set(&self.table))
    }

    /// `p(α | Δ)`, or `None` when `p(Δ) = 0`.
    pub fn conditional(&self, alpha: &Formula, premises: &PremiseSet) -> Option<Rational> {
        let evidence = premises.truth_set(&self.table);
        let denom = self.mass(&evidence);
        if denom.is_zero() {
            return None;
        }
        let joint = self.mass(&evidence.intersection(&alpha.truth_set(&self.table)));
        Some(joint / denom)
    }

    /// `p(V | Δ)` over all valuations, or `None` when `p(Δ) = 0`.
    pub fn posterior(&self, premises: &PremiseSet) -> Option<Vec<Rational>> {
        let evidence = premises.truth_set(&self.table);
        let denom = self.mass(&evidence);
        if denom.is_zero() {
            return None;
        }
        Some(
            self.probs
                .iter()
                .enumerate()
                .map(|(i, p)| if evidence.contains(i) { p / &denom } else { Rational::zero() })
                .collect(),
        )
    }

    /// Valuations with nonzero probability.
    pub fn support(&self) -> Vec<Valuation> {
        self.table.valuations().filter(|v| !self.probs[v.index()].is_zero()).collect()
    }

    pub fn support_set(&self) -> TruthSet {
        TruthSet::from_indices(
            self.table.len(),
            self.probs.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(i, _)| i),
        )
    }
}
