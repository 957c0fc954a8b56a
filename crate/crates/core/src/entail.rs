//! Entailment engines: classical `⊨`, Bayesian `⊨_ω` (with `ω = 1` as a
//! special case) and maximum-a-posteriori entailment.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::{Formula, SymbolTable, Valuation};
use crate::rational::{parse_rational, Rational};
use crate::worlds::{PremiseSet, WorldModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error(transparent)]
    Parse(#[from] crate::rational::ParseRationalError),
    #[error("threshold {0} is outside [0, 1]")]
    OutOfRange(Rational),
}

/// An exact probability threshold `ω ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(Rational);

impl Threshold {
    pub fn new(value: Rational) -> Result<Self, ThresholdError> {
        if value < Rational::zero() || value > Rational::one() {
            return Err(ThresholdError::OutOfRange(value));
        }
        Ok(Self(value))
    }

    pub fn one() -> Self {
        Self(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `1/2 < ω < 1`, the range in which the non-monotonic results apply.
    pub fn is_strictly_between_half_and_one(&self) -> bool {
        self.0 > Rational::new(1.into(), 2.into()) && self.0 < Rational::one()
    }
}

impl FromStr for Threshold {
    type Err = ThresholdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_rational(s)?)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The outcome of an entailment query.
///
/// `probability` is `None` exactly when the query was vacuous (`p(Δ) = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub probability: Option<Rational>,
    pub vacuous: bool,
    /// MAP estimates, maximal models, or supported countermodels.
    pub witnesses: Vec<Valuation>,
}

impl Verdict {
    pub fn vacuous() -> Self {
        Self { holds: true, probability: None, vacuous: true, witnesses: Vec::new() }
    }
}

/// How MAP entailment treats several maximizers of `p(v | Δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MapMode {
    /// The conclusion must hold in every maximizer.
    #[default]
    Universal,
    /// The conclusion must hold in some maximizer.
    Existential,
}

impl FromStr for MapMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "universal" => Ok(MapMode::Universal),
            "existential" => Ok(MapMode::Existential),
            other => Err(format!("unknown MAP mode `{other}` (expected universal or existential)")),
        }
    }
}

impl fmt::Display for MapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapMode::Universal => "universal",
            MapMode::Existential => "existential",
        })
    }
}

/// Classical propositional entailment: every valuation satisfying `Δ`
/// satisfies `α`.
pub fn classical_entails(table: &SymbolTable, premises: &PremiseSet, alpha: &Formula) -> bool {
    premises.truth_set(table).is_subset(&alpha.truth_set(table))
}

/// Countermodels to `Δ ⊨ α`: valuations satisfying `Δ` and falsifying `α`.
pub fn classical_countermodels(table: &SymbolTable, premises: &PremiseSet, alpha: &Formula) -> Vec<Valuation> {
    premises
        .truth_set(table)
        .intersection(&alpha.truth_set(table).complement())
        .iter()
        .map(|i| table.valuation(i).expect("index within table"))
        .collect()
}

/// Bayesian entailment: holds iff `p(α|Δ) ≥ ω` or `p(Δ) = 0`.
///
/// On failure the witnesses are every supported countermodel, i.e. every
/// `v` with `p(v) > 0` in which `Δ` is true and `α` is false.
pub fn bayes_entails(model: &WorldModel, premises: &PremiseSet, alpha: &Formula, omega: &Threshold) -> Verdict {
    let table = model.table();
    let evidence = premises.truth_set(table);
    let denom = model.mass(&evidence);
    if denom.is_zero() {
        return Verdict::vacuous();
    }
    let alpha_set = alpha.truth_set(table);
    let probability = model.mass(&evidence.intersection(&alpha_set)) / denom;
    let holds = &probability >= omega.value();
    let witnesses = if holds {
        Vec::new()
    } else {
        evidence
            .intersection(&alpha_set.complement())
            .intersection(&model.support_set())
            .iter()
            .map(|i| table.valuation(i).expect("index within table"))
            .collect()
    };
    Verdict { holds, probability: Some(probability), vacuous: false, witnesses }
}

/// All maximizers of `p(v | Δ)`, or `None` when `p(Δ) = 0`.
pub fn map_set(model: &WorldModel, premises: &PremiseSet) -> Option<Vec<Valuation>> {
    let table = model.table();
    let evidence = premises.truth_set(table);
    let best = evidence.iter().map(|i| &model.probs()[i]).max()?;
    if best.is_zero() {
        return None;
    }
    Some(
        evidence
            .iter()
            .filter(|&i| &model.probs()[i] == best)
            .map(|i| table.valuation(i).expect("index within table"))
            .collect(),
    )
}

/// MAP entailment: `α` is judged at the posterior mode(s) only.
///
/// The verdict's `probability` carries the full conditional `p(α|Δ)` for
/// comparison with the Bayesian reading; the witnesses are the MAP set.
pub fn map_entails(model: &WorldModel, premises: &PremiseSet, alpha: &Formula, mode: MapMode) -> Verdict {
    let Some(maximizers) = map_set(model, premises) else {
        return Verdict::vacuous();
    };
    let table = model.table();
    let holds = match mode {
        MapMode::Universal => maximizers.iter().all(|&v| alpha.evaluate(table, v)),
        MapMode::Existential => maximizers.iter().any(|&v| alpha.evaluate(table, v)),
    };
    Verdict { holds, probability: model.conditional(alpha, premises), vacuous: false, witnesses: maximizers }
}
