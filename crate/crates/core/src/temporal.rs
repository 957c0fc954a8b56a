//! Hidden-Markov extension: a chain of world states `V_1 … V_N`, each
//! observed through a premise set `Δ_t`, and entailment of a conclusion
//! about the final state.
//!
//! Filtering is the usual forward recursion over exact rationals, folded
//! from the prior: each step predicts with the transition matrix and then
//! conditions on the step's premises, so the prior describes the state just
//! before the first observation. A step whose premises have zero predicted
//! mass kills the belief, and a dead belief makes every later verdict
//! vacuous.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::entail::{Threshold, Verdict};
use crate::formula::{Formula, SymbolTable, TruthSet};
use crate::rational::Rational;
use crate::worlds::{PremiseSet, WorldError, WorldModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemporalError {
    #[error("invalid prior: {0}")]
    Prior(#[from] WorldError),
    #[error("transition matrix has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("transition row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("transition row {row} has negative entry {value} at column {column}")]
    Negative { row: usize, column: usize, value: Rational },
    #[error("transition row {row} sums to {sum}, not 1")]
    RowNotNormalized { row: usize, sum: Rational },
    #[error("sticky epsilon {0} is outside [0, 1]")]
    Epsilon(Rational),
}

/// Prior over valuations plus a row-stochastic transition matrix;
/// `transition[r][c] = p(V_t = c | V_{t-1} = r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalModel {
    prior: WorldModel,
    transition: Vec<Vec<Rational>>,
}

impl TemporalModel {
    pub fn new(prior: WorldModel, transition: Vec<Vec<Rational>>) -> Result<Self, TemporalError> {
        let n = prior.table().valuation_count();
        if transition.len() != n {
            return Err(TemporalError::RowCount { expected: n, found: transition.len() });
        }
        for (row, entries) in transition.iter().enumerate() {
            if entries.len() != n {
                return Err(TemporalError::RowLength { row, expected: n, found: entries.len() });
            }
            if let Some((column, value)) = entries.iter().enumerate().find(|(_, x)| x.is_negative()) {
                return Err(TemporalError::Negative { row, column, value: value.clone() });
            }
            let sum: Rational = entries.iter().sum();
            if !sum.is_one() {
                return Err(TemporalError::RowNotNormalized { row, sum });
            }
        }
        Ok(Self { prior, transition })
    }

    /// The world never changes between steps.
    pub fn identity(prior: WorldModel) -> Self {
        let n = prior.table().valuation_count();
        let transition = (0..n)
            .map(|r| (0..n).map(|c| if r == c { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self { prior, transition }
    }

    /// Stay put with probability `1 - ε`, otherwise jump uniformly to one of
    /// the other valuations.
    pub fn sticky(prior: WorldModel, epsilon: Rational) -> Result<Self, TemporalError> {
        if epsilon.is_negative() || epsilon > Rational::one() {
            return Err(TemporalError::Epsilon(epsilon));
        }
        let n = prior.table().valuation_count();
        if n == 1 {
            return Ok(Self::identity(prior));
        }
        let stay = Rational::one() - &epsilon;
        let jump = epsilon / Rational::from_integer((n as i64 - 1).into());
        let transition = (0..n)
            .map(|r| (0..n).map(|c| if r == c { stay.clone() } else { jump.clone() }).collect())
            .collect();
        Ok(Self { prior, transition })
    }

    pub fn table(&self) -> &SymbolTable {
        self.prior.table()
    }

    pub fn prior(&self) -> &WorldModel {
        &self.prior
    }

    pub fn transition(&self) -> &[Vec<Rational>] {
        &self.transition
    }

    /// Belief before any observation: the prior itself.
    pub fn initial_belief(&self) -> BeliefState {
        BeliefState { weights: self.prior.probs().to_vec(), alive: true }
    }

    /// Predict `b'(v) = Σ_u transition[u][v]·b(u)`, then condition on `Δ`.
    pub fn filter_step(&self, belief: &BeliefState, premises: &PremiseSet) -> BeliefState {
        if !belief.alive {
            return BeliefState::dead(self.table().valuation_count());
        }
        let n = self.table().valuation_count();
        let mut predicted = vec![Rational::zero(); n];
        for (u, weight) in belief.weights.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            for (v, out) in predicted.iter_mut().enumerate() {
                let t = &self.transition[u][v];
                if !t.is_zero() {
                    *out += weight * t;
                }
            }
        }
        condition(&predicted, &premises.truth_set(self.table()))
    }

    /// Beliefs after each observation, `p(V_t | Δ_1..Δ_t)` for t = 1..N.
    pub fn trajectory(&self, observations: &[PremiseSet]) -> Vec<BeliefState> {
        observations
            .iter()
            .scan(self.initial_belief(), |belief, obs| {
                *belief = self.filter_step(belief, obs);
                Some(belief.clone())
            })
            .collect()
    }

    /// Filtered belief over the final state; the prior for an empty sequence.
    pub fn run_filter(&self, observations: &[PremiseSet]) -> BeliefState {
        self.trajectory(observations).pop().unwrap_or_else(|| self.initial_belief())
    }

    /// `Δ_1, …, Δ_N ⊨_ω α_N`: holds iff `p(α at step N | Δ_1..Δ_N) ≥ ω`, or
    /// vacuously when the observation history has zero probability.
    pub fn temporal_entails(&self, observations: &[PremiseSet], alpha: &Formula, omega: &Threshold) -> Verdict {
        let belief = self.run_filter(observations);
        if !belief.alive {
            return Verdict::vacuous();
        }
        let table = self.table();
        let alpha_set = alpha.truth_set(table);
        let probability: Rational = alpha_set.iter().map(|i| &belief.weights[i]).sum();
        let holds = &probability >= omega.value();
        let witnesses = if holds {
            Vec::new()
        } else {
            table
                .valuations()
                .filter(|v| !alpha_set.contains(v.index()) && !belief.weights[v.index()].is_zero())
                .collect()
        };
        Verdict { holds, probability: Some(probability), vacuous: false, witnesses }
    }
}

fn condition(weights: &[Rational], evidence: &TruthSet) -> BeliefState {
    let mass: Rational = evidence.iter().map(|i| &weights[i]).sum();
    if mass.is_zero() {
        return BeliefState::dead(weights.len());
    }
    let weights = weights
        .iter()
        .enumerate()
        .map(|(i, w)| if evidence.contains(i) { w / &mass } else { Rational::zero() })
        .collect();
    BeliefState { weights, alive: true }
}

/// Filtered distribution over the current valuation.
///
/// Alive beliefs sum to exactly 1; dead beliefs are all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefState {
    pub weights: Vec<Rational>,
    pub alive: bool,
}

impl BeliefState {
    pub fn dead(n: usize) -> Self {
        Self { weights: vec![Rational::zero(); n], alive: false }
    }
}
