//! Worlds and structures for the property harnesses: the parametric
//! counterexample tables and seeded random instances.

use std::collections::BTreeSet;

use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entail::Threshold;
use crate::formula::SymbolTable;
use crate::preferential::PreferentialStructure;
use crate::rational::{ratio, Rational};
use crate::worlds::WorldModel;

use super::AuditError;

/// Thresholds swept by the property suites; all strictly inside (1/2, 1).
pub fn omega_grid() -> Vec<Threshold> {
    [(11, 20), (3, 5), (7, 10), (3, 4), (4, 5), (9, 10), (19, 20)]
        .into_iter()
        .map(|(n, d)| Threshold::new(ratio(n, d)).expect("grid values lie in [0,1]"))
        .collect()
}

fn two_symbols() -> SymbolTable {
    SymbolTable::new(["a", "b"]).expect("valid symbols")
}

fn require_open_range(omega: &Threshold) -> Result<(), AuditError> {
    if omega.is_strictly_between_half_and_one() {
        Ok(())
    } else {
        Err(AuditError::ThresholdRange(omega.value().clone()))
    }
}

/// Over `[a, b]`: `p = (0, 1-ω, 1-ω, 2ω-1)`, so `p(a) = ω` while
/// `p(a | b) = (2ω-1)/ω < ω`.
pub fn monotony_counterexample_world(omega: &Threshold) -> Result<WorldModel, AuditError> {
    require_open_range(omega)?;
    let w = omega.value();
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let probs = vec![Rational::zero(), &one - w, &one - w, &two * w - &one];
    Ok(WorldModel::new(two_symbols(), probs).expect("rows sum to 1 for every omega"))
}

/// Over `[a, b]`: `p = (0, 1-ω, ω(1-ω), ω²)`, so `p(a) = p(a∧b | a) = ω`
/// while `p(a∧b) = ω² < ω`.
pub fn cut_counterexample_world(omega: &Threshold) -> Result<WorldModel, AuditError> {
    require_open_range(omega)?;
    let w = omega.value();
    let one = Rational::one();
    let probs = vec![Rational::zero(), &one - w, w * (&one - w), w * w];
    Ok(WorldModel::new(two_symbols(), probs).expect("rows sum to 1 for every omega"))
}

/// A deterministic pseudo-random distribution.
///
/// `round(zero_fraction · 2^n)` entries (at most `2^n - 1`) are forced to
/// exactly zero; the rest get integer weights in `1..=1000` and the vector
/// is normalized exactly.
pub fn random_world(table: &SymbolTable, seed: u64, zero_fraction: &Rational) -> WorldModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = table.valuation_count();
    let fraction = zero_fraction.clone().max(Rational::zero()).min(Rational::one());
    let zeros = (fraction * Rational::from_integer((n as i64).into()))
        .round()
        .to_integer()
        .to_usize()
        .unwrap_or(n)
        .min(n - 1);
    let mut weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for &i in &order[..zeros] {
        weights[i] = 0;
    }
    WorldModel::new(table.clone(), normalize(&weights)).expect("normalized weights")
}

fn normalize(weights: &[i64]) -> Vec<Rational> {
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| ratio(w, total)).collect()
}

/// Strictly decreasing positive weights for positions `0..n` of a linear
/// order, normalized.
fn decreasing_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut picks: Vec<i64> = rand::seq::index::sample(rng, 1000, n).into_iter().map(|x| x as i64 + 1).collect();
    picks.sort_unstable_by(|a, b| b.cmp(a));
    normalize(&picks)
}

fn assign_along(order: &[usize], ranked: Vec<Rational>) -> Vec<Rational> {
    let mut probs = vec![Rational::zero(); order.len()];
    for (&v, p) in order.iter().zip(ranked) {
        probs[v] = p;
    }
    probs
}

/// A random strict partial order over all valuations plus an injective,
/// all-positive, order-preserving distribution.
///
/// A random linear order is drawn first; each pair it orders becomes an
/// edge with probability 1/2, and the result is transitively closed. The
/// probabilities decrease strictly along the linear order, so every edge
/// is respected.
pub fn random_preferential(table: &SymbolTable, seed: u64) -> (PreferentialStructure, WorldModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = table.valuation_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                edges.insert((order[i], order[j]));
            }
        }
    }
    let (structure, _) = PreferentialStructure::from_hasse(table.clone(), (0..n).collect(), edges)
        .expect("edges follow a linear order, so the closure is acyclic");
    let probs = assign_along(&order, decreasing_probabilities(&mut rng, n));
    (structure, WorldModel::new(table.clone(), probs).expect("normalized"))
}

/// A random total order over all valuations plus an injective, all-positive,
/// order-preserving distribution.
pub fn random_total_order(table: &SymbolTable, seed: u64) -> (PreferentialStructure, WorldModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = table.valuation_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let structure = PreferentialStructure::total_order(table.clone(), &order).expect("a chain is a strict order");
    let probs = assign_along(&order, decreasing_probabilities(&mut rng, n));
    (structure, WorldModel::new(table.clone(), probs).expect("normalized"))
}
