//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here calls the library's evaluation, conditioning, ordering or
//! filtering code: formulas are evaluated by walking the AST against a raw
//! row number, and every quantity is summed straight off the joint table.
#![allow(dead_code)]

pub mod gen;

use std::collections::BTreeSet;

use bayesent::{Formula, Rational};
use num_traits::{One, Zero};

/// Row `row` of the truth table over `names`; the first symbol is the most
/// significant bit.
pub fn eval(f: &Formula, names: &[String], row: usize) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Atom(a) => {
            let i = names.iter().position(|n| n == a).expect("atom in table");
            (row >> (names.len() - 1 - i)) & 1 == 1
        }
        Formula::Not(x) => !eval(x, names, row),
        Formula::And(l, r) => eval(l, names, row) && eval(r, names, row),
        Formula::Or(l, r) => eval(l, names, row) || eval(r, names, row),
        Formula::Implies(l, r) => !eval(l, names, row) || eval(r, names, row),
        Formula::Iff(l, r) => eval(l, names, row) == eval(r, names, row),
    }
}

pub fn rows(names: &[String]) -> std::ops::Range<usize> {
    0..1usize << names.len()
}

pub fn sat_all(fs: &[Formula], names: &[String], row: usize) -> bool {
    fs.iter().all(|f| eval(f, names, row))
}

/// The 2^n-bit column of a formula, as a number.
pub fn column(f: &Formula, names: &[String]) -> u64 {
    rows(names).filter(|&r| eval(f, names, r)).fold(0u64, |acc, r| acc | 1 << r)
}

/// `Σ_v ⟦Δ⟧_v p(v)`.
pub fn joint_mass(probs: &[Rational], names: &[String], premises: &[Formula]) -> Rational {
    rows(names).filter(|&r| sat_all(premises, names, r)).map(|r| probs[r].clone()).sum()
}

/// `p(α | Δ)` from the joint table; `None` when `p(Δ) = 0`.
pub fn joint_conditional(probs: &[Rational], names: &[String], premises: &[Formula], alpha: &Formula) -> Option<Rational> {
    let den = joint_mass(probs, names, premises);
    if den.is_zero() {
        return None;
    }
    let num: Rational = rows(names)
        .filter(|&r| sat_all(premises, names, r) && eval(alpha, names, r))
        .map(|r| probs[r].clone())
        .sum();
    Some(num / den)
}

pub fn classical(names: &[String], premises: &[Formula], alpha: &Formula) -> bool {
    rows(names).all(|r| !sat_all(premises, names, r) || eval(alpha, names, r))
}

pub fn bayes(probs: &[Rational], names: &[String], premises: &[Formula], alpha: &Formula, omega: &Rational) -> bool {
    joint_conditional(probs, names, premises, alpha).map_or(true, |p| &p >= omega)
}

/// Rows maximizing `⟦Δ⟧_v p(v)`; empty when the maximum is zero.
pub fn map_rows(probs: &[Rational], names: &[String], premises: &[Formula]) -> Vec<usize> {
    let scores: Vec<Rational> = rows(names)
        .map(|r| if sat_all(premises, names, r) { probs[r].clone() } else { Rational::zero() })
        .collect();
    let best = scores.iter().max().cloned().unwrap_or_else(Rational::zero);
    if best.is_zero() {
        return Vec::new();
    }
    rows(names).filter(|&r| scores[r] == best).collect()
}

pub fn map_universal(probs: &[Rational], names: &[String], premises: &[Formula], alpha: &Formula) -> bool {
    map_rows(probs, names, premises).iter().all(|&r| eval(alpha, names, r))
}

/// Maximal models of `Δ` inside `universe`, where `better(x, y)` means
/// `x ≻ y`. Quadratic scan, no closure assumed beyond what `better` gives.
pub fn maximal_rows(
    names: &[String],
    universe: &BTreeSet<usize>,
    better: impl Fn(usize, usize) -> bool,
    premises: &[Formula],
) -> Vec<usize> {
    let models: Vec<usize> = universe.iter().copied().filter(|&r| sat_all(premises, names, r)).collect();
    models.iter().copied().filter(|&v| !models.iter().any(|&w| better(w, v))).collect()
}

/// Transitive closure of an edge list (Warshall).
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(x, y) in edges {
        m[x][y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    m
}

/// Filtered marginal over the last state, by enumerating every trajectory
/// `v_0 … v_N`: `prior(v_0) · Π transition[v_{t-1}][v_t] · ⟦Δ_t⟧(v_t)`.
/// `None` when the whole observation history has probability zero.
pub fn brute_filter(
    prior: &[Rational],
    transition: &[Vec<Rational>],
    names: &[String],
    observations: &[Vec<Formula>],
) -> Option<Vec<Rational>> {
    let n = prior.len();
    let steps = observations.len();
    let mut marginal = vec![Rational::zero(); n];
    let paths = n.pow(steps as u32 + 1);
    for code in 0..paths {
        // digits of `code` in base n: v_0 is the least significant
        let path: Vec<usize> = (0..=steps).map(|t| (code / n.pow(t as u32)) % n).collect();
        let mut w = prior[path[0]].clone();
        for t in 1..=steps {
            if !sat_all(&observations[t - 1], names, path[t]) {
                w = Rational::zero();
                break;
            }
            w *= &transition[path[t - 1]][path[t]];
        }
        marginal[path[steps]] += w;
    }
    let total: Rational = marginal.iter().sum();
    if total.is_zero() {
        return None;
    }
    Some(marginal.into_iter().map(|m| m / &total).collect())
}

pub fn identity_matrix(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}
