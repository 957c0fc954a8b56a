//! Preferential structures `(V, ≻)` and preferential entailment.
//!
//! `x ≻ y` means `x` is the more normal (preferred) world; the maximal
//! models of a premise set are its most preferred models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::formula::{Formula, SymbolTable, TruthSet, Valuation};
use crate::worlds::{PremiseSet, WorldModel};

/// One reason a relation fails to be a strict partial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Valuation index beyond 2^n.
    OutOfRange(usize),
    /// Edge endpoint missing from the universe.
    OutsideUniverse { from: usize, to: usize },
    /// `(v, v)` is in the relation.
    Reflexive(usize),
    /// `x ≻ y` and `y ≻ z` but not `x ≻ z`.
    NotTransitive { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange(i) => write!(f, "valuation index {i} is out of range"),
            Violation::OutsideUniverse { from, to } => write!(f, "edge ({from},{to}) leaves the universe"),
            Violation::Reflexive(v) => write!(f, "irreflexivity violated at {v}"),
            Violation::NotTransitive { x, y, z } => {
                write!(f, "transitivity violated: ({x},{y}) and ({y},{z}) but not ({x},{z})")
            }
        }
    }
}

fn check_endpoints(table: &SymbolTable, universe: &BTreeSet<usize>, edges: &BTreeSet<(usize, usize)>) -> Vec<Violation> {
    let n = table.valuation_count();
    let mut out: Vec<Violation> = universe.iter().filter(|&&v| v >= n).map(|&v| Violation::OutOfRange(v)).collect();
    for &(from, to) in edges {
        if !universe.contains(&from) || !universe.contains(&to) {
            out.push(Violation::OutsideUniverse { from, to });
        }
    }
    out
}

/// Lists every way `edges` fails to be an irreflexive, transitive relation
/// on `universe`.
pub fn validate(
    table: &SymbolTable,
    universe: &BTreeSet<usize>,
    edges: &BTreeSet<(usize, usize)>,
) -> Result<(), Vec<Violation>> {
    let mut violations = check_endpoints(table, universe, edges);
    for &(x, y) in edges {
        if x == y {
            violations.push(Violation::Reflexive(x));
        }
    }
    for &(x, y) in edges {
        for &(_, z) in edges.range((y, 0)..=(y, usize::MAX)) {
            if !edges.contains(&(x, z)) {
                violations.push(Violation::NotTransitive { x, y, z });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A finite strict partial order over a set of valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferentialStructure {
    table: SymbolTable,
    universe: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
    /// `preferred_over[y]` holds every `x` with `x ≻ y`.
    preferred_over: BTreeMap<usize, BTreeSet<usize>>,
}

impl PreferentialStructure {
    /// Accepts a relation that is already a strict partial order.
    pub fn new(
        table: SymbolTable,
        universe: BTreeSet<usize>,
        edges: BTreeSet<(usize, usize)>,
    ) -> Result<Self, Vec<Violation>> {
        validate(&table, &universe, &edges)?;
        Ok(Self::build(table, universe, edges))
    }

    /// Takes the transitive closure of `edges` first and reports which edges
    /// the closure added. Fails if the closure is reflexive (a cycle).
    pub fn from_hasse(
        table: SymbolTable,
        universe: BTreeSet<usize>,
        edges: BTreeSet<(usize, usize)>,
    ) -> Result<(Self, Vec<(usize, usize)>), Vec<Violation>> {
        let endpoint_errors = check_endpoints(&table, &universe, &edges);
        if !endpoint_errors.is_empty() {
            return Err(endpoint_errors);
        }
        let closed = transitive_closure(&edges);
        let cycles: Vec<Violation> = closed.iter().filter(|(x, y)| x == y).map(|&(x, _)| Violation::Reflexive(x)).collect();
        if !cycles.is_empty() {
            return Err(cycles);
        }
        let added = closed.difference(&edges).copied().collect();
        Ok((Self::build(table, universe, closed), added))
    }

    /// The chain `order[0] ≻ order[1] ≻ …` with its transitive closure.
    pub fn total_order(table: SymbolTable, order: &[usize]) -> Result<Self, Vec<Violation>> {
        let universe = order.iter().copied().collect();
        let mut edges = BTreeSet::new();
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[i + 1..] {
                edges.insert((x, y));
            }
        }
        Self::new(table, universe, edges)
    }

    fn build(table: SymbolTable, universe: BTreeSet<usize>, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut preferred_over: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(x, y) in &edges {
            preferred_over.entry(y).or_default().insert(x);
        }
        Self { table, universe, edges, preferred_over }
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn universe(&self) -> &BTreeSet<usize> {
        &self.universe
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// `x ≻ y`.
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    fn models_in_universe(&self, premises: &PremiseSet) -> BTreeSet<usize> {
        self.universe_within(&premises.truth_set(&self.table))
    }

    fn universe_within(&self, set: &TruthSet) -> BTreeSet<usize> {
        self.universe.iter().copied().filter(|&v| set.contains(v)).collect()
    }

    /// Indices of the maximal elements among the universe members in `models`.
    pub fn maximal_within(&self, models: &TruthSet) -> Vec<usize> {
        let inside = self.universe_within(models);
        inside.iter().copied().filter(|&v| self.is_maximal_in(v, &inside)).collect()
    }

    fn is_maximal_in(&self, v: usize, models: &BTreeSet<usize>) -> bool {
        self.preferred_over.get(&v).map_or(true, |better| better.is_disjoint(models))
    }

    /// Models of `Δ` not dominated by any other model of `Δ`.
    pub fn maximal_models(&self, premises: &PremiseSet) -> Vec<Valuation> {
        self.maximal_within(&premises.truth_set(&self.table)).into_iter().map(|v| self.valuation(v)).collect()
    }

    /// `α` is true in every maximal model of `Δ` (vacuously so if there are none).
    pub fn pref_entails(&self, premises: &PremiseSet, alpha: &Formula) -> bool {
        self.maximal_models(premises).into_iter().all(|v| alpha.evaluate(&self.table, v))
    }

    /// For a model `v` of `Δ`, a maximal model equal to or preferred over
    /// `v`. `None` if `v` is not a model of `Δ` in the universe.
    pub fn smoothness_witness(&self, premises: &PremiseSet, v: Valuation) -> Option<Valuation> {
        let models = self.models_in_universe(premises);
        let mut current = v.index();
        if !models.contains(&current) {
            return None;
        }
        // strict order over a finite set: each step strictly climbs, so this terminates
        while let Some(better) = self
            .preferred_over
            .get(&current)
            .and_then(|b| b.iter().copied().find(|x| models.contains(x)))
        {
            current = better;
        }
        Some(self.valuation(current))
    }

    /// `x ≻ y ⇒ p(x) ≥ p(y)` on every edge.
    pub fn is_order_preserving(&self, model: &WorldModel) -> bool {
        self.edges.iter().all(|&(x, y)| model.probs()[x] >= model.probs()[y])
    }

    /// Every pair of distinct elements is comparable.
    pub fn is_total(&self) -> bool {
        let elems: Vec<usize> = self.universe.iter().copied().collect();
        elems.iter().enumerate().all(|(i, &x)| {
            elems[i + 1..].iter().all(|&y| self.prefers(x, y) || self.prefers(y, x))
        })
    }

    fn valuation(&self, index: usize) -> Valuation {
        self.table.valuation(index).expect("universe indices are validated")
    }
}

fn transitive_closure(edges: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(x, y) in edges {
        succ.entry(x).or_default().push(y);
    }
    let mut closed = BTreeSet::new();
    for &start in succ.keys() {
        let mut stack = succ[&start].clone();
        let mut seen = BTreeSet::new();
        while let Some(y) = stack.pop() {
            if seen.insert(y) {
                closed.insert((start, y));
                if let Some(next) = succ.get(&y) {
                    stack.extend(next.iter().copied());
                }
            }
        }
    }
    closed
}
