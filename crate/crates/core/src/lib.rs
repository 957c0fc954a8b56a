//! Exact entailment over finite sets of propositional valuations.
//!
//! A [`WorldModel`] assigns a rational probability to every valuation of a
//! [`SymbolTable`]. On top of it sit classical, Bayesian (`⊨_ω`), MAP and
//! preferential entailment, an auditor for consequence-relation properties,
//! and a forward filter over sequences of observations.

pub mod audit;
pub mod cli;
pub mod entail;
pub mod formula;
pub mod io;
pub mod preferential;
pub mod rational;
pub mod temporal;
pub mod worlds;

pub use entail::{bayes_entails, classical_entails, map_entails, map_set, MapMode, Threshold, Verdict};
pub use formula::{parse_formula, Formula, SymbolTable, TruthSet, Valuation};
pub use preferential::PreferentialStructure;
pub use rational::{format_rational, parse_rational, Rational};
pub use temporal::{BeliefState, TemporalModel};
pub use worlds::{PremiseSet, WorldModel};
