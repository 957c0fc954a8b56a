//! proptest strategies for formulas and world models.

use bayesent::{Formula, Rational, SymbolTable, WorldModel};
use proptest::prelude::*;
use proptest::sample::select;

pub fn formula(names: Vec<String>, depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        6 => select(names).prop_map(Formula::Atom),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::iff(l, r)),
        ]
    })
    .boxed()
}

/// Non-negative integer weights over `2^n` rows, not all zero; roughly a
/// third of the rows are zero.
pub fn weights(rows: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(prop_oneof![1 => Just(0u32), 2 => 1u32..20], rows)
        .prop_filter("some mass", |w| w.iter().any(|&x| x > 0))
}

pub fn normalize(w: &[u32]) -> Vec<Rational> {
    let total: u32 = w.iter().sum();
    w.iter().map(|&x| Rational::new(x.into(), total.into())).collect()
}

pub fn world(names: &[String]) -> impl Strategy<Value = WorldModel> {
    let table = SymbolTable::new(names).unwrap();
    weights(table.valuation_count()).prop_map(move |w| WorldModel::new(table.clone(), normalize(&w)).unwrap())
}

pub fn premises(names: Vec<String>, max: usize) -> impl Strategy<Value = Vec<Formula>> {
    prop::collection::vec(formula(names, 2), 0..=max)
}
