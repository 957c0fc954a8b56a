mod common;

use std::collections::BTreeSet;

use bayesent::audit::{random_preferential, random_total_order};
use bayesent::preferential::validate;
use bayesent::{map_entails, Formula, MapMode, PreferentialStructure, PremiseSet, Rational, SymbolTable, WorldModel};
use common::{gen, names};
use proptest::prelude::*;

fn ab() -> Vec<String> {
    names(&["a", "b"])
}

fn set(fs: &[Formula]) -> PremiseSet {
    fs.iter().cloned().collect()
}

/// A random acyclic edge set: pairs consistent with a shuffled order.
fn dag(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<(usize, usize)>)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)).prop_map(
        move |(order, picks)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if picks[k] {
                        edges.push((order[i], order[j]));
                    }
                    k += 1;
                }
            }
            (order, edges)
        },
    )
}

proptest! {
    #[test]
    fn closure_gives_a_valid_order((_, edges) in dag(8)) {
        let table = SymbolTable::new(["a", "b", "c"]).unwrap();
        let universe: BTreeSet<usize> = (0..8).collect();
        let (s, added) = PreferentialStructure::from_hasse(table.clone(), universe.clone(), edges.iter().copied().collect()).unwrap();
        prop_assert!(validate(&table, &universe, s.edges()).is_ok());
        let reference = common::closure(8, &edges);
        for x in 0..8 {
            for y in 0..8 {
                prop_assert_eq!(s.prefers(x, y), reference[x][y]);
            }
        }
        for e in added {
            prop_assert!(!edges.contains(&e));
        }
    }

    #[test]
    fn maximal_models_match_brute_force(
        (_, edges) in dag(8),
        keep in prop::collection::vec(any::<bool>(), 8),
        d in gen::premises(names(&["a", "b", "c"]), 3),
        a in gen::formula(names(&["a", "b", "c"]), 3),
    ) {
        let n = names(&["a", "b", "c"]);
        let table = SymbolTable::new(&n).unwrap();
        let universe: BTreeSet<usize> = (0..8).filter(|&i| keep[i]).collect();
        let inside: Vec<(usize, usize)> = edges.iter().copied().filter(|(x, y)| universe.contains(x) && universe.contains(y)).collect();
        let (s, _) = PreferentialStructure::from_hasse(table, universe.clone(), inside.iter().copied().collect()).unwrap();
        let reference = common::closure(8, &inside);
        let expected = common::maximal_rows(&n, &universe, |x, y| reference[x][y], &d);
        let given = set(&d);
        let got: Vec<usize> = s.maximal_models(&given).iter().map(|v| v.index()).collect();
        prop_assert_eq!(&got, &expected);
        prop_assert_eq!(s.pref_entails(&given, &a), expected.iter().all(|&r| common::eval(&a, &n, r)));
        // smoothness: every model climbs to a maximal one
        for &v in universe.iter().filter(|&&v| common::sat_all(&d, &n, v)) {
            let w = s.smoothness_witness(&given, s.table().valuation(v).unwrap()).unwrap();
            prop_assert!(expected.contains(&w.index()));
            prop_assert!(w.index() == v || s.prefers(w.index(), v));
        }
    }

    #[test]
    fn preferential_inside_map_for_injective_p(seed in any::<u64>(), d in gen::premises(ab(), 2), a in gen::formula(ab(), 3)) {
        let (s, m) = random_preferential(&SymbolTable::new(ab()).unwrap(), seed);
        let given = set(&d);
        if s.pref_entails(&given, &a) {
            prop_assert!(map_entails(&m, &given, &a, MapMode::Universal).holds);
        }
    }

    #[test]
    fn preferential_inside_existential_map_with_ties(
        (order, edges) in dag(4),
        steps in prop::collection::vec(0u32..3, 4),
        d in gen::premises(ab(), 2),
        a in gen::formula(ab(), 3),
    ) {
        // weights non-increasing along the linear extension: ties allowed, zeros allowed
        let mut level = 10u32;
        let mut w = vec![0u32; 4];
        for (k, &v) in order.iter().enumerate() {
            w[v] = level;
            level = level.saturating_sub(steps[k]);
        }
        let table = SymbolTable::new(ab()).unwrap();
        let m = WorldModel::new(table.clone(), gen::normalize(&w)).unwrap();
        let (s, _) = PreferentialStructure::from_hasse(table, (0..4).collect(), edges.into_iter().collect()).unwrap();
        prop_assert!(s.is_order_preserving(&m));
        let given = set(&d);
        if s.pref_entails(&given, &a) {
            prop_assert!(map_entails(&m, &given, &a, MapMode::Existential).holds);
        }
    }

    #[test]
    fn total_order_makes_them_equal(seed in any::<u64>(), d in gen::premises(ab(), 2), a in gen::formula(ab(), 3)) {
        let (s, m) = random_total_order(&SymbolTable::new(ab()).unwrap(), seed);
        let given = set(&d);
        prop_assert_eq!(s.pref_entails(&given, &a), map_entails(&m, &given, &a, MapMode::Universal).holds);
    }
}

#[test]
fn ties_break_the_universal_reading() {
    // v1 ≻ v2 with p(v1) = p(v2): Δ = ∅ has the single maximal model v1,
    // but two MAP estimates, so ¬a is preferred yet not universally MAP
    let table = SymbolTable::new(["a"]).unwrap();
    let half = Rational::new(1.into(), 2.into());
    let m = WorldModel::new(table.clone(), vec![half.clone(), half]).unwrap();
    let s = PreferentialStructure::total_order(table.clone(), &[0, 1]).unwrap();
    let not_a = Formula::neg(Formula::atom("a"));
    let none = PremiseSet::empty();
    assert!(s.is_order_preserving(&m));
    assert!(s.pref_entails(&none, &not_a));
    assert!(!map_entails(&m, &none, &not_a, MapMode::Universal).holds);
    assert!(map_entails(&m, &none, &not_a, MapMode::Existential).holds);
}
