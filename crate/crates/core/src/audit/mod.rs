//! Mechanical checking of consequence-relation properties.
//!
//! A [`ConsequenceOracle`] pairs the relation under audit (`|~`) with a
//! monotonic base (`⊢`). Properties are instantiated exhaustively over a
//! finite [`FormulaPool`]; a pass means "no counterexample within the pool",
//! never a proof for the whole language.

mod generate;
mod oracle;
mod pool;
mod property;

use thiserror::Error;

use crate::rational::Rational;

pub use generate::{
    cut_counterexample_world, monotony_counterexample_world, omega_grid, random_preferential, random_total_order,
    random_world,
};
pub use oracle::{Bayes, BaseMode, Classical, ConsequenceOracle, Map, Preferential, Relation};
pub use pool::{enumerate_pool, FormulaPool, MAX_POOL_DEPTH, MAX_POOL_SYMBOLS};
pub use property::{check_property, AuditReport, Auditor, Counterexample, Judgment, Property, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("pool over {symbols} symbols at depth {depth} exceeds the cap ({MAX_POOL_SYMBOLS} symbols, depth {MAX_POOL_DEPTH})")]
    PoolCap { symbols: usize, depth: usize },
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("threshold {0} must satisfy 1/2 < omega < 1")]
    ThresholdRange(Rational),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entail::Threshold;
    use crate::formula::{Formula, SymbolTable};
    use crate::rational::ratio;
    use crate::worlds::WorldModel;

    fn ab() -> SymbolTable {
        SymbolTable::new(["a", "b"]).unwrap()
    }

    fn omega(n: i64, d: i64) -> Threshold {
        Threshold::new(ratio(n, d)).unwrap()
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert_eq!("classical-cut".parse::<Property>().unwrap(), Property::ClassicalCut);
        assert_eq!(
            "flying-pigs".parse::<Property>(),
            Err(AuditError::UnknownProperty("flying-pigs".into()))
        );
    }

    #[test]
    fn monotony_counterexample_at_four_fifths() {
        let pool = enumerate_pool(&ab(), 2).unwrap();
        let world = monotony_counterexample_world(&omega(4, 5)).unwrap();
        let oracle = ConsequenceOracle::bayes(world, omega(4, 5), BaseMode::SupportRelative);
        let report = check_property(&oracle, Property::Monotony, &pool, 2);
        let cx = report.counterexample.as_ref().expect("monotony fails");
        assert!(cx.premises.is_empty());
        assert_eq!(cx.alpha, Formula::atom("a"));
        assert_eq!(cx.beta, Some(Formula::atom("b")));
        assert!(cx.replay(&oracle));
        let probs: Vec<_> = cx.trace.iter().map(|j| j.probability.clone()).collect();
        assert_eq!(probs, vec![Some(ratio(4, 5)), Some(ratio(3, 4))]);
    }

    #[test]
    fn cut_counterexample_at_four_fifths() {
        let pool = enumerate_pool(&ab(), 2).unwrap();
        let world = cut_counterexample_world(&omega(4, 5)).unwrap();
        let oracle = ConsequenceOracle::bayes(world, omega(4, 5), BaseMode::SupportRelative);
        let report = check_property(&oracle, Property::Cut, &pool, 2);
        let cx = report.counterexample.as_ref().expect("cut fails");
        assert!(cx.premises.is_empty());
        assert_eq!(cx.beta, Some(Formula::atom("a")));
        assert_eq!(cx.alpha, Formula::and(Formula::atom("a"), Formula::atom("b")));
        assert!(cx.replay(&oracle));
        let last = cx.trace.last().unwrap();
        assert_eq!(last.probability, Some(ratio(16, 25)));
        assert!(!last.holds);
    }

    #[test]
    fn omega_one_is_monotonic() {
        let pool = enumerate_pool(&ab(), 2).unwrap();
        let world = WorldModel::new(ab(), vec![ratio(1, 2), ratio(1, 5), ratio(0, 1), ratio(3, 10)]).unwrap();
        let oracle = ConsequenceOracle::bayes(world, Threshold::one(), BaseMode::Strict);
        let auditor = Auditor::new(&oracle, &pool, 2);
        for p in [Property::Reflexivity, Property::Monotony, Property::Cut] {
            let report = auditor.check(p);
            assert!(report.passed(), "{p}: {:?}", report.counterexample);
            assert!(report.cases_checked > 0);
        }
    }

    #[test]
    fn classical_relation_passes_everything() {
        let pool = enumerate_pool(&ab(), 1).unwrap();
        let oracle = ConsequenceOracle::classical(ab());
        let auditor = Auditor::new(&oracle, &pool, 1);
        for p in Property::ALL {
            assert!(auditor.check(p).passed(), "{p}");
        }
    }

    #[test]
    fn case_counts_follow_the_quantifiers() {
        let t = SymbolTable::new(["a"]).unwrap();
        let pool = enumerate_pool(&t, 1).unwrap(); // 4 formulas
        let oracle = ConsequenceOracle::classical(t);
        // premise sets of size ≤ 1: 1 + 4 = 5
        assert_eq!(check_property(&oracle, Property::Reflexivity, &pool, 1).cases_checked, 5 * 4);
        assert_eq!(check_property(&oracle, Property::Cut, &pool, 1).cases_checked, 5 * 16);
        assert_eq!(check_property(&oracle, Property::Or, &pool, 1).cases_checked, 5 * 64);
    }

    #[test]
    fn report_json_shape() {
        let pool = enumerate_pool(&ab(), 2).unwrap();
        let world = monotony_counterexample_world(&omega(4, 5)).unwrap();
        let oracle = ConsequenceOracle::bayes(world, omega(4, 5), BaseMode::Strict);
        let json = check_property(&oracle, Property::Monotony, &pool, 1).to_json();
        assert_eq!(json["property"], "monotony");
        assert_eq!(json["verdict"], "counterexample");
        assert_eq!(json["counterexample"]["alpha"], "a");
        assert_eq!(json["counterexample"]["beta"], "b");
        assert_eq!(json["counterexample"]["trace"][1]["probability"], "3/4");
    }
}
