mod common;

use bayesent::{parse_formula, Formula, PremiseSet, Rational, SymbolTable, TemporalModel, Threshold, WorldModel};
use common::{brute_filter, gen, identity_matrix, names, r};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn set(fs: &[Formula]) -> PremiseSet {
    fs.iter().cloned().collect()
}

#[derive(Debug, Clone)]
struct Case {
    names: Vec<String>,
    prior: Vec<Rational>,
    transition: Vec<Vec<Rational>>,
    observations: Vec<Vec<Formula>>,
}

fn case() -> impl Strategy<Value = Case> {
    prop_oneof![Just(names(&["a"])), Just(names(&["a", "b"]))].prop_flat_map(|n| {
        let rows = 1usize << n.len();
        (
            gen::weights(rows),
            prop::collection::vec(gen::weights(rows), rows),
            prop::collection::vec(gen::premises(n.clone(), 2), 0..=4),
            Just(n),
        )
            .prop_map(|(p, t, obs, n)| Case {
                names: n,
                prior: gen::normalize(&p),
                transition: t.iter().map(|row| gen::normalize(row)).collect(),
                observations: obs,
            })
    })
}

fn model(c: &Case) -> TemporalModel {
    let prior = WorldModel::new(SymbolTable::new(&c.names).unwrap(), c.prior.clone()).unwrap();
    TemporalModel::new(prior, c.transition.clone()).unwrap()
}

proptest! {
    #[test]
    fn filter_matches_trajectory_enumeration(c in case()) {
        let m = model(&c);
        let obs: Vec<PremiseSet> = c.observations.iter().map(|o| set(o)).collect();
        let belief = m.run_filter(&obs);
        match brute_filter(&c.prior, &c.transition, &c.names, &c.observations) {
            Some(expected) => {
                prop_assert!(belief.alive);
                prop_assert_eq!(belief.weights, expected);
            }
            None => {
                prop_assert!(!belief.alive);
                prop_assert!(belief.weights.iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn beliefs_stay_normalized_and_death_is_final(c in case(), a in gen::formula(names(&["a"]), 2)) {
        let m = model(&c);
        let obs: Vec<PremiseSet> = c.observations.iter().map(|o| set(o)).collect();
        let mut dead = false;
        for b in m.trajectory(&obs) {
            if dead {
                prop_assert!(!b.alive);
            }
            if b.alive {
                prop_assert!(b.weights.iter().sum::<Rational>().is_one());
            } else {
                dead = true;
            }
        }
        let v = m.temporal_entails(&obs, &a, &Threshold::one());
        prop_assert_eq!(v.vacuous, dead);
        if dead {
            prop_assert!(v.holds);
        }
    }

    #[test]
    fn single_identity_step_is_static_conditioning(w in gen::weights(4), d in gen::premises(names(&["a", "b"]), 3), a in gen::formula(names(&["a", "b"]), 3)) {
        let table = SymbolTable::new(["a", "b"]).unwrap();
        let prior = WorldModel::new(table, gen::normalize(&w)).unwrap();
        let given = set(&d);
        let m = TemporalModel::identity(prior.clone());
        let half = Threshold::new(r(1, 2)).unwrap();
        let temporal = m.temporal_entails(std::slice::from_ref(&given), &a, &half);
        let stat = bayesent::bayes_entails(&prior, &given, &a, &half);
        prop_assert_eq!(temporal.holds, stat.holds);
        prop_assert_eq!(temporal.probability, stat.probability);
        prop_assert_eq!(temporal.vacuous, stat.vacuous);
        match prior.posterior(&given) {
            Some(post) => prop_assert_eq!(m.run_filter(std::slice::from_ref(&given)).weights, post),
            None => prop_assert!(!m.run_filter(std::slice::from_ref(&given)).alive),
        }
    }
}

#[test]
fn sticky_chain_against_enumeration() {
    let n = names(&["a"]);
    let table = SymbolTable::new(&n).unwrap();
    let prior = WorldModel::uniform(table.clone());
    let m = TemporalModel::sticky(prior, r(1, 10)).unwrap();
    let a = parse_formula("a", &table).unwrap();
    let not_a = parse_formula("~a", &table).unwrap();
    let raw = vec![vec![a.clone()], vec![a.clone()], vec![not_a]];
    let obs: Vec<PremiseSet> = raw.iter().map(|o| set(o)).collect();
    let expected = brute_filter(&[r(1, 2), r(1, 2)], m.transition(), &n, &raw).unwrap();
    assert_eq!(m.run_filter(&obs).weights, expected);
    let v = m.temporal_entails(&obs, &a, &Threshold::new(r(1, 2)).unwrap());
    // the last observation pins the state to a = 0
    assert_eq!(v.probability, Some(Rational::zero()));
    assert!(!v.holds);
    let two: Vec<PremiseSet> = obs[..2].to_vec();
    let expected = brute_filter(&[r(1, 2), r(1, 2)], m.transition(), &n, &raw[..2]).unwrap();
    assert_eq!(m.run_filter(&two).weights, expected);
    assert_eq!(expected, vec![Rational::zero(), Rational::one()]);
}

#[test]
fn empty_sequence_is_the_prior() {
    let table = SymbolTable::new(["a", "b"]).unwrap();
    let prior = WorldModel::new(table, vec![r(1, 2), r(1, 5), r(0, 1), r(3, 10)]).unwrap();
    let m = TemporalModel::new(prior.clone(), identity_matrix(4)).unwrap();
    assert_eq!(m.run_filter(&[]).weights, prior.probs());
}
