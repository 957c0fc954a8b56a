use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::formula::{Formula, TruthSet};
use crate::rational::{format_rational, Rational};
use crate::worlds::PremiseSet;

use super::oracle::ConsequenceOracle;
use super::pool::FormulaPool;
use super::AuditError;

/// The consequence-relation properties the auditor knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Reflexivity,
    Monotony,
    Cut,
    Supraclassicality,
    CautiousMonotony,
    ClassicalCautiousMonotony,
    ClassicalCut,
    Or,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Reflexivity,
        Property::Monotony,
        Property::Cut,
        Property::Supraclassicality,
        Property::CautiousMonotony,
        Property::ClassicalCautiousMonotony,
        Property::ClassicalCut,
        Property::Or,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Reflexivity => "reflexivity",
            Property::Monotony => "monotony",
            Property::Cut => "cut",
            Property::Supraclassicality => "supraclassicality",
            Property::CautiousMonotony => "cautious_monotony",
            Property::ClassicalCautiousMonotony => "classical_cautious_monotony",
            Property::ClassicalCut => "classical_cut",
            Property::Or => "or",
        }
    }

    /// Number of quantified formula variables besides `Δ`.
    fn arity(self) -> usize {
        match self {
            Property::Reflexivity | Property::Supraclassicality => 1,
            Property::Or => 3,
            _ => 2,
        }
    }

    /// Antecedent judgments and the consequent they must force.
    fn shape(self) -> (Vec<Judge>, Judge) {
        use Ext::*;
        use Role::*;
        use Var::*;
        fn j(role: Role, ext: Ext, concl: Var) -> Judge {
            Judge { role, ext, concl }
        }
        match self {
            // Δ,α |~ α
            Property::Reflexivity => (vec![], j(Query, With(Alpha), Alpha)),
            // Δ |~ α  ⇒  Δ,β |~ α
            Property::Monotony => (vec![j(Query, Plain, Alpha)], j(Query, With(Beta), Alpha)),
            // Δ |~ β, Δ,β |~ α  ⇒  Δ |~ α
            Property::Cut => (vec![j(Query, Plain, Beta), j(Query, With(Beta), Alpha)], j(Query, Plain, Alpha)),
            // Δ ⊢ α  ⇒  Δ |~ α
            Property::Supraclassicality => (vec![j(Base, Plain, Alpha)], j(Query, Plain, Alpha)),
            // Δ |~ β, Δ |~ α  ⇒  Δ,β |~ α
            Property::CautiousMonotony => {
                (vec![j(Query, Plain, Beta), j(Query, Plain, Alpha)], j(Query, With(Beta), Alpha))
            }
            // Δ ⊢ β, Δ |~ α  ⇒  Δ,β |~ α
            Property::ClassicalCautiousMonotony => {
                (vec![j(Base, Plain, Beta), j(Query, Plain, Alpha)], j(Query, With(Beta), Alpha))
            }
            // Δ ⊢ β, Δ,β |~ α  ⇒  Δ |~ α
            Property::ClassicalCut => (vec![j(Base, Plain, Beta), j(Query, With(Beta), Alpha)], j(Query, Plain, Alpha)),
            // Δ,α |~ γ, Δ,β |~ γ  ⇒  Δ,α∨β |~ γ
            Property::Or => (vec![j(Query, With(Alpha), Gamma), j(Query, With(Beta), Gamma)], j(Query, WithDisjunction, Gamma)),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = AuditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.replace('-', "_");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == normalized)
            .ok_or_else(|| AuditError::UnknownProperty(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// The relation under audit, `|~`.
    Query,
    /// The monotonic base, `⊢`.
    Base,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ext {
    Plain,
    With(Var),
    WithDisjunction,
}

#[derive(Debug, Clone, Copy)]
struct Judge {
    role: Role,
    ext: Ext,
    concl: Var,
}

/// One evaluated judgment inside a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub role: Role,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub holds: bool,
    pub probability: Option<Rational>,
}

/// A property instance whose antecedents hold and whose consequent fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub property: Property,
    pub premises: Vec<Formula>,
    pub alpha: Formula,
    pub beta: Option<Formula>,
    pub gamma: Option<Formula>,
    /// Antecedents first, consequent last.
    pub trace: Vec<Judgment>,
}

impl Counterexample {
    fn var(&self, v: Var) -> &Formula {
        match v {
            Var::Alpha => &self.alpha,
            Var::Beta => self.beta.as_ref().expect("property binds beta"),
            Var::Gamma => self.gamma.as_ref().expect("property binds gamma"),
        }
    }

    fn judge(&self, oracle: &ConsequenceOracle, j: Judge) -> Judgment {
        let base: PremiseSet = self.premises.iter().cloned().collect();
        let premises = match j.ext {
            Ext::Plain => base,
            Ext::With(v) => base.with(self.var(v).clone()),
            Ext::WithDisjunction => base.with(Formula::or(self.alpha.clone(), self.var(Var::Beta).clone())),
        };
        let conclusion = self.var(j.concl).clone();
        let relation = match j.role {
            Role::Query => &oracle.query,
            Role::Base => &oracle.base,
        };
        Judgment {
            role: j.role,
            holds: relation.holds(&premises, &conclusion),
            probability: relation.probability(&premises, &conclusion),
            premises: premises.iter().cloned().collect(),
            conclusion,
        }
    }

    fn evaluate(&self, oracle: &ConsequenceOracle) -> Vec<Judgment> {
        let (antecedents, consequent) = self.property.shape();
        antecedents.iter().chain(std::iter::once(&consequent)).map(|&j| self.judge(oracle, j)).collect()
    }

    /// Re-evaluates the instance from scratch; true iff it is still a
    /// violation (all antecedents hold, the consequent fails).
    pub fn replay(&self, oracle: &ConsequenceOracle) -> bool {
        let trace = self.evaluate(oracle);
        let (consequent, antecedents) = trace.split_last().expect("consequent present");
        antecedents.iter().all(|j| j.holds) && !consequent.holds
    }

    pub fn to_json(&self) -> Value {
        let fs = |v: &[Formula]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|j| {
                json!({
                    "relation": match j.role { Role::Query => "query", Role::Base => "base" },
                    "premises": fs(&j.premises),
                    "conclusion": j.conclusion.to_string(),
                    "holds": j.holds,
                    "probability": j.probability.as_ref().map(format_rational),
                })
            })
            .collect();
        json!({
            "premises": fs(&self.premises),
            "alpha": self.alpha.to_string(),
            "beta": self.beta.as_ref().map(ToString::to_string),
            "gamma": self.gamma.as_ref().map(ToString::to_string),
            "trace": trace,
        })
    }
}

/// Result of auditing one property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub property: Property,
    pub oracle: String,
    pub cases_checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.name(),
            "oracle": self.oracle,
            "verdict": if self.passed() { "pass" } else { "counterexample" },
            "cases_checked": self.cases_checked,
            "note": if self.passed() { Some("no counterexample within pool") } else { None },
            "counterexample": self.counterexample.as_ref().map(Counterexample::to_json),
        })
    }
}

const UNKNOWN: u8 = 0;
const NO: u8 = 1;
const YES: u8 = 2;

/// Exhaustive property checker over one oracle and one pool.
///
/// Premise sets are subsets of the pool with at most `cap` members,
/// enumerated by size and then lexicographically; within a premise set the
/// formula variables run over the pool in order. Judgments are memoized per
/// (premise set, conclusion), and behind that per (models of the premises,
/// conclusion), so repeated properties and equivalent premise sets share work.
pub struct Auditor<'a> {
    oracle: &'a ConsequenceOracle,
    pool: &'a FormulaPool,
    cap: usize,
    ids: RefCell<HashMap<Vec<u16>, u32>>,
    sets: RefCell<Vec<Vec<u16>>>,
    models: RefCell<Vec<TruthSet>>,
    query: RefCell<Vec<u8>>,
    base: RefCell<Vec<u8>>,
    semantic_query: RefCell<HashMap<TruthSet, Vec<u8>>>,
    semantic_base: RefCell<HashMap<TruthSet, Vec<u8>>>,
}

impl<'a> Auditor<'a> {
    pub fn new(oracle: &'a ConsequenceOracle, pool: &'a FormulaPool, cap: usize) -> Self {
        assert!(pool.len() <= u16::MAX as usize, "pool too large to index");
        Self {
            oracle,
            pool,
            cap,
            ids: RefCell::default(),
            sets: RefCell::default(),
            models: RefCell::default(),
            query: RefCell::default(),
            base: RefCell::default(),
            semantic_query: RefCell::default(),
            semantic_base: RefCell::default(),
        }
    }

    fn intern(&self, set: Vec<u16>) -> u32 {
        if let Some(&id) = self.ids.borrow().get(&set) {
            return id;
        }
        let mut sets = self.sets.borrow_mut();
        let id = sets.len() as u32;
        let width = self.pool.table().len();
        let models = set.iter().fold(TruthSet::full(width), |mut acc, &f| {
            acc.intersect_with(&self.pool.truth_sets()[f as usize]);
            acc
        });
        self.models.borrow_mut().push(models);
        sets.push(set.clone());
        self.ids.borrow_mut().insert(set, id);
        let cells = sets.len() * self.pool.len();
        self.query.borrow_mut().resize(cells, UNKNOWN);
        self.base.borrow_mut().resize(cells, UNKNOWN);
        id
    }

    fn extended(&self, set: &[u16], f: u16) -> u32 {
        let mut v = set.to_vec();
        if let Err(pos) = v.binary_search(&f) {
            v.insert(pos, f);
        }
        self.intern(v)
    }

    fn judge(&self, role: Role, set: u32, concl: usize) -> bool {
        let cache = match role {
            Role::Query => &self.query,
            Role::Base => &self.base,
        };
        let cell = set as usize * self.pool.len() + concl;
        match cache.borrow()[cell] {
            YES => return true,
            NO => return false,
            _ => {}
        }
        let models = self.models.borrow()[set as usize].clone();
        let holds = self.judge_models(role, models, concl);
        cache.borrow_mut()[cell] = if holds { YES } else { NO };
        holds
    }

    fn judge_models(&self, role: Role, models: TruthSet, concl: usize) -> bool {
        let (cache, relation) = match role {
            Role::Query => (&self.semantic_query, &self.oracle.query),
            Role::Base => (&self.semantic_base, &self.oracle.base),
        };
        if let Some(&known) = cache.borrow().get(&models).map(|row| &row[concl]) {
            if known != UNKNOWN {
                return known == YES;
            }
        }
        let holds = relation.holds_on(&models, &self.pool.truth_sets()[concl]);
        let n = self.pool.len();
        cache.borrow_mut().entry(models).or_insert_with(|| vec![UNKNOWN; n])[concl] = if holds { YES } else { NO };
        holds
    }

    /// Premise sets of size ≤ cap in enumeration order.
    fn base_sets(&self) -> Vec<Vec<u16>> {
        let n = self.pool.len() as u16;
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..self.cap {
            let mut next = Vec::new();
            for set in &frontier {
                let start = set.last().map_or(0, |&l: &u16| l + 1);
                for f in start..n {
                    let mut s: Vec<u16> = set.clone();
                    s.push(f);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn check(&self, property: Property) -> AuditReport {
        let (antecedents, consequent) = property.shape();
        let n = self.pool.len();
        let arity = property.arity();
        let mut cases = 0u64;

        for set in self.base_sets() {
            let plain = self.intern(set.clone());
            let with: Vec<u32> = (0..n).map(|f| self.extended(&set, f as u16)).collect();
            let betas = if arity >= 2 { n } else { 1 };
            let gammas = if arity >= 3 { n } else { 1 };
            for alpha in 0..n {
                for beta in 0..betas {
                    for gamma in 0..gammas {
                        cases += 1;
                        let vars = [alpha, beta, gamma];
                        let eval = |j: &Judge| -> bool {
                            let concl = vars[j.concl as usize];
                            match j.ext {
                                Ext::Plain => self.judge(j.role, plain, concl),
                                Ext::With(v) => self.judge(j.role, with[vars[v as usize]], concl),
                                Ext::WithDisjunction => {
                                    let truth = self.pool.truth_sets();
                                    let either = truth[alpha].union(&truth[beta]);
                                    let models = self.models.borrow()[plain as usize].intersection(&either);
                                    self.judge_models(j.role, models, concl)
                                }
                            }
                        };
                        if antecedents.iter().all(|j| eval(j)) && !eval(&consequent) {
                            let mut cx = Counterexample {
                                property,
                                premises: set.iter().map(|&i| self.pool.get(i as usize).clone()).collect(),
                                alpha: self.pool.get(alpha).clone(),
                                beta: (arity >= 2).then(|| self.pool.get(beta).clone()),
                                gamma: (arity >= 3).then(|| self.pool.get(gamma).clone()),
                                trace: Vec::new(),
                            };
                            cx.trace = cx.evaluate(self.oracle);
                            return AuditReport {
                                property,
                                oracle: self.oracle.label.clone(),
                                cases_checked: cases,
                                counterexample: Some(cx),
                            };
                        }
                    }
                }
            }
        }
        AuditReport { property, oracle: self.oracle.label.clone(), cases_checked: cases, counterexample: None }
    }
}

/// Exhaustively checks one property; the first violation in enumeration
/// order is reported with its full trace.
pub fn check_property(
    oracle: &ConsequenceOracle,
    property: Property,
    pool: &FormulaPool,
    premise_size_cap: usize,
) -> AuditReport {
    Auditor::new(oracle, pool, premise_size_cap).check(property)
}
