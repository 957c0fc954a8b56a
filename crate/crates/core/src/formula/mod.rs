//! Propositional sentences: symbol tables, valuations, the formula AST and
//! its classical truth-value semantics.
//!
//! Valuations are indexed as bit patterns over the ordered symbol table with
//! `symbols[0]` as the most significant bit, so for the table `[a, b]` the
//! indices 0..4 enumerate `(a,b) = (0,0), (0,1), (1,0), (1,1)`. That is the
//! conventional truth-table row order (v1..v4 when counted from one).

mod parser;
mod truth;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parser::parse_formula;
pub use truth::TruthSet;

/// Hard cap on the number of symbols; enumeration is exhaustive over 2^n.
pub const MAX_SYMBOLS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("invalid symbol name `{0}` (expected [a-z][a-z0-9_]*)")]
    InvalidSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("{0} symbols exceed the cap of {MAX_SYMBOLS}")]
    TooManySymbols(usize),
}

/// The ordered set of propositional symbols a model is defined over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolTable {
    names: Arc<[String]>,
}

pub(crate) fn is_valid_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') && !is_keyword(name)
}

pub(crate) fn is_keyword(name: &str) -> bool {
    name == "true" || name == "false"
}

impl SymbolTable {
    pub fn new<I, S>(names: I) -> Result<Self, FormulaError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_SYMBOLS {
            return Err(FormulaError::TooManySymbols(names.len()));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !is_valid_symbol(name) {
                return Err(FormulaError::InvalidSymbol(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(FormulaError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Self { names: names.into() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of valuations, 2^n.
    pub fn valuation_count(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn valuations(&self) -> impl Iterator<Item = Valuation> + '_ {
        let width = self.len();
        (0..self.valuation_count()).map(move |index| Valuation { index, width })
    }

    pub fn valuation(&self, index: usize) -> Option<Valuation> {
        (index < self.valuation_count()).then_some(Valuation { index, width: self.len() })
    }

    /// Builds a valuation from one truth bit per symbol, in table order.
    pub fn valuation_from_bits(&self, bits: &[bool]) -> Option<Valuation> {
        if bits.len() != self.len() {
            return None;
        }
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        Some(Valuation { index, width: self.len() })
    }

    /// Fails with the first atom of `formula` missing from the table.
    pub fn check(&self, formula: &Formula) -> Result<(), FormulaError> {
        match formula.atoms().into_iter().find(|a| self.position(a).is_none()) {
            Some(missing) => Err(FormulaError::UnknownAtom(missing)),
            None => Ok(()),
        }
    }

    /// `a=0,b=1` style rendering of a valuation.
    pub fn describe(&self, v: Valuation) -> String {
        self.names
            .iter()
            .enumerate()
            .map(|(i, name)| format!("{name}={}", u8::from(v.bit(i))))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// One assignment of truth values to every symbol of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    index: usize,
    width: usize,
}

impl Valuation {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn width(self) -> usize {
        self.width
    }

    /// Truth bit of the `i`-th symbol.
    pub fn bit(self, i: usize) -> bool {
        assert!(i < self.width, "symbol {i} out of range for width {}", self.width);
        (self.index >> (self.width - 1 - i)) & 1 == 1
    }

    pub fn bits(self) -> Vec<bool> {
        (0..self.width).map(|i| self.bit(i)).collect()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.index + 1)
    }
}

/// A propositional sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Truth value under `v`.
    ///
    /// # Panics
    ///
    /// If an atom of the formula is not in `table`.
    pub fn evaluate(&self, table: &SymbolTable, v: Valuation) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(name) => {
                let i = table
                    .position(name)
                    .unwrap_or_else(|| panic!("atom `{name}` is not in the symbol table"));
                v.bit(i)
            }
            Formula::Not(f) => !f.evaluate(table, v),
            Formula::And(l, r) => l.evaluate(table, v) && r.evaluate(table, v),
            Formula::Or(l, r) => l.evaluate(table, v) || r.evaluate(table, v),
            // abbreviations: ¬l ∨ r, and (l→r) ∧ (r→l)
            Formula::Implies(l, r) => !l.evaluate(table, v) || r.evaluate(table, v),
            Formula::Iff(l, r) => l.evaluate(table, v) == r.evaluate(table, v),
        }
    }

    /// The set of valuations in which the formula is true.
    ///
    /// # Panics
    ///
    /// If an atom of the formula is not in `table`.
    pub fn truth_set(&self, table: &SymbolTable) -> TruthSet {
        self.try_truth_set(table).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_truth_set(&self, table: &SymbolTable) -> Result<TruthSet, FormulaError> {
        let n = table.len();
        Ok(match self {
            Formula::Top => TruthSet::full(n),
            Formula::Bottom => TruthSet::empty(n),
            Formula::Atom(name) => {
                let i = table
                    .position(name)
                    .ok_or_else(|| FormulaError::UnknownAtom(name.clone()))?;
                TruthSet::atom(n, i)
            }
            Formula::Not(f) => f.try_truth_set(table)?.complement(),
            Formula::And(l, r) => l.try_truth_set(table)?.intersection(&r.try_truth_set(table)?),
            Formula::Or(l, r) => l.try_truth_set(table)?.union(&r.try_truth_set(table)?),
            Formula::Implies(l, r) => l.try_truth_set(table)?.complement().union(&r.try_truth_set(table)?),
            Formula::Iff(l, r) => {
                let (l, r) = (l.try_truth_set(table)?, r.try_truth_set(table)?);
                l.intersection(&r).union(&l.complement().intersection(&r.complement()))
            }
        })
    }

    /// Names of the atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 6,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, node: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({node})")
            } else {
                write!(f, "{node}")
            }
        }
        let prec = self.precedence();
        match self {
            Formula::Top => write!(f, "true"),
            Formula::Bottom => write!(f, "false"),
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Not(inner) => {
                write!(f, "~")?;
                child(f, inner, inner.precedence() < prec)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Iff(l, r) => {
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    _ => "<->",
                };
                // left-associative
                child(f, l, l.precedence() < prec)?;
                write!(f, " {op} ")?;
                child(f, r, r.precedence() <= prec)
            }
            Formula::Implies(l, r) => {
                // right-associative
                child(f, l, l.precedence() <= prec)?;
                write!(f, " -> ")?;
                child(f, r, r.precedence() < prec)
            }
        }
    }
}
