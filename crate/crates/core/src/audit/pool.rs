use std::collections::HashSet;

use crate::formula::{Formula, SymbolTable, TruthSet};

use super::AuditError;

pub const MAX_POOL_SYMBOLS: usize = 3;
pub const MAX_POOL_DEPTH: usize = 3;

/// A finite stand-in for the language: one representative formula per
/// truth table reachable within a depth bound.
#[derive(Debug, Clone)]
pub struct FormulaPool {
    table: SymbolTable,
    max_depth: usize,
    formulas: Vec<Formula>,
    truth: Vec<TruthSet>,
}

impl FormulaPool {
    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn truth_sets(&self) -> &[TruthSet] {
        &self.truth
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn get(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    /// Index of the pool member with the same truth table as `f`, if any.
    pub fn position_equivalent(&self, f: &Formula) -> Option<usize> {
        let set = f.truth_set(&self.table);
        self.truth.iter().position(|t| *t == set)
    }

    fn push_if_new(&mut self, seen: &mut HashSet<TruthSet>, f: Formula) {
        let set = f.truth_set(&self.table);
        if seen.insert(set.clone()) {
            self.formulas.push(f);
            self.truth.push(set);
        }
    }
}

fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Top => Formula::Bottom,
        Formula::Bottom => Formula::Top,
        Formula::Not(inner) => (**inner).clone(),
        other => Formula::neg(other.clone()),
    }
}

/// Formulas over `¬, ∧, ∨` up to `max_depth`, deduplicated by truth table.
///
/// Level 0 holds the constants and the atoms. Level `d + 1` adds the
/// negations of level-`d` formulas and every conjunction and disjunction of
/// two level-`d` formulas or their negations. Representatives are the first
/// formula found for each truth table, so shallower spellings win.
pub fn enumerate_pool(table: &SymbolTable, max_depth: usize) -> Result<FormulaPool, AuditError> {
    if table.len() > MAX_POOL_SYMBOLS || max_depth > MAX_POOL_DEPTH {
        return Err(AuditError::PoolCap { symbols: table.len(), depth: max_depth });
    }
    let mut pool = FormulaPool { table: table.clone(), max_depth, formulas: Vec::new(), truth: Vec::new() };
    let mut seen = HashSet::new();
    pool.push_if_new(&mut seen, Formula::Top);
    pool.push_if_new(&mut seen, Formula::Bottom);
    for name in table.names() {
        pool.push_if_new(&mut seen, Formula::atom(name.clone()));
    }

    let all_functions = 1usize.checked_shl(table.valuation_count() as u32).unwrap_or(usize::MAX);
    for _ in 0..max_depth {
        if pool.len() >= all_functions {
            break;
        }
        let previous = pool.formulas.clone();
        let literals: Vec<Formula> = previous.iter().cloned().chain(previous.iter().map(negate)).collect();
        for f in &previous {
            pool.push_if_new(&mut seen, negate(f));
        }
        for (i, l) in literals.iter().enumerate() {
            for r in &literals[i + 1..] {
                pool.push_if_new(&mut seen, Formula::and(l.clone(), r.clone()));
                pool.push_if_new(&mut seen, Formula::or(l.clone(), r.clone()));
            }
        }
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_symbol_depth_one_has_four_functions() {
        let t = SymbolTable::new(["a"]).unwrap();
        let pool = enumerate_pool(&t, 1).unwrap();
        let rendered: Vec<String> = pool.formulas().iter().map(ToString::to_string).collect();
        assert_eq!(rendered, vec!["true", "false", "a", "~a"]);
    }

    #[test]
    fn depth_zero_is_atoms_and_constants() {
        let t = SymbolTable::new(["a", "b"]).unwrap();
        let pool = enumerate_pool(&t, 0).unwrap();
        assert_eq!(pool.formulas(), &[Formula::Top, Formula::Bottom, Formula::atom("a"), Formula::atom("b")]);
    }

    #[test]
    fn caps_are_enforced() {
        let t4 = SymbolTable::new(["a", "b", "c", "d"]).unwrap();
        assert!(matches!(enumerate_pool(&t4, 1), Err(AuditError::PoolCap { .. })));
        let t = SymbolTable::new(["a"]).unwrap();
        assert!(matches!(enumerate_pool(&t, 4), Err(AuditError::PoolCap { .. })));
    }

    #[test]
    fn representatives_are_unique_per_truth_table() {
        let t = SymbolTable::new(["a", "b", "c"]).unwrap();
        let pool = enumerate_pool(&t, 2).unwrap();
        let distinct: HashSet<_> = pool.truth_sets().iter().collect();
        assert_eq!(distinct.len(), pool.len());
        for (f, set) in pool.formulas().iter().zip(pool.truth_sets()) {
            assert_eq!(&f.truth_set(&t), set);
        }
    }
}
