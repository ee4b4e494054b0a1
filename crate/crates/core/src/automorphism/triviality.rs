//! Word problem by section closure.
//!
//! A word is trivial iff every word reachable from it by repeatedly taking
//! (freely reduced) sections has identity root activity. For tables whose
//! sections are single letters the reachable words never grow, so the closure
//! is finite; for arbitrary tables a state budget bounds the search.

use std::collections::{HashSet, VecDeque};

use dashmap::DashMap;

use super::table::{RecursionTable, Word};
use crate::error::{Error, Result};

const CACHE_LIMIT: usize = 1 << 21;
const CACHED_WORD_LEN: usize = 96;

pub(crate) struct TrivialityOracle {
    budget: usize,
    // Entries are facts about words, so concurrent last-writer-wins inserts are harmless.
    cache: DashMap<Word, bool>,
}

impl TrivialityOracle {
    pub(crate) fn new(budget: usize) -> Self {
        TrivialityOracle {
            budget: budget.max(1),
            cache: DashMap::new(),
        }
    }

    pub(crate) fn budget(&self) -> usize {
        self.budget
    }

    fn remember(&self, word: &Word, trivial: bool) {
        if word.len() <= CACHED_WORD_LEN && self.cache.len() < CACHE_LIMIT {
            self.cache.insert(word.clone(), trivial);
        }
    }

    pub(crate) fn is_trivial(&self, table: &RecursionTable, word: &[u8]) -> Result<bool> {
        let root = table.reduce(word);
        if root.is_empty() {
            return Ok(true);
        }
        if table.swap_parity(&root) {
            return Ok(false);
        }
        if let Some(hit) = self.cache.get(&root) {
            return Ok(*hit);
        }
        let mut visited: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        visited.insert(root.clone());
        queue.push_back(root.clone());
        while let Some(current) = queue.pop_front() {
            let (left, right) = table.sections_of(&current);
            for section in [left, right] {
                let section = table.reduce(&section);
                if section.is_empty() {
                    continue;
                }
                if table.swap_parity(&section) {
                    self.remember(&root, false);
                    return Ok(false);
                }
                match self.cache.get(&section).map(|r| *r) {
                    Some(true) => continue,
                    Some(false) => {
                        self.remember(&root, false);
                        return Ok(false);
                    }
                    None => {}
                }
                if visited.insert(section.clone()) {
                    if visited.len() > self.budget {
                        return Err(Error::StateBudget {
                            budget: self.budget,
                        });
                    }
                    queue.push_back(section);
                }
            }
        }
        for word in &visited {
            self.remember(word, true);
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use crate::automorphism::RecursionTable;
    use crate::error::Error;

    #[test]
    fn budget_exhaustion_is_reported() {
        let text = "σ = (1, 1) swap\na = (σ, b)\nb = (σ, c)\nc = (1, a)\n";
        let table = RecursionTable::parse(text).unwrap().table;
        let w = table.parse_word(&"σa".repeat(16)).unwrap();
        assert!(table.is_trivial_word(&w).unwrap());
        let small = RecursionTable::parse_with_budget(text, 1).unwrap().table;
        assert!(matches!(
            small.is_trivial_word(&w),
            Err(Error::StateBudget { budget: 1 })
        ));
    }

    #[test]
    fn odometer_powers_are_nontrivial() {
        let text = "t = (1, t) swap\nu = (u, 1) swap\ninverse t = u\ninverse u = t\n";
        let table = RecursionTable::parse(text).unwrap().table;
        for k in 1..20 {
            let w = table.parse_word(&"t".repeat(k)).unwrap();
            assert!(!table.is_trivial_word(&w).unwrap(), "t^{k}");
        }
    }
}
