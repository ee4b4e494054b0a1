use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::GeneratingSet;
use crate::metric::GenIndex;

/// A word `(σ) g₁ σ g₂ … σ g_m (σ)` that alternates between `σ` and the
/// other generators, stored by its non-`σ` letters and two boundary flags.
///
/// With no letters, the word is `σ` if `starts_with_swap` holds and empty
/// otherwise; `ends_with_swap` must then be false.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlternatingWord {
    pub starts_with_swap: bool,
    pub ends_with_swap: bool,
    pub letters: Vec<GenIndex>,
}

impl AlternatingWord {
    pub fn new(starts_with_swap: bool, letters: Vec<GenIndex>, ends_with_swap: bool) -> Self {
        let ends_with_swap = ends_with_swap && !letters.is_empty();
        AlternatingWord {
            starts_with_swap,
            ends_with_swap,
            letters,
        }
    }

    /// Reads a word over the generating set; fails unless it alternates.
    pub fn from_gen_word(set: &GeneratingSet, word: &[GenIndex]) -> Result<Self> {
        let swap = set
            .swap_index()
            .ok_or_else(|| Error::InvalidParameter("generating set has no σ".into()))?;
        let is_swap = |g: GenIndex| g as usize == swap;
        if word.windows(2).any(|w| is_swap(w[0]) == is_swap(w[1])) {
            return Err(Error::InvalidParameter(format!(
                "`{}` does not alternate",
                set.format(word)
            )));
        }
        let letters: Vec<GenIndex> = word.iter().copied().filter(|&g| !is_swap(g)).collect();
        let starts = word.first().is_some_and(|&g| is_swap(g));
        let ends = !letters.is_empty() && word.last().is_some_and(|&g| is_swap(g));
        Ok(AlternatingWord::new(starts, letters, ends))
    }

    pub fn parse(set: &GeneratingSet, text: &str) -> Result<Self> {
        AlternatingWord::from_gen_word(set, &set.parse(text)?)
    }

    pub fn to_gen_word(&self, set: &GeneratingSet) -> Vec<GenIndex> {
        let swap = set.swap_index().expect("generating set has σ") as GenIndex;
        let mut out = Vec::with_capacity(2 * self.letters.len() + 1);
        if self.starts_with_swap {
            out.push(swap);
        }
        for (i, &g) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(swap);
            }
            out.push(g);
        }
        if self.ends_with_swap {
            out.push(swap);
        }
        out
    }

    pub fn format(&self, set: &GeneratingSet) -> String {
        set.format(&self.to_gen_word(set))
    }

    /// Number of non-`σ` letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty() && !self.starts_with_swap
    }

    pub fn swap_count(&self) -> usize {
        if self.letters.is_empty() {
            return self.starts_with_swap as usize;
        }
        self.letters.len() - 1 + self.starts_with_swap as usize + self.ends_with_swap as usize
    }

    /// Even number of `σ` letters, assuming all other generators are inactive.
    pub fn is_even(&self) -> bool {
        self.swap_count() % 2 == 0
    }
}
