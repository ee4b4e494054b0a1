//! Census of alternating words made of bad letters that contain no good block.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::blocks::{BlockCatalog, Blocks, Slot, Template, BAD_LETTERS};
use super::word::AlternatingWord;
use crate::error::Result;
use crate::groups::{builtin, GroupName};

/// A word of the census: boundary flags and letters as indices into
/// [`BAD_LETTERS`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BadString {
    pub starts_with_swap: bool,
    pub ends_with_swap: bool,
    pub letters: Vec<u8>,
}

impl BadString {
    pub fn format(&self) -> String {
        let mut s = String::new();
        if self.starts_with_swap {
            s.push('σ');
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                s.push('σ');
            }
            s.push_str(BAD_LETTERS[l as usize]);
        }
        if self.ends_with_swap {
            s.push('σ');
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BadStringCensus {
    pub catalog: BlockCatalog,
    /// `(k, |S_k|)` for `k = 1..=max_k`.
    pub counts: Vec<(usize, usize)>,
    pub bound_observed: usize,
    /// `(k₀, p)` with `|S_k| = |S_{k+p}|` for all `k ≥ k₀` in range, seen at
    /// least twice over; `None` if the counts never settle.
    pub eventual_period: Option<(usize, usize)>,
    /// Neighbour pairs `(x, y)` of blocks `xσ□σy` seen away from the ends.
    pub interior_pairs: Vec<(String, String)>,
    /// Smallest margin `t` such that letters `j` and `j + 4` agree whenever
    /// both lie at least `t` letters from either end.
    pub period_margin: usize,
    pub period_structure: String,
}

/// A template over bad-letter indices; `None` is `□`.
#[derive(Clone, Debug)]
struct Pattern {
    pre: bool,
    post: bool,
    slots: Vec<Option<u8>>,
}

fn patterns_of(blocks: &Blocks) -> Vec<Pattern> {
    let bad_index = |g| {
        blocks
            .bad_letters
            .iter()
            .position(|&b| b == g)
            .expect("template letters are bad letters") as u8
    };
    blocks
        .templates
        .iter()
        .map(|t: &Template| Pattern {
            pre: t.pre_swap,
            post: t.post_swap,
            slots: t
                .slots
                .iter()
                .map(|s| match s {
                    Slot::Bad => None,
                    Slot::Letter(g) => Some(bad_index(*g)),
                })
                .collect(),
        })
        .collect()
}

/// Templates ending at the last letter of `letters`: `(any, any_needing_σ_after)`.
fn matches_ending_here(patterns: &[Pattern], pre: bool, letters: &[u8]) -> (bool, bool) {
    let mut plain = false;
    let mut anchored = false;
    let n = letters.len();
    for p in patterns {
        let len = p.slots.len();
        if len > n {
            continue;
        }
        let start = n - len;
        if p.pre && start == 0 && !pre {
            continue;
        }
        let hit = p
            .slots
            .iter()
            .zip(&letters[start..])
            .all(|(s, &l)| s.map_or(true, |x| x == l));
        if hit {
            if p.post {
                anchored = true;
            } else {
                plain = true;
            }
        }
    }
    (plain, anchored)
}

fn grow(
    patterns: &[Pattern],
    pre: bool,
    prefix: &mut Vec<u8>,
    max_k: usize,
    out: &mut Vec<Vec<BadString>>,
) {
    for letter in 0..4u8 {
        prefix.push(letter);
        let (plain, anchored) = matches_ending_here(patterns, pre, prefix);
        if !plain {
            let k = prefix.len();
            out[k].push(BadString {
                starts_with_swap: pre,
                ends_with_swap: false,
                letters: prefix.clone(),
            });
            if !anchored {
                out[k].push(BadString {
                    starts_with_swap: pre,
                    ends_with_swap: true,
                    letters: prefix.clone(),
                });
                if k < max_k {
                    grow(patterns, pre, prefix, max_k, out);
                }
            }
        }
        prefix.pop();
    }
}

/// All words of `S_k` for `k ≤ max_k`, by depth-first search with pruning at
/// the first good block. Index `k` of the result holds `S_k`, sorted.
pub fn bad_strings(max_k: usize, catalog: BlockCatalog) -> Result<Vec<Vec<BadString>>> {
    let group = builtin(GroupName::I);
    let blocks = Blocks::new(group.generating_set(), catalog)?;
    let patterns = patterns_of(&blocks);
    let halves: Vec<Vec<Vec<BadString>>> = [false, true]
        .par_iter()
        .map(|&pre| {
            let mut out = vec![Vec::new(); max_k + 1];
            grow(&patterns, pre, &mut Vec::new(), max_k, &mut out);
            out
        })
        .collect();
    let mut merged = vec![Vec::new(); max_k + 1];
    for half in halves {
        for (k, words) in half.into_iter().enumerate() {
            merged[k].extend(words);
        }
    }
    for words in &mut merged {
        words.sort();
    }
    Ok(merged)
}

/// `S_k` by testing every one of the `4^(k+1)` candidate words (letters and
/// both boundary flags) against every template.
pub fn bad_strings_brute_force(k: usize, catalog: BlockCatalog) -> Result<Vec<BadString>> {
    let group = builtin(GroupName::I);
    let set = group.generating_set();
    let blocks = Blocks::new(set, catalog)?;
    let total = 4usize.pow(k as u32);
    let mut out = Vec::new();
    for pre in [false, true] {
        for post in [false, true] {
            for code in 0..total {
                let letters: Vec<u8> = (0..k).map(|j| ((code >> (2 * (k - 1 - j))) & 3) as u8).collect();
                let word = AlternatingWord::new(
                    pre,
                    letters.iter().map(|&l| blocks.bad_letters[l as usize]).collect(),
                    post,
                );
                if !blocks.has_good_block(&word) {
                    out.push(BadString {
                        starts_with_swap: pre,
                        ends_with_swap: post,
                        letters,
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Pairs `(l_i, l_{i+2})` with at least two letters on either side.
pub fn interior_pairs(words: &[BadString]) -> BTreeSet<(u8, u8)> {
    let mut pairs = BTreeSet::new();
    for w in words {
        let k = w.letters.len();
        for i in 2..k.saturating_sub(4) {
            pairs.insert((w.letters[i], w.letters[i + 2]));
        }
    }
    pairs
}

fn period_violated(w: &BadString, margin: usize) -> bool {
    let k = w.letters.len();
    (margin..k)
        .filter(|&j| j + 4 + margin < k)
        .any(|j| w.letters[j] != w.letters[j + 4])
}

/// Smallest margin for which every word is 4-periodic in its letters
/// (8-periodic in the full word) away from both ends.
pub fn period_margin<'a>(words: impl IntoIterator<Item = &'a BadString> + Clone) -> usize {
    let mut margin = 0;
    while words.clone().into_iter().any(|w| period_violated(w, margin)) {
        margin += 1;
    }
    margin
}

/// Smallest period `p ≤ 8`, and the first index from which `values` repeats
/// with it, requiring at least two full periods of evidence.
pub fn eventual_period(values: &[usize]) -> Option<(usize, usize)> {
    let n = values.len();
    (1..=8).find_map(|p| {
        let mut from = n.checked_sub(p)?;
        while from > 0 && values[from - 1] == values[from - 1 + p] {
            from -= 1;
        }
        (from + 3 * p <= n).then_some((from, p))
    })
}

pub fn bad_strings_census(max_k: usize, catalog: BlockCatalog) -> Result<BadStringCensus> {
    let sets = bad_strings(max_k, catalog)?;
    let counts: Vec<(usize, usize)> = (1..=max_k).map(|k| (k, sets[k].len())).collect();
    let bound_observed = counts.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let eventual_period = eventual_period(&counts.iter().map(|&(_, c)| c).collect::<Vec<_>>())
        .map(|(from, p)| (from + 1, p));
    let all: Vec<&BadString> = sets.iter().flatten().collect();
    let pairs = interior_pairs(&all.iter().map(|w| (*w).clone()).collect::<Vec<_>>());
    let margin = period_margin(all.iter().copied());
    Ok(BadStringCensus {
        catalog,
        counts,
        bound_observed,
        eventual_period,
        interior_pairs: pairs
            .iter()
            .map(|&(x, y)| (BAD_LETTERS[x as usize].to_string(), BAD_LETTERS[y as usize].to_string()))
            .collect(),
        period_margin: margin,
        period_structure: format!(
            "letters j and j+4 (word positions 8 apart) agree when both are at least {margin} letters from the ends"
        ),
    })
}
