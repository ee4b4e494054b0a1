//! Wreath-recursion tables and the recursion-spec text format.
//!
//! A table declares, for every generator `x`, a root activity and two section
//! words, i.e. one equation `x = (u, v)·σ^e` per generator. Every such system
//! has exactly one solution in Aut(T), so the table fully determines a
//! self-similar group.
//!
//! Text format, one declaration per line, `#` starts a comment:
//!
//! ```text
//! σ = (1, 1) swap
//! a = (σ, b)
//! b = (σ, c)
//! c = (1, a)
//! inverse a = a
//! weight a = 5
//! ```
//!
//! Words are sequences of single-character generator names without
//! separators; `1` denotes the empty word. Generators without an `inverse`
//! line are involutions.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, Mutex};

use super::portrait::Portrait;
use super::triviality::TrivialityOracle;
use crate::error::{Error, Result};

/// Index of a generator inside its [`RecursionTable`].
pub type Letter = u8;

/// Default number of distinct words a single triviality query may visit.
pub const DEFAULT_STATE_BUDGET: usize = 100_000;

/// A finite word over the generators of a table. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(other);
        Word(letters)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// Root permutation of a tree automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Activity {
    Identity,
    Swap,
}

impl Activity {
    pub fn from_swap(swap: bool) -> Self {
        if swap {
            Activity::Swap
        } else {
            Activity::Identity
        }
    }

    pub fn is_swap(self) -> bool {
        self == Activity::Swap
    }
}

impl fmt::Display for Activity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Activity::Identity => f.write_str("1"),
            Activity::Swap => f.write_str("σ"),
        }
    }
}

/// One line of a recursion table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: char,
    pub swap: bool,
    pub left: String,
    pub right: String,
}

/// A table together with the optional `weight` lines of its source text.
#[derive(Debug)]
pub struct ParsedRecursion {
    pub table: Arc<RecursionTable>,
    pub weights: Vec<(char, u32)>,
}

pub struct RecursionTable {
    names: Vec<char>,
    swaps: Vec<bool>,
    sections: Vec<[Word; 2]>,
    inverses: Vec<Word>,
    inverse_letter: Vec<Option<Letter>>,
    pub(crate) oracle: TrivialityOracle,
    portraits: Mutex<HashMap<u32, Arc<Vec<Portrait>>>>,
}

impl fmt::Debug for RecursionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecursionTable")
            .field("generators", &self.names)
            .finish()
    }
}

impl RecursionTable {
    /// Builds a table from generator declarations and `(name, inverse word)` pairs.
    pub fn new(
        generators: &[GeneratorSpec],
        inverses: &[(char, String)],
        state_budget: usize,
    ) -> Result<Arc<Self>> {
        if generators.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "table declares no generators".into(),
            });
        }
        if generators.len() > Letter::MAX as usize {
            return Err(Error::Parse {
                line: 0,
                message: "too many generators".into(),
            });
        }
        let mut names = Vec::with_capacity(generators.len());
        for spec in generators {
            validate_name(spec.name, 0)?;
            if names.contains(&spec.name) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("generator `{}` declared twice", spec.name),
                });
            }
            names.push(spec.name);
        }
        let lookup = |word: &str| -> Result<Word> { parse_word_with(&names, word) };
        let mut sections = Vec::with_capacity(generators.len());
        let mut swaps = Vec::with_capacity(generators.len());
        for spec in generators {
            sections.push([lookup(&spec.left)?, lookup(&spec.right)?]);
            swaps.push(spec.swap);
        }
        let mut inverse_words: Vec<Word> = (0..names.len())
            .map(|i| Word::new(vec![i as Letter]))
            .collect();
        for (name, word) in inverses {
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            inverse_words[idx] = lookup(word)?;
        }
        let inverse_letter = inverse_words
            .iter()
            .map(|w| if w.len() == 1 { Some(w[0]) } else { None })
            .collect();
        let table = Arc::new(RecursionTable {
            names,
            swaps,
            sections,
            inverses: inverse_words,
            inverse_letter,
            oracle: TrivialityOracle::new(state_budget),
            portraits: Mutex::new(HashMap::new()),
        });
        // g·g⁻¹ is unrolled once without reduction; the sections may then use
        // the declared cancellations, which is sound by induction on the level.
        for letter in 0..table.len() {
            let letter = letter as Letter;
            let mut word = Word::new(vec![letter]);
            word.extend_from(&table.inverses[letter as usize]);
            let (left, right) = table.sections_of(&word);
            let cancels = !table.swap_parity(&word)
                && table.is_trivial_word(&left)?
                && table.is_trivial_word(&right)?;
            if !cancels {
                return Err(Error::BadInverse(table.names[letter as usize]));
            }
        }
        Ok(table)
    }

    /// Parses the recursion-spec text format.
    pub fn parse(text: &str) -> Result<ParsedRecursion> {
        Self::parse_with_budget(text, DEFAULT_STATE_BUDGET)
    }

    pub fn parse_with_budget(text: &str, state_budget: usize) -> Result<ParsedRecursion> {
        let mut generators = Vec::new();
        let mut inverses = Vec::new();
        let mut weights = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: line_no,
                message: message.to_string(),
            };
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err("expected `=`"))?;
            let lhs = lhs.trim();
            let rhs = rhs.trim();
            if let Some(name) = lhs.strip_prefix("inverse ") {
                let name = single_char(name.trim()).ok_or_else(|| err("bad generator name"))?;
                inverses.push((name, rhs.to_string()));
                continue;
            }
            if let Some(name) = lhs.strip_prefix("weight ") {
                let name = single_char(name.trim()).ok_or_else(|| err("bad generator name"))?;
                let weight: u32 = rhs.parse().map_err(|_| err("weight must be a positive integer"))?;
                if weight == 0 {
                    return Err(err("weight must be a positive integer"));
                }
                weights.push((name, weight));
                continue;
            }
            let name = single_char(lhs).ok_or_else(|| err("generator names are single characters"))?;
            validate_name(name, line_no)?;
            let open = rhs.find('(').ok_or_else(|| err("expected `(left, right)`"))?;
            let close = rhs.rfind(')').ok_or_else(|| err("expected `)`"))?;
            if !rhs[..open].trim().is_empty() || close < open {
                return Err(err("expected `(left, right)`"));
            }
            let (left, right) = rhs[open + 1..close]
                .split_once(',')
                .ok_or_else(|| err("expected `,` between sections"))?;
            let tail = rhs[close + 1..].trim();
            let swap = match tail {
                "" => false,
                "swap" | "σ" => true,
                _ => return Err(err("trailing text after sections must be `swap`")),
            };
            generators.push(GeneratorSpec {
                name,
                swap,
                left: left.trim().to_string(),
                right: right.trim().to_string(),
            });
        }
        let table = RecursionTable::new(&generators, &inverses, state_budget).map_err(|e| match e {
            Error::UnknownGenerator(name) => Error::Parse {
                line: 0,
                message: format!("undeclared generator `{name}` referenced"),
            },
            other => other,
        })?;
        for (name, _) in &weights {
            if table.letter(*name).is_none() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("weight for undeclared generator `{name}`"),
                });
            }
        }
        Ok(ParsedRecursion { table, weights })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> char {
        self.names[letter as usize]
    }

    pub fn letter(&self, name: char) -> Option<Letter> {
        self.names.iter().position(|&n| n == name).map(|i| i as Letter)
    }

    /// The generator acting as the bare swap σ = (1, 1)·σ, if the table has one.
    pub fn swap_letter(&self) -> Option<Letter> {
        (0..self.len()).find_map(|i| {
            let [l, r] = &self.sections[i];
            (self.swaps[i] && l.is_empty() && r.is_empty()).then_some(i as Letter)
        })
    }

    pub fn is_swap_active(&self, letter: Letter) -> bool {
        self.swaps[letter as usize]
    }

    pub fn letter_sections(&self, letter: Letter) -> (&Word, &Word) {
        let [l, r] = &self.sections[letter as usize];
        (l, r)
    }

    pub fn letter_inverse(&self, letter: Letter) -> &Word {
        &self.inverses[letter as usize]
    }

    pub fn state_budget(&self) -> usize {
        self.oracle.budget()
    }

    /// Parses a word. `1` is the empty word; `s` stands for `σ` when the table
    /// has no generator named `s`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word_with(&self.names, text)
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter().map(|&l| self.names[l as usize]).collect()
    }

    /// Root activity of a word: parity of its swap-active letters.
    pub fn activity_of(&self, word: &[Letter]) -> Activity {
        Activity::from_swap(self.swap_parity(word))
    }

    pub(crate) fn swap_parity(&self, word: &[Letter]) -> bool {
        word.iter()
            .fold(false, |acc, &l| acc ^ self.swaps[l as usize])
    }

    /// Left and right sections of a word, read left to right: each letter
    /// contributes its own sections, exchanged when an odd number of swaps
    /// precede it.
    pub fn sections_of(&self, word: &[Letter]) -> (Word, Word) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut swapped = false;
        for &letter in word {
            let [l, r] = &self.sections[letter as usize];
            if swapped {
                left.extend_from_slice(r);
                right.extend_from_slice(l);
            } else {
                left.extend_from_slice(l);
                right.extend_from_slice(r);
            }
            swapped ^= self.swaps[letter as usize];
        }
        (Word(left), Word(right))
    }

    /// Section at a single side of the root.
    pub fn section_of(&self, word: &[Letter], right_side: bool) -> Word {
        let mut out = Vec::new();
        let mut swapped = false;
        for &letter in word {
            let [l, r] = &self.sections[letter as usize];
            out.extend_from_slice(if swapped ^ right_side { r } else { l });
            swapped ^= self.swaps[letter as usize];
        }
        Word(out)
    }

    /// Cancels adjacent `g g⁻¹` pairs where `g⁻¹` is a single letter.
    pub fn reduce(&self, word: &[Letter]) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
        for &letter in word {
            match stack.last() {
                Some(&prev) if self.inverse_letter[prev as usize] == Some(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word(stack)
    }

    pub fn inverse_of(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len());
        for &letter in word.iter().rev() {
            out.extend_from_slice(&self.inverses[letter as usize]);
        }
        Word(out)
    }

    /// Decides whether a word acts trivially on the whole tree.
    pub fn is_trivial_word(&self, word: &[Letter]) -> Result<bool> {
        self.oracle.is_trivial(self, word)
    }

    /// Decides `u = v` as group elements.
    pub fn words_equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        let mut w = Word::new(u.to_vec());
        w.extend_from(&self.inverse_of(v));
        self.is_trivial_word(&w)
    }

    /// Portraits of single generators at the given depth, computed once per depth.
    pub fn letter_portraits(&self, depth: u32) -> Arc<Vec<Portrait>> {
        if let Some(p) = self.portraits.lock().expect("portrait cache poisoned").get(&depth) {
            return Arc::clone(p);
        }
        let computed = if depth == 0 {
            (0..self.len())
                .map(|i| Portrait::root_only(Activity::from_swap(self.swaps[i])))
                .collect()
        } else {
            let below = self.letter_portraits(depth - 1);
            let word_portrait = |w: &Word| {
                w.iter().fold(Portrait::identity(depth - 1), |acc, &l| {
                    acc.compose(&below[l as usize])
                })
            };
            (0..self.len())
                .map(|i| {
                    let [l, r] = &self.sections[i];
                    Portrait::graft(
                        Activity::from_swap(self.swaps[i]),
                        &word_portrait(l),
                        &word_portrait(r),
                    )
                })
                .collect()
        };
        let computed = Arc::new(computed);
        self.portraits
            .lock()
            .expect("portrait cache poisoned")
            .insert(depth, Arc::clone(&computed));
        computed
    }

    pub fn portrait_of(&self, word: &[Letter], depth: u32) -> Portrait {
        let letters = self.letter_portraits(depth);
        word.iter().fold(Portrait::identity(depth), |acc, &l| {
            acc.compose(&letters[l as usize])
        })
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    let c = chars.next()?;
    chars.next().is_none().then_some(c)
}

fn validate_name(name: char, line: usize) -> Result<()> {
    if name.is_whitespace() || "1(),=#".contains(name) {
        return Err(Error::Parse {
            line,
            message: format!("`{name}` cannot be a generator name"),
        });
    }
    Ok(())
}

fn parse_word_with(names: &[char], text: &str) -> Result<Word> {
    let mut letters = Vec::new();
    for c in text.chars() {
        if c.is_whitespace() || c == '1' {
            continue;
        }
        let idx = names
            .iter()
            .position(|&n| n == c)
            .or_else(|| (c == 's').then(|| names.iter().position(|&n| n == 'σ')).flatten())
            .ok_or_else(|| Error::UnknownGenerator(c.to_string()))?;
        letters.push(idx as Letter);
    }
    Ok(Word(letters))
}
