//! Good-block templates over the extended alphabet of `I`.

use std::fmt;

use serde::Serialize;

use super::word::AlternatingWord;
use crate::error::{Error, Result};
use crate::groups::GeneratingSet;
use crate::metric::GenIndex;

/// The bad letters of `I`, which `□` ranges over.
pub const BAD_LETTERS: [&str; 4] = ["a", "a2", "b2", "b3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PatternId {
    P1,
    P2,
    A,
    B,
    C,
    D,
    /// The block `b3σ□σa2`, which is not among the twelve listed templates.
    Supplement,
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternId::P1 => "P1",
            PatternId::P2 => "P2",
            PatternId::A => "A",
            PatternId::B => "B",
            PatternId::C => "C",
            PatternId::D => "D",
            PatternId::Supplement => "S",
        };
        f.write_str(s)
    }
}

pub const TEMPLATE_A: [&str; 4] = ["aσ□σa", "aσ□σa2", "b2σ□σa", "b2σ□σa2"];
pub const TEMPLATE_B: [&str; 4] = ["a2σ□σb2", "a2σ□σb3", "b3σ□σb2", "b3σ□σb3"];
pub const TEMPLATE_C: [&str; 2] = ["σ□σb2σ□σb3", "b2σ□σb3σ□σ"];
pub const TEMPLATE_D: [&str; 2] = ["□σa2σ□σaσ□", "□σaσ□σb2σ□"];
pub const TEMPLATE_SUPPLEMENT: &str = "b3σ□σa2";

/// Which templates count as good blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockCatalog {
    /// The twelve templates A–D as listed.
    Listed,
    /// The listed templates plus `b3σ□σa2`, which covers the sixteenth
    /// neighbour pair.
    Completed,
}

/// One position of a template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Slot {
    /// `□`: any bad letter.
    Bad,
    Letter(GenIndex),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Template {
    pub id: PatternId,
    pub text: String,
    /// Requires a `σ` before the first letter.
    pub pre_swap: bool,
    /// Requires a `σ` after the last letter.
    pub post_swap: bool,
    pub slots: Vec<Slot>,
}

impl Template {
    pub fn parse(id: PatternId, text: &str, set: &GeneratingSet) -> Result<Template> {
        let swap = set
            .swap_index()
            .ok_or_else(|| Error::InvalidParameter("generating set has no σ".into()))?
            as GenIndex;
        let mut tokens = Vec::new();
        for (i, chunk) in text.split('□').enumerate() {
            if i > 0 {
                tokens.push(None);
            }
            tokens.extend(set.parse(chunk)?.into_iter().map(Some));
        }
        let pre_swap = tokens.first() == Some(&Some(swap));
        let post_swap = tokens.len() > 1 && tokens.last() == Some(&Some(swap));
        let inner = &tokens[pre_swap as usize..tokens.len() - post_swap as usize];
        let mut slots = Vec::new();
        for (i, t) in inner.iter().enumerate() {
            let expect_swap = i % 2 == 1;
            let is_swap = *t == Some(swap);
            if expect_swap != is_swap {
                return Err(Error::InvalidParameter(format!("template `{text}` does not alternate")));
            }
            if !expect_swap {
                slots.push(match t {
                    None => Slot::Bad,
                    Some(g) => Slot::Letter(*g),
                });
            }
        }
        Ok(Template {
            id,
            text: text.to_string(),
            pre_swap,
            post_swap,
            slots,
        })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Whether the template matches `word` starting at letter `pos`.
    pub fn matches_at(&self, word: &AlternatingWord, pos: usize, bad: &[bool]) -> bool {
        let m = word.len();
        if pos + self.len() > m {
            return false;
        }
        if self.pre_swap && pos == 0 && !word.starts_with_swap {
            return false;
        }
        if self.post_swap && pos + self.len() == m && !word.ends_with_swap {
            return false;
        }
        self.slots.iter().enumerate().all(|(j, slot)| {
            let letter = word.letters[pos + j];
            match slot {
                Slot::Bad => bad[letter as usize],
                Slot::Letter(g) => *g == letter,
            }
        })
    }

    /// The template with every `□` replaced by `fill` in turn.
    pub fn instantiate(&self, fill: &[GenIndex]) -> Vec<GenIndex> {
        let mut it = fill.iter();
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Bad => *it.next().expect("one filler per □"),
                Slot::Letter(g) => *g,
            })
            .collect()
    }

    pub fn holes(&self) -> usize {
        self.slots.iter().filter(|s| **s == Slot::Bad).count()
    }
}

/// Good-block templates resolved against the extended generating set of `I`.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub catalog: BlockCatalog,
    pub templates: Vec<Template>,
    /// `bad[g]` for every generator index.
    pub bad: Vec<bool>,
    pub bad_letters: Vec<GenIndex>,
}

impl Blocks {
    pub fn new(set: &GeneratingSet, catalog: BlockCatalog) -> Result<Blocks> {
        let mut templates = Vec::new();
        for (id, list) in [
            (PatternId::A, &TEMPLATE_A[..]),
            (PatternId::B, &TEMPLATE_B[..]),
            (PatternId::C, &TEMPLATE_C[..]),
            (PatternId::D, &TEMPLATE_D[..]),
        ] {
            for text in list {
                templates.push(Template::parse(id, text, set)?);
            }
        }
        if catalog == BlockCatalog::Completed {
            templates.push(Template::parse(PatternId::Supplement, TEMPLATE_SUPPLEMENT, set)?);
        }
        let bad_letters: Vec<GenIndex> = BAD_LETTERS
            .iter()
            .map(|name| {
                set.index_of(name)
                    .map(|i| i as GenIndex)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
            })
            .collect::<Result<_>>()?;
        let mut bad = vec![false; set.len()];
        for &g in &bad_letters {
            bad[g as usize] = true;
        }
        Ok(Blocks {
            catalog,
            templates,
            bad,
            bad_letters,
        })
    }

    /// All template matches, by position then template order; overlapping
    /// matches are all reported.
    pub fn find_good_blocks(&self, word: &AlternatingWord) -> Vec<PatternMatch> {
        let mut out = Vec::new();
        for pos in 0..word.len() {
            for (t, template) in self.templates.iter().enumerate() {
                if template.matches_at(word, pos, &self.bad) {
                    out.push(PatternMatch {
                        pattern: template.id,
                        template: t,
                        position: pos,
                        len: template.len(),
                    });
                }
            }
        }
        out
    }

    /// Per letter: bad by nature and inside some good block.
    pub fn good_by_position(&self, word: &AlternatingWord) -> Vec<bool> {
        let mut flags = vec![false; word.len()];
        for m in self.find_good_blocks(word) {
            for (j, flag) in flags.iter_mut().enumerate().skip(m.position).take(m.len) {
                *flag |= self.bad[word.letters[j] as usize];
            }
        }
        flags
    }

    pub fn has_good_block(&self, word: &AlternatingWord) -> bool {
        (0..word.len()).any(|pos| {
            self.templates
                .iter()
                .any(|t| t.matches_at(word, pos, &self.bad))
        })
    }
}

/// A template occurrence inside a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternMatch {
    pub pattern: PatternId,
    /// Index into [`Blocks::templates`].
    pub template: usize,
    /// Index of the first matched non-`σ` letter.
    pub position: usize,
    pub len: usize,
}

impl PatternMatch {
    pub fn witness(&self, blocks: &Blocks, word: &AlternatingWord, set: &GeneratingSet) -> String {
        let t = &blocks.templates[self.template];
        let sub = AlternatingWord::new(
            t.pre_swap,
            word.letters[self.position..self.position + self.len].to_vec(),
            t.post_swap,
        );
        sub.format(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin, GroupName};

    fn setup() -> (GeneratingSet, Blocks) {
        let i = builtin(GroupName::I);
        let set = i.generating_set().clone();
        let blocks = Blocks::new(&set, BlockCatalog::Listed).unwrap();
        (set, blocks)
    }

    #[test]
    fn templates_parse_with_flags() {
        let (_, blocks) = setup();
        assert_eq!(blocks.templates.len(), 12);
        let c0 = &blocks.templates[8];
        assert_eq!((c0.pre_swap, c0.post_swap, c0.len(), c0.holes()), (true, false, 4, 2));
        let c1 = &blocks.templates[9];
        assert_eq!((c1.pre_swap, c1.post_swap), (false, true));
        let d0 = &blocks.templates[10];
        assert_eq!((d0.len(), d0.holes()), (5, 3));
    }

    #[test]
    fn matches_respect_letters_and_anchors() {
        let (set, blocks) = setup();
        let w = AlternatingWord::parse(&set, "aσb2σa2").unwrap();
        let found = blocks.find_good_blocks(&w);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].pattern, PatternId::A);
        assert_eq!(found[0].witness(&blocks, &w, &set), "aσb2σa2");
        assert_eq!(blocks.good_by_position(&w), vec![true; 3]);

        let w = AlternatingWord::parse(&set, "a2σaσb2").unwrap();
        assert_eq!(blocks.find_good_blocks(&w)[0].pattern, PatternId::B);

        // C needs a σ before its first letter.
        let bare = AlternatingWord::parse(&set, "aσb2σaσb3").unwrap();
        assert!(blocks.find_good_blocks(&bare).iter().all(|m| m.pattern != PatternId::C));
        let anchored = AlternatingWord::parse(&set, "σaσb2σaσb3").unwrap();
        assert!(blocks.find_good_blocks(&anchored).iter().any(|m| m.pattern == PatternId::C));

        // □ never stands for a good letter.
        let w = AlternatingWord::parse(&set, "aσa3σa").unwrap();
        assert!(blocks.find_good_blocks(&w).is_empty());
    }

    #[test]
    fn completed_catalog_adds_one_template() {
        let (set, _) = setup();
        let blocks = Blocks::new(&set, BlockCatalog::Completed).unwrap();
        assert_eq!(blocks.templates.len(), 13);
        let w = AlternatingWord::parse(&set, "b3σaσa2").unwrap();
        assert_eq!(blocks.find_good_blocks(&w)[0].pattern, PatternId::Supplement);
    }
}
