use serde::Serialize;

use super::blocks::{BlockCatalog, Blocks};
use super::word::AlternatingWord;
use crate::error::{Error, Result};
use crate::groups::{GeneratingSet, GroupName, NamedGroup};
use crate::metric::Ball;
use crate::splitting::letter_splits;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Good,
    Bad,
}

/// ε must lie in `(0, 1]`.
pub fn check_epsilon(eps: Rational) -> Result<()> {
    if eps <= Rational::from_integer(0) || eps > Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("ε = {eps} must lie in (0, 1]")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Kind {
    /// Letters `a` and `b` are good.
    H { good: Vec<bool> },
    /// Good by nature, or bad but inside a good block.
    I { nature: Vec<bool>, blocks: Blocks },
}

/// Decides which letters of an alternating word count as good.
#[derive(Clone, Debug)]
pub struct LetterClassifier {
    kind: Kind,
}

impl LetterClassifier {
    pub fn for_h(set: &GeneratingSet) -> Result<Self> {
        let mut good = vec![false; set.len()];
        for name in ["a", "b"] {
            let i = set
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            good[i] = true;
        }
        Ok(LetterClassifier { kind: Kind::H { good } })
    }

    /// `nature[g]` tells whether generator `g` is good by nature.
    pub fn for_i(set: &GeneratingSet, nature: Vec<bool>, catalog: BlockCatalog) -> Result<Self> {
        if nature.len() != set.len() {
            return Err(Error::InvalidParameter("one flag per generator expected".into()));
        }
        Ok(LetterClassifier {
            kind: Kind::I {
                nature,
                blocks: Blocks::new(set, catalog)?,
            },
        })
    }

    /// The classifier of `H` or `I`, measuring letter splits of `I` in `ball`.
    pub fn for_group(group: &NamedGroup, ball: &mut Ball, catalog: BlockCatalog) -> Result<Self> {
        let set = ball.generating_set().clone();
        match group.kind {
            Some(GroupName::H) => LetterClassifier::for_h(&set),
            Some(GroupName::I) => {
                let mut nature = vec![false; set.len()];
                for s in letter_splits(group, ball)? {
                    let idx = set.index_of(&s.name).expect("split of a generator");
                    nature[idx] = s.good_by_nature;
                }
                LetterClassifier::for_i(&set, nature, catalog)
            }
            _ => Err(Error::InvalidParameter(format!(
                "no ε-bad classification for group {}",
                group.name
            ))),
        }
    }

    pub fn blocks(&self) -> Option<&Blocks> {
        match &self.kind {
            Kind::I { blocks, .. } => Some(blocks),
            Kind::H { .. } => None,
        }
    }

    /// Per letter: whether it counts as good.
    pub fn good_flags(&self, word: &AlternatingWord) -> Vec<bool> {
        match &self.kind {
            Kind::H { good } => word.letters.iter().map(|&g| good[g as usize]).collect(),
            Kind::I { nature, blocks } => {
                let position = blocks.good_by_position(word);
                word.letters
                    .iter()
                    .zip(position)
                    .map(|(&g, pos)| nature[g as usize] || pos)
                    .collect()
            }
        }
    }

    pub fn good_count(&self, word: &AlternatingWord) -> usize {
        self.good_flags(word).into_iter().filter(|&g| g).count()
    }

    /// A word with `m ≥ 1` letters is ε-bad iff at most `ε·m` of them are
    /// good. The letterless word is good by convention.
    pub fn classify(&self, word: &AlternatingWord, eps: Rational) -> Result<Verdict> {
        check_epsilon(eps)?;
        if word.is_empty() {
            return Ok(Verdict::Good);
        }
        let good = self.good_count(word) as i128;
        let m = word.len() as i128;
        let (p, q) = (*eps.numer() as i128, *eps.denom() as i128);
        Ok(if q * good <= p * m {
            Verdict::Bad
        } else {
            Verdict::Good
        })
    }
}
