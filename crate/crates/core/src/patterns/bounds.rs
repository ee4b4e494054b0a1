//! Counting bounds for ε-bad words and elements, and the reduction factor of `H`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::classify::{check_epsilon, LetterClassifier, Verdict};
use super::word::AlternatingWord;
use crate::error::{Error, Result};
use crate::metric::{alternating_geodesic_words, Ball, NodeId};
use crate::splitting::split_sums;
use crate::Rational;

/// `η(ε) = (4ε + 3(2 − ε)) / (5ε + 3(2 − ε))` for `0 < ε ≤ 1`.
pub fn eta_of_epsilon_h(eps: Rational) -> Result<Rational> {
    check_epsilon(eps)?;
    let three = Rational::from_integer(3);
    let two = Rational::from_integer(2);
    let num = Rational::from_integer(4) * eps + (two - eps) * three;
    let den = Rational::from_integer(5) * eps + (two - eps) * three;
    Ok(num / den)
}

/// `⌊ε·n⌋`.
pub fn floor_eps(n: u64, eps: Rational) -> u64 {
    let (p, q) = (*eps.numer() as i128, *eps.denom() as i128);
    Integer::div_floor(&(p * n as i128), &q).max(0) as u64
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Which counting bound to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// `2·C(n, f)·3^f`.
    H,
    /// `2·C(n, f)·15^f·B^(1+f)` with the census bound `B`.
    I { b: u64 },
}

/// Bound on the number of ε-bad alternating words with `n` non-`σ` letters.
pub fn bad_word_bound(kind: BoundKind, n: u64, eps: Rational) -> Result<BigUint> {
    check_epsilon(eps)?;
    let f = floor_eps(n, eps);
    let base = BigUint::from(2u32) * binomial(n, f);
    Ok(match kind {
        BoundKind::H => base * BigUint::from(3u32).pow(f as u32),
        BoundKind::I { b } => {
            base * BigUint::from(15u32).pow(f as u32) * BigUint::from(b).pow(1 + f as u32)
        }
    })
}

/// Largest number of non-`σ` letters summed over in the element bound:
/// `(r + 3)/6` for `H` and `(r + 32)/35` for `I`, rounded down.
pub fn max_letters(kind: BoundKind, radius: u32) -> u64 {
    match kind {
        BoundKind::H => (radius as u64 + 3) / 6,
        BoundKind::I { .. } => (radius as u64 + 32) / 35,
    }
}

/// `Σ_{m=0}^{max_letters} bad_word_bound(m)`.
pub fn bad_element_bound(kind: BoundKind, radius: u32, eps: Rational) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for m in 0..=max_letters(kind, radius) {
        total += bad_word_bound(kind, m, eps)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct BadCount {
    pub radius: u32,
    pub epsilon: String,
    pub stabilizer_level: u32,
    /// Non-identity stabilizer elements of length `≤ radius`.
    pub elements: usize,
    pub bad_elements: usize,
    /// Elements without any alternating geodesic; never counted as bad.
    pub without_alternating_geodesic: usize,
    /// Largest number of non-`σ` letters in a geodesic of a bad element.
    pub max_letters_seen: usize,
    pub bound: String,
    pub within_bound: bool,
}

/// Whether every alternating geodesic word of `id` is ε-bad; `None` if
/// there is no alternating geodesic.
pub fn element_verdict(
    ball: &Ball,
    classifier: &LetterClassifier,
    id: NodeId,
    eps: Rational,
) -> Result<Option<(Verdict, usize)>> {
    let set = ball.generating_set();
    let words = alternating_geodesic_words(ball, id, ball.options().geodesic_cap)?;
    if words.is_empty() {
        return Ok(None);
    }
    let mut letters = 0;
    for w in &words {
        let alt = AlternatingWord::from_gen_word(set, w)?;
        letters = letters.max(alt.len());
        if classifier.classify(&alt, eps)? == Verdict::Good {
            return Ok(Some((Verdict::Good, letters)));
        }
    }
    Ok(Some((Verdict::Bad, letters)))
}

/// Counts ε-bad elements in the level stabilizer (level 1 for `H`, level 3
/// for `I`) among the non-identity elements of length `≤ radius`, and
/// compares with the counting bound.
pub fn count_bad_elements(
    ball: &mut Ball,
    classifier: &LetterClassifier,
    kind: BoundKind,
    level: u32,
    radius: u32,
    eps: Rational,
) -> Result<BadCount> {
    check_epsilon(eps)?;
    ball.extend_to(radius)?;
    let ball = &*ball;
    let members: Vec<NodeId> = ball
        .ids_within(radius)
        .skip(1)
        .filter(|&id| ball.node(id).portrait.fixes_levels(level))
        .collect();
    let verdicts: Vec<Option<(Verdict, usize)>> = members
        .par_iter()
        .map(|&id| element_verdict(ball, classifier, id, eps))
        .collect::<Result<_>>()?;
    let bad: Vec<usize> = verdicts
        .iter()
        .filter_map(|v| match v {
            Some((Verdict::Bad, letters)) => Some(*letters),
            _ => None,
        })
        .collect();
    let bound = bad_element_bound(kind, radius, eps)?;
    Ok(BadCount {
        radius,
        epsilon: eps.to_string(),
        stabilizer_level: level,
        elements: members.len(),
        bad_elements: bad.len(),
        without_alternating_geodesic: verdicts.iter().filter(|v| v.is_none()).count(),
        max_letters_seen: bad.iter().copied().max().unwrap_or(0),
        within_bound: BigUint::from(bad.len()) <= bound,
        bound: bound.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodReduction {
    pub radius: u32,
    pub epsilon: String,
    pub eta: String,
    pub good_elements: usize,
    /// Smallest integer `C ≥ 0` with `Σ ≤ η·L + C` on every ε-good element.
    pub shift: u32,
}

/// For `H`: the shift needed so that every ε-good even element satisfies
/// `L(φ_L g) + L(φ_R g) ≤ η(ε)·L(g) + shift`.
pub fn good_element_shift(
    ball: &mut Ball,
    classifier: &LetterClassifier,
    radius: u32,
    eps: Rational,
) -> Result<GoodReduction> {
    let eta = eta_of_epsilon_h(eps)?;
    let sums = split_sums(ball, 1, radius)?;
    let mut shift = Rational::from_integer(0);
    let mut good = 0;
    for s in &sums {
        if s.id == 0 {
            continue;
        }
        match element_verdict(ball, classifier, s.id, eps)? {
            Some((Verdict::Good, _)) => {
                good += 1;
                let need = Rational::from_integer(s.parts_length_sum as i64) - eta * s.length as i64;
                if need > shift {
                    shift = need;
                }
            }
            Some((Verdict::Bad, _)) => {}
            None => {
                return Err(Error::InvalidParameter(format!(
                    "element {} has no alternating geodesic",
                    ball.generating_set().format(&ball.node(s.id).word)
                )))
            }
        }
    }
    Ok(GoodReduction {
        radius,
        epsilon: eps.to_string(),
        eta: eta.to_string(),
        good_elements: good,
        shift: shift.ceil().to_integer() as u32,
    })
}
