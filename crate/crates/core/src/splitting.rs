//! Splitting homomorphisms on level stabilizers and the length-reduction
//! checks built on them.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{Element, Vertex};
use crate::error::{Error, Result};
use crate::groups::NamedGroup;
use crate::metric::{Ball, NodeId};
use crate::report::Report;
use crate::Rational;

/// The sections of a level-`depth` stabilizer element at the `2^depth`
/// vertices of that level, left to right.
pub fn split_parts(g: &Element, depth: u32) -> Result<Vec<Element>> {
    if !g.fixes_level(depth) {
        return Err(Error::NotInStabilizer { level: depth });
    }
    Ok(Vertex::level(depth)
        .map(|v| g.section_at(&v).reduced())
        .collect())
}

/// Whether `parts` are exactly the level-`depth` sections of `g` and `g`
/// fixes that level, i.e. `parts` reassemble to `g`.
pub fn reassembles(g: &Element, parts: &[Element], depth: u32) -> Result<bool> {
    if !g.fixes_level(depth) || parts.len() != 1 << depth {
        return Ok(false);
    }
    for (v, part) in Vertex::level(depth).zip(parts) {
        if !g.section_at(&v).equals(part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitResult {
    pub depth: u32,
    #[serde(skip)]
    pub parts: Vec<Element>,
    pub part_words: Vec<String>,
    pub part_lengths: Vec<u32>,
    pub input_length: u32,
    pub parts_length_sum: u32,
}

/// Splits `g` and measures all lengths in `ball`, extending it as needed.
pub fn split(g: &Element, depth: u32, ball: &mut Ball) -> Result<SplitResult> {
    let parts = split_parts(g, depth)?;
    let input_length = ball.length_of(g)?;
    let part_lengths = ball.lengths_of(&parts)?;
    Ok(SplitResult {
        depth,
        part_words: parts.iter().map(|p| p.to_string()).collect(),
        parts_length_sum: part_lengths.iter().sum(),
        parts,
        part_lengths,
        input_length,
    })
}

/// A ball element in the level stabilizer with its length and the total
/// length of its parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSum {
    pub id: NodeId,
    pub length: u32,
    pub parts_length_sum: u32,
}

/// Split sums for every level-`depth` stabilizer element of length `≤ radius`.
pub fn split_sums(ball: &mut Ball, depth: u32, radius: u32) -> Result<Vec<SplitSum>> {
    ball.extend_to(radius)?;
    let members: Vec<NodeId> = ball
        .ids_within(radius)
        .filter(|&id| ball.node(id).portrait.fixes_levels(depth))
        .collect();
    let width = 1usize << depth;
    let parts: Vec<Element> = members
        .par_iter()
        .map(|&id| split_parts(&ball.element(id), depth))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let lengths = ball.lengths_of(&parts)?;
    Ok(members
        .iter()
        .zip(lengths.chunks(width))
        .map(|(&id, chunk)| SplitSum {
            id,
            length: ball.node(id).length,
            parts_length_sum: chunk.iter().sum(),
        })
        .collect())
}

fn within(sum: u32, eta: Rational, bound: u32, shift: u32) -> bool {
    // sum ≤ η·bound + shift, in integers.
    let (p, q) = (*eta.numer() as i128, *eta.denom() as i128);
    q * sum as i128 <= p * bound as i128 + q * shift as i128
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub word: String,
    pub length: u32,
    pub parts_length_sum: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionSummary {
    pub radius: u32,
    pub depth: u32,
    pub eta: String,
    pub shift: u32,
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Largest `Σ L(parts) − η·L(g)` seen, as a rational string.
    pub worst_excess: String,
    pub worst_word: String,
}

/// Checks `Σ L(parts) ≤ η·L(g) + shift` for every stabilizer element of
/// length `≤ radius`.
pub fn verify_reduction(
    ball: &mut Ball,
    depth: u32,
    eta: Rational,
    shift: u32,
    radius: u32,
) -> Result<ReductionSummary> {
    let sums = split_sums(ball, depth, radius)?;
    let set = ball.generating_set();
    let mut violations = Vec::new();
    let mut worst: Option<(Rational, NodeId)> = None;
    for s in &sums {
        let excess = Rational::from_integer(s.parts_length_sum as i64) - eta * s.length as i64;
        if worst.map_or(true, |(w, _)| excess > w) {
            worst = Some((excess, s.id));
        }
        if !within(s.parts_length_sum, eta, s.length, shift) {
            violations.push(Violation {
                word: set.format(&ball.node(s.id).word),
                length: s.length,
                parts_length_sum: s.parts_length_sum,
            });
        }
    }
    let (worst_excess, worst_word) = match worst {
        Some((w, id)) => (w.to_string(), set.format(&ball.node(id).word)),
        None => ("0".to_string(), "1".to_string()),
    };
    Ok(ReductionSummary {
        radius,
        depth,
        eta: eta.to_string(),
        shift,
        checked: sums.len(),
        violations,
        worst_excess,
        worst_word,
    })
}

/// The reduction `L(φ_L g) + L(φ_R g) ≤ (7/8)·L(g) + 3` on every even
/// element of `G` up to `radius`, with the two extremal blocks.
pub fn verify_reduction_g(group: &NamedGroup, ball: &mut Ball, radius: u32) -> Result<(Report, ReductionSummary)> {
    let summary = verify_reduction(ball, 1, Rational::new(7, 8), 3, radius)?;
    let mut report = Report::new(format!("{} length reduction up to radius {radius}", group.name));
    report.push(
        "L(φL g) + L(φR g) ≤ 7/8·L(g) + 3",
        summary.violations.is_empty(),
        format!(
            "{} even elements checked, {} violations; largest Σ − 7/8·L = {} at {}",
            summary.checked,
            summary.violations.len(),
            summary.worst_excess,
            summary.worst_word
        ),
    );
    for (word, before, after) in [("σaσb", 15, 13), ("σaσa", 16, 14)] {
        let s = split(&group.element(word)?, 1, ball)?;
        report.push(
            format!("{word}: {before} → {after}"),
            s.input_length == before && s.parts_length_sum == after,
            format!(
                "L = {}, parts ({}, {}) of lengths {:?}",
                s.input_length, s.part_words[0], s.part_words[1], s.part_lengths
            ),
        );
    }
    Ok((report, summary))
}

/// One extended generator of `I` with the lengths of its two sections.
#[derive(Clone, Debug, Serialize)]
pub struct LetterSplit {
    pub name: String,
    pub left_length: u32,
    pub right_length: u32,
    pub sum: u32,
    /// `L(σ) + L(g)`.
    pub budget: u32,
    pub good_by_nature: bool,
}

impl LetterSplit {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.sum as i64, self.budget as i64)
    }
}

/// Section lengths of a non-`σ` generator of the ball's generating set.
pub fn letter_split(group: &NamedGroup, ball: &mut Ball, gen: usize) -> Result<LetterSplit> {
    let set = ball.generating_set().clone();
    let generator = set.get(gen);
    let swap = set
        .swap_index()
        .ok_or_else(|| Error::InvalidParameter("generating set has no σ".into()))?;
    let g = Element::from_word(&group.table, generator.word.clone())?;
    let s = split(&g, 1, ball)?;
    let budget = set.get(swap).weight + generator.weight;
    Ok(LetterSplit {
        name: generator.name.clone(),
        left_length: s.part_lengths[0],
        right_length: s.part_lengths[1],
        sum: s.parts_length_sum,
        budget,
        good_by_nature: s.parts_length_sum < budget,
    })
}

/// `good_by_nature` for every non-`σ` generator, in generating-set order.
pub fn letter_splits(group: &NamedGroup, ball: &mut Ball) -> Result<Vec<LetterSplit>> {
    let swap = ball.generating_set().swap_index();
    let n = ball.generating_set().len();
    (0..n)
        .filter(|&i| Some(i) != swap)
        .map(|i| letter_split(group, ball, i))
        .collect()
}

pub fn good_by_nature(group: &NamedGroup, ball: &mut Ball, name: &str) -> Result<bool> {
    let idx = ball
        .generating_set()
        .index_of(name)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
    Ok(letter_split(group, ball, idx)?.good_by_nature)
}

/// The bad letters are exactly `a, a2, b2, b3`; every good letter splits with
/// ratio at most 29/31, attained by `b7`; no letter increases length.
pub fn verify_good_letter_bound(group: &NamedGroup, ball: &mut Ball) -> Result<(Report, Vec<LetterSplit>)> {
    let splits = letter_splits(group, ball)?;
    let mut report = Report::new(format!("good and bad letters of {}", group.name));
    let bad: Vec<&str> = splits
        .iter()
        .filter(|s| !s.good_by_nature)
        .map(|s| s.name.as_str())
        .collect();
    report.push(
        "bad letters are exactly a, a2, b2, b3",
        bad == ["a", "a2", "b2", "b3"],
        format!("bad: {}", bad.join(", ")),
    );
    let persists = splits.iter().all(|s| s.sum <= s.budget);
    report.push(
        "L(φL g) + L(φR g) ≤ L(σ) + L(g) for every generator",
        persists,
        "no generator increases length under splitting",
    );
    let bound = Rational::new(29, 31);
    let good: Vec<&LetterSplit> = splits.iter().filter(|s| s.good_by_nature).collect();
    let worst = good.iter().max_by_key(|s| s.ratio());
    report.push(
        "good letters satisfy the 29/31 bound",
        good.iter().all(|s| s.ratio() <= bound),
        match worst {
            Some(w) => format!("largest ratio {} at {}", w.ratio(), w.name),
            None => "no good letters".into(),
        },
    );
    let b7 = splits.iter().find(|s| s.name == "b7");
    report.push(
        "b7 attains 29/31",
        b7.is_some_and(|s| s.sum == 29 && s.budget == 31),
        match b7 {
            Some(s) => format!("{} vs {}", s.sum, s.budget),
            None => "b7 missing".into(),
        },
    );
    Ok((report, splits))
}

#[derive(Clone, Debug, Serialize)]
pub struct BasicToolCertificate {
    pub depth: u32,
    pub eta: String,
    pub eta_measured: bool,
    pub p: String,
    pub shift: u32,
    pub radius: u32,
    pub stabilizer_elements: usize,
    /// Smallest proportion over all radii `r ≤ radius`.
    pub proportion_observed: String,
    pub worst_radius: u32,
    pub validates: bool,
}

fn check_unit_interval(eta: Option<Rational>, p: Rational) -> Result<()> {
    if let Some(eta) = eta {
        if eta < Rational::from_integer(0) || eta >= Rational::from_integer(1) {
            return Err(Error::InvalidParameter(format!("η = {eta} must lie in [0, 1)")));
        }
    }
    if p <= Rational::from_integer(0) || p > Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("p = {p} must lie in (0, 1]")));
    }
    Ok(())
}

/// Smallest `η ≥ 0` such that, for every `r ≤ radius`, a proportion `p` of
/// the stabilizer elements of length `≤ r` satisfy `Σ ≤ η·r + shift`.
pub fn measure_eta(sums: &[SplitSum], p: Rational, shift: u32, radius: u32) -> Rational {
    let mut eta = Rational::from_integer(0);
    let mut sorted: Vec<&SplitSum> = sums.iter().collect();
    sorted.sort_by_key(|s| s.length);
    let mut excess: Vec<i64> = Vec::new();
    let mut next = 0;
    for r in 1..=radius {
        while next < sorted.len() && sorted[next].length <= r {
            excess.push(sorted[next].parts_length_sum as i64 - shift as i64);
            next += 1;
        }
        if excess.is_empty() {
            continue;
        }
        let n = excess.len() as i64;
        let need = (p * n).ceil().to_integer().max(1) as usize;
        let mut values = excess.clone();
        values.sort_unstable();
        let kth = values[need - 1].max(0);
        let candidate = Rational::new(kth, r as i64);
        if candidate > eta {
            eta = candidate;
        }
    }
    eta
}

/// Checks the hypothesis of the basic subexponential-growth criterion on a
/// finite ball: for each `r ≤ radius`, at least a proportion `p` of the
/// level-`depth` stabilizer elements of length `≤ r` satisfy
/// `Σ L(parts) ≤ η·r + shift`. Without `eta`, the smallest such `η` is
/// measured and the certificate validates iff it is below 1.
pub fn check_basic_tool(
    ball: &mut Ball,
    depth: u32,
    eta: Option<Rational>,
    p: Rational,
    shift: u32,
    radius: u32,
) -> Result<BasicToolCertificate> {
    check_unit_interval(eta, p)?;
    let sums = split_sums(ball, depth, radius)?;
    if sums.is_empty() {
        return Err(Error::InvalidParameter("empty stabilizer sample".into()));
    }
    let (eta, measured) = match eta {
        Some(e) => (e, false),
        None => (measure_eta(&sums, p, shift, radius), true),
    };
    let mut worst = Ratio::new(1i64, 1);
    let mut worst_radius = 0;
    for r in 0..=radius {
        let members: Vec<&SplitSum> = sums.iter().filter(|s| s.length <= r).collect();
        if members.is_empty() {
            continue;
        }
        let good = members
            .iter()
            .filter(|s| within(s.parts_length_sum, eta, r, shift))
            .count();
        let proportion = Ratio::new(good as i64, members.len() as i64);
        if proportion < worst {
            worst = proportion;
            worst_radius = r;
        }
    }
    Ok(BasicToolCertificate {
        depth,
        eta: eta.to_string(),
        eta_measured: measured,
        p: p.to_string(),
        shift,
        radius,
        stabilizer_elements: sums.len(),
        proportion_observed: worst.to_string(),
        worst_radius,
        validates: worst >= p && eta < Rational::from_integer(1),
    })
}
