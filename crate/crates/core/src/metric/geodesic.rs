//! Geodesic words recovered from predecessor sets, and alternation.

use serde::Serialize;

use super::ball::{Ball, GenIndex, NodeId};
use crate::automorphism::Element;
use crate::error::{Error, Result};
use crate::report::Report;

/// All minimum-length words of a ball element, in lexicographic order of
/// generator indices. Fails if more than `cap` words exist.
pub fn geodesic_words(ball: &Ball, id: NodeId, cap: usize) -> Result<Vec<Vec<GenIndex>>> {
    collect_words(ball, id, cap, None)
}

/// Geodesic words of an element, looked up in the ball.
pub fn geodesic_words_of(ball: &Ball, g: &Element) -> Result<Vec<Vec<GenIndex>>> {
    let id = ball
        .lookup(g)?
        .ok_or(Error::NotInBall { radius: ball.radius() })?;
    geodesic_words(ball, id, ball.options().geodesic_cap)
}

/// Geodesic words that alternate between `σ` and the other generators.
pub fn alternating_geodesic_words(
    ball: &Ball,
    id: NodeId,
    cap: usize,
) -> Result<Vec<Vec<GenIndex>>> {
    let swap = ball.generating_set().swap_index();
    collect_words(ball, id, cap, Some(swap))
}

// Suffix-first depth-first walk over predecessors. With `alternating`, a
// letter may only be prepended next to a letter of the other kind.
fn collect_words(
    ball: &Ball,
    id: NodeId,
    cap: usize,
    alternating: Option<Option<usize>>,
) -> Result<Vec<Vec<GenIndex>>> {
    let is_swap = |g: GenIndex| alternating.flatten() == Some(g as usize);
    let mut out = Vec::new();
    let mut suffix: Vec<GenIndex> = Vec::new();
    fn walk(
        ball: &Ball,
        id: NodeId,
        suffix: &mut Vec<GenIndex>,
        out: &mut Vec<Vec<GenIndex>>,
        cap: usize,
        alternating: bool,
        is_swap: &dyn Fn(GenIndex) -> bool,
    ) -> Result<()> {
        if id == 0 {
            if out.len() >= cap {
                return Err(Error::GeodesicTruncated { cap });
            }
            out.push(suffix.iter().rev().copied().collect());
            return Ok(());
        }
        for &(pred, gen) in &ball.node(id).preds {
            if alternating {
                if let Some(&next) = suffix.last() {
                    if is_swap(next) == is_swap(gen) {
                        continue;
                    }
                }
            }
            suffix.push(gen);
            walk(ball, pred, suffix, out, cap, alternating, is_swap)?;
            suffix.pop();
        }
        Ok(())
    }
    walk(
        ball,
        id,
        &mut suffix,
        &mut out,
        cap,
        alternating.is_some(),
        &is_swap,
    )?;
    out.sort();
    Ok(out)
}

/// Number of geodesic words of every element (saturating).
pub fn geodesic_counts(ball: &Ball) -> Vec<u64> {
    let mut counts = vec![0u64; ball.len()];
    counts[0] = 1;
    for (id, node) in ball.nodes().iter().enumerate().skip(1) {
        counts[id] = node
            .preds
            .iter()
            .fold(0u64, |acc, &(p, _)| acc.saturating_add(counts[p as usize]));
    }
    counts
}

const EMPTY: u8 = 1;
const ENDS_SWAP: u8 = 2;
const ENDS_OTHER: u8 = 4;

/// For each element, which kinds of alternating geodesic words reach it:
/// bit 1 the empty word, bit 2 words ending in `σ`, bit 4 words ending in
/// another generator.
pub fn alternation_states(ball: &Ball) -> Vec<u8> {
    let swap = ball.generating_set().swap_index();
    let mut states = vec![0u8; ball.len()];
    states[0] = EMPTY;
    for (id, node) in ball.nodes().iter().enumerate().skip(1) {
        let mut s = 0;
        for &(p, g) in &node.preds {
            let prev = states[p as usize];
            if Some(g as usize) == swap {
                if prev & (EMPTY | ENDS_OTHER) != 0 {
                    s |= ENDS_SWAP;
                }
            } else if prev & (EMPTY | ENDS_SWAP) != 0 {
                s |= ENDS_OTHER;
            }
        }
        states[id] = s;
    }
    states
}

#[derive(Clone, Debug, Serialize)]
pub struct AlternationSummary {
    pub radius: u32,
    pub elements: usize,
    pub without_alternating_geodesic: usize,
    pub examples: Vec<String>,
}

/// Counts elements of the ball that have no alternating geodesic word.
pub fn alternation_summary(ball: &Ball) -> AlternationSummary {
    let states = alternation_states(ball);
    let set = ball.generating_set();
    let bad: Vec<usize> = (0..ball.len()).filter(|&i| states[i] == 0).collect();
    AlternationSummary {
        radius: ball.radius(),
        elements: ball.len(),
        without_alternating_geodesic: bad.len(),
        examples: bad
            .iter()
            .take(5)
            .map(|&i| set.format(&ball.nodes()[i].word))
            .collect(),
    }
}

/// Every element of the ball has at least one alternating geodesic word.
pub fn alternation_check(ball: &Ball) -> Report {
    let summary = alternation_summary(ball);
    let mut report = Report::new(format!("alternating geodesics up to radius {}", summary.radius));
    report.push(
        "every element has an alternating geodesic",
        summary.without_alternating_geodesic == 0,
        format!(
            "{} of {} elements lack one{}",
            summary.without_alternating_geodesic,
            summary.elements,
            if summary.examples.is_empty() {
                String::new()
            } else {
                format!(", e.g. {}", summary.examples.join(", "))
            }
        ),
    );
    report
}
