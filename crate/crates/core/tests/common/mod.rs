//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use wreath_core::automorphism::Vertex;
use wreath_core::{Ball, Element, GeneratingSet};

/// Depth of the action signature used to bucket words before exact comparison.
const SIGNATURE_LEVEL: u32 = 7;

/// Images of every level-`SIGNATURE_LEVEL` vertex, computed by letting the
/// element act vertex by vertex.
pub fn action_signature(g: &Element) -> Vec<Vec<bool>> {
    Vertex::level(SIGNATURE_LEVEL)
        .map(|v| g.act(&v).sides().to_vec())
        .collect()
}

/// One element found by the oracle, with its least word weight.
pub struct OracleElement {
    pub element: Element,
    pub length: u32,
    pub word: Vec<u16>,
}

/// All elements of weighted length `≤ radius`, found by listing every word of
/// weight `≤ radius` and merging equal ones.
pub fn brute_force_ball(set: &GeneratingSet, radius: u32) -> Vec<OracleElement> {
    let mut words: Vec<(u32, Vec<u16>)> = vec![(0, Vec::new())];
    let mut frontier = vec![(0u32, Vec::<u16>::new())];
    while let Some((w, word)) = frontier.pop() {
        for g in 0..set.len() {
            let nw = w + set.get(g).weight;
            if nw <= radius {
                let mut next = word.clone();
                next.push(g as u16);
                words.push((nw, next.clone()));
                frontier.push((nw, next));
            }
        }
    }
    words.sort();
    let table = set.table();
    let mut buckets: HashMap<Vec<Vec<bool>>, Vec<usize>> = HashMap::new();
    let mut out: Vec<OracleElement> = Vec::new();
    for (w, word) in words {
        let element = Element::from_word(table, set.expand(&word)).unwrap();
        let bucket = buckets.entry(action_signature(&element)).or_default();
        let known = bucket
            .iter()
            .any(|&i| out[i].element.equals(&element).unwrap());
        if !known {
            bucket.push(out.len());
            out.push(OracleElement {
                element,
                length: w,
                word,
            });
        }
    }
    out
}

/// Compares a ball with the oracle; returns a description of the first
/// disagreement.
pub fn compare_with_oracle(ball: &Ball, radius: u32) -> Result<usize, String> {
    let set = ball.generating_set();
    let oracle = brute_force_ball(set, radius);
    if ball.gamma(radius) as usize != oracle.len() {
        return Err(format!(
            "γ({radius}): ball {} vs oracle {}",
            ball.gamma(radius),
            oracle.len()
        ));
    }
    for r in 0..=radius {
        let expected = oracle.iter().filter(|e| e.length <= r).count() as u64;
        if ball.gamma(r) != expected {
            return Err(format!("γ({r}): ball {} vs oracle {expected}", ball.gamma(r)));
        }
    }
    for e in &oracle {
        match ball.lookup(&e.element).unwrap() {
            Some(id) if ball.node(id).length == e.length => {}
            Some(id) => {
                return Err(format!(
                    "{}: ball length {} vs oracle {}",
                    set.format(&e.word),
                    ball.node(id).length,
                    e.length
                ))
            }
            None => return Err(format!("{} missing from ball", set.format(&e.word))),
        }
    }
    Ok(oracle.len())
}
