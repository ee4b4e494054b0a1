use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::portrait::Portrait;
use super::table::{Activity, Letter, RecursionTable, Word};
use crate::error::{Error, Result};

/// A vertex of the binary tree, given by its path from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<bool>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    /// `false` is `L`, `true` is `R`.
    pub fn from_sides(sides: Vec<bool>) -> Self {
        Vertex(sides)
    }

    pub fn sides(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All vertices of a level, left to right.
    pub fn level(level: u32) -> impl Iterator<Item = Vertex> {
        (0..1u64 << level).map(move |bits| {
            Vertex((0..level).rev().map(|i| (bits >> i) & 1 == 1).collect())
        })
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'L' | 'l' | '0' => Ok(false),
                'R' | 'r' | '1' => Ok(true),
                _ => Err(Error::InvalidParameter(format!("bad vertex letter `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Vertex)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &side in &self.0 {
            f.write_str(if side { "R" } else { "L" })?;
        }
        Ok(())
    }
}

/// A group element: a word over the generators of a table. Words are not
/// normal forms; use [`Element::equals`] to compare elements.
#[derive(Clone)]
pub struct Element {
    table: Arc<RecursionTable>,
    word: Word,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table.format_word(&self.word))
    }
}

impl Element {
    pub fn identity(table: &Arc<RecursionTable>) -> Self {
        Element {
            table: Arc::clone(table),
            word: Word::empty(),
        }
    }

    pub fn from_word(table: &Arc<RecursionTable>, word: Word) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&l| l as usize >= table.len()) {
            return Err(Error::UnknownGenerator(format!("#{bad}")));
        }
        Ok(Element {
            table: Arc::clone(table),
            word,
        })
    }

    pub fn parse(table: &Arc<RecursionTable>, text: &str) -> Result<Self> {
        Ok(Element {
            table: Arc::clone(table),
            word: table.parse_word(text)?,
        })
    }

    pub fn table(&self) -> &Arc<RecursionTable> {
        &self.table
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    fn same_table(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    fn with_word(&self, word: Word) -> Element {
        Element {
            table: Arc::clone(&self.table),
            word,
        }
    }

    /// `self · other`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        self.same_table(other)?;
        Ok(self.with_word(self.word.concat(&other.word)))
    }

    pub fn pow(&self, n: usize) -> Element {
        self.with_word(self.word.repeat(n))
    }

    pub fn inverse(&self) -> Element {
        self.with_word(self.table.inverse_of(&self.word))
    }

    pub fn reduced(&self) -> Element {
        self.with_word(self.table.reduce(&self.word))
    }

    pub fn activity(&self) -> Activity {
        self.table.activity_of(&self.word)
    }

    /// `(left, right)` with `self = (left, right)·activity`.
    pub fn sections(&self) -> (Element, Element) {
        let (l, r) = self.table.sections_of(&self.word);
        (self.with_word(l), self.with_word(r))
    }

    /// Section at an arbitrary vertex.
    pub fn section_at(&self, vertex: &Vertex) -> Element {
        let mut word = self.word.clone();
        for &side in vertex.sides() {
            word = self.table.reduce(&self.table.section_of(&word, side));
        }
        self.with_word(word)
    }

    pub fn is_trivial(&self) -> Result<bool> {
        self.table.is_trivial_word(&self.word)
    }

    pub fn equals(&self, other: &Element) -> Result<bool> {
        self.same_table(other)?;
        self.table.words_equal(&self.word, &other.word)
    }

    /// Whether `self = (left, right)·activity`.
    pub fn equals_pair(&self, left: &Element, right: &Element, activity: Activity) -> Result<bool> {
        self.same_table(left)?;
        self.same_table(right)?;
        if self.activity() != activity {
            return Ok(false);
        }
        let (l, r) = self.sections();
        Ok(l.equals(left)? && r.equals(right)?)
    }

    pub fn portrait(&self, depth: u32) -> Portrait {
        self.table.portrait_of(&self.word, depth)
    }

    /// Image of a vertex, computed level by level from activities and sections.
    pub fn act(&self, vertex: &Vertex) -> Vertex {
        let mut word = self.table.reduce(&self.word);
        let mut image = Vec::with_capacity(vertex.len());
        for &side in vertex.sides() {
            image.push(side ^ self.table.swap_parity(&word));
            word = self.table.reduce(&self.table.section_of(&word, side));
        }
        Vertex(image)
    }

    /// True iff `self` fixes every vertex of level `≤ level`.
    pub fn fixes_level(&self, level: u32) -> bool {
        if level == 0 {
            return true;
        }
        self.portrait(level - 1).fixes_levels(level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grig() -> Arc<RecursionTable> {
        RecursionTable::parse("σ = (1, 1) swap\na = (σ, b)\nb = (σ, c)\nc = (1, a)\n")
            .unwrap()
            .table
    }

    #[test]
    fn vertex_roundtrip_and_levels() {
        let v: Vertex = "LRR".parse().unwrap();
        assert_eq!(v.to_string(), "LRR");
        let level: Vec<String> = Vertex::level(2).map(|v| v.to_string()).collect();
        assert_eq!(level, ["LL", "LR", "RL", "RR"]);
        assert!("LX".parse::<Vertex>().is_err());
    }

    #[test]
    fn compose_rejects_foreign_table() {
        let g1 = grig();
        let g2 = grig();
        let a = Element::parse(&g1, "a").unwrap();
        let b = Element::parse(&g2, "a").unwrap();
        assert!(matches!(a.compose(&b), Err(Error::TableMismatch)));
        assert!(matches!(a.equals(&b), Err(Error::TableMismatch)));
    }

    #[test]
    fn section_at_vertex_matches_repeated_sections() {
        let t = grig();
        let g = Element::parse(&t, "σaσbcσaσ").unwrap();
        let (l, _) = g.sections();
        let (_, lr) = l.sections();
        assert!(g.section_at(&"LR".parse().unwrap()).equals(&lr).unwrap());
    }

    #[test]
    fn fixes_level_on_generators() {
        let t = grig();
        let a = Element::parse(&t, "a").unwrap();
        assert!(a.fixes_level(1));
        assert!(!a.fixes_level(2));
        assert!(!Element::parse(&t, "σ").unwrap().fixes_level(1));
    }
}
