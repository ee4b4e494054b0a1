//! Built-in groups `G`, `H` and `I`, their generating sets and weights, and
//! checks of their small structure lemmas.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::automorphism::{Activity, Element, Letter, PortraitKey, RecursionTable, Word};
use crate::error::{Error, Result};
use crate::report::Report;

/// Portrait depth used for hashing elements.
pub const KEY_DEPTH: u32 = 8;

/// Default cutoff for order computations.
pub const DEFAULT_ORDER_CUTOFF: u32 = 256;

const GRIGORCHUK: &str = "\
# First Grigorchuk group
σ = (1, 1) swap
a = (σ, b)
b = (σ, c)
c = (1, a)
";

const MODEL_H: &str = "\
σ = (1, 1) swap
a = (σ, b)
b = (1, a)
";

const IMG_Z2_PLUS_I: &str = "\
# IMG(z² + i)
σ = (1, 1) swap
a = (σ, b)
b = (a, 1)
";

/// Rows `(name, element, left section, right section)` of the extended
/// generating set of `I`: the nontrivial elements of the dihedral group ⟨a, b⟩.
const I_EXTENDED_ROWS: [(&str, &str, &str, &str); 16] = [
    ("a", "a", "σ", "b"),
    ("a2", "ab", "σa", "b"),
    ("a3", "aba", "σaσ", "1"),
    ("a4", "abab", "σaσa", "1"),
    ("a5", "ababa", "σaσaσ", "b"),
    ("a6", "ababab", "σaσaσa", "b"),
    ("a7", "abababa", "σaσaσaσ", "1"),
    ("a8", "abababab", "σaσaσaσa", "1"),
    ("b", "b", "a", "1"),
    ("b2", "ba", "aσ", "b"),
    ("b3", "bab", "aσa", "b"),
    ("b4", "baba", "aσaσ", "1"),
    ("b5", "babab", "aσaσa", "1"),
    ("b6", "bababa", "aσaσaσ", "b"),
    ("b7", "bababab", "aσaσaσa", "b"),
    ("b8", "babababa", "aσaσaσaσ", "1"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupName {
    G,
    H,
    I,
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(GroupName::G),
            "H" | "h" => Ok(GroupName::H),
            "I" | "i" => Ok(GroupName::I),
            other => Err(Error::InvalidParameter(format!("unknown group `{other}`"))),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupName::G => "G",
            GroupName::H => "H",
            GroupName::I => "I",
        };
        f.write_str(s)
    }
}

/// A weighted generator: a word over the table letters and a positive weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub word: Word,
    pub weight: u32,
}

/// Finite weighted generating set of a self-similar group.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    table: Arc<RecursionTable>,
    generators: Vec<Generator>,
}

impl GeneratingSet {
    pub fn new(table: &Arc<RecursionTable>, generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("empty generating set".into()));
        }
        if generators.len() > u16::MAX as usize {
            return Err(Error::InvalidParameter("too many generators".into()));
        }
        for g in &generators {
            if g.weight == 0 {
                return Err(Error::InvalidParameter(format!(
                    "generator `{}` has zero weight",
                    g.name
                )));
            }
            if g.word.iter().any(|&l| l as usize >= table.len()) {
                return Err(Error::UnknownGenerator(g.name.clone()));
            }
        }
        Ok(GeneratingSet {
            table: Arc::clone(table),
            generators,
        })
    }

    /// One generator per table letter with the given weights (default 1).
    pub fn from_letters(table: &Arc<RecursionTable>, weights: &[(char, u32)]) -> Result<Self> {
        let generators = table
            .names()
            .iter()
            .enumerate()
            .map(|(i, &name)| Generator {
                name: name.to_string(),
                word: Word::new(vec![i as Letter]),
                weight: weights
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map_or(1, |&(_, w)| w),
            })
            .collect();
        GeneratingSet::new(table, generators)
    }

    pub fn table(&self) -> &Arc<RecursionTable> {
        &self.table
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Index of the generator that is the bare swap letter.
    pub fn swap_index(&self) -> Option<usize> {
        let swap = self.table.swap_letter()?;
        self.generators
            .iter()
            .position(|g| g.word.letters() == [swap])
    }

    /// The weight assignment as a name → weight map.
    pub fn weights(&self) -> BTreeMap<String, u32> {
        self.generators
            .iter()
            .map(|g| (g.name.clone(), g.weight))
            .collect()
    }

    /// Weight of a single table letter, when some generator is exactly that letter.
    pub fn letter_weight(&self, letter: Letter) -> Option<u32> {
        self.generators
            .iter()
            .filter(|g| g.word.letters() == [letter])
            .map(|g| g.weight)
            .min()
    }

    /// Weighted length of a letter word, an upper bound for the group length.
    pub fn letter_word_weight(&self, word: &[Letter]) -> Option<u32> {
        word.iter().map(|&l| self.letter_weight(l)).sum()
    }

    pub fn word_weight(&self, gens: &[u16]) -> u32 {
        gens.iter()
            .map(|&g| self.generators[g as usize].weight)
            .sum()
    }

    /// Expands a word over this generating set into table letters.
    pub fn expand(&self, gens: &[u16]) -> Word {
        let mut word = Word::empty();
        for &g in gens {
            word.extend_from(&self.generators[g as usize].word);
        }
        word
    }

    pub fn format(&self, gens: &[u16]) -> String {
        if gens.is_empty() {
            return "1".to_string();
        }
        gens.iter()
            .map(|&g| self.generators[g as usize].name.as_str())
            .collect()
    }

    /// Parses a word over generator names by greedy longest match.
    pub fn parse(&self, text: &str) -> Result<Vec<u16>> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let text = text.replace('s', if self.index_of("s").is_some() { "s" } else { "σ" });
        let mut out = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            if let Some(stripped) = rest.strip_prefix('1') {
                rest = stripped;
                continue;
            }
            let best = self
                .generators
                .iter()
                .enumerate()
                .filter(|(_, g)| rest.starts_with(g.name.as_str()))
                .max_by_key(|(_, g)| g.name.len())
                .ok_or_else(|| Error::UnknownGenerator(rest.chars().next().unwrap().to_string()))?;
            out.push(best.0 as u16);
            rest = &rest[best.1.name.len()..];
        }
        Ok(out)
    }
}

/// One row of the extended generator table of `I`.
#[derive(Clone, Debug)]
pub struct ExtendedRow {
    pub name: String,
    pub word: Word,
    pub left: Word,
    pub right: Word,
}

/// A group with its generating sets and weights.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub kind: Option<GroupName>,
    pub table: Arc<RecursionTable>,
    pub standard: GeneratingSet,
    pub extended_rows: Vec<ExtendedRow>,
    pub extended: Option<GeneratingSet>,
}

impl NamedGroup {
    /// The generating set used for balls and geodesics: the extended set when
    /// there is one. Both induce the same length function.
    pub fn generating_set(&self) -> &GeneratingSet {
        self.extended.as_ref().unwrap_or(&self.standard)
    }

    pub fn element(&self, text: &str) -> Result<Element> {
        Element::parse(&self.table, text)
    }

    /// Loads a group from recursion-spec text; every letter is a generator.
    pub fn from_recursion_text(name: &str, text: &str, state_budget: usize) -> Result<Self> {
        let parsed = RecursionTable::parse_with_budget(text, state_budget)?;
        let standard = GeneratingSet::from_letters(&parsed.table, &parsed.weights)?;
        Ok(NamedGroup {
            name: name.to_string(),
            kind: None,
            table: parsed.table,
            standard,
            extended_rows: Vec::new(),
            extended: None,
        })
    }

    pub fn swap(&self) -> Element {
        let swap = self.table.swap_letter().expect("built-in groups contain σ");
        Element::from_word(&self.table, Word::new(vec![swap])).expect("letter in table")
    }
}

fn gen(table: &Arc<RecursionTable>, name: &str, word: &str, weight: u32) -> Generator {
    Generator {
        name: name.to_string(),
        word: table.parse_word(word).expect("built-in word"),
        weight,
    }
}

/// The built-in groups with the weights used in the growth arguments.
pub fn builtin(name: GroupName) -> NamedGroup {
    builtin_with_budget(name, crate::automorphism::DEFAULT_STATE_BUDGET)
}

pub fn builtin_with_budget(name: GroupName, state_budget: usize) -> NamedGroup {
    let text = match name {
        GroupName::G => GRIGORCHUK,
        GroupName::H => MODEL_H,
        GroupName::I => IMG_Z2_PLUS_I,
    };
    let table = RecursionTable::parse_with_budget(text, state_budget)
        .expect("built-in table parses")
        .table;
    let t = &table;
    let standard = match name {
        GroupName::G => vec![
            gen(t, "σ", "σ", 3),
            gen(t, "a", "a", 5),
            gen(t, "b", "b", 4),
            gen(t, "c", "c", 3),
        ],
        GroupName::H => vec![
            gen(t, "σ", "σ", 3),
            gen(t, "a", "a", 5),
            gen(t, "b", "b", 4),
            gen(t, "c", "ab", 3),
        ],
        GroupName::I => vec![gen(t, "σ", "σ", 3), gen(t, "a", "a", 4), gen(t, "b", "b", 4)],
    };
    let standard = GeneratingSet::new(&table, standard).expect("built-in generating set");
    let (extended_rows, extended) = if name == GroupName::I {
        let rows: Vec<ExtendedRow> = I_EXTENDED_ROWS
            .iter()
            .map(|&(n, w, l, r)| ExtendedRow {
                name: n.to_string(),
                word: table.parse_word(w).expect("row word"),
                left: table.parse_word(l).expect("row left"),
                right: table.parse_word(r).expect("row right"),
            })
            .collect();
        let weight_of = |w: &Word| standard.letter_word_weight(w).expect("letters weighted");
        let mut gens = vec![gen(t, "σ", "σ", 3)];
        // b8 = a8, so only fifteen distinct non-σ generators.
        gens.extend(rows.iter().filter(|r| r.name != "b8").map(|r| Generator {
            name: r.name.clone(),
            word: r.word.clone(),
            weight: weight_of(&r.word),
        }));
        let set = GeneratingSet::new(&table, gens).expect("extended generating set");
        (rows, Some(set))
    } else {
        (Vec::new(), None)
    };
    NamedGroup {
        name: name.to_string(),
        kind: Some(name),
        table,
        standard,
        extended_rows,
        extended,
    }
}

/// Result of an order computation with a cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(u32),
    ExceedsCutoff(u32),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::ExceedsCutoff(c) => write!(f, "> {c}"),
        }
    }
}

/// Order of an element, searched up to `cutoff`.
///
/// The order is a multiple of the order of the depth-8 portrait, so only
/// those multiples are tested exactly.
pub fn order(g: &Element, cutoff: u32) -> Result<Order> {
    let step = g.portrait(KEY_DEPTH).order();
    let mut n = step;
    while n <= cutoff as u64 {
        if g.pow(n as usize).is_trivial()? {
            return Ok(Order::Finite(n as u32));
        }
        n += step;
    }
    Ok(Order::ExceedsCutoff(cutoff))
}

/// Elements of the subgroup generated by `gens`, by closure under right
/// multiplication; fails if more than `limit` elements appear.
pub fn enumerate_subgroup(gens: &[Element], limit: usize) -> Result<Vec<Element>> {
    let table = match gens.first() {
        Some(g) => Arc::clone(g.table()),
        None => return Ok(Vec::new()),
    };
    let mut elements = vec![Element::identity(&table)];
    let mut index: HashMap<PortraitKey, Vec<usize>> = HashMap::new();
    index
        .entry(elements[0].portrait(KEY_DEPTH).key())
        .or_default()
        .push(0);
    let mut next = 0;
    while next < elements.len() {
        let current = elements[next].clone();
        next += 1;
        for g in gens {
            let candidate = current.compose(g)?.reduced();
            let key = candidate.portrait(KEY_DEPTH).key();
            let bucket = index.entry(key).or_default();
            let mut seen = false;
            for &i in bucket.iter() {
                if elements[i].equals(&candidate)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                if elements.len() >= limit {
                    return Err(Error::InvalidParameter(format!(
                        "subgroup has more than {limit} elements"
                    )));
                }
                bucket.push(elements.len());
                elements.push(candidate);
            }
        }
    }
    Ok(elements)
}

fn alternating_word(first: char, second: char, len: usize) -> String {
    (0..len)
        .map(|i| if i % 2 == 0 { first } else { second })
        .collect()
}

/// Checks the extended generator table of `I` row by row.
pub fn verify_extended_table(group: &NamedGroup) -> Result<Report> {
    let mut report = Report::new(format!("extended generator table of {}", group.name));
    if group.extended_rows.is_empty() {
        report.push("table present", false, "group has no extended generators");
        return Ok(report);
    }
    let t = &group.table;
    let set = group.extended.as_ref().expect("extended set with rows");
    for row in &group.extended_rows {
        let element = Element::from_word(t, row.word.clone())?;
        let (prefix, second) = if row.name.starts_with('a') { ('a', 'b') } else { ('b', 'a') };
        let index: usize = row.name[1..].parse().unwrap_or(1);
        let expected = Element::parse(t, &alternating_word(prefix, second, index))?;
        let left = Element::from_word(t, row.left.clone())?;
        let right = Element::from_word(t, row.right.clone())?;
        let word_ok = expected.equals(&element)?;
        let pair_ok = element.equals_pair(&left, &right, Activity::Identity)?;
        let weight_ok = match set.index_of(&row.name) {
            Some(i) => set.get(i).weight == 4 * index as u32,
            None => row.name == "b8",
        };
        report.push(
            format!("row {}", row.name),
            word_ok && pair_ok && weight_ok,
            format!(
                "{} = {} = ({}, {}), weight {}",
                row.name,
                t.format_word(&row.word),
                t.format_word(&row.left),
                t.format_word(&row.right),
                4 * index
            ),
        );
    }
    let a8 = group.element("abababab")?;
    let b8 = group.element("babababa")?;
    report.push("a8 = b8", a8.equals(&b8)?, "abababab = babababa");
    Ok(report)
}

fn push_order(report: &mut Report, label: &str, g: &Element, expected: u32) -> Result<()> {
    let found = order(g, DEFAULT_ORDER_CUTOFF)?;
    report.push(
        format!("order({label}) = {expected}"),
        found == Order::Finite(expected),
        format!("computed {found}"),
    );
    Ok(())
}

/// Checks that `⟨x, y⟩` is dihedral of order `2n`: `x² = y² = (xy)ⁿ = 1`,
/// `xy` has order exactly `n`, and the subgroup has `2n` elements.
pub fn check_dihedral(report: &mut Report, label: &str, x: &Element, y: &Element, n: u32) -> Result<()> {
    let xy = x.compose(y)?;
    let relations = x.pow(2).is_trivial()? && y.pow(2).is_trivial()? && xy.pow(n as usize).is_trivial()?;
    report.push(
        format!("{label}: relations"),
        relations,
        format!("x² = y² = (xy)^{n} = 1"),
    );
    push_order(report, &format!("{label}: xy"), &xy, n)?;
    let elements = enumerate_subgroup(&[x.clone(), y.clone()], 4 * n as usize + 4)?;
    report.push(
        format!("{label}: subgroup size"),
        elements.len() == 2 * n as usize,
        format!("{} elements, expected {}", elements.len(), 2 * n),
    );
    Ok(())
}

/// Finite consequences of the small structure lemmas for `G`, `H` and `I`.
pub fn verify_structure_lemmas(group: &NamedGroup) -> Result<Report> {
    let mut report = Report::new(format!("structure lemmas of {}", group.name));
    let e = |w: &str| group.element(w);
    match group.kind {
        Some(GroupName::G) => {
            let klein = [e("")?, e("a")?, e("b")?, e("c")?];
            let names = ["1", "a", "b", "c"];
            let mut closed = true;
            for x in &klein {
                for y in &klein {
                    let xy = x.compose(y)?;
                    let mut hit = false;
                    for z in &klein {
                        hit |= xy.equals(z)?;
                    }
                    closed &= hit;
                }
            }
            report.push("{1,a,b,c} closed under products", closed, "all 16 products land in the set");
            for w in ["aa", "bb", "cc"] {
                report.push(format!("{w} = 1"), e(w)?.is_trivial()?, "square of a generator");
            }
            for (lhs, rhs) in [("ab", "c"), ("bc", "a"), ("ca", "b"), ("ba", "c")] {
                report.push(format!("{lhs} = {rhs}"), e(lhs)?.equals(&e(rhs)?)?, "Klein four-group relation");
            }
            let mut distinct = true;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    distinct &= !klein[i].equals(&klein[j])?;
                }
            }
            report.push(
                "1, a, b, c pairwise distinct",
                distinct,
                format!("{} are four different elements", names.join(", ")),
            );
        }
        Some(GroupName::H) => {
            for w in ["aa", "bb", "abab"] {
                report.push(format!("{w} = 1"), e(w)?.is_trivial()?, "⟨a, b⟩ is a Klein four-group");
            }
            let mut distinct = true;
            let klein = [e("")?, e("a")?, e("b")?, e("ab")?];
            for i in 0..4 {
                for j in (i + 1)..4 {
                    distinct &= !klein[i].equals(&klein[j])?;
                }
            }
            report.push("1, a, b, ab pairwise distinct", distinct, "⟨a, b⟩ has four elements");
            push_order(&mut report, "σb", &e("σb")?, 4)?;
            push_order(&mut report, "σa", &e("σa")?, 8)?;
            let sc = e("σab")?;
            let mut first_trivial = None;
            for k in 1..=64usize {
                if sc.pow(k).is_trivial()? {
                    first_trivial = Some(k);
                    break;
                }
            }
            report.push(
                "(σc)^k ≠ 1 for 1 ≤ k ≤ 64",
                first_trivial.is_none(),
                match first_trivial {
                    Some(k) => format!("(σc)^{k} is trivial"),
                    None => "no trivial power up to 64".to_string(),
                },
            );
            let cs = e("abσ")?;
            let mut replicates = true;
            for n in 1..=8usize {
                replicates &= sc.pow(2 * n).equals_pair(&cs.pow(n), &sc.pow(n), Activity::Identity)?;
            }
            report.push(
                "(σc)^(2n) = ((cσ)^n, (σc)^n) for n ≤ 8",
                replicates,
                "c replicates itself under squaring",
            );
        }
        Some(GroupName::I) => {
            let (s, a, b) = (e("σ")?, e("a")?, e("b")?);
            check_dihedral(&mut report, "⟨σ, b⟩ ≅ D4", &s, &b, 4)?;
            check_dihedral(&mut report, "⟨σ, a⟩ ≅ D8", &s, &a, 8)?;
            check_dihedral(&mut report, "⟨a, b⟩ ≅ D8", &a, &b, 8)?;
            push_order(&mut report, "σb", &e("σb")?, 4)?;
            push_order(&mut report, "σa", &e("σa")?, 8)?;
            push_order(&mut report, "ab", &e("ab")?, 8)?;
        }
        None => {
            for (i, g) in group.standard.generators().iter().enumerate() {
                let el = Element::from_word(&group.table, g.word.clone())?;
                let inv = el.inverse();
                report.push(
                    format!("generator {} has an inverse", group.standard.get(i).name),
                    el.compose(&inv)?.is_trivial()?,
                    "g·g⁻¹ = 1",
                );
            }
        }
    }
    Ok(report)
}
