//! Symbolic checks of the basic patterns P1, P2 and the block templates.

use super::blocks::{BlockCatalog, Blocks, PatternId, Template, TEMPLATE_SUPPLEMENT};
use super::word::AlternatingWord;
use crate::automorphism::Word;
use crate::error::{Error, Result};
use crate::groups::{GroupName, NamedGroup};
use crate::metric::{Ball, GenIndex};
use crate::report::Report;
use crate::splitting::letter_splits;

struct Ctx<'a> {
    group: &'a NamedGroup,
    blocks: Blocks,
    good: Vec<String>,
}

impl Ctx<'_> {
    fn letters(&self, gens: &[GenIndex]) -> Word {
        self.group.generating_set().expand(gens)
    }

    fn text(&self, text: &str) -> Result<Word> {
        self.group.table.parse_word(text)
    }

    fn sections(&self, w: &[u8]) -> (Word, Word) {
        let t = &self.group.table;
        let (l, r) = t.sections_of(w);
        (t.reduce(&l), t.reduce(&r))
    }

    fn show(&self, w: &[u8]) -> String {
        self.group.table.format_word(w)
    }

    fn equal(&self, u: &[u8], v: &[u8]) -> Result<bool> {
        self.group.table.words_equal(u, v)
    }

    /// Pieces of a letter word between `σ` letters.
    fn segments(&self, w: &[u8]) -> Vec<Word> {
        let swap = self.group.table.swap_letter().expect("σ present");
        w.split(|&l| l == swap).map(|s| Word::new(s.to_vec())).collect()
    }

    /// `w = xσmσy` with `x, y` free of `σ` and `m` equal to `middle`.
    fn has_shape(&self, w: &[u8], middle: &[u8]) -> Result<bool> {
        let segs = self.segments(w);
        Ok(segs.len() == 3 && self.equal(&segs[1], middle)?)
    }

    fn is_good(&self, name: &str) -> bool {
        self.good.iter().any(|g| g == name)
    }

    fn fills(&self, holes: usize) -> Vec<Vec<GenIndex>> {
        let mut out = vec![Vec::new()];
        for _ in 0..holes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    self.blocks.bad_letters.iter().map(move |&b| {
                        let mut next = prefix.clone();
                        next.push(b);
                        next
                    })
                })
                .collect();
        }
        out
    }

    fn instance(&self, template: &Template, fill: &[GenIndex]) -> AlternatingWord {
        AlternatingWord::new(template.pre_swap, template.instantiate(fill), template.post_swap)
    }

    fn instance_letters(&self, template: &Template, fill: &[GenIndex]) -> Word {
        let set = self.group.generating_set();
        self.letters(&self.instance(template, fill).to_gen_word(set))
    }

    fn fill_names(&self, fill: &[GenIndex]) -> String {
        let set = self.group.generating_set();
        fill.iter()
            .map(|&g| set.get(g as usize).name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Whether the letter word, read over the extended set, is literally an
    /// instance of a template with the given id.
    fn is_instance_of(&self, text: &str, id: PatternId) -> Result<bool> {
        let word = AlternatingWord::parse(self.group.generating_set(), text)?;
        Ok(self
            .blocks
            .find_good_blocks(&word)
            .iter()
            .any(|m| m.pattern == id && m.position == 0 && m.len == word.len()))
    }
}

fn context<'a>(group: &'a NamedGroup, ball: &mut Ball) -> Result<Ctx<'a>> {
    if group.kind != Some(GroupName::I) {
        return Err(Error::InvalidParameter(format!(
            "block patterns are defined for I, not {}",
            group.name
        )));
    }
    let good = letter_splits(group, ball)?
        .into_iter()
        .filter(|s| s.good_by_nature)
        .map(|s| s.name)
        .collect();
    Ok(Ctx {
        group,
        blocks: Blocks::new(group.generating_set(), BlockCatalog::Listed)?,
        good,
    })
}

fn basic_patterns(ctx: &Ctx, report: &mut Report) -> Result<()> {
    let swap = ctx.text("σ")?;
    for (id, outer, expected) in [(PatternId::P1, "a", "σbσ"), (PatternId::P2, "b", "aba")] {
        for fill in ctx.fills(1) {
            let set = ctx.group.generating_set();
            let inner = ctx.letters(&fill);
            let mut w = ctx.text(outer)?;
            w.extend_from(&swap);
            w.extend_from(&inner);
            w.extend_from(&swap);
            w.extend_from(&ctx.text(outer)?);
            let (l, _) = ctx.sections(&w);
            // Shifted by one σ, the string lands in the other section.
            let shifted = swap.concat(&w).concat(&swap);
            let (_, r) = ctx.sections(&shifted);
            let ok = ctx.show(&l) == expected && ctx.show(&r) == expected;
            report.push(
                format!("{id} with □ = {}", set.format(&fill)),
                ok,
                format!(
                    "φL({}) = {}, φR(σ…σ) = {}",
                    ctx.show(&w),
                    ctx.show(&l),
                    ctx.show(&r)
                ),
            );
        }
    }
    let a3 = ctx.text("aba")?;
    let a3_gen = ctx.group.generating_set().index_of("a3").expect("a3 generator");
    let is_a3 = ctx.equal(&a3, &ctx.group.generating_set().get(a3_gen).word)?;
    report.push(
        "P2: aba is the good generator a3",
        is_a3 && ctx.is_good("a3"),
        format!("a3 good by nature: {}", ctx.is_good("a3")),
    );
    Ok(())
}

fn templates_ab(ctx: &Ctx, report: &mut Report) -> Result<()> {
    for (id, middle, name) in [(PatternId::A, "b", "b"), (PatternId::B, "aba", "a3")] {
        let middle_word = ctx.text(middle)?;
        for template in ctx.blocks.templates.iter().filter(|t| t.id == id) {
            let mut failures = Vec::new();
            for fill in ctx.fills(template.holes()) {
                let w = ctx.instance_letters(template, &fill);
                let (l, _) = ctx.sections(&w);
                if !ctx.has_shape(&l, &middle_word)? {
                    failures.push(format!("□={}: φL = {}", ctx.fill_names(&fill), ctx.show(&l)));
                }
            }
            report.push(
                format!("{id}: φL({}) = xσ{name}σy", template.text),
                failures.is_empty() && ctx.is_good(name),
                if failures.is_empty() {
                    format!("all □ choices; {name} good by nature: {}", ctx.is_good(name))
                } else {
                    failures.join("; ")
                },
            );
        }
    }
    Ok(())
}

fn templates_c(ctx: &Ctx, report: &mut Report) -> Result<()> {
    let claimed = ["b2σb2σa", "aσb2σa2"];
    let set = ctx.group.generating_set();
    let claimed_words: Vec<Word> = claimed
        .iter()
        .map(|t| Ok(set.expand(&set.parse(t)?)))
        .collect::<Result<_>>()?;
    let mut claimed_are_a = true;
    for text in claimed {
        claimed_are_a &= ctx.is_instance_of(text, PatternId::A)?;
    }
    report.push(
        "C: b2σb2σa and aσb2σa2 are A instances",
        claimed_are_a,
        "b2σ□σa with □ = b2, aσ□σa2 with □ = b2",
    );
    let b = ctx.text("b")?;
    for template in ctx.blocks.templates.iter().filter(|t| t.id == PatternId::C) {
        let mut failures = Vec::new();
        for fill in ctx.fills(template.holes()) {
            let w = ctx.instance_letters(template, &fill);
            let (l, _) = ctx.sections(&w);
            let mut hit = false;
            for c in &claimed_words {
                hit |= ctx.equal(&l, c)?;
            }
            let (ll, _) = ctx.sections(&l);
            if !hit || !ctx.has_shape(&ll, &b)? {
                failures.push(format!(
                    "□={}: φL = {}, φLL = {}",
                    ctx.fill_names(&fill),
                    ctx.show(&l),
                    ctx.show(&ll)
                ));
            }
        }
        report.push(
            format!("C: φL({}) ∈ {{b2σb2σa, aσb2σa2}}, then xσbσy", template.text),
            failures.is_empty(),
            if failures.is_empty() {
                format!("all {} □ choices", 4usize.pow(template.holes() as u32))
            } else {
                failures.join("; ")
            },
        );
    }
    Ok(())
}

fn templates_d(ctx: &Ctx, report: &mut Report) -> Result<()> {
    let claimed = ["bσa2σb", "bσb2σb"];
    let set = ctx.group.generating_set();
    let claimed_words: Vec<Word> = claimed
        .iter()
        .map(|t| Ok(set.expand(&set.parse(t)?)))
        .collect::<Result<_>>()?;
    let mut literal_b = Vec::new();
    for text in claimed {
        literal_b.push(format!("{text}: {}", ctx.is_instance_of(text, PatternId::B)?));
    }
    let a3 = ctx.text("aba")?;
    for template in ctx.blocks.templates.iter().filter(|t| t.id == PatternId::D) {
        let mut failures = Vec::new();
        for fill in ctx.fills(template.holes()) {
            let w = ctx.instance_letters(template, &fill);
            let (_, r) = ctx.sections(&w);
            let mut hit = false;
            for c in &claimed_words {
                hit |= ctx.equal(&r, c)?;
            }
            // bσ□σb is a P2 configuration: its left section is a3.
            let (rl, _) = ctx.sections(&r);
            if !hit || !ctx.equal(&rl, &a3)? {
                failures.push(format!(
                    "□={}: φR = {}, φRL = {}",
                    ctx.fill_names(&fill),
                    ctx.show(&r),
                    ctx.show(&rl)
                ));
            }
        }
        report.push(
            format!("D: φR({}) ∈ {{bσa2σb, bσb2σb}}, then a3", template.text),
            failures.is_empty() && ctx.is_good("a3"),
            if failures.is_empty() {
                format!(
                    "all {} □ choices; the next split yields the good generator a3 as in B; literal B template instance: {}",
                    4usize.pow(template.holes() as u32),
                    literal_b.join(", ")
                )
            } else {
                failures.join("; ")
            },
        );
    }
    Ok(())
}

/// Checks P1, P2 and every instantiation of the twelve templates A–D.
pub fn verify_patterns(group: &NamedGroup, ball: &mut Ball) -> Result<Report> {
    let ctx = context(group, ball)?;
    let mut report = Report::new("block patterns of I");
    basic_patterns(&ctx, &mut report)?;
    templates_ab(&ctx, &mut report)?;
    templates_c(&ctx, &mut report)?;
    templates_d(&ctx, &mut report)?;
    Ok(report)
}

/// Checks that `b3σ□σa2`, the neighbour pair missing from the listed
/// templates, also yields a good letter: `φL = aσa2σa`, an A instance, whose
/// next split has the shape `xσbσy`.
pub fn verify_supplement(group: &NamedGroup, ball: &mut Ball) -> Result<Report> {
    let ctx = context(group, ball)?;
    let mut report = Report::new("supplementary block b3σ□σa2");
    let template = Template::parse(PatternId::Supplement, TEMPLATE_SUPPLEMENT, group.generating_set())?;
    let set = group.generating_set();
    let target = set.expand(&set.parse("aσa2σa")?);
    let b = ctx.text("b")?;
    report.push(
        "aσa2σa is an A instance",
        ctx.is_instance_of("aσa2σa", PatternId::A)?,
        "aσ□σa with □ = a2",
    );
    for fill in ctx.fills(1) {
        let w = ctx.instance_letters(&template, &fill);
        let (l, _) = ctx.sections(&w);
        let (ll, _) = ctx.sections(&l);
        report.push(
            format!("b3σ{}σa2", ctx.fill_names(&fill)),
            ctx.equal(&l, &target)? && ctx.has_shape(&ll, &b)?,
            format!("φL = {}, φLL = {}", ctx.show(&l), ctx.show(&ll)),
        );
    }
    Ok(report)
}

/// Which of the sixteen neighbour pairs `(x, y)` of a block `xσ□σy` some
/// template of `catalog` covers, given enough room around the block.
pub fn covered_pairs(group: &NamedGroup, catalog: BlockCatalog) -> Result<Vec<(String, String, bool)>> {
    let set = group.generating_set();
    let blocks = Blocks::new(set, catalog)?;
    let bad = blocks.bad_letters.clone();
    let mut out = Vec::new();
    for &x in &bad {
        for &y in &bad {
            // Covered if every interior occurrence lies inside a good block.
            let mut covered = true;
            for &p in &bad {
                for &q in &bad {
                    for &s in &bad {
                        for &u in &bad {
                            for &v in &bad {
                                let word = AlternatingWord::new(true, vec![p, q, x, s, y, u, v], true);
                                covered &= blocks
                                    .find_good_blocks(&word)
                                    .iter()
                                    .any(|m| m.position <= 2 && m.position + m.len >= 5);
                            }
                        }
                    }
                }
            }
            out.push((
                set.get(x as usize).name.clone(),
                set.get(y as usize).name.clone(),
                covered,
            ));
        }
    }
    Ok(out)
}
