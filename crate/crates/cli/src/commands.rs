use std::fmt;
use std::path::Path;

use serde_json::{json, Value};
use wreath_core::groups::{builtin_with_budget, verify_extended_table, verify_structure_lemmas};
use wreath_core::metric::geodesic_words;
use wreath_core::patterns::{
    bad_strings_census, count_bad_elements, covered_pairs, good_element_shift, verify_patterns,
    verify_supplement, BlockCatalog, BoundKind, LetterClassifier,
};
use wreath_core::report::Report;
use wreath_core::splitting::{
    check_basic_tool, verify_good_letter_bound, verify_reduction, verify_reduction_g,
};
use wreath_core::{Ball, BallOptions, GroupName, GrowthSeries, NamedGroup, Rational};

use crate::args::{
    BadcountArgs, BadstringsArgs, BallArgs, BasicToolArgs, Budgets, Catalog, CheckLemmasArgs,
    Format, GroupSelector, GrowthArgs, PatternArgs, ReductionArgs,
};
use crate::output::{envelope, sig12, sink, write_json};

/// Why a command did not succeed; maps onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not hold.
    Verification(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Budget(m) => write!(f, "budget exceeded: {m}"),
        }
    }
}

impl From<wreath_core::Error> for Failure {
    fn from(e: wreath_core::Error) -> Self {
        use wreath_core::Error as E;
        match e {
            e if e.is_budget() => Failure::Budget(e.to_string()),
            E::NotInBall { .. } | E::NotInStabilizer { .. } => Failure::Verification(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn verdict(passed: bool, context: impl FnOnce() -> String) -> Outcome {
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(context()))
    }
}

fn first_failure(reports: &[Report]) -> String {
    reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {}: {}", r.title, c.name, c.detail)))
        .next()
        .unwrap_or_default()
}

fn to_value(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn load_group(selector: &GroupSelector, budgets: &Budgets) -> Result<NamedGroup, Failure> {
    let s = selector.0.as_str();
    if let Some(path) = s.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read group file `{path}`: {e}")))?;
        let name = Path::new(path)
            .file_stem()
            .map_or_else(|| path.to_string(), |n| n.to_string_lossy().into_owned());
        return NamedGroup::from_recursion_text(&name, &text, budgets.state_budget)
            .map_err(|e| Failure::Usage(format!("group file `{path}`: {e}")));
    }
    let name: GroupName = s.parse().map_err(|_| Failure::Usage(format!("unknown group `{s}`")))?;
    Ok(builtin_with_budget(name, budgets.state_budget))
}

fn ball_options(budgets: &Budgets) -> BallOptions {
    BallOptions {
        max_elements: budgets.max_elements,
        geodesic_cap: budgets.geodesic_cap,
    }
}

fn new_ball(group: &NamedGroup, budgets: &Budgets) -> Ball {
    Ball::new(group.generating_set(), ball_options(budgets))
}

fn catalog(c: Catalog) -> BlockCatalog {
    match c {
        Catalog::Listed => BlockCatalog::Listed,
        Catalog::Completed => BlockCatalog::Completed,
    }
}

fn require_i(group: &NamedGroup, what: &str) -> Outcome {
    if group.kind == Some(GroupName::I) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} is only defined for group I")))
    }
}

pub fn check_lemmas(args: &CheckLemmasArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    let mut reports = vec![verify_structure_lemmas(&group)?];
    if group.kind == Some(GroupName::I) {
        let mut ball = new_ball(&group, &args.budgets);
        reports.push(verify_extended_table(&group)?);
        reports.push(verify_good_letter_bound(&group, &mut ball)?.0);
        reports.push(verify_patterns(&group, &mut ball)?);
        reports.push(verify_supplement(&group, &mut ball)?);
    }
    let passed = reports.iter().all(Report::all_passed);
    let doc = envelope("check-lemmas", args, passed, json!({ "reports": reports }));
    write_json(args.output.out.as_deref(), &doc)?;
    verdict(passed, || first_failure(&reports))
}

pub fn ball(args: &BallArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    let set = group.generating_set();
    let mut ball = new_ball(&group, &args.budgets);
    ball.extend_to(args.radius)?;
    let ids = ball.ids_within(args.radius);
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink(args.output.out.as_deref())?);
            w.write_record(["portrait-key-hex", "min_length", "one-geodesic-word"])?;
            for id in ids {
                let node = ball.node(id);
                w.write_record([
                    node.portrait.to_hex(),
                    node.length.to_string(),
                    set.format(&node.word),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let elements: Vec<Value> = ids
                .map(|id| {
                    let node = ball.node(id);
                    json!({
                        "portrait_key_hex": node.portrait.to_hex(),
                        "min_length": node.length,
                        "geodesic_word": set.format(&node.word),
                        "geodesic_count": geodesic_words(&ball, id, ball.options().geodesic_cap).map_or(0, |w| w.len()),
                    })
                })
                .collect();
            let result = json!({ "gamma": elements.len(), "elements": elements });
            write_json(args.output.out.as_deref(), &envelope("ball", args, true, result))?;
        }
    }
    Ok(())
}

pub fn growth(args: &GrowthArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    let mut ball = new_ball(&group, &args.budgets);
    ball.extend_to(args.max_radius)?;
    let series = GrowthSeries::from_ball(&ball, args.max_radius, args.step)?;
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink(args.output.out.as_deref())?);
            w.write_record(["r", "gamma", "rate_estimate"])?;
            for (&(r, gamma), &(_, rate)) in series.samples.iter().zip(&series.rate_estimates) {
                w.write_record([r.to_string(), gamma.to_string(), sig12(rate)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = series
                .samples
                .iter()
                .zip(&series.rate_estimates)
                .map(|(&(r, gamma), &(_, rate))| json!({ "r": r, "gamma": gamma, "rate_estimate": sig12(rate) }))
                .collect();
            let result = json!({
                "series": rows,
                "monotone": series.is_monotone(),
                "submultiplicativity_constant": series.submultiplicativity_constant().to_string(),
            });
            write_json(args.output.out.as_deref(), &envelope("growth", args, true, result))?;
        }
    }
    Ok(())
}

pub fn reduction(args: &ReductionArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    let mut ball = new_ball(&group, &args.budgets);
    let standard_g = group.kind == Some(GroupName::G)
        && args.depth == 1
        && args.eta == Rational::new(7, 8)
        && args.shift == 3;
    let (reports, summary) = if standard_g {
        let (report, summary) = verify_reduction_g(&group, &mut ball, args.radius)?;
        (vec![report], summary)
    } else {
        let summary = verify_reduction(&mut ball, args.depth, args.eta, args.shift, args.radius)?;
        (Vec::new(), summary)
    };
    let passed = summary.violations.is_empty() && reports.iter().all(Report::all_passed);
    let result = json!({ "summary": summary, "reports": reports });
    write_json(args.output.out.as_deref(), &envelope("verify reduction", args, passed, result))?;
    verdict(passed, || match summary.violations.first() {
        Some(v) => format!("{} violations, first {}", summary.violations.len(), to_value(v)),
        None => first_failure(&reports),
    })
}

pub fn basic_tool(args: &BasicToolArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    let mut ball = new_ball(&group, &args.budgets);
    let cert = check_basic_tool(&mut ball, args.depth, args.eta, args.p, args.shift, args.radius)?;
    let passed = cert.validates;
    write_json(
        args.output.out.as_deref(),
        &envelope("verify basictool", args, passed, to_value(&cert)),
    )?;
    verdict(passed, || {
        format!(
            "proportion {} at radius {} with η = {}, p = {}",
            cert.proportion_observed, cert.worst_radius, cert.eta, cert.p
        )
    })
}

pub fn patterns(args: &PatternArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    require_i(&group, "pattern verification")?;
    let mut ball = new_ball(&group, &args.budgets);
    let reports = vec![
        verify_patterns(&group, &mut ball)?,
        verify_supplement(&group, &mut ball)?,
    ];
    let coverage = |c| -> Result<Value, Failure> {
        Ok(covered_pairs(&group, c)?
            .into_iter()
            .map(|(x, y, covered)| json!({ "left": x, "right": y, "covered": covered }))
            .collect())
    };
    let passed = reports.iter().all(Report::all_passed);
    let result = json!({
        "reports": reports,
        "pair_coverage": {
            "listed": coverage(BlockCatalog::Listed)?,
            "completed": coverage(BlockCatalog::Completed)?,
        },
    });
    write_json(args.output.out.as_deref(), &envelope("verify patterns", args, passed, result))?;
    verdict(passed, || first_failure(&reports))
}

pub fn badstrings(args: &BadstringsArgs) -> Outcome {
    let census = bad_strings_census(args.max_k as usize, catalog(args.catalog))?;
    let passed = census.eventual_period.is_some();
    write_json(
        args.output.out.as_deref(),
        &envelope("badstrings", args, passed, to_value(&census)),
    )?;
    verdict(passed, || {
        format!(
            "|S_k| does not settle up to k = {} (|S_{}| = {})",
            args.max_k,
            args.max_k,
            census.counts.last().map_or(0, |c| c.1)
        )
    })
}

pub fn badcount(args: &BadcountArgs) -> Outcome {
    let group = load_group(&args.group, &args.budgets)?;
    let mut ball = new_ball(&group, &args.budgets);
    let (classifier, kind, level) = match group.kind {
        Some(GroupName::H) => (LetterClassifier::for_h(&group.standard)?, BoundKind::H, 1),
        Some(GroupName::I) => {
            let catalog = catalog(args.catalog);
            let b = match args.census_bound {
                Some(b) => b,
                None => bad_strings_census(40, catalog)?.bound_observed as u64,
            };
            let classifier = LetterClassifier::for_group(&group, &mut ball, catalog)?;
            (classifier, BoundKind::I { b }, 3)
        }
        _ => return Err(Failure::Usage("badcount is defined for groups H and I".into())),
    };
    let count = count_bad_elements(&mut ball, &classifier, kind, level, args.radius, args.epsilon)?;
    let good = match kind {
        BoundKind::H => Some(good_element_shift(&mut ball, &classifier, args.radius, args.epsilon)?),
        BoundKind::I { .. } => None,
    };
    let passed = count.within_bound;
    let result = json!({ "count": count, "bound_kind": kind, "good_reduction": good });
    write_json(args.output.out.as_deref(), &envelope("badcount", args, passed, result))?;
    verdict(passed, || {
        format!("{} bad elements exceed the bound {}", count.bad_elements, count.bound)
    })
}
