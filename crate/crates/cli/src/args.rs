use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wreath_core::Rational;

#[derive(Parser, Debug)]
#[command(
    name = "wreath",
    version = env!("WREATH_VERSION"),
    about = "Word problem, weighted growth and growth-proof verification for self-similar groups"
)]
pub struct Cli {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "WREATH_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structure lemmas of a group (and, for I, its generator table,
    /// letter classes and block patterns).
    CheckLemmas(CheckLemmasArgs),
    /// Write every element of a Cayley ball with its length and a geodesic.
    Ball(BallArgs),
    /// Write the growth function γ(r).
    Growth(GrowthArgs),
    /// Verify length reduction, the growth criterion, or the block patterns.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Block pattern commands.
    #[command(subcommand)]
    Patterns(PatternsCommand),
    /// Census of block-free bad strings.
    Badstrings(BadstringsArgs),
    /// Count ε-bad stabilizer elements and compare with the counting bound.
    Badcount(BadcountArgs),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Check Σ L(parts) ≤ η·L(g) + shift on a whole ball.
    Reduction(ReductionArgs),
    /// Check the hypothesis of the subexponential growth criterion.
    Basictool(BasicToolArgs),
    /// Symbolically check the block patterns of I.
    Patterns(PatternArgs),
}

#[derive(Subcommand, Debug)]
pub enum PatternsCommand {
    /// Same as `verify patterns`.
    Verify(PatternArgs),
}

/// `G`, `H`, `I` or `file:<path>`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSelector(pub String);

impl std::str::FromStr for GroupSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" | "H" | "I" => Ok(GroupSelector(s.to_string())),
            _ if s.starts_with("file:") && s.len() > 5 => Ok(GroupSelector(s.to_string())),
            _ => Err(format!("expected G, H, I or file:<path>, got `{s}`")),
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Budgets {
    /// Words a single triviality query may visit.
    #[arg(long, default_value_t = 100_000, value_parser = positive_usize)]
    pub state_budget: usize,
    /// Elements a ball may hold.
    #[arg(long, default_value_t = 40_000_000, value_parser = positive_usize)]
    pub max_elements: usize,
    /// Geodesic words reconstructed per element.
    #[arg(long, default_value_t = 1_000_000, value_parser = positive_usize)]
    pub geodesic_cap: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Output {
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Catalog {
    /// The twelve templates A–D.
    Listed,
    /// The twelve templates plus b3σ□σa2.
    Completed,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckLemmasArgs {
    #[arg(long)]
    pub group: GroupSelector,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct BallArgs {
    #[arg(long)]
    pub group: GroupSelector,
    #[arg(long)]
    pub radius: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct GrowthArgs {
    #[arg(long)]
    pub group: GroupSelector,
    #[arg(long)]
    pub max_radius: u32,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub step: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct ReductionArgs {
    #[arg(long)]
    pub group: GroupSelector,
    #[arg(long)]
    pub radius: u32,
    /// Splitting depth.
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
    /// Reduction factor as `p/q`.
    #[arg(long, default_value = "7/8", value_parser = rational)]
    #[serde(serialize_with = "as_string")]
    pub eta: Rational,
    #[arg(long, default_value_t = 3)]
    pub shift: u32,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct BasicToolArgs {
    #[arg(long)]
    pub group: GroupSelector,
    #[arg(long)]
    pub depth: u32,
    /// Reduction factor as `p/q`; measured from the ball if absent.
    #[arg(long, value_parser = rational)]
    #[serde(serialize_with = "opt_as_string")]
    pub eta: Option<Rational>,
    /// Required proportion as `p/q`.
    #[arg(long, default_value = "1/2", value_parser = rational)]
    #[serde(serialize_with = "as_string")]
    pub p: Rational,
    #[arg(long, default_value_t = 0)]
    pub shift: u32,
    #[arg(long)]
    pub radius: u32,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct PatternArgs {
    #[arg(long, default_value = "I")]
    pub group: GroupSelector,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct BadstringsArgs {
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub max_k: u32,
    #[arg(long, value_enum, default_value = "completed")]
    pub catalog: Catalog,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct BadcountArgs {
    #[arg(long)]
    pub group: GroupSelector,
    #[arg(long)]
    pub radius: u32,
    /// ε as `p/q`, strictly between 0 and 1.
    #[arg(long, value_parser = epsilon)]
    #[serde(serialize_with = "as_string")]
    pub epsilon: Rational,
    /// Block catalog used for I.
    #[arg(long, value_enum, default_value = "completed")]
    pub catalog: Catalog,
    /// Census bound B for I; measured up to k = 40 if absent.
    #[arg(long)]
    pub census_bound: Option<u64>,
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(flatten)]
    pub output: Output,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

pub fn rational(s: &str) -> Result<Rational, String> {
    let r: Rational = s
        .trim()
        .parse()
        .map_err(|_| format!("expected a rational `p/q`, got `{s}`"))?;
    Ok(r)
}

fn epsilon(s: &str) -> Result<Rational, String> {
    let r = rational(s)?;
    if r <= Rational::from_integer(0) || r >= Rational::from_integer(1) {
        return Err(format!("ε = {r} must lie strictly between 0 and 1"));
    }
    Ok(r)
}

fn as_string<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn opt_as_string<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}
