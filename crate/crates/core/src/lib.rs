//! Self-similar groups acting on the binary rooted tree.
//!
//! The crate decides the word problem for groups given by wreath recursions,
//! enumerates weighted Cayley balls, and checks the length-reduction and
//! counting statements behind the subexponential growth of Grigorchuk's
//! group `G`, the model group `H` and the iterated monodromy group
//! `I = IMG(z² + i)`.

pub mod automorphism;
pub mod error;
pub mod groups;
pub mod metric;
pub mod patterns;
pub mod report;
pub mod splitting;

pub use automorphism::{Activity, Element, Letter, Portrait, RecursionTable, Vertex, Word};
pub use error::{Error, Result};
pub use groups::{builtin, GeneratingSet, Generator, GroupName, NamedGroup};
pub use metric::{enumerate_ball, Ball, BallOptions, GrowthSeries};
pub use num_rational::Ratio;

/// Exact rational used for ε, η and proportions.
pub type Rational = Ratio<i64>;
