//! Weighted length, Cayley balls, geodesic words and growth.

mod ball;
mod geodesic;
mod growth;

pub use ball::{enumerate_ball, Ball, BallOptions, GenIndex, Node, NodeId};
pub use geodesic::{
    alternating_geodesic_words, alternation_check, alternation_states, alternation_summary,
    geodesic_counts, geodesic_words, geodesic_words_of, AlternationSummary,
};
pub use growth::{growth_series, level_stabilizer_member, GrowthSeries};
