//! ε-bad words: letter classification, good-block templates, the census of
//! block-free bad strings and the counting bounds.

mod blocks;
mod bounds;
mod census;
mod classify;
mod verify;
mod word;

pub use blocks::{
    BlockCatalog, Blocks, PatternId, PatternMatch, Slot, Template, BAD_LETTERS, TEMPLATE_A,
    TEMPLATE_B, TEMPLATE_C, TEMPLATE_D, TEMPLATE_SUPPLEMENT,
};
pub use bounds::{
    bad_element_bound, bad_word_bound, binomial, count_bad_elements, element_verdict,
    eta_of_epsilon_h, floor_eps, good_element_shift, max_letters, BadCount, BoundKind,
    GoodReduction,
};
pub use census::{
    bad_strings, bad_strings_brute_force, bad_strings_census, interior_pairs, period_margin,
    BadString, BadStringCensus,
};
pub use classify::{check_epsilon, LetterClassifier, Verdict};
pub use verify::{covered_pairs, verify_patterns, verify_supplement};
pub use word::AlternatingWord;
