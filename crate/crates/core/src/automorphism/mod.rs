//! Binary-tree automorphisms given by wreath recursions.

mod element;
mod portrait;
mod table;
mod triviality;

pub use element::{Element, Vertex};
pub use portrait::{Portrait, PortraitKey};
pub use table::{
    Activity, GeneratorSpec, Letter, ParsedRecursion, RecursionTable, Word, DEFAULT_STATE_BUDGET,
};
