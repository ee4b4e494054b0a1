//! Inputs shared by the benchmarks.

use wreath_core::{builtin, Element, GroupName, NamedGroup};

/// `xⁿ·x⁻ⁿ` for `x = σabcσacb`: a trivial word of `16n` letters of `G` that
/// free reduction alone does not cancel.
pub fn trivial_word(g: &NamedGroup, n: usize) -> Element {
    let x = g.element("σabcσacb").expect("letters of G");
    x.pow(n).compose(&x.pow(n).inverse()).expect("same table")
}

/// `(σa)^(8n)` in `I`, trivial for every `n`.
pub fn dihedral_power(n: usize) -> Element {
    builtin(GroupName::I)
        .element("σa")
        .expect("letters of I")
        .pow(8 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_trivial() {
        let g = builtin(GroupName::G);
        assert!(trivial_word(&g, 5).is_trivial().unwrap());
        assert!(dihedral_power(3).is_trivial().unwrap());
    }
}
