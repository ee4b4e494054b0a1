mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use wreath_core::automorphism::Vertex;
use wreath_core::patterns::{AlternatingWord, BlockCatalog, LetterClassifier, Verdict};
use wreath_core::splitting::{split, split_parts};
use wreath_core::{builtin, enumerate_ball, Ball, BallOptions, Element, GroupName, NamedGroup, Rational};

fn groups() -> &'static [NamedGroup; 3] {
    static GROUPS: OnceLock<[NamedGroup; 3]> = OnceLock::new();
    GROUPS.get_or_init(|| {
        [
            builtin(GroupName::G),
            builtin(GroupName::H),
            builtin(GroupName::I),
        ]
    })
}

fn grigorchuk_ball() -> &'static Ball {
    static BALL: OnceLock<Ball> = OnceLock::new();
    BALL.get_or_init(|| enumerate_ball(&groups()[0].standard, 40, BallOptions::default()).unwrap())
}

fn element_of(group: &NamedGroup, letters: &[u8]) -> Element {
    let n = group.table.len() as u8;
    let word = letters.iter().map(|l| l % n).collect();
    Element::from_word(&group.table, wreath_core::Word::new(word)).unwrap()
}

fn vertex_of(sides: &[bool]) -> Vertex {
    Vertex::from_sides(sides.to_vec())
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 0..14)
}

fn vertex() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 0..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn portrait_acts_like_element(gi in 0..3usize, w in word(), v in vertex()) {
        let g = element_of(&groups()[gi], &w);
        let p = g.portrait(8);
        prop_assert_eq!(p.act(&v), g.act(&vertex_of(&v)).sides().to_vec());
    }

    #[test]
    fn action_is_a_right_action(gi in 0..3usize, u in word(), w in word(), v in vertex()) {
        let group = &groups()[gi];
        let (g, h) = (element_of(group, &u), element_of(group, &w));
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.act(&vertex_of(&v)), h.act(&g.act(&vertex_of(&v))));
        prop_assert_eq!(gh.portrait(6), g.portrait(6).compose(&h.portrait(6)));
    }

    #[test]
    fn section_law(gi in 0..3usize, u in word(), w in word(), v in prop::collection::vec(any::<bool>(), 0..4)) {
        let group = &groups()[gi];
        let (g, h) = (element_of(group, &u), element_of(group, &w));
        let v = vertex_of(&v);
        let lhs = g.compose(&h).unwrap().section_at(&v);
        let rhs = g.section_at(&v).compose(&h.section_at(&g.act(&v))).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn swap_conjugation_exchanges_sections(gi in 0..3usize, w in word()) {
        let group = &groups()[gi];
        let g = element_of(group, &w);
        let s = group.swap();
        let conj = s.compose(&g).unwrap().compose(&s).unwrap();
        let (l, r) = g.sections();
        prop_assert!(conj.equals_pair(&r, &l, g.activity()).unwrap());
    }

    #[test]
    fn inverses_cancel(gi in 0..3usize, w in word()) {
        let g = element_of(&groups()[gi], &w);
        prop_assert!(g.compose(&g.inverse()).unwrap().is_trivial().unwrap());
        prop_assert!(g.inverse().compose(&g).unwrap().is_trivial().unwrap());
    }

    #[test]
    fn triviality_agrees_with_action(gi in 0..3usize, w in prop::collection::vec(any::<u8>(), 0..10)) {
        let g = element_of(&groups()[gi], &w);
        let moves_something = Vertex::level(10).any(|v| g.act(&v) != v);
        prop_assert_eq!(g.is_trivial().unwrap(), !moves_something);
    }

    #[test]
    fn equality_is_an_equivalence(gi in 0..3usize, u in word(), pad in word(), at in any::<prop::sample::Index>()) {
        let group = &groups()[gi];
        let g = element_of(group, &u);
        // h = g with a trivial word x·x⁻¹ inserted somewhere.
        let x = element_of(group, &pad);
        let letters = g.letters();
        let cut = at.index(letters.len() + 1);
        let mut word = letters[..cut].to_vec();
        word.extend_from_slice(x.compose(&x.inverse()).unwrap().letters());
        word.extend_from_slice(&letters[cut..]);
        let h = Element::from_word(&group.table, wreath_core::Word::new(word)).unwrap();
        let k = h.reduced();
        prop_assert!(g.equals(&g).unwrap());
        prop_assert!(g.equals(&h).unwrap() && h.equals(&g).unwrap());
        prop_assert!(h.equals(&k).unwrap() && g.equals(&k).unwrap());
        let y = element_of(group, &pad);
        prop_assert_eq!(g.equals(&y).unwrap(), y.equals(&g).unwrap());
    }

    #[test]
    fn triangle_inequality(a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ball = grigorchuk_ball();
        let within = ball.ids_within(20);
        let n = within.len();
        let (i, j) = (a.index(n) as u32, b.index(n) as u32);
        let gh = ball.element(i).compose(&ball.element(j)).unwrap();
        let id = ball.lookup(&gh).unwrap().expect("product lies in the radius-40 ball");
        prop_assert!(ball.node(id).length <= ball.node(i).length + ball.node(j).length);
        let inv = ball.lookup(&ball.element(i).inverse()).unwrap().unwrap();
        prop_assert_eq!(ball.node(inv).length, ball.node(i).length);
    }

    #[test]
    fn splitting_is_an_injective_homomorphism(gi in 0..3usize, u in prop::collection::vec(any::<u8>(), 0..6), w in prop::collection::vec(any::<u8>(), 0..6), depth in 1..4u32) {
        let group = &groups()[gi];
        // The action on level d is a 2-group of exponent dividing 2^d.
        let n = 1usize << depth;
        let (g, h) = (element_of(group, &u).pow(n), element_of(group, &w).pow(n));
        prop_assert!(g.fixes_level(depth) && h.fixes_level(depth));
        let pg = split_parts(&g, depth).unwrap();
        let ph = split_parts(&h, depth).unwrap();
        let pgh = split_parts(&g.compose(&h).unwrap(), depth).unwrap();
        for ((x, y), z) in pg.iter().zip(&ph).zip(&pgh) {
            prop_assert!(x.compose(y).unwrap().equals(z).unwrap());
        }
        let all_trivial = pg.iter().all(|p| p.is_trivial().unwrap());
        prop_assert_eq!(all_trivial, g.is_trivial().unwrap());
    }

    #[test]
    fn classification_is_monotone_in_epsilon(
        letters in prop::collection::vec(1..16u16, 1..20),
        pre in any::<bool>(),
        post in any::<bool>(),
        e1 in 1..=20i64,
        e2 in 1..=20i64,
    ) {
        let i = &groups()[2];
        let set = i.generating_set();
        let nature: Vec<bool> = (0..set.len())
            .map(|g| !["σ", "a", "a2", "b2", "b3"].contains(&set.get(g).name.as_str()))
            .collect();
        let classifier = LetterClassifier::for_i(set, nature, BlockCatalog::Completed).unwrap();
        let word = AlternatingWord::new(pre, letters, post);
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let bad_lo = classifier.classify(&word, Rational::new(lo, 20)).unwrap() == Verdict::Bad;
        let bad_hi = classifier.classify(&word, Rational::new(hi, 20)).unwrap() == Verdict::Bad;
        prop_assert!(!bad_lo || bad_hi);
    }

    #[test]
    fn even_words_of_g_reduce(letters in prop::collection::vec(1..4u16, 1..5)) {
        // σ x₁ σ x₂ … as an even word over the standard set of G.
        let g = &groups()[0];
        let set = &g.standard;
        let s = set.swap_index().unwrap() as u16;
        let mut word = Vec::new();
        for &x in &letters {
            word.push(s);
            word.push(x);
        }
        if letters.len() % 2 == 1 {
            word.push(s);
        }
        let weight = set.word_weight(&word);
        let element = Element::from_word(&g.table, set.expand(&word)).unwrap();
        prop_assume!(element.fixes_level(1));
        let mut ball = grigorchuk_ball().clone();
        let result = split(&element, 1, &mut ball).unwrap();
        let lhs = 8 * result.parts_length_sum as i64;
        prop_assert!(lhs <= 7 * result.input_length as i64 + 24);
        prop_assert!(result.input_length <= weight);
    }
}
