//! Small worked examples with known answers.

mod common;

use wreath_core::automorphism::Vertex;
use wreath_core::groups::{order, Order};
use wreath_core::metric::{alternation_check, geodesic_words_of, level_stabilizer_member};
use wreath_core::patterns::{
    bad_word_bound, eta_of_epsilon_h, AlternatingWord, BlockCatalog, Blocks, BoundKind,
    LetterClassifier, PatternId, Verdict,
};
use wreath_core::splitting::{check_basic_tool, letter_split, split, verify_reduction};
use wreath_core::{builtin, enumerate_ball, Activity, Ball, BallOptions, Element, GroupName, Rational};

fn vertex(s: &str) -> Vertex {
    Vertex::from_sides(s.chars().map(|c| c == 'R').collect())
}

fn sides(v: &Vertex) -> String {
    v.sides().iter().map(|&r| if r { 'R' } else { 'L' }).collect()
}

#[test]
fn actions_on_vertices() {
    let g = builtin(GroupName::G);
    assert_eq!(sides(&g.element("a").unwrap().act(&vertex("LL"))), "LR");
    assert_eq!(sides(&g.element("σ").unwrap().act(&vertex("LL"))), "RL");
    assert_eq!(sides(&g.element("").unwrap().act(&vertex("RLR"))), "RLR");
}

#[test]
fn activities_and_sections() {
    let g = builtin(GroupName::G);
    let i = builtin(GroupName::I);
    assert_eq!(g.element("a").unwrap().activity(), Activity::Identity);
    assert_eq!(i.element("σa").unwrap().activity(), Activity::Swap);
    let (l, r) = g.element("a").unwrap().sections();
    assert_eq!((l.to_string(), r.to_string()), ("σ".into(), "b".into()));
    let (l, r) = g.element("σaσ").unwrap().sections();
    assert!(l.equals(&g.element("b").unwrap()).unwrap());
    assert!(r.equals(&g.element("σ").unwrap()).unwrap());
    let (l, r) = g.element("").unwrap().sections();
    assert!(l.letters().is_empty() && r.letters().is_empty());
    let h = builtin(GroupName::H);
    let (l, r) = h.element("b").unwrap().sections();
    assert!(l.is_trivial().unwrap());
    assert!(r.equals(&h.element("a").unwrap()).unwrap());
}

#[test]
fn pair_assembly() {
    let g = builtin(GroupName::G);
    let s = g.element("σ").unwrap();
    assert!(g.element("σσ").unwrap().is_trivial().unwrap());
    // σaσb = (bσ, σc)
    let x = g.element("σaσb").unwrap();
    assert!(x
        .equals_pair(&g.element("bσ").unwrap(), &g.element("σc").unwrap(), Activity::Identity)
        .unwrap());
    assert_eq!(x.portrait(6).act(&[true, false, true]), x.act(&vertex("RLR")).sides());
    let h = builtin(GroupName::H);
    let sc = h.element("σab").unwrap();
    assert!(sc
        .pow(2)
        .equals_pair(&h.element("abσ").unwrap(), &sc, Activity::Identity)
        .unwrap());
    assert!(!s.is_trivial().unwrap());
}

#[test]
fn word_problem() {
    let g = builtin(GroupName::G);
    assert!(g.element("abc").unwrap().is_trivial().unwrap());
    assert!(!g.element("a").unwrap().is_trivial().unwrap());
    assert!(g.element("ab").unwrap().equals(&g.element("c").unwrap()).unwrap());
    assert!(g.element("aa").unwrap().is_trivial().unwrap());
    let i = builtin(GroupName::I);
    assert!(i.element("σa").unwrap().pow(8).is_trivial().unwrap());
    assert!(!i.element("σa").unwrap().pow(4).is_trivial().unwrap());
    let h = builtin(GroupName::H);
    let sc = h.element("σab").unwrap();
    let cs = h.element("abσ").unwrap();
    assert!(!sc.equals(&cs).unwrap());
    assert_ne!(
        common::action_signature(&sc),
        common::action_signature(&cs),
        "the level-7 action already separates σc and cσ"
    );
}

#[test]
fn inverses() {
    let i = builtin(GroupName::I);
    assert_eq!(i.element("σa").unwrap().inverse().to_string(), "aσ");
    assert_eq!(i.element("").unwrap().inverse().to_string(), "1");
    let h = builtin(GroupName::H);
    let x = h.element("σabσ").unwrap();
    assert!(x.inverse().equals(&x).unwrap());
    assert!(x.compose(&x).unwrap().is_trivial().unwrap());
}

#[test]
fn portraits() {
    let g = builtin(GroupName::G);
    let id = g.element("").unwrap().portrait(2);
    assert!(id.is_identity());
    let c = g.element("c").unwrap().portrait(1);
    assert_eq!(
        [c.label(0, 0), c.label(1, 0), c.label(1, 1)],
        [Activity::Identity; 3]
    );
    let a = g.element("a").unwrap().portrait(1);
    assert_eq!(
        [a.label(0, 0), a.label(1, 0), a.label(1, 1)],
        [Activity::Identity, Activity::Swap, Activity::Identity]
    );
}

#[test]
fn builtin_tables_and_weights() {
    let weights = |n| builtin(n).standard.weights();
    let g = weights(GroupName::G);
    assert_eq!((g["σ"], g["a"], g["b"], g["c"]), (3, 5, 4, 3));
    let i = weights(GroupName::I);
    assert_eq!((i["σ"], i["a"], i["b"]), (3, 4, 4));
    assert_eq!(i.len(), 3);
    let ext = builtin(GroupName::I);
    let w = ext.generating_set().weights();
    assert_eq!((w["a2"], w["a8"], w["b7"]), (8, 32, 28));
    assert_eq!(ext.generating_set().len(), 16);
}

#[test]
fn extended_rows() {
    let i = builtin(GroupName::I);
    let row = |name: &str| i.extended_rows.iter().find(|r| r.name == name).unwrap();
    let el = |w: &wreath_core::Word| Element::from_word(&i.table, w.clone()).unwrap();
    let a2 = row("a2");
    assert!(el(&a2.word)
        .equals_pair(&i.element("σa").unwrap(), &i.element("b").unwrap(), Activity::Identity)
        .unwrap());
    let b1 = row("b");
    assert!(el(&b1.word)
        .equals_pair(&i.element("a").unwrap(), &i.element("").unwrap(), Activity::Identity)
        .unwrap());
    assert!(el(&row("a8").word).equals(&el(&row("b8").word)).unwrap());
}

#[test]
fn orders() {
    let cutoff = 256;
    let h = builtin(GroupName::H);
    assert_eq!(order(&h.element("σa").unwrap(), cutoff).unwrap(), Order::Finite(8));
    assert_eq!(order(&h.element("σb").unwrap(), cutoff).unwrap(), Order::Finite(4));
    let i = builtin(GroupName::I);
    assert_eq!(order(&i.element("ab").unwrap(), cutoff).unwrap(), Order::Finite(8));
    assert_eq!(order(&h.element("σab").unwrap(), 64).unwrap(), Order::ExceedsCutoff(64));
}

#[test]
fn small_balls() {
    let g = builtin(GroupName::G);
    let ball = enumerate_ball(&g.standard, 3, BallOptions::default()).unwrap();
    assert_eq!(ball.gamma(0), 1);
    assert_eq!(ball.gamma(3), 3);
    let words: Vec<String> = ball.nodes().iter().map(|n| g.standard.format(&n.word)).collect();
    assert_eq!(words, ["1", "σ", "c"]);

    let h = builtin(GroupName::H);
    let ball = enumerate_ball(&h.standard, 6, BallOptions::default()).unwrap();
    for w in ["σ", "a", "b", "ab", "σab", "abσ"] {
        let id = ball.lookup(&h.element(w).unwrap()).unwrap();
        assert!(id.is_some(), "{w}");
    }
    let oracle = common::brute_force_ball(&h.standard, 6);
    assert_eq!(ball.gamma(6) as usize, oracle.len());

    let ball = enumerate_ball(&g.standard, 20, BallOptions::default()).unwrap();
    assert_eq!(ball.gamma(20) as usize, common::brute_force_ball(&g.standard, 20).len());
    assert!(ball.gamma(10) <= ball.gamma(20));
}

#[test]
fn stabilizer_membership() {
    let g = builtin(GroupName::G);
    assert!(level_stabilizer_member(&g.element("").unwrap(), 5));
    assert!(level_stabilizer_member(&g.element("a").unwrap(), 1));
    assert!(!level_stabilizer_member(&g.element("σ").unwrap(), 1));
}

#[test]
fn geodesics() {
    let g = builtin(GroupName::G);
    let mut ball = Ball::new(&g.standard, BallOptions::default());
    ball.extend_to(20).unwrap();
    assert_eq!(geodesic_words_of(&ball, &g.element("").unwrap()).unwrap(), vec![Vec::<u16>::new()]);
    let c = geodesic_words_of(&ball, &g.element("c").unwrap()).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(g.standard.format(&c[0]), "c");
    let words: Vec<String> = geodesic_words_of(&ball, &g.element("σaσb").unwrap())
        .unwrap()
        .iter()
        .map(|w| g.standard.format(w))
        .collect();
    assert!(words.contains(&"σaσb".to_string()), "{words:?}");
}

#[test]
fn alternating_geodesics() {
    let g = builtin(GroupName::G);
    let ball = enumerate_ball(&g.standard, 30, BallOptions::default()).unwrap();
    assert!(alternation_check(&ball).all_passed());
    let i = builtin(GroupName::I);
    let ball = enumerate_ball(i.generating_set(), 40, BallOptions::default()).unwrap();
    assert!(alternation_check(&ball).all_passed());
    // With only σ, a, b some elements need two non-σ letters in a row; the
    // count is whatever the enumeration finds.
    let small = enumerate_ball(&i.standard, 40, BallOptions::default()).unwrap();
    let report = alternation_check(&small);
    assert!(!report.checks.is_empty());
}

#[test]
fn splitting_examples() {
    let g = builtin(GroupName::G);
    let mut ball = Ball::new(&g.standard, BallOptions::default());
    let s = split(&g.element("σaσb").unwrap(), 1, &mut ball).unwrap();
    assert_eq!((s.input_length, s.parts_length_sum), (15, 13));
    let s = split(&g.element("σaσa").unwrap(), 1, &mut ball).unwrap();
    assert_eq!((s.input_length, s.parts_length_sum), (16, 14));
    let s = split(&g.element("").unwrap(), 2, &mut ball).unwrap();
    assert_eq!(s.part_lengths, vec![0; 4]);
    let within = |s: &wreath_core::splitting::SplitResult| 8 * s.parts_length_sum <= 7 * s.input_length + 24;
    assert!(within(&split(&g.element("σaσb").unwrap(), 1, &mut ball).unwrap()));
    let summary = verify_reduction(&mut ball, 1, Rational::new(7, 8), 3, 40).unwrap();
    assert!(summary.violations.is_empty());
}

#[test]
fn letter_splits_of_i() {
    let i = builtin(GroupName::I);
    let set = i.generating_set().clone();
    let mut ball = Ball::new(&set, BallOptions::default());
    let split_of = |ball: &mut Ball, n: &str| letter_split(&i, ball, set.index_of(n).unwrap()).unwrap();
    assert!(!split_of(&mut ball, "a").good_by_nature);
    assert!(!split_of(&mut ball, "b3").good_by_nature);
    let b7 = split_of(&mut ball, "b7");
    assert!(b7.good_by_nature);
    assert_eq!(b7.ratio(), Rational::new(29, 31));
    assert!(split_of(&mut ball, "a3").ratio() <= Rational::new(29, 31));
}

#[test]
fn basic_tool_parameters() {
    let g = builtin(GroupName::G);
    let mut ball = Ball::new(&g.standard, BallOptions::default());
    let cert = check_basic_tool(&mut ball, 1, Some(Rational::new(7, 8)), Rational::from_integer(1), 3, 40).unwrap();
    assert!(cert.validates);
    assert!(check_basic_tool(&mut ball, 1, Some(Rational::from_integer(1)), Rational::new(1, 1000), 3, 10).is_err());
    let i = builtin(GroupName::I);
    let mut ball = Ball::new(i.generating_set(), BallOptions::default());
    let cert = check_basic_tool(&mut ball, 3, None, Rational::new(1, 2), 0, 30).unwrap();
    assert!(cert.eta_measured);
    assert!(cert.stabilizer_elements > 0);
}

#[test]
fn classification_examples() {
    let h = builtin(GroupName::H);
    let c = LetterClassifier::for_h(&h.standard).unwrap();
    let tenth = Rational::new(1, 10);
    let all_c = AlternatingWord::parse(&h.standard, "σcσcσcσcσ").unwrap();
    assert_eq!(c.classify(&all_c, tenth).unwrap(), Verdict::Bad);
    let three_a = AlternatingWord::parse(&h.standard, "aσcσaσcσcσaσcσcσcσc").unwrap();
    assert_eq!(three_a.len(), 10);
    assert_eq!(c.classify(&three_a, tenth).unwrap(), Verdict::Good);

    let i = builtin(GroupName::I);
    let set = i.generating_set();
    let blocks = Blocks::new(set, BlockCatalog::Listed).unwrap();
    let w = AlternatingWord::parse(set, "aσb2σa2").unwrap();
    assert_eq!(blocks.find_good_blocks(&w)[0].pattern, PatternId::A);
    let w = AlternatingWord::parse(set, "a2σaσb2").unwrap();
    assert_eq!(blocks.find_good_blocks(&w)[0].pattern, PatternId::B);
    let w = AlternatingWord::parse(set, "aσaσa").unwrap();
    assert_eq!(blocks.good_by_position(&w), vec![true; 3]);
    let hw = AlternatingWord::parse(&h.standard, "cσcσc").unwrap();
    assert!(blocks.find_good_blocks(&hw).is_empty());
}

#[test]
fn bound_formulas() {
    let tenth = Rational::new(1, 10);
    assert_eq!(bad_word_bound(BoundKind::H, 10, tenth).unwrap().to_string(), "60");
    assert_eq!(bad_word_bound(BoundKind::H, 9, tenth).unwrap().to_string(), "2");
    let b = 144u64;
    assert_eq!(
        bad_word_bound(BoundKind::I { b }, 10, tenth).unwrap().to_string(),
        (2 * 10 * 15 * b * b).to_string()
    );
    assert_eq!(eta_of_epsilon_h(Rational::new(1, 2)).unwrap(), Rational::new(13, 14));
    let near_zero = eta_of_epsilon_h(Rational::new(1, 1_000_000)).unwrap();
    assert!(Rational::from_integer(1) - near_zero < Rational::new(1, 100_000));
}
