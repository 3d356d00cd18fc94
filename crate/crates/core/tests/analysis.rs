use num_bigint::BigUint;
use proptest::prelude::*;
use twsda::analysis::classes::{alpha_symbols, extensions};
use twsda::analysis::numbers::{bound_exponent, fibonacci_tree_nodes, subset_class_count};
use twsda::analysis::oracles::{
    h2, oracle_expo, oracle_lh, oracle_lh_tilde, oracle_lp, oracle_lp_hat, oracle_lp_tilde, oracle_mi_hat,
    oracle_union_witness,
};
use twsda::analysis::{
    catalan, class_upper_bound, count_classes, expo_moves, fib_moves, fibonacci, l_equivalent, phase_profile,
    subset_sample, LanguageOracle,
};
use twsda::constructions::{build_expo, build_fib, build_mi_hat, build_trie_p};
use twsda::{run, Budget, Machine, Symbol, Tracing, Word};

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::from(1u8), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn catalan_matches_closed_form() {
    for n in 0..=40u32 {
        assert_eq!(catalan(n), binomial(2 * n, n) / (n + 1), "C_{n}");
        if n <= 30 {
            assert!(catalan(n) <= BigUint::from(4u8).pow(n));
        }
    }
    assert_eq!(catalan(4), BigUint::from(14u8));
}

#[test]
fn fibonacci_values_and_sums() {
    assert_eq!(fibonacci(1), 1);
    assert_eq!(fibonacci(6), 8);
    assert_eq!(fibonacci(11), 89);
    let mut running = 0;
    for l in 1..=25 {
        running += fibonacci(l);
        assert_eq!(running, fibonacci(l + 2) - 1);
        assert_eq!(fibonacci_tree_nodes(l), fibonacci(l + 2) - 1);
    }
}

fn cumulative_phases(m: &Machine, n: usize) -> Vec<u64> {
    let out = run(m, &vec![Symbol(0); n], Budget::Default, Tracing::Steps).unwrap();
    assert!(out.accepted());
    phase_profile(out.trace.as_deref().unwrap()).cumulative()
}

#[test]
fn move_counts_match_traces() {
    assert_eq!((expo_moves(1), expo_moves(2)), (0, 4));
    assert_eq!((fib_moves(1), fib_moves(2)), (0, 2));
    let expo = build_expo();
    for level in 2..=10u32 {
        let phases = cumulative_phases(&expo, 1 << (level + 2));
        assert_eq!(*phases.last().unwrap() as u128, expo_moves(level), "level {level}");
    }
    let fib = build_fib();
    for level in 2..=12u32 {
        let phases = cumulative_phases(&fib, 2 * fibonacci(level + 4) as usize);
        assert_eq!(*phases.last().unwrap() as u128, fib_moves(level), "level {level}");
    }
}

#[test]
fn bound_examples() {
    let two = BigUint::from(2u8);
    for ell in 1..=4 {
        assert_eq!(class_upper_bound(1, 1, ell), two.pow(12 << ell));
    }
    assert_eq!(class_upper_bound(2, 1, 1), two.pow(26));
    assert_eq!(class_upper_bound(4, 1, 1), two.pow(28));
}

proptest! {
    #[test]
    fn bounds_grow_with_ell(q in 1u64..50, g in 1u64..10, ell in 0u32..5) {
        prop_assert!(class_upper_bound(q, g, ell) <= class_upper_bound(q, g, ell + 1));
        let bits = class_upper_bound(q, g, ell).bits() as f64 - 1.0;
        prop_assert!((bits - bound_exponent(q, g) * f64::from(1u32 << ell)).abs() < 1.0);
    }
}

fn word_of(o: &LanguageOracle, text: &str) -> Word {
    o.alphabet().parse_word(text).unwrap()
}

fn member(o: &LanguageOracle, text: &str) -> bool {
    o.contains(&word_of(o, text))
}

#[test]
fn reversed_block_language() {
    let o = oracle_lh();
    assert!(member(&o, "b a $ a a b0 alpha1"));
    assert!(!member(&o, "a b b0 alpha1"));
    assert!(member(&o, "a b $ $ b a b0 alpha1"));
    assert!(member(&o, "a a b a b0 alpha1 alpha0"));
    assert!(!member(&o, "b0"));
    assert!(member(&o, "$ b0"));
}

#[test]
fn padded_block_languages() {
    let lp = oracle_lp();
    assert!(member(&lp, "a b $ $ b $ b0 b"));
    assert!(member(&lp, "a b $ $ b $ b0 a b"));
    assert!(!member(&lp, "a b $ $ a $ b0 a"));
    assert!(!member(&lp, "a b $ b0 a b"));
    assert!(!member(&lp, "b0"));

    let hat = oracle_lp_hat();
    assert!(member(&hat, "a $ cent b $ a b1 a"));
    assert!(!member(&hat, "a $ cent b1 b"));
    assert!(!member(&hat, "a $ b1 cent a"));

    let mi = oracle_mi_hat();
    assert!(member(&mi, "cent a b $ b a b2"));
    assert!(member(&mi, "a $ b cent $ b2"));
    assert!(!member(&mi, "cent a b $ a b b2"));

    let u = oracle_union_witness();
    assert!(member(&u, "cent a b $ b a b2"));
    assert!(member(&u, "a $ cent b1 a"));
    assert!(!member(&u, "a $ cent b1 b"));

    let lt = oracle_lh_tilde();
    assert!(member(&lt, "a b $ $ b0 alpha1"));
    assert!(!member(&lt, "b a $ $ b0 alpha1"));
    let pt = oracle_lp_tilde();
    assert!(member(&pt, "a b $ $ b0 a' b'"));
    assert!(!member(&pt, "a b $ $ b0 a b"));
}

#[test]
fn primed_images_preserve_membership_exhaustively() {
    let (lh, lp) = (oracle_lh_tilde(), oracle_lp_tilde());
    let k = lh.alphabet().len();
    let mut members = 0;
    for w in twsda::alphabet::words_up_to(k, 7) {
        let image = h2(&w);
        let inside = lh.contains(&w);
        assert_eq!(inside, lp.contains(&image), "{}", lh.alphabet().render_word(&w));
        members += inside as u32;
    }
    // Only `xy $ $ b0 alpha` fits in seven symbols.
    assert_eq!(members, 4);
    assert_eq!(lp.alphabet().render_word(&h2(&word_of(&lh, "a $ b0 alpha2 alpha0"))), "a $ b0 b' a' a' a'");
}

fn padded(blocks: &[Vec<bool>]) -> String {
    let mut out = Vec::new();
    for b in blocks {
        out.extend(b.iter().map(|&x| if x { "b" } else { "a" }));
        out.extend(std::iter::repeat_n("$", b.len()));
    }
    out.join(" ")
}

proptest! {
    #[test]
    fn primed_images_on_structured_words(
        blocks in prop::collection::vec(prop::collection::vec(any::<bool>(), 1..6), 1..5),
        pick in any::<prop::sample::Index>(),
        pairs in prop::collection::vec(0u8..4, 1..4),
        flip in any::<bool>(),
    ) {
        let (lh, lp) = (oracle_lh_tilde(), oracle_lp_tilde());
        // y either spells one of the blocks (when it has even length) or is random.
        let chosen = &blocks[pick.index(blocks.len())];
        let y: Vec<u8> = if chosen.len() % 2 == 0 && !flip {
            chosen.chunks(2).map(|c| (c[0] as u8) << 1 | c[1] as u8).collect()
        } else {
            pairs
        };
        let ys: Vec<String> = y.iter().map(|i| format!("alpha{i}")).collect();
        let text = format!("{} b0 {}", padded(&blocks), ys.join(" "));
        let w = word_of(&lh, &text);
        prop_assert_eq!(lh.contains(&w), lp.contains(&h2(&w)), "{}", text);
    }

    #[test]
    fn l_equivalence_is_an_equivalence(
        ws in prop::collection::vec(prop::collection::vec(0u16..8, 0..6), 3),
        ell in 0usize..3,
    ) {
        let o = oracle_lh();
        let ws: Vec<Word> = ws.into_iter().map(|w| w.into_iter().map(Symbol).collect()).collect();
        let ext = alpha_symbols();
        let eq = |i: usize, j: usize| l_equivalent(&o, &ws[i], &ws[j], ell, &ext);
        for i in 0..3 {
            prop_assert!(eq(i, i));
            for j in 0..3 {
                prop_assert_eq!(eq(i, j), eq(j, i));
                for k in 0..3 {
                    if eq(i, j) && eq(j, k) {
                        prop_assert!(eq(i, k));
                    }
                }
            }
        }
        let p = count_classes(&o, &ws, ell, &ext);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(p.class_of(&ws[i]) == p.class_of(&ws[j]), eq(i, j));
            }
        }
    }
}

#[test]
fn subset_samples_separate_every_subset() {
    let o = oracle_lh();
    let p1 = count_classes(&o, &subset_sample(1), 1, &alpha_symbols());
    assert_eq!(BigUint::from(p1.count()), subset_class_count(1));
    let p2 = count_classes(&o, &subset_sample(2), 2, &alpha_symbols());
    assert_eq!(BigUint::from(p2.count()), subset_class_count(2));
}

fn samples(m: &Machine, max_len: usize) -> Vec<Word> {
    twsda::alphabet::words_up_to(m.input_alphabet().len(), max_len).collect()
}

#[test]
fn machine_languages_respect_the_bound() {
    for (m, max_len) in [(build_expo(), 60), (build_fib(), 60), (build_mi_hat(), 4), (build_trie_p(), 4)] {
        let o = LanguageOracle::from_machine(&m, 0);
        let ext: Vec<Symbol> = m.input_alphabet().symbols().collect();
        let sample = samples(&m, max_len);
        for ell in 1..=2u32 {
            let n = count_classes(&o, &sample, ell as usize, &ext).count();
            let bound = class_upper_bound(m.state_count() as u64, m.tree_alphabet().len() as u64, ell);
            assert!(BigUint::from(n) <= bound);
            assert!(n >= 2);
        }
    }
    assert_eq!(extensions(&[Symbol(0)], 3).len(), 4);
}

#[test]
fn subset_counts_overtake_fixed_bounds() {
    let m = build_trie_p();
    let (q, g) = (m.state_count() as u64, m.tree_alphabet().len() as u64);
    let p = bound_exponent(q, g);
    println!("ell  log2(subset classes)  log2(bound) for |Q|={q} |Gamma|={g}");
    let mut crossing = None;
    for ell in 1..=8u32 {
        let subsets = 4f64.powi(ell as i32);
        let bound = p * f64::from(1u32 << ell);
        println!("{ell:>3}  {subsets:>20}  {bound:>11.2}");
        if crossing.is_none() && subsets > bound {
            crossing = Some(ell);
        }
    }
    // 4^ell > p 2^ell exactly when 2^ell > p.
    assert_eq!(crossing, Some(p.log2().floor() as u32 + 1));
    assert_eq!(subset_class_count(3).bits(), 65);
}

#[test]
fn expo_classes_by_example() {
    let o = oracle_expo();
    let a = |n: usize| vec![Symbol(0); n];
    assert!(l_equivalent(&o, &a(3), &a(7), 1, &[Symbol(0)]));
    assert!(!l_equivalent(&o, &a(3), &a(4), 1, &[Symbol(0)]));
    assert!(l_equivalent(&o, &a(3), &a(5), 0, &[Symbol(0)]));
    let p = count_classes(&o, &(0..=20).map(a).collect::<Vec<_>>(), 1, &[Symbol(0)]);
    assert_eq!(p.class_of(&a(3)), p.class_of(&a(7)));
    assert_eq!(count_classes(&o, &[a(9)], 2, &[Symbol(0)]).count(), 1);
}
