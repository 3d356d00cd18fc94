use twsda::analysis::enumerate_accepted;
use twsda::combinators::{intersect_regular, left_quotient, Dfa};
use twsda::constructions::{
    build_cub, build_expo, build_fib, build_mi_hat, build_trie_p, build_trie_p_hat, builtin, BUILTINS,
};
use twsda::{accepts, run, validate, Action, Budget, InputClass, Machine, Symbol, Tracing};

fn accepts_text(m: &Machine, text: &str) -> bool {
    let w = m.input_alphabet().parse_word(text).unwrap();
    accepts(m, &w, 0)
}

fn a(n: usize) -> Vec<Symbol> {
    vec![Symbol(0); n]
}

#[test]
fn builtins_are_valid_real_time_tables() {
    for name in BUILTINS {
        let m = builtin(name).unwrap();
        assert!(validate(&m).is_empty(), "{name}");
        assert!(m.real_time(), "{name}");
        assert!(m.transitions().keys().all(|k| k.input != InputClass::Lambda), "{name}");
        let pops = m.transitions().values().any(|t| t.action == Action::Pop);
        assert_eq!(pops, *name == "mi-hat", "{name}");
        assert_eq!(m.non_erasing(), *name != "mi-hat", "{name}");
    }
    assert!(builtin("nope").is_none());
}

#[test]
fn unary_examples() {
    let expo = build_expo();
    assert!(accepts(&expo, &a(1), 0));
    assert!(!accepts(&expo, &a(12), 0));
    let fib = build_fib();
    assert!(!accepts(&fib, &a(14), 0));
    assert!(accepts(&fib, &a(68), 0));
    let cub = build_cub();
    assert!(accepts(&cub, &a(27), 0));
    assert!(!accepts(&cub, &a(28), 0));
    let lengths: Vec<usize> = enumerate_accepted(&cub, 1000).unwrap().iter().map(Vec::len).collect();
    assert_eq!(lengths, vec![0, 1, 8, 27, 64, 125, 216, 343, 512, 729, 1000]);
}

#[test]
fn trie_examples() {
    let m = build_trie_p();
    assert!(accepts_text(&m, "a b $ $ b $ b0 a b"));
    assert!(!accepts_text(&m, "a b $ $ b $ b0 a"));
    assert!(!accepts_text(&m, "b0"));
    let hat = build_trie_p_hat();
    assert!(accepts_text(&hat, "a $ cent b b $ a b1 a"));
    assert!(!accepts_text(&hat, "a $ cent b1 b"));
    assert!(!accepts_text(&hat, "a $ b1 a"));
}

#[test]
fn mirror_examples() {
    let m = build_mi_hat();
    assert!(accepts_text(&m, "cent a b $ b a b2"));
    assert!(!accepts_text(&m, "cent a b $ a b b2"));
    assert!(accepts_text(&m, "a $ b cent $ b2"));
    let w = m.input_alphabet().parse_word("b cent a b b $ b b a b2").unwrap();
    let out = run(&m, &w, Budget::Default, Tracing::Off).unwrap();
    assert!(out.accepted());
    assert!(out.final_pointer.is_root());
}

#[test]
fn combinator_examples() {
    let unary = build_expo().input_alphabet().clone();
    let odd = Dfa::length_mod(unary.clone(), 2, &[1]);
    let i = intersect_regular(&build_expo(), &odd).unwrap();
    assert_eq!(enumerate_accepted(&i, 300).unwrap(), vec![a(1)]);
    let even = Dfa::length_mod(unary, 2, &[0]);
    let fib = build_fib();
    let j = intersect_regular(&fib, &even).unwrap();
    assert_eq!(enumerate_accepted(&j, 300).unwrap(), enumerate_accepted(&fib, 300).unwrap());

    let q = left_quotient(&build_expo(), &a(1)).unwrap();
    assert!(accepts(&q, &a(1), 0) && accepts(&q, &a(3), 0) && !accepts(&q, &a(2), 0));

    let m = build_mi_hat();
    let cent = m.input_alphabet().parse_word("cent").unwrap();
    let q = left_quotient(&m, &cent).unwrap();
    assert!(accepts_text(&q, "a b $ b a b2"));
    assert!(accepts_text(&q, "$ b2"));
    assert!(!accepts_text(&q, "a $ b b2"));
    let same = left_quotient(&m, &[]).unwrap();
    for w in twsda::alphabet::words_up_to(5, 7) {
        assert_eq!(accepts(&same, &w, 0), accepts(&m, &w, 0));
    }
}
