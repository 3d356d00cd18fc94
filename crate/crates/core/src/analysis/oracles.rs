//! Reference membership predicates for the languages the machines are
//! checked against.

use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::exec::accepts;
use crate::machine::Machine;

use super::numbers::is_fibonacci;

type Predicate = Arc<dyn Fn(&[Symbol]) -> bool + Send + Sync>;

/// A named language over a fixed alphabet, given by a total predicate.
#[derive(Clone)]
pub struct LanguageOracle {
    name: String,
    alphabet: Alphabet,
    predicate: Predicate,
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageOracle").field("name", &self.name).field("alphabet", &self.alphabet).finish()
    }
}

impl LanguageOracle {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        predicate: impl Fn(&[Symbol]) -> bool + Send + Sync + 'static,
    ) -> Self {
        LanguageOracle { name: name.into(), alphabet, predicate: Arc::new(predicate) }
    }

    /// The language of a machine. Machines that are not real-time are run
    /// with `step_budget` steps; running out counts as rejection.
    pub fn from_machine(m: &Machine, step_budget: u64) -> Self {
        let machine = m.clone();
        LanguageOracle::new("machine", m.input_alphabet().clone(), move |w| accepts(&machine, w, step_budget))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        (self.predicate)(word)
    }

    /// Parses `text` over the oracle's alphabet and tests membership.
    pub fn contains_str(&self, text: &str) -> Result<bool, crate::alphabet::AlphabetError> {
        Ok(self.contains(&self.alphabet.parse_word(text)?))
    }
}

/// Names accepted by [`oracle_by_name`].
pub const ORACLES: &[&str] = &["expo", "fib", "cub", "lh", "lp", "lp-hat", "mi-hat", "lh-tilde", "lp-tilde", "union"];

pub fn oracle_by_name(name: &str) -> Option<LanguageOracle> {
    Some(match name {
        "expo" => oracle_expo(),
        "fib" => oracle_fib(),
        "cub" => oracle_cub(),
        "lh" => oracle_lh(),
        "lp" => oracle_lp(),
        "lp-hat" => oracle_lp_hat(),
        "mi-hat" => oracle_mi_hat(),
        "lh-tilde" => oracle_lh_tilde(),
        "lp-tilde" => oracle_lp_tilde(),
        "union" => oracle_union_witness(),
        _ => return None,
    })
}

pub const UNARY: &[&str] = &["a"];
pub const LH_ALPHABET: &[&str] = &["a", "b", "$", "b0", "alpha0", "alpha1", "alpha2", "alpha3"];
pub const LP_ALPHABET: &[&str] = &["a", "b", "$", "b0"];
pub const LP_HAT_ALPHABET: &[&str] = &["a", "b", "$", "cent", "b1"];
pub const MI_HAT_ALPHABET: &[&str] = &["a", "b", "$", "cent", "b2"];
pub const LH_TILDE_ALPHABET: &[&str] = LH_ALPHABET;
pub const LP_TILDE_ALPHABET: &[&str] = &["a", "b", "$", "b0", "a'", "b'"];
pub const UNION_ALPHABET: &[&str] = &["a", "b", "$", "cent", "b1", "b2"];

fn alphabet(names: &[&str]) -> Alphabet {
    Alphabet::new(names.iter().copied()).expect("fixed alphabet")
}

pub fn oracle_expo() -> LanguageOracle {
    LanguageOracle::new("expo", alphabet(UNARY), |w| w.len().is_power_of_two())
}

pub fn oracle_fib() -> LanguageOracle {
    LanguageOracle::new("fib", alphabet(UNARY), |w| w.len() % 2 == 0 && is_fibonacci((w.len() / 2) as u128))
}

pub fn oracle_cub() -> LanguageOracle {
    LanguageOracle::new("cub", alphabet(UNARY), |w| is_cube(w.len() as u64))
}

pub fn is_cube(n: u64) -> bool {
    let r = (n as f64).cbrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|c| c.checked_pow(3) == Some(n))
}

/// Symbol roles shared by the block languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    A,
    B,
    Dollar,
    Cent,
    Mark0,
    Mark1,
    Mark2,
    Alpha(u8),
    APrime,
    BPrime,
}

fn tokens(names: &[&str]) -> Vec<Tok> {
    names
        .iter()
        .map(|n| match *n {
            "a" => Tok::A,
            "b" => Tok::B,
            "$" => Tok::Dollar,
            "cent" => Tok::Cent,
            "b0" => Tok::Mark0,
            "b1" => Tok::Mark1,
            "b2" => Tok::Mark2,
            "alpha0" => Tok::Alpha(0),
            "alpha1" => Tok::Alpha(1),
            "alpha2" => Tok::Alpha(2),
            "alpha3" => Tok::Alpha(3),
            "a'" => Tok::APrime,
            "b'" => Tok::BPrime,
            other => panic!("no role for symbol {other}"),
        })
        .collect()
}

/// Letters are kept as `false` for `a` and `true` for `b`.
fn letter(t: Tok) -> Option<bool> {
    match t {
        Tok::A => Some(false),
        Tok::B => Some(true),
        _ => None,
    }
}

/// `h`: alpha0 -> aa, alpha1 -> ab, alpha2 -> ba, alpha3 -> bb.
fn h(i: u8) -> [bool; 2] {
    [i & 2 != 0, i & 1 != 0]
}

/// Splits `x_1 $^|x_1| ... x_k $^|x_k|` into its blocks. Blocks are
/// nonempty; the decomposition is then unique. Returns `None` if the
/// text has a different shape or if some block is a proper prefix of an
/// earlier one.
fn padded_blocks(text: &[Tok]) -> Option<Vec<Vec<bool>>> {
    let mut blocks: Vec<Vec<bool>> = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let mut block = Vec::new();
        while let Some(l) = text.get(i).copied().and_then(letter) {
            block.push(l);
            i += 1;
        }
        let start = i;
        while text.get(i) == Some(&Tok::Dollar) {
            i += 1;
        }
        if block.is_empty() || i - start != block.len() {
            return None;
        }
        if blocks.iter().any(|earlier| earlier.len() > block.len() && earlier.starts_with(&block)) {
            return None;
        }
        blocks.push(block);
    }
    Some(blocks)
}

/// Common shape `blocks MARK y` where `y` is rewritten to a letter string
/// by `image`; member iff some block equals the image.
fn padded_member(text: &[Tok], mark: Tok, image: impl Fn(&[Tok]) -> Option<Vec<bool>>) -> bool {
    let Some(pos) = text.iter().position(|&t| t == mark) else { return false };
    let Some(target) = image(&text[pos + 1..]) else { return false };
    padded_blocks(&text[..pos]).is_some_and(|blocks| blocks.contains(&target))
}

fn letters_only(y: &[Tok]) -> Option<Vec<bool>> {
    y.iter().map(|&t| letter(t)).collect()
}

fn alpha_image(y: &[Tok]) -> Option<Vec<bool>> {
    let mut out = Vec::with_capacity(2 * y.len());
    for &t in y {
        let Tok::Alpha(i) = t else { return None };
        out.extend(h(i));
    }
    Some(out)
}

fn primed_image(y: &[Tok]) -> Option<Vec<bool>> {
    y.iter()
        .map(|&t| match t {
            Tok::APrime => Some(false),
            Tok::BPrime => Some(true),
            _ => None,
        })
        .collect()
}

fn tokenized(name: &'static str, names: &'static [&'static str], f: fn(&[Tok]) -> bool) -> LanguageOracle {
    let table = tokens(names);
    LanguageOracle::new(name, alphabet(names), move |w| {
        // Words here are short; a stack buffer avoids allocation.
        let mut buf = [Tok::A; 64];
        if w.len() <= buf.len() {
            for (slot, s) in buf.iter_mut().zip(w) {
                *slot = table[s.0 as usize];
            }
            f(&buf[..w.len()])
        } else {
            f(&w.iter().map(|s| table[s.0 as usize]).collect::<Vec<_>>())
        }
    })
}

fn lp(t: &[Tok]) -> bool {
    padded_member(t, Tok::Mark0, letters_only)
}

fn lp_hat(t: &[Tok]) -> bool {
    let Some(cent) = t.iter().position(|&x| x == Tok::Cent) else { return false };
    let Some(mark) = t.iter().position(|&x| x == Tok::Mark1) else { return false };
    if mark < cent || t[cent + 1..mark].iter().any(|&x| !matches!(x, Tok::A | Tok::B | Tok::Dollar)) {
        return false;
    }
    let Some(target) = letters_only(&t[mark + 1..]) else { return false };
    padded_blocks(&t[..cent]).is_some_and(|blocks| blocks.contains(&target))
}

fn mi_hat(t: &[Tok]) -> bool {
    let Some(cent) = t.iter().position(|&x| x == Tok::Cent) else { return false };
    if t[..cent].iter().any(|&x| !matches!(x, Tok::A | Tok::B | Tok::Dollar)) {
        return false;
    }
    let Some((&Tok::Mark2, body)) = t[cent + 1..].split_last() else { return false };
    let Some(dollar) = body.iter().position(|&x| x == Tok::Dollar) else { return false };
    let (v, w) = (&body[..dollar], &body[dollar + 1..]);
    v.len() == w.len() && v.iter().all(|&x| letter(x).is_some()) && v.iter().eq(w.iter().rev())
}

fn lh(t: &[Tok]) -> bool {
    let Some(pos) = t.iter().position(|&x| x == Tok::Mark0) else { return false };
    let Some(target) = alpha_image(&t[pos + 1..]) else { return false };
    let prefix = &t[..pos];
    if prefix.is_empty() {
        // k = 0: there is no block to match.
        return false;
    }
    let mut found = false;
    for block in prefix.split(|&x| x == Tok::Dollar) {
        let Some(letters) = letters_only(block) else { return false };
        found |= letters.iter().rev().eq(target.iter());
    }
    found
}

fn lh_tilde(t: &[Tok]) -> bool {
    padded_member(t, Tok::Mark0, alpha_image)
}

fn lp_tilde(t: &[Tok]) -> bool {
    padded_member(t, Tok::Mark0, primed_image)
}

fn union(t: &[Tok]) -> bool {
    lp_hat(t) || mi_hat(t)
}

/// `x_1 $ x_2 $ ... $ x_k b0 y`, `y` over `alpha0..alpha3`, with some
/// `x_j` equal to `h(y)` reversed.
pub fn oracle_lh() -> LanguageOracle {
    tokenized("lh", LH_ALPHABET, lh)
}

/// `x_1 $^|x_1| ... x_k $^|x_k| b0 y` with no `x_i` a proper prefix of
/// an earlier `x_j` and `y` equal to some `x_m`.
pub fn oracle_lp() -> LanguageOracle {
    tokenized("lp", LP_ALPHABET, lp)
}

/// As [`oracle_lp`] with `cent z` before the marker `b1`.
pub fn oracle_lp_hat() -> LanguageOracle {
    tokenized("lp-hat", LP_HAT_ALPHABET, lp_hat)
}

/// `x cent v $ v^R b2`.
pub fn oracle_mi_hat() -> LanguageOracle {
    tokenized("mi-hat", MI_HAT_ALPHABET, mi_hat)
}

/// Padded blocks as in [`oracle_lp`], `y` over `alpha0..alpha3`, some
/// block equal to `h(y)`.
pub fn oracle_lh_tilde() -> LanguageOracle {
    tokenized("lh-tilde", LH_TILDE_ALPHABET, lh_tilde)
}

/// Padded blocks as in [`oracle_lp`], `y` over `a' b'`, some block equal
/// to `y` unprimed.
pub fn oracle_lp_tilde() -> LanguageOracle {
    tokenized("lp-tilde", LP_TILDE_ALPHABET, lp_tilde)
}

/// Union of the `lp-hat` and `mi-hat` languages.
pub fn oracle_union_witness() -> LanguageOracle {
    tokenized("union", UNION_ALPHABET, union)
}

/// `h2` from the `lh-tilde` alphabet to the `lp-tilde` alphabet: each
/// `alpha_i` becomes the primed pair `h(alpha_i)`, every other symbol
/// (including the marker `b0`) maps to itself.
pub fn h2(word: &[Symbol]) -> Word {
    let src = tokens(LH_TILDE_ALPHABET);
    let dst = alphabet(LP_TILDE_ALPHABET);
    let sym = |n: &str| dst.get(n).expect("symbol of the target alphabet");
    let mut out = Vec::with_capacity(word.len() * 2);
    for s in word {
        match src[s.0 as usize] {
            Tok::Alpha(i) => {
                out.extend(h(i).iter().map(|&bit| sym(if bit { "b'" } else { "a'" })));
            }
            _ => out.push(sym(LH_TILDE_ALPHABET[s.0 as usize])),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yes(o: &LanguageOracle, w: &str) -> bool {
        o.contains_str(w).unwrap()
    }

    #[test]
    fn unary_languages() {
        let e = oracle_expo();
        let lens: Vec<usize> = (0..40).filter(|&n| e.contains(&vec![Symbol(0); n])).collect();
        assert_eq!(lens, vec![1, 2, 4, 8, 16, 32]);
        let f = oracle_fib();
        let lens: Vec<usize> = (0..40).filter(|&n| f.contains(&vec![Symbol(0); n])).collect();
        assert_eq!(lens, vec![2, 4, 6, 10, 16, 26]);
        let c = oracle_cub();
        let lens: Vec<usize> = (0..130).filter(|&n| c.contains(&vec![Symbol(0); n])).collect();
        assert_eq!(lens, vec![0, 1, 8, 27, 64, 125]);
        assert!(is_cube(1_000_000_000_000) && !is_cube(999_999_999_999));
    }

    #[test]
    fn reversed_block_language() {
        let o = oracle_lh();
        // h(alpha1) = ab, so a block ba matches.
        assert!(yes(&o, "a $ b a $ b b0 alpha1"));
        assert!(!yes(&o, "a $ a b $ b b0 alpha1"));
        assert!(yes(&o, "$ a b b0"));
        assert!(!yes(&o, "b0"));
        assert!(!yes(&o, "a b0 a"));
        assert!(yes(&o, "a a b a b0 alpha1 alpha0"));
    }

    #[test]
    fn padded_trie_language() {
        let o = oracle_lp();
        assert!(yes(&o, "ab$$b$b0ab"));
        assert!(!yes(&o, "ab$$b$b0a"));
        assert!(!yes(&o, "b0"));
        assert!(yes(&o, "a$ab$$b0a"));
        assert!(!yes(&o, "ab$$a$b0ab"));
        assert!(yes(&o, "ab$$ab$$b0ab"));
        assert!(!yes(&o, "ab$b0ab"));
        assert!(!yes(&o, "$b0"));
    }

    #[test]
    fn hat_languages() {
        let p = oracle_lp_hat();
        assert!(yes(&p, "a$centbb$ab1a"));
        assert!(!yes(&p, "a$centb1b"));
        assert!(!yes(&p, "a $ b1 cent a"));
        let m = oracle_mi_hat();
        assert!(yes(&m, "centab$bab2"));
        assert!(!yes(&m, "centab$abb2"));
        assert!(yes(&m, "a$bcent$b2"));
        assert!(!yes(&m, "centa$ab2a"));
        let u = oracle_union_witness();
        assert!(yes(&u, "a$centb1a") && yes(&u, "centab$bab2") && !yes(&u, "cent"));
    }

    #[test]
    fn tilde_languages_and_h2() {
        let lh = oracle_lh_tilde();
        let lp = oracle_lp_tilde();
        assert!(yes(&lh, "ab$$b0alpha1"));
        assert!(!yes(&lh, "ba$$b0alpha1"));
        assert!(yes(&lp, "ab$$b0a'b'"));
        let w = lh.alphabet().parse_word("ab$$b0alpha1").unwrap();
        let image = h2(&w);
        assert_eq!(lp.alphabet().render_word(&image), "a b $ $ b0 a' b'");
        assert!(lp.contains(&image));
    }
}
