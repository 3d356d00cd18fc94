//! `ell`-equivalence: two words are equivalent when no extension of
//! length at most `ell` separates them with respect to a language.

use std::collections::HashMap;

use crate::alphabet::{Symbol, Word};

use super::oracles::{LanguageOracle, LH_ALPHABET};

/// All words over `symbols` of length at most `ell`, shortest first.
pub fn extensions(symbols: &[Symbol], ell: usize) -> Vec<Word> {
    crate::alphabet::words_up_to(symbols.len(), ell)
        .map(|w| w.iter().map(|i| symbols[i.0 as usize]).collect())
        .collect()
}

fn signature(oracle: &LanguageOracle, w: &[Symbol], exts: &[Word]) -> Vec<bool> {
    let mut buf = w.to_vec();
    exts.iter()
        .map(|u| {
            buf.truncate(w.len());
            buf.extend_from_slice(u);
            oracle.contains(&buf)
        })
        .collect()
}

/// `wu ∈ L ⇔ w'u ∈ L` for every `u` over `ext` with `|u| <= ell`.
/// `ell = 0` compares the words themselves only.
pub fn l_equivalent(oracle: &LanguageOracle, w: &[Symbol], w2: &[Symbol], ell: usize, ext: &[Symbol]) -> bool {
    let exts = extensions(ext, ell);
    signature(oracle, w, &exts) == signature(oracle, w2, &exts)
}

/// A sample partitioned into `ell`-equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub ell: usize,
    /// Classes in order of their first member in the sample; members keep
    /// sample order.
    pub classes: Vec<Vec<Word>>,
}

impl ClassPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class holding `w`, if `w` was in the sample.
    pub fn class_of(&self, w: &[Symbol]) -> Option<usize> {
        self.classes.iter().position(|c| c.iter().any(|m| m == w))
    }
}

/// Groups `sample` by the membership of all extensions up to length
/// `ell`. The number of classes is a lower bound on the number of
/// `ell`-equivalence classes of the whole language.
pub fn count_classes(oracle: &LanguageOracle, sample: &[Word], ell: usize, ext: &[Symbol]) -> ClassPartition {
    let exts = extensions(ext, ell);
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut classes: Vec<Vec<Word>> = Vec::new();
    for w in sample {
        let sig = signature(oracle, w, &exts);
        let next = classes.len();
        let i = *index.entry(sig).or_insert(next);
        if i == next {
            classes.push(Vec::new());
        }
        classes[i].push(w.clone());
    }
    ClassPartition { ell, classes }
}

/// The `alpha0..alpha3` symbols of the reversed-block alphabet.
pub fn alpha_symbols() -> Vec<Symbol> {
    (4..8).map(Symbol).collect()
}

/// One word `$ v_1 $ v_2 ... $ v_k b0` per subset `{v_1 < ... < v_k}` of
/// `{a,b}^(2 ell)`, over the reversed-block alphabet. Subset `i` contains
/// the `j`-th word of length `2 ell` (lexicographic, `a < b`) iff bit `j`
/// of `i` is set.
///
/// # Panics
/// If `ell > 2`; the sample has `2^(4^ell)` words.
pub fn subset_sample(ell: usize) -> Vec<Word> {
    assert!(ell <= 2, "sample too large");
    let n = 2 * ell;
    let blocks: Vec<Word> = crate::alphabet::words_up_to(2, n).filter(|w| w.len() == n).collect();
    debug_assert_eq!(LH_ALPHABET[..4], ["a", "b", "$", "b0"]);
    let (dollar, mark) = (Symbol(2), Symbol(3));
    (0u64..1 << blocks.len())
        .map(|subset| {
            let mut w = Vec::new();
            for (j, v) in blocks.iter().enumerate() {
                if subset >> j & 1 == 1 {
                    w.push(dollar);
                    w.extend_from_slice(v);
                }
            }
            w.push(mark);
            w
        })
        .collect()
}
