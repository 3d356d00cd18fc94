//! Exhaustive enumeration of short words.
//!
//! Real-time machines are explored depth first over the tree of input
//! prefixes: the configuration after a prefix is computed once and
//! shared by all of its extensions, and once a prefix makes the machine
//! halt no further machine work is done below it. Other machines are run
//! word by word under a step budget.

use thiserror::Error;

use crate::alphabet::{words_up_to, Symbol, Word};
use crate::exec::{run, Budget, Storage, Tracing, Verdict};
use crate::machine::{InputClass, Machine, State};

use super::oracles::LanguageOracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{words} words up to the requested length exceed the limit of {limit}")]
    BudgetExceeded { words: u128, limit: u128 },
    #[error("machine alphabet {{{machine}}} differs from oracle alphabet {{{oracle}}}")]
    AlphabetMismatch { machine: String, oracle: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    /// Largest number of words an enumeration may visit.
    pub max_words: u128,
    /// Step budget per word for machines that are not real-time.
    pub step_budget: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_words: 2_000_000_000, step_budget: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOutcome {
    Accepted,
    Rejected,
    Violation,
    BudgetExhausted,
}

impl From<Verdict> for WordOutcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Accepted => WordOutcome::Accepted,
            Verdict::Rejected => WordOutcome::Rejected,
            Verdict::WellFormednessViolation => WordOutcome::Violation,
            Verdict::BudgetExhausted => WordOutcome::BudgetExhausted,
        }
    }
}

/// Result of running a machine on one word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordVerdict {
    pub outcome: WordOutcome,
    pub steps: u64,
    /// Steps that consumed no input.
    pub lambda_steps: u64,
}

/// Number of words of length at most `max_len` over `k` symbols,
/// saturating.
pub fn word_count(k: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k as u128);
    }
    total
}

#[derive(Clone)]
struct Cursor {
    state: State,
    storage: Storage,
    steps: u64,
}

enum Prefix {
    Live(Cursor),
    Halted(u64),
    Violated(u64),
}

struct Walker<'a, F> {
    machine: &'a Machine,
    order: &'a [Symbol],
    max_len: usize,
    word: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize], WordVerdict)> Walker<'_, F> {
    fn advance(&self, prefix: &Prefix, sym: Symbol) -> Prefix {
        let c = match prefix {
            Prefix::Live(c) => c,
            Prefix::Halted(s) => return Prefix::Halted(*s),
            Prefix::Violated(s) => return Prefix::Violated(*s),
        };
        let node = c.storage.node();
        let tree = c.storage.tree();
        let Some((consumed, t)) =
            self.machine.lookup(c.state, Some(InputClass::Symbol(sym)), tree.node_type(node), tree.label(node))
        else {
            return Prefix::Halted(c.steps);
        };
        debug_assert_eq!(consumed, InputClass::Symbol(sym), "real-time lookups never use λ");
        let mut next = c.clone();
        if next.storage.apply(t.action).is_err() {
            return Prefix::Violated(c.steps);
        }
        next.state = t.target;
        next.steps += 1;
        Prefix::Live(next)
    }

    fn finish(&self, prefix: &Prefix) -> WordVerdict {
        let (outcome, steps) = match prefix {
            Prefix::Halted(s) => (WordOutcome::Rejected, *s),
            Prefix::Violated(s) => (WordOutcome::Violation, *s),
            Prefix::Live(c) => {
                let node = c.storage.node();
                let tree = c.storage.tree();
                match self.machine.lookup(c.state, Some(InputClass::End), tree.node_type(node), tree.label(node)) {
                    None => (WordOutcome::Rejected, c.steps),
                    Some((_, t)) if c.storage.check(t.action).is_err() => (WordOutcome::Violation, c.steps),
                    Some((_, t)) if self.machine.is_accepting(t.target) => (WordOutcome::Accepted, c.steps + 1),
                    Some(_) => (WordOutcome::Rejected, c.steps + 1),
                }
            }
        };
        WordVerdict { outcome, steps, lambda_steps: 0 }
    }

    fn walk(&mut self, prefix: &Prefix) {
        let verdict = self.finish(prefix);
        (self.visit)(&self.word, verdict);
        if self.word.len() == self.max_len {
            return;
        }
        for (i, &sym) in self.order.iter().enumerate() {
            let child = self.advance(prefix, sym);
            self.word.push(i);
            self.walk(&child);
            self.word.pop();
        }
    }
}

/// Calls `visit` for every word of length at most `max_len` over the
/// symbols `order` (given as indices into `order`), in depth-first
/// lexicographic order, with the machine's verdict. Returns the number
/// of words visited.
pub fn walk_verdicts(
    m: &Machine,
    order: &[Symbol],
    max_len: usize,
    limits: EnumLimits,
    mut visit: impl FnMut(&[usize], WordVerdict),
) -> Result<u128, EnumError> {
    let words = word_count(order.len(), max_len);
    if words > limits.max_words {
        return Err(EnumError::BudgetExceeded { words, limit: limits.max_words });
    }
    if m.real_time() {
        let start = crate::exec::Configuration::initial(m, &[]);
        let prefix = Prefix::Live(Cursor { state: start.state, storage: start.storage().clone(), steps: 0 });
        let mut walker = Walker { machine: m, order, max_len, word: Vec::with_capacity(max_len), visit };
        walker.walk(&prefix);
    } else {
        let mut machine_word = Vec::with_capacity(max_len);
        for w in words_up_to(order.len(), max_len) {
            let idx: Vec<usize> = w.iter().map(|s| s.0 as usize).collect();
            machine_word.clear();
            machine_word.extend(idx.iter().map(|&i| order[i]));
            let out = run(m, &machine_word, Budget::Steps(limits.step_budget), Tracing::Steps)
                .expect("symbols come from the machine alphabet");
            let lambda_steps =
                out.trace.as_ref().map_or(0, |t| t.iter().filter(|r| r.consumed == InputClass::Lambda).count() as u64);
            visit(&idx, WordVerdict { outcome: out.verdict.into(), steps: out.steps_taken, lambda_steps });
        }
    }
    Ok(words)
}

/// Every word of length at most `max_len` the machine accepts, in
/// length-then-lexicographic order (by the machine's alphabet order).
pub fn enumerate_accepted(m: &Machine, max_len: usize) -> Result<Vec<Word>, EnumError> {
    enumerate_accepted_with(m, max_len, EnumLimits::default())
}

pub fn enumerate_accepted_with(m: &Machine, max_len: usize, limits: EnumLimits) -> Result<Vec<Word>, EnumError> {
    let order: Vec<Symbol> = m.input_alphabet().symbols().collect();
    let mut found = Vec::new();
    walk_verdicts(m, &order, max_len, limits, |w, v| {
        if v.outcome == WordOutcome::Accepted {
            found.push(w.iter().map(|&i| order[i]).collect::<Word>());
        }
    })?;
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// A word on which machine and oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Over the oracle's alphabet.
    pub word: Word,
    pub machine: WordOutcome,
    pub oracle: bool,
}

/// Outcome of [`cross_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub max_len: usize,
    pub words_checked: u128,
    pub mismatch_count: u128,
    /// The first mismatches in length-then-lexicographic order, at most
    /// [`MISMATCHES_KEPT`].
    pub mismatches: Vec<Mismatch>,
    /// Words whose run took more than `|w| + 1` steps.
    pub over_long_runs: u128,
    /// Total number of steps, over all words, that consumed no input.
    pub lambda_steps: u128,
}

pub const MISMATCHES_KEPT: usize = 1000;

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatch_count == 0
    }

    /// Every run read one symbol per step and stopped within `|w| + 1`
    /// steps.
    pub fn real_time_respected(&self) -> bool {
        self.over_long_runs == 0 && self.lambda_steps == 0
    }
}

/// Compares the machine with the oracle on every word of length at most
/// `max_len`. Violations and exhausted budgets always count as
/// mismatches.
pub fn cross_check(m: &Machine, oracle: &LanguageOracle, max_len: usize) -> Result<CrossCheckReport, EnumError> {
    cross_check_with(m, oracle, max_len, EnumLimits::default())
}

pub fn cross_check_with(
    m: &Machine,
    oracle: &LanguageOracle,
    max_len: usize,
    limits: EnumLimits,
) -> Result<CrossCheckReport, EnumError> {
    let ma = m.input_alphabet();
    let oa = oracle.alphabet();
    let mismatch = || EnumError::AlphabetMismatch { machine: ma.to_string(), oracle: oa.to_string() };
    if ma.len() != oa.len() {
        return Err(mismatch());
    }
    // Enumerate in the oracle's order; `order[i]` is the machine symbol
    // for oracle symbol `i`.
    let order: Vec<Symbol> = oa.names().iter().map(|n| ma.get(n).ok_or_else(mismatch)).collect::<Result<_, _>>()?;

    let mut by_length: Vec<Vec<Mismatch>> = vec![Vec::new(); max_len + 1];
    let mut mismatch_count = 0u128;
    let mut over_long_runs = 0u128;
    let mut lambda_steps = 0u128;
    let mut buf: Word = Vec::with_capacity(max_len);
    let words = walk_verdicts(m, &order, max_len, limits, |w, v| {
        buf.clear();
        buf.extend(w.iter().map(|&i| Symbol(i as u16)));
        let expected = oracle.contains(&buf);
        if v.steps > w.len() as u64 + 1 {
            over_long_runs += 1;
        }
        lambda_steps += v.lambda_steps as u128;
        let agrees = match v.outcome {
            WordOutcome::Accepted => expected,
            WordOutcome::Rejected => !expected,
            WordOutcome::Violation | WordOutcome::BudgetExhausted => false,
        };
        if !agrees {
            mismatch_count += 1;
            let bucket = &mut by_length[w.len()];
            if bucket.len() < MISMATCHES_KEPT {
                bucket.push(Mismatch { word: buf.clone(), machine: v.outcome, oracle: expected });
            }
        }
    })?;
    let mut mismatches: Vec<Mismatch> = by_length.into_iter().flatten().collect();
    if m.real_time() {
        // Depth-first order is lexicographic within each length already.
    } else {
        mismatches.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
    }
    mismatches.truncate(MISMATCHES_KEPT);
    Ok(CrossCheckReport { max_len, words_checked: words, mismatch_count, mismatches, over_long_runs, lambda_steps })
}
