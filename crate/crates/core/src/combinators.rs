//! Closure constructions: complement, intersection with a regular
//! language, and left quotient by a single word.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::alphabet::{Alphabet, Symbol};
use crate::exec::{Configuration, WellFormednessViolation};
use crate::machine::{Action, InitialStorage, InputClass, Machine, State, Transition, TransitionKey};
use crate::tree::{Ancestry, Label, NodeType, TreeSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatorError {
    #[error("complement needs a real-time machine")]
    NotRealTime,
    #[error("alphabet mismatch: machine has {{{machine}}}, automaton has {{{dfa}}}")]
    AlphabetMismatch { machine: String, dfa: String },
    #[error("the machine halts after reading {consumed} symbol(s) of the prefix")]
    PrefixKillsMachine { consumed: usize },
    #[error("reading the prefix violates well-formedness: {0}")]
    PrefixViolation(WellFormednessViolation),
    #[error("reading the prefix takes more than {0} steps")]
    PrefixBudget(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("transition table has {found} entries, expected {expected}")]
    NotTotal { expected: usize, found: usize },
    #[error("state {0} out of range")]
    BadState(usize),
}

/// A complete deterministic finite automaton. States are `0..states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    states: usize,
    delta: Vec<usize>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Dfa {
    /// `delta[q * |alphabet| + a]` is the successor of `q` on symbol `a`.
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        delta: Vec<usize>,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Dfa, DfaError> {
        let expected = states * alphabet.len();
        if delta.len() != expected {
            return Err(DfaError::NotTotal { expected, found: delta.len() });
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&bad) = delta.iter().chain(&accepting).chain([&start]).find(|&&q| q >= states) {
            return Err(DfaError::BadState(bad));
        }
        Ok(Dfa { alphabet, states, delta, start, accepting })
    }

    /// Words whose length is congruent to one of `residues` modulo `modulus`.
    pub fn length_mod(alphabet: Alphabet, modulus: usize, residues: &[usize]) -> Dfa {
        let k = alphabet.len();
        let delta = (0..modulus).flat_map(|q| std::iter::repeat_n((q + 1) % modulus, k)).collect();
        Dfa::new(alphabet, modulus, delta, 0, residues.iter().map(|r| r % modulus)).expect("well-formed")
    }

    /// The empty language.
    pub fn empty(alphabet: Alphabet) -> Dfa {
        Dfa::length_mod(alphabet, 1, &[]).with_accepting([])
    }

    /// Words that contain `symbol` at least once.
    pub fn contains_symbol(alphabet: Alphabet, symbol: Symbol) -> Dfa {
        let k = alphabet.len();
        let mut delta = vec![0; 2 * k];
        for a in 0..k {
            delta[a] = usize::from(a == symbol.0 as usize);
            delta[k + a] = 1;
        }
        Dfa::new(alphabet, 2, delta, 0, [1]).expect("well-formed")
    }

    fn with_accepting(mut self, accepting: impl IntoIterator<Item = usize>) -> Dfa {
        self.accepting = accepting.into_iter().collect();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn next(&self, q: usize, a: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + a.0 as usize]
    }

    pub fn run(&self, word: &[Symbol]) -> bool {
        self.is_accepting(word.iter().fold(self.start, |q, &a| self.next(q, a)))
    }
}

/// Standard acceptance of `word` by `d`.
pub fn dfa_run(d: &Dfa, word: &[Symbol]) -> bool {
    d.run(word)
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Every concrete (node type, label) pair a node can actually have.
fn possible_nodes(tree_symbols: usize) -> Vec<(NodeType, Label)> {
    NodeType::all()
        .flat_map(|t| {
            let labels: Vec<Label> = if t.ancestry == Ancestry::Root {
                vec![Label::Bottom]
            } else {
                (0..tree_symbols).map(|i| Label::Symbol(TreeSymbol(i as u16))).collect()
            };
            labels.into_iter().map(move |l| (t, l))
        })
        .collect()
}

/// Machine for the complement language. Wherever the original halts
/// early a single sink state takes over and reads the rest of the input;
/// the accepting states are then swapped.
pub fn complement(m: &Machine) -> Result<Machine, CombinatorError> {
    if !m.real_time() {
        return Err(CombinatorError::NotRealTime);
    }
    let mut parts = m.parts().clone();
    let sink = State(parts.states.len() as u32);
    parts.states.push(fresh_name(&parts.states, "sink"));
    let inputs: Vec<InputClass> =
        parts.input_alphabet.symbols().map(InputClass::Symbol).chain([InputClass::End]).collect();
    let nodes = possible_nodes(parts.tree_alphabet.len());
    for q in 0..parts.states.len() as u32 {
        for &input in &inputs {
            for &(node_type, label) in &nodes {
                let key = TransitionKey { state: State(q), input, node_type, label };
                parts.transitions.entry(key).or_insert(Transition { target: sink, action: Action::STAY });
            }
        }
    }
    let all: BTreeSet<State> = (0..parts.states.len() as u32).map(State).collect();
    parts.accepting = all.difference(&parts.accepting).copied().collect();
    Machine::from_parts(parts).validated().map_err(|e| unreachable!("complement of a valid machine: {e}"))
}

/// Product of `m` with a finite automaton over the same alphabet. Steps
/// that read a symbol advance the automaton; λ and endmarker steps leave
/// it where it is.
pub fn intersect_regular(m: &Machine, d: &Dfa) -> Result<Machine, CombinatorError> {
    let ma = m.input_alphabet();
    let mismatch = || CombinatorError::AlphabetMismatch { machine: ma.to_string(), dfa: d.alphabet().to_string() };
    if ma.len() != d.alphabet().len() {
        return Err(mismatch());
    }
    // Machine symbol index -> automaton symbol index.
    let map: Vec<Symbol> =
        ma.names().iter().map(|n| d.alphabet().get(n).ok_or_else(mismatch)).collect::<Result<_, _>>()?;

    let k = d.state_count() as u32;
    let pair = |q: State, s: usize| State(q.0 * k + s as u32);
    let map = &map;
    let mut parts = m.parts().clone();
    parts.states = m.states().iter().flat_map(|q| (0..d.state_count()).map(move |s| format!("{q}|{s}"))).collect();
    parts.start = pair(m.start(), d.start());
    parts.accepting = m
        .accepting()
        .iter()
        .flat_map(|&f| (0..d.state_count()).filter(|&s| d.is_accepting(s)).map(move |s| pair(f, s)))
        .collect();
    parts.transitions = m
        .transitions()
        .iter()
        .flat_map(|(key, t)| {
            (0..d.state_count()).map(move |s| {
                let next = match key.input {
                    InputClass::Symbol(a) => d.next(s, map[a.0 as usize]),
                    InputClass::Lambda | InputClass::End => s,
                };
                (
                    TransitionKey { state: pair(key.state, s), ..*key },
                    Transition { target: pair(t.target, next), action: t.action },
                )
            })
        })
        .collect();
    let product = Machine::from_parts(parts);
    Ok(if m.is_validated() { product.validated().expect("product of a valid machine is valid") } else { product })
}

/// Step limit when reading the prefix with a machine that is not real-time.
pub const QUOTIENT_PREFIX_BUDGET: u64 = 1 << 20;

/// Machine for `{ u | prefix u ∈ L(m) }`: the configuration reached after
/// reading `prefix` becomes the initial configuration.
pub fn left_quotient(m: &Machine, prefix: &[Symbol]) -> Result<Machine, CombinatorError> {
    let mut config = Configuration::initial(m, prefix);
    let mut steps = 0u64;
    while !config.remaining().is_empty() {
        if steps == QUOTIENT_PREFIX_BUDGET {
            return Err(CombinatorError::PrefixBudget(steps));
        }
        match config.step_mut(m) {
            Ok(Some(_)) => steps += 1,
            Ok(None) => {
                return Err(CombinatorError::PrefixKillsMachine { consumed: prefix.len() - config.remaining().len() })
            }
            Err(v) => return Err(CombinatorError::PrefixViolation(v)),
        }
    }
    let state = config.state;
    let storage = InitialStorage { tree: config.tree().clone(), pointer: config.pointer().clone() };
    let q = m.with_initial(state, storage);
    Ok(if m.is_validated() { q.validated().expect("same table, still valid") } else { q })
}
