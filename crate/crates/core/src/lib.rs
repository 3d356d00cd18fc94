//! Tree-walking store automata: deterministic machines whose auxiliary
//! storage is a binary tree that is built, walked and (optionally) pruned
//! while the input is read.
//!
//! The crate provides the machine model and its step semantics, a text
//! format for machines, several hand-built machines, closure combinators,
//! and analysis utilities for cross-checking machines against reference
//! language predicates.

pub mod alphabet;
pub mod analysis;
pub mod combinators;
pub mod constructions;
pub mod exec;
pub mod format;
pub mod machine;
pub mod tree;

pub use alphabet::{Alphabet, AlphabetError, Symbol, Word};
pub use exec::{accepts, run, step, Budget, Configuration, RunError, RunOutcome, StepRecord, Tracing, Verdict};
pub use format::{export_machine, parse_machine, Diagnostic, MachineFileError};
pub use machine::{
    validate, Action, Direction, InitialStorage, InputClass, InvalidMachine, Machine, MachineBuilder, State,
    Transition, TransitionKey, Violation,
};
pub use tree::{Ancestry, GammaTree, Label, NodeType, Side, TreePath, TreeSymbol};
