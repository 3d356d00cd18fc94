//! Number theory, reference languages, equivalence classes, tree shapes
//! and exhaustive checking.

pub mod classes;
pub mod enumerate;
pub mod numbers;
pub mod oracles;
pub mod phases;
pub mod shapes;

pub use classes::{count_classes, l_equivalent, subset_sample, ClassPartition};
pub use enumerate::{cross_check, enumerate_accepted, CrossCheckReport, EnumError, EnumLimits, Mismatch, WordOutcome};
pub use numbers::{catalan, class_upper_bound, expo_moves, fib_moves, fibonacci};
pub use oracles::{oracle_by_name, LanguageOracle};
pub use phases::{phase_profile, PhaseProfile};
pub use shapes::{is_complete_binary, is_fibonacci_tree};
