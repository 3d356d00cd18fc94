//! Splitting a run trace into tree-building phases.
//!
//! A building move is any step that is not a stay. A phase ends with a
//! building move that returns the pointer to the root and is followed by
//! a stay or by nothing.

use crate::exec::StepRecord;
use crate::machine::Action;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhaseProfile {
    /// Building moves of each completed phase.
    pub phase_moves: Vec<u64>,
    /// Building moves after the last completed phase.
    pub trailing_moves: u64,
    /// Stay moves.
    pub delay_moves: u64,
    /// All steps that read an input symbol (not the endmarker).
    pub symbol_moves: u64,
}

impl PhaseProfile {
    pub fn building_moves(&self) -> u64 {
        self.phase_moves.iter().sum::<u64>() + self.trailing_moves
    }

    /// Building moves after each completed phase, summed from the start.
    pub fn cumulative(&self) -> Vec<u64> {
        self.phase_moves
            .iter()
            .scan(0, |acc, m| {
                *acc += m;
                Some(*acc)
            })
            .collect()
    }
}

pub fn phase_profile(trace: &[StepRecord]) -> PhaseProfile {
    let mut p = PhaseProfile::default();
    let mut current = 0;
    for (i, r) in trace.iter().enumerate() {
        if matches!(r.consumed, crate::machine::InputClass::Symbol(_)) {
            p.symbol_moves += 1;
        }
        if r.action == Action::STAY {
            p.delay_moves += 1;
            continue;
        }
        current += 1;
        let next_is_stay = trace.get(i + 1).is_none_or(|n| n.action == Action::STAY);
        if r.pointer_after.is_root() && next_is_stay {
            p.phase_moves.push(current);
            current = 0;
        }
    }
    p.trailing_moves = current;
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Symbol;
    use crate::analysis::numbers::{expo_moves, fib_moves};
    use crate::constructions::{build_expo, build_fib};
    use crate::exec::{run, Budget, Tracing};

    fn profile(m: &crate::machine::Machine, n: usize) -> PhaseProfile {
        let out = run(m, &vec![Symbol(0); n], Budget::Default, Tracing::Steps).unwrap();
        phase_profile(out.trace.as_ref().unwrap())
    }

    #[test]
    fn expo_phases() {
        let p = profile(&build_expo(), 64);
        assert_eq!(p.trailing_moves, 0);
        let expected: Vec<u64> = (2..=4).map(|l| expo_moves(l) as u64).collect();
        assert_eq!(p.cumulative(), expected);
        assert_eq!(p.symbol_moves, 64);
    }

    #[test]
    fn fib_phases() {
        let p = profile(&build_fib(), 2 * 21);
        let expected: Vec<u64> = (2..=4).map(|l| fib_moves(l) as u64).collect();
        assert_eq!(p.cumulative(), expected);
    }
}
