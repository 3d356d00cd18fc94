//! Random machines for property tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use twsda::machine::MachineParts;
use twsda::{
    Action, Alphabet, Ancestry, InputClass, Label, Machine, NodeType, Side, State, Symbol, Transition, TransitionKey,
    TreeSymbol,
};

pub const TREE_SYMBOLS: [TreeSymbol; 2] = [TreeSymbol(0), TreeSymbol(1)];

/// Actions that are legal at a node of type `nt`.
pub fn legal_actions(nt: NodeType, non_erasing: bool) -> Vec<Action> {
    let mut out = vec![Action::STAY];
    if nt.ancestry != Ancestry::Root {
        out.push(Action::UP);
        if !nt.has_left && !nt.has_right && !non_erasing {
            out.push(Action::Pop);
        }
    }
    if nt.has_left {
        out.push(Action::DOWN_LEFT);
    } else {
        out.extend(TREE_SYMBOLS.iter().map(|&s| Action::Push(s, Side::Left)));
    }
    if nt.has_right {
        out.push(Action::DOWN_RIGHT);
    } else {
        out.extend(TREE_SYMBOLS.iter().map(|&s| Action::Push(s, Side::Right)));
    }
    out
}

/// Every action, legal or not.
pub fn any_action(seed: u16) -> Action {
    let all = [
        Action::STAY,
        Action::UP,
        Action::DOWN_LEFT,
        Action::DOWN_RIGHT,
        Action::Pop,
        Action::Push(TreeSymbol(0), Side::Left),
        Action::Push(TreeSymbol(1), Side::Right),
    ];
    all[seed as usize % all.len()]
}

/// The (node type, label) pairs that can occur.
pub fn situations() -> Vec<(NodeType, Label)> {
    NodeType::all()
        .flat_map(|nt| {
            let labels: Vec<Label> = if nt.ancestry == Ancestry::Root {
                vec![Label::Bottom]
            } else {
                TREE_SYMBOLS.iter().map(|&s| Label::Symbol(s)).collect()
            };
            labels.into_iter().map(move |l| (nt, l))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub real_time: bool,
    pub non_erasing: bool,
    /// Allow actions that the node type forbids.
    pub illegal: bool,
}

#[derive(Debug, Clone)]
struct Cell {
    lambda: Option<(usize, u16)>,
    by_input: [Option<(usize, u16)>; 3],
}

fn cell(states: usize, real_time: bool) -> impl Strategy<Value = Cell> {
    let entry = move || prop::option::weighted(0.85, (0..states, any::<u16>()));
    let lambda =
        if real_time { Just(None).boxed() } else { prop::option::weighted(0.15, (0..states, any::<u16>())).boxed() };
    (lambda, [entry(), entry(), entry()]).prop_map(|(lambda, by_input)| Cell { lambda, by_input })
}

/// Machines over `{a, b}` with tree symbols `{x, y}` and up to four
/// states. The result passes `validate`.
pub fn machines(shape: Shape) -> impl Strategy<Value = Machine> {
    let cells = situations().len();
    (1usize..=4).prop_flat_map(move |q| {
        (prop::collection::vec(cell(q, shape.real_time), q * cells), prop::collection::vec(any::<bool>(), q))
            .prop_map(move |(table, accepting)| build(q, shape, &table, &accepting))
    })
}

fn build(q: usize, shape: Shape, table: &[Cell], accepting: &[bool]) -> Machine {
    let inputs = [InputClass::Symbol(Symbol(0)), InputClass::Symbol(Symbol(1)), InputClass::End];
    let sits = situations();
    let mut transitions = BTreeMap::new();
    for s in 0..q {
        for (j, &(nt, label)) in sits.iter().enumerate() {
            let c = &table[s * sits.len() + j];
            let pick = |seed: u16| {
                let action = if shape.illegal {
                    any_action(seed)
                } else {
                    let legal = legal_actions(nt, shape.non_erasing);
                    legal[seed as usize % legal.len()]
                };
                if shape.non_erasing && action == Action::Pop {
                    Action::STAY
                } else {
                    action
                }
            };
            let key = |input| TransitionKey { state: State(s as u32), input, node_type: nt, label };
            if let Some((target, seed)) = c.lambda {
                transitions
                    .insert(key(InputClass::Lambda), Transition { target: State(target as u32), action: pick(seed) });
                continue;
            }
            for (input, e) in inputs.iter().zip(&c.by_input) {
                if let Some((target, seed)) = *e {
                    transitions.insert(key(*input), Transition { target: State(target as u32), action: pick(seed) });
                }
            }
        }
    }
    let parts = MachineParts {
        states: (0..q).map(|i| format!("s{i}")).collect(),
        input_alphabet: Alphabet::new(["a", "b"]).unwrap(),
        tree_alphabet: Alphabet::new(["x", "y"]).unwrap(),
        transitions,
        start: State(0),
        accepting: (0..q).filter(|&i| accepting[i]).map(|i| State(i as u32)).collect::<BTreeSet<_>>(),
        real_time: shape.real_time,
        non_erasing: shape.non_erasing,
        initial_storage: None,
    };
    Machine::from_parts(parts).validated().expect("generated machine is valid")
}

pub fn words(max_len: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec((0u16..2).prop_map(Symbol), 0..=max_len)
}
