//! Configurations, the single-step relation and complete runs.

use thiserror::Error;

use crate::alphabet::Symbol;
use crate::machine::{Action, Direction, InputClass, Machine, State};
use crate::tree::{Ancestry, GammaTree, IllegalMove, NodeId, NodeType, Side, TreePath};

/// An action that the current node does not allow.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("well-formedness violation: {action:?} at node of type {node_type}: {reason}")]
pub struct WellFormednessViolation {
    pub action: Action,
    pub node_type: NodeType,
    pub reason: IllegalMove,
}

/// Tree plus pointer. The pointer is kept both as a node handle and as a
/// path so that every move is constant time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Storage {
    tree: GammaTree,
    node: NodeId,
    path: TreePath,
}

impl Default for Storage {
    fn default() -> Self {
        Storage { tree: GammaTree::new(), node: NodeId::ROOT, path: TreePath::root() }
    }
}

impl Storage {
    pub fn new(tree: GammaTree, pointer: TreePath) -> Option<Storage> {
        let node = tree.find(&pointer)?;
        Some(Storage { tree, node, path: pointer })
    }

    pub fn tree(&self) -> &GammaTree {
        &self.tree
    }

    pub fn pointer(&self) -> &TreePath {
        &self.path
    }

    pub fn node(&self) -> NodeId {
        self.node
    }

    pub fn node_type(&self) -> NodeType {
        self.tree.node_type(self.node)
    }

    pub fn into_parts(self) -> (GammaTree, TreePath) {
        (self.tree, self.path)
    }

    /// Applies one action at the pointer.
    pub fn apply(&mut self, action: Action) -> Result<(), WellFormednessViolation> {
        let node_type = self.node_type();
        let violation = |reason| WellFormednessViolation { action, node_type, reason };
        match action {
            Action::Move(Direction::Stay) => {}
            Action::Move(Direction::Up) => {
                let parent = self.tree.parent(self.node).ok_or_else(|| violation(IllegalMove::UpFromRoot))?;
                self.node = parent;
                self.path.pop();
            }
            Action::Move(Direction::DownLeft) => self.descend(Side::Left).map_err(violation)?,
            Action::Move(Direction::DownRight) => self.descend(Side::Right).map_err(violation)?,
            Action::Pop => {
                let parent = self.tree.pop(self.node).map_err(violation)?;
                self.node = parent;
                self.path.pop();
            }
            Action::Push(sym, side) => {
                let child = self.tree.push(self.node, side, sym).map_err(violation)?;
                self.node = child;
                self.path.push(side);
            }
        }
        Ok(())
    }

    /// Checks whether `action` is legal here without performing it.
    pub fn check(&self, action: Action) -> Result<(), WellFormednessViolation> {
        let t = self.node_type();
        let reason = match action {
            Action::Move(Direction::Stay) => None,
            Action::Move(Direction::Up) => (t.ancestry == Ancestry::Root).then_some(IllegalMove::UpFromRoot),
            Action::Move(Direction::DownLeft) => (!t.has_left).then_some(IllegalMove::MissingChild(Side::Left)),
            Action::Move(Direction::DownRight) => (!t.has_right).then_some(IllegalMove::MissingChild(Side::Right)),
            Action::Pop if (t.ancestry == Ancestry::Root) => Some(IllegalMove::PopRoot),
            Action::Pop => (t.has_left || t.has_right).then_some(IllegalMove::PopNonLeaf),
            Action::Push(_, Side::Left) => t.has_left.then_some(IllegalMove::ChildExists(Side::Left)),
            Action::Push(_, Side::Right) => t.has_right.then_some(IllegalMove::ChildExists(Side::Right)),
        };
        match reason {
            None => Ok(()),
            Some(reason) => Err(WellFormednessViolation { action, node_type: t, reason }),
        }
    }

    fn descend(&mut self, side: Side) -> Result<(), IllegalMove> {
        let child = self.tree.child(self.node, side).ok_or(IllegalMove::MissingChild(side))?;
        self.node = child;
        self.path.push(side);
        Ok(())
    }
}

/// Applies `action` to a tree at the node addressed by `pointer` and
/// returns the updated tree and pointer.
pub fn apply_action(tree: GammaTree, pointer: &TreePath, action: Action) -> Result<(GammaTree, TreePath), ApplyError> {
    let mut storage = Storage::new(tree, pointer.clone()).ok_or_else(|| ApplyError::PathAbsent(pointer.clone()))?;
    storage.apply(action)?;
    Ok(storage.into_parts())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("pointer {0} is not a node of the tree")]
    PathAbsent(TreePath),
    #[error(transparent)]
    WellFormedness(#[from] WellFormednessViolation),
}

/// A complete configuration `(q, v, T, P)`: state, unread input (the
/// remaining symbols followed by the endmarker unless it was read),
/// tree and pointer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: State,
    input: Vec<Symbol>,
    position: usize,
    end_read: bool,
    storage: Storage,
}

/// What happened in one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepInfo {
    pub state_before: State,
    pub consumed: InputClass,
    pub action: Action,
    pub state_after: State,
}

impl Configuration {
    /// The initial configuration of `machine` on `word`.
    pub fn initial(machine: &Machine, word: &[Symbol]) -> Configuration {
        let storage = match machine.initial_storage() {
            Some(init) => Storage::new(init.tree.clone(), init.pointer.clone())
                .expect("initial pointer is a node of the initial tree"),
            None => Storage::default(),
        };
        Configuration { state: machine.start(), input: word.to_vec(), position: 0, end_read: false, storage }
    }

    pub fn storage(&self) -> &Storage {
        &self.storage
    }

    pub fn tree(&self) -> &GammaTree {
        self.storage.tree()
    }

    pub fn pointer(&self) -> &TreePath {
        self.storage.pointer()
    }

    /// Unread input symbols, not counting the endmarker.
    pub fn remaining(&self) -> &[Symbol] {
        &self.input[self.position..]
    }

    /// True once the endmarker has been read.
    pub fn input_consumed(&self) -> bool {
        self.end_read
    }

    fn head(&self) -> Option<InputClass> {
        match self.input.get(self.position) {
            Some(&s) => Some(InputClass::Symbol(s)),
            None if !self.end_read => Some(InputClass::End),
            None => None,
        }
    }

    /// Performs one step in place. `Ok(None)` means the machine halts.
    pub fn step_mut(&mut self, machine: &Machine) -> Result<Option<StepInfo>, WellFormednessViolation> {
        let node = self.storage.node();
        let tree = self.storage.tree();
        let Some((consumed, t)) = machine.lookup(self.state, self.head(), tree.node_type(node), tree.label(node))
        else {
            return Ok(None);
        };
        self.storage.apply(t.action)?;
        match consumed {
            InputClass::Symbol(_) => self.position += 1,
            InputClass::End => self.end_read = true,
            InputClass::Lambda => {}
        }
        let info = StepInfo { state_before: self.state, consumed, action: t.action, state_after: t.target };
        self.state = t.target;
        Ok(Some(info))
    }

    fn would_halt(&self, machine: &Machine) -> bool {
        let node = self.storage.node();
        let tree = self.storage.tree();
        machine.lookup(self.state, self.head(), tree.node_type(node), tree.label(node)).is_none()
    }
}

/// One step `C ⊢ C'`, or `None` when no transition applies.
pub fn step(machine: &Machine, config: &Configuration) -> Result<Option<Configuration>, WellFormednessViolation> {
    let mut next = config.clone();
    Ok(next.step_mut(machine)?.map(|_| next))
}

/// Step limit for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// `|w| + 1` for real-time machines; other machines need an explicit
    /// budget.
    Default,
    Steps(u64),
    Unlimited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
    BudgetExhausted,
    WellFormednessViolation,
}

/// One line of a run trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step_index: u64,
    pub state_before: State,
    pub consumed: InputClass,
    pub action: Action,
    pub pointer_after: TreePath,
    pub node_count_after: usize,
    pub state_after: State,
    /// Tree after the step, only when snapshots were requested.
    pub snapshot: Option<GammaTree>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// State in which the run stopped.
    pub halt_state: State,
    pub steps_taken: u64,
    pub input_fully_consumed: bool,
    pub trace: Option<Vec<StepRecord>>,
    pub final_tree: GammaTree,
    pub final_pointer: TreePath,
    pub violation: Option<WellFormednessViolation>,
}

impl RunOutcome {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("symbol #{0} is not in the input alphabet")]
    UnknownSymbol(u16),
    #[error("machine is not real-time: an explicit step budget is required")]
    BudgetRequired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tracing {
    #[default]
    Off,
    Steps,
    StepsWithSnapshots,
}

/// Runs `machine` on `word` from its initial configuration.
pub fn run(machine: &Machine, word: &[Symbol], budget: Budget, tracing: Tracing) -> Result<RunOutcome, RunError> {
    if let Some(bad) = word.iter().find(|s| !machine.input_alphabet().contains(**s)) {
        return Err(RunError::UnknownSymbol(bad.0));
    }
    let limit = match budget {
        Budget::Default if machine.real_time() => Some(word.len() as u64 + 1),
        Budget::Default => return Err(RunError::BudgetRequired),
        Budget::Steps(n) => Some(n),
        Budget::Unlimited => None,
    };
    let mut config = Configuration::initial(machine, word);
    let mut trace = (tracing != Tracing::Off).then(Vec::new);
    let mut steps = 0u64;
    let mut violation = None;
    let verdict = loop {
        if limit == Some(steps) {
            if config.would_halt(machine) {
                break halt_verdict(machine, &config);
            }
            break Verdict::BudgetExhausted;
        }
        match config.step_mut(machine) {
            Ok(None) => break halt_verdict(machine, &config),
            Ok(Some(info)) => {
                if let Some(trace) = trace.as_mut() {
                    trace.push(StepRecord {
                        step_index: steps,
                        state_before: info.state_before,
                        consumed: info.consumed,
                        action: info.action,
                        pointer_after: config.pointer().clone(),
                        node_count_after: config.tree().len(),
                        state_after: info.state_after,
                        snapshot: (tracing == Tracing::StepsWithSnapshots).then(|| config.tree().clone()),
                    });
                }
                steps += 1;
            }
            Err(v) => {
                violation = Some(v);
                break Verdict::WellFormednessViolation;
            }
        }
    };
    debug_assert!(!machine.real_time() || steps <= word.len() as u64 + 1);
    let input_fully_consumed = config.input_consumed();
    let (final_tree, final_pointer) = config.storage.into_parts();
    Ok(RunOutcome {
        verdict,
        halt_state: config.state,
        steps_taken: steps,
        input_fully_consumed,
        trace,
        final_tree,
        final_pointer,
        violation,
    })
}

fn halt_verdict(machine: &Machine, config: &Configuration) -> Verdict {
    if config.input_consumed() && machine.is_accepting(config.state) {
        Verdict::Accepted
    } else {
        Verdict::Rejected
    }
}

/// Convenience: does `machine` accept `word` within the default budget
/// (or `fallback` steps for machines that are not real-time)?
pub fn accepts(machine: &Machine, word: &[Symbol], fallback: u64) -> bool {
    let budget = if machine.real_time() { Budget::Default } else { Budget::Steps(fallback) };
    run(machine, word, budget, Tracing::Off).is_ok_and(|o| o.accepted())
}
