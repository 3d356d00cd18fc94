//! Machine descriptions: transition tables, builders and the validator.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, Symbol};
use crate::tree::{Ancestry, GammaTree, Label, NodeType, Side, TreePath, TreeSymbol};

/// Index of an internal state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(pub u32);

/// What the input head offers to the transition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InputClass {
    Symbol(Symbol),
    Lambda,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Up,
    Stay,
    DownLeft,
    DownRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Move(Direction),
    Pop,
    Push(TreeSymbol, Side),
}

impl Action {
    pub const UP: Action = Action::Move(Direction::Up);
    pub const STAY: Action = Action::Move(Direction::Stay);
    pub const DOWN_LEFT: Action = Action::Move(Direction::DownLeft);
    pub const DOWN_RIGHT: Action = Action::Move(Direction::DownRight);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionKey {
    pub state: State,
    pub input: InputClass,
    pub node_type: NodeType,
    pub label: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub target: State,
    pub action: Action,
}

/// A non-default starting storage, used by left quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialStorage {
    pub tree: GammaTree,
    pub pointer: TreePath,
}

/// Plain-data view of a machine; [`Machine::from_parts`] compiles it.
#[derive(Debug, Clone)]
pub struct MachineParts {
    pub states: Vec<String>,
    pub input_alphabet: Alphabet,
    pub tree_alphabet: Alphabet,
    pub transitions: BTreeMap<TransitionKey, Transition>,
    pub start: State,
    pub accepting: BTreeSet<State>,
    pub real_time: bool,
    pub non_erasing: bool,
    pub initial_storage: Option<InitialStorage>,
}

/// A deterministic tree-walking-storage automaton.
///
/// Immutable once built. Lookups go through a dense table indexed by
/// state, input class, node type and label.
#[derive(Debug, Clone)]
pub struct Machine {
    parts: MachineParts,
    table: Vec<Option<Transition>>,
    input_classes: usize,
    labels: usize,
    validated: bool,
}

impl Machine {
    pub fn from_parts(parts: MachineParts) -> Machine {
        let input_classes = parts.input_alphabet.len() + 2;
        let labels = parts.tree_alphabet.len() + 1;
        let mut table = vec![None; parts.states.len() * input_classes * NodeType::COUNT * labels];
        let mut machine = Machine { parts, table: Vec::new(), input_classes, labels, validated: false };
        for (key, t) in &machine.parts.transitions {
            if let Some(i) = machine.slot(key) {
                table[i] = Some(*t);
            }
        }
        machine.table = table;
        machine
    }

    pub fn parts(&self) -> &MachineParts {
        &self.parts
    }

    pub fn into_parts(self) -> MachineParts {
        self.parts
    }

    fn input_index(&self, input: InputClass) -> Option<usize> {
        let n = self.parts.input_alphabet.len();
        match input {
            InputClass::Symbol(s) if (s.0 as usize) < n => Some(s.0 as usize),
            InputClass::Symbol(_) => None,
            InputClass::End => Some(n),
            InputClass::Lambda => Some(n + 1),
        }
    }

    fn slot(&self, key: &TransitionKey) -> Option<usize> {
        let state = key.state.0 as usize;
        let label = key.label.index();
        if state >= self.parts.states.len() || label >= self.labels {
            return None;
        }
        let input = self.input_index(key.input)?;
        Some(((state * self.input_classes + input) * NodeType::COUNT + key.node_type.index()) * self.labels + label)
    }

    pub fn get(&self, key: &TransitionKey) -> Option<Transition> {
        self.slot(key).and_then(|i| self.table[i])
    }

    /// The transition applicable with `head` under the input (the next
    /// symbol or the endmarker; `None` once everything is read). A symbol
    /// transition is preferred; λ is consulted only for machines that are
    /// not real-time. Returns what was consumed alongside the transition.
    pub fn lookup(
        &self,
        state: State,
        head: Option<InputClass>,
        node_type: NodeType,
        label: Label,
    ) -> Option<(InputClass, Transition)> {
        let mut key = TransitionKey { state, input: InputClass::Lambda, node_type, label };
        if let Some(head) = head {
            key.input = head;
            if let Some(t) = self.get(&key) {
                debug_assert!(
                    !self.validated || self.parts.real_time || {
                        key.input = InputClass::Lambda;
                        self.get(&key).is_none()
                    },
                    "validated machine with a λ/symbol conflict"
                );
                return Some((head, t));
            }
        }
        if self.parts.real_time {
            return None;
        }
        key.input = InputClass::Lambda;
        self.get(&key).map(|t| (InputClass::Lambda, t))
    }

    pub fn states(&self) -> &[String] {
        &self.parts.states
    }

    pub fn state_count(&self) -> usize {
        self.parts.states.len()
    }

    pub fn state_name(&self, state: State) -> &str {
        self.parts.states.get(state.0 as usize).map_or("?", String::as_str)
    }

    pub fn state(&self, name: &str) -> Option<State> {
        self.parts.states.iter().position(|s| s == name).map(|i| State(i as u32))
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.parts.input_alphabet
    }

    pub fn tree_alphabet(&self) -> &Alphabet {
        &self.parts.tree_alphabet
    }

    pub fn transitions(&self) -> &BTreeMap<TransitionKey, Transition> {
        &self.parts.transitions
    }

    pub fn start(&self) -> State {
        self.parts.start
    }

    pub fn accepting(&self) -> &BTreeSet<State> {
        &self.parts.accepting
    }

    pub fn is_accepting(&self, state: State) -> bool {
        self.parts.accepting.contains(&state)
    }

    pub fn real_time(&self) -> bool {
        self.parts.real_time
    }

    pub fn non_erasing(&self) -> bool {
        self.parts.non_erasing
    }

    pub fn initial_storage(&self) -> Option<&InitialStorage> {
        self.parts.initial_storage.as_ref()
    }

    pub fn tree_symbol_name(&self, sym: TreeSymbol) -> &str {
        self.parts.tree_alphabet.name(Symbol(sym.0))
    }

    pub fn label_name(&self, label: Label) -> &str {
        match label {
            Label::Bottom => "ROOT",
            Label::Symbol(s) => self.tree_symbol_name(s),
        }
    }

    pub fn input_name(&self, input: InputClass) -> &str {
        match input {
            InputClass::Symbol(s) => self.parts.input_alphabet.name(s),
            InputClass::Lambda => "lambda",
            InputClass::End => "END",
        }
    }

    pub fn action_name(&self, action: Action) -> String {
        match action {
            Action::Move(Direction::Up) => "up".into(),
            Action::Move(Direction::Stay) => "stay".into(),
            Action::Move(Direction::DownLeft) => "down-l".into(),
            Action::Move(Direction::DownRight) => "down-r".into(),
            Action::Pop => "pop".into(),
            Action::Push(sym, side) => format!("push {} {}", self.tree_symbol_name(sym), side.letter()),
        }
    }

    pub fn describe_key(&self, key: &TransitionKey) -> String {
        format!(
            "{} {} {} {}",
            self.state_name(key.state),
            self.input_name(key.input),
            key.node_type,
            self.label_name(key.label)
        )
    }

    /// Checks the machine and marks it validated, or returns every violation.
    pub fn validated(mut self) -> Result<Machine, InvalidMachine> {
        let violations = validate(&self);
        if violations.is_empty() {
            self.validated = true;
            Ok(self)
        } else {
            Err(InvalidMachine { violations: violations.iter().map(|v| v.describe(&self)).collect() })
        }
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Same machine started from `state` with the given storage.
    pub fn with_initial(&self, state: State, storage: InitialStorage) -> Machine {
        let mut parts = self.parts.clone();
        parts.start = state;
        parts.initial_storage = Some(storage);
        Machine { parts, table: self.table.clone(), validated: false, ..*self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid machine: {}", violations.join("; "))]
pub struct InvalidMachine {
    pub violations: Vec<String>,
}

/// One problem reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Both a λ transition and symbol transitions exist for the same
    /// state, node type and label.
    DeterminismConflict {
        state: State,
        node_type: NodeType,
        label: Label,
        inputs: Vec<InputClass>,
    },
    RealTimeViolation {
        key: TransitionKey,
    },
    NonErasingViolation {
        key: TransitionKey,
    },
    UnknownState {
        key: Option<TransitionKey>,
        state: State,
    },
    UnknownInputSymbol {
        key: TransitionKey,
    },
    UnknownTreeSymbol {
        key: TransitionKey,
        symbol: TreeSymbol,
    },
    BadInitialStorage(String),
}

impl Violation {
    /// Transition keys the violation is about.
    pub fn keys(&self) -> Vec<TransitionKey> {
        match self {
            Violation::DeterminismConflict { state, node_type, label, inputs } => inputs
                .iter()
                .map(|&input| TransitionKey { state: *state, input, node_type: *node_type, label: *label })
                .collect(),
            Violation::RealTimeViolation { key }
            | Violation::NonErasingViolation { key }
            | Violation::UnknownInputSymbol { key }
            | Violation::UnknownTreeSymbol { key, .. } => vec![*key],
            Violation::UnknownState { key, .. } => key.iter().copied().collect(),
            Violation::BadInitialStorage(_) => Vec::new(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Violation::DeterminismConflict { .. } => "determinism conflict",
            Violation::RealTimeViolation { .. } => "real-time violation",
            Violation::NonErasingViolation { .. } => "non-erasing violation",
            Violation::UnknownState { .. } => "unknown state",
            Violation::UnknownInputSymbol { .. } => "unknown input symbol",
            Violation::UnknownTreeSymbol { .. } => "unknown tree symbol",
            Violation::BadInitialStorage(_) => "bad initial storage",
        }
    }

    pub fn describe(&self, m: &Machine) -> String {
        match self {
            Violation::DeterminismConflict { state, node_type, label, inputs } => format!(
                "determinism conflict: state {} at {} {} has a lambda transition and transitions on {}",
                m.state_name(*state),
                node_type,
                m.label_name(*label),
                inputs
                    .iter()
                    .filter(|i| **i != InputClass::Lambda)
                    .map(|i| m.input_name(*i))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Violation::RealTimeViolation { key } => {
                format!("real-time violation: lambda transition {}", m.describe_key(key))
            }
            Violation::NonErasingViolation { key } => {
                format!("non-erasing violation: pop in {}", m.describe_key(key))
            }
            Violation::UnknownState { key: Some(key), state } => {
                format!("unknown state #{} in transition {}", state.0, m.describe_key(key))
            }
            Violation::UnknownState { key: None, state } => format!("unknown state #{} as start state", state.0),
            Violation::UnknownInputSymbol { key } => format!("unknown input symbol in {}", m.describe_key(key)),
            Violation::UnknownTreeSymbol { key, symbol } => {
                format!("unknown tree symbol #{} in {}", symbol.0, m.describe_key(key))
            }
            Violation::BadInitialStorage(msg) => format!("bad initial storage: {msg}"),
        }
    }
}

/// Reports every structural problem of `m`; an empty list means valid.
pub fn validate(m: &Machine) -> Vec<Violation> {
    let p = &m.parts;
    let n_states = p.states.len() as u32;
    let tree_ok = |s: TreeSymbol| (s.0 as usize) < p.tree_alphabet.len();
    let mut out = Vec::new();

    if p.start.0 >= n_states {
        out.push(Violation::UnknownState { key: None, state: p.start });
    }
    if let Some(storage) = &p.initial_storage {
        if let Err(e) = storage.tree.check_invariants() {
            out.push(Violation::BadInitialStorage(e.to_string()));
        }
        if storage.tree.find(&storage.pointer).is_none() {
            out.push(Violation::BadInitialStorage(format!("pointer {} is not a node", storage.pointer)));
        }
    }

    let mut groups: BTreeMap<(State, NodeType, Label), Vec<InputClass>> = BTreeMap::new();
    for (key, t) in &p.transitions {
        for state in [key.state, t.target] {
            if state.0 >= n_states {
                out.push(Violation::UnknownState { key: Some(*key), state });
            }
        }
        if let InputClass::Symbol(s) = key.input {
            if !p.input_alphabet.contains(s) {
                out.push(Violation::UnknownInputSymbol { key: *key });
            }
        }
        if let Label::Symbol(s) = key.label {
            if !tree_ok(s) {
                out.push(Violation::UnknownTreeSymbol { key: *key, symbol: s });
            }
        }
        match t.action {
            Action::Push(s, _) if !tree_ok(s) => out.push(Violation::UnknownTreeSymbol { key: *key, symbol: s }),
            Action::Pop if p.non_erasing => out.push(Violation::NonErasingViolation { key: *key }),
            _ => {}
        }
        if key.input == InputClass::Lambda && p.real_time {
            out.push(Violation::RealTimeViolation { key: *key });
        }
        groups.entry((key.state, key.node_type, key.label)).or_default().push(key.input);
    }
    for ((state, node_type, label), inputs) in groups {
        if inputs.len() > 1 && inputs.contains(&InputClass::Lambda) {
            out.push(Violation::DeterminismConflict { state, node_type, label, inputs });
        }
    }
    out
}

/// A node-type pattern with optional wildcards per component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodePattern {
    pub ancestry: Option<Ancestry>,
    pub has_left: Option<bool>,
    pub has_right: Option<bool>,
}

impl NodePattern {
    pub fn matches(&self, t: NodeType) -> bool {
        self.ancestry.is_none_or(|a| a == t.ancestry)
            && self.has_left.is_none_or(|l| l == t.has_left)
            && self.has_right.is_none_or(|r| r == t.has_right)
    }

    fn concrete_fields(&self) -> usize {
        [self.ancestry.is_some(), self.has_left.is_some(), self.has_right.is_some()].iter().filter(|b| **b).count()
    }
}

impl fmt::Display for NodePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: Option<bool>| match b {
            None => '*',
            Some(true) => '+',
            Some(false) => '-',
        };
        write!(f, "({},{},{})", self.ancestry.map_or('*', Ancestry::symbol), flag(self.has_left), flag(self.has_right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelPattern {
    Any,
    Root,
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    Move(Direction),
    Pop,
    Push(String, Side),
}

/// A transition rule in source form: names instead of indices, wildcards
/// allowed in the node type and label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub state: String,
    /// A symbol name, `lambda` or `END`.
    pub input: String,
    pub node: NodePattern,
    pub label: LabelPattern,
    pub target: String,
    pub action: ActionSpec,
}

impl Rule {
    /// Number of concrete components among node type and label; more
    /// concrete rules override less concrete ones where they overlap.
    pub fn specificity(&self) -> usize {
        self.node.concrete_fields() + usize::from(self.label != LabelPattern::Any)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildErrorKind {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown input symbol `{0}`")]
    UnknownInputSymbol(String),
    #[error("unknown tree symbol `{0}`")]
    UnknownTreeSymbol(String),
    #[error("conflicts with the rule from {other} for {key} (same specificity, different targets)")]
    SpecificityConflict { other: usize, key: String },
    #[error("pattern matches no possible node (the root is exactly the node labeled ROOT)")]
    EmptyPattern,
    #[error("no start state given")]
    MissingStart,
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("{0}")]
    Storage(String),
}

/// A build failure, tagged with the origin (rule index or source line)
/// that caused it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", origin.map(|o| format!("at {o}: ")).unwrap_or_default())]
pub struct BuildError {
    pub origin: Option<usize>,
    pub kind: BuildErrorKind,
}

/// Name-based machine builder. Rules may use wildcards; they are expanded
/// to concrete keys when [`MachineBuilder::build`] runs.
#[derive(Debug, Clone)]
pub struct MachineBuilder {
    input_alphabet: Alphabet,
    tree_alphabet: Alphabet,
    states: Vec<String>,
    state_index: HashMap<String, State>,
    declared_states: bool,
    start: Option<String>,
    accepting: Vec<(String, usize)>,
    real_time: bool,
    non_erasing: bool,
    initial_storage: Option<InitialStorage>,
    rules: Vec<(usize, Rule)>,
}

impl MachineBuilder {
    pub fn new(input_alphabet: Alphabet, tree_alphabet: Alphabet) -> Self {
        MachineBuilder {
            input_alphabet,
            tree_alphabet,
            states: Vec::new(),
            state_index: HashMap::new(),
            declared_states: false,
            start: None,
            accepting: Vec::new(),
            real_time: false,
            non_erasing: false,
            initial_storage: None,
            rules: Vec::new(),
        }
    }

    /// Shorthand for builders over hard-coded alphabets.
    pub fn with_alphabets(input: &[&str], tree: &[&str]) -> Self {
        Self::new(
            Alphabet::new(input.iter().copied()).expect("valid input alphabet"),
            Alphabet::new(tree.iter().copied()).expect("valid tree alphabet"),
        )
    }

    /// Fixes the state set; later references to other names are errors.
    pub fn declare_states<I, S>(&mut self, names: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for n in names {
            self.intern(n.into());
        }
        self.declared_states = true;
        self
    }

    fn intern(&mut self, name: String) -> State {
        if let Some(s) = self.state_index.get(&name) {
            return *s;
        }
        let s = State(self.states.len() as u32);
        self.state_index.insert(name.clone(), s);
        self.states.push(name);
        s
    }

    fn resolve_state(&mut self, name: &str, origin: Option<usize>) -> Result<State, BuildError> {
        match self.state_index.get(name) {
            Some(s) => Ok(*s),
            None if !self.declared_states => Ok(self.intern(name.to_string())),
            None => Err(BuildError { origin, kind: BuildErrorKind::UnknownState(name.to_string()) }),
        }
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        self.start = Some(name.to_string());
        self
    }

    pub fn accept(&mut self, name: &str) -> &mut Self {
        self.accept_at(name, 0)
    }

    pub fn accept_at(&mut self, name: &str, origin: usize) -> &mut Self {
        self.accepting.push((name.to_string(), origin));
        self
    }

    pub fn real_time(&mut self, yes: bool) -> &mut Self {
        self.real_time = yes;
        self
    }

    pub fn non_erasing(&mut self, yes: bool) -> &mut Self {
        self.non_erasing = yes;
        self
    }

    pub fn initial_storage(&mut self, storage: InitialStorage) -> &mut Self {
        self.initial_storage = Some(storage);
        self
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input_alphabet
    }

    pub fn tree_alphabet(&self) -> &Alphabet {
        &self.tree_alphabet
    }

    /// Adds a rule written in machine-file syntax without the leading
    /// `trans`, e.g. `q_l a (*,+,*) * -> q_l down-l`. Panics on syntax
    /// errors; meant for hard-coded constructions.
    pub fn rule(&mut self, text: &str) -> &mut Self {
        let rule = crate::format::parse_rule(text).unwrap_or_else(|e| panic!("bad rule `{text}`: {e}"));
        let origin = self.rules.len();
        self.add_rule(origin, rule)
    }

    pub fn add_rule(&mut self, origin: usize, rule: Rule) -> &mut Self {
        self.rules.push((origin, rule));
        self
    }

    pub fn build(self) -> Result<Machine, BuildError> {
        self.build_with_origins().map(|(m, _)| m)
    }

    /// Builds the machine and reports, for every concrete key, the origin
    /// of the rule that produced it.
    pub fn build_with_origins(mut self) -> Result<(Machine, BTreeMap<TransitionKey, usize>), BuildError> {
        let start_name = self.start.clone().ok_or(BuildError { origin: None, kind: BuildErrorKind::MissingStart })?;
        let start = self.resolve_state(&start_name, None)?;
        let mut accepting = BTreeSet::new();
        for (name, origin) in self.accepting.clone() {
            accepting.insert(self.resolve_state(&name, Some(origin))?);
        }

        // (specificity, origin, transition) of the winning rule per key.
        let mut chosen: BTreeMap<TransitionKey, (usize, usize, Transition)> = BTreeMap::new();
        let rules = std::mem::take(&mut self.rules);
        for (origin, rule) in &rules {
            let origin = *origin;
            let err = |kind| BuildError { origin: Some(origin), kind };
            let state = self.resolve_state(&rule.state, Some(origin))?;
            let target = self.resolve_state(&rule.target, Some(origin))?;
            let input = match rule.input.as_str() {
                "lambda" | "λ" => InputClass::Lambda,
                "END" | "⋗" => InputClass::End,
                name => InputClass::Symbol(
                    self.input_alphabet
                        .get(name)
                        .ok_or_else(|| err(BuildErrorKind::UnknownInputSymbol(name.to_string())))?,
                ),
            };
            let label_filter: Option<Label> = match &rule.label {
                LabelPattern::Any => None,
                LabelPattern::Root => Some(Label::Bottom),
                LabelPattern::Named(n) => Some(Label::Symbol(self.tree_symbol(n).map_err(err)?)),
            };
            let action = match &rule.action {
                ActionSpec::Move(d) => Action::Move(*d),
                ActionSpec::Pop => Action::Pop,
                ActionSpec::Push(n, side) => Action::Push(self.tree_symbol(n).map_err(err)?, *side),
            };
            let transition = Transition { target, action };
            let specificity = rule.specificity();
            let labels: Vec<Label> = std::iter::once(Label::Bottom)
                .chain(self.tree_alphabet.symbols().map(|s| Label::Symbol(TreeSymbol(s.0))))
                .filter(|l| label_filter.is_none_or(|f| f == *l))
                .collect();
            let mut expanded = 0;
            for node_type in NodeType::all().filter(|t| rule.node.matches(*t)) {
                for &label in &labels {
                    // ⊥ labels exactly the root.
                    if (node_type.ancestry == Ancestry::Root) != (label == Label::Bottom) {
                        continue;
                    }
                    expanded += 1;
                    let key = TransitionKey { state, input, node_type, label };
                    match chosen.get(&key) {
                        Some(&(spec, _, _)) if spec > specificity => {}
                        Some(&(spec, other, t)) if spec == specificity && t != transition => {
                            let partial = Machine::from_parts(self.parts_for_description());
                            return Err(err(BuildErrorKind::SpecificityConflict {
                                other,
                                key: partial.describe_key(&key),
                            }));
                        }
                        _ => {
                            chosen.insert(key, (specificity, origin, transition));
                        }
                    }
                }
            }
            if expanded == 0 {
                return Err(err(BuildErrorKind::EmptyPattern));
            }
        }

        let origins = chosen.iter().map(|(k, (_, o, _))| (*k, *o)).collect();
        let mut parts = self.parts_for_description();
        parts.start = start;
        parts.accepting = accepting;
        parts.transitions = chosen.into_iter().map(|(k, (_, _, t))| (k, t)).collect();
        Ok((Machine::from_parts(parts), origins))
    }

    fn tree_symbol(&self, name: &str) -> Result<TreeSymbol, BuildErrorKind> {
        self.tree_alphabet
            .get(name)
            .map(|s| TreeSymbol(s.0))
            .ok_or_else(|| BuildErrorKind::UnknownTreeSymbol(name.to_string()))
    }

    fn parts_for_description(&self) -> MachineParts {
        MachineParts {
            states: self.states.clone(),
            input_alphabet: self.input_alphabet.clone(),
            tree_alphabet: self.tree_alphabet.clone(),
            transitions: BTreeMap::new(),
            start: State(0),
            accepting: BTreeSet::new(),
            real_time: self.real_time,
            non_erasing: self.non_erasing,
            initial_storage: self.initial_storage.clone(),
        }
    }
}
