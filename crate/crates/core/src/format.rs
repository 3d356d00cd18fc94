//! The line-oriented machine file format.
//!
//! ```text
//! # a comment
//! states: q r              # optional; fixes the state set
//! alphabet: a b
//! tree-symbols: dot
//! start: q
//! accept: r
//! realtime: true
//! nonerasing: true
//! initial-tree: (ROOT (dot . .) .)   # optional
//! initial-pointer: l                 # optional, defaults to the root
//! trans q a (*,+,*) * -> q down-l
//! trans q END (-,*,*) ROOT -> r stay
//! ```
//!
//! In `trans` lines the node type components and the label may be `*`.
//! Wildcards expand to every concrete value; a rule with more concrete
//! components wins where it overlaps a less concrete one, and two
//! overlapping rules of equal specificity must agree.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::alphabet::{Alphabet, Symbol};
use crate::machine::{
    validate, ActionSpec, BuildErrorKind, Direction, InitialStorage, LabelPattern, Machine, MachineBuilder,
    NodePattern, Rule, TransitionKey, Violation,
};
use crate::tree::{Ancestry, GammaTree, Label, Side, TreePath, TreeSymbol};

/// One problem found in a machine file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    /// Stable identifier such as `determinism-conflict`.
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.code, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
pub struct MachineFileError {
    pub diagnostics: Vec<Diagnostic>,
}

impl MachineFileError {
    fn single(line: Option<usize>, code: &'static str, message: impl Into<String>) -> Self {
        MachineFileError { diagnostics: vec![Diagnostic { line, code, message: message.into() }] }
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct RuleSyntaxError(String);

fn syntax(msg: impl Into<String>) -> RuleSyntaxError {
    RuleSyntaxError(msg.into())
}

/// Parses the body of a `trans` line:
/// `<state> <in> (<anc>,<hl>,<hr>) <label> -> <state> <action>`.
pub fn parse_rule(text: &str) -> Result<Rule, RuleSyntaxError> {
    let open = text.find('(').ok_or_else(|| syntax("missing `(` of the node type"))?;
    let close = text[open..].find(')').map(|i| open + i).ok_or_else(|| syntax("missing `)` of the node type"))?;
    let head: Vec<&str> = text[..open].split_whitespace().collect();
    let [state, input] = head[..] else {
        return Err(syntax("expected `<state> <input>` before the node type"));
    };
    let node = parse_node_pattern(&text[open + 1..close])?;
    let tail: Vec<&str> = text[close + 1..].split_whitespace().collect();
    if tail.len() < 4 || tail[1] != "->" {
        return Err(syntax("expected `<label> -> <state> <action>` after the node type"));
    }
    let label = match tail[0] {
        "*" => LabelPattern::Any,
        "ROOT" => LabelPattern::Root,
        name => LabelPattern::Named(name.to_string()),
    };
    let action = match &tail[3..] {
        ["up"] => ActionSpec::Move(Direction::Up),
        ["stay"] => ActionSpec::Move(Direction::Stay),
        ["down-l"] => ActionSpec::Move(Direction::DownLeft),
        ["down-r"] => ActionSpec::Move(Direction::DownRight),
        ["pop"] => ActionSpec::Pop,
        ["push", sym, side] => ActionSpec::Push(sym.to_string(), parse_side(side)?),
        other => return Err(syntax(format!("unknown action `{}`", other.join(" ")))),
    };
    Ok(Rule { state: state.to_string(), input: input.to_string(), node, label, target: tail[2].to_string(), action })
}

fn parse_side(s: &str) -> Result<Side, RuleSyntaxError> {
    match s {
        "l" => Ok(Side::Left),
        "r" => Ok(Side::Right),
        _ => Err(syntax(format!("push side must be `l` or `r`, found `{s}`"))),
    }
}

fn parse_node_pattern(inner: &str) -> Result<NodePattern, RuleSyntaxError> {
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let [anc, hl, hr] = parts[..] else {
        return Err(syntax("node type must have three components"));
    };
    let ancestry = match anc {
        "*" => None,
        "-" => Some(Ancestry::Root),
        "l" => Some(Ancestry::Left),
        "r" => Some(Ancestry::Right),
        _ => return Err(syntax(format!("bad ancestry `{anc}`"))),
    };
    let flag = |s: &str| match s {
        "*" => Ok(None),
        "+" => Ok(Some(true)),
        "-" => Ok(Some(false)),
        _ => Err(syntax(format!("bad child flag `{s}`"))),
    };
    Ok(NodePattern { ancestry, has_left: flag(hl)?, has_right: flag(hr)? })
}

#[derive(Default)]
struct Header {
    states: Option<(usize, Vec<String>)>,
    alphabet: Option<(usize, Vec<String>)>,
    tree_symbols: Option<(usize, Vec<String>)>,
    start: Option<(usize, String)>,
    accept: Vec<(usize, String)>,
    realtime: Option<bool>,
    nonerasing: Option<bool>,
    initial_tree: Option<(usize, String)>,
    initial_pointer: Option<(usize, String)>,
}

/// A parsed file before validation: the machine and the source line of
/// every concrete transition.
#[derive(Debug, Clone)]
pub struct ParsedMachine {
    pub machine: Machine,
    pub origins: BTreeMap<TransitionKey, usize>,
}

impl ParsedMachine {
    /// Validator findings, each tied to the lines of the offending rules.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        validate(&self.machine)
            .into_iter()
            .flat_map(|v| {
                let code = violation_code(&v);
                let message = v.describe(&self.machine);
                let mut lines: Vec<usize> = v.keys().iter().filter_map(|k| self.origins.get(k).copied()).collect();
                lines.sort_unstable();
                lines.dedup();
                if lines.is_empty() {
                    vec![Diagnostic { line: None, code, message }]
                } else {
                    lines.into_iter().map(|l| Diagnostic { line: Some(l), code, message: message.clone() }).collect()
                }
            })
            .collect()
    }
}

fn violation_code(v: &Violation) -> &'static str {
    match v {
        Violation::DeterminismConflict { .. } => "determinism-conflict",
        Violation::RealTimeViolation { .. } => "real-time-violation",
        Violation::NonErasingViolation { .. } => "non-erasing-violation",
        Violation::UnknownState { .. } => "unknown-state",
        Violation::UnknownInputSymbol { .. } | Violation::UnknownTreeSymbol { .. } => "unknown-symbol",
        Violation::BadInitialStorage(_) => "bad-initial-storage",
    }
}

fn build_code(kind: &BuildErrorKind) -> &'static str {
    match kind {
        BuildErrorKind::UnknownState(_) => "unknown-state",
        BuildErrorKind::UnknownInputSymbol(_) | BuildErrorKind::UnknownTreeSymbol(_) => "unknown-symbol",
        BuildErrorKind::SpecificityConflict { .. } => "specificity-conflict",
        BuildErrorKind::EmptyPattern => "empty-pattern",
        BuildErrorKind::MissingStart => "missing-directive",
        BuildErrorKind::Alphabet(_) => "bad-alphabet",
        BuildErrorKind::Storage(_) => "bad-initial-storage",
    }
}

/// Parses a machine file without running the validator.
pub fn parse_machine_unvalidated(text: &str) -> Result<ParsedMachine, MachineFileError> {
    let mut header = Header::default();
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| MachineFileError::single(Some(line_no), "syntax", msg);
        if let Some(rest) = line.strip_prefix("trans ") {
            rules.push((line_no, parse_rule(rest).map_err(|e| err(e.0))?));
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| err(format!("unrecognized line `{line}`")))?;
        let value = value.trim();
        let words = || value.split_whitespace().map(String::from).collect::<Vec<_>>();
        let boolean = || match value {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(err(format!("expected true or false, found `{value}`"))),
        };
        match key.trim() {
            "states" => header.states = Some((line_no, words())),
            "alphabet" => header.alphabet = Some((line_no, words())),
            "tree-symbols" => header.tree_symbols = Some((line_no, words())),
            "start" => header.start = Some((line_no, value.to_string())),
            "accept" => header.accept.extend(words().into_iter().map(|w| (line_no, w))),
            "realtime" => header.realtime = Some(boolean()?),
            "nonerasing" => header.nonerasing = Some(boolean()?),
            "initial-tree" => header.initial_tree = Some((line_no, value.to_string())),
            "initial-pointer" => header.initial_pointer = Some((line_no, value.to_string())),
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let missing = |what: &str| MachineFileError::single(None, "missing-directive", format!("missing `{what}:` line"));
    let alphabet_of = |entry: Option<(usize, Vec<String>)>, what: &str| -> Result<Alphabet, MachineFileError> {
        let (line, names) = entry.ok_or_else(|| missing(what))?;
        Alphabet::new(names).map_err(|e| MachineFileError::single(Some(line), "bad-alphabet", e.to_string()))
    };
    let input = alphabet_of(header.alphabet, "alphabet")?;
    let tree = alphabet_of(header.tree_symbols, "tree-symbols")?;
    let (start_line, start) = header.start.ok_or_else(|| missing("start"))?;

    let mut builder = MachineBuilder::new(input, tree.clone());
    if let Some((_, states)) = header.states {
        builder.declare_states(states);
    }
    builder.start(&start).real_time(header.realtime.unwrap_or(false)).non_erasing(header.nonerasing.unwrap_or(false));
    for (line, name) in &header.accept {
        builder.accept_at(name, *line);
    }
    match (header.initial_tree, header.initial_pointer) {
        (None, None) => {}
        (None, Some((line, _))) => {
            return Err(MachineFileError::single(
                Some(line),
                "bad-initial-storage",
                "initial-pointer without initial-tree",
            ))
        }
        (Some((line, snapshot)), pointer) => {
            let storage_err = |msg: String| MachineFileError::single(Some(line), "bad-initial-storage", msg);
            let tree = parse_snapshot(&snapshot, &tree).map_err(storage_err)?;
            let pointer = match pointer {
                None => TreePath::root(),
                Some((_, p)) => p.parse().map_err(|e: crate::tree::TreeError| storage_err(e.to_string()))?,
            };
            if tree.find(&pointer).is_none() {
                return Err(storage_err(format!("initial pointer {pointer} is not a node")));
            }
            builder.initial_storage(InitialStorage { tree, pointer });
        }
    }
    for (line, rule) in rules {
        builder.add_rule(line, rule);
    }
    let (machine, origins) = builder.build_with_origins().map_err(|e| {
        let line = e.origin.or(if matches!(e.kind, BuildErrorKind::UnknownState(_)) { Some(start_line) } else { None });
        let message = match &e.kind {
            BuildErrorKind::SpecificityConflict { other, key } => {
                format!("rule conflicts with line {other} on {key} (same specificity, different targets)")
            }
            kind => kind.to_string(),
        };
        MachineFileError::single(line, build_code(&e.kind), message)
    })?;
    Ok(ParsedMachine { machine, origins })
}

/// Parses and validates a machine file.
pub fn parse_machine(text: &str) -> Result<Machine, MachineFileError> {
    let parsed = parse_machine_unvalidated(text)?;
    let diagnostics = parsed.diagnostics();
    if !diagnostics.is_empty() {
        return Err(MachineFileError { diagnostics });
    }
    Ok(parsed.machine.validated().expect("no violations"))
}

/// Serializes a machine. Every transition is written out concretely, so
/// `parse_machine(&export_machine(m))` reproduces `m` exactly.
pub fn export_machine(m: &Machine) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", m.states().join(" "));
    let _ = writeln!(out, "alphabet: {}", m.input_alphabet());
    let _ = writeln!(out, "tree-symbols: {}", m.tree_alphabet());
    let _ = writeln!(out, "start: {}", m.state_name(m.start()));
    let accepting: Vec<&str> = m.accepting().iter().map(|s| m.state_name(*s)).collect();
    if !accepting.is_empty() {
        let _ = writeln!(out, "accept: {}", accepting.join(" "));
    }
    let _ = writeln!(out, "realtime: {}", m.real_time());
    let _ = writeln!(out, "nonerasing: {}", m.non_erasing());
    if let Some(init) = m.initial_storage() {
        let _ = writeln!(out, "initial-tree: {}", snapshot(m, &init.tree));
        let pointer = if init.pointer.is_root() { "root".to_string() } else { init.pointer.to_string() };
        let _ = writeln!(out, "initial-pointer: {pointer}");
    }
    for (key, t) in m.transitions() {
        let _ =
            writeln!(out, "trans {} -> {} {}", m.describe_key(key), m.state_name(t.target), m.action_name(t.action));
    }
    out
}

/// `(label left right)` serialization with `.` for absent children.
pub fn snapshot(m: &Machine, tree: &GammaTree) -> String {
    tree.snapshot(&|s| m.tree_symbol_name(s).to_string())
}

/// Inverse of [`snapshot`].
pub fn parse_snapshot(text: &str, tree_alphabet: &Alphabet) -> Result<GammaTree, String> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut domain = BTreeMap::new();
    let mut pos = 0;
    parse_subtree(&tokens, &mut pos, TreePath::root(), tree_alphabet, &mut domain)?;
    if pos != tokens.len() {
        return Err("trailing input after tree".into());
    }
    if domain.is_empty() {
        return Err("tree must have a root".into());
    }
    GammaTree::from_domain(&domain).map_err(|e| e.to_string())
}

fn parse_subtree(
    tokens: &[&str],
    pos: &mut usize,
    path: TreePath,
    alphabet: &Alphabet,
    domain: &mut BTreeMap<TreePath, Label>,
) -> Result<(), String> {
    let next = |pos: &mut usize| {
        let t = tokens.get(*pos).copied().ok_or_else(|| "unexpected end of tree".to_string());
        *pos += 1;
        t
    };
    match next(pos)? {
        "." => return Ok(()),
        "(" => {}
        t => return Err(format!("expected `(` or `.`, found `{t}`")),
    }
    let label = match next(pos)? {
        "ROOT" => Label::Bottom,
        name => Label::Symbol(TreeSymbol(alphabet.get(name).ok_or_else(|| format!("unknown tree symbol `{name}`"))?.0)),
    };
    domain.insert(path.clone(), label);
    parse_subtree(tokens, pos, path.child(Side::Left), alphabet, domain)?;
    parse_subtree(tokens, pos, path.child(Side::Right), alphabet, domain)?;
    match next(pos)? {
        ")" => Ok(()),
        t => Err(format!("expected `)`, found `{t}`")),
    }
}

/// Renders a word over the machine's input alphabet.
pub fn render_word(m: &Machine, word: &[Symbol]) -> String {
    m.input_alphabet().render_word(word)
}
