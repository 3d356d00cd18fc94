//! Γ-trees: the binary tree storage of a tree-walking-storage automaton.
//!
//! Nodes are addressed by paths over `{l, r}`; the empty path is the root,
//! which always carries the bottom label `⊥`. The tree is kept in an arena
//! with parent and child links so that navigation, push and pop at the
//! pointer are all constant time.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Index into the tree alphabet Γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeSymbol(pub u16);

/// Label of a node: `⊥` at the root, a symbol of Γ everywhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Bottom,
    Symbol(TreeSymbol),
}

impl Label {
    pub(crate) fn index(self) -> usize {
        match self {
            Label::Bottom => 0,
            Label::Symbol(s) => s.0 as usize + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn slot(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'l',
            Side::Right => 'r',
        }
    }
}

/// A node address: a word over `{l, r}`. The empty path is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreePath(Vec<Side>);

impl TreePath {
    pub fn root() -> Self {
        TreePath(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[Side] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn last(&self) -> Option<Side> {
        self.0.last().copied()
    }

    pub fn child(&self, side: Side) -> TreePath {
        let mut steps = self.0.clone();
        steps.push(side);
        TreePath(steps)
    }

    pub fn parent(&self) -> Option<TreePath> {
        if self.0.is_empty() {
            None
        } else {
            Some(TreePath(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub(crate) fn push(&mut self, side: Side) {
        self.0.push(side);
    }

    pub(crate) fn pop(&mut self) -> Option<Side> {
        self.0.pop()
    }
}

impl From<Vec<Side>> for TreePath {
    fn from(steps: Vec<Side>) -> Self {
        TreePath(steps)
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        for side in &self.0 {
            write!(f, "{}", side.letter())?;
        }
        Ok(())
    }
}

impl FromStr for TreePath {
    type Err = TreeError;

    /// Accepts `λ`, `root` or `-` for the root, otherwise a word over `l`/`r`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if matches!(s, "λ" | "root" | "-" | "") {
            return Ok(TreePath::root());
        }
        s.chars()
            .map(|c| match c {
                'l' => Ok(Side::Left),
                'r' => Ok(Side::Right),
                _ => Err(TreeError::BadPath(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TreePath)
    }
}

/// First component of a node type: root, left descendant or right descendant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ancestry {
    Root,
    Left,
    Right,
}

impl Ancestry {
    pub const ALL: [Ancestry; 3] = [Ancestry::Root, Ancestry::Left, Ancestry::Right];

    pub fn symbol(self) -> char {
        match self {
            Ancestry::Root => '-',
            Ancestry::Left => 'l',
            Ancestry::Right => 'r',
        }
    }
}

/// The type of a node as seen by the transition function: where it hangs
/// and which children it has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeType {
    pub ancestry: Ancestry,
    pub has_left: bool,
    pub has_right: bool,
}

impl NodeType {
    pub const COUNT: usize = 12;

    pub fn new(ancestry: Ancestry, has_left: bool, has_right: bool) -> Self {
        NodeType { ancestry, has_left, has_right }
    }

    /// All twelve node types in a fixed order.
    pub fn all() -> impl Iterator<Item = NodeType> {
        Ancestry::ALL.into_iter().flat_map(|a| {
            [(false, false), (false, true), (true, false), (true, true)]
                .into_iter()
                .map(move |(l, r)| NodeType::new(a, l, r))
        })
    }

    pub(crate) fn index(self) -> usize {
        let a = match self.ancestry {
            Ancestry::Root => 0,
            Ancestry::Left => 1,
            Ancestry::Right => 2,
        };
        a * 4 + (self.has_left as usize) * 2 + self.has_right as usize
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { '+' } else { '-' };
        write!(f, "({},{},{})", self.ancestry.symbol(), mark(self.has_left), mark(self.has_right))
    }
}

/// Handle to a node inside one particular [`GammaTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);
}

#[derive(Debug, Clone)]
struct Node {
    label: Label,
    parent: Option<NodeId>,
    side: Option<Side>,
    children: [Option<NodeId>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("path {0} is not a node of the tree")]
    PathAbsent(TreePath),
    #[error("malformed tree path `{0}`")]
    BadPath(String),
    #[error("domain is not prefix-closed: {0} has no parent node")]
    NotPrefixClosed(TreePath),
    #[error("root must be labeled ⊥ and only the root: violated at {0}")]
    BottomLabel(TreePath),
    #[error("tree links are inconsistent at {0}")]
    Corrupt(TreePath),
}

/// Why an action cannot be applied at the current node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("cannot move up from the root")]
    UpFromRoot,
    #[error("no {0:?} descendant to move to")]
    MissingChild(Side),
    #[error("pop requires a childless non-root node")]
    PopNonLeaf,
    #[error("cannot pop the root")]
    PopRoot,
    #[error("{0:?} descendant already exists")]
    ChildExists(Side),
}

/// A finite, prefix-closed binary tree whose root is labeled `⊥`.
#[derive(Debug, Clone)]
pub struct GammaTree {
    nodes: Vec<Option<Node>>,
    free: Vec<u32>,
    len: usize,
}

impl Default for GammaTree {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaTree {
    /// The initial tree `T0`: a single root labeled `⊥`.
    pub fn new() -> Self {
        GammaTree {
            nodes: vec![Some(Node { label: Label::Bottom, parent: None, side: None, children: [None, None] })],
            free: Vec::new(),
            len: 1,
        }
    }

    /// Builds a tree from an explicit domain, checking prefix closure and
    /// the root-label rule.
    pub fn from_domain(domain: &BTreeMap<TreePath, Label>) -> Result<Self, TreeError> {
        let mut tree = GammaTree::new();
        match domain.get(&TreePath::root()) {
            Some(Label::Bottom) => {}
            _ => return Err(TreeError::BottomLabel(TreePath::root())),
        }
        // BTreeMap order visits every prefix before its extensions.
        for (path, label) in domain.iter().filter(|(p, _)| !p.is_root()) {
            let sym = match label {
                Label::Symbol(s) => *s,
                Label::Bottom => return Err(TreeError::BottomLabel(path.clone())),
            };
            let parent_path = path.parent().expect("non-root path");
            let parent = tree.find(&parent_path).ok_or_else(|| TreeError::NotPrefixClosed(path.clone()))?;
            let side = path.last().expect("non-root path");
            tree.push(parent, side, sym).map_err(|_| TreeError::Corrupt(path.clone()))?;
        }
        Ok(tree)
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    /// Number of nodes, root included.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn node(&self, id: NodeId) -> &Node {
        self.nodes[id.0 as usize].as_ref().expect("stale node id")
    }

    fn node_mut(&mut self, id: NodeId) -> &mut Node {
        self.nodes[id.0 as usize].as_mut().expect("stale node id")
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.nodes.get(id.0 as usize).is_some_and(|n| n.is_some())
    }

    pub fn label(&self, id: NodeId) -> Label {
        self.node(id).label
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.node(id).parent
    }

    pub fn child(&self, id: NodeId, side: Side) -> Option<NodeId> {
        self.node(id).children[side.slot()]
    }

    pub fn node_type(&self, id: NodeId) -> NodeType {
        let node = self.node(id);
        let ancestry = match node.side {
            None => Ancestry::Root,
            Some(Side::Left) => Ancestry::Left,
            Some(Side::Right) => Ancestry::Right,
        };
        NodeType::new(ancestry, node.children[0].is_some(), node.children[1].is_some())
    }

    /// Node type of the node at `path`.
    pub fn node_type_at(&self, path: &TreePath) -> Result<NodeType, TreeError> {
        self.find(path).map(|id| self.node_type(id)).ok_or_else(|| TreeError::PathAbsent(path.clone()))
    }

    pub fn find(&self, path: &TreePath) -> Option<NodeId> {
        path.steps().iter().try_fold(NodeId::ROOT, |id, &side| self.child(id, side))
    }

    pub fn path_of(&self, id: NodeId) -> TreePath {
        let mut steps = Vec::new();
        let mut cur = id;
        while let Some(side) = self.node(cur).side {
            steps.push(side);
            cur = self.node(cur).parent.expect("non-root node has a parent");
        }
        steps.reverse();
        TreePath(steps)
    }

    /// Appends a new leaf labeled `symbol` on `side` of `at`.
    pub fn push(&mut self, at: NodeId, side: Side, symbol: TreeSymbol) -> Result<NodeId, IllegalMove> {
        if self.child(at, side).is_some() {
            return Err(IllegalMove::ChildExists(side));
        }
        let node = Node { label: Label::Symbol(symbol), parent: Some(at), side: Some(side), children: [None, None] };
        let id = match self.free.pop() {
            Some(slot) => {
                self.nodes[slot as usize] = Some(node);
                NodeId(slot)
            }
            None => {
                self.nodes.push(Some(node));
                NodeId((self.nodes.len() - 1) as u32)
            }
        };
        self.node_mut(at).children[side.slot()] = Some(id);
        self.len += 1;
        debug_assert!(self.links_ok(id));
        Ok(id)
    }

    /// Removes the leaf `at` and returns its former parent.
    pub fn pop(&mut self, at: NodeId) -> Result<NodeId, IllegalMove> {
        let node = self.node(at);
        let (parent, side) = match (node.parent, node.side) {
            (Some(p), Some(s)) => (p, s),
            _ => return Err(IllegalMove::PopRoot),
        };
        if node.children.iter().any(Option::is_some) {
            return Err(IllegalMove::PopNonLeaf);
        }
        self.node_mut(parent).children[side.slot()] = None;
        self.nodes[at.0 as usize] = None;
        self.free.push(at.0);
        self.len -= 1;
        debug_assert!(self.links_ok(parent));
        Ok(parent)
    }

    /// Local link consistency around one node.
    fn links_ok(&self, id: NodeId) -> bool {
        let node = self.node(id);
        let up_ok = match (node.parent, node.side) {
            (None, None) => id == NodeId::ROOT && node.label == Label::Bottom,
            (Some(p), Some(s)) => {
                self.contains(p) && self.node(p).children[s.slot()] == Some(id) && node.label != Label::Bottom
            }
            _ => false,
        };
        up_ok
            && node.children.iter().enumerate().all(|(slot, c)| match c {
                None => true,
                Some(c) => {
                    self.contains(*c)
                        && self.node(*c).parent == Some(id)
                        && self.node(*c).side.map(Side::slot) == Some(slot)
                }
            })
    }

    /// Full structural check: every node reachable from the root, links
    /// consistent, `⊥` exactly at the root.
    pub fn check_invariants(&self) -> Result<(), TreeError> {
        let mut seen = 0;
        let mut stack = vec![NodeId::ROOT];
        while let Some(id) = stack.pop() {
            if !self.contains(id) || !self.links_ok(id) {
                return Err(TreeError::Corrupt(self.path_of(id)));
            }
            seen += 1;
            stack.extend(self.node(id).children.iter().flatten());
        }
        if seen != self.len || self.nodes.iter().filter(|n| n.is_some()).count() != self.len {
            return Err(TreeError::Corrupt(TreePath::root()));
        }
        Ok(())
    }

    /// The tree as a mapping from paths to labels.
    pub fn domain(&self) -> BTreeMap<TreePath, Label> {
        let mut out = BTreeMap::new();
        let mut stack = vec![(NodeId::ROOT, TreePath::root())];
        while let Some((id, path)) = stack.pop() {
            for side in [Side::Left, Side::Right] {
                if let Some(c) = self.child(id, side) {
                    stack.push((c, path.child(side)));
                }
            }
            out.insert(path, self.label(id));
        }
        out
    }

    /// Depth-first serialization `(label left right)` with `.` for an
    /// absent child. `label_name` renders non-root labels.
    pub fn snapshot(&self, label_name: &dyn Fn(TreeSymbol) -> String) -> String {
        let mut out = String::new();
        self.write_snapshot(Some(NodeId::ROOT), label_name, &mut out);
        out
    }

    fn write_snapshot(&self, id: Option<NodeId>, label_name: &dyn Fn(TreeSymbol) -> String, out: &mut String) {
        // Iterative to survive very deep spines.
        enum Item {
            Node(Option<NodeId>),
            Text(&'static str),
        }
        let mut stack = vec![Item::Node(id)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(t) => out.push_str(t),
                Item::Node(None) => out.push('.'),
                Item::Node(Some(id)) => {
                    out.push('(');
                    match self.label(id) {
                        Label::Bottom => out.push_str("ROOT"),
                        Label::Symbol(s) => out.push_str(&label_name(s)),
                    }
                    let node = self.node(id);
                    stack.push(Item::Text(")"));
                    stack.push(Item::Node(node.children[1]));
                    stack.push(Item::Text(" "));
                    stack.push(Item::Node(node.children[0]));
                    stack.push(Item::Text(" "));
                }
            }
        }
    }
}

impl PartialEq for GammaTree {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.domain() == other.domain()
    }
}

impl Eq for GammaTree {}
