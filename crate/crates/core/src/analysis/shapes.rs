//! Shape predicates and reference trees.

use crate::tree::{GammaTree, NodeId, Side, TreeSymbol};

fn subtree(tree: &GammaTree, id: NodeId, side: Side) -> Option<NodeId> {
    tree.child(id, side)
}

fn complete_at(tree: &GammaTree, node: Option<NodeId>, level: u32) -> bool {
    match (node, level) {
        (None, 0) => true,
        (None, _) | (Some(_), 0) => false,
        (Some(n), l) => {
            complete_at(tree, subtree(tree, n, Side::Left), l - 1)
                && complete_at(tree, subtree(tree, n, Side::Right), l - 1)
        }
    }
}

fn fibonacci_at(tree: &GammaTree, node: Option<NodeId>, level: u32) -> bool {
    match (node, level) {
        (None, 0) => true,
        (None, _) | (Some(_), 0) => false,
        (Some(n), 1) => subtree(tree, n, Side::Left).is_none() && subtree(tree, n, Side::Right).is_none(),
        (Some(n), l) => {
            fibonacci_at(tree, subtree(tree, n, Side::Left), l - 1)
                && fibonacci_at(tree, subtree(tree, n, Side::Right), l - 2)
        }
    }
}

/// Complete binary tree of `level` levels (`2^level - 1` nodes). A tree
/// always has its root, so level 0 never matches.
pub fn is_complete_binary(tree: &GammaTree, level: u32) -> bool {
    complete_at(tree, Some(tree.root()), level)
}

/// Fibonacci tree: level 1 is a single node, level `l >= 2` has a left
/// subtree of level `l - 1` and a right subtree of level `l - 2`.
pub fn is_fibonacci_tree(tree: &GammaTree, level: u32) -> bool {
    fibonacci_at(tree, Some(tree.root()), level)
}

fn grow(
    tree: &mut GammaTree,
    at: NodeId,
    level: u32,
    right_level: impl Fn(u32) -> Option<u32> + Copy,
    label: TreeSymbol,
) {
    if level <= 1 {
        return;
    }
    let left = tree.push(at, Side::Left, label).expect("fresh node");
    grow(tree, left, level - 1, right_level, label);
    if let Some(r) = right_level(level).filter(|&r| r >= 1) {
        let right = tree.push(at, Side::Right, label).expect("fresh node");
        grow(tree, right, r, right_level, label);
    }
}

/// The complete binary tree of the given level (at least 1), non-root
/// nodes labeled `label`.
pub fn complete_binary_tree(level: u32, label: TreeSymbol) -> GammaTree {
    assert!(level >= 1);
    let mut t = GammaTree::new();
    let root = t.root();
    grow(&mut t, root, level, |l| Some(l - 1), label);
    t
}

/// The Fibonacci tree of the given level (at least 1).
pub fn fibonacci_tree(level: u32, label: TreeSymbol) -> GammaTree {
    assert!(level >= 1);
    let mut t = GammaTree::new();
    let root = t.root();
    grow(&mut t, root, level, |l| l.checked_sub(2), label);
    t
}
