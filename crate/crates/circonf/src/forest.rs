//! Rooted ordered trees, labeled trees, and the tree of a configuration.
//!
//! Trees are recursive values: a vertex is its ordered sequence of children.
//! Two canonical codes drive everything: the ordered code (balanced
//! parentheses, order-preserving) decides equality of ordered trees, and the
//! AHU-style unordered code (children codes sorted as raw byte strings before
//! concatenation) decides isomorphism.

use crate::geometry::{immediate_parent, LabeledConfiguration};
use thiserror::Error;

/// A finite rooted ordered tree. The root is implicit; a leaf has no children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    pub children: Vec<RootedTree>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("label error: {0}")]
    Label(String),
    #[error("trees have different sizes")]
    SizeMismatch,
    #[error("no vertex at path {0:?}")]
    NoSuchVertex(Vec<usize>),
}

impl RootedTree {
    pub fn leaf() -> Self {
        RootedTree { children: Vec::new() }
    }

    pub fn node(children: Vec<RootedTree>) -> Self {
        RootedTree { children }
    }

    /// A root with `n` leaf children.
    pub fn star(n: usize) -> Self {
        RootedTree::node(vec![RootedTree::leaf(); n])
    }

    /// Number of vertices including the root.
    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(RootedTree::vertex_count).sum::<usize>()
    }

    /// The subtree rooted at the vertex addressed by a path of child indices.
    pub fn subtree(&self, path: &[usize]) -> Result<&RootedTree, ForestError> {
        let mut cur = self;
        for &i in path {
            cur = cur
                .children
                .get(i)
                .ok_or_else(|| ForestError::NoSuchVertex(path.to_vec()))?;
        }
        Ok(cur)
    }

    /// Balanced-parenthesis encoding preserving child order; equal codes
    /// characterize equal ordered trees.
    pub fn ordered_code(&self) -> String {
        let mut out = String::new();
        self.write_ordered(&mut out);
        out
    }

    fn write_ordered(&self, out: &mut String) {
        out.push('(');
        for child in &self.children {
            child.write_ordered(out);
        }
        out.push(')');
    }

    /// AHU canonical code: at each vertex the children's codes are sorted
    /// lexicographically as byte strings and concatenated inside parentheses.
    /// Equal codes characterize isomorphic rooted trees.
    pub fn canonical_code(&self) -> String {
        let mut codes: Vec<String> =
            self.children.iter().map(RootedTree::canonical_code).collect();
        codes.sort();
        let mut out = String::with_capacity(2 + codes.iter().map(String::len).sum::<usize>());
        out.push('(');
        for c in &codes {
            out.push_str(c);
        }
        out.push(')');
        out
    }

    /// The canonically ordered representative of this tree's isomorphism
    /// class: children sorted by canonical code at every vertex. The sort is
    /// stable, so ties keep their original relative order.
    pub fn canonical_form(&self) -> RootedTree {
        let mut children: Vec<RootedTree> =
            self.children.iter().map(RootedTree::canonical_form).collect();
        children.sort_by_key(|c| c.canonical_code());
        RootedTree::node(children)
    }

    /// Keeps the root's child order but canonicalizes each child subtree,
    /// so same-type siblings become equal as ordered trees at every vertex.
    pub fn type_aligned(&self) -> RootedTree {
        RootedTree::node(self.children.iter().map(RootedTree::canonical_form).collect())
    }

    /// `true` iff at every vertex, children of the same type already have
    /// equal ordered codes. Group operations on braided automorphisms
    /// require this; [`RootedTree::type_aligned`] produces such a tree.
    pub fn is_type_aligned(&self) -> bool {
        let mut seen: Vec<(String, String)> = Vec::new();
        for child in &self.children {
            let canon = child.canonical_code();
            let ordered = child.ordered_code();
            if let Some((_, o)) = seen.iter().find(|(c, _)| *c == canon) {
                if *o != ordered {
                    return false;
                }
            } else {
                seen.push((canon, ordered));
            }
        }
        self.children.iter().all(RootedTree::is_type_aligned)
    }

    /// Paths of all vertices in depth-first order, root first.
    pub fn vertex_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(path) = stack.pop() {
            let node = self.subtree(&path).expect("path generated from tree");
            for i in (0..node.children.len()).rev() {
                let mut p = path.clone();
                p.push(i);
                stack.push(p);
            }
            out.push(path);
        }
        out
    }
}

/// `true` iff the trees are isomorphic as rooted trees (child order ignored).
pub fn trees_isomorphic(t: &RootedTree, u: &RootedTree) -> bool {
    t.canonical_code() == u.canonical_code()
}

/// Groups the children of a vertex by type: two child indices share a block
/// exactly when their subtrees are isomorphic.
pub fn type_partition(t: &RootedTree, path: &[usize]) -> Result<TypePartition, ForestError> {
    let v = t.subtree(path)?;
    let codes: Vec<String> = v.children.iter().map(RootedTree::canonical_code).collect();
    Ok(TypePartition::group_by(&codes))
}

/// A partition of strand positions `{1..m}`, stored as the block id of each
/// 0-based position. Block ids are assigned by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    block_of: Vec<usize>,
    num_blocks: usize,
}

impl TypePartition {
    /// One block containing everything.
    pub fn single_block(m: usize) -> Self {
        TypePartition { block_of: vec![0; m], num_blocks: usize::from(m > 0) }
    }

    /// Every position in its own block.
    pub fn singletons(m: usize) -> Self {
        TypePartition { block_of: (0..m).collect(), num_blocks: m }
    }

    /// Partition induced by equality of the given keys.
    pub fn group_by<K: PartialEq>(keys: &[K]) -> Self {
        let mut reps: Vec<&K> = Vec::new();
        let mut block_of = Vec::with_capacity(keys.len());
        for k in keys {
            match reps.iter().position(|r| **r == *k) {
                Some(b) => block_of.push(b),
                None => {
                    reps.push(k);
                    block_of.push(reps.len() - 1);
                }
            }
        }
        TypePartition { block_of, num_blocks: reps.len() }
    }

    /// Builds from explicit blocks of 1-based positions covering `1..=m`.
    pub fn from_blocks(blocks: &[Vec<usize>], m: usize) -> Result<Self, ForestError> {
        let mut block_of = vec![usize::MAX; m];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ForestError::Label("empty partition block".into()));
            }
            for &pos in block {
                if pos == 0 || pos > m || block_of[pos - 1] != usize::MAX {
                    return Err(ForestError::Label(format!(
                        "position {pos} missing from 1..={m} or repeated"
                    )));
                }
                block_of[pos - 1] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(ForestError::Label("partition does not cover 1..=m".into()));
        }
        // renumber by first occurrence so equal partitions compare equal
        Ok(TypePartition::group_by(&block_of))
    }

    pub fn m(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// Block id of a 0-based position.
    pub fn block_id(&self, pos: usize) -> usize {
        self.block_of[pos]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn is_single_block(&self) -> bool {
        self.num_blocks <= 1
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks == self.m()
    }

    /// Blocks as sorted lists of 1-based positions, ordered by first element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (pos, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(pos + 1);
        }
        blocks
    }
}

impl std::fmt::Display for TypePartition {
    /// Renders like `{1,2}|{3}`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks = self.blocks();
        for (i, block) in blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str("{")?;
            for (j, pos) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{pos}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// A non-root vertex of a labeled tree: its label and ordered children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledNode {
    pub label: usize,
    pub children: Vec<LabeledNode>,
}

/// A rooted ordered tree whose non-root vertices carry the labels `1..=n`
/// (in no particular relation to the child order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledRootedTree {
    pub children: Vec<LabeledNode>,
}

impl LabeledNode {
    pub fn leaf(label: usize) -> Self {
        LabeledNode { label, children: Vec::new() }
    }

    fn underlying(&self) -> RootedTree {
        RootedTree::node(self.children.iter().map(LabeledNode::underlying).collect())
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        out.push(self.label);
        for c in &self.children {
            c.collect_labels(out);
        }
    }
}

impl LabeledRootedTree {
    /// The tree with no non-root vertices.
    pub fn trivial() -> Self {
        LabeledRootedTree { children: Vec::new() }
    }

    pub fn new(children: Vec<LabeledNode>) -> Result<Self, ForestError> {
        let t = LabeledRootedTree { children };
        t.check_labels()?;
        Ok(t)
    }

    /// A star whose leaves are labeled `1..=n` left to right.
    pub fn star(n: usize) -> Self {
        LabeledRootedTree { children: (1..=n).map(LabeledNode::leaf).collect() }
    }

    fn check_labels(&self) -> Result<(), ForestError> {
        let labels = self.all_labels();
        let n = labels.len();
        let mut seen = vec![false; n];
        for &l in &labels {
            if l == 0 || l > n {
                return Err(ForestError::Label(format!(
                    "label {l} outside 1..={n}"
                )));
            }
            if seen[l - 1] {
                return Err(ForestError::Label(format!("duplicate label {l}")));
            }
            seen[l - 1] = true;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.all_labels().len()
    }

    fn all_labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.children {
            c.collect_labels(&mut out);
        }
        out
    }

    pub fn underlying(&self) -> RootedTree {
        RootedTree::node(self.children.iter().map(LabeledNode::underlying).collect())
    }

    /// Parent label of each label (index `label − 1`); `None` means the root.
    pub fn parent_map(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.n()];
        fn walk(node: &LabeledNode, parent: Option<usize>, map: &mut Vec<Option<usize>>) {
            map[node.label - 1] = parent;
            for c in &node.children {
                walk(c, Some(node.label), map);
            }
        }
        for c in &self.children {
            walk(c, None, &mut map);
        }
        map
    }

    /// Child labels of the root, in order.
    pub fn root_children(&self) -> Vec<usize> {
        self.children.iter().map(|c| c.label).collect()
    }

    /// Child labels of the vertex labeled `label`, in order.
    pub fn children_of(&self, label: usize) -> Option<Vec<usize>> {
        self.find(label).map(|n| n.children.iter().map(|c| c.label).collect())
    }

    fn find(&self, label: usize) -> Option<&LabeledNode> {
        fn walk(node: &LabeledNode, label: usize) -> Option<&LabeledNode> {
            if node.label == label {
                return Some(node);
            }
            node.children.iter().find_map(|c| walk(c, label))
        }
        self.children.iter().find_map(|c| walk(c, label))
    }

    /// The labeled node at a path of child indices.
    pub fn node_at(&self, path: &[usize]) -> Result<&LabeledNode, ForestError> {
        let (&first, rest) = path
            .split_first()
            .ok_or_else(|| ForestError::NoSuchVertex(path.to_vec()))?;
        let mut cur = self
            .children
            .get(first)
            .ok_or_else(|| ForestError::NoSuchVertex(path.to_vec()))?;
        for &i in rest {
            cur = cur
                .children
                .get(i)
                .ok_or_else(|| ForestError::NoSuchVertex(path.to_vec()))?;
        }
        Ok(cur)
    }

    /// Applies a relabeling `old ↦ perm[old − 1]` to all vertices.
    pub fn relabel(&self, perm: &[usize]) -> LabeledRootedTree {
        fn walk(node: &LabeledNode, perm: &[usize]) -> LabeledNode {
            LabeledNode {
                label: perm[node.label - 1],
                children: node.children.iter().map(|c| walk(c, perm)).collect(),
            }
        }
        LabeledRootedTree {
            children: self.children.iter().map(|c| walk(c, perm)).collect(),
        }
    }
}

/// Parses a balanced-parenthesis shape code such as `(()())` back into an
/// ordered tree (the inverse of [`RootedTree::ordered_code`]).
pub fn parse_shape(text: &str) -> Result<RootedTree, ForestError> {
    fn node(bytes: &[u8], pos: &mut usize) -> Result<RootedTree, ForestError> {
        if bytes.get(*pos) != Some(&b'(') {
            return Err(ForestError::Parse { pos: *pos, msg: "expected '('".into() });
        }
        *pos += 1;
        let mut children = Vec::new();
        while bytes.get(*pos) != Some(&b')') {
            children.push(node(bytes, pos)?);
        }
        *pos += 1;
        Ok(RootedTree::node(children))
    }
    let bytes = text.trim().as_bytes();
    let mut pos = 0;
    let tree = node(bytes, &mut pos)?;
    if pos != bytes.len() {
        return Err(ForestError::Parse { pos, msg: "trailing input".into() });
    }
    Ok(tree)
}

/// Labels an unlabeled tree `1..=n` in depth-first order. Used wherever a
/// deterministic labeling of a shape is needed.
pub fn label_depth_first(t: &RootedTree) -> LabeledRootedTree {
    fn walk(node: &RootedTree, next: &mut usize) -> LabeledNode {
        let label = *next;
        *next += 1;
        LabeledNode {
            label,
            children: node.children.iter().map(|c| walk(c, next)).collect(),
        }
    }
    let mut next = 1;
    LabeledRootedTree {
        children: t.children.iter().map(|c| walk(c, &mut next)).collect(),
    }
}

/// `true` iff the labeled trees are isomorphic: for the root and for every
/// label, the set of child labels agrees between the two trees.
pub fn labeled_trees_isomorphic(
    t: &LabeledRootedTree,
    u: &LabeledRootedTree,
) -> Result<bool, ForestError> {
    if t.n() != u.n() {
        return Err(ForestError::SizeMismatch);
    }
    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    if sorted(t.root_children()) != sorted(u.root_children()) {
        return Ok(false);
    }
    for label in 1..=t.n() {
        let a = t.children_of(label).map(&sorted);
        let b = u.children_of(label).map(&sorted);
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the labeled tree of a configuration: `i` is a child of `j` exactly
/// when circle `j` is the immediate parent of circle `i`, and the children of
/// each vertex are ordered lexicographically by the centers of their circles.
pub fn tree_of_configuration(config: &LabeledConfiguration) -> LabeledRootedTree {
    let n = config.n();
    let mut children_of: Vec<Vec<usize>> = vec![Vec::new(); n + 1]; // slot 0 = root
    for i in config.labels() {
        match immediate_parent(config, i) {
            None => children_of[0].push(i),
            Some(p) => children_of[p].push(i),
        }
    }
    for kids in &mut children_of {
        kids.sort_by(|&a, &b| {
            let ca = config.circle(a);
            let cb = config.circle(b);
            (&ca.cx, &ca.cy).cmp(&(&cb.cx, &cb.cy))
        });
        // siblings are disjoint and un-nested, so their centers differ
        for w in kids.windows(2) {
            let (a, b) = (config.circle(w[0]), config.circle(w[1]));
            assert!(
                (&a.cx, &a.cy) != (&b.cx, &b.cy),
                "sibling circles with equal centers"
            );
        }
    }
    fn build(label: usize, children_of: &[Vec<usize>]) -> LabeledNode {
        LabeledNode {
            label,
            children: children_of[label]
                .iter()
                .map(|&c| build(c, children_of))
                .collect(),
        }
    }
    LabeledRootedTree {
        children: children_of[0].iter().map(|&c| build(c, &children_of)).collect(),
    }
}

/// Formats a labeled tree in the grammar
/// `TREE := "(" ITEMS? ")"; ITEMS := NODE ("," NODE)*; NODE := label TREE?`.
pub fn format_tree(t: &LabeledRootedTree) -> String {
    fn write_items(children: &[LabeledNode], out: &mut String) {
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&c.label.to_string());
            if !c.children.is_empty() {
                out.push('(');
                write_items(&c.children, out);
                out.push(')');
            }
        }
    }
    let mut out = String::from("(");
    write_items(&t.children, &mut out);
    out.push(')');
    out
}

/// Parses the tree grammar above; labels must form a bijection onto `1..=n`.
pub fn parse_tree(text: &str) -> Result<LabeledRootedTree, ForestError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let children = parse_group(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(ForestError::Parse { pos, msg: "trailing input".into() });
    }
    LabeledRootedTree::new(children)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_group(bytes: &[u8], pos: &mut usize) -> Result<Vec<LabeledNode>, ForestError> {
    skip_ws(bytes, pos);
    if bytes.get(*pos) != Some(&b'(') {
        return Err(ForestError::Parse { pos: *pos, msg: "expected '('".into() });
    }
    *pos += 1;
    let mut children = Vec::new();
    skip_ws(bytes, pos);
    if bytes.get(*pos) == Some(&b')') {
        *pos += 1;
        return Ok(children);
    }
    loop {
        children.push(parse_node(bytes, pos)?);
        skip_ws(bytes, pos);
        match bytes.get(*pos) {
            Some(&b',') => {
                *pos += 1;
            }
            Some(&b')') => {
                *pos += 1;
                return Ok(children);
            }
            _ => {
                return Err(ForestError::Parse {
                    pos: *pos,
                    msg: "expected ',' or ')'".into(),
                })
            }
        }
    }
}

fn parse_node(bytes: &[u8], pos: &mut usize) -> Result<LabeledNode, ForestError> {
    skip_ws(bytes, pos);
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return Err(ForestError::Parse { pos: *pos, msg: "expected a label".into() });
    }
    let label: usize = std::str::from_utf8(&bytes[start..*pos])
        .expect("ascii digits")
        .parse()
        .map_err(|_| ForestError::Parse { pos: start, msg: "label out of range".into() })?;
    skip_ws(bytes, pos);
    let children = if bytes.get(*pos) == Some(&b'(') {
        parse_group(bytes, pos)?
    } else {
        Vec::new()
    };
    Ok(LabeledNode { label, children })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::seven_circle_config;

    fn t(code: &str) -> LabeledRootedTree {
        parse_tree(code).unwrap()
    }

    #[test]
    fn tree_of_seven_circle_figure() {
        let tree = tree_of_configuration(&seven_circle_config());
        assert_eq!(
            tree.parent_map(),
            vec![None, Some(5), Some(2), Some(2), None, Some(7), Some(5)]
        );
        assert_eq!(tree.root_children(), vec![1, 5]);
        assert_eq!(tree.children_of(5), Some(vec![2, 7]));
        // equal cx forces the cy tie-break: −3/10 before 3/10
        assert_eq!(tree.children_of(2), Some(vec![4, 3]));
        assert_eq!(tree.children_of(7), Some(vec![6]));
        assert_eq!(format_tree(&tree), "(1,5(2(4,3),7(6)))");
    }

    #[test]
    fn tree_of_empty_and_concentric() {
        let empty = crate::geometry::LabeledConfiguration::new(vec![]).unwrap();
        assert_eq!(tree_of_configuration(&empty), LabeledRootedTree::trivial());

        use crate::geometry::Circle;
        use crate::rational::int;
        let two = crate::geometry::LabeledConfiguration::new(vec![
            Circle::new(int(0), int(0), int(1)),
            Circle::new(int(0), int(0), int(2)),
        ])
        .unwrap();
        assert_eq!(format_tree(&tree_of_configuration(&two)), "(2(1))");
    }

    #[test]
    fn ordered_codes() {
        assert_eq!(RootedTree::star(2).ordered_code(), "(()())");
        assert_eq!(RootedTree::leaf().ordered_code(), "()");
        assert_eq!(t("(4(1,3),2)").underlying().ordered_code(), "((()())())");
    }

    #[test]
    fn canonical_code_erases_order() {
        fn reverse_all(t: &RootedTree) -> RootedTree {
            RootedTree::node(t.children.iter().rev().map(reverse_all).collect())
        }
        let samples = [
            t("(4(1,3),2)").underlying(),
            t("(1,5(2(4,3),7(6)))").underlying(),
            RootedTree::star(4),
        ];
        for tree in &samples {
            let rev = reverse_all(tree);
            assert_eq!(tree.canonical_code(), rev.canonical_code());
            if tree != &rev {
                assert_ne!(tree.ordered_code(), rev.ordered_code());
            }
        }
        // chain of 3 vs star of 3 differ
        let chain = t("(1(2(3)))").underlying();
        let star = RootedTree::star(3);
        assert_ne!(chain.canonical_code(), star.canonical_code());
    }

    #[test]
    fn eleven_vertex_figure_trees_are_isomorphic() {
        // the two order-shuffled ten-plus-root vertex trees from the figure
        let a = t("(1,2(3,4(5,6,7),8(9,10)))").underlying();
        let b = t("(2(8(10,9),4(7,6,5),3),1)").underlying();
        assert!(trees_isomorphic(&a, &b));
        assert_ne!(a.ordered_code(), b.ordered_code());
    }

    /// Brute-force isomorphism: try all recursive child matchings.
    fn iso_brute(a: &RootedTree, b: &RootedTree) -> bool {
        if a.children.len() != b.children.len() {
            return false;
        }
        fn matching(a: &RootedTree, b: &RootedTree, used: &mut Vec<bool>, i: usize) -> bool {
            if i == a.children.len() {
                return true;
            }
            for j in 0..b.children.len() {
                if !used[j] && iso_brute(&a.children[i], &b.children[j]) {
                    used[j] = true;
                    if matching(a, b, used, i + 1) {
                        used[j] = false;
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        matching(a, b, &mut vec![false; b.children.len()], 0)
    }

    /// All rooted ordered trees on `n` vertices (including the root).
    fn all_trees(n: usize) -> Vec<RootedTree> {
        assert!(n >= 1);
        if n == 1 {
            return vec![RootedTree::leaf()];
        }
        let mut out = Vec::new();
        // split n−1 vertices among an ordered forest: first child gets k, rest recurse
        for k in 1..n {
            for first in all_trees(k) {
                for rest in all_trees(n - k) {
                    let mut children = vec![first.clone()];
                    children.extend(rest.children.clone());
                    out.push(RootedTree::node(children));
                }
            }
        }
        out
    }

    #[test]
    fn isomorphism_agrees_with_brute_force() {
        for n in 1..=5 {
            let trees = all_trees(n);
            for a in &trees {
                for b in &trees {
                    assert_eq!(trees_isomorphic(a, b), iso_brute(a, b), "{a:?} vs {b:?}");
                }
            }
        }
        // spot-check a larger size across a diagonal sample
        let trees = all_trees(7);
        for (i, a) in trees.iter().enumerate().step_by(9) {
            for (j, b) in trees.iter().enumerate().step_by(13) {
                let _ = (i, j);
                assert_eq!(trees_isomorphic(a, b), iso_brute(a, b));
            }
        }
    }

    #[test]
    fn labeled_isomorphism_figure_trees() {
        // the three six-vertex labeled trees from the figure
        let t1 = t("(1,2(3(5,6),4))");
        let t2 = t("(2(3(6,5),4),1)");
        let t3 = t("(3(4(1,2),6),5)");
        assert_eq!(labeled_trees_isomorphic(&t1, &t2), Ok(true));
        assert_eq!(labeled_trees_isomorphic(&t1, &t3), Ok(false));
        assert_eq!(labeled_trees_isomorphic(&t3, &t3), Ok(true));
        assert_ne!(t1, t2);
        assert!(trees_isomorphic(&t1.underlying(), &t2.underlying()));
        assert!(trees_isomorphic(&t2.underlying(), &t3.underlying()));
        assert_eq!(t2.underlying(), t3.underlying());
        assert_ne!(t1.underlying(), t2.underlying());
        assert!(labeled_trees_isomorphic(&t1, &LabeledRootedTree::star(6))
            .unwrap()
            .eq(&false));
    }

    #[test]
    fn labeled_iso_implies_unlabeled_iso() {
        let t1 = t("(1,2(3(5,6),4))");
        let t2 = t("(2(3(6,5),4),1)");
        assert_eq!(labeled_trees_isomorphic(&t1, &t2), Ok(true));
        assert!(trees_isomorphic(&t1.underlying(), &t2.underlying()));
        assert_eq!(
            labeled_trees_isomorphic(&t1, &LabeledRootedTree::star(3)),
            Err(ForestError::SizeMismatch)
        );
    }

    fn big_tree() -> RootedTree {
        t("(1(2(3),4(5),6),7(8(9),10(11),12))").underlying()
    }

    #[test]
    fn type_partition_examples() {
        let tree = big_tree();
        let pi = type_partition(&tree, &[0]).unwrap();
        assert_eq!(pi.blocks(), vec![vec![1, 2], vec![3]]);
        assert_eq!(pi.to_string(), "{1,2}|{3}");

        let root = type_partition(&tree, &[]).unwrap();
        assert_eq!(root.blocks(), vec![vec![1, 2]]);
        assert!(root.is_single_block());

        let star = type_partition(&RootedTree::star(4), &[]).unwrap();
        assert!(star.is_single_block());
        assert_eq!(star.m(), 4);
    }

    #[test]
    fn type_alignment() {
        let tree = big_tree();
        assert!(tree.is_type_aligned());
        // same type, different ordered code: leaf+chain vs chain+leaf
        let skew = t("(1,2(3),4(5),6)").underlying(); // children: (), (()), (()), ()
        let mixed = RootedTree::node(vec![
            t("(1,2(3))").underlying(),
            t("(1(2),3)").underlying(),
        ]);
        assert!(!mixed.is_type_aligned());
        let aligned = mixed.type_aligned();
        assert!(aligned.is_type_aligned());
        assert!(trees_isomorphic(&mixed, &aligned));
        assert!(skew.is_type_aligned());
        assert!(RootedTree::leaf().is_type_aligned());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let fig = t("(4(1,3),2)");
        assert_eq!(fig.root_children(), vec![4, 2]);
        assert_eq!(fig.children_of(4), Some(vec![1, 3]));
        assert_eq!(format_tree(&fig), "(4(1,3),2)");

        assert_eq!(format_tree(&t("()")), "()");
        assert_eq!(t("()"), LabeledRootedTree::trivial());

        for text in ["()", "(1)", "(4(1,3),2)", "(1,5(2(4,3),7(6)))"] {
            assert_eq!(format_tree(&parse_tree(text).unwrap()), text);
        }

        assert!(matches!(parse_tree("(1,1)"), Err(ForestError::Label(_))));
        assert!(matches!(parse_tree("(1,3)"), Err(ForestError::Label(_))));
        assert!(matches!(
            parse_tree("(1,"),
            Err(ForestError::Parse { .. })
        ));
        assert!(matches!(
            parse_tree("(1))"),
            Err(ForestError::Parse { pos: 3, .. })
        ));
    }

    #[test]
    fn relabeling_commutes_with_tree_extraction() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let config = seven_circle_config();
        let tree = tree_of_configuration(&config);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (1..=config.n()).collect();
            perm.shuffle(&mut rng);
            // permute circle labels by σ: circle i moves to position σ(i)
            let mut circles = vec![config.circles[0].clone(); config.n()];
            for i in config.labels() {
                circles[perm[i - 1] - 1] = config.circle(i).clone();
            }
            let relabeled = crate::geometry::LabeledConfiguration::new(circles).unwrap();
            let got = tree_of_configuration(&relabeled);
            assert_eq!(got, tree.relabel(&perm));
            assert_eq!(got.underlying(), tree.underlying());
        }
    }

    #[test]
    fn partition_constructors_validate() {
        let pi = TypePartition::from_blocks(&[vec![1, 2], vec![3]], 3).unwrap();
        assert_eq!(pi.to_string(), "{1,2}|{3}");
        assert!(TypePartition::from_blocks(&[vec![1], vec![1]], 2).is_err());
        assert!(TypePartition::from_blocks(&[vec![1]], 2).is_err());
        assert!(TypePartition::singletons(3).is_discrete());
        assert_eq!(TypePartition::single_block(0).m(), 0);
    }
}
