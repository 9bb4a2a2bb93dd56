//! Explicit collision-free paths between configurations in one component.
//!
//! The strategy is staged and fully deterministic: inside each enclosing
//! region, every circle first shrinks about its center (contents riding
//! rigidly), the whole level compresses into a small blob, circles walk one
//! at a time through a staging row strictly below the live circles to their
//! reference positions, radii grow to their targets, and the construction
//! recurses into each circle. All keyframes are exact rationals, every
//! safety margin is verified by exact comparisons, and resting circles never
//! share a center x-coordinate with a sibling, which keeps crossing events
//! isolated and simple.

use crate::canonical::kappa_of_tree;
use crate::forest::{
    labeled_trees_isomorphic, tree_of_configuration, trees_isomorphic, LabeledNode,
    LabeledRootedTree, RootedTree,
};
use crate::geometry::{Circle, LabeledConfiguration};
use crate::motion::{descendant_labels, sibling_groups, Keyframe, MotionError, MotionPath};
use crate::rational::{int, rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlannerError {
    #[error("the configurations lie in different connected components")]
    DifferentComponent,
    #[error("the subtrees at slots {0} and {1} are not isomorphic")]
    TypeMismatch(usize, usize),
    #[error("the trees are not isomorphic")]
    NotIsomorphic,
    #[error("vertex {vertex:?} has no slot pair ({slot}, {next})", next = .slot + 1)]
    InvalidSlot { vertex: Vec<usize>, slot: usize },
    #[error("no vertex at path {0:?}")]
    NoSuchVertex(Vec<usize>),
    #[error("internal planner failure: {0}")]
    Internal(MotionError),
}

/// Accumulates keyframes at integer times, skipping no-op pushes.
struct Builder {
    frames: Vec<Keyframe>,
    current: Vec<Circle>,
}

impl Builder {
    fn new(start: &LabeledConfiguration) -> Builder {
        Builder {
            frames: vec![Keyframe { t: int(0), config: start.clone() }],
            current: start.circles.clone(),
        }
    }

    fn circle(&self, label: usize) -> &Circle {
        &self.current[label - 1]
    }

    /// Moves the listed circles to new positions in one linear segment.
    fn apply(&mut self, changes: Vec<(usize, Circle)>) {
        let mut next = self.current.clone();
        for (label, circle) in changes {
            next[label - 1] = circle;
        }
        if next != self.current {
            let t = &self.frames.last().expect("nonempty").t + int(1);
            self.frames
                .push(Keyframe { t, config: LabeledConfiguration::new_unchecked(next.clone()) });
            self.current = next;
        }
    }

    /// One segment moving circle `label` (and its contents, rigidly) by the
    /// affine map determined by the new circle.
    fn move_rigid(&mut self, label: usize, to: Circle, contents: &[usize]) {
        let from = self.circle(label).clone();
        let scale = &to.r / &from.r;
        let mut changes = Vec::with_capacity(1 + contents.len());
        for &l in contents {
            let c = self.circle(l);
            changes.push((
                l,
                Circle::new(
                    &to.cx + &scale * (&c.cx - &from.cx),
                    &to.cy + &scale * (&c.cy - &from.cy),
                    &scale * &c.r,
                ),
            ));
        }
        changes.push((label, to));
        self.apply(changes);
    }

    fn finish(self) -> MotionPath {
        MotionPath::new(self.frames).expect("builder times increase")
    }
}

/// A valid generic path from `config` exactly to the reference configuration
/// of its own labeled tree. Total on valid inputs.
pub fn plan_to_canonical(config: &LabeledConfiguration) -> MotionPath {
    let tree = tree_of_configuration(config);
    plan_to_kappa(config, &tree).expect("a configuration matches its own tree")
}

/// A valid generic path from `a` exactly to `b`, existing precisely when the
/// labeled trees are isomorphic; [`PlannerError::DifferentComponent`]
/// otherwise. Built as `a → κ_{T_a}`, a bridge `κ_{T_a} → κ_{T_b}`
/// reconciling the child orders, then the reverse of `b → κ_{T_b}`.
pub fn plan_between(
    a: &LabeledConfiguration,
    b: &LabeledConfiguration,
) -> Result<MotionPath, PlannerError> {
    let ta = tree_of_configuration(a);
    let tb = tree_of_configuration(b);
    if !labeled_trees_isomorphic(&ta, &tb).unwrap_or(false) {
        return Err(PlannerError::DifferentComponent);
    }
    let first = plan_to_kappa(a, &ta)?;
    let bridge = plan_to_kappa(&kappa_of_tree(&ta), &tb)?;
    let back = plan_to_kappa(b, &tb)?.reverse();
    first
        .concat(&bridge)
        .and_then(|p| p.concat(&back))
        .map_err(PlannerError::Internal)
}

/// Plans from `config` exactly to `κ_target`; the labeled trees must be
/// isomorphic (same parent relations, child orders free).
fn plan_to_kappa(
    config: &LabeledConfiguration,
    target: &LabeledRootedTree,
) -> Result<MotionPath, PlannerError> {
    let current = tree_of_configuration(config);
    if !labeled_trees_isomorphic(&current, target).unwrap_or(false) {
        return Err(PlannerError::DifferentComponent);
    }
    let kappa = kappa_of_tree(target);
    if *config == kappa {
        return Ok(MotionPath::constant(kappa));
    }
    let mut builder = Builder::new(config);
    unstack(&mut builder, target);
    // synthetic enclosing region around everything that will ever exist
    let mut bound = int(1);
    for c in config.circles.iter().chain(&kappa.circles) {
        let reach = c.cx.abs() + c.cy.abs() + &c.r;
        bound = bound.max(reach);
    }
    let region = Circle::new(int(0), int(0), int(8) * bound);
    let targets: HashMap<usize, Circle> =
        kappa.labels().map(|l| (l, kappa.circle(l).clone())).collect();
    arrange_level(&mut builder, &region, &target.children, &targets);
    debug_assert_eq!(builder.current, kappa.circles);
    Ok(builder.finish())
}

/// One global segment giving every circle a distinct tiny x-offset, so that
/// no two siblings rest at equal center x. Offsets are small enough (checked
/// exactly) to keep the configuration valid throughout and to leave every
/// already-distinct sibling order unchanged.
fn unstack(builder: &mut Builder, tree: &LabeledRootedTree) {
    let groups = sibling_groups(tree);
    let tied = groups.iter().any(|(_, members)| {
        members.iter().enumerate().any(|(i, &a)| {
            members[i + 1..].iter().any(|&b| builder.circle(a).cx == builder.circle(b).cx)
        })
    });
    if !tied {
        return;
    }
    let n = builder.current.len();
    let mut delta = rat(1, 2);
    while !offsets_fit(&builder.current, &delta) {
        delta /= int(2);
    }
    let mut step = delta / int(n as i64 + 1);
    'search: loop {
        for (_, members) in &groups {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let gap = &builder.circle(a).cx - &builder.circle(b).cx;
                    let drift = &step * int(a as i64 - b as i64);
                    // never land on a tie, and never cross an existing order
                    if gap == -&drift || (!gap.is_zero() && drift.abs() >= gap.abs()) {
                        step /= int(2);
                        continue 'search;
                    }
                }
            }
        }
        break;
    }
    let changes = (1..=n)
        .map(|l| {
            let c = builder.circle(l);
            (l, Circle::new(&c.cx + &step * int(l as i64), c.cy.clone(), c.r.clone()))
        })
        .collect();
    builder.apply(changes);
}

/// `true` when moving every circle by at most `delta` keeps all pairwise
/// disjointness branches strictly satisfied.
fn offsets_fit(circles: &[Circle], delta: &Rat) -> bool {
    let two_delta = int(2) * delta;
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            let (a, b) = (&circles[i], &circles[j]);
            let d2 = a.center_dist_sq(b);
            let sum = &a.r + &b.r;
            if &sum * &sum < d2 {
                let padded = sum + &two_delta;
                if &padded * &padded >= d2 {
                    return false;
                }
            } else {
                let diff = (&a.r - &b.r).abs();
                if diff <= two_delta {
                    return false;
                }
                let margin = diff - &two_delta;
                if d2 >= &margin * &margin {
                    return false;
                }
            }
        }
    }
    true
}

/// Arranges the member circles of one level onto their reference circles
/// inside `region`, contents riding rigidly, then recurses into each member.
fn arrange_level(
    builder: &mut Builder,
    region: &Circle,
    nodes: &[LabeledNode],
    targets: &HashMap<usize, Circle>,
) {
    let k = nodes.len();
    if k == 0 {
        return;
    }
    let members: Vec<usize> = nodes.iter().map(|n| n.label).collect();
    let contents: Vec<Vec<usize>> = nodes.iter().map(descendant_labels).collect();
    let in_place = members.iter().all(|&m| builder.circle(m) == &targets[&m]);
    if !in_place {
        let kr = int(k as i64);
        let blob_r = &region.r / (&kr * int(24));
        let eps = &region.r / (&kr * int(48));
        let y_transit = &region.cy - &region.r / (&kr * int(6));
        let y_staging = &region.cy - &region.r / (&kr * int(3));

        // compress the whole level into a small blob at the region center
        let mut reach = Rat::zero();
        for (idx, &m) in members.iter().enumerate() {
            for &l in std::iter::once(&m).chain(&contents[idx]) {
                let c = builder.circle(l);
                let span = (&c.cx - &region.cx).abs() + (&c.cy - &region.cy).abs() + &c.r;
                reach = reach.max(span);
            }
        }
        if reach > blob_r {
            let s = &blob_r / &reach;
            let mut changes = Vec::new();
            for (idx, &m) in members.iter().enumerate() {
                for &l in std::iter::once(&m).chain(&contents[idx]) {
                    let c = builder.circle(l);
                    changes.push((l, c.affine_about(&region.cx, &region.cy, &s)));
                }
            }
            builder.apply(changes);
        }

        // shrink every member to the working radius
        for (idx, &m) in members.iter().enumerate() {
            let c = builder.circle(m).clone();
            if c.r > eps {
                let to = Circle::new(c.cx.clone(), c.cy.clone(), eps.clone());
                builder.move_rigid(m, to, &contents[idx]);
            }
        }

        // staging spots: an evenly spaced row, nudged so that no spot shares
        // an x-coordinate with a resting sibling or a target
        let mut avoid: Vec<Rat> = members.iter().map(|&m| builder.circle(m).cx.clone()).collect();
        avoid.extend(members.iter().map(|&m| targets[&m].cx.clone()));
        let spots = staging_spots(region, k, &avoid);

        // walk members to the staging row, lowest first
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            let (ca, cb) = (builder.circle(members[a]), builder.circle(members[b]));
            (&ca.cy, &ca.cx).cmp(&(&cb.cy, &cb.cx))
        });
        for (q, &idx) in order.iter().enumerate() {
            let m = members[idx];
            let c = builder.circle(m).clone();
            let down = Circle::new(c.cx.clone(), y_transit.clone(), c.r.clone());
            builder.move_rigid(m, down, &contents[idx]);
            let across = Circle::new(spots[q].clone(), y_transit.clone(), c.r.clone());
            builder.move_rigid(m, across, &contents[idx]);
            let park = Circle::new(spots[q].clone(), y_staging.clone(), c.r.clone());
            builder.move_rigid(m, park, &contents[idx]);
        }

        // place members onto their targets in slot order, then grow
        for (idx, &m) in members.iter().enumerate() {
            let target = &targets[&m];
            let c = builder.circle(m).clone();
            let up = Circle::new(c.cx.clone(), y_transit.clone(), c.r.clone());
            builder.move_rigid(m, up, &contents[idx]);
            let across = Circle::new(target.cx.clone(), y_transit.clone(), c.r.clone());
            builder.move_rigid(m, across, &contents[idx]);
            let settle = Circle::new(target.cx.clone(), target.cy.clone(), c.r.clone());
            builder.move_rigid(m, settle, &contents[idx]);
        }
        for (idx, &m) in members.iter().enumerate() {
            let target = &targets[&m];
            if builder.circle(m) != target {
                builder.move_rigid(m, target.clone(), &contents[idx]);
            }
            debug_assert_eq!(builder.circle(m), target);
        }
    }
    for node in nodes {
        let region = targets[&node.label].clone();
        arrange_level(builder, &region, &node.children, targets);
    }
}

/// `k` x-positions in an evenly spaced row across the middle half of the
/// region, shifted by the largest power-of-two fraction of the spacing that
/// avoids every forbidden x-value exactly.
fn staging_spots(region: &Circle, k: usize, avoid: &[Rat]) -> Vec<Rat> {
    let step = &region.r / int(2 * (k as i64 + 1));
    let base: Vec<Rat> = (1..=k as i64)
        .map(|j| &region.cx - &region.r / int(4) + &step * int(j))
        .collect();
    let mut shift = step.clone() / int(2);
    loop {
        if base.iter().all(|x| avoid.iter().all(|v| &(x + &shift) != v)) {
            return base.iter().map(|x| x + &shift).collect();
        }
        shift /= int(2);
    }
}

/// A loop at `κ_T` exchanging the circles in slots `slot` and `slot + 1`
/// (1-based) under `vertex`, contents riding rigidly. The two subtrees must
/// be isomorphic. The exchange contributes exactly one crossing event at
/// `vertex`, positive by the sign convention; when the two subtrees differ
/// as ordered trees, deterministic content rearrangements inside the two
/// moved circles close the loop.
pub fn make_generator_loop(
    t: &LabeledRootedTree,
    vertex: &[usize],
    slot: usize,
) -> Result<MotionPath, PlannerError> {
    let children: &[LabeledNode] = if vertex.is_empty() {
        &t.children
    } else {
        &t.node_at(vertex).map_err(|_| PlannerError::NoSuchVertex(vertex.to_vec()))?.children
    };
    if slot == 0 || slot + 1 > children.len() {
        return Err(PlannerError::InvalidSlot { vertex: vertex.to_vec(), slot });
    }
    let left = &children[slot - 1];
    let right = &children[slot];
    let left_shape = shape_of(left);
    let right_shape = shape_of(right);
    if !trees_isomorphic(&left_shape, &right_shape) {
        return Err(PlannerError::TypeMismatch(slot, slot + 1));
    }
    let kappa = kappa_of_tree(t);
    let ca = kappa.circle(left.label).clone();
    let cb = kappa.circle(right.label).clone();
    let spread = &cb.cx - &ca.cx;
    let lift = &spread / int(2);
    let mid = (&ca.cx + &cb.cx) / int(2);
    let left_contents = descendant_labels(left);
    let right_contents = descendant_labels(right);

    let mut builder = Builder::new(&kappa);
    // simultaneous half-swap: the left circle dips under, the right goes over
    let move_pair = |builder: &mut Builder, la: Circle, lb: Circle| {
        let mut changes = Vec::new();
        for (label, to, contents) in
            [(left.label, la, &left_contents), (right.label, lb, &right_contents)]
        {
            let from = builder.circle(label).clone();
            for &l in contents {
                let c = builder.circle(l);
                changes.push((
                    l,
                    Circle::new(&to.cx + (&c.cx - &from.cx), &to.cy + (&c.cy - &from.cy), c.r.clone()),
                ));
            }
            changes.push((label, to));
        }
        builder.apply(changes);
    };
    move_pair(
        &mut builder,
        Circle::new(mid.clone(), &ca.cy - &lift, ca.r.clone()),
        Circle::new(mid.clone(), &cb.cy + &lift, cb.r.clone()),
    );
    move_pair(&mut builder, cb.clone(), ca.clone());

    if left_shape != right_shape {
        // rearrange the transported contents to the canonical contents of
        // their new slots, working inside each moved circle
        settle_contents(&mut builder, left, &cb, &right_shape);
        settle_contents(&mut builder, right, &ca, &left_shape);
    }
    Ok(builder.finish())
}

/// Rearranges the contents of `node`'s circle (now sitting at `frame`) into
/// the canonical contents of `target_shape`, deterministically.
fn settle_contents(builder: &mut Builder, node: &LabeledNode, frame: &Circle, target_shape: &RootedTree) {
    let reordered = reorder_to_shape(&node.children, &target_shape.children);
    let inner = LabeledRootedTree { children: reordered };
    // canonical circles of the reordered subtree, relabeled through a dense
    // labeling and mapped into the frame circle
    let labels = descendant_labels(node);
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    let dense: HashMap<usize, usize> =
        sorted.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
    let dense_tree = relabel_nodes(&inner.children, &dense);
    let inner_kappa = kappa_of_tree(&LabeledRootedTree { children: dense_tree });
    let targets: HashMap<usize, Circle> = labels
        .iter()
        .map(|&l| {
            let c = inner_kappa.circle(dense[&l]);
            (l, c.affine(&frame.r, &frame.cx, &frame.cy))
        })
        .collect();
    arrange_level(builder, frame, &inner.children, &targets);
}

fn relabel_nodes(nodes: &[LabeledNode], map: &HashMap<usize, usize>) -> Vec<LabeledNode> {
    nodes
        .iter()
        .map(|n| LabeledNode { label: map[&n.label], children: relabel_nodes(&n.children, map) })
        .collect()
}

fn shape_of(node: &LabeledNode) -> RootedTree {
    RootedTree::node(node.children.iter().map(shape_of).collect())
}

/// Reorders labeled children (recursively) so their underlying ordered tree
/// becomes exactly the target shape; ties take the first unused child, so
/// the choice is deterministic.
fn reorder_to_shape(children: &[LabeledNode], target: &[RootedTree]) -> Vec<LabeledNode> {
    let mut used = vec![false; children.len()];
    let mut out = Vec::with_capacity(children.len());
    for want in target {
        let idx = children
            .iter()
            .enumerate()
            .position(|(i, c)| !used[i] && trees_isomorphic(&shape_of(c), want))
            .expect("isomorphic trees have matching child types");
        used[idx] = true;
        out.push(LabeledNode {
            label: children[idx].label,
            children: reorder_to_shape(&children[idx].children, &want.children),
        });
    }
    out
}

/// The fixed identification path between the reference configurations of two
/// isomorphic ordered trees, in normalized (unit-frame) coordinates. The
/// result is deterministic and cached; swapping the arguments yields the
/// exact reversal.
pub fn reference_identification(
    t1: &RootedTree,
    t2: &RootedTree,
) -> Result<MotionPath, PlannerError> {
    if !trees_isomorphic(t1, t2) {
        return Err(PlannerError::NotIsomorphic);
    }
    let (a, b) = (t1.ordered_code(), t2.ordered_code());
    if a == b {
        let labeled = crate::forest::label_depth_first(t1);
        return Ok(MotionPath::constant(kappa_of_tree(&labeled)));
    }
    let forward = a <= b;
    let key = if forward { (a, b) } else { (b, a) };
    let mut cache = reference_cache().lock().expect("reference cache poisoned");
    if !cache.contains_key(&key) {
        let (from, to) = if forward { (t1, t2) } else { (t2, t1) };
        let labeled_from = crate::forest::label_depth_first(from);
        let labeled_to =
            LabeledRootedTree { children: reorder_to_shape(&labeled_from.children, &to.children) };
        let path = plan_to_kappa(&kappa_of_tree(&labeled_from), &labeled_to)?;
        cache.insert(key.clone(), path);
    }
    let path = cache[&key].clone();
    Ok(if forward { path } else { path.reverse() })
}

fn reference_cache() -> &'static Mutex<HashMap<(String, String), MotionPath>> {
    static CACHE: OnceLock<Mutex<HashMap<(String, String), MotionPath>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}
