//! Piecewise-linear motions of configurations: exact validity checking,
//! crossing-event extraction, and the monodromy of a loop.
//!
//! A path is a sequence of keyframes; between keyframes every center
//! coordinate and radius interpolates linearly. For each segment and each
//! pair of circles the active disjointness branch is a quadratic in time, so
//! validity is decided exactly by sign and vertex analysis over rationals.
//! Crossing events are the isolated sign changes of sibling center
//! x-differences; reading them per tree vertex in time order produces the
//! braid words of a braided tree-automorphism element.

use crate::baut::{BautElement, BautError};
use crate::braid::{permutation_of, BraidWord};
use crate::canonical::kappa_of_tree;
use crate::forest::{tree_of_configuration, LabeledNode, LabeledRootedTree};
use crate::geometry::{validate_configuration, Circle, ConfigViolation, LabeledConfiguration};
use crate::rational::{int, sqrt_exact, Rat};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A snapshot of the configuration at a rational instant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Keyframe {
    pub t: Rat,
    pub config: LabeledConfiguration,
}

/// A keyframed piecewise-linear motion. Keyframe times increase strictly and
/// all keyframes hold the same number of circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionPath {
    keyframes: Vec<Keyframe>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MotionError {
    #[error("a path needs at least one keyframe")]
    Empty,
    #[error("keyframe times must increase strictly (keyframe {0})")]
    NonIncreasingTimes(usize),
    #[error("keyframe {0} has a different number of circles")]
    SizeMismatch(usize),
    #[error("paths cannot be concatenated: the junction configurations differ")]
    JunctionMismatch,
    #[error("path is invalid: {0}")]
    Invalid(PathViolation),
    #[error("path is not generic: {0}")]
    NonGeneric(String),
    #[error("the final configuration is not the initial one (even as a set)")]
    NotALoop,
    #[error("the path does not start at the reference configuration of its tree")]
    BasepointMismatch,
    #[error(transparent)]
    Baut(#[from] BautError),
}

/// Which disjointness branch a pair was on when it failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactBranch {
    /// `(r_i − r_j)² − d²` must stay positive.
    Nested,
    /// `d² − (r_i + r_j)²` must stay positive.
    Unnested,
}

/// The first reason a path is not a motion of configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathViolation {
    /// A keyframe itself is not a valid configuration.
    InvalidKeyframe { index: usize, violations: Vec<ConfigViolation> },
    /// A pair of circles makes contact inside a segment. `quadratic` is the
    /// active branch polynomial `a·t² + b·t + c` in global time, which is
    /// positive exactly while the pair stays disjoint; `interval` is the
    /// clipped time window where it fails, when its roots are rational.
    Collision {
        segment: usize,
        pair: (usize, usize),
        branch: ContactBranch,
        quadratic: (Rat, Rat, Rat),
        interval: Option<(Rat, Rat)>,
    },
}

impl std::fmt::Display for PathViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathViolation::InvalidKeyframe { index, violations } => {
                write!(f, "keyframe {index} is not a configuration:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            PathViolation::Collision { segment, pair, branch, quadratic, interval } => {
                let (a, b, c) = quadratic;
                write!(
                    f,
                    "circles {} and {} collide in segment {segment} ({branch:?} branch, \
                     ({a})t² + ({b})t + ({c}) ≤ 0",
                    pair.0, pair.1
                )?;
                if let Some((lo, hi)) = interval {
                    write!(f, " for t in [{lo}, {hi}]")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// One crossing of two sibling circles: at `time`, the circles in positions
/// `slot` and `slot + 1` (1-based left-to-right x-order among the siblings
/// under `vertex`) exchange places; `sign` is `+1` when the strand moving
/// rightward has the strictly smaller y-coordinate at that instant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingEvent {
    pub time: Rat,
    pub vertex: Vec<usize>,
    pub slot: usize,
    pub sign: i8,
}

impl MotionPath {
    pub fn new(keyframes: Vec<Keyframe>) -> Result<Self, MotionError> {
        if keyframes.is_empty() {
            return Err(MotionError::Empty);
        }
        let n = keyframes[0].config.n();
        for (i, kf) in keyframes.iter().enumerate() {
            if kf.config.n() != n {
                return Err(MotionError::SizeMismatch(i));
            }
            if i > 0 && keyframes[i - 1].t >= kf.t {
                return Err(MotionError::NonIncreasingTimes(i));
            }
        }
        Ok(MotionPath { keyframes })
    }

    /// The constant path sitting at one configuration.
    pub fn constant(config: LabeledConfiguration) -> Self {
        MotionPath { keyframes: vec![Keyframe { t: int(0), config }] }
    }

    pub fn keyframes(&self) -> &[Keyframe] {
        &self.keyframes
    }

    pub fn n(&self) -> usize {
        self.keyframes[0].config.n()
    }

    pub fn start_config(&self) -> &LabeledConfiguration {
        &self.keyframes[0].config
    }

    pub fn end_config(&self) -> &LabeledConfiguration {
        &self.keyframes[self.keyframes.len() - 1].config
    }

    /// Time reversal; the reversed path covers the same time interval.
    pub fn reverse(&self) -> MotionPath {
        let t0 = &self.keyframes[0].t;
        let t1 = &self.keyframes[self.keyframes.len() - 1].t;
        let keyframes = self
            .keyframes
            .iter()
            .rev()
            .map(|kf| Keyframe { t: t0 + t1 - &kf.t, config: kf.config.clone() })
            .collect();
        MotionPath { keyframes }
    }

    /// Concatenation in time; the junction configurations must agree exactly
    /// (including labels). The second path's times are shifted to continue
    /// the first.
    pub fn concat(&self, other: &MotionPath) -> Result<MotionPath, MotionError> {
        if self.end_config() != other.start_config() {
            return Err(MotionError::JunctionMismatch);
        }
        let mut keyframes = self.keyframes.clone();
        let junction = keyframes.last().expect("nonempty").t.clone();
        let shift = &junction - &other.keyframes[0].t;
        for kf in &other.keyframes[1..] {
            keyframes.push(Keyframe { t: &kf.t + &shift, config: kf.config.clone() });
        }
        MotionPath::new(keyframes)
    }

    /// Reflection through the x-axis: `cy ↦ −cy` at every keyframe.
    pub fn mirror(&self) -> MotionPath {
        let keyframes = self
            .keyframes
            .iter()
            .map(|kf| Keyframe {
                t: kf.t.clone(),
                config: LabeledConfiguration::new_unchecked(
                    kf.config
                        .circles
                        .iter()
                        .map(|c| Circle::new(c.cx.clone(), -&c.cy, c.r.clone()))
                        .collect(),
                ),
            })
            .collect();
        MotionPath { keyframes }
    }

    /// Applies `x ↦ (tx, ty) + scale · x` to every circle of every keyframe
    /// (`scale > 0`).
    pub fn affine(&self, scale: &Rat, tx: &Rat, ty: &Rat) -> MotionPath {
        let keyframes = self
            .keyframes
            .iter()
            .map(|kf| Keyframe {
                t: kf.t.clone(),
                config: LabeledConfiguration::new_unchecked(
                    kf.config.circles.iter().map(|c| c.affine(scale, tx, ty)).collect(),
                ),
            })
            .collect();
        MotionPath { keyframes }
    }

    /// The motion of a subset of circles: position `k` of the result follows
    /// the circle labeled `labels[k]`.
    pub fn restrict(&self, labels: &[usize]) -> MotionPath {
        let keyframes = self
            .keyframes
            .iter()
            .map(|kf| Keyframe {
                t: kf.t.clone(),
                config: LabeledConfiguration::new_unchecked(
                    labels.iter().map(|&l| kf.config.circle(l).clone()).collect(),
                ),
            })
            .collect();
        MotionPath { keyframes }
    }

    /// Renames circles so that the start configuration matches `target`
    /// circle-for-circle (exact coordinates). Fails when the start is not a
    /// relabeling of `target`.
    pub fn relabel_to_match(
        &self,
        target: &LabeledConfiguration,
    ) -> Result<MotionPath, MotionError> {
        let start = self.start_config();
        if target.n() != start.n() {
            return Err(MotionError::SizeMismatch(0));
        }
        // position j of the new path = our circle matching target's circle j
        let mut source_of = Vec::with_capacity(target.n());
        let mut used = vec![false; target.n()];
        for want in &target.circles {
            let found = start
                .circles
                .iter()
                .enumerate()
                .position(|(idx, c)| !used[idx] && c == want)
                .ok_or(MotionError::JunctionMismatch)?;
            used[found] = true;
            source_of.push(found);
        }
        let keyframes = self
            .keyframes
            .iter()
            .map(|kf| Keyframe {
                t: kf.t.clone(),
                config: LabeledConfiguration::new_unchecked(
                    source_of.iter().map(|&idx| kf.config.circles[idx].clone()).collect(),
                ),
            })
            .collect();
        Ok(MotionPath { keyframes })
    }
}

/// A linear function `c0 + c1·u` of the segment-local parameter `u ∈ [0,1]`.
#[derive(Clone)]
struct Lin {
    c0: Rat,
    c1: Rat,
}

impl Lin {
    fn between(from: &Rat, to: &Rat) -> Lin {
        Lin { c0: from.clone(), c1: to - from }
    }

    fn sub(&self, other: &Lin) -> Lin {
        Lin { c0: &self.c0 - &other.c0, c1: &self.c1 - &other.c1 }
    }

    fn add(&self, other: &Lin) -> Lin {
        Lin { c0: &self.c0 + &other.c0, c1: &self.c1 + &other.c1 }
    }

    fn square(&self) -> Quad {
        Quad {
            a: &self.c1 * &self.c1,
            b: int(2) * &self.c0 * &self.c1,
            c: &self.c0 * &self.c0,
        }
    }

    fn eval(&self, u: &Rat) -> Rat {
        &self.c0 + &self.c1 * u
    }
}

/// A quadratic `a·u² + b·u + c`.
#[derive(Clone)]
struct Quad {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl Quad {
    fn add(&self, other: &Quad) -> Quad {
        Quad { a: &self.a + &other.a, b: &self.b + &other.b, c: &self.c + &other.c }
    }

    fn sub(&self, other: &Quad) -> Quad {
        Quad { a: &self.a - &other.a, b: &self.b - &other.b, c: &self.c - &other.c }
    }

    fn eval(&self, u: &Rat) -> Rat {
        (&self.a * u + &self.b) * u + &self.c
    }

    /// Exact test for `q(u) > 0` on all of `[0, 1]`: endpoint signs plus, for
    /// an upward parabola with interior vertex, the vertex sign `4ac − b²`.
    fn positive_on_unit(&self) -> bool {
        if !self.eval(&int(0)).is_positive() || !self.eval(&int(1)).is_positive() {
            return false;
        }
        if self.a.is_positive() {
            let two_a = int(2) * &self.a;
            if self.b.is_negative() && -&self.b < two_a {
                return int(4) * &self.a * &self.c > &self.b * &self.b;
            }
        }
        true
    }

    /// The same polynomial re-expressed in global time `t = t0 + u·dt`.
    fn in_global_time(&self, t0: &Rat, dt: &Rat) -> (Rat, Rat, Rat) {
        let a = &self.a / (dt * dt);
        let b = &self.b / dt - int(2) * &self.a * t0 / (dt * dt);
        let c = &self.a * t0 * t0 / (dt * dt) - &self.b * t0 / dt + &self.c;
        (a, b, c)
    }
}

/// The two center coordinates and radius of a circle across one segment.
struct CircleTrack {
    x: Lin,
    y: Lin,
    r: Lin,
}

fn track(from: &Circle, to: &Circle) -> CircleTrack {
    CircleTrack {
        x: Lin::between(&from.cx, &to.cx),
        y: Lin::between(&from.cy, &to.cy),
        r: Lin::between(&from.r, &to.r),
    }
}

/// Checks that every interpolated instant of the path is a configuration.
/// The active disjointness branch of each pair is read off at the segment
/// start and must stay strictly positive throughout the segment; branch
/// switching is impossible without contact, so validity also certifies that
/// the nesting structure is constant along the path.
pub fn validate_path(p: &MotionPath) -> Result<(), PathViolation> {
    for (index, kf) in p.keyframes().iter().enumerate() {
        let violations = validate_configuration(&kf.config.circles);
        if !violations.is_empty() {
            return Err(PathViolation::InvalidKeyframe { index, violations });
        }
    }
    let n = p.n();
    for seg in 0..p.keyframes().len().saturating_sub(1) {
        let from = &p.keyframes()[seg];
        let to = &p.keyframes()[seg + 1];
        let dt = &to.t - &from.t;
        for i in 1..=n {
            for j in i + 1..=n {
                let a0 = from.config.circle(i);
                let b0 = from.config.circle(j);
                let ta = track(a0, to.config.circle(i));
                let tb = track(b0, to.config.circle(j));
                let d2 = ta.x.sub(&tb.x).square().add(&ta.y.sub(&tb.y).square());
                // the branch that holds at the segment start must persist
                let d2_start = a0.center_dist_sq(b0);
                let rsum = &a0.r + &b0.r;
                let (branch, q) = if &rsum * &rsum < d2_start {
                    (ContactBranch::Unnested, d2.sub(&ta.r.add(&tb.r).square()))
                } else {
                    (ContactBranch::Nested, ta.r.sub(&tb.r).square().sub(&d2))
                };
                if !q.positive_on_unit() {
                    let quadratic = q.in_global_time(&from.t, &dt);
                    let interval = violation_interval(&quadratic, &from.t, &to.t);
                    return Err(PathViolation::Collision {
                        segment: seg,
                        pair: (i, j),
                        branch,
                        quadratic,
                        interval,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Where `a·t² + b·t + c ≤ 0` within `[t0, t1]`, when that set is one
/// interval with rational endpoints.
fn violation_interval(quadratic: &(Rat, Rat, Rat), t0: &Rat, t1: &Rat) -> Option<(Rat, Rat)> {
    let (a, b, c) = quadratic;
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_positive() { None } else { Some((t0.clone(), t1.clone())) };
        }
        let root = -c / b;
        return if b.is_negative() {
            Some((root.max(t0.clone()), t1.clone()))
        } else {
            Some((t0.clone(), root.min(t1.clone())))
        };
    }
    let disc = b * b - int(4) * a * c;
    let s = sqrt_exact(&disc)?;
    if a.is_positive() {
        let lo = (-b - &s) / (int(2) * a);
        let hi = (-b + &s) / (int(2) * a);
        let lo = lo.max(t0.clone());
        let hi = hi.min(t1.clone());
        (lo <= hi).then_some((lo, hi))
    } else {
        // downward parabola, positive at the segment start: it fails from
        // its larger root onward
        let larger = (-b - &s) / (int(2) * a);
        Some((larger.max(t0.clone()), t1.clone()))
    }
}

/// Sibling groups of the configuration tree: for every vertex with at least
/// two children, its path and the member labels (in start x-order).
pub(crate) fn sibling_groups(tree: &LabeledRootedTree) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    fn walk(
        children: &[LabeledNode],
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if children.len() >= 2 {
            out.push((path.clone(), children.iter().map(|c| c.label).collect()));
        }
        for (i, c) in children.iter().enumerate() {
            path.push(i);
            walk(&c.children, path, out);
            path.pop();
        }
    }
    walk(&tree.children, &mut Vec::new(), &mut out);
    out
}

fn coord_at(p: &MotionPath, seg: usize, label: usize, t: &Rat, pick_y: bool) -> Rat {
    let from = &p.keyframes()[seg];
    let to = &p.keyframes()[seg + 1];
    let u = (t - &from.t) / (&to.t - &from.t);
    let (f, g) = if pick_y {
        (&from.config.circle(label).cy, &to.config.circle(label).cy)
    } else {
        (&from.config.circle(label).cx, &to.config.circle(label).cx)
    };
    Lin::between(f, g).eval(&u)
}

/// Extracts all sibling crossing events of a valid path, sorted by time.
///
/// Degenerate motions are rejected rather than perturbed: two siblings of a
/// crossing pair with equal center x over a whole segment or at a path
/// endpoint, a touch without an order exchange, three siblings sharing one
/// crossing time, or two simultaneous crossings at the same vertex in
/// overlapping slots all yield [`MotionError::NonGeneric`].
pub fn crossing_events(p: &MotionPath) -> Result<Vec<CrossingEvent>, MotionError> {
    validate_path(p).map_err(MotionError::Invalid)?;
    let tree = tree_of_configuration(p.start_config());
    let mut events: Vec<CrossingEvent> = Vec::new();
    for (vertex, members) in sibling_groups(&tree) {
        let mut group_events: Vec<(Rat, usize, i8)> = Vec::new(); // time, slot, sign
        for ai in 0..members.len() {
            for bi in ai + 1..members.len() {
                let (a, b) = (members[ai], members[bi]);
                for (time, seg, rising) in pair_zeros(p, a, b)? {
                    // the shared x-value and the other siblings' positions
                    let v = coord_at(p, seg, a, &time, false);
                    let mut below = 0usize;
                    for &other in &members {
                        if other == a || other == b {
                            continue;
                        }
                        let x = coord_at(p, seg, other, &time, false);
                        if x == v {
                            return Err(MotionError::NonGeneric(format!(
                                "three siblings share a crossing time at t = {time}"
                            )));
                        }
                        if x < v {
                            below += 1;
                        }
                    }
                    let slot = below + 1;
                    // a rising difference cx_a − cx_b means a moves rightward
                    let (rightward, other) = if rising { (a, b) } else { (b, a) };
                    let ry = coord_at(p, seg, rightward, &time, true);
                    let oy = coord_at(p, seg, other, &time, true);
                    debug_assert_ne!(ry, oy, "crossing siblings cannot be concentric");
                    let sign = if ry < oy { 1 } else { -1 };
                    group_events.push((time, slot, sign));
                }
            }
        }
        group_events.sort_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
        for w in group_events.windows(2) {
            if w[0].0 == w[1].0 && w[1].1 <= w[0].1 + 1 {
                return Err(MotionError::NonGeneric(format!(
                    "two crossings at overlapping slots share t = {}",
                    w[0].0
                )));
            }
        }
        for (time, slot, sign) in group_events {
            events.push(CrossingEvent { time, vertex: vertex.clone(), slot, sign });
        }
    }
    events.sort_by(|x, y| (&x.time, &x.vertex, x.slot).cmp(&(&y.time, &y.vertex, y.slot)));
    Ok(events)
}

/// The isolated zeros of `cx_a − cx_b` along the path, each tagged with a
/// segment it can be evaluated in and whether the difference rises through
/// zero.
fn pair_zeros(p: &MotionPath, a: usize, b: usize) -> Result<Vec<(Rat, usize, bool)>, MotionError> {
    let kfs = p.keyframes();
    let values: Vec<Rat> =
        kfs.iter().map(|kf| &kf.config.circle(a).cx - &kf.config.circle(b).cx).collect();
    let mut zeros = Vec::new();
    for k in 0..kfs.len() - 1 {
        let (h0, h1) = (&values[k], &values[k + 1]);
        if h0.is_zero() && h1.is_zero() {
            return Err(MotionError::NonGeneric(format!(
                "siblings {a} and {b} share their center x over a whole segment"
            )));
        }
        if h1.is_zero() {
            // an instantaneous tie at the path end records no exchange
            if k + 2 == values.len() || values[k + 2].is_zero() {
                continue;
            }
            // zero at the keyframe joining segments k and k+1
            let before = h0.is_positive();
            let after = values[k + 2].is_positive();
            if before == after {
                return Err(MotionError::NonGeneric(format!(
                    "siblings {a} and {b} touch in x without exchanging at t = {}",
                    kfs[k + 1].t
                )));
            }
            zeros.push((kfs[k + 1].t.clone(), k, !before));
        } else if h0.is_zero() {
            // an instantaneous tie at the path start records no exchange;
            // ties at interior keyframes were classified at segment k − 1
        } else if h0.is_positive() != h1.is_positive() {
            // interior simple zero
            let u = h0 / (h0 - h1);
            let t = &kfs[k].t + u * (&kfs[k + 1].t - &kfs[k].t);
            zeros.push((t, k, h1.is_positive()));
        }
    }
    Ok(zeros)
}

/// The monodromy of a loop of configurations based at the reference
/// configuration of its tree.
///
/// The braid word at each tree vertex is the sign-and-slot sequence of that
/// vertex's sibling crossing events in time order; the contents of the
/// circle starting in each slot are followed through the loop and extracted
/// recursively. When a strand ends at a same-type slot whose subtree differs
/// as an ordered tree, the deterministic reference-identification path is
/// appended before recursing, fixing the identification of fibers once and
/// for all. Labeled loops (final configuration equal to the initial one
/// circle-for-circle) always produce pure elements.
pub fn monodromy(p: &MotionPath) -> Result<BautElement, MotionError> {
    let start = p.start_config();
    let tree = tree_of_configuration(start);
    if *start != kappa_of_tree(&tree) {
        return Err(MotionError::BasepointMismatch);
    }
    if !p.end_config().same_underlying_set(start) {
        return Err(MotionError::NotALoop);
    }
    extract(p)
}

/// Recursive extraction; `p` is a loop (as a set) at a positive affine image
/// of the reference configuration of its tree.
fn extract(p: &MotionPath) -> Result<BautElement, MotionError> {
    let tree = tree_of_configuration(p.start_config());
    let shape = tree.underlying();
    let m = tree.children.len();
    let events = crossing_events(p)?;
    let letters: Vec<i32> = events
        .iter()
        .filter(|e| e.vertex.is_empty())
        .map(|e| e.sign as i32 * e.slot as i32)
        .collect();
    let word = BraidWord::new(m, letters).expect("slots lie within 1..m");
    let sigma = permutation_of(&word);

    // cross-check the word against the endpoint permutation: the circle
    // starting in slot j must end at x-rank σ(j) among the top circles
    let end = p.end_config();
    let top_labels: Vec<usize> = tree.children.iter().map(|c| c.label).collect();
    for (j, &label) in top_labels.iter().enumerate() {
        let my_x = &end.circle(label).cx;
        let rank = top_labels.iter().filter(|&&o| end.circle(o).cx < *my_x).count();
        if rank != sigma.apply(j) {
            return Err(MotionError::NonGeneric(format!(
                "event word disagrees with the endpoint positions at slot {}",
                j + 1
            )));
        }
    }

    let mut children = Vec::with_capacity(m);
    for (j, node) in tree.children.iter().enumerate() {
        let content_labels = descendant_labels(node);
        let sub_path = p.restrict(&content_labels);
        let end_slot = sigma.apply(j);
        let my_shape = &shape.children[j];
        let end_shape = &shape.children[end_slot];
        let closed = if my_shape == end_shape {
            sub_path
        } else {
            // the strand ends holding the canonical contents of a same-type
            // slot of a different ordered shape: append the cached reference
            // path, mapped into the strand's final circle
            let reference = crate::planner::reference_identification(end_shape, my_shape)
                .expect("same-type slots have isomorphic subtrees");
            let frame = end.circle(node.label);
            let mapped = reference
                .affine(&frame.r, &frame.cx, &frame.cy)
                .relabel_to_match(sub_path.end_config())?;
            sub_path.concat(&mapped)?
        };
        children.push(extract(&closed)?);
    }
    Ok(BautElement::new(shape, word, children)?)
}

pub(crate) fn descendant_labels(node: &LabeledNode) -> Vec<usize> {
    let mut out = Vec::new();
    fn walk(n: &LabeledNode, out: &mut Vec<usize>) {
        for c in &n.children {
            out.push(c.label);
            walk(c, out);
        }
    }
    walk(node, &mut out);
    out
}
