//! Exact predicates and constructions on circles in the plane.
//!
//! A circle is stored as its center and radius, all exact rationals. Two
//! disjoint circles are either nested (one lies in the bounded complementary
//! component of the other) or un-nested, and which case holds is decided by
//! the sign of a polynomial in the centers and radii.

use crate::rational::{floor_third_sqrt, int, sqrt_exact, Rat};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A circle in the plane with positive radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circle {
    pub cx: Rat,
    pub cy: Rat,
    pub r: Rat,
}

impl Circle {
    pub fn new(cx: Rat, cy: Rat, r: Rat) -> Self {
        Circle { cx, cy, r }
    }

    /// Squared distance between the centers of `self` and `other`.
    pub fn center_dist_sq(&self, other: &Circle) -> Rat {
        let dx = &self.cx - &other.cx;
        let dy = &self.cy - &other.cy;
        &dx * &dx + &dy * &dy
    }

    /// Applies `x ↦ center + scale·x` to this circle (`scale > 0`).
    pub fn affine(&self, scale: &Rat, tx: &Rat, ty: &Rat) -> Circle {
        Circle {
            cx: tx + scale * &self.cx,
            cy: ty + scale * &self.cy,
            r: scale * &self.r,
        }
    }

    /// Scales this circle about the point `(ax, ay)` by `scale > 0`.
    pub fn affine_about(&self, ax: &Rat, ay: &Rat, scale: &Rat) -> Circle {
        Circle {
            cx: ax + scale * (&self.cx - ax),
            cy: ay + scale * (&self.cy - ay),
            r: scale * &self.r,
        }
    }
}

/// How two disjoint circles sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestingRelation {
    AInsideB,
    BInsideA,
    Unnested,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("circles are not disjoint")]
    NotDisjoint,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
}

/// A violation reported by [`validate_configuration`], naming the offending
/// 1-based label or pair of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigViolation {
    NonPositiveRadius(usize),
    NotDisjoint(usize, usize),
}

impl std::fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigViolation::NonPositiveRadius(i) => {
                write!(f, "circle {i} has non-positive radius")
            }
            ConfigViolation::NotDisjoint(i, j) => {
                write!(f, "circles {i} and {j} are not disjoint")
            }
        }
    }
}

/// `true` iff the two circles are disjoint as subsets of the plane:
/// `(r_a − r_b)² > d²` (nested) or `(r_a + r_b)² < d²` (un-nested), with
/// `d²` the squared center distance, evaluated exactly.
pub fn circles_disjoint(a: &Circle, b: &Circle) -> bool {
    let d2 = a.center_dist_sq(b);
    let diff = &a.r - &b.r;
    let sum = &a.r + &b.r;
    &diff * &diff > d2 || &sum * &sum < d2
}

/// Resolves the nesting relation of two disjoint circles. A circle is never
/// nested in itself; within the nested case the smaller radius is inside.
pub fn nesting_relation(a: &Circle, b: &Circle) -> Result<NestingRelation, GeometryError> {
    let d2 = a.center_dist_sq(b);
    let diff = &a.r - &b.r;
    let sum = &a.r + &b.r;
    if &sum * &sum < d2 {
        Ok(NestingRelation::Unnested)
    } else if &diff * &diff > d2 {
        if a.r < b.r {
            Ok(NestingRelation::AInsideB)
        } else {
            Ok(NestingRelation::BInsideA)
        }
    } else {
        Err(GeometryError::NotDisjoint)
    }
}

/// An ordered tuple of pairwise disjoint circles; position `i` holds the
/// circle labeled `i + 1` (labels run 1..=n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledConfiguration {
    pub circles: Vec<Circle>,
}

impl LabeledConfiguration {
    /// Builds a configuration, rejecting any invalid input.
    pub fn new(circles: Vec<Circle>) -> Result<Self, Vec<ConfigViolation>> {
        let violations = validate_configuration(&circles);
        if violations.is_empty() {
            Ok(LabeledConfiguration { circles })
        } else {
            Err(violations)
        }
    }

    /// Builds a configuration without checking disjointness.
    /// Callers must guarantee validity.
    pub fn new_unchecked(circles: Vec<Circle>) -> Self {
        LabeledConfiguration { circles }
    }

    pub fn n(&self) -> usize {
        self.circles.len()
    }

    /// The circle with 1-based label `i`.
    pub fn circle(&self, label: usize) -> &Circle {
        &self.circles[label - 1]
    }

    /// All 1-based labels.
    pub fn labels(&self) -> impl Iterator<Item = usize> {
        1..=self.circles.len()
    }

    /// `true` if both configurations consist of the same circles as a set,
    /// ignoring labels.
    pub fn same_underlying_set(&self, other: &LabeledConfiguration) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let key = |c: &Circle| (c.cx.clone(), c.cy.clone(), c.r.clone());
        let mut a: Vec<_> = self.circles.iter().map(key).collect();
        let mut b: Vec<_> = other.circles.iter().map(key).collect();
        a.sort();
        b.sort();
        a == b
    }
}

/// Checks every radius positive and every pair disjoint; returns all
/// violations found (empty means the configuration is valid).
pub fn validate_configuration(circles: &[Circle]) -> Vec<ConfigViolation> {
    let mut violations = Vec::new();
    for (i, c) in circles.iter().enumerate() {
        if !c.r.is_positive() {
            violations.push(ConfigViolation::NonPositiveRadius(i + 1));
        }
    }
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            if !circles_disjoint(&circles[i], &circles[j]) {
                violations.push(ConfigViolation::NotDisjoint(i + 1, j + 1));
            }
        }
    }
    violations
}

/// The label of the smallest circle containing circle `i`, or `None` when
/// circle `i` is a top circle. Containing circles are totally ordered by
/// nesting, so the smallest radius identifies the immediate parent.
pub fn immediate_parent(config: &LabeledConfiguration, i: usize) -> Option<usize> {
    let me = config.circle(i);
    let mut best: Option<usize> = None;
    for j in config.labels() {
        if j == i {
            continue;
        }
        let other = config.circle(j);
        if nesting_relation(me, other) == Ok(NestingRelation::AInsideB) {
            best = match best {
                Some(b) if config.circle(b).r <= other.r => Some(b),
                _ => Some(j),
            };
        }
    }
    best
}

/// Places a disk at each point, all with a common radius of one third of the
/// minimum pairwise distance (or the largest `k/2^32` under it when that
/// distance is irrational; radius 1 when there are fewer than two points).
pub fn disks_from_points(points: &[(Rat, Rat)]) -> Result<LabeledConfiguration, GeometryError> {
    let mut min_d2: Option<Rat> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dx = &points[i].0 - &points[j].0;
            let dy = &points[i].1 - &points[j].1;
            let d2 = &dx * &dx + &dy * &dy;
            if d2.is_zero() {
                return Err(GeometryError::DuplicatePoint(i + 1, j + 1));
            }
            min_d2 = match min_d2 {
                Some(m) if m <= d2 => Some(m),
                _ => Some(d2),
            };
        }
    }
    let radius = match &min_d2 {
        None => int(1),
        Some(d2) => match sqrt_exact(d2) {
            Some(d) => d / int(3),
            None => floor_third_sqrt(d2),
        },
    };
    let circles = points
        .iter()
        .map(|(x, y)| Circle::new(x.clone(), y.clone(), radius.clone()))
        .collect();
    Ok(LabeledConfiguration::new_unchecked(circles))
}
