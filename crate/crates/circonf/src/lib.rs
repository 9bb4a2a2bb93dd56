//! Exact computation with configurations of disjoint circles in the plane.
//!
//! A configuration of `n` pairwise disjoint circles determines a rooted tree
//! recording which circles are nested in which. Two configurations can be
//! deformed into each other without collisions exactly when their trees are
//! isomorphic, and the loops based at a fixed reference configuration form a
//! group assembled from braid groups along the tree. This crate makes all of
//! that executable:
//!
//! * [`geometry`]: exact rational circles and disjointness/nesting predicates;
//! * [`forest`]: rooted ordered trees, canonical codes, isomorphism tests;
//! * [`canonical`]: the fixed reference configuration `κ_T` of a labeled tree;
//! * [`braid`]: braid words with a decidable word problem (Garside normal
//!   form, plus Dehornoy handle reduction as an independent solver);
//! * [`baut`]: the braided tree-automorphism groups `BAut(T)` / `PBAut(T)`;
//! * [`motion`]: piecewise-linear motions, exact collision checking, crossing
//!   events, and the monodromy of a loop as a `BAut(T)` element;
//! * [`planner`]: explicit collision-free paths between configurations in the
//!   same component.
//!
//! Every predicate is decided by exact sign evaluation over arbitrary-precision
//! rationals; there is no floating point anywhere in a decision path.

pub mod baut;
pub mod braid;
pub mod canonical;
pub mod forest;
pub mod geometry;
pub mod json;
pub mod motion;
pub mod planner;
pub mod rational;

#[cfg(test)]
pub(crate) mod testutil;

pub use rational::Rat;
