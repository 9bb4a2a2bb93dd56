//! Shared fixtures and random generators for unit tests.

use crate::braid::BraidWord;
use crate::forest::{LabeledRootedTree, RootedTree, TypePartition};
use crate::geometry::{Circle, LabeledConfiguration};
use crate::rational::rat;
use rand::Rng;

fn circle(cx: (i64, i64), cy: (i64, i64), r: (i64, i64)) -> Circle {
    Circle::new(rat(cx.0, cx.1), rat(cy.0, cy.1), rat(r.0, r.1))
}

/// The seven-circle configuration from the worked example, labels 1..=7.
pub(crate) fn seven_circle_config() -> LabeledConfiguration {
    LabeledConfiguration::new(vec![
        circle((-2, 1), (-1, 2), (3, 10)),
        circle((0, 1), (0, 1), (1, 1)),
        circle((-1, 5), (3, 10), (1, 5)),
        circle((-1, 5), (-3, 10), (3, 10)),
        circle((3, 5), (0, 1), (2, 1)),
        circle((1, 1), (1, 1), (3, 20)),
        circle((6, 5), (6, 5), (1, 2)),
    ])
    .unwrap()
}

/// The depth-three tree whose automorphism group is dihedral of order 8:
/// two root children, each with children of types (chain, chain, leaf).
pub(crate) fn big_tree() -> RootedTree {
    crate::forest::parse_tree("(1(2(3),4(5),6),7(8(9),10(11),12))")
        .unwrap()
        .underlying()
}

/// A uniform-ish random rooted tree with `n` non-root vertices: each new
/// vertex picks a parent among the existing ones.
pub(crate) fn random_tree(rng: &mut impl Rng, n: usize) -> RootedTree {
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    for v in 1..=n {
        let parent = rng.gen_range(0..v);
        children[parent].push(v);
        children.push(Vec::new());
    }
    fn build(v: usize, children: &[Vec<usize>]) -> RootedTree {
        RootedTree::node(children[v].iter().map(|&c| build(c, children)).collect())
    }
    build(0, &children)
}

/// A random labeled tree with `n` non-root vertices.
pub(crate) fn random_labeled_tree(rng: &mut impl Rng, n: usize) -> LabeledRootedTree {
    use rand::seq::SliceRandom;
    let shape = random_tree(rng, n);
    let dfs = crate::forest::label_depth_first(&shape);
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    dfs.relabel(&perm)
}

/// A random valid configuration with `n` circles: the reference
/// configuration of a random tree, randomly placed, then jiggled by rigid
/// subtree moves that keep validity (checked exactly).
pub(crate) fn random_config(rng: &mut impl Rng, n: usize) -> LabeledConfiguration {
    use crate::geometry::validate_configuration;
    let tree = random_labeled_tree(rng, n);
    let kappa = crate::canonical::kappa_of_tree(&tree);
    let scale = rat(rng.gen_range(1..=6), rng.gen_range(1..=3));
    let tx = rat(rng.gen_range(-16..=16), 4);
    let ty = rat(rng.gen_range(-16..=16), 4);
    let mut circles: Vec<Circle> =
        kappa.circles.iter().map(|c| c.affine(&scale, &tx, &ty)).collect();
    for _ in 0..3 * n {
        let pick = rng.gen_range(1..=n);
        let group = subtree_labels(&tree, pick);
        let r = circles[pick - 1].r.clone();
        let dx = &r * rat(rng.gen_range(-4..=4), 8);
        let dy = &r * rat(rng.gen_range(-4..=4), 8);
        let mut moved = circles.clone();
        for &l in &group {
            let c = &moved[l - 1];
            moved[l - 1] = Circle::new(&c.cx + &dx, &c.cy + &dy, c.r.clone());
        }
        if validate_configuration(&moved).is_empty() {
            circles = moved;
        }
    }
    LabeledConfiguration::new_unchecked(circles)
}

/// The label plus all its descendants in a labeled tree.
pub(crate) fn subtree_labels(tree: &LabeledRootedTree, label: usize) -> Vec<usize> {
    fn find(
        nodes: &[crate::forest::LabeledNode],
        label: usize,
    ) -> Option<&crate::forest::LabeledNode> {
        for n in nodes {
            if n.label == label {
                return Some(n);
            }
            if let Some(found) = find(&n.children, label) {
                return Some(found);
            }
        }
        None
    }
    fn collect(node: &crate::forest::LabeledNode, out: &mut Vec<usize>) {
        out.push(node.label);
        for c in &node.children {
            collect(c, out);
        }
    }
    let mut out = Vec::new();
    collect(find(&tree.children, label).expect("label exists"), &mut out);
    out
}

/// A random braid word on `n` strands with at most `max_len` letters.
pub(crate) fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> BraidWord {
    let len = if n < 2 { 0 } else { rng.gen_range(0..=max_len) };
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n) as i32;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

/// A random braid word whose permutation preserves each block of `pi`:
/// a product of block-internal generators and pure band generators.
pub(crate) fn random_block_word(
    rng: &mut impl Rng,
    pi: &TypePartition,
    max_factors: usize,
) -> BraidWord {
    let m = pi.m();
    let mut letters: Vec<i32> = Vec::new();
    if m >= 2 {
        for _ in 0..rng.gen_range(0..=max_factors) {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            if rng.gen_bool(0.5) {
                // block-internal adjacent swap, if any exists
                let candidates: Vec<i32> = (1..m)
                    .filter(|&i| pi.same_block(i - 1, i))
                    .map(|i| i as i32)
                    .collect();
                if !candidates.is_empty() {
                    let i = candidates[rng.gen_range(0..candidates.len())];
                    letters.push(sign * i);
                }
            } else {
                // pure band generator A_{ij} = s_{j−1}…s_{i+1} s_i² s_{i+1}⁻¹…s_{j−1}⁻¹
                let i = rng.gen_range(1..m);
                let j = rng.gen_range(i + 1..=m);
                let mut band: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
                band.push(i as i32);
                band.push(i as i32);
                band.extend((i + 1..j).map(|k| -(k as i32)));
                if sign < 0 {
                    band.reverse();
                    for l in &mut band {
                        *l = -*l;
                    }
                }
                letters.extend(band);
            }
        }
    }
    BraidWord::new(m, letters).unwrap()
}
