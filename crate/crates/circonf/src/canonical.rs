//! The fixed reference configuration `κ_T` of a labeled tree.
//!
//! The `k` children of the root get circles centered at `((j−1)/k, 0)` with
//! radius `1/(3k)`, left to right; below a vertex whose circle is
//! `(x_p, 0; r_p)`, child `j` of `k` gets center `(x_p + (j−1)·r_p/k, 0)` and
//! radius `r_p/(3k)`. All circles end up inside the open unit disk, and the
//! content of any circle is the scaled copy of the reference configuration of
//! its own subtree.

use crate::forest::{LabeledNode, LabeledRootedTree};
use crate::geometry::{Circle, LabeledConfiguration};
use crate::rational::{int, rat, Rat};

/// Builds `κ_T`; circle `i` of the output belongs to the vertex labeled `i`.
pub fn kappa_of_tree(t: &LabeledRootedTree) -> LabeledConfiguration {
    let n = t.n();
    let mut circles = vec![Circle::new(int(0), int(0), int(1)); n];
    place_children(&t.children, &int(0), &int(1), &mut circles);
    LabeledConfiguration::new_unchecked(circles)
}

fn place_children(children: &[LabeledNode], px: &Rat, pr: &Rat, circles: &mut [Circle]) {
    let k = children.len();
    if k == 0 {
        return;
    }
    let k_rat = int(k as i64);
    let r = pr / (&k_rat * int(3));
    for (j, child) in children.iter().enumerate() {
        let cx = px + pr * rat(j as i64, 1) / &k_rat;
        circles[child.label - 1] = Circle::new(cx.clone(), int(0), r.clone());
        place_children(&child.children, &cx, &r, circles);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{parse_tree, tree_of_configuration};
    use crate::geometry::validate_configuration;
    use crate::testutil::random_labeled_tree;
    use rand::{Rng, SeedableRng};

    #[test]
    fn figure_tree_circles() {
        let t = parse_tree("(4(1,3),2)").unwrap();
        let kappa = kappa_of_tree(&t);
        let expect = |cx: Rat, r: Rat| Circle::new(cx, int(0), r);
        assert_eq!(kappa.circle(4), &expect(int(0), rat(1, 6)));
        assert_eq!(kappa.circle(2), &expect(rat(1, 2), rat(1, 6)));
        assert_eq!(kappa.circle(1), &expect(int(0), rat(1, 36)));
        assert_eq!(kappa.circle(3), &expect(rat(1, 12), rat(1, 36)));
    }

    #[test]
    fn trivial_and_star() {
        assert_eq!(kappa_of_tree(&LabeledRootedTree::trivial()).n(), 0);

        let star = parse_tree("(1,2,3)").unwrap();
        let kappa = kappa_of_tree(&star);
        assert_eq!(kappa.circle(1), &Circle::new(int(0), int(0), rat(1, 9)));
        assert_eq!(kappa.circle(2), &Circle::new(rat(1, 3), int(0), rat(1, 9)));
        assert_eq!(kappa.circle(3), &Circle::new(rat(2, 3), int(0), rat(1, 9)));
    }

    #[test]
    fn round_trip_and_validity_on_random_trees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.gen_range(0..=12);
            let t = random_labeled_tree(&mut rng, n);
            let kappa = kappa_of_tree(&t);
            assert!(validate_configuration(&kappa.circles).is_empty());
            assert_eq!(tree_of_configuration(&kappa), t);
            // everything inside the open unit disk
            for c in &kappa.circles {
                let d2 = &c.cx * &c.cx + &c.cy * &c.cy;
                let slack = int(1) - &c.r;
                assert!(d2 < &slack * &slack && c.r < int(1));
            }
        }
    }

    #[test]
    fn normalized_content_reproduces_subtree_kappa() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..25 {
            let n = rng.gen_range(1..=10);
            let t = random_labeled_tree(&mut rng, n);
            let kappa = kappa_of_tree(&t);
            // for each vertex p: (content − center_p)/r_p = κ(subtree at p)
            for label in 1..=n {
                let node = match find(&t, label) {
                    Some(n) => n.clone(),
                    None => continue,
                };
                let p = kappa.circle(label);
                let sub = relabeled_subtree(&node);
                let sub_kappa = kappa_of_tree(&sub.0);
                for (new_label, old_label) in sub.1.iter().enumerate() {
                    let c = kappa.circle(*old_label);
                    let normalized = Circle::new(
                        (&c.cx - &p.cx) / &p.r,
                        &c.cy / &p.r,
                        &c.r / &p.r,
                    );
                    assert_eq!(&normalized, sub_kappa.circle(new_label + 1));
                }
            }
        }
    }

    fn find(t: &LabeledRootedTree, label: usize) -> Option<&LabeledNode> {
        fn walk(n: &LabeledNode, label: usize) -> Option<&LabeledNode> {
            if n.label == label {
                return Some(n);
            }
            n.children.iter().find_map(|c| walk(c, label))
        }
        t.children.iter().find_map(|c| walk(c, label))
    }

    /// Renumbers the strict descendants of a node 1..=m in depth-first
    /// order; returns the relabeled tree plus new-label → old-label map.
    fn relabeled_subtree(node: &LabeledNode) -> (LabeledRootedTree, Vec<usize>) {
        fn walk(n: &LabeledNode, map: &mut Vec<usize>) -> LabeledNode {
            map.push(n.label);
            let label = map.len();
            LabeledNode {
                label,
                children: n.children.iter().map(|c| walk(c, map)).collect(),
            }
        }
        let mut map = Vec::new();
        let children = node.children.iter().map(|c| walk(c, &mut map)).collect();
        (LabeledRootedTree { children }, map)
    }
}
