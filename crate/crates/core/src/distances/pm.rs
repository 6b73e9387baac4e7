use super::edit::{search_order, Matching, DELETED, UNDECIDED};
use super::{same_schema, Distance, DistanceResult};
use crate::db::{Database, Elem};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Largest `|D1| + |D2|` accepted by [`dist_pm`].
pub const PM_MAX_COMBINED: u32 = 18;

#[derive(PartialEq, Eq)]
struct Node {
    f: u64,
    g: u64,
    /// Decision for each of the first `choices.len()` left elements in search
    /// order: a right element or `DELETED`.
    choices: Vec<Elem>,
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .cmp(&self.f)
            .then(self.choices.len().cmp(&other.choices.len()))
            .then_with(|| other.choices.cmp(&self.choices))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact distance when both tuples and elements may be inserted or deleted.
///
/// Any optimal script can be normalised to: delete some elements on each
/// side, match the survivors bijectively and fix the tuples on one side
/// (inserting an element never beats deleting its would-be partner). The
/// search is A* over partial matchings with the admissible estimate
/// `|left remaining − right remaining|`.
pub fn dist_pm(d1: &Database, d2: &Database) -> Result<DistanceResult> {
    same_schema(d1, d2)?;
    let (n1, n2) = (d1.domain_size(), d2.domain_size());
    if n1 + n2 > PM_MAX_COMBINED {
        return Err(Error::SizeCap(format!(
            "exact dist_pm supports |D1|+|D2| <= {PM_MAX_COMBINED}, got {n1}+{n2}"
        )));
    }
    let order = search_order(d1);
    let upper = (n1 + n2) as u64;
    let estimate = |depth: usize, used: usize| (n1 as u64 - depth as u64).abs_diff(n2 as u64 - used as u64);

    let mut heap = BinaryHeap::new();
    heap.push(Node { f: estimate(0, 0), g: if n1 == 0 { n2 as u64 } else { 0 }, choices: Vec::new() });
    let mut m = Matching::new(d1, d2);
    while let Some(node) = heap.pop() {
        for (step, &w) in node.choices.iter().enumerate() {
            m.assign(order[step], w);
        }
        let depth = node.choices.len();
        if depth == order.len() {
            return Ok(DistanceResult { value: Distance::Finite(node.g), witness: Some(m.witness()) });
        }
        let used = node.choices.iter().filter(|&&w| w != DELETED).count();
        let u = order[depth];
        let options: Vec<Elem> = std::iter::once(DELETED)
            .chain((1..=n2).filter(|&w| m.inv[w as usize] == UNDECIDED))
            .collect();
        for w in options {
            m.assign(u, w);
            let step = m.step_cost(u) + u64::from(w == DELETED);
            m.unassign(u);
            let used = used + usize::from(w != DELETED);
            let mut g = node.g + step;
            let h = if depth + 1 == order.len() {
                g += n2 as u64 - used as u64;
                0
            } else {
                estimate(depth + 1, used)
            };
            if g + h > upper {
                continue;
            }
            let mut choices = node.choices.clone();
            choices.push(w);
            heap.push(Node { f: g + h, g, choices });
        }
        for &u in &order[..depth] {
            m.unassign(u);
        }
    }
    unreachable!("deleting every element is always a complete solution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::{dist_bdrd, isomorphic, replay};

    fn graph(n: u32, edges: &[(u32, u32)]) -> Database {
        Database::graph(n, 6, edges).unwrap()
    }

    fn value(d1: &Database, d2: &Database) -> u64 {
        let r = dist_pm(d1, d2).unwrap();
        let v = r.value.finite().unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.len() as u64, v);
        let (a, b) = replay(d1, d2, &w).unwrap();
        assert!(isomorphic(&a, &b));
        v
    }

    #[test]
    fn small_values() {
        let tri = graph(3, &[(1, 2), (2, 3), (1, 3)]);
        let path = graph(3, &[(1, 2), (2, 3)]);
        assert_eq!(value(&tri, &tri), 0);
        assert_eq!(value(&tri, &path), 2);
        assert_eq!(value(&tri, &graph(0, &[])), 3);
        assert_eq!(value(&graph(0, &[]), &graph(0, &[])), 0);
        // one extra isolated element costs one deletion
        assert_eq!(value(&graph(4, &[(1, 2), (2, 3), (1, 3)]), &tri), 1);
        // deleting the middle of a path of length 2 leaves two isolated elements
        assert_eq!(value(&path, &graph(2, &[])), 1);
    }

    #[test]
    fn cycle_vs_triangles() {
        let c6 = graph(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        let tt = graph(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        let v = value(&c6, &tt);
        assert_eq!(v, dist_bdrd(&c6, &tt).unwrap().value.finite().unwrap().min(v));
        assert_eq!(v, 2 * 2);
    }

    #[test]
    fn cap_is_enforced() {
        let big = graph(10, &[]);
        assert!(matches!(dist_pm(&big, &big), Err(Error::SizeCap(_))));
    }
}
