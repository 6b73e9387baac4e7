use crate::db::{Database, Elem};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One modification. Elements are named by their labels in the original
/// database of that side; inserted elements get labels `n+1, n+2, ...`.
/// Deleting an element removes every tuple containing it as part of the same
/// modification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum EditOp {
    InsertElement { side: Side },
    DeleteElement { side: Side, element: Elem },
    InsertTuple { side: Side, relation: usize, tuple: Vec<Elem> },
    DeleteTuple { side: Side, relation: usize, tuple: Vec<Elem> },
}

impl EditOp {
    pub fn side(&self) -> Side {
        match self {
            EditOp::InsertElement { side }
            | EditOp::DeleteElement { side, .. }
            | EditOp::InsertTuple { side, .. }
            | EditOp::DeleteTuple { side, .. } => *side,
        }
    }
}

struct Working {
    n: u32,
    tuples: BTreeSet<(usize, Vec<Elem>)>,
    deleted: BTreeSet<Elem>,
}

impl Working {
    fn new(db: &Database) -> Self {
        Working {
            n: db.domain_size(),
            tuples: db.all_tuples(),
            deleted: BTreeSet::new(),
        }
    }

    fn live(&self, e: Elem) -> bool {
        e >= 1 && e <= self.n && !self.deleted.contains(&e)
    }

    fn apply(&mut self, op: &EditOp) -> Result<()> {
        let bad = |what: String| Err(Error::Precondition(format!("cannot replay: {what}")));
        match op {
            EditOp::InsertElement { .. } => self.n += 1,
            EditOp::DeleteElement { element, .. } => {
                if !self.live(*element) {
                    return bad(format!("element {element} is not present"));
                }
                self.deleted.insert(*element);
                self.tuples.retain(|(_, t)| !t.contains(element));
            }
            EditOp::InsertTuple { relation, tuple, .. } => {
                if tuple.iter().any(|&e| !self.live(e)) {
                    return bad(format!("tuple {tuple:?} uses an absent element"));
                }
                if !self.tuples.insert((*relation, tuple.clone())) {
                    return bad(format!("tuple {tuple:?} already present"));
                }
            }
            EditOp::DeleteTuple { relation, tuple, .. } => {
                if !self.tuples.remove(&(*relation, tuple.clone())) {
                    return bad(format!("tuple {tuple:?} not present"));
                }
            }
        }
        Ok(())
    }

    fn finish(self, template: &Database, degree_bound: usize) -> Result<Database> {
        let kept: Vec<Elem> = (1..=self.n).filter(|e| !self.deleted.contains(e)).collect();
        let relabel = |e: &Elem| kept.binary_search(e).unwrap() as Elem + 1;
        let mut relations = vec![Vec::new(); template.schema().len()];
        for (rel, t) in self.tuples {
            if rel >= relations.len() || t.len() != template.schema().arity(rel) {
                return Err(Error::Precondition(format!("bad tuple {t:?} for relation {rel}")));
            }
            relations[rel].push(t.iter().map(relabel).collect());
        }
        Database::new(template.schema().clone(), degree_bound, kept.len() as u32, relations)
    }
}

/// Applies a witness to both sides and returns the resulting pair.
pub fn replay(left: &Database, right: &Database, ops: &[EditOp]) -> Result<(Database, Database)> {
    let mut l = Working::new(left);
    let mut r = Working::new(right);
    for op in ops {
        match op.side() {
            Side::Left => l.apply(op)?,
            Side::Right => r.apply(op)?,
        }
    }
    let d = left.degree_bound().max(right.degree_bound());
    Ok((l.finish(left, d)?, r.finish(right, d)?))
}

pub(crate) const UNDECIDED: Elem = Elem::MAX;
pub(crate) const DELETED: Elem = 0;

/// Partial correspondence between the domains of two databases, built one
/// left element at a time. Index 0 is unused in both arrays.
pub(crate) struct Matching<'a> {
    pub d1: &'a Database,
    pub d2: &'a Database,
    pub map: Vec<Elem>,
    pub inv: Vec<Elem>,
}

impl<'a> Matching<'a> {
    pub fn new(d1: &'a Database, d2: &'a Database) -> Self {
        Matching {
            d1,
            d2,
            map: vec![UNDECIDED; d1.domain_size() as usize + 1],
            inv: vec![UNDECIDED; d2.domain_size() as usize + 1],
        }
    }

    pub fn assign(&mut self, u: Elem, w: Elem) {
        self.map[u as usize] = w;
        if w != DELETED {
            self.inv[w as usize] = u;
        }
    }

    pub fn unassign(&mut self, u: Elem) {
        let w = self.map[u as usize];
        if w != DELETED && w != UNDECIDED {
            self.inv[w as usize] = UNDECIDED;
        }
        self.map[u as usize] = UNDECIDED;
    }

    /// Tuple mismatches that become final once `u` has just been decided:
    /// left tuples through `u` whose elements are all kept, and right tuples
    /// through `map[u]` whose elements are all matched.
    pub fn step_cost(&self, u: Elem) -> u64 {
        let w = self.map[u as usize];
        if w == DELETED {
            return 0;
        }
        let mut cost = 0;
        let mut image = Vec::new();
        for rel in 0..self.d1.schema().len() {
            'left: for t in self.d1.incident(rel, u) {
                image.clear();
                for &e in t {
                    match self.map[e as usize] {
                        UNDECIDED | DELETED => continue 'left,
                        x => image.push(x),
                    }
                }
                if !self.d2.contains_tuple(rel, &image) {
                    cost += 1;
                }
            }
            'right: for t in self.d2.incident(rel, w) {
                image.clear();
                for &e in t {
                    match self.inv[e as usize] {
                        UNDECIDED => continue 'right,
                        x => image.push(x),
                    }
                }
                if !self.d1.contains_tuple(rel, &image) {
                    cost += 1;
                }
            }
        }
        cost
    }

    /// Edit script for a complete matching: tuple edits on the left, then
    /// deletion of unmatched elements on both sides.
    pub fn witness(&self) -> Vec<EditOp> {
        let (d1, d2) = (self.d1, self.d2);
        let mut ops = Vec::new();
        let kept = |t: &[Elem]| t.iter().all(|&e| self.map[e as usize] != DELETED);
        for rel in 0..d1.schema().len() {
            for t in d1.tuples(rel).filter(|t| kept(t)) {
                let image: Vec<Elem> = t.iter().map(|&e| self.map[e as usize]).collect();
                if !d2.contains_tuple(rel, &image) {
                    ops.push(EditOp::DeleteTuple { side: Side::Left, relation: rel, tuple: t.to_vec() });
                }
            }
            for t in d2.tuples(rel) {
                if t.iter().any(|&e| self.inv[e as usize] == UNDECIDED) {
                    continue;
                }
                let pre: Vec<Elem> = t.iter().map(|&e| self.inv[e as usize]).collect();
                if !d1.contains_tuple(rel, &pre) {
                    ops.push(EditOp::InsertTuple { side: Side::Left, relation: rel, tuple: pre });
                }
            }
        }
        for u in 1..=d1.domain_size() {
            if self.map[u as usize] == DELETED {
                ops.push(EditOp::DeleteElement { side: Side::Left, element: u });
            }
        }
        for w in 1..=d2.domain_size() {
            if self.inv[w as usize] == UNDECIDED {
                ops.push(EditOp::DeleteElement { side: Side::Right, element: w });
            }
        }
        ops
    }
}

/// Left elements in breadth-first order over the Gaifman graph, so that
/// tuples close early and mismatches are charged as soon as possible.
pub(crate) fn search_order(db: &Database) -> Vec<Elem> {
    let g = db.gaifman_graph();
    let mut comps = g.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(db.domain_size() as usize);
    for comp in comps {
        let start = *comp.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
        let dist = g.distances_from(start);
        let mut members = comp;
        members.sort_by_key(|&v| (dist[v as usize - 1], v));
        order.extend(members);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::isomorphic;

    #[test]
    fn replay_applies_each_side() {
        let a = Database::graph(3, 4, &[(1, 2)]).unwrap();
        let b = Database::graph(2, 4, &[(1, 2)]).unwrap();
        let ops = vec![EditOp::DeleteElement { side: Side::Left, element: 3 }];
        let (x, y) = replay(&a, &b, &ops).unwrap();
        assert!(isomorphic(&x, &y));

        let ops = vec![
            EditOp::InsertElement { side: Side::Right },
            EditOp::InsertTuple { side: Side::Right, relation: 0, tuple: vec![3, 3] },
        ];
        assert!(replay(&a, &b, &ops).is_ok());
        let bad = vec![EditOp::DeleteTuple { side: Side::Left, relation: 0, tuple: vec![1, 3] }];
        assert!(replay(&a, &b, &bad).is_err());
    }
}
