use super::edit::{search_order, Matching};
use super::{same_schema, Distance, DistanceResult};
use crate::db::{Database, Elem};
use crate::error::{Error, Result};

pub const BDRD_MAX_ELEMENTS: u32 = 8;

/// Exact tuple-edit distance: the minimum over domain bijections of the
/// symmetric difference of the tuple sets. Infinite when the domain sizes
/// differ, whatever their size.
pub fn dist_bdrd(d1: &Database, d2: &Database) -> Result<DistanceResult> {
    same_schema(d1, d2)?;
    let n = d1.domain_size();
    if n != d2.domain_size() {
        return Ok(DistanceResult { value: Distance::Infinite, witness: None });
    }
    if n > BDRD_MAX_ELEMENTS {
        return Err(Error::SizeCap(format!("exact dist_bdrd supports n <= {BDRD_MAX_ELEMENTS}, got {n}")));
    }
    let order = search_order(d1);
    let mut search = Search {
        m: Matching::new(d1, d2),
        order: &order,
        best: (d1.total_tuples() + d2.total_tuples()) as u64 + 1,
        best_map: Vec::new(),
    };
    search.run(0, 0);
    for (&u, &w) in order.iter().zip(&search.best_map) {
        search.m.assign(u, w);
    }
    Ok(DistanceResult { value: Distance::Finite(search.best), witness: Some(search.m.witness()) })
}

struct Search<'a> {
    m: Matching<'a>,
    order: &'a [Elem],
    best: u64,
    best_map: Vec<Elem>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, cost: u64) {
        if cost >= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = cost;
            self.best_map = self.order.iter().map(|&u| self.m.map[u as usize]).collect();
            return;
        }
        let u = self.order[depth];
        for w in 1..=self.m.d2.domain_size() {
            if self.m.inv[w as usize] != super::edit::UNDECIDED {
                continue;
            }
            self.m.assign(u, w);
            let step = self.m.step_cost(u);
            self.run(depth + 1, cost + step);
            self.m.unassign(u);
            if self.best == 0 {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::{isomorphic, replay};

    fn graph(n: u32, edges: &[(u32, u32)]) -> Database {
        Database::graph(n, 6, edges).unwrap()
    }

    #[test]
    fn values_and_witnesses() {
        let tri = graph(3, &[(1, 2), (2, 3), (1, 3)]);
        let path = graph(3, &[(1, 2), (2, 3)]);
        let r = dist_bdrd(&tri, &path).unwrap();
        assert_eq!(r.value, Distance::Finite(2));
        let (a, b) = replay(&tri, &path, r.witness.as_ref().unwrap()).unwrap();
        assert!(isomorphic(&a, &b));
        assert_eq!(dist_bdrd(&tri, &tri).unwrap().value, Distance::Finite(0));
        let empty = graph(3, &[]);
        assert_eq!(dist_bdrd(&tri, &empty).unwrap().value, Distance::Finite(6));
    }

    #[test]
    fn size_mismatch_is_infinite_even_above_cap() {
        let a = graph(9, &[]);
        let b = graph(8, &[]);
        assert_eq!(dist_bdrd(&a, &b).unwrap().value, Distance::Infinite);
        assert!(matches!(dist_bdrd(&a, &a), Err(Error::SizeCap(_))));
    }
}
