use crate::db::{Database, Elem, OracleHandle, QueryError};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// The r-neighborhood of `center`: the sub-database induced by all elements at
/// Gaifman distance at most `radius`, relabeled order-preservingly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub db: Database,
    /// Center in the relabeled domain.
    pub center: Elem,
    pub radius: u32,
    /// `original[new - 1]` is the element's identity in the source database.
    pub original: Vec<Elem>,
}

impl Ball {
    pub fn size(&self) -> usize {
        self.db.domain_size() as usize
    }
}

/// Ball extraction with direct access to the database.
pub fn ball(db: &Database, a: Elem, r: u32) -> Result<Ball> {
    db.check_element(a)?;
    let mut depth = BTreeMap::from([(a, 0u32)]);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        let dx = depth[&x];
        if dx == r {
            continue;
        }
        for y in db.neighbors(x) {
            if let std::collections::btree_map::Entry::Vacant(slot) = depth.entry(y) {
                slot.insert(dx + 1);
                queue.push_back(y);
            }
        }
    }
    let members: Vec<Elem> = depth.into_keys().collect();
    let induced = db.induced(&members)?;
    let center = members.binary_search(&a).unwrap() as Elem + 1;
    Ok(Ball {
        db: induced.db,
        center,
        radius: r,
        original: induced.original,
    })
}

/// Ball extraction using only oracle queries. Every element of the ball has
/// all of its tuples queried, so tuples between two boundary elements are seen.
pub fn ball_via_oracle(oracle: &mut OracleHandle<'_>, a: Elem, r: u32) -> Result<Ball, QueryError> {
    let mut depth = BTreeMap::from([(a, 0u32)]);
    let mut queue = VecDeque::from([a]);
    let mut seen: Vec<BTreeSet<Vec<Elem>>> = vec![BTreeSet::new(); oracle.schema().len()];
    while let Some(x) = queue.pop_front() {
        let dx = depth[&x];
        for (rel, t) in oracle.tuples_of(x)? {
            if dx < r {
                for &y in t {
                    if let std::collections::btree_map::Entry::Vacant(slot) = depth.entry(y) {
                        slot.insert(dx + 1);
                        queue.push_back(y);
                    }
                }
            }
            seen[rel].insert(t.to_vec());
        }
    }
    let original: Vec<Elem> = depth.into_keys().collect();
    let relabel = |e: Elem| original.binary_search(&e).ok().map(|i| i as Elem + 1);
    let relations: Vec<Vec<Vec<Elem>>> = seen
        .into_iter()
        .map(|tuples| {
            tuples
                .into_iter()
                .filter_map(|t| t.iter().map(|&e| relabel(e)).collect::<Option<Vec<_>>>())
                .collect()
        })
        .collect();
    let db = Database::new(
        oracle.schema().clone(),
        oracle.degree_bound(),
        original.len() as u32,
        relations,
    )
    .expect("sub-database of a valid database");
    let center = relabel(a).unwrap();
    Ok(Ball {
        db,
        center,
        radius: r,
        original,
    })
}

/// Default ball-size cap: the larger of `d^(r+1)` and the Gaifman-degree bound
/// `sum_{i<=r} g^i` with `g = (max arity - 1) * d`, saturating.
pub fn default_cap(max_arity: usize, d: usize, r: u32) -> usize {
    let pow = |base: usize, exp: u32| base.checked_pow(exp).unwrap_or(usize::MAX);
    let d_bound = pow(d, r + 1);
    let g = max_arity.saturating_sub(1).saturating_mul(d);
    let g_bound = (0..=r).fold(0usize, |acc, i| acc.saturating_add(pow(g, i)));
    d_bound.max(g_bound)
}

pub(crate) fn check_cap(ball: &Ball, cap: usize) -> Result<()> {
    if ball.size() > cap {
        Err(Error::BallTooLarge {
            size: ball.size(),
            cap,
        })
    } else {
        Ok(())
    }
}
