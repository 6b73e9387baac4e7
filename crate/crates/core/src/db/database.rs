use super::{Elem, Schema, SimpleGraph};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
struct RelationData {
    arity: usize,
    /// Tuples flattened with stride `arity`, lexicographically sorted, no duplicates.
    tuples: Vec<Elem>,
    /// CSR incidence: tuples containing element `e` are
    /// `incident[offsets[e-1]..offsets[e]]`, in tuple order.
    offsets: Vec<u32>,
    incident: Vec<u32>,
}

impl RelationData {
    fn build(arity: usize, mut tuples: Vec<Vec<Elem>>, domain: u32) -> Self {
        tuples.sort_unstable();
        tuples.dedup();
        Self::from_sorted(arity, tuples, domain)
    }

    fn from_sorted(arity: usize, tuples: Vec<Vec<Elem>>, domain: u32) -> Self {
        let mut counts = vec![0u32; domain as usize + 1];
        let mut seen = Vec::with_capacity(arity);
        for t in &tuples {
            seen.clear();
            seen.extend_from_slice(t);
            seen.sort_unstable();
            seen.dedup();
            for &e in &seen {
                counts[e as usize] += 1;
            }
        }
        let mut offsets = vec![0u32; domain as usize + 1];
        for e in 1..=domain as usize {
            offsets[e] = offsets[e - 1] + counts[e];
        }
        let mut fill = offsets.clone();
        let mut incident = vec![0u32; offsets[domain as usize] as usize];
        for (idx, t) in tuples.iter().enumerate() {
            seen.clear();
            seen.extend_from_slice(t);
            seen.sort_unstable();
            seen.dedup();
            for &e in &seen {
                let slot = &mut fill[e as usize - 1];
                incident[*slot as usize] = idx as u32;
                *slot += 1;
            }
        }
        RelationData {
            arity,
            tuples: tuples.into_iter().flatten().collect(),
            offsets,
            incident,
        }
    }

    fn len(&self) -> usize {
        self.tuples.len() / self.arity
    }

    fn tuple(&self, idx: usize) -> &[Elem] {
        &self.tuples[idx * self.arity..(idx + 1) * self.arity]
    }

    fn incident(&self, e: Elem) -> &[u32] {
        let i = e as usize - 1;
        &self.incident[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

/// A σ-database on the domain `[n]` whose element degrees are bounded by `d`.
///
/// Values are immutable once built; every constructor validates the arity of
/// each tuple, the range of its elements and the degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    schema: Arc<Schema>,
    degree_bound: usize,
    domain: u32,
    relations: Vec<RelationData>,
}

/// An induced sub-database relabeled to `[|M|]` together with the original
/// identity of each new element (`original[new - 1]`).
#[derive(Debug, Clone)]
pub struct Induced {
    pub db: Database,
    pub original: Vec<Elem>,
}

impl Database {
    /// Builds a database, sorting and deduplicating the tuple lists.
    /// `relations[i]` holds the tuples of the i-th schema relation.
    pub fn new(
        schema: Arc<Schema>,
        degree_bound: usize,
        domain: u32,
        relations: Vec<Vec<Vec<Elem>>>,
    ) -> Result<Self> {
        Self::validate_shape(&schema, domain, &relations)?;
        let relations = schema
            .relations()
            .iter()
            .zip(relations)
            .map(|(rel, tuples)| RelationData::build(rel.arity, tuples, domain))
            .collect();
        let db = Database {
            schema,
            degree_bound,
            domain,
            relations,
        };
        db.check_degrees()?;
        Ok(db)
    }

    /// Like [`Database::new`] but the tuple lists must already be sorted and
    /// duplicate-free; violations are reported rather than repaired.
    pub(crate) fn from_sorted(
        schema: Arc<Schema>,
        degree_bound: usize,
        domain: u32,
        relations: Vec<Vec<Vec<Elem>>>,
    ) -> Result<Self> {
        Self::validate_shape(&schema, domain, &relations)?;
        let relations = schema
            .relations()
            .iter()
            .zip(relations)
            .map(|(rel, tuples)| RelationData::from_sorted(rel.arity, tuples, domain))
            .collect();
        let db = Database {
            schema,
            degree_bound,
            domain,
            relations,
        };
        db.check_degrees()?;
        Ok(db)
    }

    /// An undirected graph as an `{E}`-database with both orientations stored.
    /// `degree_bound` is the database degree, i.e. twice the graph degree.
    pub fn graph(domain: u32, degree_bound: usize, edges: &[(Elem, Elem)]) -> Result<Self> {
        let mut tuples = Vec::with_capacity(edges.len() * 2);
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Precondition(format!("self-loop on {a} in a graph")));
            }
            tuples.push(vec![a, b]);
            tuples.push(vec![b, a]);
        }
        Database::new(Schema::graph(), degree_bound, domain, vec![tuples])
    }

    pub fn empty(schema: Arc<Schema>, degree_bound: usize) -> Self {
        let relations = vec![Vec::new(); schema.len()];
        Database::new(schema, degree_bound, 0, relations).expect("empty database is valid")
    }

    fn validate_shape(schema: &Schema, domain: u32, relations: &[Vec<Vec<Elem>>]) -> Result<()> {
        if relations.len() != schema.len() {
            return Err(Error::Schema(format!(
                "expected {} relations, got {}",
                schema.len(),
                relations.len()
            )));
        }
        for (rel, tuples) in schema.relations().iter().zip(relations) {
            for t in tuples {
                if t.len() != rel.arity {
                    return Err(Error::Arity {
                        relation: rel.name.clone(),
                        tuple: t.clone(),
                        expected: rel.arity,
                        found: t.len(),
                    });
                }
                if let Some(&e) = t.iter().find(|&&e| e == 0 || e > domain) {
                    return Err(Error::ElementOutOfRange {
                        element: e as u64,
                        domain,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_degrees(&self) -> Result<()> {
        for a in 1..=self.domain {
            let degree = self.degree_unchecked(a);
            if degree > self.degree_bound {
                return Err(Error::DegreeBound {
                    element: a,
                    degree,
                    bound: self.degree_bound,
                });
            }
        }
        Ok(())
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// `n`, the number of elements.
    pub fn domain_size(&self) -> u32 {
        self.domain
    }

    pub fn is_empty(&self) -> bool {
        self.domain == 0
    }

    /// Same database with a different declared degree bound.
    pub fn with_degree_bound(&self, degree_bound: usize) -> Result<Self> {
        let db = Database {
            degree_bound,
            ..self.clone()
        };
        db.check_degrees()?;
        Ok(db)
    }

    pub fn tuple_count(&self, rel: usize) -> usize {
        self.relations[rel].len()
    }

    pub fn total_tuples(&self) -> usize {
        self.relations.iter().map(RelationData::len).sum()
    }

    /// Tuples of relation `rel` in lexicographic order.
    pub fn tuples(&self, rel: usize) -> impl ExactSizeIterator<Item = &[Elem]> + '_ {
        let data = &self.relations[rel];
        (0..data.len()).map(move |i| data.tuple(i))
    }

    /// Tuples of `rel` containing `a`, in lexicographic order.
    pub fn incident(&self, rel: usize, a: Elem) -> impl ExactSizeIterator<Item = &[Elem]> + '_ {
        let data = &self.relations[rel];
        data.incident(a).iter().map(move |&i| data.tuple(i as usize))
    }

    /// The `j`-th (1-based) tuple of `rel` containing `a`.
    pub(crate) fn incident_nth(&self, rel: usize, a: Elem, j: usize) -> Option<&[Elem]> {
        let data = &self.relations[rel];
        data.incident(a)
            .get(j.checked_sub(1)?)
            .map(|&i| data.tuple(i as usize))
    }

    pub fn contains_tuple(&self, rel: usize, tuple: &[Elem]) -> bool {
        let data = &self.relations[rel];
        if tuple.len() != data.arity {
            return false;
        }
        let (mut lo, mut hi) = (0, data.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match data.tuple(mid).cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// All tuples as `(relation index, tuple)` pairs.
    pub fn all_tuples(&self) -> BTreeSet<(usize, Vec<Elem>)> {
        (0..self.relations.len())
            .flat_map(|r| self.tuples(r).map(move |t| (r, t.to_vec())))
            .collect()
    }

    fn degree_unchecked(&self, a: Elem) -> usize {
        self.relations.iter().map(|r| r.incident(a).len()).sum()
    }

    pub fn check_element(&self, a: Elem) -> Result<()> {
        if a == 0 || a > self.domain {
            Err(Error::ElementOutOfRange {
                element: a as u64,
                domain: self.domain,
            })
        } else {
            Ok(())
        }
    }

    /// Number of tuples over all relations that contain `a`.
    pub fn degree_of(&self, a: Elem) -> Result<usize> {
        self.check_element(a)?;
        Ok(self.degree_unchecked(a))
    }

    /// `deg(D)`, the maximum element degree (0 for the empty database).
    pub fn max_degree(&self) -> usize {
        (1..=self.domain)
            .map(|a| self.degree_unchecked(a))
            .max()
            .unwrap_or(0)
    }

    /// Distinct elements sharing a tuple with `a`, ascending.
    pub fn neighbors(&self, a: Elem) -> Vec<Elem> {
        let mut out: Vec<Elem> = (0..self.relations.len())
            .flat_map(|r| self.incident(r, a))
            .flatten()
            .copied()
            .filter(|&b| b != a)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn gaifman_graph(&self) -> SimpleGraph {
        SimpleGraph::from_adjacency((1..=self.domain).map(|a| self.neighbors(a)).collect())
    }

    /// `D[M]` relabeled by the order-preserving bijection `M -> [|M|]`.
    pub fn induced(&self, elements: &[Elem]) -> Result<Induced> {
        let mut original: Vec<Elem> = elements.to_vec();
        original.sort_unstable();
        original.dedup();
        for &e in &original {
            self.check_element(e)?;
        }
        let mut relabel = std::collections::HashMap::with_capacity(original.len());
        for (i, &e) in original.iter().enumerate() {
            relabel.insert(e, i as Elem + 1);
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in 0..self.relations.len() {
            let mut kept = BTreeSet::new();
            for &e in &original {
                for t in self.incident(rel, e) {
                    if let Some(mapped) = t
                        .iter()
                        .map(|x| relabel.get(x).copied())
                        .collect::<Option<Vec<_>>>()
                    {
                        kept.insert(mapped);
                    }
                }
            }
            relations.push(kept.into_iter().collect());
        }
        let db = Database::from_sorted(
            self.schema.clone(),
            self.degree_bound,
            original.len() as u32,
            relations,
        )?;
        Ok(Induced { db, original })
    }
}
