use super::{Database, Elem, Schema};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("malformed query: element index {i} not in [1, {n}]")]
    ElementIndex { i: u64, n: u32 },
    #[error("malformed query: tuple index {j} not in [1, {d}]")]
    TupleIndex { j: usize, d: usize },
    #[error("malformed query: no relation with index {0}")]
    Relation(usize),
    #[error("malformed query: unknown relation `{0}`")]
    RelationName(String),
}

/// Read-only oracle access to a database.
///
/// Query `(R, i, j)` returns the `j`-th tuple of `R` (lexicographic order)
/// containing element `i`, or `None` when fewer than `j` such tuples exist.
/// Every well-formed query increments the counter by one; malformed queries
/// (`i` outside `[1, n]`, `j` outside `[1, d]`) are rejected without counting.
#[derive(Debug)]
pub struct OracleHandle<'a> {
    db: &'a Database,
    queries: u64,
}

impl<'a> OracleHandle<'a> {
    pub fn new(db: &'a Database) -> Self {
        OracleHandle { db, queries: 0 }
    }

    pub fn query(&mut self, rel: usize, i: Elem, j: usize) -> Result<Option<&'a [Elem]>, QueryError> {
        if rel >= self.db.schema().len() {
            return Err(QueryError::Relation(rel));
        }
        if i == 0 || i > self.db.domain_size() {
            return Err(QueryError::ElementIndex {
                i: i as u64,
                n: self.db.domain_size(),
            });
        }
        if j == 0 || j > self.db.degree_bound() {
            return Err(QueryError::TupleIndex {
                j,
                d: self.db.degree_bound(),
            });
        }
        self.queries += 1;
        Ok(self.db.incident_nth(rel, i, j))
    }

    pub fn query_named(&mut self, rel: &str, i: Elem, j: usize) -> Result<Option<&'a [Elem]>, QueryError> {
        let idx = self
            .db
            .schema()
            .index_of(rel)
            .ok_or_else(|| QueryError::RelationName(rel.to_string()))?;
        self.query(idx, i, j)
    }

    /// All tuples containing `i`, relation by relation, stopping each relation
    /// at the first empty answer.
    pub fn tuples_of(&mut self, i: Elem) -> Result<Vec<(usize, &'a [Elem])>, QueryError> {
        let mut out = Vec::new();
        for rel in 0..self.db.schema().len() {
            for j in 1..=self.db.degree_bound() {
                match self.query(rel, i, j)? {
                    Some(t) => out.push((rel, t)),
                    None => break,
                }
            }
        }
        Ok(out)
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn domain_size(&self) -> u32 {
        self.db.domain_size()
    }

    pub fn degree_bound(&self) -> usize {
        self.db.degree_bound()
    }

    pub fn schema(&self) -> &Arc<Schema> {
        self.db.schema()
    }

    /// Rebuilds the whole database by issuing every query `(R, i, j)` with
    /// `i <= n`, `j <= d`: exactly `n * d * |σ|` queries.
    pub fn materialize(&mut self) -> Result<Database, QueryError> {
        let schema = self.db.schema().clone();
        let mut relations = vec![Vec::new(); schema.len()];
        for i in 1..=self.db.domain_size() {
            for (rel, tuples) in relations.iter_mut().enumerate() {
                for j in 1..=self.db.degree_bound() {
                    if let Some(t) = self.query(rel, i, j)? {
                        tuples.push(t.to_vec());
                    }
                }
            }
        }
        Ok(Database::new(schema, self.db.degree_bound(), self.db.domain_size(), relations)
            .expect("oracle answers come from a valid database"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Database {
        Database::graph(3, 4, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn answers_follow_lexicographic_order() {
        let db = triangle();
        let mut o = OracleHandle::new(&db);
        assert_eq!(o.query_named("E", 1, 1).unwrap(), Some(&[1, 2][..]));
        // tuples containing 3: (1,3) (2,3) (3,1) (3,2)
        assert_eq!(o.query_named("E", 3, 1).unwrap(), Some(&[1, 3][..]));
        assert_eq!(o.query_named("E", 3, 4).unwrap(), Some(&[3, 2][..]));
        assert_eq!(o.queries(), 3);
    }

    #[test]
    fn malformed_queries_are_distinct_from_nothing() {
        let db = triangle();
        let mut o = OracleHandle::new(&db);
        assert_eq!(
            o.query_named("E", 1, 5),
            Err(QueryError::TupleIndex { j: 5, d: 4 })
        );
        assert!(matches!(o.query_named("E", 4, 1), Err(QueryError::ElementIndex { .. })));
        assert!(matches!(o.query_named("F", 1, 1), Err(QueryError::RelationName(_))));
        assert_eq!(o.queries(), 0);

        let path = Database::graph(3, 4, &[(1, 2), (2, 3)]).unwrap();
        let mut o = OracleHandle::new(&path);
        assert_eq!(o.query_named("E", 1, 3).unwrap(), None);
        assert_eq!(o.queries(), 1);
    }

    #[test]
    fn materialize_issues_all_queries() {
        let db = triangle();
        let mut o = OracleHandle::new(&db);
        assert_eq!(o.materialize().unwrap(), db);
        assert_eq!(o.queries(), 3 * 4);
    }
}
