//! Bounded-degree relational databases over the ordered domain `[n]`.

mod database;
mod format;
mod graph;
mod oracle;

pub use database::{Database, Induced};
pub use format::{parse_db, read_db, serialize_db, write_db};
pub use graph::SimpleGraph;
pub use oracle::{OracleHandle, QueryError};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Domain elements are `1..=n`.
pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation names with arities. The order fixes the
/// relation order of the file format and of canonical codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schema {
    relations: Vec<Relation>,
}

impl Schema {
    pub fn new<I, S>(relations: I) -> Result<Arc<Schema>>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let relations: Vec<Relation> = relations
            .into_iter()
            .map(|(name, arity)| Relation {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, rel) in relations.iter().enumerate() {
            if !is_identifier(&rel.name) {
                return Err(Error::Schema(format!("bad relation name `{}`", rel.name)));
            }
            if rel.arity == 0 {
                return Err(Error::Schema(format!("relation `{}` has arity 0", rel.name)));
            }
            if relations[..i].iter().any(|r| r.name == rel.name) {
                return Err(Error::Schema(format!("duplicate relation `{}`", rel.name)));
            }
        }
        Ok(Arc::new(Schema { relations }))
    }

    /// The graph schema `{E/2}`.
    pub fn graph() -> Arc<Schema> {
        Schema::new([("E", 2)]).expect("static schema")
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].arity
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rel) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", rel.name, rel.arity)?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// `deg(a)` of the free function form.
pub fn degree_of(db: &Database, a: Elem) -> Result<usize> {
    db.degree_of(a)
}

pub fn gaifman_graph(db: &Database) -> SimpleGraph {
    db.gaifman_graph()
}

pub fn induced_subdb(db: &Database, elements: &[Elem]) -> Result<Induced> {
    db.induced(elements)
}
