//! Text format, one database per file:
//!
//! ```text
//! schema E:2 R:3
//! degree_bound 4
//! domain 3
//! rel E
//! 1 2
//! 2 1
//! rel R
//! ```
//!
//! Canonical form lists every relation in schema order with its tuples sorted.
//! Blank lines and lines starting with `#` are ignored by the parser.

use super::{Database, Elem, Schema};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

pub fn serialize_db(db: &Database) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "schema {}", db.schema());
    let _ = writeln!(out, "degree_bound {}", db.degree_bound());
    let _ = writeln!(out, "domain {}", db.domain_size());
    for (r, rel) in db.schema().relations().iter().enumerate() {
        let _ = writeln!(out, "rel {}", rel.name);
        for t in db.tuples(r) {
            let mut first = true;
            for e in t {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{e}");
            }
            out.push('\n');
        }
    }
    out
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Whitespace-separated fields with their 1-based columns.
    fn fields(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::parse(self.number, column, message)
    }
}

fn header<'a>(lines: &mut impl Iterator<Item = Line<'a>>, key: &str, last: usize) -> Result<(Line<'a>, Vec<(usize, &'a str)>)> {
    let line = lines
        .next()
        .ok_or_else(|| Error::parse(last + 1, 1, format!("missing `{key}` header")))?;
    let fields = line.fields();
    if fields.first().map(|f| f.1) != Some(key) {
        return Err(line.err(1, format!("expected `{key}` header")));
    }
    Ok((line, fields))
}

fn parse_number<T: std::str::FromStr>(line: &Line<'_>, field: (usize, &str), what: &str) -> Result<T> {
    field
        .1
        .parse()
        .map_err(|_| line.err(field.0, format!("expected {what}, found `{}`", field.1)))
}

pub fn parse_db(text: &str) -> Result<Database> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, t)| Line { number: i + 1, text: t })
        .filter(|l| {
            let t = l.text.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (line, fields) = header(&mut lines, "schema", 0)?;
    let mut rels = Vec::new();
    for &(col, spec) in &fields[1..] {
        let (name, arity) = spec
            .split_once(':')
            .ok_or_else(|| line.err(col, format!("expected name:arity, found `{spec}`")))?;
        let arity: usize = arity
            .parse()
            .map_err(|_| line.err(col, format!("bad arity in `{spec}`")))?;
        rels.push((name.to_string(), arity));
    }
    let schema = Schema::new(rels).map_err(|e| line.err(1, e.to_string()))?;
    let schema_line = line.number;

    let (line, fields) = header(&mut lines, "degree_bound", schema_line)?;
    if fields.len() != 2 {
        return Err(line.err(1, "expected `degree_bound <d>`"));
    }
    let degree_bound: usize = parse_number(&line, fields[1], "a degree bound")?;

    let (line, fields) = header(&mut lines, "domain", line.number)?;
    if fields.len() != 2 {
        return Err(line.err(1, "expected `domain <n>`"));
    }
    let domain: u32 = parse_number(&line, fields[1], "a domain size")?;

    let mut relations: Vec<Vec<Vec<Elem>>> = vec![Vec::new(); schema.len()];
    let mut degree = vec![0usize; domain as usize + 1];
    let mut current: Option<usize> = None;
    let mut next_rel = 0usize;
    for line in lines {
        let fields = line.fields();
        if fields[0].1 == "rel" {
            if fields.len() != 2 {
                return Err(line.err(1, "expected `rel <name>`"));
            }
            let (col, name) = fields[1];
            let idx = schema
                .index_of(name)
                .ok_or_else(|| line.err(col, format!("unknown relation `{name}`")))?;
            if idx < next_rel {
                return Err(line.err(col, format!("relation `{name}` out of schema order or repeated")));
            }
            current = Some(idx);
            next_rel = idx + 1;
            continue;
        }
        let rel = current.ok_or_else(|| line.err(1, "tuple before any `rel` line"))?;
        let arity = schema.arity(rel);
        if fields.len() != arity {
            return Err(line.err(
                1,
                format!("relation `{}` has arity {arity}, found {} values", schema.relations()[rel].name, fields.len()),
            ));
        }
        let mut tuple = Vec::with_capacity(arity);
        for &field in &fields {
            let e: u64 = parse_number(&line, field, "an element")?;
            if e == 0 || e > domain as u64 {
                return Err(line.err(field.0, format!("element {e} outside the domain [1, {domain}]")));
            }
            tuple.push(e as Elem);
        }
        if let Some(prev) = relations[rel].last() {
            if *prev >= tuple {
                return Err(line.err(1, "tuples must be strictly increasing in lexicographic order"));
            }
        }
        let mut distinct = tuple.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for e in distinct {
            degree[e as usize] += 1;
            if degree[e as usize] > degree_bound {
                return Err(line.err(
                    1,
                    format!("element {e} exceeds the degree bound {degree_bound}"),
                ));
            }
        }
        relations[rel].push(tuple);
    }
    Database::from_sorted(schema, degree_bound, domain, relations)
}

pub fn read_db(path: &Path) -> Result<Database> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_db(&text)
}

pub fn write_db(path: &Path, db: &Database) -> Result<()> {
    std::fs::write(path, serialize_db(db)).map_err(|e| Error::io(path, e))
}
