//! Semilinear set files:
//!
//! ```text
//! dim 2
//! registry matchings.reg
//! base 0 0
//! period 1 0
//! period 0 2
//! ```
//!
//! Every `base` line opens a component; the `period` lines after it belong to
//! that component. A file with no `base` line denotes the empty set.

use super::{LinearSet, SemilinearSet};
use crate::error::{Error, Result};
use crate::neighborhoods::TypeRegistry;
use std::fmt::Write as _;
use std::path::Path;

fn vector(line: usize, fields: &[&str], dim: usize) -> Result<Vec<u64>> {
    if fields.len() != dim {
        return Err(Error::parse(line, 1, format!("expected {dim} entries, found {}", fields.len())));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<u64>()
                .map_err(|_| Error::parse(line, 1, format!("expected a natural number, found `{f}`")))
        })
        .collect()
}

/// Parses a set; when `registry` is given its length must equal `dim`.
pub fn parse_semilinear(text: &str, registry: Option<&TypeRegistry>) -> Result<SemilinearSet> {
    let mut dim: Option<usize> = None;
    let mut registry_file = None;
    let mut components: Vec<LinearSet> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match (fields[0], dim) {
            ("dim", None) => {
                let d: usize = fields
                    .get(1)
                    .and_then(|f| f.parse().ok())
                    .filter(|&d| d > 0 && fields.len() == 2)
                    .ok_or_else(|| Error::parse(line, 1, "expected `dim <c>` with c >= 1"))?;
                dim = Some(d);
            }
            ("dim", Some(_)) => return Err(Error::parse(line, 1, "repeated `dim`")),
            (_, None) => return Err(Error::parse(line, 1, "expected `dim <c>` first")),
            ("registry", Some(_)) => {
                if fields.len() != 2 || registry_file.is_some() || !components.is_empty() {
                    return Err(Error::parse(line, 1, "expected one `registry <file>` before the components"));
                }
                registry_file = Some(fields[1].to_string());
            }
            ("base", Some(d)) => components.push(LinearSet {
                base: vector(line, &fields[1..], d)?,
                periods: Vec::new(),
            }),
            ("period", Some(d)) => {
                let p = vector(line, &fields[1..], d)?;
                if p.iter().all(|&x| x == 0) {
                    return Err(Error::parse(line, 1, "period with zero norm"));
                }
                components
                    .last_mut()
                    .ok_or_else(|| Error::parse(line, 1, "`period` before any `base`"))?
                    .periods
                    .push(p);
            }
            (other, _) => return Err(Error::parse(line, 1, format!("unknown keyword `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::parse(1, 1, "missing `dim`"))?;
    if let Some(reg) = registry {
        if reg.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: reg.len(),
            });
        }
    }
    let mut set = SemilinearSet::new(dim, components)?;
    set.registry_file = registry_file;
    Ok(set)
}

pub fn serialize_semilinear(set: &SemilinearSet) -> String {
    let mut out = format!("dim {}\n", set.dim());
    if let Some(reg) = &set.registry_file {
        let _ = writeln!(out, "registry {reg}");
    }
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    for c in set.components() {
        let _ = writeln!(out, "base {}", join(&c.base));
        for p in &c.periods {
            let _ = writeln!(out, "period {}", join(p));
        }
    }
    out
}

/// Reads a set file and, if it names one, the registry file next to it.
pub fn load_semilinear(path: &Path) -> Result<(SemilinearSet, Option<TypeRegistry>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let set = parse_semilinear(&text, None)?;
    let registry = match &set.registry_file {
        Some(file) => {
            let reg = TypeRegistry::read(&path.parent().unwrap_or(Path::new(".")).join(file))?;
            set.check_dim(reg.len())?;
            Some(reg)
        }
        None => None,
    };
    Ok((set, registry))
}
