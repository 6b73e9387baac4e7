//! Canonical codes for (optionally rooted) small databases.
//!
//! Codes come from an individualization-refinement search: colors are refined
//! by the multiset of colored tuples each element sits in, the first
//! non-singleton cell is split by individualizing each of its members in turn,
//! and every discrete leaf induces a labeling. The code is the smallest leaf
//! serialization. Refinement is isomorphism-invariant, so isomorphic inputs
//! explore the same set of leaf serializations.

use crate::db::{Database, Elem};
use std::fmt;
use std::sync::Arc;

/// Canonical byte string of a rooted isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeCode(Arc<[u8]>);

impl TypeCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(text: &str) -> Option<TypeCode> {
        let text = text.trim();
        if !text.len().is_multiple_of(2) {
            return None;
        }
        let bytes = (0..text.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(text.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        Some(TypeCode(bytes.into()))
    }

    pub(crate) fn from_bytes(bytes: Vec<u8>) -> TypeCode {
        TypeCode(bytes.into())
    }
}

impl fmt::Debug for TypeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeCode({})", self.to_hex())
    }
}

impl fmt::Display for TypeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Serialization of `db` under `label` (element `e` gets `label[e-1]`, 1-based):
/// element count, then per relation the tuple count and the sorted relabeled
/// tuples, all as big-endian `u32`.
pub(crate) fn encode(db: &Database, label: impl Fn(Elem) -> u32) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&db.domain_size().to_be_bytes());
    for rel in 0..db.schema().len() {
        let mut tuples: Vec<Vec<u32>> = db
            .tuples(rel)
            .map(|t| t.iter().map(|&e| label(e)).collect())
            .collect();
        tuples.sort_unstable();
        out.extend_from_slice(&(tuples.len() as u32).to_be_bytes());
        for t in tuples {
            for e in t {
                out.extend_from_slice(&e.to_be_bytes());
            }
        }
    }
    out
}

/// (previous color, sorted colored incident tuples, element index).
type Signature = (u32, Vec<(usize, Vec<u32>)>, usize);

struct Search<'a> {
    db: &'a Database,
    /// Per element (0-based): the (relation, tuple) pairs containing it.
    incidence: Vec<Vec<(usize, &'a [Elem])>>,
    best: Option<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn new(db: &'a Database) -> Self {
        let n = db.domain_size() as usize;
        let mut incidence = vec![Vec::new(); n];
        for rel in 0..db.schema().len() {
            for t in db.tuples(rel) {
                let mut seen: Vec<Elem> = t.to_vec();
                seen.sort_unstable();
                seen.dedup();
                for e in seen {
                    incidence[e as usize - 1].push((rel, t));
                }
            }
        }
        Search {
            db,
            incidence,
            best: None,
        }
    }

    /// Refines until the number of cells is stable; colors become ranks
    /// `0..cells` ordered by (previous color, signature).
    fn refine(&self, colors: &mut [u32]) {
        let mut cells = count_cells(colors);
        loop {
            let mut sigs: Vec<Signature> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| {
                    let me = x as Elem + 1;
                    let mut sig: Vec<(usize, Vec<u32>)> = self.incidence[x]
                        .iter()
                        .map(|&(rel, t)| {
                            let colored = t
                                .iter()
                                .map(|&e| if e == me { u32::MAX } else { colors[e as usize - 1] })
                                .collect();
                            (rel, colored)
                        })
                        .collect();
                    sig.sort_unstable();
                    (c, sig, x)
                })
                .collect();
            sigs.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            let mut rank = 0u32;
            for i in 0..sigs.len() {
                if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                    rank += 1;
                }
                colors[sigs[i].2] = rank;
            }
            let new_cells = if sigs.is_empty() { 0 } else { rank as usize + 1 };
            if new_cells == cells {
                return;
            }
            cells = new_cells;
        }
    }

    fn run(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let n = colors.len();
        if count_cells(&colors) == n {
            let code = encode(self.db, |e| colors[e as usize - 1] + 1);
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        }
        // first non-singleton cell by color
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).unwrap() as u32;
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            let child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| 2 * c + u32::from(c == target && x != v))
                .collect();
            self.run(child);
        }
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Canonical code of `db`, rooted at `root` when given (the root receives
/// label 1). Two inputs get equal codes iff they are isomorphic via a map
/// sending root to root.
pub fn canonical_form(db: &Database, root: Option<Elem>) -> TypeCode {
    let n = db.domain_size() as usize;
    let mut search = Search::new(db);
    let colors = (0..n)
        .map(|x| match root {
            Some(r) if x as Elem + 1 == r => 0,
            Some(_) => 1,
            None => 0,
        })
        .collect();
    search.run(colors);
    let mut bytes = vec![u8::from(root.is_some())];
    bytes.extend(search.best.unwrap_or_else(|| encode(db, |e| e)));
    TypeCode::from_bytes(bytes)
}

/// Exhaustive search for an isomorphism `d1 -> d2` (returned as the image of
/// each element, 1-based), optionally forced to send `fixed.0` to `fixed.1`.
/// Candidates are pruned by per-relation degree profiles.
pub fn find_isomorphism(d1: &Database, d2: &Database, fixed: Option<(Elem, Elem)>) -> Option<Vec<Elem>> {
    if d1.schema() != d2.schema() || d1.domain_size() != d2.domain_size() {
        return None;
    }
    let rels = d1.schema().len();
    if (0..rels).any(|r| d1.tuple_count(r) != d2.tuple_count(r)) {
        return None;
    }
    let n = d1.domain_size();
    let profile = |db: &Database, e: Elem| -> Vec<usize> { (0..rels).map(|r| db.incident(r, e).len()).collect() };
    let p1: Vec<Vec<usize>> = (1..=n).map(|e| profile(d1, e)).collect();
    let p2: Vec<Vec<usize>> = (1..=n).map(|e| profile(d2, e)).collect();

    #[allow(clippy::too_many_arguments)]
    fn extend(
        x: Elem,
        n: Elem,
        d1: &Database,
        d2: &Database,
        p1: &[Vec<usize>],
        p2: &[Vec<usize>],
        fixed: Option<(Elem, Elem)>,
        image: &mut Vec<Elem>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x > n {
            return true;
        }
        for y in 1..=n {
            if used[y as usize - 1] || p1[x as usize - 1] != p2[y as usize - 1] {
                continue;
            }
            match fixed {
                Some((a, b)) if (a == x) != (b == y) => continue,
                _ => {}
            }
            image[x as usize - 1] = y;
            let consistent = (0..d1.schema().len()).all(|r| {
                d1.incident(r, x).all(|t| {
                    if t.iter().any(|&e| e > x) {
                        return true;
                    }
                    let mapped: Vec<Elem> = t.iter().map(|&e| image[e as usize - 1]).collect();
                    d2.contains_tuple(r, &mapped)
                })
            });
            if consistent {
                used[y as usize - 1] = true;
                if extend(x + 1, n, d1, d2, p1, p2, fixed, image, used) {
                    return true;
                }
                used[y as usize - 1] = false;
            }
        }
        image[x as usize - 1] = 0;
        false
    }

    let mut image = vec![0; n as usize];
    let mut used = vec![false; n as usize];
    extend(1, n, d1, d2, &p1, &p2, fixed, &mut image, &mut used).then_some(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::Schema;

    fn path3() -> Database {
        Database::graph(3, 4, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn rooted_codes_separate_center_and_end() {
        let p = path3();
        assert_ne!(canonical_form(&p, Some(2)), canonical_form(&p, Some(1)));
        assert_eq!(canonical_form(&p, Some(1)), canonical_form(&p, Some(3)));
        assert_ne!(canonical_form(&p, None), canonical_form(&p, Some(1)));
    }

    #[test]
    fn hex_round_trip() {
        let code = canonical_form(&path3(), Some(2));
        assert_eq!(TypeCode::from_hex(&code.to_hex()), Some(code));
        assert_eq!(TypeCode::from_hex("abc"), None);
        assert_eq!(TypeCode::from_hex("zz"), None);
    }

    #[test]
    fn all_labelings_of_rooted_triangle_agree() {
        let schema = Schema::graph();
        let base = [(1u32, 2u32), (2, 3), (1, 3)];
        let perms = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let codes: Vec<TypeCode> = perms
            .iter()
            .map(|p| {
                let edges: Vec<(u32, u32)> = base.iter().map(|&(a, b)| (p[a as usize - 1], p[b as usize - 1])).collect();
                let db = Database::graph(3, 4, &edges).unwrap();
                canonical_form(&db, Some(p[0]))
            })
            .collect();
        assert!(codes.windows(2).all(|w| w[0] == w[1]));
        let _ = schema;
    }

    #[test]
    fn isomorphism_search_respects_root() {
        let p = path3();
        assert!(find_isomorphism(&p, &p, Some((2, 2))).is_some());
        assert!(find_isomorphism(&p, &p, Some((1, 3))).is_some());
        assert!(find_isomorphism(&p, &p, Some((2, 1))).is_none());
        let t = Database::graph(3, 4, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(find_isomorphism(&p, &t, None).is_none());
    }
}
