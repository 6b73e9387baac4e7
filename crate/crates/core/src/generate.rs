//! Deterministic fixture generators. Graphs are encoded as a symmetric
//! binary relation `E`, so the declared degree bound is twice the largest
//! graph degree the family can have.

use crate::db::{Database, Elem};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `t` vertex-disjoint triangles.
    DisjointTriangles { t: u32 },
    /// `edges` disjoint edges followed by `isolated` isolated vertices.
    Matchings { edges: u32, isolated: u32 },
    Cycle { n: u32 },
    Path { n: u32 },
    Grid { rows: u32, cols: u32 },
    /// The grid with its last (bottom-right) vertex removed.
    GridMinusCorner { rows: u32, cols: u32 },
    /// Random simple graph on `n` vertices with graph degree at most `degree`.
    RandomBoundedDegree { n: u32, degree: u32 },
    /// `triangles` triangles followed by `paths` paths on four vertices.
    Mixed { triangles: u32, paths: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec { family, seed: 0 }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorSpec { seed, ..self }
    }
}

/// Edges of the `rows × cols` grid, vertices numbered row by row from 1.
pub fn grid_edges(rows: u32, cols: u32) -> Vec<(Elem, Elem)> {
    let id = |i: u32, j: u32| i * cols + j + 1;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    edges
}

fn path_edges(offset: u32, len: u32) -> impl Iterator<Item = (Elem, Elem)> {
    (1..len).map(move |i| (offset + i, offset + i + 1))
}

fn triangle_edges(t: u32) -> impl Iterator<Item = (Elem, Elem)> {
    (0..t).flat_map(|i| {
        let b = 3 * i;
        [(b + 1, b + 2), (b + 2, b + 3), (b + 1, b + 3)]
    })
}

pub fn generate(spec: &GeneratorSpec) -> Result<Database> {
    match spec.family {
        Family::DisjointTriangles { t } => Database::graph(3 * t, 4, &triangle_edges(t).collect::<Vec<_>>()),
        Family::Matchings { edges, isolated } => {
            let e: Vec<_> = (0..edges).map(|i| (2 * i + 1, 2 * i + 2)).collect();
            Database::graph(2 * edges + isolated, 2, &e)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::Precondition("a cycle needs at least 3 vertices".into()));
            }
            let e: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
            Database::graph(n, 4, &e)
        }
        Family::Path { n } => Database::graph(n, 4, &path_edges(0, n).collect::<Vec<_>>()),
        Family::Grid { rows, cols } => Database::graph(rows * cols, 8, &grid_edges(rows, cols)),
        Family::GridMinusCorner { rows, cols } => {
            let n = rows * cols;
            if n == 0 {
                return Err(Error::Precondition("grid has no corner to remove".into()));
            }
            let e: Vec<_> = grid_edges(rows, cols).into_iter().filter(|&(a, b)| a != n && b != n).collect();
            Database::graph(n - 1, 8, &e)
        }
        Family::RandomBoundedDegree { n, degree } => random_bounded_degree(n, degree, spec.seed),
        Family::Mixed { triangles, paths } => {
            let base = 3 * triangles;
            let e: Vec<_> = triangle_edges(triangles)
                .chain((0..paths).flat_map(|p| path_edges(base + 4 * p, 4)))
                .collect();
            Database::graph(base + 4 * paths, 4, &e)
        }
    }
}

fn random_bounded_degree(n: u32, degree: u32, seed: u64) -> Result<Database> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0u32; n as usize + 1];
    let mut edges = BTreeSet::new();
    if n >= 2 {
        for _ in 0..(n as u64 * degree as u64) {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            let (a, b) = (a.min(b), a.max(b));
            if a == b || deg[a as usize] >= degree || deg[b as usize] >= degree || !edges.insert((a, b)) {
                continue;
            }
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
    }
    Database::graph(n, 2 * degree as usize, &edges.into_iter().collect::<Vec<_>>())
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::DisjointTriangles { t } => write!(f, "disjoint-triangles:{t}"),
            Family::Matchings { edges, isolated } => write!(f, "matchings:{edges},{isolated}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            Family::GridMinusCorner { rows, cols } => write!(f, "grid-minus-corner:{rows}x{cols}"),
            Family::RandomBoundedDegree { n, degree } => write!(f, "random-bounded-degree:{n},{degree}"),
            Family::Mixed { triangles, paths } => write!(f, "mixed:{triangles},{paths}"),
        }
    }
}

/// `family:args`, e.g. `cycle:100`, `grid:3x3`, `matchings:5,2`,
/// `random-bounded-degree:50,4`, `mixed:2000,1000`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("cannot read generator `{text}`"));
        let (name, args) = text.split_once(':').ok_or_else(bad)?;
        let nums = |sep: char| -> Result<Vec<u32>> {
            args.split(sep).map(|a| a.trim().parse::<u32>().map_err(|_| bad())).collect()
        };
        let one = || -> Result<u32> {
            match nums(',')?.as_slice() {
                [a] => Ok(*a),
                _ => Err(bad()),
            }
        };
        let two = |sep: char| -> Result<(u32, u32)> {
            match nums(sep)?.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(bad()),
            }
        };
        Ok(match name {
            "disjoint-triangles" | "triangles" => Family::DisjointTriangles { t: one()? },
            "matchings" => match nums(',')?.as_slice() {
                [e] => Family::Matchings { edges: *e, isolated: 0 },
                [e, i] => Family::Matchings { edges: *e, isolated: *i },
                _ => return Err(bad()),
            },
            "cycle" => Family::Cycle { n: one()? },
            "path" => Family::Path { n: one()? },
            "grid" => {
                let (rows, cols) = two('x')?;
                Family::Grid { rows, cols }
            }
            "grid-minus-corner" => {
                let (rows, cols) = two('x')?;
                Family::GridMinusCorner { rows, cols }
            }
            "random-bounded-degree" | "random" => {
                let (n, degree) = two(',')?;
                Family::RandomBoundedDegree { n, degree }
            }
            "mixed" => {
                let (triangles, paths) = two(',')?;
                Family::Mixed { triangles, paths }
            }
            _ => return Err(bad()),
        })
    }
}
