#![allow(dead_code)]

use bdrd_core::db::Database;
use bdrd_core::semilinear::{norm, LinearSet, SemilinearSet};
use rand::Rng;
use std::collections::BTreeSet;

/// Every point of `set` with norm at most `max`, by plain coefficient
/// enumeration.
pub fn brute_points(set: &SemilinearSet, max: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    for c in set.components() {
        let mut coeffs = vec![0u64; c.periods.len()];
        walk(c, 0, &mut coeffs, max, &mut out);
    }
    out
}

fn walk(c: &LinearSet, j: usize, coeffs: &mut Vec<u64>, max: u64, out: &mut BTreeSet<Vec<u64>>) {
    let p = c.point(coeffs);
    if norm(&p) > max {
        return;
    }
    if j == coeffs.len() {
        out.insert(p);
        return;
    }
    loop {
        walk(c, j + 1, coeffs, max, out);
        coeffs[j] += 1;
        if norm(&c.point(coeffs)) > max {
            break;
        }
    }
    coeffs[j] = 0;
}

fn random_vector(rng: &mut impl Rng, dim: usize, max_norm: u64, nonzero: bool) -> Vec<u64> {
    loop {
        let mut v = vec![0u64; dim];
        let target = rng.gen_range(0..=max_norm);
        for _ in 0..target {
            v[rng.gen_range(0..dim)] += 1;
        }
        if !nonzero || norm(&v) > 0 {
            return v;
        }
    }
}

/// Random set with dimension at most `max_c`, every component having fewer
/// than `max_k` periods and every base and period of norm at most `max_v`.
pub fn random_set(rng: &mut impl Rng, max_c: usize, max_k: u64, max_v: u64) -> SemilinearSet {
    let dim = rng.gen_range(1..=max_c);
    let comps = rng.gen_range(1..=3);
    let components = (0..comps)
        .map(|_| {
            let base = random_vector(rng, dim, max_v, false);
            let periods = (0..rng.gen_range(0..max_k))
                .map(|_| random_vector(rng, dim, max_v, true))
                .collect();
            LinearSet::new(base, periods).unwrap()
        })
        .collect();
    SemilinearSet::new(dim, components).unwrap()
}

/// Symmetric-E graphs: all labeled graphs on `n` vertices with graph degree
/// at most `max_degree`, declared with database degree bound `d`.
pub fn all_graphs(n: u32, max_degree: usize, d: usize) -> Vec<Database> {
    let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            let mut deg = vec![0usize; n as usize + 1];
            for &(a, b) in &edges {
                deg[a as usize] += 1;
                deg[b as usize] += 1;
            }
            (deg.iter().all(|&x| x <= max_degree)).then(|| Database::graph(n, d, &edges).unwrap())
        })
        .collect()
}

/// Bipartiteness by trying every 2-colouring.
pub fn brute_bipartite(db: &Database) -> bool {
    let n = db.domain_size();
    (0u64..1 << n).any(|colour| db.tuples(0).all(|t| (colour >> (t[0] - 1) & 1) != (colour >> (t[1] - 1) & 1)))
}
