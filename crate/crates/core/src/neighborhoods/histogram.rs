use super::{ball, canonical_code_capped, default_cap, TypeCode, TypeRegistry};
use crate::db::Database;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rational::{self, Rational};
use num::Zero;

/// Per-type element counts, indexed by registry position. Positions past the
/// end of `counts` are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HistogramVector {
    pub counts: Vec<u64>,
}

impl HistogramVector {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    /// Zero-extended to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u64> {
        let mut out = self.counts.clone();
        if out.len() < len {
            out.resize(len, 0);
        }
        out
    }
}

/// Per-type frequencies as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistributionVector {
    pub values: Vec<Rational>,
}

impl DistributionVector {
    pub fn padded(&self, len: usize) -> Vec<Rational> {
        let mut out = self.values.clone();
        if out.len() < len {
            out.resize(len, Rational::zero());
        }
        out
    }
}

/// Codes of every element's r-ball, in element order.
pub fn type_codes(db: &Database, r: u32, exec: Exec) -> Result<Vec<TypeCode>> {
    let cap = default_cap(db.schema().max_arity(), db.degree_bound(), r);
    let n = db.domain_size() as usize;
    exec.map_indices(n, |i| {
        let b = ball(db, i as u32 + 1, r)?;
        canonical_code_capped(&b, cap)
    })
    .into_iter()
    .collect()
}

/// `h_r(D)`: registers each element's type in element order and counts it.
pub fn histogram(db: &Database, r: u32, registry: &mut TypeRegistry) -> Result<HistogramVector> {
    histogram_with(db, r, registry, Exec::default())
}

pub fn histogram_with(db: &Database, r: u32, registry: &mut TypeRegistry, exec: Exec) -> Result<HistogramVector> {
    let codes = type_codes(db, r, exec)?;
    let mut counts = vec![0u64; registry.len()];
    for code in codes {
        let i = registry.register(code);
        if i >= counts.len() {
            counts.resize(i + 1, 0);
        }
        counts[i] += 1;
    }
    counts.resize(registry.len(), 0);
    Ok(HistogramVector { counts })
}

/// `dv = h / n`, exactly.
pub fn distribution(h: &HistogramVector) -> Result<DistributionVector> {
    let n = h.total();
    if n == 0 {
        return Err(Error::EmptyDatabase);
    }
    let n = rational::from_u64(n);
    Ok(DistributionVector {
        values: h.counts.iter().map(|&c| rational::from_u64(c) / &n).collect(),
    })
}

/// Re-expresses two vectors over the union of their registries (the first
/// registry's order, then unseen codes of the second), zero-filling.
pub fn align<T: Clone + Zero>(
    v1: &[T],
    reg1: &TypeRegistry,
    v2: &[T],
    reg2: &TypeRegistry,
) -> (TypeRegistry, Vec<T>, Vec<T>) {
    let mut merged = reg1.clone();
    for code in reg2.codes() {
        merged.register(code.clone());
    }
    let mut a = vec![T::zero(); merged.len()];
    for (i, x) in v1.iter().enumerate().take(reg1.len()) {
        a[i] = x.clone();
    }
    let mut b = vec![T::zero(); merged.len()];
    for (code, x) in reg2.codes().iter().zip(v2) {
        b[merged.lookup(code).unwrap()] = x.clone();
    }
    (merged, a, b)
}

/// `‖a − b‖₁` with the shorter vector zero-extended.
pub fn l1_distance(a: &[Rational], b: &[Rational]) -> Rational {
    let len = a.len().max(b.len());
    let zero = Rational::zero();
    (0..len)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            num::abs(x - y)
        })
        .fold(Rational::zero(), |acc, d| acc + d)
}
