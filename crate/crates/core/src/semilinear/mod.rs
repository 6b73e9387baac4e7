//! Linear and semilinear subsets of `ℕ^c`, used to describe the set of
//! histograms a property can realize.

mod format;
mod rounding;
mod search;

pub use format::{load_semilinear, parse_semilinear, serialize_semilinear};
pub use rounding::{
    alon_bound, round_to_target_size, size_window, small_representative, target_size, Rounded,
};
pub use search::{contains, enumerate_norm_range, min_distribution_distance, Membership, NearestHistogram};

use crate::error::{Error, Result};

pub fn norm(v: &[u64]) -> u64 {
    v.iter().sum()
}

/// `{ base + a_1 p_1 + ... + a_k p_k : a_j ∈ ℕ }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    pub base: Vec<u64>,
    pub periods: Vec<Vec<u64>>,
}

impl LinearSet {
    pub fn new(base: Vec<u64>, periods: Vec<Vec<u64>>) -> Result<Self> {
        let set = LinearSet { base, periods };
        set.validate(set.base.len())?;
        Ok(set)
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.base.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: self.base.len(),
            });
        }
        for p in &self.periods {
            if p.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: p.len(),
                });
            }
            if norm(p) == 0 {
                return Err(Error::InvalidSemilinear("period with zero norm".into()));
            }
        }
        Ok(())
    }

    /// `base + Σ coeffs[j] * periods[j]`.
    pub fn point(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut out = self.base.clone();
        for (p, &a) in self.periods.iter().zip(coeffs) {
            for (o, &x) in out.iter_mut().zip(p) {
                *o += a * x;
            }
        }
        out
    }
}

/// A finite union of linear sets over a shared coordinate space. The union
/// may be empty; components may overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearSet {
    dim: usize,
    components: Vec<LinearSet>,
    /// Registry file pinning coordinate meaning, as written in the set's file.
    pub registry_file: Option<String>,
}

impl SemilinearSet {
    pub fn new(dim: usize, components: Vec<LinearSet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSemilinear("coordinate space is empty".into()));
        }
        for c in &components {
            c.validate(dim)?;
        }
        Ok(SemilinearSet {
            dim,
            components,
            registry_file: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `k = max_i k_i + 1` (1 for the empty set).
    pub fn k(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.periods.len() as u64)
            .max()
            .unwrap_or(0)
            + 1
    }

    /// `v`, the largest norm among all bases and periods (0 for the empty set).
    pub fn v(&self) -> u64 {
        self.components
            .iter()
            .flat_map(|c| std::iter::once(&c.base).chain(&c.periods))
            .map(|x| norm(x))
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            Err(Error::Dimension {
                expected: self.dim,
                found,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_scalars() {
        let s = SemilinearSet::new(
            2,
            vec![
                LinearSet::new(vec![1, 0], vec![vec![3, 0]]).unwrap(),
                LinearSet::new(vec![0, 0], vec![vec![1, 1], vec![0, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s.k(), 3);
        assert_eq!(s.v(), 3);
        assert_eq!(s.components()[1].point(&[2, 1]), vec![2, 4]);
    }

    #[test]
    fn rejects_zero_period_and_mismatch() {
        assert!(LinearSet::new(vec![0], vec![vec![0]]).is_err());
        assert!(LinearSet::new(vec![0, 1], vec![vec![1]]).is_err());
        let lin = LinearSet::new(vec![0], vec![vec![1]]).unwrap();
        assert!(SemilinearSet::new(2, vec![lin]).is_err());
        assert!(SemilinearSet::new(0, vec![]).is_err());
        let empty = SemilinearSet::new(3, vec![]).unwrap();
        assert_eq!((empty.k(), empty.v()), (1, 0));
    }
}
