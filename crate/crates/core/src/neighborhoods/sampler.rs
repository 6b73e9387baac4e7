use super::ball::{ball_via_oracle, check_cap};
use super::canon::encode;
use super::{canonical_code, default_cap, DistributionVector, HistogramVector, TypeCode, TypeRegistry};
use crate::db::OracleHandle;
use crate::error::{Error, Result};
use crate::rational::{self};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Output of the frequency estimator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub registry: TypeRegistry,
    pub counts: HistogramVector,
    pub distribution: DistributionVector,
    pub samples: u64,
}

/// Samples `s` elements uniformly and independently from `[n]`, explores each
/// r-ball through oracle queries only and returns the sample type frequencies
/// over a fresh registry.
pub fn estimate_frequencies(
    oracle: &mut OracleHandle<'_>,
    n: u32,
    r: u32,
    s: u64,
    seed: u64,
) -> Result<Estimate> {
    let mut registry = TypeRegistry::new();
    let counts = estimate_frequencies_into(oracle, n, r, s, seed, &mut registry)?;
    let distribution = distribution_of_sample(&counts, s);
    Ok(Estimate {
        registry,
        counts,
        distribution,
        samples: s,
    })
}

/// Like [`estimate_frequencies`] but registers types into an existing registry,
/// so the counts are already aligned with it. Returns the raw sample counts.
///
/// Queries made are at most `s * cap * d * |σ|` where `cap` is the default
/// ball-size cap.
pub fn estimate_frequencies_into(
    oracle: &mut OracleHandle<'_>,
    n: u32,
    r: u32,
    s: u64,
    seed: u64,
    registry: &mut TypeRegistry,
) -> Result<HistogramVector> {
    if s == 0 {
        return Err(Error::Precondition("sample size must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::EmptyDatabase);
    }
    let cap = default_cap(oracle.schema().max_arity(), oracle.degree_bound(), r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Balls with equal order-preserving encodings share a type; skip the search.
    let mut seen: HashMap<Vec<u8>, TypeCode> = HashMap::new();
    let mut counts = vec![0u64; registry.len()];
    for _ in 0..s {
        let a = rng.gen_range(1..=n);
        let b = ball_via_oracle(oracle, a, r)?;
        check_cap(&b, cap)?;
        let mut raw = b.center.to_be_bytes().to_vec();
        raw.extend(encode(&b.db, |e| e));
        let code = match seen.get(&raw) {
            Some(code) => code.clone(),
            None => {
                let code = canonical_code(&b)?;
                seen.insert(raw, code.clone());
                code
            }
        };
        let i = registry.register(code);
        if i >= counts.len() {
            counts.resize(i + 1, 0);
        }
        counts[i] += 1;
    }
    counts.resize(registry.len(), 0);
    Ok(HistogramVector { counts })
}

pub fn distribution_of_sample(counts: &HistogramVector, s: u64) -> DistributionVector {
    let s = rational::from_u64(s);
    DistributionVector {
        values: counts.counts.iter().map(|&c| rational::from_u64(c) / &s).collect(),
    }
}
