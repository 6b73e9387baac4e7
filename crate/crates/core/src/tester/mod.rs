//! Tester parameters and the constant-query ε-tester.

mod property;

pub use property::{is_simple_graph, Decider, PropertySpec, RadiusHistograms};

use crate::db::{Database, OracleHandle};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::neighborhoods::{default_cap, estimate_frequencies_into, histogram_with};
use crate::rational::{self, from_u64, int, Rational};
use crate::semilinear::{min_distribution_distance, size_window, target_size, NearestHistogram, SemilinearSet};
use num::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

type RadiusFn = Arc<dyn Fn(&Rational) -> u32 + Send + Sync>;
type LambdaFn = Arc<dyn Fn(&Rational) -> Rational + Send + Sync>;

/// Locality radius and proximity constant of a property class, as functions
/// of ε. These cannot be computed from the property itself, so they are
/// supplied as configuration together with a note on where they came from.
#[derive(Clone)]
pub struct LocalityProfile {
    radius: RadiusFn,
    lambda: LambdaFn,
    provenance: String,
}

impl fmt::Debug for LocalityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalityProfile").field("provenance", &self.provenance).finish_non_exhaustive()
    }
}

impl LocalityProfile {
    pub fn constant(radius: u32, lambda: Rational, provenance: &str) -> Self {
        LocalityProfile {
            radius: Arc::new(move |_| radius),
            lambda: Arc::new(move |_| lambda.clone()),
            provenance: provenance.to_string(),
        }
    }

    pub fn custom(
        radius: impl Fn(&Rational) -> u32 + Send + Sync + 'static,
        lambda: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
        provenance: &str,
    ) -> Self {
        LocalityProfile {
            radius: Arc::new(radius),
            lambda: Arc::new(lambda),
            provenance: provenance.to_string(),
        }
    }

    pub fn radius(&self, epsilon: &Rational) -> u32 {
        (self.radius)(epsilon)
    }

    pub fn lambda(&self, epsilon: &Rational) -> Rational {
        (self.lambda)(epsilon)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

/// How the profile is turned into `(r, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `r = r(ε/4)` and `λ = ε·λ(ε/4)/(1 + d^(r+1))`. Accepted on the
    /// command line as `paper` or `derived`.
    #[serde(rename = "paper")]
    Derived,
    /// `r = r(ε)` and `λ = λ(ε)`, taken directly from the profile.
    #[default]
    Calibrated,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "derived" => Ok(Mode::Derived),
            "calibrated" => Ok(Mode::Calibrated),
            _ => Err(Error::Params(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Derived => "paper",
            Mode::Calibrated => "calibrated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TesterParams {
    pub epsilon: Rational,
    pub d: usize,
    pub mode: Mode,
    pub r: u32,
    pub lambda: Rational,
    /// Dimension of the histogram set at radius `r`.
    pub c: u64,
    pub k: u64,
    pub v: u64,
    /// Acceptance threshold `λ/(3c)`.
    pub f: Rational,
    /// Estimation accuracy `λ/(6c)`.
    pub mu: Rational,
    pub n0: Rational,
    pub n_min: u64,
    pub n_max: u64,
    /// Number of sampled elements.
    pub s: u64,
}

impl TesterParams {
    /// Largest number of oracle queries one tester run can make on a database
    /// over a schema with `relations` relations of maximum arity `max_arity`.
    pub fn query_bound(&self, relations: usize, max_arity: usize) -> u64 {
        let per_element = (self.d * relations) as u64;
        let cap = default_cap(max_arity, self.d, self.r) as u64;
        (self.s.saturating_mul(cap).saturating_mul(per_element)).max(self.n_max * per_element)
    }
}

/// `⌈c²/μ² · ln(20c)⌉`. The logarithm is evaluated in `f64`; the rational
/// factor is exact.
pub fn sample_size(c: u64, mu: &Rational) -> u64 {
    let factor = from_u64(c * c) / (mu * mu);
    (rational::to_f64(&factor) * (20.0 * c as f64).ln()).ceil() as u64
}

pub fn derive_params(epsilon: &Rational, d: usize, property: &PropertySpec, mode: Mode) -> Result<TesterParams> {
    if !epsilon.is_positive() || epsilon > &int(1) {
        return Err(Error::Params(format!("ε must lie in (0, 1], got {}", rational::display(epsilon))));
    }
    let profile = &property.profile;
    let (r, lambda) = match mode {
        Mode::Calibrated => (profile.radius(epsilon), profile.lambda(epsilon)),
        Mode::Derived => {
            let quarter = epsilon / int(4);
            let r = profile.radius(&quarter);
            let pow = num::pow(num::BigInt::from(d), r as usize + 1);
            let denom = Rational::from_integer(pow + 1);
            (r, epsilon * profile.lambda(&quarter) / denom)
        }
    };
    if !lambda.is_positive() || lambda > Rational::one() {
        return Err(Error::Params(format!("λ = {} is outside (0, 1]", rational::display(&lambda))));
    }
    params_for_set(epsilon, d, mode, r, lambda, &property.histograms_at(r)?.set)
}

pub(crate) fn params_for_set(
    epsilon: &Rational,
    d: usize,
    mode: Mode,
    r: u32,
    lambda: Rational,
    set: &SemilinearSet,
) -> Result<TesterParams> {
    if set.is_empty() {
        return Err(Error::Params("the histogram set is empty; no size window exists".into()));
    }
    let (c, k, v) = (set.dim() as u64, set.k(), set.v());
    let f = &lambda / from_u64(3 * c);
    let mu = &lambda / from_u64(6 * c);
    let n0 = target_size(c, k, v, &(&f - &mu));
    let (n_min, n_max) = size_window(&n0, k * v);
    if n_min <= num::BigInt::zero() {
        return Err(Error::Params(format!("n_min = {n_min} is not positive")));
    }
    let too_big = || Error::Params("size window does not fit in 64 bits".into());
    Ok(TesterParams {
        epsilon: epsilon.clone(),
        d,
        mode,
        r,
        s: sample_size(c, &mu),
        c,
        k,
        v,
        n_min: rational::to_u64(&n_min).ok_or_else(too_big)?,
        n_max: rational::to_u64(&n_max).ok_or_else(too_big)?,
        lambda,
        f,
        mu,
        n0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// The whole database was read and decided exactly.
    FullCheck,
    /// Type frequencies were estimated from a sample.
    Sampled,
    /// The exact type distribution stood in for the sample.
    Injected,
    /// Accepted on size alone.
    Threshold,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::FullCheck => "full-check",
            Branch::Sampled => "sampled",
            Branch::Injected => "injected",
            Branch::Threshold => "threshold",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub accept: bool,
    pub branch: Branch,
    pub queries: u64,
    pub seed: u64,
    /// Type distribution the decision was based on, over the property's
    /// registry followed by any types it does not list.
    pub estimate: Option<Vec<Rational>>,
    /// Closest in-range member, if any.
    pub nearest: Option<NearestHistogram>,
}

impl Verdict {
    pub fn l1_min(&self) -> Option<&Rational> {
        self.nearest.as_ref().map(|n| &n.distance)
    }
}

/// Accept iff some member with norm in `[n_min, n_max]` is within `f` of `v`.
pub fn decide_distribution(
    set: &SemilinearSet,
    v: &[Rational],
    n_min: u64,
    n_max: u64,
    f: &Rational,
) -> Result<(bool, Option<NearestHistogram>)> {
    let nearest = min_distribution_distance(set, v, n_min, n_max)?;
    let accept = nearest.as_ref().is_some_and(|h| &h.distance <= f);
    Ok((accept, nearest))
}

fn full_check(oracle: &mut OracleHandle<'_>, property: &PropertySpec, seed: u64) -> Result<Verdict> {
    let db = oracle.materialize()?;
    Ok(Verdict {
        accept: property.decider.decide(&db),
        branch: Branch::FullCheck,
        queries: oracle.queries(),
        seed,
        estimate: None,
        nearest: None,
    })
}

fn check_size(oracle: &OracleHandle<'_>, n: u32) -> Result<()> {
    if oracle.domain_size() != n {
        return Err(Error::Precondition(format!(
            "n = {n} but the oracle's domain has {} elements",
            oracle.domain_size()
        )));
    }
    Ok(())
}

/// The ε-tester: read everything when `n ≤ n_max`, otherwise estimate the
/// r-type distribution from `s` sampled balls and compare it against the
/// property's in-range histograms.
pub fn epsilon_tester(
    oracle: &mut OracleHandle<'_>,
    n: u32,
    params: &TesterParams,
    property: &PropertySpec,
    seed: u64,
) -> Result<Verdict> {
    check_size(oracle, n)?;
    if n as u64 <= params.n_max {
        return full_check(oracle, property, seed);
    }
    let hist = property.histograms_at(params.r)?;
    let mut registry = hist.registry.clone();
    let counts = estimate_frequencies_into(oracle, n, params.r, params.s, seed, &mut registry)?;
    let s = from_u64(params.s);
    let estimate: Vec<Rational> = counts.padded(registry.len()).iter().map(|&x| from_u64(x) / &s).collect();
    let (accept, nearest) = decide_distribution(&hist.set, &estimate, params.n_min, params.n_max, &params.f)?;
    Ok(Verdict {
        accept,
        branch: Branch::Sampled,
        queries: oracle.queries(),
        seed,
        estimate: Some(estimate),
        nearest,
    })
}

/// [`epsilon_tester`] with the exact type distribution of `db` in place of
/// the sample, which makes the large-input branch deterministic.
pub fn epsilon_tester_exact(db: &Database, params: &TesterParams, property: &PropertySpec, exec: Exec) -> Result<Verdict> {
    let n = db.domain_size();
    if n as u64 <= params.n_max {
        return full_check(&mut OracleHandle::new(db), property, 0);
    }
    let hist = property.histograms_at(params.r)?;
    let mut registry = hist.registry.clone();
    let counts = histogram_with(db, params.r, &mut registry, exec)?;
    let total = from_u64(n as u64);
    let estimate: Vec<Rational> = counts.padded(registry.len()).iter().map(|&x| from_u64(x) / &total).collect();
    let (accept, nearest) = decide_distribution(&hist.set, &estimate, params.n_min, params.n_max, &params.f)?;
    Ok(Verdict {
        accept,
        branch: Branch::Injected,
        queries: 0,
        seed: 0,
        estimate: Some(estimate),
        nearest,
    })
}

/// Smallest `n` with `n ≥ 1/(εd)`.
pub fn bip_or_odd_threshold(epsilon: &Rational, d: usize) -> Result<u64> {
    if !epsilon.is_positive() || d == 0 {
        return Err(Error::Params("need ε > 0 and d ≥ 1".into()));
    }
    let t = rational::ceil(&(Rational::one() / (epsilon * from_u64(d as u64))));
    rational::to_u64(&t).ok_or_else(|| Error::Params("threshold does not fit in 64 bits".into()))
}

/// Tester for "bipartite or odd order" in the tuple-edit model: large inputs
/// are accepted outright, small ones are read and decided exactly.
pub fn trivial_tester_bip_or_odd(oracle: &mut OracleHandle<'_>, n: u32, epsilon: &Rational) -> Result<Verdict> {
    check_size(oracle, n)?;
    if n as u64 >= bip_or_odd_threshold(epsilon, oracle.degree_bound())? {
        return Ok(Verdict {
            accept: true,
            branch: Branch::Threshold,
            queries: oracle.queries(),
            seed: 0,
            estimate: None,
            nearest: None,
        });
    }
    let spec = PropertySpec::builtin("bip-or-odd").expect("built-in");
    full_check(oracle, &spec, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::semilinear::LinearSet;

    fn with_lambda(lambda: Rational, set: SemilinearSet) -> PropertySpec {
        let mut p = PropertySpec::builtin("disjoint-triangles").unwrap();
        p.profile = LocalityProfile::constant(1, lambda, "test");
        p.histograms.get_mut(&1).unwrap().set = set;
        p
    }

    fn two_three() -> SemilinearSet {
        // c = 2, k = 2, v = 3
        SemilinearSet::new(2, vec![LinearSet::new(vec![1, 2], vec![vec![0, 1]]).unwrap()]).unwrap()
    }

    #[test]
    fn worked_parameter_example() {
        let p = with_lambda(ratio(3, 10), two_three());
        let t = derive_params(&ratio(1, 10), 4, &p, Mode::Calibrated).unwrap();
        assert_eq!((t.c, t.k, t.v), (2, 2, 3));
        assert_eq!(t.f, ratio(1, 20));
        assert_eq!(t.mu, ratio(1, 40));
        assert_eq!(t.n0, int(8646));
        assert_eq!((t.n_min, t.n_max), (8640, 8652));
        // 6400 · ln 40 = 23608.76...
        assert_eq!(t.s, 23609);
    }

    #[test]
    fn builtin_calibrated_params() {
        let p = PropertySpec::builtin("disjoint-triangles").unwrap();
        let t = derive_params(&ratio(1, 20), 4, &p, Mode::Calibrated).unwrap();
        assert_eq!((t.r, t.c, t.k, t.v), (1, 1, 2, 3));
        assert_eq!(t.n0, int(654));
        assert_eq!((t.n_min, t.n_max, t.s), (648, 660, 108));

        let m = PropertySpec::builtin("matchings").unwrap();
        let t = derive_params(&ratio(1, 20), 2, &m, Mode::Calibrated).unwrap();
        assert_eq!((t.c, t.k, t.v), (2, 3, 2));
        assert_eq!((t.n_min, t.n_max), (2592, 2604));
    }

    #[test]
    fn derived_mode_shrinks_lambda() {
        let p = PropertySpec::builtin("disjoint-triangles").unwrap();
        let t = derive_params(&ratio(1, 2), 4, &p, Mode::Derived).unwrap();
        // λ = (1/2)·1/(1 + 4²)
        assert_eq!(t.lambda, ratio(1, 34));
        assert!(t.n_max > 10_000);
    }

    #[test]
    fn parameter_errors() {
        let p = PropertySpec::builtin("disjoint-triangles").unwrap();
        assert!(derive_params(&int(0), 4, &p, Mode::Calibrated).is_err());
        assert!(derive_params(&ratio(3, 2), 4, &p, Mode::Calibrated).is_err());
        let bad = with_lambda(int(2), two_three());
        assert!(matches!(derive_params(&ratio(1, 10), 4, &bad, Mode::Calibrated), Err(Error::Params(_))));
        let grid = PropertySpec::builtin("grid").unwrap();
        assert!(derive_params(&ratio(1, 10), 4, &grid, Mode::Calibrated).is_err());
    }

    #[test]
    fn halving_lambda_halves_f() {
        let a = derive_params(&ratio(1, 10), 4, &with_lambda(ratio(3, 10), two_three()), Mode::Calibrated).unwrap();
        let b = derive_params(&ratio(1, 10), 4, &with_lambda(ratio(3, 20), two_three()), Mode::Calibrated).unwrap();
        assert_eq!(b.f, a.f / int(2));
        assert_eq!(b.mu, a.mu / int(2));
    }

    fn triangles(t: u32) -> Database {
        let edges: Vec<(u32, u32)> = (0..t)
            .flat_map(|i| [(3 * i + 1, 3 * i + 2), (3 * i + 2, 3 * i + 3), (3 * i + 1, 3 * i + 3)])
            .collect();
        Database::graph(3 * t, 4, &edges).unwrap()
    }

    fn cycle(n: u32) -> Database {
        let edges: Vec<(u32, u32)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Database::graph(n, 4, &edges).unwrap()
    }

    #[test]
    fn small_inputs_are_decided_exactly() {
        let p = PropertySpec::builtin("disjoint-triangles").unwrap();
        let t = derive_params(&ratio(1, 20), 4, &p, Mode::Calibrated).unwrap();
        let db = triangles(2);
        let v = epsilon_tester(&mut OracleHandle::new(&db), 6, &t, &p, 1).unwrap();
        assert!(v.accept);
        assert_eq!(v.branch, Branch::FullCheck);
        assert_eq!(v.queries, 6 * 4);
        let c = cycle(9);
        assert!(!epsilon_tester(&mut OracleHandle::new(&c), 9, &t, &p, 1).unwrap().accept);
        assert!(epsilon_tester(&mut OracleHandle::new(&c), 8, &t, &p, 1).is_err());
    }

    #[test]
    fn large_inputs_are_sampled() {
        let p = PropertySpec::builtin("disjoint-triangles").unwrap();
        let t = derive_params(&ratio(1, 20), 4, &p, Mode::Calibrated).unwrap();
        let db = triangles(400);
        let v = epsilon_tester(&mut OracleHandle::new(&db), 1200, &t, &p, 3).unwrap();
        assert!(v.accept);
        assert_eq!(v.branch, Branch::Sampled);
        assert_eq!(v.queries, 108 * 3 * 4);
        assert!(v.queries <= t.query_bound(1, 2));
        let c = cycle(1200);
        let v = epsilon_tester(&mut OracleHandle::new(&c), 1200, &t, &p, 3).unwrap();
        assert!(!v.accept);
        assert_eq!(v.l1_min(), Some(&int(2)));
        let exact = epsilon_tester_exact(&c, &t, &p, Exec::Sequential).unwrap();
        assert!(!exact.accept);
        assert_eq!(exact.branch, Branch::Injected);
    }

    #[test]
    fn bip_or_odd_branches() {
        // threshold ⌈1/(ε·d)⌉ = 5 for ε = 1/30, d = 6
        assert_eq!(bip_or_odd_threshold(&ratio(1, 30), 6).unwrap(), 5);
        let eps = ratio(1, 30);
        let big = Database::graph(6, 6, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let v = trivial_tester_bip_or_odd(&mut OracleHandle::new(&big), 6, &eps).unwrap();
        assert!(v.accept);
        assert_eq!((v.branch, v.queries), (Branch::Threshold, 0));
        let tri_plus = Database::graph(4, 6, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let v = trivial_tester_bip_or_odd(&mut OracleHandle::new(&tri_plus), 4, &eps).unwrap();
        assert!(!v.accept);
        assert_eq!(v.branch, Branch::FullCheck);
        let tri = Database::graph(3, 6, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(trivial_tester_bip_or_odd(&mut OracleHandle::new(&tri), 3, &eps).unwrap().accept);
    }
}
