use super::{norm, LinearSet, SemilinearSet};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use indexmap::IndexSet;
use num::bigint::BigInt;
use num::{ToPrimitive, Zero};

/// A witness for `h ∈ S`: the component and its coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub component: usize,
    pub coeffs: Vec<u64>,
}

/// `suffix[j][c]`: some period with index `>= j` is positive at coordinate `c`.
fn support_suffix(lin: &LinearSet) -> Vec<Vec<bool>> {
    let dim = lin.base.len();
    let k = lin.periods.len();
    let mut suffix = vec![vec![false; dim]; k + 1];
    for j in (0..k).rev() {
        let next = suffix[j + 1].clone();
        for ((cell, later), &p) in suffix[j].iter_mut().zip(next).zip(&lin.periods[j]) {
            *cell = later || p > 0;
        }
    }
    suffix
}

fn solve(lin: &LinearSet, suffix: &[Vec<bool>], residual: &mut [u64], j: usize, coeffs: &mut Vec<u64>) -> bool {
    if residual.iter().zip(&suffix[j]).any(|(&r, &s)| r > 0 && !s) {
        return false;
    }
    if j == lin.periods.len() {
        return true;
    }
    let p = &lin.periods[j];
    let max_a = p
        .iter()
        .zip(residual.iter())
        .filter(|(&x, _)| x > 0)
        .map(|(&x, &r)| r / x)
        .min()
        .expect("periods have non-zero norm");
    for a in 0..=max_a {
        coeffs.push(a);
        if solve(lin, suffix, residual, j + 1, coeffs) {
            return true;
        }
        coeffs.pop();
        if a < max_a {
            for (r, &x) in residual.iter_mut().zip(p) {
                *r -= x;
            }
        }
    }
    // restore what the loop subtracted
    for (r, &x) in residual.iter_mut().zip(p) {
        *r += x * max_a;
    }
    false
}

/// Membership by bounded coefficient search; each coefficient is at most
/// `‖h‖₁` because every period has positive norm. The witness is the
/// lexicographically first one over (component, coefficients).
pub fn contains(set: &SemilinearSet, h: &[u64]) -> Result<Option<Membership>> {
    set.check_dim(h.len())?;
    for (i, lin) in set.components().iter().enumerate() {
        if lin.base.iter().zip(h).any(|(&b, &x)| b > x) {
            continue;
        }
        let mut residual: Vec<u64> = h.iter().zip(&lin.base).map(|(&x, &b)| x - b).collect();
        let suffix = support_suffix(lin);
        let mut coeffs = Vec::with_capacity(lin.periods.len());
        if solve(lin, &suffix, &mut residual, 0, &mut coeffs) {
            return Ok(Some(Membership { component: i, coeffs }));
        }
    }
    Ok(None)
}

fn enumerate_component(
    lin: &LinearSet,
    lo: u64,
    hi: u64,
    j: usize,
    current: &mut Vec<u64>,
    current_norm: u64,
    out: &mut IndexSet<Vec<u64>>,
) {
    let k = lin.periods.len();
    if j == k {
        if current_norm >= lo {
            out.insert(current.clone());
        }
        return;
    }
    let p = &lin.periods[j];
    let pn = norm(p);
    let max_a = (hi - current_norm) / pn;
    let min_a = if j + 1 == k && current_norm < lo {
        (lo - current_norm).div_ceil(pn)
    } else {
        0
    };
    if min_a > max_a {
        return;
    }
    for (c, &x) in current.iter_mut().zip(p) {
        *c += x * min_a;
    }
    for a in min_a..=max_a {
        if a > min_a {
            for (c, &x) in current.iter_mut().zip(p) {
                *c += x;
            }
        }
        enumerate_component(lin, lo, hi, j + 1, current, current_norm + a * pn, out);
    }
    for (c, &x) in current.iter_mut().zip(p) {
        *c -= x * max_a;
    }
}

/// All members with `lo <= ‖h‖₁ <= hi`, duplicate-free, in first-occurrence
/// order of the search over (component index, coefficient tuple).
pub fn enumerate_norm_range(set: &SemilinearSet, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = IndexSet::new();
    if lo > hi {
        return Vec::new();
    }
    for lin in set.components() {
        let base_norm = norm(&lin.base);
        if base_norm > hi {
            continue;
        }
        let mut current = lin.base.clone();
        enumerate_component(lin, lo, hi, 0, &mut current, base_norm, &mut out);
    }
    out.into_iter().collect()
}

/// The member closest (in ‖·‖₁ after normalization) to a distribution vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestHistogram {
    pub distance: Rational,
    pub histogram: Vec<u64>,
}

/// `min ‖v − h/‖h‖₁‖₁` over members with norm in `[lo, hi]`; `None` stands for
/// an empty range. `v` may be longer than the set's dimension: the extra
/// coordinates hold mass on types the set never realizes.
pub fn min_distribution_distance(
    set: &SemilinearSet,
    v: &[Rational],
    lo: u64,
    hi: u64,
) -> Result<Option<NearestHistogram>> {
    if v.len() < set.dim() {
        return Err(Error::Dimension {
            expected: set.dim(),
            found: v.len(),
        });
    }
    let lo = lo.max(1);
    let candidates = enumerate_norm_range(set, lo, hi);
    if candidates.is_empty() {
        return Ok(None);
    }
    let (numers, denom) = rational::common_denominator(v);
    let fast: Option<(Vec<i128>, i128)> = numers
        .iter()
        .map(|x| x.to_i64().map(i128::from))
        .collect::<Option<Vec<_>>>()
        .zip(denom.to_i64().map(i128::from));
    // distance(h) = Σ_i |numer_i·N − h_i·denom| / (denom·N), N = ‖h‖₁
    let mut best: Option<(BigInt, u64, usize)> = None;
    for (idx, h) in candidates.iter().enumerate() {
        let n = norm(h);
        let numer: BigInt = match &fast {
            Some((nums, den)) if n < (1 << 31) => {
                let mut acc: i128 = 0;
                for (i, &x) in nums.iter().enumerate() {
                    let hi = h.get(i).copied().unwrap_or(0) as i128;
                    acc += (x * n as i128 - hi * den).abs();
                }
                BigInt::from(acc)
            }
            _ => numers
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let hi = BigInt::from(h.get(i).copied().unwrap_or(0));
                    num::abs(x * BigInt::from(n) - hi * &denom)
                })
                .fold(BigInt::zero(), |a, b| a + b),
        };
        let better = match &best {
            None => true,
            Some((bn, bnorm, _)) => &numer * BigInt::from(*bnorm) < bn * BigInt::from(n),
        };
        if better {
            best = Some((numer, n, idx));
        }
    }
    let (numer, n, idx) = best.unwrap();
    Ok(Some(NearestHistogram {
        distance: Rational::new(numer, denom * BigInt::from(n)),
        histogram: candidates[idx].clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn multiples_of_three() -> SemilinearSet {
        SemilinearSet::new(1, vec![LinearSet::new(vec![0], vec![vec![3]]).unwrap()]).unwrap()
    }

    fn two_coords() -> SemilinearSet {
        SemilinearSet::new(2, vec![LinearSet::new(vec![0, 0], vec![vec![3, 0], vec![0, 2]]).unwrap()]).unwrap()
    }

    #[test]
    fn membership_with_witness() {
        let s = multiples_of_three();
        assert_eq!(
            contains(&s, &[6]).unwrap(),
            Some(Membership { component: 0, coeffs: vec![2] })
        );
        assert_eq!(contains(&s, &[7]).unwrap(), None);
        assert_eq!(contains(&s, &[0]).unwrap().unwrap().coeffs, vec![0]);
        assert!(contains(&s, &[1, 2]).is_err());

        let t = two_coords();
        assert_eq!(contains(&t, &[3, 4]).unwrap().unwrap().coeffs, vec![1, 2]);
        assert_eq!(contains(&t, &[3, 3]).unwrap(), None);
    }

    #[test]
    fn base_is_a_member() {
        let s = SemilinearSet::new(2, vec![LinearSet::new(vec![2, 1], vec![vec![1, 1], vec![0, 3]]).unwrap()]).unwrap();
        assert_eq!(contains(&s, &[2, 1]).unwrap().unwrap().coeffs, vec![0, 0]);
    }

    #[test]
    fn enumeration_in_range() {
        let s = multiples_of_three();
        assert_eq!(enumerate_norm_range(&s, 5, 10), vec![vec![6], vec![9]]);
        assert!(enumerate_norm_range(&s, 1, 2).is_empty());
        assert!(enumerate_norm_range(&s, 3, 2).is_empty());
    }

    #[test]
    fn enumeration_deduplicates_overlaps() {
        let s = SemilinearSet::new(
            1,
            vec![
                LinearSet::new(vec![0], vec![vec![2]]).unwrap(),
                LinearSet::new(vec![0], vec![vec![4]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_norm_range(&s, 0, 8), vec![vec![0], vec![2], vec![4], vec![6], vec![8]]);
    }

    #[test]
    fn min_distance_examples() {
        let s = multiples_of_three();
        let d = min_distribution_distance(&s, &[ratio(1, 1)], 1, 100).unwrap().unwrap();
        assert_eq!(d.distance, ratio(0, 1));
        assert_eq!(d.histogram, vec![3]);

        // range [4, 6] holds (3,2), (0,4), (0,6), (6,0); best is (3,2) at 1/5
        let t = two_coords();
        let d = min_distribution_distance(&t, &[ratio(1, 2), ratio(1, 2)], 4, 6).unwrap().unwrap();
        assert_eq!(d.distance, ratio(1, 5));
        assert_eq!(d.histogram, vec![3, 2]);

        assert_eq!(min_distribution_distance(&s, &[ratio(1, 1)], 1, 2).unwrap(), None);
        // unseen extra coordinate carries its full mass
        let d = min_distribution_distance(&s, &[ratio(1, 2), ratio(1, 2)], 1, 9).unwrap().unwrap();
        assert_eq!(d.distance, ratio(1, 1));
    }
}
