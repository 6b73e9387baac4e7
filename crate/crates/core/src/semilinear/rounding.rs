use super::{contains, norm, SemilinearSet};
use crate::error::{Error, Result};
use crate::rational::{self, from_u64, int, Rational};
use num::bigint::BigInt;

/// `n₀ = kv(3ckv/(f−μ) + 1)`, the target size of the rounding construction.
pub fn target_size(c: u64, k: u64, v: u64, f_minus_mu: &Rational) -> Rational {
    let kv = from_u64(k * v);
    let ckv = from_u64(c) * &kv;
    &kv * (int(3) * ckv / f_minus_mu + int(1))
}

/// Integer window `[⌈n₀ − kv⌉, ⌊n₀ + kv⌋]` containing every rounded size.
pub fn size_window(n0: &Rational, kv: u64) -> (BigInt, BigInt) {
    let kv = from_u64(kv);
    (rational::ceil(&(n0 - &kv)), rational::floor(&(n0 + &kv)))
}

/// `kv(3ckv/ε + 2)`: the size bound of [`small_representative`].
pub fn alon_bound(c: u64, k: u64, v: u64, epsilon: &Rational) -> Rational {
    let kv = from_u64(k * v);
    let ckv = from_u64(c) * &kv;
    &kv * (int(3) * ckv / epsilon + int(2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rounded {
    pub histogram: Vec<u64>,
    pub coeffs: Vec<u64>,
}

/// Rescales a member of component `component` with coefficients `coeffs` to
/// size about `n₀`: each coefficient becomes the nearest integer (ties up) to
/// `a_j · n₀ / n` where `n` is the member's norm. Requires `n > ⌊n₀ + kv⌋`.
pub fn round_to_target_size(
    set: &SemilinearSet,
    component: usize,
    coeffs: &[u64],
    n0: &Rational,
) -> Result<Rounded> {
    let lin = set
        .components()
        .get(component)
        .ok_or_else(|| Error::Precondition(format!("no component {component}")))?;
    if coeffs.len() != lin.periods.len() {
        return Err(Error::Dimension {
            expected: lin.periods.len(),
            found: coeffs.len(),
        });
    }
    let h = lin.point(coeffs);
    let n = norm(&h);
    let (_, n_max) = size_window(n0, set.k() * set.v());
    if BigInt::from(n) <= n_max {
        return Err(Error::Precondition(format!(
            "member norm {n} must exceed n_max = {n_max}"
        )));
    }
    let scale = n0 / from_u64(n);
    let new_coeffs = coeffs
        .iter()
        .map(|&a| {
            let rounded = rational::round_half_up(&(from_u64(a) * &scale));
            rational::to_u64(&rounded).expect("rounded coefficient is at most a")
        })
        .collect::<Vec<u64>>();
    Ok(Rounded {
        histogram: lin.point(&new_coeffs),
        coeffs: new_coeffs,
    })
}

/// A member `h₀` of the set with `‖h/‖h‖₁ − h₀/‖h₀‖₁‖₁ ≤ ε` and
/// `‖h₀‖₁ ≤ kv(3ckv/ε + 2)`. Members already within the bound are returned
/// unchanged.
pub fn small_representative(set: &SemilinearSet, h: &[u64], epsilon: &Rational) -> Result<Vec<u64>> {
    let witness = contains(set, h)?
        .ok_or_else(|| Error::Precondition("vector is not a member of the set".into()))?;
    let (c, k, v) = (set.dim() as u64, set.k(), set.v());
    if from_u64(norm(h)) <= alon_bound(c, k, v, epsilon) {
        return Ok(h.to_vec());
    }
    let n0 = target_size(c, k, v, epsilon);
    Ok(round_to_target_size(set, witness.component, &witness.coeffs, &n0)?.histogram)
}
