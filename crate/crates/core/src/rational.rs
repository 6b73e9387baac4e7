//! Exact rational helpers shared by the semilinear and tester modules.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Nearest integer, ties rounded up (`floor(x + 1/2)`).
pub fn round_half_up(x: &Rational) -> BigInt {
    (x + ratio(1, 2)).floor().to_integer()
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `0.05`.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// `p/q` or `p` when the denominator is one.
pub fn display(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    if x.is_negative() {
        None
    } else {
        x.to_u64()
    }
}

/// Least common multiple of the denominators, and the numerators rescaled to it.
pub fn common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let denom = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let numers = values
        .iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect();
    (numers, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("1/20"), Some(ratio(1, 20)));
        assert_eq!(parse("0.05"), Some(ratio(1, 20)));
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse(".5"), Some(ratio(1, 2)));
        assert_eq!(parse("-1.25"), Some(ratio(-5, 4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
        assert_eq!(parse(""), None);
    }

    #[test]
    fn rounding_ties_go_up() {
        assert_eq!(round_half_up(&ratio(5, 2)), BigInt::from(3));
        assert_eq!(round_half_up(&ratio(7, 3)), BigInt::from(2));
        assert_eq!(round_half_up(&ratio(-1, 2)), BigInt::from(0));
        assert_eq!(round_half_up(&int(4)), BigInt::from(4));
    }

    #[test]
    fn common_denominator_rescales() {
        let (nums, den) = common_denominator(&[ratio(1, 2), ratio(1, 3), int(1)]);
        assert_eq!(den, BigInt::from(6));
        assert_eq!(nums, vec![BigInt::from(3), BigInt::from(2), BigInt::from(6)]);
    }
}
