//! Exact rational weights.

use num::{BigInt, BigRational, One, Signed, Zero};

use thiserror::Error;

/// Arbitrary-precision rational, always normalized with a positive denominator.
pub type Weight = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseWeightError(pub String);

pub fn ratio(num: i64, den: i64) -> Weight {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Weight {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> Weight {
    Weight::one()
}

pub fn zero() -> Weight {
    Weight::zero()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.9"`.
pub fn parse_weight(text: &str) -> Result<Weight, ParseWeightError> {
    let err = || ParseWeightError(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| err())?
        };
        let frac_val: BigInt = frac_part.parse().map_err(|_| err())?;
        let scale = num::pow(BigInt::from(10), frac_part.len());
        let mag = BigRational::new(int_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// Renders as `num/den`, always with an explicit denominator.
pub fn format_weight(w: &Weight) -> String {
    format!("{}/{}", w.numer(), w.denom())
}

pub fn is_probability(w: &Weight) -> bool {
    !w.is_negative() && *w <= Weight::one()
}
