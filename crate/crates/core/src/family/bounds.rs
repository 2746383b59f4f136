//! Exact rational reference values for family sizes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::IntersectionSpec;
use crate::error::{Error, Result};

/// `prod_{l in L} (n - l) / (r - l)`.
pub fn def_bound(n: usize, spec: &IntersectionSpec) -> Result<BigRational> {
    if n < spec.r() {
        return Err(Error::InvalidParams(format!("n = {n} is below r = {}", spec.r())));
    }
    Ok(spec.sizes().iter().fold(BigRational::one(), |acc, &l| {
        acc * BigRational::new(BigInt::from(n - l), BigInt::from(spec.r() - l))
    }))
}

/// `((n - l_1) / (r - l_1))^s`, defined when `L` and `r` form an arithmetic progression.
pub fn ap_envelope(n: usize, spec: &IntersectionSpec) -> Result<BigRational> {
    if !spec.ap_with_r() {
        return Err(Error::InvalidParams(format!("{spec} is not an arithmetic progression ending at r")));
    }
    if n < spec.r() {
        return Err(Error::InvalidParams(format!("n = {n} is below r = {}", spec.r())));
    }
    let base = BigRational::new(BigInt::from(n - spec.min()), BigInt::from(spec.r() - spec.min()));
    Ok(num_traits::pow(base, spec.s()))
}
