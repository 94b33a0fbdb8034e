//! Exact-arithmetic helpers: binomials, multiset counts, and lossless
//! comparisons between big integers and `f64` parameters.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// C(n, k) in exact integer arithmetic; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Number of multisets of size `k` drawn from `n` kinds: C(n+k-1, k).
///
/// The degenerate case n = 0 counts 1 for k = 0 and 0 otherwise, so the
/// value stays consistent with "place k pebbles on n vertices".
pub fn multiset_count(n: u64, k: u64) -> BigUint {
    if n == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(n + k - 1, k)
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain(format!("{x} is not a finite number")))
}

/// Round a rational to the nearest representable `f64`, tolerating
/// numerators and denominators far beyond the `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().abs();
    // 96 extra bits keep full f64 precision through the integer division.
    let scaled: BigInt = (num << 96u32) / den;
    let magnitude = scaled.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-96);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Natural log of a positive big integer, accurate to f64 precision at any
/// magnitude. Returns 0 for 0 so callers can treat empty products uniformly.
pub fn log_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap_or(1.0).max(1.0).ln();
    }
    let head = (x >> (bits - 53)).to_f64().expect("53-bit head");
    head.ln() + (bits - 53) as f64 * std::f64::consts::LN_2
}

/// Exact comparison `x <= c` for an unsigned big integer and a float.
pub fn biguint_le_f64(x: &BigUint, c: f64) -> bool {
    if !c.is_finite() {
        return c > 0.0;
    }
    if c < 0.0 {
        return false;
    }
    let c = BigRational::from_float(c).expect("finite float");
    BigRational::from(BigInt::from(x.clone())) <= c
}

/// Exact comparison `x > c`.
pub fn biguint_gt_f64(x: &BigUint, c: f64) -> bool {
    !biguint_le_f64(x, c)
}

/// Exact comparison `2^e <= c`.
pub fn pow2_le_f64(e: usize, c: f64) -> bool {
    if !c.is_finite() {
        return c > 0.0;
    }
    if c < 1.0 {
        return false;
    }
    biguint_le_f64(&(BigUint::one() << e), c)
}
