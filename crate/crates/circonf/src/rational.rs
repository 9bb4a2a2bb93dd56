//! Small helpers over arbitrary-precision rationals.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// The scalar type used everywhere: an exact rational number.
pub type Rat = num_rational::BigRational;

/// Shorthand for `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer rational.
pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Canonical lowest-terms string: `p` when the denominator is one, else `p/q`.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Parses `p` or `p/q` (optional leading minus, `q > 0` after reduction).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Exact square root: `Some(s)` with `s ≥ 0` and `s² = r`, or `None` when `r`
/// is not the square of a rational.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &sn * &sn == *num && &sd * &sd == *den {
        Some(Rat::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// Largest rational of the form `k / 2^32` whose triple has square at most
/// `d2`, i.e. the floor approximation of `√d2 / 3` at denominator `2^32`.
/// Requires `d2 > 0`.
pub fn floor_third_sqrt(d2: &Rat) -> Rat {
    assert!(d2.is_positive(), "floor_third_sqrt needs a positive input");
    let scale = BigUint::one() << 32u32;
    // largest k with 9 k² q ≤ p · 2^64, where d2 = p/q
    let p = d2.numer().magnitude();
    let q = d2.denom().magnitude();
    let k = ((p * &scale * &scale) / (BigUint::from(9u32) * q)).sqrt();
    let r = Rat::new(BigInt::from(k), BigInt::from(scale));
    debug_assert!(&r * &r * int(9) <= *d2);
    r
}
