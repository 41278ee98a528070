//! Exact rational values and the summation machinery behind them.
//!
//! Identity checks in this crate (summation by parts, the reciprocal-sum
//! bound of the block construction) must come out *exactly* zero or hold
//! as exact comparisons, so sums of fractions are carried in
//! arbitrary-precision integers. Long sums use pairwise (divide and
//! conquer) merging without intermediate GCD reduction: reducing only at
//! the very end keeps a 100k-term sum in the hundreds of milliseconds
//! where eager reduction would take hours.

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

// Re-exported so downstream crates name the exact types this API uses.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// An exact rational with a cached double approximation.
///
/// The fraction is always reduced with a positive denominator; the cached
/// approximation is within one unit in the last place of the true value.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSum {
    value: BigRational,
    approx: f64,
}

impl RationalSum {
    pub fn new(value: BigRational) -> Self {
        let approx = rational_to_f64(&value);
        RationalSum { value, approx }
    }

    pub fn zero() -> Self {
        RationalSum::new(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Render as `p/q` (reduced, `q > 0`), e.g. `247/210` or `0/1`.
    pub fn fraction_string(&self) -> String {
        fraction_string(&self.value)
    }
}

/// Render any rational as `p/q` with the sign on the numerator.
pub fn fraction_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An unreduced fraction used while merging long sums.
pub(crate) type RawFraction = (BigInt, BigInt);

/// Pairwise-merge a list of fractions into a single unreduced fraction.
///
/// Merging is `(a/b, c/d) -> (a*d + c*b, b*d)` with no GCD step, so the
/// result denominator is the product of all input denominators. Balanced
/// merging keeps the big multiplications near the top of the tree where
/// the subquadratic bigint multiply pays off.
pub(crate) fn sum_fractions_unreduced(mut terms: Vec<RawFraction>) -> RawFraction {
    // Zero terms only inflate the denominator product.
    terms.retain(|(n, _)| !n.is_zero());
    if terms.is_empty() {
        return (BigInt::zero(), BigInt::from(1u8));
    }
    merge_range(&mut terms)
}

fn merge_range(terms: &mut [RawFraction]) -> RawFraction {
    match terms.len() {
        1 => std::mem::replace(&mut terms[0], (BigInt::zero(), BigInt::from(1u8))),
        len => {
            let mid = len / 2;
            let (lo, hi) = terms.split_at_mut(mid);
            let (a, b) = merge_range(lo);
            let (c, d) = merge_range(hi);
            (&a * &d + &c * &b, b * d)
        }
    }
}

/// Reduce an unreduced fraction into a canonical `BigRational`.
pub(crate) fn reduce(frac: RawFraction) -> BigRational {
    let (numer, denom) = frac;
    debug_assert!(!denom.is_zero());
    BigRational::new(numer, denom)
}

/// Exact difference of two unreduced fractions, reduced at the end.
pub(crate) fn fraction_difference(lhs: &RawFraction, rhs: &RawFraction) -> BigRational {
    let numer = &lhs.0 * &rhs.1 - &rhs.0 * &lhs.1;
    if numer.is_zero() {
        return BigRational::zero();
    }
    BigRational::new(numer, &lhs.1 * &rhs.1)
}

/// Convert a rational to the nearest double, within one ulp.
///
/// `Ratio::to_f64` divides the converted numerator by the converted
/// denominator, which overflows to infinity once either side exceeds
/// ~1e308; the denominators produced by long reciprocal sums are tens of
/// thousands of digits, so the quotient is computed in integer arithmetic
/// instead: scale to a 64-bit quotient, fold the remainder into a sticky
/// bit, and let the final 64-to-53-bit conversion round.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let negative = numer.sign() == Sign::Minus;
    let a = numer.abs();
    let b = denom.clone();

    let abits = a.bits() as i64;
    let bbits = b.bits() as i64;
    // Shift so the integer quotient carries 63..=65 significant bits.
    let shift = 64 - (abits - bbits);
    let (scaled_num, scaled_den) = if shift >= 0 {
        (a << shift as u64, b)
    } else {
        (a, b << (-shift) as u64)
    };
    let (q, rem) = scaled_num.div_rem(&scaled_den);
    let mut q = q.to_u128().expect("quotient sized to 65 bits");
    if !rem.is_zero() {
        q |= 1; // sticky bit: breaks round-to-nearest ties correctly
    }
    let magnitude = ldexp(q as f64, -shift);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// `x * 2^e` without intermediate overflow or underflow of the scale factor.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Rational `p/q` from machine integers.
pub fn ratio_u64(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
