//! Canonical finite integer sets and their counting machinery.
//!
//! A set is a strictly increasing sequence of positive integers. Sets are
//! immutable after construction; every operation returns a new value, so
//! everything in this module is safe to share across threads.
//!
//! Membership is answered from a bit array (one bit per integer up to the
//! largest element) whenever the largest element is small enough for that
//! to be sane; very sparse sets with huge elements fall back to binary
//! search so that, e.g., block sets reaching 10^18 still work.

use crate::error::{Error, Result};
use crate::rational::{
    fraction_difference, ratio_u64, sum_fractions_unreduced, RationalSum, RawFraction,
};
use num_bigint::BigInt;
use num_traits::One;

/// Largest element for which the membership bit array is built (16 MiB).
const BITSET_MAX_ELEMENT: u64 = 1 << 27;

/// A finite set of positive integers, stored sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSet {
    elements: Vec<u64>,
    /// One bit per value in `1..=max_element`, absent for huge elements.
    bits: Option<Vec<u64>>,
}

impl IntegerSet {
    /// Build from arbitrary values: sorts, deduplicates, rejects zero.
    pub fn from_values(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut elements: Vec<u64> = values.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() == Some(&0) {
            return Err(Error::Domain("set elements must be >= 1".into()));
        }
        Ok(Self::from_checked(elements))
    }

    /// Build from an already strictly increasing sequence of positive integers.
    pub fn from_sorted(elements: Vec<u64>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return Err(Error::Domain("set elements must be >= 1".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "elements must be strictly increasing".into(),
            ));
        }
        Ok(Self::from_checked(elements))
    }

    pub fn empty() -> Self {
        Self::from_checked(Vec::new())
    }

    fn from_checked(elements: Vec<u64>) -> Self {
        let bits = match elements.last() {
            Some(&max) if max <= BITSET_MAX_ELEMENT => {
                let words = (max / 64 + 1) as usize;
                let mut bits = vec![0u64; words];
                for &v in &elements {
                    bits[(v / 64) as usize] |= 1 << (v % 64);
                }
                Some(bits)
            }
            _ => None,
        };
        IntegerSet { elements, bits }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, value: u64) -> bool {
        if value == 0 {
            return false;
        }
        match &self.bits {
            Some(bits) => match bits.get((value / 64) as usize) {
                Some(word) => word & (1 << (value % 64)) != 0,
                None => false,
            },
            None => self.elements.binary_search(&value).is_ok(),
        }
    }

    /// The subset of elements `<= n`, as a new set.
    pub fn truncate(&self, n: u64) -> IntegerSet {
        let cut = self.elements.partition_point(|&v| v <= n);
        Self::from_checked(self.elements[..cut].to_vec())
    }
}

/// The counting function `f(1..=N)` of a set: `f(n)` = number of elements `<= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingProfile {
    horizon: u64,
    values: Vec<u64>,
}

impl CountingProfile {
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// `f(1), f(2), ..., f(N)` in order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `f(n)` for `0 <= n <= N` (`f(0) = 0`).
    pub fn count_at(&self, n: u64) -> u64 {
        if n == 0 {
            0
        } else {
            self.values[(n - 1) as usize]
        }
    }
}

/// An affine map `s -> alpha*s + beta` with `alpha != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineMap {
    alpha: i64,
    beta: i64,
}

impl AffineMap {
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::Domain("affine map requires alpha != 0".into()));
        }
        Ok(AffineMap { alpha, beta })
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }
}

/// Parse a newline- or comma-separated list of positive integers.
///
/// Lines beginning with `#` are ignored; the result is sorted and
/// deduplicated. Non-integer tokens report their 1-based line number;
/// values below 1 are domain errors.
pub fn parse_set(text: &str) -> Result<IntegerSet> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        for piece in line.split(',') {
            for token in piece.split_whitespace() {
                let parsed: i128 = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    token: token.to_string(),
                })?;
                if parsed < 1 {
                    return Err(Error::Domain(format!(
                        "line {line_no}: value {parsed} is < 1"
                    )));
                }
                if parsed > u64::MAX as i128 {
                    return Err(Error::Domain(format!(
                        "line {line_no}: value {parsed} exceeds the supported integer width"
                    )));
                }
                values.push(parsed as u64);
            }
        }
    }
    IntegerSet::from_values(values)
}

/// Counting profile of `set` up to `horizon` (elements beyond it are ignored).
pub fn counting_profile(set: &IntegerSet, horizon: u64) -> CountingProfile {
    assert!(horizon >= 1, "counting_profile requires horizon >= 1");
    let mut values = Vec::with_capacity(horizon as usize);
    let mut count = 0u64;
    let mut next = set.elements.iter().peekable();
    for n in 1..=horizon {
        while next.peek().is_some_and(|&&v| v <= n) {
            next.next();
            count += 1;
        }
        values.push(count);
    }
    CountingProfile { horizon, values }
}

/// Exact `sum of 1/s` over the set, reduced, with a double mirror.
///
/// The set must be nonempty: an empty sum here almost always means the
/// caller truncated away the whole set, so it is surfaced instead of
/// silently returning zero.
pub fn reciprocal_partial_sum(set: &IntegerSet) -> Result<RationalSum> {
    if set.is_empty() {
        return Err(Error::Domain(
            "reciprocal_partial_sum requires a nonempty set".into(),
        ));
    }
    let terms: Vec<RawFraction> = set
        .iter()
        .map(|s| (BigInt::one(), BigInt::from(s)))
        .collect();
    let total = crate::rational::reduce(sum_fractions_unreduced(terms));
    Ok(RationalSum::new(total))
}

/// Residual of the summation-by-parts identity at horizon `N`:
///
/// ```text
/// sum_{s in S, s <= N} 1/s  -  [ f(N)/N + sum_{n=1}^{N-1} f(n)/(n(n+1)) ]
/// ```
///
/// This is exactly zero for every set and every horizon; the return value
/// is the computed difference in exact arithmetic, so a nonzero result
/// would demonstrate an arithmetic bug rather than a property of the set.
pub fn abel_identity_residual(set: &IntegerSet, horizon: u64) -> RationalSum {
    assert!(horizon >= 1, "abel_identity_residual requires horizon >= 1");
    let lhs_terms: Vec<RawFraction> = set
        .iter()
        .take_while(|&s| s <= horizon)
        .map(|s| (BigInt::one(), BigInt::from(s)))
        .collect();
    let lhs = sum_fractions_unreduced(lhs_terms);

    let profile = counting_profile(set, horizon);
    let mut rhs_terms: Vec<RawFraction> = Vec::with_capacity(horizon as usize);
    rhs_terms.push((
        BigInt::from(profile.count_at(horizon)),
        BigInt::from(horizon),
    ));
    for n in 1..horizon {
        let f_n = profile.count_at(n);
        if f_n != 0 {
            rhs_terms.push((BigInt::from(f_n), BigInt::from(n) * BigInt::from(n + 1)));
        }
    }
    let rhs = sum_fractions_unreduced(rhs_terms);

    RationalSum::new(fraction_difference(&lhs, &rhs))
}

/// Image of a set under an affine map; order reverses for negative `alpha`.
///
/// Every image value must stay a positive integer within the supported
/// width, otherwise the whole application is rejected.
pub fn map_affine(set: &IntegerSet, map: AffineMap) -> Result<IntegerSet> {
    let alpha = map.alpha as i128;
    let beta = map.beta as i128;
    let mut image: Vec<u64> = Vec::with_capacity(set.len());
    for s in set.iter() {
        let v = alpha * s as i128 + beta;
        if v < 1 {
            return Err(Error::Domain(format!(
                "affine image {}*{} + {} = {} is < 1",
                map.alpha, s, map.beta, v
            )));
        }
        if v > u64::MAX as i128 {
            return Err(Error::Domain(format!(
                "affine image {}*{} + {} exceeds the supported integer width",
                map.alpha, s, map.beta
            )));
        }
        image.push(v as u64);
    }
    if map.alpha < 0 {
        image.reverse();
    }
    IntegerSet::from_sorted(image)
}

/// Density `|S ∩ [1..n]| / n` as an exact rational.
pub fn density(set: &IntegerSet, n: u64) -> num_rational::BigRational {
    assert!(n >= 1);
    let count = set.elements.partition_point(|&v| v <= n) as u64;
    ratio_u64(count, n)
}
