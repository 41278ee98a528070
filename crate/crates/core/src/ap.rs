//! Exact 3-term arithmetic-progression detection and counting.
//!
//! The counting convention: a triple is an ordered `(a, b, c) ∈ S³` with
//! `a + c = 2b`, equal terms allowed. Under it the total count equals
//! `|S|` exactly when the set has no nontrivial progression — that exact
//! equivalence is the backbone of several audits, so both counting routes
//! here are integer-exact and are required to agree bit for bit.
//!
//! The counting convention is defined for extremal sets in the source
//! material; this module extends the same count to arbitrary finite sets
//! as plumbing.

use crate::convolve;
use crate::error::{Error, Result};
use crate::intset::IntegerSet;
use crate::rational::rational_to_f64;
use num_rational::BigRational;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Exact ordered-triple counts for one set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleCount {
    /// Ordered triples `(a, b, c) ∈ S³` with `a + c = 2b`, repeats allowed.
    pub total: u64,
    /// Triples with `a = b = c`; always `|S|`.
    pub trivial: u64,
    /// Unordered progressions `{a, a+d, a+2d}` with `d >= 1`.
    pub nontrivial_unordered: u64,
}

impl TripleCount {
    fn from_total(total: u64, set_size: u64) -> Self {
        debug_assert!(total >= set_size);
        debug_assert!((total - set_size).is_multiple_of(2));
        TripleCount {
            total,
            trivial: set_size,
            nontrivial_unordered: (total - set_size) / 2,
        }
    }

    /// `total == |S|` is exactly the absence of a nontrivial progression.
    pub fn is_ap_free(&self) -> bool {
        self.total == self.trivial
    }
}

/// A witnessing arithmetic progression inside some set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct APWitness {
    pub first: u64,
    /// Canonical orientation: always `>= 1`.
    pub difference: u64,
    pub length: u64,
}

impl APWitness {
    /// The progression's terms in order.
    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.length).map(move |i| self.first + i * self.difference)
    }
}

/// Sup-norm measurement of `sum_{a in S} z^a - C * sum_{k<=n} z^k` over a
/// grid of roots of unity.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub n: u64,
    /// The density constant `C` that was subtracted.
    pub density_used: BigRational,
    pub grid_size: u64,
    /// `max_j |E(z_j)|` over the grid `z_j = exp(2*pi*i*j/M)`.
    pub sup_abs: f64,
    pub sup_over_n: f64,
}

/// Count ordered triples by the quadratic pair scan: every ordered pair
/// `(a, c)` with an even sum contributes when the midpoint is a member.
pub fn count_triples_bruteforce(set: &IntegerSet) -> TripleCount {
    #[cfg(feature = "parallel")]
    let total = set
        .elements()
        .par_iter()
        .map(|&a| midpoint_row_count(set, a))
        .sum::<u64>();
    #[cfg(not(feature = "parallel"))]
    let total = set
        .elements()
        .iter()
        .map(|&a| midpoint_row_count(set, a))
        .sum::<u64>();
    TripleCount::from_total(total, set.len() as u64)
}

/// Sequential twin of [`count_triples_bruteforce`].
pub fn count_triples_bruteforce_seq(set: &IntegerSet) -> TripleCount {
    let total = set
        .elements()
        .iter()
        .map(|&a| midpoint_row_count(set, a))
        .sum::<u64>();
    TripleCount::from_total(total, set.len() as u64)
}

fn midpoint_row_count(set: &IntegerSet, a: u64) -> u64 {
    // Sums fit u64 only when the max element is below 2^63; take the wide
    // path otherwise.
    if set.max_element().unwrap_or(0) <= u64::MAX / 2 {
        set.iter()
            .filter(|&c| (a + c).is_multiple_of(2) && set.contains((a + c) / 2))
            .count() as u64
    } else {
        set.iter()
            .filter(|&c| {
                let sum = a as u128 + c as u128;
                sum.is_multiple_of(2) && set.contains((sum / 2) as u64)
            })
            .count() as u64
    }
}

/// Count ordered triples through the indicator convolution: with
/// `r(m) = #{(a, c): a + c = m}`, the total is `sum_{b in S} r(2b)`.
///
/// Dense sets go through the exact two-prime transform; sets whose
/// elements exceed the dense-transform width are counted per target by
/// the two-pointer walk. Either way the result is an exact integer.
pub fn count_triples_convolution(set: &IntegerSet) -> TripleCount {
    count_triples_convolution_impl(set, convolve::pair_sum_counts_dense)
}

/// Sequential twin of [`count_triples_convolution`].
pub fn count_triples_convolution_seq(set: &IntegerSet) -> TripleCount {
    count_triples_convolution_impl(set, convolve::pair_sum_counts_dense_seq)
}

fn count_triples_convolution_impl(
    set: &IntegerSet,
    dense: fn(&IntegerSet) -> Vec<u64>,
) -> TripleCount {
    let Some(max) = set.max_element() else {
        return TripleCount::from_total(0, 0);
    };
    let total = if max <= convolve::MAX_DENSE_ELEMENT {
        let counts = dense(set);
        set.iter().map(|b| counts[(2 * b) as usize]).sum()
    } else {
        set.iter()
            .map(|b| convolve::pair_sum_count_at(set.elements(), 2 * b))
            .sum()
    };
    TripleCount::from_total(total, set.len() as u64)
}

/// Find the canonical nontrivial 3-term progression, if any: smallest
/// first term, then smallest difference.
pub fn has_nontrivial_3ap(set: &IntegerSet) -> Option<APWitness> {
    let elements = set.elements();
    let max = set.max_element()?;
    for (i, &first) in elements.iter().enumerate() {
        for &second in &elements[i + 1..] {
            let third = 2u128 * second as u128 - first as u128;
            if third > max as u128 {
                break;
            }
            if set.contains(third as u64) {
                return Some(APWitness {
                    first,
                    difference: second - first,
                    length: 3,
                });
            }
        }
    }
    None
}

/// Find an arithmetic progression of at least `min_length` terms
/// (`min_length >= 3`), searching `(first, difference)` pairs in canonical
/// order with the cutoff `first + (min_length-1)*difference > max(S)`.
///
/// The returned witness carries the maximal run at the found pair, so its
/// length can exceed `min_length`.
pub fn find_ap_of_length(set: &IntegerSet, min_length: u64) -> Option<APWitness> {
    assert!(min_length >= 3, "find_ap_of_length requires length >= 3");
    let elements = set.elements();
    let max = set.max_element()? as u128;
    for (i, &first) in elements.iter().enumerate() {
        for &second in &elements[i + 1..] {
            let difference = second - first;
            let last = first as u128 + (min_length - 1) as u128 * difference as u128;
            if last > max {
                break;
            }
            let mut length = 2u64;
            let mut next = second as u128 + difference as u128;
            while next <= max && set.contains(next as u64) {
                length += 1;
                next += difference as u128;
            }
            if length >= min_length {
                return Some(APWitness {
                    first,
                    difference,
                    length,
                });
            }
        }
    }
    None
}

/// Evaluate the two exponential sums on the grid `z_j = exp(2*pi*i*j/M)`,
/// `j = 0..M-1`, and report the sup of `|sum_{a in S} z^a - C sum_{k<=n} z^k|`.
///
/// This is a float-valued measurement; the two sums share one fused
/// Horner pass per grid point so the full interval with `C = 1` cancels
/// exactly even in floating point.
pub fn discrepancy(
    set: &IntegerSet,
    n: u64,
    density: &BigRational,
    grid_size: u64,
) -> Result<DiscrepancyReport> {
    let indicator = dense_indicator(set, n, grid_size)?;
    let c = rational_to_f64(density);

    #[cfg(feature = "parallel")]
    let sup_abs = (0..grid_size)
        .into_par_iter()
        .map(|j| grid_point_error(&indicator, c, j, grid_size))
        .reduce(|| 0.0f64, f64::max);
    #[cfg(not(feature = "parallel"))]
    let sup_abs = (0..grid_size)
        .map(|j| grid_point_error(&indicator, c, j, grid_size))
        .fold(0.0f64, f64::max);

    Ok(report(n, density, grid_size, sup_abs))
}

/// Sequential twin of [`discrepancy`].
pub fn discrepancy_seq(
    set: &IntegerSet,
    n: u64,
    density: &BigRational,
    grid_size: u64,
) -> Result<DiscrepancyReport> {
    let indicator = dense_indicator(set, n, grid_size)?;
    let c = rational_to_f64(density);
    let sup_abs = (0..grid_size)
        .map(|j| grid_point_error(&indicator, c, j, grid_size))
        .fold(0.0f64, f64::max);
    Ok(report(n, density, grid_size, sup_abs))
}

fn dense_indicator(set: &IntegerSet, n: u64, grid_size: u64) -> Result<Vec<f64>> {
    if let Some(max) = set.max_element() {
        if max > n {
            return Err(Error::Domain(format!(
                "set element {max} exceeds the horizon {n}"
            )));
        }
    }
    if n == 0 || grid_size == 0 {
        return Err(Error::Domain(
            "discrepancy requires horizon >= 1 and grid size >= 1".into(),
        ));
    }
    let mut indicator = vec![0.0f64; n as usize + 1];
    for a in set.iter() {
        indicator[a as usize] = 1.0;
    }
    Ok(indicator)
}

fn report(n: u64, density: &BigRational, grid_size: u64, sup_abs: f64) -> DiscrepancyReport {
    DiscrepancyReport {
        n,
        density_used: density.clone(),
        grid_size,
        sup_abs,
        sup_over_n: sup_abs / n as f64,
    }
}

/// `|sum_k ind[k] z^k - C sum_k z^k|` at `z = exp(2*pi*i*j/M)`, both sums
/// over `k = 1..=n` by one fused Horner recurrence.
fn grid_point_error(indicator: &[f64], c: f64, j: u64, grid_size: u64) -> f64 {
    let theta = 2.0 * std::f64::consts::PI * j as f64 / grid_size as f64;
    let (z_re, z_im) = (theta.cos(), theta.sin());
    let n = indicator.len() - 1;

    let (mut s_re, mut s_im) = (0.0f64, 0.0f64);
    let (mut t_re, mut t_im) = (0.0f64, 0.0f64);
    for k in (1..=n).rev() {
        let (sr, si) = (s_re, s_im);
        s_re = sr * z_re - si * z_im + indicator[k];
        s_im = sr * z_im + si * z_re;
        let (tr, ti) = (t_re, t_im);
        t_re = tr * z_re - ti * z_im + 1.0;
        t_im = tr * z_im + ti * z_re;
    }
    // Multiply by z once: the lowest exponent in both sums is 1.
    let set_re = s_re * z_re - s_im * z_im;
    let set_im = s_re * z_im + s_im * z_re;
    let full_re = t_re * z_re - t_im * z_im;
    let full_im = t_re * z_im + t_im * z_re;

    let e_re = set_re - c * full_re;
    let e_im = set_im - c * full_im;
    (e_re * e_re + e_im * e_im).sqrt()
}
