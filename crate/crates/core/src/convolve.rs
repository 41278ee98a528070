//! Exact integer self-convolution of a set's 0/1 indicator.
//!
//! `pair_sum_counts_dense(S)[m]` is the number of ordered pairs
//! `(a, c) ∈ S²` with `a + c = m`. Counts must be exact integers, so the
//! transform path works over two word-size NTT primes and reconstructs by
//! CRT; any coefficient below `P1*P2 ≈ 3.6e18` survives reconstruction
//! exactly, and pair counts are bounded by `|S|`, far below that. Small
//! inputs take the quadratic scatter loop instead, which is faster until
//! the transform amortizes.

use crate::intset::IntegerSet;

/// NTT-friendly primes with primitive roots: `15·2^27 + 1` and `27·2^26 + 1`.
const PRIME_A: (u64, u64) = (2_013_265_921, 31);
const PRIME_B: (u64, u64) = (1_811_939_329, 13);

/// Largest supported indicator length (transform length `2^24`).
pub const MAX_DENSE_ELEMENT: u64 = 1 << 23;

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// In-place iterative radix-2 NTT. `values.len()` must be a power of two
/// dividing `modulus - 1`.
fn ntt(values: &mut [u64], modulus: u64, root: u64, invert: bool) {
    let n = values.len();
    debug_assert!(n.is_power_of_two());

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            values.swap(i, j);
        }
    }

    let mut len = 2usize;
    while len <= n {
        let mut w_len = mod_pow(root, (modulus - 1) / len as u64, modulus);
        if invert {
            w_len = mod_pow(w_len, modulus - 2, modulus);
        }
        for start in (0..n).step_by(len) {
            let mut w: u64 = 1;
            for i in start..start + len / 2 {
                let u = values[i];
                let v = (values[i + len / 2] as u128 * w as u128 % modulus as u128) as u64;
                values[i] = if u + v >= modulus { u + v - modulus } else { u + v };
                values[i + len / 2] = if u >= v { u - v } else { u + modulus - v };
                w = (w as u128 * w_len as u128 % modulus as u128) as u64;
            }
        }
        len <<= 1;
    }

    if invert {
        let n_inv = mod_pow(n as u64, modulus - 2, modulus);
        for v in values.iter_mut() {
            *v = (*v as u128 * n_inv as u128 % modulus as u128) as u64;
        }
    }
}

/// Self-convolution of the indicator modulo one NTT prime.
fn self_convolution_mod(elements: &[u64], out_len: usize, prime: (u64, u64)) -> Vec<u64> {
    let (modulus, root) = prime;
    let size = out_len.next_power_of_two();
    let mut buf = vec![0u64; size];
    for &v in elements {
        buf[v as usize] = 1;
    }
    ntt(&mut buf, modulus, root, false);
    for v in buf.iter_mut() {
        *v = (*v as u128 * *v as u128 % modulus as u128) as u64;
    }
    ntt(&mut buf, modulus, root, true);
    buf.truncate(out_len);
    buf
}

/// CRT-combine residues modulo the two primes into the exact coefficient.
fn crt_combine(r_a: u64, r_b: u64) -> u64 {
    let (p_a, _) = PRIME_A;
    let (p_b, _) = PRIME_B;
    // x = r_a + p_a * t where t = (r_b - r_a) / p_a (mod p_b).
    let inv_pa = mod_pow(p_a % p_b, p_b - 2, p_b);
    let diff = (r_b + p_b - r_a % p_b) % p_b;
    let t = (diff as u128 * inv_pa as u128 % p_b as u128) as u64;
    (r_a as u128 + p_a as u128 * t as u128) as u64
}

fn pair_sum_counts_schoolbook(elements: &[u64], out_len: usize) -> Vec<u64> {
    let mut counts = vec![0u64; out_len];
    for &a in elements {
        for &c in elements {
            counts[(a + c) as usize] += 1;
        }
    }
    counts
}

fn wants_schoolbook(set_len: usize, out_len: usize) -> bool {
    let transform_cost = 6 * out_len * (usize::BITS - out_len.leading_zeros()) as usize;
    set_len * set_len <= transform_cost
}

/// Exact pair-sum counts `r(0..=2*max)` via two-prime NTT (parallel over
/// the moduli) or the quadratic scatter loop for small inputs.
///
/// The largest element must be at most [`MAX_DENSE_ELEMENT`]; sets beyond
/// that are too wide for a dense transform and are handled by the sparse
/// per-target counting in the caller.
pub fn pair_sum_counts_dense(set: &IntegerSet) -> Vec<u64> {
    let Some(max) = set.max_element() else {
        return Vec::new();
    };
    assert!(
        max <= MAX_DENSE_ELEMENT,
        "dense convolution supports max element {MAX_DENSE_ELEMENT}, got {max}"
    );
    let out_len = (2 * max + 1) as usize;
    if wants_schoolbook(set.len(), out_len) {
        return pair_sum_counts_schoolbook(set.elements(), out_len);
    }

    #[cfg(feature = "parallel")]
    let (res_a, res_b) = rayon::join(
        || self_convolution_mod(set.elements(), out_len, PRIME_A),
        || self_convolution_mod(set.elements(), out_len, PRIME_B),
    );
    #[cfg(not(feature = "parallel"))]
    let (res_a, res_b) = (
        self_convolution_mod(set.elements(), out_len, PRIME_A),
        self_convolution_mod(set.elements(), out_len, PRIME_B),
    );

    res_a
        .into_iter()
        .zip(res_b)
        .map(|(a, b)| crt_combine(a, b))
        .collect()
}

/// Sequential twin of [`pair_sum_counts_dense`], for the benchmark suite
/// and the no-`parallel` build.
pub fn pair_sum_counts_dense_seq(set: &IntegerSet) -> Vec<u64> {
    let Some(max) = set.max_element() else {
        return Vec::new();
    };
    assert!(max <= MAX_DENSE_ELEMENT);
    let out_len = (2 * max + 1) as usize;
    if wants_schoolbook(set.len(), out_len) {
        return pair_sum_counts_schoolbook(set.elements(), out_len);
    }
    let res_a = self_convolution_mod(set.elements(), out_len, PRIME_A);
    let res_b = self_convolution_mod(set.elements(), out_len, PRIME_B);
    res_a
        .into_iter()
        .zip(res_b)
        .map(|(a, b)| crt_combine(a, b))
        .collect()
}

/// `#{(a, c) ∈ S²: a + c = target}` by a two-pointer walk over the sorted
/// elements; the sparse route for sets whose elements are too large for a
/// dense transform.
pub fn pair_sum_count_at(elements: &[u64], target: u64) -> u64 {
    if elements.is_empty() {
        return 0;
    }
    let mut lo = 0usize;
    let mut hi = elements.len() - 1;
    let mut count = 0u64;
    while lo < hi {
        // Elements stay below 2^63 in practice but the sum is taken in
        // u128 so the walk is safe for the full u64 range.
        let sum = elements[lo] as u128 + elements[hi] as u128;
        match sum.cmp(&(target as u128)) {
            std::cmp::Ordering::Equal => {
                count += 2; // ordered pairs (lo,hi) and (hi,lo)
                lo += 1;
                if hi == 0 {
                    break;
                }
                hi -= 1;
            }
            std::cmp::Ordering::Less => lo += 1,
            std::cmp::Ordering::Greater => {
                if hi == 0 {
                    break;
                }
                hi -= 1;
            }
        }
    }
    if lo == hi && elements[lo] as u128 * 2 == target as u128 {
        count += 1;
    }
    count
}
