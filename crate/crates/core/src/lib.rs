//! Desk-scale laboratory for 3-term arithmetic progressions.
//!
//! Everything here is finite and checkable: sets are finite strictly
//! increasing sequences of positive integers, counts are exact integers,
//! and identities are verified in exact rational arithmetic. Asymptotic
//! claims are measured, never asserted.
//!
//! Module map:
//!
//! * [`intset`] — canonical integer-set representation, counting profiles,
//!   reciprocal sums, affine maps, and the exact summation-by-parts identity.
//! * [`ap`] — exact 3-AP detection and counting (pair scan and integer
//!   convolution), plus exponential-sum discrepancy measurement on the
//!   unit circle.
//! * [`extremal`] — branch-and-bound computation of the maximum AP-free
//!   subset of `{1..n}`, density tables and subadditivity audits.
//! * [`construct`] — generators: the block set with long progressions and
//!   a convergent reciprocal series, the base-3 digit construction, and
//!   standard families used as audit inputs.
//! * [`audit`] — residual reports for the density-cubed triple-count law,
//!   the extremal bound chain, and the largeness probe.
//!
//! All operations are pure functions on immutable values. With the
//! `parallel` feature (default) the data-parallel inner loops run on
//! rayon; results are bit-identical to the sequential fallback because
//! every parallel reduction is an exact integer sum or an exact max.

pub mod ap;
pub mod audit;
pub mod construct;
pub mod convolve;
mod error;
pub mod extremal;
pub mod intset;
pub mod rational;
pub mod rng;

pub use error::{Error, Result};

/// Run `f` on a thread pool with `threads` workers.
///
/// `None` uses the default pool. Without the `parallel` feature this just
/// calls `f`; results never depend on the worker count either way.
#[cfg(feature = "parallel")]
pub fn run_with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("failed to build thread pool");
            pool.install(f)
        }
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<T: Send>(_threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    f()
}
