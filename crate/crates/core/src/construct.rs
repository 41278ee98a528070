//! Set generators: the decimal-block example set, the base-3 digit
//! construction, and the standard families used as audit inputs.

use crate::error::{Error, Result};
use crate::intset::{parse_set, IntegerSet};
use crate::rational::{ratio_u64, reduce, sum_fractions_unreduced, RationalSum, RawFraction};
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::path::PathBuf;

/// Specification of the decimal-block set: blocks
/// `{10^k, 10^k + 1, ..., 10^k + k}` for `k = 0..=max_block`.
///
/// Each block is a run of `k + 1` consecutive integers, so the set
/// contains arbitrarily long progressions as the block index grows, while
/// its reciprocal series stays below `100/81` (majorize block `k` by
/// `(k+1)/10^k` and sum the arithmetico-geometric series at `x = 1/10`).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSetSpec {
    pub max_block: u32,
    /// The comparison constant `100/81 = 1/0.9^2`.
    pub bound_constant: BigRational,
}

impl BlockSetSpec {
    pub fn new(max_block: u32) -> Self {
        BlockSetSpec {
            max_block,
            bound_constant: ratio_u64(100, 81),
        }
    }
}

/// Outcome of the reciprocal-sum bound check for the block set.
#[derive(Debug, Clone)]
pub struct BlockBoundCheck {
    pub max_block: u32,
    pub partial_sum: RationalSum,
    pub bound: BigRational,
    /// Exact rational comparison `partial_sum < bound`.
    pub ok: bool,
}

/// Largest representable block index: `10^18 + 18` still fits in `u64`.
pub const MAX_BLOCK: u32 = 18;

/// The union of blocks `{10^k, ..., 10^k + k}` for `k = 0..=max_block`.
///
/// Blocks never collide (`10^k + k < 10^(k+1)`), so the size is exactly
/// `(B+1)(B+2)/2` elements.
pub fn block_set(max_block: u32) -> Result<IntegerSet> {
    if max_block > MAX_BLOCK {
        return Err(Error::Domain(format!(
            "block index {max_block} overflows: 10^{max_block} exceeds the supported integer width"
        )));
    }
    let mut elements = Vec::with_capacity(((max_block as usize + 1) * (max_block as usize + 2)) / 2);
    for k in 0..=max_block {
        let base = 10u64.pow(k);
        for offset in 0..=k as u64 {
            elements.push(base + offset);
        }
    }
    IntegerSet::from_sorted(elements)
}

/// Exact check that the block set's reciprocal sum stays below `100/81`.
///
/// This holds for every `max_block`; the return value carries the exact
/// partial sum so callers can watch it approach the bound.
pub fn block_set_bound_check(max_block: u32) -> Result<BlockBoundCheck> {
    let set = block_set(max_block)?;
    let terms: Vec<RawFraction> = set
        .iter()
        .map(|s| (BigInt::one(), BigInt::from(s)))
        .collect();
    let partial_sum = RationalSum::new(reduce(sum_fractions_unreduced(terms)));
    let bound = ratio_u64(100, 81);
    let ok = partial_sum.value() < &bound;
    Ok(BlockBoundCheck {
        max_block,
        partial_sum,
        bound,
        ok,
    })
}

/// All `m <= horizon` whose base-3 representation uses only digits 0 and 1.
///
/// The classical progression-free family: a 3-AP `a + c = 2b` in digit-
/// {0,1} numbers forces `a = b = c` because doubling `b` never carries.
pub fn digit_construction(horizon: u64) -> IntegerSet {
    assert!(horizon >= 1, "digit_construction requires horizon >= 1");
    let mut elements = Vec::new();
    // Values in increasing order: interpret k's binary digits in base 3.
    for k in 1u64.. {
        let mut value: u128 = 0;
        let mut power: u128 = 1;
        let mut bits = k;
        while bits > 0 {
            if bits & 1 == 1 {
                value += power;
            }
            power *= 3;
            bits >>= 1;
        }
        if value > horizon as u128 {
            break;
        }
        elements.push(value as u64);
    }
    IntegerSet::from_sorted(elements).expect("digit values are increasing")
}

/// Named set families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    Primes,
    Squares,
    PowersOfTwo,
    FullInterval,
    Evens,
    RandomDensity,
}

impl FamilyName {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "primes" => Ok(FamilyName::Primes),
            "squares" => Ok(FamilyName::Squares),
            "powers_of_two" => Ok(FamilyName::PowersOfTwo),
            "full_interval" => Ok(FamilyName::FullInterval),
            "evens" => Ok(FamilyName::Evens),
            "random_density" => Ok(FamilyName::RandomDensity),
            other => Err(Error::Usage(format!(
                "unknown family {other:?}; expected one of primes, squares, powers_of_two, \
                 full_interval, evens, random_density"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::Primes => "primes",
            FamilyName::Squares => "squares",
            FamilyName::PowersOfTwo => "powers_of_two",
            FamilyName::FullInterval => "full_interval",
            FamilyName::Evens => "evens",
            FamilyName::RandomDensity => "random_density",
        }
    }
}

/// A family instance: name, horizon, and (for the random family) the
/// inclusion probability and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub horizon: u64,
    pub p: Option<f64>,
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, horizon: u64) -> Self {
        FamilySpec {
            name,
            horizon,
            p: None,
            seed: None,
        }
    }

    pub fn random(horizon: u64, p: f64, seed: u64) -> Self {
        FamilySpec {
            name: FamilyName::RandomDensity,
            horizon,
            p: Some(p),
            seed: Some(seed),
        }
    }

    /// The same family regenerated at a different horizon.
    pub fn at_horizon(&self, horizon: u64) -> FamilySpec {
        FamilySpec {
            horizon,
            ..self.clone()
        }
    }
}

/// Materialize a family. Deterministic per (name, horizon, p, seed); the
/// random family draws one SplitMix64 double per candidate `m = 1..=N`,
/// so prefixes agree across horizons for a fixed seed.
pub fn family(spec: &FamilySpec) -> Result<IntegerSet> {
    if spec.horizon < 1 {
        return Err(Error::Usage("family horizon must be >= 1".into()));
    }
    let n = spec.horizon;
    let elements: Vec<u64> = match spec.name {
        FamilyName::Primes => sieve_primes(n),
        FamilyName::Squares => (1..).map(|k: u64| k * k).take_while(|&v| v <= n).collect(),
        FamilyName::PowersOfTwo => (0..64)
            .map(|k| 1u64 << k)
            .take_while(|&v| v <= n)
            .collect(),
        FamilyName::FullInterval => (1..=n).collect(),
        FamilyName::Evens => (1..=n / 2).map(|k| 2 * k).collect(),
        FamilyName::RandomDensity => {
            let p = spec.p.ok_or_else(|| {
                Error::Usage("random_density requires an inclusion probability p".into())
            })?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Usage(format!("probability {p} is outside [0, 1]")));
            }
            let seed = spec
                .seed
                .ok_or_else(|| Error::Usage("random_density requires a seed".into()))?;
            let mut gen = SplitMix64::new(seed);
            (1..=n).filter(|_| gen.next_f64() < p).collect()
        }
    };
    IntegerSet::from_sorted(elements)
}

fn sieve_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for v in 2..=n {
        if !composite[v] {
            primes.push(v as u64);
            let mut multiple = v * v;
            while multiple <= n {
                composite[multiple] = true;
                multiple += v;
            }
        }
    }
    primes
}

/// Where a set comes from, per the CLI specifier grammar.
#[derive(Debug, Clone, PartialEq)]
pub enum SetSource {
    File(PathBuf),
    Family(FamilySpec),
    DecimalBlocks(u32),
    Digits3(u64),
}

/// Parse a set-source specifier:
///
/// ```text
/// family:<name>:<N>[:p=<float>][:seed=<int>]
/// paper-s:<B>
/// digits3:<N>
/// file:<path>
/// ```
pub fn parse_set_source(text: &str) -> Result<SetSource> {
    let bad = |msg: String| Error::Usage(msg);
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| bad(format!("malformed set source {text:?}: expected <kind>:<args>")))?;
    match kind {
        "file" => Ok(SetSource::File(PathBuf::from(rest))),
        "paper-s" => {
            let b: u32 = rest
                .parse()
                .map_err(|_| bad(format!("paper-s wants an integer block index, got {rest:?}")))?;
            Ok(SetSource::DecimalBlocks(b))
        }
        "digits3" => {
            let n: u64 = rest
                .parse()
                .map_err(|_| bad(format!("digits3 wants an integer horizon, got {rest:?}")))?;
            Ok(SetSource::Digits3(n))
        }
        "family" => {
            let mut parts = rest.split(':');
            let name = FamilyName::parse(
                parts
                    .next()
                    .ok_or_else(|| bad("family specifier is missing a name".into()))?,
            )?;
            let horizon: u64 = parts
                .next()
                .ok_or_else(|| bad("family specifier is missing a horizon".into()))?
                .parse()
                .map_err(|_| bad("family horizon must be an integer".into()))?;
            let mut spec = FamilySpec::new(name, horizon);
            for part in parts {
                if let Some(v) = part.strip_prefix("p=") {
                    spec.p = Some(
                        v.parse()
                            .map_err(|_| bad(format!("bad probability {v:?}")))?,
                    );
                } else if let Some(v) = part.strip_prefix("seed=") {
                    spec.seed = Some(v.parse().map_err(|_| bad(format!("bad seed {v:?}")))?);
                } else {
                    return Err(bad(format!("unknown family option {part:?}")));
                }
            }
            Ok(SetSource::Family(spec))
        }
        other => Err(bad(format!(
            "unknown set source kind {other:?}; expected file, family, paper-s or digits3"
        ))),
    }
}

/// Materialize a set source. File sources use the one-integer-per-line
/// format (lines beginning `#` ignored, commas allowed).
pub fn load_set_source(source: &SetSource) -> Result<IntegerSet> {
    match source {
        SetSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            parse_set(&text)
        }
        SetSource::Family(spec) => family(spec),
        SetSource::DecimalBlocks(b) => block_set(*b),
        SetSource::Digits3(n) => {
            if *n < 1 {
                return Err(Error::Usage("digits3 horizon must be >= 1".into()));
            }
            Ok(digit_construction(*n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::{find_ap_of_length, has_nontrivial_3ap};

    #[test]
    fn block_set_examples() {
        assert_eq!(
            block_set(2).unwrap().elements(),
            &[1, 10, 11, 100, 101, 102]
        );
        assert_eq!(block_set(0).unwrap().elements(), &[1]);
        let b3 = block_set(3).unwrap();
        assert_eq!(b3.len(), 10);
        assert_eq!(b3.max_element(), Some(1003));
        assert!(block_set(19).is_err());
        // Size formula (B+1)(B+2)/2 and block disjointness at the limit.
        let b18 = block_set(MAX_BLOCK).unwrap();
        assert_eq!(b18.len(), (19 * 20) / 2);
        assert_eq!(b18.max_element(), Some(10u64.pow(18) + 18));
    }

    #[test]
    fn block_set_contains_runs_of_every_block_length() {
        let set = block_set(6).unwrap();
        for k in 2..=6u64 {
            let w = find_ap_of_length(&set, k + 1).expect("block run exists");
            assert!(w.length > k);
        }
        // Blocks 0 and 1 are below the length-3 search floor; check directly.
        assert!(set.contains(1));
        assert!(set.contains(10) && set.contains(11));
    }

    #[test]
    fn block_bound_check_examples() {
        let check = block_set_bound_check(0).unwrap();
        assert!(check.ok);
        assert_eq!(check.partial_sum.fraction_string(), "1/1");

        let check = block_set_bound_check(1).unwrap();
        assert!(check.ok);
        // 1 + 1/10 + 1/11 = 131/110
        assert_eq!(check.partial_sum.fraction_string(), "131/110");

        for b in 0..=8 {
            assert!(block_set_bound_check(b).unwrap().ok, "bound fails at B={b}");
        }
    }

    #[test]
    fn bound_gap_shrinks_but_stays_positive() {
        let mut last_sum = None;
        for b in 0..=10 {
            let check = block_set_bound_check(b).unwrap();
            let sum = check.partial_sum.value().clone();
            if let Some(prev) = last_sum {
                assert!(sum > prev);
            }
            assert!(sum < check.bound);
            last_sum = Some(sum);
        }
    }

    #[test]
    fn digit_construction_examples() {
        assert_eq!(digit_construction(10).elements(), &[1, 3, 4, 9, 10]);
        assert_eq!(digit_construction(1).elements(), &[1]);
        assert_eq!(
            digit_construction(13).elements(),
            &[1, 3, 4, 9, 10, 12, 13]
        );
    }

    #[test]
    fn digit_construction_is_ap_free() {
        for n in [10u64, 100, 1000, 100_000] {
            let set = digit_construction(n);
            assert!(has_nontrivial_3ap(&set).is_none(), "3-AP found at N={n}");
        }
    }

    #[test]
    fn family_examples() {
        let primes = family(&FamilySpec::new(FamilyName::Primes, 10)).unwrap();
        assert_eq!(primes.elements(), &[2, 3, 5, 7]);
        let interval = family(&FamilySpec::new(FamilyName::FullInterval, 4)).unwrap();
        assert_eq!(interval.elements(), &[1, 2, 3, 4]);
        let evens = family(&FamilySpec::new(FamilyName::Evens, 9)).unwrap();
        assert_eq!(evens.elements(), &[2, 4, 6, 8]);
        let squares = family(&FamilySpec::new(FamilyName::Squares, 20)).unwrap();
        assert_eq!(squares.elements(), &[1, 4, 9, 16]);
        let pows = family(&FamilySpec::new(FamilyName::PowersOfTwo, 20)).unwrap();
        assert_eq!(pows.elements(), &[1, 2, 4, 8, 16]);
    }

    #[test]
    fn prime_sieve_known_counts() {
        assert_eq!(sieve_primes(100).len(), 25);
        assert_eq!(sieve_primes(1000).len(), 168);
        assert_eq!(sieve_primes(1), Vec::<u64>::new());
    }

    #[test]
    fn random_family_is_reproducible_and_prefix_stable() {
        let a = family(&FamilySpec::random(100, 0.5, 7)).unwrap();
        let b = family(&FamilySpec::random(100, 0.5, 7)).unwrap();
        assert_eq!(a, b);
        let longer = family(&FamilySpec::random(250, 0.5, 7)).unwrap();
        assert_eq!(longer.truncate(100), a);
        let other_seed = family(&FamilySpec::random(100, 0.5, 8)).unwrap();
        assert_ne!(a, other_seed);
    }

    #[test]
    fn random_family_requires_p_and_seed() {
        let spec = FamilySpec::new(FamilyName::RandomDensity, 50);
        assert!(matches!(family(&spec), Err(Error::Usage(_))));
        let spec = FamilySpec {
            p: Some(0.5),
            ..FamilySpec::new(FamilyName::RandomDensity, 50)
        };
        assert!(matches!(family(&spec), Err(Error::Usage(_))));
        let spec = FamilySpec {
            p: Some(1.5),
            seed: Some(1),
            ..FamilySpec::new(FamilyName::RandomDensity, 50)
        };
        assert!(matches!(family(&spec), Err(Error::Usage(_))));
    }

    #[test]
    fn set_source_grammar() {
        match parse_set_source("family:primes:100").unwrap() {
            SetSource::Family(spec) => {
                assert_eq!(spec.name, FamilyName::Primes);
                assert_eq!(spec.horizon, 100);
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_set_source("family:random_density:50:p=0.25:seed=9").unwrap() {
            SetSource::Family(spec) => {
                assert_eq!(spec.p, Some(0.25));
                assert_eq!(spec.seed, Some(9));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_set_source("paper-s:4").unwrap(), SetSource::DecimalBlocks(4));
        assert_eq!(parse_set_source("digits3:99").unwrap(), SetSource::Digits3(99));
        assert!(matches!(
            parse_set_source("file:/tmp/x.txt").unwrap(),
            SetSource::File(_)
        ));
        assert!(parse_set_source("bogus:1").is_err());
        assert!(parse_set_source("family:unknown:5").is_err());
        assert!(parse_set_source("justwords").is_err());
    }

    #[test]
    fn load_paper_source() {
        let set = load_set_source(&SetSource::DecimalBlocks(2)).unwrap();
        assert_eq!(set.elements(), &[1, 10, 11, 100, 101, 102]);
        let digits = load_set_source(&SetSource::Digits3(10)).unwrap();
        assert_eq!(digits.elements(), &[1, 3, 4, 9, 10]);
    }
}
