//! `ap3lab` — command-line surface of the 3-AP laboratory.
//!
//! Every subcommand prints deterministic output: identical invocations
//! produce byte-identical json/csv regardless of `--threads`. The env
//! var `AP3LAB_LOG` controls stderr diagnostics only (`debug` to enable)
//! and never affects results.

mod args;
mod commands;
mod json;

use std::sync::OnceLock;

const USAGE: &str = "\
ap3lab — desk-scale laboratory for 3-term arithmetic progressions

USAGE:
    ap3lab <subcommand> [args] [flags]

SUBCOMMANDS:
    count <set>                exact ordered 3-AP triple counts
    find-ap <set>              canonical AP witness (--length k, default 3)
    r3 <n>                     maximum AP-free subset of {1..n} with witness
    r3-table <N>               table f(1..N) with densities and witnesses
    fekete <N>                 subadditivity audit over the exact table
    discrepancy <set>          exponential-sum sup-norm on a root-of-unity grid
                               (--horizon n, --density p/q, --grid M)
    construct <set>            materialize a set and print its elements
    largeness <set>            paired series of the largeness criterion
                               (--horizon N, --points G)
    audit-lemma3 <set|extremal>  triple-count law residuals (--horizons a,b:c)
    audit-chain <N>            extremal bound-chain rows from the exact table
    abel-check <set>           exact summation-by-parts residual (--horizon N)

SET SOURCES:
    file:<path>                one integer per line; '#' lines ignored
    family:<name>:<N>[:p=<float>][:seed=<int>]
                               name in {primes, squares, powers_of_two,
                               full_interval, evens, random_density}
    paper-s:<B>                decimal blocks {10^k .. 10^k+k}, k = 0..=B
    digits3:<N>                integers <= N with base-3 digits in {0,1}

FLAGS:
    --format {text|json|csv}   output format (default text)
    --budget-nodes N           search node limit (reproducible)
    --budget-secs S            search wall-clock limit
    --grid M                   discrepancy grid size (default 4n+1)
    --threads K                worker threads (never affects results)
    --seed S                   seed for the random family
    --help                     this message

EXIT CODES:
    0 success   1 usage error   2 budget exhausted (result printed)
    3 invalid input data
";

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run(&argv));
}

fn run(argv: &[String]) -> i32 {
    let inv = match args::parse(argv) {
        Ok(inv) => inv,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    if inv.help {
        print!("{USAGE}");
        return 0;
    }
    if inv.subcommand.is_empty() {
        eprint!("{USAGE}");
        return 1;
    }

    let started = std::time::Instant::now();
    let outcome = ap3lab::run_with_threads(inv.threads, || commands::dispatch(&inv));
    log_debug(format!(
        "{} finished in {:?}",
        inv.subcommand,
        started.elapsed()
    ));

    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            match e {
                ap3lab::Error::Usage(_) => 1,
                ap3lab::Error::NonOptimal(_) => 2,
                ap3lab::Error::Parse { .. } | ap3lab::Error::Domain(_) => 3,
            }
        }
    }
}

fn log_debug(message: String) {
    static ENABLED: OnceLock<bool> = OnceLock::new();
    let on = *ENABLED.get_or_init(|| {
        std::env::var("AP3LAB_LOG").is_ok_and(|v| v.eq_ignore_ascii_case("debug"))
    });
    if on {
        eprintln!("[ap3lab] {message}");
    }
}
