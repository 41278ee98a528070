//! Subcommand implementations.
//!
//! Every handler computes through the library, renders to the selected
//! format, and returns the process exit code: 0 for success, 2 when a
//! budget ran out (the result is still printed, flagged non-optimal).
//! Usage and data errors propagate as `Err` and are mapped in `main`.

use crate::args::{parse_horizons, Format, Invocation};
use crate::json::{format_float, Json};
use ap3lab::ap::{self, APWitness, TripleCount};
use ap3lab::audit::{self, ProbeOptions};
use ap3lab::construct::{self, SetSource};
use ap3lab::extremal::{self, ExtremalWitness};
use ap3lab::intset::{self, IntegerSet};
use ap3lab::rational::{fraction_string, BigInt, BigRational};
use ap3lab::{Error, Result};

pub fn dispatch(inv: &Invocation) -> Result<i32> {
    match inv.subcommand.as_str() {
        "count" => cmd_count(inv),
        "find-ap" => cmd_find_ap(inv),
        "r3" => cmd_r3(inv),
        "r3-table" => cmd_r3_table(inv),
        "fekete" => cmd_fekete(inv),
        "discrepancy" => cmd_discrepancy(inv),
        "construct" => cmd_construct(inv),
        "largeness" => cmd_largeness(inv),
        "audit-lemma3" => cmd_audit_lemma3(inv),
        "audit-chain" => cmd_audit_chain(inv),
        "abel-check" => cmd_abel_check(inv),
        other => Err(Error::Usage(format!(
            "unknown subcommand {other:?}; run 'ap3lab --help'"
        ))),
    }
}

// ---------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------

fn positional<'a>(inv: &'a Invocation, index: usize, what: &str) -> Result<&'a str> {
    inv.positional
        .get(index)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::Usage(format!("missing argument: {what}")))
}

fn parse_u64(text: &str, what: &str) -> Result<u64> {
    text.parse()
        .map_err(|_| Error::Usage(format!("{what} must be an integer, got {text:?}")))
}

/// Parse a set source and inject the `--seed` flag into a random family
/// that does not carry its own seed.
fn load_source(inv: &Invocation, spec_text: &str) -> Result<(SetSource, IntegerSet)> {
    let mut source = construct::parse_set_source(spec_text)?;
    if let SetSource::Family(spec) = &mut source {
        if spec.seed.is_none() {
            spec.seed = inv.seed;
        }
    }
    let set = construct::load_set_source(&source)?;
    Ok((source, set))
}

fn horizon_or_max(inv: &Invocation, set: &IntegerSet) -> Result<u64> {
    match inv.horizon {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(Error::Usage("--horizon must be >= 1".into())),
        None => set.max_element().ok_or_else(|| {
            Error::Usage("the set is empty; pass an explicit --horizon".into())
        }),
    }
}

fn parse_density(text: &str) -> Result<BigRational> {
    let bad = || Error::Usage(format!("bad density {text:?}; expected p/q or an integer"));
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
    } else {
        let p: i64 = text.parse().map_err(|_| bad())?;
        Ok(BigRational::from(BigInt::from(p)))
    }
}

fn rational_json(r: &BigRational) -> Json {
    Json::Str(fraction_string(r))
}

fn witness_json(w: &APWitness) -> Json {
    Json::Object(vec![
        ("first", Json::UInt(w.first)),
        ("difference", Json::UInt(w.difference)),
        ("length", Json::UInt(w.length)),
    ])
}

fn elements_json(set: &IntegerSet) -> Json {
    Json::Array(set.iter().map(Json::UInt).collect())
}

fn emit(text: String) -> Result<i32> {
    print!("{text}");
    Ok(0)
}

fn csv(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn opt_bool_json(v: Option<bool>) -> Json {
    match v {
        Some(b) => Json::Bool(b),
        None => Json::Null,
    }
}

fn opt_bool_csv(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

// ---------------------------------------------------------------------
// count
// ---------------------------------------------------------------------

fn cmd_count(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source")?;
    let (_, set) = load_source(inv, spec)?;
    let counts: TripleCount = ap::count_triples_convolution(&set);

    match inv.format {
        Format::Json => emit(
            Json::Object(vec![
                ("command", Json::Str("count".into())),
                ("source", Json::Str(spec.into())),
                ("set_size", Json::UInt(set.len() as u64)),
                (
                    "max_element",
                    set.max_element().map_or(Json::Null, Json::UInt),
                ),
                ("total", Json::UInt(counts.total)),
                ("trivial", Json::UInt(counts.trivial)),
                ("nontrivial_unordered", Json::UInt(counts.nontrivial_unordered)),
                ("ap_free", Json::Bool(counts.is_ap_free())),
            ])
            .render(),
        ),
        Format::Csv => emit(csv(
            &[
                "set_size",
                "max_element",
                "total",
                "trivial",
                "nontrivial_unordered",
                "ap_free",
            ],
            vec![vec![
                set.len().to_string(),
                set.max_element().map(|m| m.to_string()).unwrap_or_default(),
                counts.total.to_string(),
                counts.trivial.to_string(),
                counts.nontrivial_unordered.to_string(),
                counts.is_ap_free().to_string(),
            ]],
        )),
        Format::Text => emit(format!(
            "set: {spec} ({} elements, max {})\n\
             ordered triples (a+c=2b): {}\n\
             trivial (a=b=c):          {}\n\
             nontrivial unordered:     {}\n\
             AP-free: {}\n",
            set.len(),
            set.max_element().map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
            counts.total,
            counts.trivial,
            counts.nontrivial_unordered,
            counts.is_ap_free(),
        )),
    }
}

// ---------------------------------------------------------------------
// find-ap
// ---------------------------------------------------------------------

fn cmd_find_ap(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source")?;
    let length = inv.length.unwrap_or(3);
    if length < 3 {
        return Err(Error::Usage("--length must be >= 3".into()));
    }
    let (_, set) = load_source(inv, spec)?;
    let witness = if length == 3 {
        ap::has_nontrivial_3ap(&set)
    } else {
        ap::find_ap_of_length(&set, length)
    };

    match inv.format {
        Format::Json => emit(
            Json::Object(vec![
                ("command", Json::Str("find-ap".into())),
                ("source", Json::Str(spec.into())),
                ("min_length", Json::UInt(length)),
                ("found", Json::Bool(witness.is_some())),
                (
                    "witness",
                    witness.as_ref().map_or(Json::Null, witness_json),
                ),
            ])
            .render(),
        ),
        Format::Csv => emit(csv(
            &["found", "first", "difference", "length"],
            vec![match &witness {
                Some(w) => vec![
                    "true".into(),
                    w.first.to_string(),
                    w.difference.to_string(),
                    w.length.to_string(),
                ],
                None => vec!["false".into(), String::new(), String::new(), String::new()],
            }],
        )),
        Format::Text => match witness {
            Some(w) => emit(format!(
                "found: first={} difference={} length={}\nterms: {}\n",
                w.first,
                w.difference,
                w.length,
                w.terms().map(|t| t.to_string()).collect::<Vec<_>>().join(" "),
            )),
            None => emit(format!(
                "no arithmetic progression of length >= {length} in {spec}\n"
            )),
        },
    }
}

// ---------------------------------------------------------------------
// r3
// ---------------------------------------------------------------------

fn cmd_r3(inv: &Invocation) -> Result<i32> {
    let n = parse_u64(positional(inv, 0, "horizon n")?, "n")?;
    if n < 1 {
        return Err(Error::Usage("n must be >= 1".into()));
    }
    let witness = extremal::solve_r3(n, &inv.budget());
    let code = if witness.optimal { 0 } else { 2 };

    match inv.format {
        Format::Json => {
            print!(
                "{}",
                Json::Object(vec![
                    ("command", Json::Str("r3".into())),
                    ("n", Json::UInt(n)),
                    ("size", Json::UInt(witness.size)),
                    ("optimal", Json::Bool(witness.optimal)),
                    ("witness", elements_json(&witness.witness)),
                ])
                .render()
            );
        }
        Format::Csv => {
            print!(
                "{}",
                csv(
                    &["n", "size", "optimal", "witness"],
                    vec![vec![
                        n.to_string(),
                        witness.size.to_string(),
                        witness.optimal.to_string(),
                        witness_elements_string(&witness),
                    ]],
                )
            );
        }
        Format::Text => {
            print!(
                "f({n}) = {}{}\nwitness: {}\n",
                witness.size,
                if witness.optimal { "" } else { " (lower bound; budget exhausted)" },
                witness_elements_string(&witness),
            );
        }
    }
    Ok(code)
}

fn witness_elements_string(w: &ExtremalWitness) -> String {
    w.witness
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------------
// r3-table
// ---------------------------------------------------------------------

fn cmd_r3_table(inv: &Invocation) -> Result<i32> {
    let horizon = parse_u64(positional(inv, 0, "horizon N")?, "N")?;
    if horizon < 1 {
        return Err(Error::Usage("N must be >= 1".into()));
    }
    let (profile, witnesses) = extremal::r3_table(horizon, &inv.budget());
    let all_optimal = profile.all_optimal();
    let c_upper = all_optimal
        .then(|| extremal::density_limit_estimate(&profile))
        .transpose()?;
    let code = if all_optimal { 0 } else { 2 };

    match inv.format {
        Format::Json => {
            let rows: Vec<Json> = witnesses
                .iter()
                .map(|w| {
                    Json::Object(vec![
                        ("n", Json::UInt(w.n)),
                        ("size", Json::UInt(w.size)),
                        ("density", rational_json(&intset::density(&w.witness, w.n))),
                        ("optimal", Json::Bool(w.optimal)),
                        ("witness", elements_json(&w.witness)),
                    ])
                })
                .collect();
            print!(
                "{}",
                Json::Object(vec![
                    ("command", Json::Str("r3-table".into())),
                    ("horizon", Json::UInt(horizon)),
                    ("all_optimal", Json::Bool(all_optimal)),
                    (
                        "c_upper",
                        c_upper.as_ref().map_or(Json::Null, rational_json),
                    ),
                    ("rows", Json::Array(rows)),
                ])
                .render()
            );
        }
        Format::Csv => {
            let rows = witnesses
                .iter()
                .map(|w| {
                    vec![
                        w.n.to_string(),
                        w.size.to_string(),
                        format!("{}/{}", w.size, w.n),
                        w.optimal.to_string(),
                        witness_elements_string(w),
                    ]
                })
                .collect();
            print!("{}", csv(&["n", "size", "density", "optimal", "witness"], rows));
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("{:>6}  {:>6}  {:>10}  {:>8}  witness\n", "n", "f(n)", "f(n)/n", "optimal"));
            for w in &witnesses {
                out.push_str(&format!(
                    "{:>6}  {:>6}  {:>10}  {:>8}  {}\n",
                    w.n,
                    w.size,
                    format!("{}/{}", w.size, w.n),
                    w.optimal,
                    witness_elements_string(w),
                ));
            }
            if let Some(c) = &c_upper {
                out.push_str(&format!("upper bound on the density limit: {}\n", fraction_string(c)));
            } else {
                out.push_str("(table contains non-optimal entries; no density bound)\n");
            }
            print!("{out}");
        }
    }
    Ok(code)
}

// ---------------------------------------------------------------------
// fekete
// ---------------------------------------------------------------------

fn cmd_fekete(inv: &Invocation) -> Result<i32> {
    let horizon = parse_u64(positional(inv, 0, "horizon N")?, "N")?;
    if horizon < 1 {
        return Err(Error::Usage("N must be >= 1".into()));
    }
    let (profile, _) = extremal::r3_table(horizon, &inv.budget());
    let violations = extremal::fekete_audit(&profile)?;
    let checked = (1..=horizon)
        .map(|m| horizon.saturating_sub(m).saturating_sub(m - 1))
        .sum::<u64>();

    match inv.format {
        Format::Json => emit(
            Json::Object(vec![
                ("command", Json::Str("fekete".into())),
                ("horizon", Json::UInt(horizon)),
                ("checked_pairs", Json::UInt(checked)),
                ("violation_count", Json::UInt(violations.len() as u64)),
                (
                    "violations",
                    Json::Array(
                        violations
                            .iter()
                            .map(|v| {
                                Json::Object(vec![
                                    ("m", Json::UInt(v.m)),
                                    ("n", Json::UInt(v.n)),
                                    ("size_m", Json::UInt(v.size_m)),
                                    ("size_n", Json::UInt(v.size_n)),
                                    ("size_sum", Json::UInt(v.size_sum)),
                                ])
                            })
                            .collect(),
                    ),
                ),
            ])
            .render(),
        ),
        Format::Csv => emit(csv(
            &["m", "n", "size_m", "size_n", "size_sum"],
            violations
                .iter()
                .map(|v| {
                    vec![
                        v.m.to_string(),
                        v.n.to_string(),
                        v.size_m.to_string(),
                        v.size_n.to_string(),
                        v.size_sum.to_string(),
                    ]
                })
                .collect(),
        )),
        Format::Text => {
            if violations.is_empty() {
                emit(format!(
                    "subadditivity holds: no violation among {checked} pairs with m+n <= {horizon}\n"
                ))
            } else {
                let mut out = String::new();
                for v in &violations {
                    out.push_str(&format!(
                        "VIOLATION f({}+{}) = {} > f({}) + f({}) = {}\n",
                        v.m,
                        v.n,
                        v.size_sum,
                        v.m,
                        v.n,
                        v.size_m + v.size_n
                    ));
                }
                emit(out)
            }
        }
    }
}

// ---------------------------------------------------------------------
// discrepancy
// ---------------------------------------------------------------------

fn cmd_discrepancy(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source")?;
    let (_, set) = load_source(inv, spec)?;
    let n = horizon_or_max(inv, &set)?;
    let density = match &inv.density {
        Some(text) => parse_density(text)?,
        None => intset::density(&set, n),
    };
    let grid = inv.grid.unwrap_or(4 * n + 1);
    let report = ap::discrepancy(&set, n, &density, grid)?;

    match inv.format {
        Format::Json => emit(
            Json::Object(vec![
                ("command", Json::Str("discrepancy".into())),
                ("source", Json::Str(spec.into())),
                ("n", Json::UInt(report.n)),
                ("density", rational_json(&report.density_used)),
                ("grid_size", Json::UInt(report.grid_size)),
                ("sup_abs", Json::Float(report.sup_abs)),
                ("sup_over_n", Json::Float(report.sup_over_n)),
            ])
            .render(),
        ),
        Format::Csv => emit(csv(
            &["n", "density", "grid_size", "sup_abs", "sup_over_n"],
            vec![vec![
                report.n.to_string(),
                fraction_string(&report.density_used),
                report.grid_size.to_string(),
                format_float(report.sup_abs),
                format_float(report.sup_over_n),
            ]],
        )),
        Format::Text => emit(format!(
            "exponential-sum discrepancy for {spec}\n\
             n = {}, C = {}, grid = {} roots of unity\n\
             sup |E(z)|   = {}\n\
             sup |E(z)|/n = {}\n",
            report.n,
            fraction_string(&report.density_used),
            report.grid_size,
            report.sup_abs,
            report.sup_over_n,
        )),
    }
}

// ---------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------

fn cmd_construct(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source")?;
    let (_, set) = load_source(inv, spec)?;

    match inv.format {
        Format::Json => emit(
            Json::Object(vec![
                ("command", Json::Str("construct".into())),
                ("source", Json::Str(spec.into())),
                ("size", Json::UInt(set.len() as u64)),
                (
                    "max_element",
                    set.max_element().map_or(Json::Null, Json::UInt),
                ),
                ("elements", elements_json(&set)),
            ])
            .render(),
        ),
        Format::Csv => emit(csv(
            &["element"],
            set.iter().map(|v| vec![v.to_string()]).collect(),
        )),
        Format::Text => emit(format!(
            "{}\n",
            set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        )),
    }
}

// ---------------------------------------------------------------------
// largeness
// ---------------------------------------------------------------------

fn cmd_largeness(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source")?;
    let (_, set) = load_source(inv, spec)?;
    let horizon = horizon_or_max(inv, &set)?;
    let options = ProbeOptions {
        grid_points: inv.points.unwrap_or(32),
        ..ProbeOptions::default()
    };
    let probe = audit::largeness_probe(&set, horizon, &options);

    match inv.format {
        Format::Json => {
            let rows: Vec<Json> = probe
                .points
                .iter()
                .map(|p| {
                    Json::Object(vec![
                        ("n", Json::UInt(p.n)),
                        ("reciprocal_sum", Json::Float(p.reciprocal_sum)),
                        ("counting_sum", Json::Float(p.counting_sum)),
                        (
                            "reciprocal_sum_exact",
                            p.reciprocal_sum_exact
                                .as_ref()
                                .map_or(Json::Null, |r| Json::Str(r.fraction_string())),
                        ),
                        (
                            "counting_sum_exact",
                            p.counting_sum_exact
                                .as_ref()
                                .map_or(Json::Null, |r| Json::Str(r.fraction_string())),
                        ),
                    ])
                })
                .collect();
            emit(
                Json::Object(vec![
                    ("audit", Json::Str("largeness-probe".into())),
                    (
                        "params",
                        Json::Object(vec![
                            ("source", Json::Str(spec.into())),
                            ("horizon", Json::UInt(horizon)),
                            ("points", Json::UInt(options.grid_points as u64)),
                            ("exact_cutoff", Json::UInt(options.exact_cutoff)),
                            ("residual_cutoff", Json::UInt(options.residual_cutoff)),
                        ]),
                    ),
                    ("rows", Json::Array(rows)),
                    (
                        "summary",
                        Json::Object(vec![
                            (
                                "abel_residual",
                                probe
                                    .abel_residual
                                    .as_ref()
                                    .map_or(Json::Null, |r| Json::Str(r.fraction_string())),
                            ),
                            (
                                "abel_residual_is_zero",
                                probe
                                    .abel_residual
                                    .as_ref()
                                    .map_or(Json::Null, |r| Json::Bool(r.is_zero())),
                            ),
                        ]),
                    ),
                ])
                .render(),
            )
        }
        Format::Csv => emit(csv(
            &[
                "n",
                "reciprocal_sum",
                "counting_sum",
                "reciprocal_sum_exact",
                "counting_sum_exact",
            ],
            probe
                .points
                .iter()
                .map(|p| {
                    vec![
                        p.n.to_string(),
                        format_float(p.reciprocal_sum),
                        format_float(p.counting_sum),
                        p.reciprocal_sum_exact
                            .as_ref()
                            .map(|r| r.fraction_string())
                            .unwrap_or_default(),
                        p.counting_sum_exact
                            .as_ref()
                            .map(|r| r.fraction_string())
                            .unwrap_or_default(),
                    ]
                })
                .collect(),
        )),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "largeness probe for {spec} up to N = {horizon}\n\
                 {:>10}  {:>22}  {:>22}\n",
                "n", "sum 1/s (s<=n)", "sum f(m)/m^2 (m<=n)"
            ));
            for p in &probe.points {
                out.push_str(&format!(
                    "{:>10}  {:>22.15}  {:>22.15}\n",
                    p.n, p.reciprocal_sum, p.counting_sum
                ));
            }
            match &probe.abel_residual {
                Some(r) => out.push_str(&format!(
                    "summation-by-parts residual at N (exact): {}\n",
                    r.fraction_string()
                )),
                None => out.push_str(
                    "summation-by-parts residual skipped (horizon above exact cutoff)\n",
                ),
            }
            out.push_str("no convergence verdict: both series are finite snapshots\n");
            emit(out)
        }
    }
}

// ---------------------------------------------------------------------
// audit-lemma3
// ---------------------------------------------------------------------

fn cmd_audit_lemma3(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source or 'extremal'")?;
    let horizons = parse_horizons(
        inv.horizons
            .as_deref()
            .ok_or_else(|| Error::Usage("audit-lemma3 requires --horizons".into()))?,
    )?;

    let (report, code) = if spec == "extremal" {
        let max_h = *horizons.last().expect("nonempty horizons");
        let (_, witnesses) = extremal::r3_table(max_h, &inv.budget());
        let selected: Vec<ExtremalWitness> = witnesses
            .into_iter()
            .filter(|w| horizons.binary_search(&w.n).is_ok())
            .collect();
        let any_bound = selected.iter().any(|w| !w.optimal);
        (
            audit::lemma3_extremal_audit(&selected),
            if any_bound { 2 } else { 0 },
        )
    } else {
        let mut source = construct::parse_set_source(spec)?;
        if let SetSource::Family(family_spec) = &mut source {
            if family_spec.seed.is_none() {
                family_spec.seed = inv.seed;
            }
        }
        let report = match &source {
            SetSource::Family(family_spec) => {
                audit::lemma3_residual_audit(spec, &horizons, |n| {
                    construct::family(&family_spec.at_horizon(n))
                })?
            }
            SetSource::Digits3(_) => audit::lemma3_residual_audit(spec, &horizons, |n| {
                Ok(construct::digit_construction(n))
            })?,
            SetSource::DecimalBlocks(_) | SetSource::File(_) => {
                let set = construct::load_set_source(&source)?;
                audit::lemma3_residual_audit(spec, &horizons, move |n| Ok(set.truncate(n)))?
            }
        };
        (report, 0)
    };

    let horizons_label = horizons
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",");

    match inv.format {
        Format::Json => {
            let rows: Vec<Json> = report
                .rows
                .iter()
                .map(|r| {
                    Json::Object(vec![
                        ("n", Json::UInt(r.n)),
                        ("set_size", Json::UInt(r.set_size)),
                        ("density", rational_json(&r.density)),
                        ("total", Json::UInt(r.total)),
                        ("residual", rational_json(&r.residual)),
                        ("residual_over_n2", Json::Float(r.residual_over_n2)),
                        ("optimal", opt_bool_json(r.optimal)),
                        ("roth_identity", opt_bool_json(r.roth_identity)),
                    ])
                })
                .collect();
            print!(
                "{}",
                Json::Object(vec![
                    ("audit", Json::Str("lemma3-residual".into())),
                    (
                        "params",
                        Json::Object(vec![
                            ("source", Json::Str(report.source.clone())),
                            ("horizons", Json::Str(horizons_label)),
                        ]),
                    ),
                    ("rows", Json::Array(rows)),
                ])
                .render()
            );
        }
        Format::Csv => {
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.set_size.to_string(),
                        fraction_string(&r.density),
                        r.total.to_string(),
                        fraction_string(&r.residual),
                        format_float(r.residual_over_n2),
                        opt_bool_csv(r.optimal),
                        opt_bool_csv(r.roth_identity),
                    ]
                })
                .collect();
            print!(
                "{}",
                csv(
                    &[
                        "n",
                        "set_size",
                        "density",
                        "total",
                        "residual",
                        "residual_over_n2",
                        "optimal",
                        "roth_identity",
                    ],
                    rows,
                )
            );
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "triple-count law audit: {} at horizons {}\n\
                 residual R(n) = total - C(n)^3 n^2/2 (exact); reported, never judged\n\
                 {:>8}  {:>9}  {:>12}  {:>12}  {:>16}  {:>12}\n",
                report.source, horizons_label, "n", "size", "C(n)", "total", "residual", "R/n^2"
            ));
            for r in &report.rows {
                out.push_str(&format!(
                    "{:>8}  {:>9}  {:>12}  {:>12}  {:>16}  {:>12.5e}{}\n",
                    r.n,
                    r.set_size,
                    fraction_string(&r.density),
                    r.total,
                    fraction_string(&r.residual),
                    r.residual_over_n2,
                    match (r.optimal, r.roth_identity) {
                        (Some(false), _) => "  [lower bound]",
                        (Some(true), Some(true)) => "  [total = size]",
                        _ => "",
                    },
                ));
            }
            print!("{out}");
        }
    }
    Ok(code)
}

// ---------------------------------------------------------------------
// audit-chain
// ---------------------------------------------------------------------

fn cmd_audit_chain(inv: &Invocation) -> Result<i32> {
    let horizon = parse_u64(positional(inv, 0, "horizon N")?, "N")?;
    if horizon < 1 {
        return Err(Error::Usage("N must be >= 1".into()));
    }
    let (profile, _) = extremal::r3_table(horizon, &inv.budget());
    let rows = audit::roth_chain_audit(&profile)?;

    match inv.format {
        Format::Json => {
            let json_rows: Vec<Json> = rows
                .iter()
                .map(|r| {
                    Json::Object(vec![
                        ("n", Json::UInt(r.n)),
                        ("size", Json::UInt(r.size)),
                        ("bound", Json::Float(r.bound)),
                        ("ratio", Json::Float(r.ratio)),
                        ("series_term", Json::Float(r.series_term)),
                        ("comparison_term", Json::Float(r.comparison_term)),
                        ("exceeds_bound", Json::Bool(r.exceeds_bound)),
                    ])
                })
                .collect();
            emit(
                Json::Object(vec![
                    ("audit", Json::Str("roth-chain".into())),
                    (
                        "params",
                        Json::Object(vec![("horizon", Json::UInt(horizon))]),
                    ),
                    ("rows", Json::Array(json_rows)),
                ])
                .render(),
            )
        }
        Format::Csv => emit(csv(
            &[
                "n",
                "size",
                "bound",
                "ratio",
                "series_term",
                "comparison_term",
                "exceeds_bound",
            ],
            rows.iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.size.to_string(),
                        format_float(r.bound),
                        format_float(r.ratio),
                        format_float(r.series_term),
                        format_float(r.comparison_term),
                        r.exceeds_bound.to_string(),
                    ]
                })
                .collect(),
        )),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "bound-chain audit to N = {horizon} (report only; the bound is asymptotic)\n\
                 {:>6}  {:>6}  {:>12}  {:>8}  {:>13}  {:>13}\n",
                "n", "f(n)", "2^(1/3)n^(2/3)", "ratio", "f(n)/n^2", "2^(1/3)/n^(4/3)"
            ));
            for r in &rows {
                out.push_str(&format!(
                    "{:>6}  {:>6}  {:>12.6}  {:>8.4}  {:>13.6e}  {:>13.6e}{}\n",
                    r.n,
                    r.size,
                    r.bound,
                    r.ratio,
                    r.series_term,
                    r.comparison_term,
                    if r.exceeds_bound { "  << above bound (violation only if n > n0)" } else { "" },
                ));
            }
            emit(out)
        }
    }
}

// ---------------------------------------------------------------------
// abel-check
// ---------------------------------------------------------------------

fn cmd_abel_check(inv: &Invocation) -> Result<i32> {
    let spec = positional(inv, 0, "set source")?;
    let (_, set) = load_source(inv, spec)?;
    let horizon = horizon_or_max(inv, &set)?;
    let residual = intset::abel_identity_residual(&set, horizon);
    let is_zero = residual.is_zero();

    match inv.format {
        Format::Json => emit(
            Json::Object(vec![
                ("command", Json::Str("abel-check".into())),
                ("source", Json::Str(spec.into())),
                ("horizon", Json::UInt(horizon)),
                ("residual", Json::Str(residual.fraction_string())),
                ("residual_is_zero", Json::Bool(is_zero)),
            ])
            .render(),
        ),
        Format::Csv => emit(csv(
            &["horizon", "residual", "residual_is_zero"],
            vec![vec![
                horizon.to_string(),
                residual.fraction_string(),
                is_zero.to_string(),
            ]],
        )),
        Format::Text => emit(format!(
            "summation-by-parts identity at N = {horizon} for {spec}\n\
             residual (exact): {}\n\
             identity holds: {is_zero}\n",
            residual.fraction_string(),
        )),
    }
}
