//! Hand-rolled argument parsing for the `ap3lab` binary.

use ap3lab::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!(
                "unknown format {other:?}; expected text, json or csv"
            ))),
        }
    }
}

/// One parsed command-line invocation.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub subcommand: String,
    pub positional: Vec<String>,
    pub format: Format,
    pub budget_nodes: Option<u64>,
    pub budget_secs: Option<f64>,
    pub grid: Option<u64>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub horizon: Option<u64>,
    pub horizons: Option<String>,
    pub length: Option<u64>,
    pub points: Option<usize>,
    pub density: Option<String>,
    pub help: bool,
}

impl Invocation {
    fn new() -> Self {
        Invocation {
            subcommand: String::new(),
            positional: Vec::new(),
            format: Format::Text,
            budget_nodes: None,
            budget_secs: None,
            grid: None,
            threads: None,
            seed: None,
            horizon: None,
            horizons: None,
            length: None,
            points: None,
            density: None,
            help: false,
        }
    }

    pub fn budget(&self) -> ap3lab::extremal::Budget {
        ap3lab::extremal::Budget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_secs.map(std::time::Duration::from_secs_f64),
        }
    }
}

fn parse_value<T: std::str::FromStr>(flag: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Usage(format!("bad value {value:?} for {flag}")))
}

pub fn parse(argv: &[String]) -> Result<Invocation> {
    let mut inv = Invocation::new();
    let mut iter = argv.iter().peekable();

    while let Some(arg) = iter.next() {
        if let Some(flag_body) = arg.strip_prefix("--") {
            let (flag, inline_value) = match flag_body.split_once('=') {
                Some((f, v)) => (f, Some(v.to_string())),
                None => (flag_body, None),
            };
            if flag == "help" {
                inv.help = true;
                continue;
            }
            let mut take_value = || -> Result<String> {
                if let Some(v) = inline_value.clone() {
                    return Ok(v);
                }
                iter.next()
                    .cloned()
                    .ok_or_else(|| Error::Usage(format!("--{flag} expects a value")))
            };
            match flag {
                "format" => inv.format = Format::parse(&take_value()?)?,
                "budget-nodes" => inv.budget_nodes = Some(parse_value(arg, &take_value()?)?),
                "budget-secs" => inv.budget_secs = Some(parse_value(arg, &take_value()?)?),
                "grid" => inv.grid = Some(parse_value(arg, &take_value()?)?),
                "threads" => inv.threads = Some(parse_value(arg, &take_value()?)?),
                "seed" => inv.seed = Some(parse_value(arg, &take_value()?)?),
                "horizon" => inv.horizon = Some(parse_value(arg, &take_value()?)?),
                "horizons" => inv.horizons = Some(take_value()?),
                "length" => inv.length = Some(parse_value(arg, &take_value()?)?),
                "points" => inv.points = Some(parse_value(arg, &take_value()?)?),
                "density" => inv.density = Some(take_value()?),
                other => {
                    return Err(Error::Usage(format!("unknown flag --{other}")));
                }
            }
        } else if inv.subcommand.is_empty() {
            inv.subcommand = arg.clone();
        } else {
            inv.positional.push(arg.clone());
        }
    }

    Ok(inv)
}

/// Expand a horizons specifier: comma-separated items, each `n`, `a:b`
/// (inclusive) or `a:b:step`. The result is sorted and deduplicated.
pub fn parse_horizons(spec: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in spec.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [single] => out.push(parse_value("--horizons", single)?),
            [a, b] | [a, b, _] => {
                let start: u64 = parse_value("--horizons", a)?;
                let end: u64 = parse_value("--horizons", b)?;
                let step: u64 = match parts.get(2) {
                    Some(s) => parse_value("--horizons", s)?,
                    None => 1,
                };
                if step == 0 || start > end {
                    return Err(Error::Usage(format!("bad horizon range {item:?}")));
                }
                let mut n = start;
                while n <= end {
                    out.push(n);
                    n += step;
                }
            }
            _ => return Err(Error::Usage(format!("bad horizons item {item:?}"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("empty horizons list".into()));
    }
    if out.contains(&0) {
        return Err(Error::Usage("horizons must be >= 1".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
