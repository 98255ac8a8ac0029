//! Command implementations behind the `circpow` binary.
//!
//! Every command returns an [`Envelope`] with the echoed parameters, so a
//! JSON result can be parsed and re-run to reproduce it.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Context;
use circpow::eigenbasis;
use circpow::error::Error;
use circpow::graph::CircuitPower;
use circpow::integer;
use circpow::spectrum::{self, DirichletParams};
use circpow::survey::{self, Check, NumericSource, ScanConfig};
use circpow::tolerances;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPLETE_GRAPH: i32 = 3;
pub const EXIT_EIGENVALUE_ABSENT: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  scan: at least one theorem check failed
  2  usage error (bad arguments, ranges or config)
  3  the requested graph is complete (spectrum prints the K_n spectrum anyway)
  4  eigenvalue absent, or not an integer eigenvalue candidate
  5  any other error (I/O, numerical failure)";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "circpow", version, about = "Spectra of circuit distance powers C_n^(d)", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Closed-form eigenvalues λ_0..λ_{n-1} of C_n^(d)
    #[command(after_help = EXIT_CODES)]
    Spectrum(SpectrumArgs),
    /// Integer eigenvalues with their predicted multiplicities
    #[command(after_help = EXIT_CODES)]
    IntEigs(IntEigsArgs),
    /// A {-1,0,1} eigenspace basis for an integer eigenvalue
    #[command(after_help = EXIT_CODES)]
    Basis(BasisArgs),
    /// Validate the theorems over a grid of (n, d)
    #[command(after_help = EXIT_CODES)]
    Scan(ScanArgs),
    /// Samples of the Dirichlet kernel f_d on [0, 2π] as CSV
    #[command(after_help = EXIT_CODES)]
    Fplot(FplotArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::IntEigs(_) => "int-eigs",
            Command::Basis(_) => "basis",
            Command::Scan(_) => "scan",
            Command::Fplot(_) => "fplot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanFormat {
    /// One record per line
    Jsonl,
    /// A single envelope with records and summary
    Json,
    /// Per-check outcome counts
    Csv,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SpectrumArgs {
    pub n: usize,
    pub d: usize,
    /// Merge equal eigenvalues into (value, multiplicity) groups
    #[arg(long)]
    #[serde(default)]
    pub grouped: bool,
    /// Grouping tolerance
    #[arg(long, default_value_t = tolerances::GROUPING)]
    #[serde(default = "default_grouping")]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(default = "default_format")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct IntEigsArgs {
    pub n: usize,
    pub d: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(default = "default_format")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BasisArgs {
    pub n: usize,
    pub d: usize,
    /// Integer eigenvalue: -3, -2, -1, 0, 1 or 2d
    #[arg(allow_negative_numbers = true)]
    pub lambda: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(default = "default_format")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    /// Comma-separated checks: theorems, odd-multiplicity, mult-two,
    /// mult-two-sharp, integrality, path-conjectures
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub checks: Vec<String>,
    /// Orders to scan, e.g. `3..200` (inclusive) or `36`
    #[arg(long)]
    pub n: Option<String>,
    /// Exponents to scan, e.g. `1..4`; default is every exponent
    #[arg(long)]
    pub d: Option<String>,
    /// TOML file with scan settings; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads
    #[arg(long, env = "CIRCPOW_THREADS")]
    pub threads: Option<usize>,
    /// Numeric spectrum used for circuit powers
    #[arg(long, value_enum)]
    pub numeric: Option<Numeric>,
    #[arg(long, value_enum, default_value_t = ScanFormat::Jsonl)]
    #[serde(default = "default_scan_format")]
    pub format: ScanFormat,
    /// Also write the CSV summary to this file
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Numeric {
    Jacobi,
    CosineSum,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FplotArgs {
    pub d: usize,
    /// Number of uniform samples on [0, 2π], endpoints included
    #[arg(long, default_value_t = 256)]
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    #[serde(default = "default_csv")]
    pub format: Format,
}

fn default_grouping() -> f64 {
    tolerances::GROUPING
}
fn default_format() -> Format {
    Format::Json
}
fn default_csv() -> Format {
    Format::Csv
}
fn default_scan_format() -> ScanFormat {
    ScanFormat::Jsonl
}
fn default_samples() -> usize {
    256
}

/// Machine-readable output of every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub version: String,
}

impl Envelope {
    /// Recovers the command that produced this envelope.
    pub fn to_command(&self) -> anyhow::Result<Command> {
        let tagged = json!({ self.command.clone(): self.params });
        serde_json::from_value(tagged).context("envelope parameters do not form a command")
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub envelope: Envelope,
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            error: anyhow::anyhow!(msg.into()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderTooSmall(_)
            | Error::OrderTooLarge(_)
            | Error::ExponentTooSmall(_)
            | Error::InvalidConfig(_)
            | Error::InvalidTolerance(_)
            | Error::RequiresDGreaterThanOne => EXIT_USAGE,
            Error::CompleteGraph { .. } => EXIT_COMPLETE_GRAPH,
            Error::EigenvalueAbsent { .. } | Error::NotACandidate { .. } => EXIT_EIGENVALUE_ABSENT,
            _ => EXIT_OTHER,
        };
        Self {
            code,
            error: e.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Self {
            code: EXIT_OTHER,
            error,
        }
    }
}

pub type CmdResult = std::result::Result<Report, Failure>;

pub fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::IntEigs(a) => cmd_int_eigs(a),
        Command::Basis(a) => cmd_basis(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Fplot(a) => cmd_fplot(a),
    }
}

fn envelope<T: Serialize>(cmd: &str, params: &T, result: Value) -> Envelope {
    Envelope {
        command: cmd.to_string(),
        params: serde_json::to_value(params).expect("parameters serialize"),
        result,
        version: VERSION.to_string(),
    }
}

fn to_json(env: &Envelope) -> String {
    serde_json::to_string_pretty(env).expect("envelope serializes") + "\n"
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> CmdResult {
    let g = CircuitPower::new(a.n, a.d)?;
    let entries = spectrum::circuit_power_spectrum(&g);
    let complete = g.is_complete();
    let (stderr, code) = if complete {
        (
            format!(
                "notice: C_{}^({}) is the complete graph K_{}; eigenvalues are {} (once) and -1\n",
                a.n,
                a.d,
                a.n,
                a.n - 1
            ),
            EXIT_COMPLETE_GRAPH,
        )
    } else {
        (String::new(), EXIT_OK)
    };
    let (result, stdout) = if a.grouped {
        let grouped = spectrum::group_spectrum(&entries, a.tol)?;
        let result = json!({ "n": a.n, "d": a.d, "complete": complete, "groups": grouped.groups });
        let stdout = match a.format {
            Format::Json => String::new(),
            Format::Csv => csv_string(
                &["value", "multiplicity"],
                grouped
                    .groups
                    .iter()
                    .map(|g| vec![g.value.to_string(), g.multiplicity.to_string()]),
            )?,
            Format::Text => grouped.groups.iter().fold(String::new(), |mut s, g| {
                let _ = writeln!(s, "{:>22.15}  x{}", g.value, g.multiplicity);
                s
            }),
        };
        (result, stdout)
    } else {
        let result = json!({ "n": a.n, "d": a.d, "complete": complete, "entries": entries });
        let stdout = match a.format {
            Format::Json => String::new(),
            Format::Csv => csv_string(
                &["r", "value"],
                entries.iter().map(|e| vec![e.r.to_string(), e.value.to_string()]),
            )?,
            Format::Text => entries.iter().fold(String::new(), |mut s, e| {
                let _ = writeln!(s, "lambda_{:<6} {:>22.15}", e.r, e.value);
                s
            }),
        };
        (result, stdout)
    };
    let env = envelope("spectrum", a, result);
    let stdout = if a.format == Format::Json {
        to_json(&env)
    } else {
        stdout
    };
    Ok(Report {
        envelope: env,
        stdout,
        stderr,
        code,
    })
}

pub fn cmd_int_eigs(a: &IntEigsArgs) -> CmdResult {
    let reports = integer::integer_spectrum(a.n, a.d)?;
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "eigenvalue": r.eigenvalue,
                "multiplicity": r.multiplicity,
                "case_tag": r.case_tag,
                "case": r.case_tag.description(),
                "params": r.params,
            })
        })
        .collect();
    let env = envelope("int-eigs", a, json!({ "n": a.n, "d": a.d, "reports": rows }));
    let stdout = match a.format {
        Format::Json => to_json(&env),
        Format::Csv => csv_string(
            &["eigenvalue", "multiplicity", "case", "g", "h", "ord2_n", "ord2_d", "ord2_d1"],
            reports.iter().map(|r| {
                vec![
                    r.eigenvalue.to_string(),
                    r.multiplicity.to_string(),
                    r.case_tag.description().to_string(),
                    r.params.g.to_string(),
                    r.params.h.to_string(),
                    r.params.ord2_n.to_string(),
                    r.params.ord2_d.to_string(),
                    r.params.ord2_d1.to_string(),
                ]
            }),
        )?,
        Format::Text => reports.iter().fold(String::new(), |mut s, r| {
            let _ = writeln!(
                s,
                "{:>6}  x{:<4} {}",
                r.eigenvalue,
                r.multiplicity,
                r.case_tag.description()
            );
            s
        }),
    };
    Ok(Report {
        envelope: env,
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

pub fn cmd_basis(a: &BasisArgs) -> CmdResult {
    let report = eigenbasis::basis_for(a.n, a.d, a.lambda)?;
    let result = serde_json::to_value(&report).context("serializing basis")?;
    let env = envelope("basis", a, result);
    let stdout = match a.format {
        Format::Json => to_json(&env),
        Format::Csv => csv_string(
            &["family", "k", "entries"],
            report.vectors.iter().map(|v| {
                let entries: Vec<String> = v.entries.iter().map(i8::to_string).collect();
                vec![
                    serde_json::to_value(v.family)
                        .ok()
                        .and_then(|x| x.as_str().map(str::to_string))
                        .unwrap_or_default(),
                    v.k.to_string(),
                    entries.join(" "),
                ]
            }),
        )?,
        Format::Text => format!(
            "eigenvalue {} of C_{}^({}): rank {}, verified {}, orthogonal {}\n{}",
            report.eigenvalue,
            a.n,
            a.d,
            report.rank,
            report.verified,
            report.orthogonal,
            report.to_text()
        ),
    };
    Ok(Report {
        envelope: env,
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single number.
pub fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid range `{s}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

/// Settings from the config file (if any) with flags applied on top.
pub fn scan_config(a: &ScanArgs) -> std::result::Result<ScanConfig, Failure> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            toml::from_str::<ScanConfig>(&text).map_err(|e| Failure {
                code: EXIT_USAGE,
                error: anyhow::anyhow!("invalid scan config {}: {e}", path.display()),
            })?
        }
        None => ScanConfig::default(),
    };
    if !a.checks.is_empty() {
        cfg.checks = a
            .checks
            .iter()
            .map(|c| c.parse::<Check>())
            .collect::<circpow::error::Result<_>>()?;
    }
    if let Some(n) = &a.n {
        cfg.n_range = parse_range(n).map_err(Failure::usage)?;
    }
    if let Some(d) = &a.d {
        cfg.d_range = Some(parse_range(d).map_err(Failure::usage)?);
    }
    if a.threads.is_some() {
        cfg.threads = a.threads;
    }
    if let Some(numeric) = a.numeric {
        cfg.numeric = match numeric {
            Numeric::Jacobi => NumericSource::Jacobi,
            Numeric::CosineSum => NumericSource::CosineSum,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn summary_csv(summary: &BTreeMap<String, survey::CheckSummary>) -> anyhow::Result<String> {
    csv_string(
        &["check", "pass", "fail", "skip", "no_counterexample", "counterexample"],
        summary.iter().map(|(name, s)| {
            vec![
                name.clone(),
                s.pass.to_string(),
                s.fail.to_string(),
                s.skip.to_string(),
                s.no_counterexample.to_string(),
                s.counterexample.to_string(),
            ]
        }),
    )
}

pub fn cmd_scan(a: &ScanArgs) -> CmdResult {
    let cfg = scan_config(a)?;
    let records = survey::scan(&cfg)?;
    let summary = survey::summarize(&records);
    let failed = survey::any_failure(&records);
    let csv = summary_csv(&summary)?;
    if let Some(path) = &a.summary {
        std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut notes = String::new();
    for (name, s) in &summary {
        if s.counterexample + s.no_counterexample > 0 {
            let _ = writeln!(
                notes,
                "{name}: {} cell(s) with a counterexample, {} cell(s) with no counterexample in range",
                s.counterexample, s.no_counterexample
            );
        }
    }
    if failed {
        let _ = writeln!(notes, "at least one theorem check failed");
    }
    let env = envelope(
        "scan",
        a,
        json!({ "config": cfg, "summary": summary, "records": records }),
    );
    let stdout = match a.format {
        ScanFormat::Jsonl => records.iter().fold(String::new(), |mut s, r| {
            s.push_str(&serde_json::to_string(r).expect("record serializes"));
            s.push('\n');
            s
        }),
        ScanFormat::Json => to_json(&env),
        ScanFormat::Csv => csv,
    };
    Ok(Report {
        envelope: env,
        stdout,
        stderr: notes,
        code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK },
    })
}

pub fn cmd_fplot(a: &FplotArgs) -> CmdResult {
    if a.samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    let p = DirichletParams::new(a.d)?;
    let bound = spectrum::mult_two_bound(a.d)?;
    let samples: Vec<(f64, f64)> = (0..a.samples)
        .map(|i| {
            let phi = if i + 1 == a.samples {
                TAU
            } else {
                TAU * i as f64 / (a.samples - 1) as f64
            };
            (phi, p.f(phi))
        })
        .collect();
    let result = json!({
        "d": a.d,
        "q": p.q,
        "sharp_bound": bound.sharp,
        "relaxed_bound": bound.relaxed,
        "samples": samples,
    });
    let env = envelope("fplot", a, result);
    let stdout = match a.format {
        Format::Json => to_json(&env),
        Format::Csv | Format::Text => {
            let mut s = format!(
                "# d={}\n# q={}\n# sharp_bound={}\n# relaxed_bound={}\n",
                a.d, p.q, bound.sharp, bound.relaxed
            );
            s.push_str(&csv_string(
                &["phi", "f"],
                samples.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]),
            )?);
            s
        }
    };
    Ok(Report {
        envelope: env,
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..200"), Ok((3, 200)));
        assert_eq!(parse_range("3..=200"), Ok((3, 200)));
        assert_eq!(parse_range("36"), Ok((36, 36)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            EXIT_OK,
            EXIT_CHECK_FAILED,
            EXIT_USAGE,
            EXIT_COMPLETE_GRAPH,
            EXIT_EIGENVALUE_ABSENT,
            EXIT_OTHER,
        ];
        let mut sorted = codes.to_vec();
        sorted.dedup();
        assert_eq!(sorted.len(), codes.len());
    }
}
