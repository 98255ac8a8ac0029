//! Batch scans over `(n, d)` grids.
//!
//! Circuit-power checks run over `n` ascending and, for each `n`,
//! `d = 1..=⌊n/2⌋` ascending; complete cells get an explicit skip record.
//! Path-power checks run over `d = 1..n` for each `n`.
//!
//! Each record carries a payload with enough data to reproduce a failure.
//! Conjecture checks never pass: they either find a counterexample or report
//! that none was found in range.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{CircuitPower, PathPower};
use crate::integer;
use crate::oracle::{self, JacobiOptions};
use crate::spectrum::{self, GroupedSpectrum};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Integer eigenvalues lie in `{-3,-2,-1,0,1,2d}` with the predicted
    /// multiplicities.
    Theorems,
    /// Odd multiplicities only at `2d`, `0`, `-2`.
    OddMultiplicity,
    /// Multiplicity two above `d/π - 1`.
    MultTwo,
    /// Multiplicity two above `u(2q) - 1`.
    MultTwoSharp,
    /// Jump-set integrality test against the numeric spectrum.
    Integrality,
    /// The three path-power conjectures and the cited partial result.
    PathConjectures,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Theorems,
        Check::OddMultiplicity,
        Check::MultTwo,
        Check::MultTwoSharp,
        Check::Integrality,
        Check::PathConjectures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorems => "theorems",
            Check::OddMultiplicity => "odd-multiplicity",
            Check::MultTwo => "mult-two",
            Check::MultTwoSharp => "mult-two-sharp",
            Check::Integrality => "integrality",
            Check::PathConjectures => "path-conjectures",
        }
    }

    pub fn on_paths(self) -> bool {
        self == Check::PathConjectures
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
    NoCounterexample,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub outcome: Outcome,
    pub payload: Value,
}

impl CheckResult {
    fn new(outcome: Outcome, payload: Value) -> Self {
        Self { outcome, payload }
    }

    fn verdict(ok: bool, payload: Value) -> Self {
        Self::new(if ok { Outcome::Pass } else { Outcome::Fail }, payload)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Circuit,
    Path,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub graph: GraphKind,
    pub n: usize,
    pub d: usize,
    pub checks: BTreeMap<String, CheckResult>,
    pub elapsed_us: u64,
}

impl ScanRecord {
    pub fn outcome(&self, check: Check) -> Option<Outcome> {
        self.checks.get(check.name()).map(|c| c.outcome)
    }

    pub fn payload(&self, check: Check) -> Option<&Value> {
        self.checks.get(check.name()).map(|c| &c.payload)
    }
}

/// Where the numeric circuit-power spectrum comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumericSource {
    /// Dense Jacobi eigensolver on the adjacency matrix.
    #[default]
    Jacobi,
    /// Direct exponential sums over the first column.
    CosineSum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    /// Inclusive range of orders.
    pub n_range: (usize, usize),
    /// Inclusive range of exponents; `None` scans every exponent.
    pub d_range: Option<(usize, usize)>,
    pub checks: BTreeSet<Check>,
    /// Integer and grouping tolerance for circuit powers.
    pub tolerance: f64,
    /// First-pass integer detection tolerance for path powers.
    pub path_tolerance: f64,
    pub numeric: NumericSource,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            n_range: (3, 60),
            d_range: None,
            checks: [Check::Theorems].into_iter().collect(),
            tolerance: tolerances::COMPARISON,
            path_tolerance: tolerances::PATH_INTEGER,
            numeric: NumericSource::Jacobi,
            threads: None,
        }
    }
}

impl ScanConfig {
    pub fn new(n_range: (usize, usize), checks: impl IntoIterator<Item = Check>) -> Self {
        Self {
            n_range,
            checks: checks.into_iter().collect(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        if self.n_range.0 > self.n_range.1 {
            return bad("empty n range");
        }
        if self.n_range.1 > tolerances::DENSE_SOLVER_CAP {
            return bad("n range exceeds the dense solver cap");
        }
        if let Some((lo, hi)) = self.d_range {
            if lo > hi || lo == 0 {
                return bad("d range must be nonempty and start at 1 or later");
            }
        }
        if self.checks.is_empty() {
            return bad("no checks selected");
        }
        for t in [self.tolerance, self.path_tolerance] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        if self.threads == Some(0) {
            return bad("threads must be positive");
        }
        Ok(())
    }

    fn d_allowed(&self, d: usize) -> bool {
        self.d_range.map_or(true, |(lo, hi)| lo <= d && d <= hi)
    }

    /// Circuit-power cells in grid order.
    pub fn circuit_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for n in self.n_range.0.max(3)..=self.n_range.1 {
            for d in (1..=n / 2).filter(|&d| self.d_allowed(d)) {
                cells.push((n, d));
            }
        }
        cells
    }

    /// Path-power cells in grid order.
    pub fn path_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for n in self.n_range.0.max(2)..=self.n_range.1 {
            for d in (1..n).filter(|&d| self.d_allowed(d)) {
                cells.push((n, d));
            }
        }
        cells
    }
}

/// Runs every selected check. Circuit records come first, then path records,
/// each in grid order regardless of the thread count.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRecord>> {
    cfg.validate()?;
    let circuit: Vec<Check> = cfg.checks.iter().copied().filter(|c| !c.on_paths()).collect();
    let path: Vec<Check> = cfg.checks.iter().copied().filter(|c| c.on_paths()).collect();
    let run = || -> Result<Vec<ScanRecord>> {
        let mut out = Vec::new();
        if !circuit.is_empty() {
            let recs: Result<Vec<ScanRecord>> = cfg
                .circuit_cells()
                .into_par_iter()
                .map(|(n, d)| circuit_cell(cfg, &circuit, n, d))
                .collect();
            out.extend(recs?);
        }
        if !path.is_empty() {
            let recs: Result<Vec<ScanRecord>> = cfg
                .path_cells()
                .into_par_iter()
                .map(|(n, d)| path_cell(cfg, n, d))
                .collect();
            out.extend(recs?);
        }
        Ok(out)
    };
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Sorted numeric spectrum of `C_n^(d)`.
pub fn numeric_circuit_spectrum(g: &CircuitPower, source: NumericSource) -> Result<Vec<f64>> {
    let a = g.adjacency();
    let mut values = match source {
        NumericSource::Jacobi => oracle::symmetric_eigenvalues(&a)?,
        NumericSource::CosineSum => {
            let column: Vec<u8> = (0..a.n()).map(|i| a.get(i, 0)).collect();
            oracle::dft_spectrum(&column).iter().map(|z| z.re).collect()
        }
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn circuit_cell(cfg: &ScanConfig, checks: &[Check], n: usize, d: usize) -> Result<ScanRecord> {
    let start = Instant::now();
    let g = CircuitPower::new(n, d)?;
    let values = if g.is_complete() {
        Vec::new()
    } else {
        numeric_circuit_spectrum(&g, cfg.numeric)?
    };
    let mut record = circuit_record(cfg, checks, n, d, &values)?;
    record.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(record)
}

/// Evaluates circuit-power checks on a precomputed sorted numeric spectrum.
/// Complete cells are skipped and `values` is ignored for them.
pub fn circuit_record(
    cfg: &ScanConfig,
    checks: &[Check],
    n: usize,
    d: usize,
    values: &[f64],
) -> Result<ScanRecord> {
    let start = Instant::now();
    let g = CircuitPower::new(n, d)?;
    let mut results = BTreeMap::new();
    if g.is_complete() {
        for c in checks {
            results.insert(
                c.name().to_string(),
                CheckResult::new(Outcome::Skip, json!({ "reason": "complete graph" })),
            );
        }
    } else {
        if values.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: values.len(),
            });
        }
        let grouped = spectrum::group_values(values, cfg.tolerance)?;
        for &c in checks {
            let r = match c {
                Check::Theorems => check_theorems(n, d, values, cfg.tolerance)?,
                Check::OddMultiplicity => check_odd(d, &grouped, cfg.tolerance),
                Check::MultTwo => check_window(d, &grouped, cfg.tolerance, false)?,
                Check::MultTwoSharp => check_window(d, &grouped, cfg.tolerance, true)?,
                Check::Integrality => check_integrality(&g, values, cfg.tolerance),
                Check::PathConjectures => {
                    return Err(Error::InvalidConfig(
                        "path-conjectures runs on path powers".into(),
                    ))
                }
            };
            results.insert(c.name().to_string(), r);
        }
    }
    Ok(ScanRecord {
        graph: GraphKind::Circuit,
        n,
        d,
        checks: results,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

fn nearest_integer(v: f64, tol: f64) -> Option<i64> {
    let k = v.round();
    ((v - k).abs() <= tol).then_some(k as i64)
}

fn check_theorems(n: usize, d: usize, values: &[f64], tol: f64) -> Result<CheckResult> {
    let candidates = integer::candidates(d);
    let stray: Vec<f64> = values
        .iter()
        .copied()
        .filter(|&v| nearest_integer(v, tol).is_some_and(|k| !candidates.contains(&k)))
        .collect();
    let mut multiplicities = BTreeMap::new();
    let mut mismatches = Vec::new();
    for report in integer::integer_spectrum(n, d)? {
        let numeric = oracle::numeric_multiplicity(values, report.eigenvalue as f64, tol);
        multiplicities.insert(report.eigenvalue.to_string(), report.multiplicity);
        if numeric != report.multiplicity {
            mismatches.push(json!({
                "eigenvalue": report.eigenvalue,
                "predicted": report.multiplicity,
                "numeric": numeric,
                "case": report.case_tag,
            }));
        }
    }
    let ok = stray.is_empty() && mismatches.is_empty();
    Ok(CheckResult::verdict(
        ok,
        json!({
            "multiplicities": multiplicities,
            "stray_integers": stray,
            "mismatches": mismatches,
        }),
    ))
}

fn check_odd(d: usize, grouped: &GroupedSpectrum, tol: f64) -> CheckResult {
    let allowed = [(2 * d) as f64, 0.0, -2.0];
    let offending: Vec<Value> = grouped
        .groups
        .iter()
        .filter(|g| g.multiplicity % 2 == 1)
        .filter(|g| !allowed.iter().any(|a| (g.value - a).abs() <= tol))
        .map(|g| json!({ "value": g.value, "multiplicity": g.multiplicity }))
        .collect();
    CheckResult::verdict(offending.is_empty(), json!({ "offending": offending }))
}

fn check_window(d: usize, grouped: &GroupedSpectrum, tol: f64, sharp: bool) -> Result<CheckResult> {
    let bound = spectrum::mult_two_bound(d)?;
    let lo = if sharp { bound.sharp } else { bound.relaxed };
    let hi = (2 * d) as f64;
    let inside: Vec<_> = grouped
        .groups
        .iter()
        .filter(|g| g.value > lo && g.value < hi - tol)
        .collect();
    let hits: usize = inside.iter().map(|g| g.multiplicity).sum();
    let offending: Vec<Value> = inside
        .iter()
        .filter(|g| g.multiplicity != 2)
        .map(|g| json!({ "value": g.value, "multiplicity": g.multiplicity }))
        .collect();
    Ok(CheckResult::verdict(
        offending.is_empty(),
        json!({ "window": [lo, hi], "hits": hits, "offending": offending }),
    ))
}

fn check_integrality(g: &CircuitPower, values: &[f64], tol: f64) -> CheckResult {
    let verdict = integer::is_integral(&g.to_circulant());
    let numeric = values.iter().all(|&v| nearest_integer(v, tol).is_some());
    CheckResult::verdict(
        verdict.integral == numeric,
        json!({
            "integral": verdict.integral,
            "numeric_integral": numeric,
            "witness": verdict.violating_class,
        }),
    )
}

/// Evaluates the path-power conjectures on `P_n^(d)`.
pub fn path_cell(cfg: &ScanConfig, n: usize, d: usize) -> Result<ScanRecord> {
    let start = Instant::now();
    let p = PathPower::new(n, d)?;
    let a = p.adjacency();
    let mut values = oracle::symmetric_eigenvalues(&a)?;
    values.sort_by(f64::total_cmp);
    let grouped = spectrum::group_values(&values, cfg.tolerance)?;

    // integer hits need a second, tighter solve before they are reported
    let rough: Vec<i64> = values
        .iter()
        .filter_map(|&v| nearest_integer(v, cfg.path_tolerance))
        .collect();
    let mut integers: BTreeMap<i64, usize> = BTreeMap::new();
    if !rough.is_empty() {
        let opts = JacobiOptions {
            tolerance: tolerances::JACOBI_REFINED,
            vectors: false,
            ..JacobiOptions::default()
        };
        let refined = oracle::symmetric_eigen_dense(n, a.to_f64(), opts)?;
        for &v in refined.values() {
            if let Some(k) = nearest_integer(v, tolerances::PATH_INTEGER_REFINED) {
                *integers.entry(k).or_default() += 1;
            }
        }
    }

    let exempt = [-2.0, -1.0, 0.0];
    let c2_violation = integers.contains_key(&1) && (n, d) != (2, 1);
    let c3_violations: Vec<Value> = grouped
        .groups
        .iter()
        .filter(|g| g.multiplicity > 1)
        .filter(|g| !exempt.iter().any(|e| (g.value - e).abs() <= cfg.tolerance))
        .map(|g| json!({ "value": g.value, "multiplicity": g.multiplicity }))
        .collect();
    let in_range = 2 * d > n && d + 1 < n;
    let partial_violations: Vec<Value> = if in_range {
        grouped
            .groups
            .iter()
            .filter(|g| g.multiplicity > 1 && (g.value + 1.0).abs() > cfg.tolerance)
            .filter(|g| g.multiplicity != 2)
            .map(|g| json!({ "value": g.value, "multiplicity": g.multiplicity }))
            .collect()
    } else {
        Vec::new()
    };

    let outcome = if !partial_violations.is_empty() {
        Outcome::Fail
    } else if c2_violation || !c3_violations.is_empty() {
        Outcome::Counterexample
    } else {
        Outcome::NoCounterexample
    };
    let integer_list: Vec<[i64; 2]> = integers.iter().map(|(&k, &m)| [k, m as i64]).collect();
    let payload = json!({
        "integer_eigenvalues": integer_list,
        "c2_eigenvalue_one": integers.contains_key(&1),
        "c2_counterexample": c2_violation,
        "c3_counterexamples": c3_violations,
        "partial_result_applies": in_range,
        "partial_result_violations": partial_violations,
    });
    let mut checks = BTreeMap::new();
    checks.insert(
        Check::PathConjectures.name().to_string(),
        CheckResult::new(outcome, payload),
    );
    Ok(ScanRecord {
        graph: GraphKind::Path,
        n,
        d,
        checks,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

/// Outcome counts per check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub no_counterexample: usize,
    pub counterexample: usize,
}

pub fn summarize(records: &[ScanRecord]) -> BTreeMap<String, CheckSummary> {
    let mut out: BTreeMap<String, CheckSummary> = BTreeMap::new();
    for r in records {
        for (name, c) in &r.checks {
            let s = out.entry(name.clone()).or_default();
            match c.outcome {
                Outcome::Pass => s.pass += 1,
                Outcome::Fail => s.fail += 1,
                Outcome::Skip => s.skip += 1,
                Outcome::NoCounterexample => s.no_counterexample += 1,
                Outcome::Counterexample => s.counterexample += 1,
            }
        }
    }
    out
}

/// True iff some check failed. Conjecture counterexamples do not count.
pub fn any_failure(records: &[ScanRecord]) -> bool {
    records
        .iter()
        .any(|r| r.checks.values().any(|c| c.outcome == Outcome::Fail))
}

/// For each `d`, the first cell in grid order whose multiplicity-two window
/// contains an eigenvalue.
pub fn smallest_window_hits(records: &[ScanRecord], check: Check) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        let hits = r
            .payload(check)
            .and_then(|p| p.get("hits"))
            .and_then(Value::as_u64)
            .unwrap_or(0);
        if hits > 0 {
            out.entry(r.d).or_insert(r.n);
        }
    }
    out
}

/// Non-complete cells that the jump-set test declares integral.
pub fn integral_cells(records: &[ScanRecord]) -> Vec<(usize, usize)> {
    records
        .iter()
        .filter(|r| {
            r.payload(Check::Integrality)
                .and_then(|p| p.get("integral"))
                .and_then(Value::as_bool)
                == Some(true)
        })
        .map(|r| (r.n, r.d))
        .collect()
}
