//! Tracking-accuracy evaluation against an oracle of rename counts, and
//! per-method comparison of two converted repositories.

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use git2::Repository;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::track::{count_renames, StartPoint, StepKind, TrackError, TrackStep, Tracker, TrackerConfig};

/// The threshold sweep used by default: 20, 25, ..., 80.
pub fn default_thresholds() -> Vec<u8> {
    (20..=80).step_by(5).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleEntry {
    pub method_path: String,
    pub expected_rename_count: u64,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("oracle: {0}")]
    Oracle(String),
    #[error("oracle is empty")]
    EmptyOracle,
    #[error("{repo}: path {path:?} not found")]
    UnmappedPath { repo: PathBuf, path: String },
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Git(#[from] git2::Error),
}

/// Parse an oracle JSON array of `{methodPath, expectedRenameCount}`.
pub fn parse_oracle(json: &str) -> Result<Vec<OracleEntry>, EvalError> {
    let entries: Vec<OracleEntry> = serde_json::from_str(json).map_err(|e| EvalError::Oracle(e.to_string()))?;
    if entries.is_empty() {
        return Err(EvalError::EmptyOracle);
    }
    if let Some(bad) = entries.iter().find(|e| !e.method_path.ends_with(".mjava")) {
        return Err(EvalError::Oracle(format!("{:?} is not a method file", bad.method_path)));
    }
    Ok(entries)
}

/// An exact, unreduced fraction. `0/0` is read as zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl Ratio {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Ratio {
            numerator,
            denominator,
        }
    }

    pub fn value(&self) -> f64 {
        if self.denominator == 0 {
            0.0
        } else {
            self.numerator as f64 / self.denominator as f64
        }
    }

    /// Value equality by cross-multiplication; `0/0` equals `0/n`.
    pub fn same_value(&self, other: &Ratio) -> bool {
        if self.denominator == 0 || other.denominator == 0 {
            return self.value() == other.value();
        }
        u128::from(self.numerator) * u128::from(other.denominator)
            == u128::from(other.numerator) * u128::from(self.denominator)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// True/false positive and false negative counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub true_positives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
}

impl Counts {
    /// Counters for one method.
    pub fn of(detected: u64, expected: u64) -> Self {
        Counts {
            true_positives: detected.min(expected),
            false_positives: detected.saturating_sub(expected),
            false_negatives: expected.saturating_sub(detected),
        }
    }

    pub fn add(&mut self, other: Counts) {
        self.true_positives += other.true_positives;
        self.false_positives += other.false_positives;
        self.false_negatives += other.false_negatives;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub threshold: u8,
    #[serde(flatten)]
    pub counts: Counts,
    pub precision: Ratio,
    pub recall: Ratio,
    pub f_measure: Ratio,
}

impl EvalMetrics {
    /// Micro-averaged metrics from summed counters.
    pub fn from_counts(threshold: u8, c: Counts) -> Self {
        let tp = c.true_positives;
        EvalMetrics {
            threshold,
            counts: c,
            precision: Ratio::new(tp, tp + c.false_positives),
            recall: Ratio::new(tp, tp + c.false_negatives),
            // Equal to 2PR/(P+R), and zero when P+R is zero.
            f_measure: Ratio::new(2 * tp, 2 * tp + c.false_positives + c.false_negatives),
        }
    }

    /// Sum per-method `(detected, expected)` pairs, then derive metrics.
    pub fn from_pairs(threshold: u8, pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut total = Counts::default();
        for (detected, expected) in pairs {
            total.add(Counts::of(detected, expected));
        }
        Self::from_counts(threshold, total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodOutcome {
    pub method_path: String,
    pub expected: u64,
    /// Detected renames, one per threshold.
    pub detected: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub metrics: Vec<EvalMetrics>,
    pub methods: Vec<MethodOutcome>,
    /// Oracle entries whose path was not found; they are left out.
    pub missing: Vec<String>,
}

/// Run the sweep: one follow per method and threshold.
///
/// `base` supplies the metric and copy detection; its thresholds are
/// replaced by each swept value.
pub fn evaluate(
    repo_path: &Path,
    start: &StartPoint,
    oracle: &[OracleEntry],
    thresholds: &[u8],
    base: &TrackerConfig,
) -> Result<EvalReport, EvalError> {
    for &t in thresholds {
        TrackerConfig::renames(t, base.metric).validate()?;
    }
    let results: Vec<Result<Option<MethodOutcome>, EvalError>> = oracle
        .par_iter()
        .map_init(
            || Repository::open(repo_path),
            |repo, entry| {
                let repo = repo.as_ref().map_err(|e| EvalError::Git(git2::Error::from_str(e.message())))?;
                let tracker = Tracker::new(repo);
                let mut detected = Vec::with_capacity(thresholds.len());
                for &t in thresholds {
                    let config = TrackerConfig {
                        threshold: t,
                        copy_threshold: base.detect_copies.then_some(t),
                        ..*base
                    };
                    match tracker.follow(start, &entry.method_path, &config) {
                        Ok(steps) => detected.push(count_renames(&steps) as u64),
                        Err(TrackError::PathNotFound { .. }) => return Ok(None),
                        Err(e) => return Err(e.into()),
                    }
                }
                Ok(Some(MethodOutcome {
                    method_path: entry.method_path.clone(),
                    expected: entry.expected_rename_count,
                    detected,
                }))
            },
        )
        .collect();
    let mut methods = Vec::new();
    let mut missing = Vec::new();
    for (entry, r) in oracle.iter().zip(results) {
        match r? {
            Some(m) => methods.push(m),
            None => {
                log::warn!("{}: not found, skipped", entry.method_path);
                missing.push(entry.method_path.clone());
            }
        }
    }
    let metrics = thresholds
        .iter()
        .enumerate()
        .map(|(i, &t)| EvalMetrics::from_pairs(t, methods.iter().map(|m| (m.detected[i], m.expected))))
        .collect();
    Ok(EvalReport {
        metrics,
        methods,
        missing,
    })
}

/// `threshold,precision,recall,fmeasure` with decimal values.
pub fn write_metrics_csv<W: Write>(metrics: &[EvalMetrics], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["threshold", "precision", "recall", "fmeasure"])?;
    for m in metrics {
        w.write_record([
            m.threshold.to_string(),
            format!("{:.6}", m.precision.value()),
            format!("{:.6}", m.recall.value()),
            format!("{:.6}", m.f_measure.value()),
        ])?;
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub path_a: String,
    pub path_b: String,
    pub renames_a: u64,
    pub renames_b: u64,
    /// Steps after creation (modifications, renames, copies).
    pub changes_a: u64,
    pub changes_b: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareSummary {
    pub methods: u64,
    pub a_greater: Ratio,
    pub b_greater: Ratio,
    pub equal: Ratio,
    pub mean_renames_a: f64,
    pub mean_renames_b: f64,
    pub mean_changes_a: f64,
    pub mean_changes_b: f64,
    /// Methods with no detected change in either repository.
    pub never_changed: Ratio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub threshold_a: u8,
    pub threshold_b: u8,
    pub pairs: Vec<PairOutcome>,
    pub summary: CompareSummary,
}

fn changes(steps: &[TrackStep]) -> u64 {
    steps.iter().filter(|s| s.kind != StepKind::Add).count() as u64
}

/// Follow each pair in both repositories and summarize the rename counts.
pub fn compare_modes(
    repo_a: &Path,
    repo_b: &Path,
    pairs: &[(String, String)],
    config_a: &TrackerConfig,
    config_b: &TrackerConfig,
) -> Result<CompareReport, EvalError> {
    config_a.validate()?;
    config_b.validate()?;
    let side = |repo_path: &Path, paths: Vec<&String>, config: &TrackerConfig| -> Result<Vec<(u64, u64)>, EvalError> {
        paths
            .par_iter()
            .map_init(
                || Repository::open(repo_path),
                |repo, path| {
                    let repo = repo.as_ref().map_err(|e| EvalError::Git(git2::Error::from_str(e.message())))?;
                    match Tracker::new(repo).follow(&StartPoint::Head, path, config) {
                        Ok(steps) => Ok((count_renames(&steps) as u64, changes(&steps))),
                        Err(TrackError::PathNotFound { .. }) => Err(EvalError::UnmappedPath {
                            repo: repo_path.to_path_buf(),
                            path: (*path).clone(),
                        }),
                        Err(e) => Err(e.into()),
                    }
                },
            )
            .collect()
    };
    let a = side(repo_a, pairs.iter().map(|p| &p.0).collect(), config_a)?;
    let b = side(repo_b, pairs.iter().map(|p| &p.1).collect(), config_b)?;
    let outcomes: Vec<PairOutcome> = pairs
        .iter()
        .zip(a.into_iter().zip(b))
        .map(|((pa, pb), ((ra, ca), (rb, cb)))| PairOutcome {
            path_a: pa.clone(),
            path_b: pb.clone(),
            renames_a: ra,
            renames_b: rb,
            changes_a: ca,
            changes_b: cb,
        })
        .collect();
    Ok(CompareReport {
        threshold_a: config_a.threshold,
        threshold_b: config_b.threshold,
        summary: summarize(&outcomes),
        pairs: outcomes,
    })
}

pub fn summarize(pairs: &[PairOutcome]) -> CompareSummary {
    let n = pairs.len() as u64;
    let count = |f: &dyn Fn(&PairOutcome) -> bool| pairs.iter().filter(|p| f(p)).count() as u64;
    let mean = |f: &dyn Fn(&PairOutcome) -> u64| {
        if n == 0 {
            0.0
        } else {
            pairs.iter().map(f).sum::<u64>() as f64 / n as f64
        }
    };
    CompareSummary {
        methods: n,
        a_greater: Ratio::new(count(&|p| p.renames_a > p.renames_b), n),
        b_greater: Ratio::new(count(&|p| p.renames_a < p.renames_b), n),
        equal: Ratio::new(count(&|p| p.renames_a == p.renames_b), n),
        mean_renames_a: mean(&|p| p.renames_a),
        mean_renames_b: mean(&|p| p.renames_b),
        mean_changes_a: mean(&|p| p.changes_a),
        mean_changes_b: mean(&|p| p.changes_b),
        never_changed: Ratio::new(count(&|p| p.changes_a == 0 && p.changes_b == 0), n),
    }
}

/// Read a pairs file: one `pathA<TAB>pathB` per line; blank lines and `#`
/// comments are ignored.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, EvalError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains('\t') => {
                out.push((a.to_string(), b.to_string()))
            }
            _ => return Err(EvalError::Oracle(format!("pairs line {}: expected two tab-separated paths", n + 1))),
        }
    }
    Ok(out)
}
