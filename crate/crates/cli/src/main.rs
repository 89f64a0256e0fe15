//! `finegrain`: convert Java repositories to method-level histories and
//! track method files across renames.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use finegrain_core::eval::{self, parse_oracle, parse_pairs, write_metrics_csv};
use finegrain_core::rewrite::{rewrite_history, ConversionConfig};
use finegrain_core::track::{count_renames, write_tsv, Metric, StartPoint, Tracker, TrackerConfig};
use finegrain_core::{NamePolicy, RenderConfig};
use git2::Repository;

#[derive(Parser, Debug)]
#[command(name = "finegrain", version, about = "Method-level Git histories for Java projects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a repository so each method is its own file.
    Convert(ConvertArgs),
    /// Follow one file back through renames and copies.
    Track(TrackArgs),
    /// Score tracking against an oracle over a threshold sweep.
    Evaluate(EvaluateArgs),
    /// Compare rename counts of the same methods in two converted repositories.
    Compare(CompareArgs),
}

#[derive(clap::Args, Debug)]
struct ConvertArgs {
    #[arg(long)]
    src: PathBuf,
    #[arg(long)]
    dst: PathBuf,
    /// Keep original source lines instead of one token per line.
    #[arg(long)]
    plain: bool,
    /// Do not tag semicolons, braces and parentheses.
    #[arg(long)]
    no_h1: bool,
    /// Keep parameter parens and outer body braces.
    #[arg(long)]
    no_h2: bool,
    /// Also emit one file per field.
    #[arg(long)]
    fields: bool,
    /// Keep the original .java files next to the generated ones.
    #[arg(long)]
    keep_java: bool,
    /// Convert only these refs (repeatable); default is all branches and tags.
    #[arg(long = "ref", value_name = "NAME")]
    refs: Vec<String>,
    #[arg(long, value_name = "N", default_value_t = 255, value_parser = clap::value_parser!(u16).range(32..))]
    max_name_bytes: u16,
    /// Write conversion statistics as JSON to this file.
    #[arg(long, value_name = "PATH")]
    stats_json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    GitBytes,
    Lines,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::GitBytes => Metric::GitBytes,
            MetricArg::Lines => Metric::Lines,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

fn percent() -> clap::builder::RangedI64ValueParser<u8> {
    clap::value_parser!(u8).range(1..=100)
}

#[derive(clap::Args, Debug)]
struct TrackArgs {
    #[arg(long)]
    repo: PathBuf,
    #[arg(long)]
    path: String,
    /// Rename threshold in percent.
    #[arg(short = 'M', value_name = "T", value_parser = percent())]
    rename: u8,
    /// Copy threshold in percent; enables copy detection.
    #[arg(short = 'C', value_name = "T", value_parser = percent())]
    copy: Option<u8>,
    #[arg(long, value_enum, default_value = "git-bytes")]
    metric: MetricArg,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    repo: PathBuf,
    /// JSON array of {methodPath, expectedRenameCount}.
    #[arg(long)]
    oracle: PathBuf,
    /// Comma-separated percentages.
    #[arg(long, value_delimiter = ',', value_parser = percent(),
          default_value = "20,25,30,35,40,45,50,55,60,65,70,75,80")]
    thresholds: Vec<u8>,
}

#[derive(clap::Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    repo_a: PathBuf,
    #[arg(long)]
    repo_b: PathBuf,
    /// Lines of `pathA<TAB>pathB`.
    #[arg(long)]
    pairs: PathBuf,
    /// Threshold for repository A (spelled `-M-a`).
    #[arg(long = "threshold-a", value_name = "T", default_value_t = 55, value_parser = percent())]
    threshold_a: u8,
    /// Threshold for repository B (spelled `-M-b`).
    #[arg(long = "threshold-b", value_name = "T", default_value_t = 25, value_parser = percent())]
    threshold_b: u8,
}

/// Map the `-M-a`/`-M-b` spellings onto long options clap understands.
fn normalize_args(args: impl IntoIterator<Item = String>) -> Vec<String> {
    args.into_iter()
        .map(|a| {
            for (short, long) in [("-M-a", "--threshold-a"), ("-M-b", "--threshold-b")] {
                if a == short {
                    return long.to_string();
                }
                if let Some(v) = a.strip_prefix(short).and_then(|r| r.strip_prefix('=')) {
                    return format!("{long}={v}");
                }
            }
            a
        })
        .collect()
}

fn convert(args: ConvertArgs) -> Result<()> {
    let src = Repository::open(&args.src).with_context(|| format!("opening {}", args.src.display()))?;
    let render = if args.plain {
        RenderConfig::plain()
    } else {
        RenderConfig::tokens(!args.no_h1, !args.no_h2)
    };
    let config = ConversionConfig {
        render,
        emit_fields: args.fields,
        keep_original_java: args.keep_java,
        name_policy: NamePolicy::new(usize::from(args.max_name_bytes), None)?,
        refs: args.refs,
        ..Default::default()
    };
    let stats = rewrite_history(&src, &args.dst, &config)?;
    let json = serde_json::to_string_pretty(&stats)?;
    if let Some(path) = &args.stats_json {
        fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{json}");
    eprintln!(
        "converted {} commits, {} files emitted, {} skipped in {:.2}s",
        stats.commits, stats.files_emitted, stats.skipped_files, stats.wall_clock_seconds
    );
    Ok(())
}

fn track(args: TrackArgs) -> Result<()> {
    let repo = Repository::open(&args.repo).with_context(|| format!("opening {}", args.repo.display()))?;
    let config = TrackerConfig {
        threshold: args.rename,
        detect_copies: args.copy.is_some(),
        copy_threshold: args.copy,
        metric: args.metric.into(),
    };
    let steps = Tracker::new(&repo).follow(&StartPoint::Head, &args.path, &config)?;
    let mut out = io::stdout().lock();
    match args.format {
        Format::Tsv => write_tsv(&steps, &mut out)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&steps)?)?,
    }
    log::info!("{} renames/copies", count_renames(&steps));
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let text = fs::read_to_string(&args.oracle).with_context(|| format!("reading {}", args.oracle.display()))?;
    let oracle = parse_oracle(&text)?;
    // Mirrors `git log --follow -Mt -Ct`: byte-weighted scores, copies on.
    let base = TrackerConfig::with_copies(50, Metric::GitBytes);
    let report = eval::evaluate(&args.repo, &StartPoint::Head, &oracle, &args.thresholds, &base)?;
    write_metrics_csv(&report.metrics, io::stdout().lock())?;
    if !report.missing.is_empty() {
        for m in &report.missing {
            eprintln!("not found: {m}");
        }
        bail!("{} oracle entries could not be resolved", report.missing.len());
    }
    Ok(())
}

fn compare(args: CompareArgs) -> Result<()> {
    let text = fs::read_to_string(&args.pairs).with_context(|| format!("reading {}", args.pairs.display()))?;
    let pairs = parse_pairs(&text)?;
    let metric = Metric::GitBytes;
    let report = eval::compare_modes(
        &args.repo_a,
        &args.repo_b,
        &pairs,
        &TrackerConfig::with_copies(args.threshold_a, metric),
        &TrackerConfig::with_copies(args.threshold_b, metric),
    )?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse_from(normalize_args(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Convert(a) => convert(a),
        Command::Track(a) => track(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Compare(a) => compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_spellings() {
        let args = normalize_args(["x", "-M-a", "60", "-M-b=30", "-M", "5"].map(String::from));
        assert_eq!(args, ["x", "--threshold-a", "60", "--threshold-b=30", "-M", "5"]);
    }

    #[test]
    fn parses_defaults() {
        let cli = Cli::try_parse_from(["finegrain", "compare", "--repo-a", "a", "--repo-b", "b", "--pairs", "p"]).unwrap();
        let Command::Compare(c) = cli.command else { panic!() };
        assert_eq!((c.threshold_a, c.threshold_b), (55, 25));
        let cli = Cli::try_parse_from(["finegrain", "evaluate", "--repo", "r", "--oracle", "o"]).unwrap();
        let Command::Evaluate(e) = cli.command else { panic!() };
        assert_eq!(e.thresholds.len(), 13);
    }

    #[test]
    fn rejects_out_of_range_threshold() {
        let r = Cli::try_parse_from(["finegrain", "track", "--repo", "r", "--path", "p", "-M", "101"]);
        assert!(r.is_err());
        let r = Cli::try_parse_from(["finegrain", "track", "--repo", "r", "--path", "p", "-M", "0"]);
        assert!(r.is_err());
    }
}
