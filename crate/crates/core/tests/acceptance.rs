//! Acceptance criteria 1 to 10, one pass/fail line each.
//!
//! Lines go straight to stdout so they show up without `--nocapture`.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::time::{Duration, Instant};

use common::{linear_repo, person_to_engineer, scratch, ENGINEER, IF_NULL, PERSON, WHILE_SUM};
use finegrain_core::emit::{reconstruct, render_fragment};
use finegrain_core::eval::Ratio;
use finegrain_core::synth::{java_corpus, java_history, text_history, FileSet, JavaHistoryConfig, TextHistoryConfig};
use finegrain_core::track::{similarity_of, Tracker};
use finegrain_core::{
    count_renames, evaluate, extract, field_file_name, follow, method_file_name, render_method, rewrite_history,
    ConversionConfig, Metric, NamePolicy, OracleEntry, RenderConfig, SimilarityScore, StartPoint, StepKind, TrackStep, TrackerConfig,
};
use git2::{Oid, Repository};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

/// Criteria that cannot pass as stated. They are still run and reported.
const KNOWN_RED: &[u32] = &[3];

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn no_doc(mut cfg: RenderConfig) -> RenderConfig {
    cfg.include_javadoc = false;
    cfg
}

fn pair_score(a: &str, b: &str, i: usize, j: usize, cfg: RenderConfig) -> (u64, u64) {
    let x = extract(a.as_bytes()).unwrap();
    let y = extract(b.as_bytes()).unwrap();
    similarity_of(&render_method(&x.methods[i], &cfg), &render_method(&y.methods[j], &cfg), Metric::Lines).parts()
}

fn c1_renamed_accessors() -> Outcome {
    let start = Instant::now();
    let cfg = no_doc(RenderConfig::tokens(true, false));
    let getter = pair_score(PERSON, ENGINEER, 0, 0, cfg);
    let setter = pair_score(PERSON, ENGINEER, 1, 1, cfg);
    check(getter == (8, 10) && setter == (11, 15), || format!("got {getter:?} and {setter:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("getter 8/10, setter 11/15".into())
}

fn c2_statement_tags() -> Outcome {
    let start = Instant::now();
    let score = |cfg: RenderConfig| {
        let a = render_fragment(IF_NULL, &cfg).unwrap();
        let b = render_fragment(WHILE_SUM, &cfg).unwrap();
        similarity_of(&a, &b, Metric::Lines).parts()
    };
    let got = [
        score(RenderConfig::plain()),
        score(RenderConfig::tokens(false, false)),
        score(RenderConfig::tokens(true, false)),
    ];
    check(got == [(1, 3), (5, 12), (0, 12)], || format!("got {got:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("plain 1/3, untagged 5/12, tagged 0/12".into())
}

fn c3_structural_elision() -> Outcome {
    let start = Instant::now();
    let without = pair_score(PERSON, ENGINEER, 0, 1, no_doc(RenderConfig::tokens(true, false)));
    let with = pair_score(PERSON, ENGINEER, 0, 1, no_doc(RenderConfig::tokens(true, true)));
    check(without == (5, 10) && with == (1, 6), || {
        format!(
            "expected 5/10 and 1/6, got {}/{} and {}/{} (the `int` line is shared)",
            without.0, without.1, with.0, with.1
        )
    })?;
    within(start, Duration::from_secs(1))?;
    Ok("5/10 without elision, 1/6 with".into())
}

fn renames_at(repo: &Repository, path: &str, t: u8) -> usize {
    let steps = follow(repo, &StartPoint::Head, path, &TrackerConfig::renames(t, Metric::Lines)).unwrap();
    count_renames(&steps)
}

fn c4_end_to_end() -> Outcome {
    let start = Instant::now();
    let src = person_to_engineer();
    let convert = |render: RenderConfig| {
        let (dir, dst) = scratch();
        let cfg = ConversionConfig {
            render,
            ..Default::default()
        };
        rewrite_history(&src.repo(), &dst, &cfg).unwrap();
        (dir, Repository::open(dst).unwrap())
    };
    let getter = "src/Engineer#public_int_getHeight().mjava";
    let setter = "src/Engineer#public_void_setHeight(int).mjava";
    let (_a, tokens) = convert(RenderConfig::default());
    let (_b, plain) = convert(RenderConfig::plain());
    let tok = [renames_at(&tokens, getter, 60), renames_at(&tokens, setter, 60)];
    let plain60 = [renames_at(&plain, getter, 60), renames_at(&plain, setter, 60)];
    let plain30 = renames_at(&plain, getter, 30) + renames_at(&plain, setter, 30);
    check(tok == [1, 1], || format!("token mode renames {tok:?}"))?;
    check(plain60 == [0, 0], || format!("plain mode renames at 60: {plain60:?}"))?;
    check(plain30 >= 1, || "plain mode found nothing at 30".into())?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("token {tok:?} at 60, plain {plain60:?} at 60, plain {plain30} at 30"))
}

fn object_store(repo: &Repository) -> BTreeMap<Oid, (git2::ObjectType, Vec<u8>)> {
    let odb = repo.odb().unwrap();
    let mut ids = Vec::new();
    odb.foreach(|id| {
        ids.push(*id);
        true
    })
    .unwrap();
    ids.into_iter()
        .map(|id| {
            let obj = odb.read(id).unwrap();
            (id, (obj.kind(), obj.data().to_vec()))
        })
        .collect()
}

fn refs(repo: &Repository) -> BTreeMap<String, Option<Oid>> {
    repo.references()
        .unwrap()
        .map(|r| {
            let r = r.unwrap();
            (r.name().unwrap().to_string(), r.target())
        })
        .collect()
}

fn c5_determinism() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::TempDir::new().unwrap();
    let src = Repository::init(dir.path()).unwrap();
    let cfg = JavaHistoryConfig {
        seed: 5,
        commits: 100,
        files: 30,
        methods_per_class: 6,
        merge_every: Some(9),
    };
    java_history(&src, &cfg).unwrap();
    let run = || {
        let (d, dst) = scratch();
        rewrite_history(&src, &dst, &ConversionConfig::default()).unwrap();
        let repo = Repository::open(&dst).unwrap();
        let out = (object_store(&repo), refs(&repo), std::fs::read(repo.path().join("commit-map.tsv")).unwrap());
        drop(d);
        out
    };
    let (a, b) = (run(), run());
    check(a.0 == b.0, || "object stores differ".into())?;
    check(a.1 == b.1, || "refs differ".into())?;
    check(a.2 == b.2, || "commit maps differ".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} objects identical", a.0.len()))
}

/// All-pairs scoring written from the definitions, sharing no code with
/// the tracker.
mod brute {
    use std::collections::HashMap;

    fn multiset<'a>(items: impl Iterator<Item = &'a [u8]>) -> HashMap<&'a [u8], u64> {
        let mut m = HashMap::new();
        for i in items {
            *m.entry(i).or_insert(0) += 1;
        }
        m
    }

    fn lines(c: &[u8]) -> Vec<&[u8]> {
        c.split_inclusive(|&b| b == b'\n').collect()
    }

    fn shared(a: &HashMap<&[u8], u64>, b: &HashMap<&[u8], u64>, weight: impl Fn(&[u8]) -> u64) -> u64 {
        a.iter().map(|(k, n)| (*n).min(*b.get(k).unwrap_or(&0)) * weight(k)).sum()
    }

    pub fn bytes(a: &[u8], b: &[u8]) -> (u64, u64) {
        let chunks = |c: &[u8]| -> Vec<Vec<u8>> { lines(c).iter().flat_map(|l| l.chunks(64).map(<[u8]>::to_vec)).collect() };
        let (ca, cb) = (chunks(a), chunks(b));
        let ma = multiset(ca.iter().map(Vec::as_slice));
        let mb = multiset(cb.iter().map(Vec::as_slice));
        let den = a.len().max(b.len()) as u64;
        if den == 0 {
            return (1, 1);
        }
        (shared(&ma, &mb, |k| k.len() as u64), den)
    }

    pub fn lines_metric(a: &[u8], b: &[u8]) -> (u64, u64) {
        let strip = |c: &[u8]| -> Vec<Vec<u8>> {
            lines(c).into_iter().map(|l| l.strip_suffix(b"\n").unwrap_or(l).to_vec()).collect()
        };
        let (la, lb) = (strip(a), strip(b));
        let ma = multiset(la.iter().map(Vec::as_slice));
        let mb = multiset(lb.iter().map(Vec::as_slice));
        let (na, nb) = (la.len() as u64, lb.len() as u64);
        let den = match (na, nb) {
            (0, 0) => return (1, 1),
            (0, n) | (n, 0) => n,
            _ => na.min(nb),
        };
        (shared(&ma, &mb, |_| 1), den)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Decision {
    commit: usize,
    kind: StepKind,
    old: Option<String>,
    new: String,
    /// Compared by value, not by representation.
    score: Option<SimilarityScore>,
}

fn greater(a: (u64, u64), b: (u64, u64)) -> bool {
    a.0 as u128 * b.1 as u128 > b.0 as u128 * a.1 as u128
}

/// Decisions for following `path` back from the last snapshot.
fn brute_follow(snaps: &[FileSet], path: &str, t: u8, copies: bool, metric: Metric) -> Vec<Decision> {
    let score = |a: &[u8], b: &[u8]| match metric {
        Metric::GitBytes => brute::bytes(a, b),
        Metric::Lines => brute::lines_metric(a, b),
    };
    let mut out = Vec::new();
    let mut path = path.to_string();
    let mut i = snaps.len() - 1;
    loop {
        let content = &snaps[i][&path];
        if i == 0 {
            out.push(Decision { commit: 0, kind: StepKind::Add, old: None, new: path, score: None });
            return out;
        }
        let parent = &snaps[i - 1];
        if let Some(old) = parent.get(&path) {
            if old != content {
                out.push(Decision { commit: i, kind: StepKind::Modify, old: None, new: path.clone(), score: None });
            }
            i -= 1;
            continue;
        }
        // Full matrix for this commit: every parent file against the new one.
        let mut best: Option<(String, StepKind, (u64, u64))> = None;
        for (q, old) in parent {
            let kind = if snaps[i].contains_key(q) {
                if !copies {
                    continue;
                }
                StepKind::Copy
            } else {
                StepKind::Rename
            };
            let s = score(old, content);
            if (s.0 as u128) * 100 < (t as u128) * (s.1 as u128) {
                continue;
            }
            if best.as_ref().is_none_or(|b| greater(s, b.2)) {
                best = Some((q.clone(), kind, s));
            }
        }
        match best {
            Some((q, kind, s)) => {
                out.push(Decision { commit: i, kind, old: Some(q.clone()), new: path, score: Some(SimilarityScore::new(s.0, s.1)) });
                path = q;
                i -= 1;
            }
            None => {
                out.push(Decision { commit: i, kind: StepKind::Add, old: None, new: path, score: None });
                return out;
            }
        }
    }
}

fn as_decisions(steps: Vec<TrackStep>, ids: &HashMap<String, usize>) -> Vec<Decision> {
    steps
        .into_iter()
        .map(|s| Decision {
            commit: ids[&s.commit],
            kind: s.kind,
            old: s.old_path,
            new: s.new_path,
            score: s.score,
        })
        .collect()
}

fn c6_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut compared = 0usize;
    let mut renames = 0usize;
    let mut mismatches = Vec::new();
    for seed in 0..20u64 {
        let cfg = TextHistoryConfig {
            seed,
            commits: 8 + (seed as usize * 7) % 13,
            max_files: 30,
        };
        let snaps = text_history(&cfg);
        let fx = linear_repo(&snaps);
        let repo = fx.repo();
        let tracker = Tracker::new(&repo);
        let ids: HashMap<String, usize> = fx.ids.iter().enumerate().map(|(i, id)| (id.to_string(), i)).collect();
        for path in snaps.last().unwrap().keys() {
            for t in [20u8, 50, 80] {
                for metric in [Metric::GitBytes, Metric::Lines] {
                    for copies in [false, true] {
                        let tc = if copies { TrackerConfig::with_copies(t, metric) } else { TrackerConfig::renames(t, metric) };
                        let got = as_decisions(tracker.follow(&StartPoint::Head, path, &tc).unwrap(), &ids);
                        let want = brute_follow(&snaps, path, t, copies, metric);
                        renames += want.iter().filter(|d| matches!(d.kind, StepKind::Rename | StepKind::Copy)).count();
                        compared += 1;
                        if got != want {
                            mismatches.push(format!("seed {seed} {path} t={t} {metric:?} copies={copies}\n got {got:?}\n want {want:?}"));
                        }
                    }
                }
            }
        }
    }
    check(mismatches.is_empty(), || format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))?;
    check(renames > 0, || "no rename or copy decisions exercised".into())?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{compared} follows, {renames} rename/copy decisions, 0 mismatches"))
}

const RICH: &str = r#"package org.example;

import java.util.*;
import java.util.function.Function;

@SuppressWarnings("unchecked")
public abstract class Rich<T extends Comparable<T>> implements Iterable<T> {
    private final List<T> items = new ArrayList<>();
    protected static int[] table = { 1, 2, 3 }, other;

    /**
     * Builds one.
     */
    public Rich(Collection<? extends T> init) {
        super();
        items.addAll(init);
    }

    public abstract <R> R fold(R zero, java.util.function.BiFunction<R, T, R> f);

    @Override
    public Iterator<T> iterator() {
        return new Iterator<T>() {
            int i = 0;

            @Override
            public boolean hasNext() {
                return i < items.size();
            }

            public T next() {
                return items.get(i++);
            }
        };
    }

    static int classify(Object o) throws Exception {
        switch (o.hashCode() % 3) {
            case 0:
                return 1;
            case 1: {
                break;
            }
            default:
                throw new IllegalStateException("x" + o);
        }
        int r = switch (o.toString().length()) {
            case 0 -> 0;
            case 1, 2 -> { yield 1; }
            default -> 2;
        };
        try (var in = new java.io.StringReader("s"); var out = new java.io.StringWriter()) {
            out.write(in.read());
        } catch (java.io.IOException | RuntimeException e) {
            assert e != null : "never";
        } finally {
            synchronized (Rich.class) {
                r += (int) 1L;
            }
        }
        outer:
        for (int i = 0, j = 10; i < j; i++, j--) {
            for (String s : List.of("a")) {
                if (s.isEmpty()) continue outer; else break;
            }
        }
        do { r--; } while (r > 0);
        Function<Integer, Integer> f = (x) -> { return x * 2; };
        int[][] grid = new int[][] { { 1 }, { 2, 3 } };
        char c = '}';
        String text = """
            block { ; }
            """;
        return r + grid.length + f.apply(c) + text.length();
    }

    enum Mode {
        ON("on") {
            @Override
            String label() {
                return "ON";
            }
        },
        OFF("off");

        private final String name;

        Mode(String name) {
            this.name = name;
        }

        String label() {
            return name;
        }
    }

    interface Visitor<V> {
        V visit(Rich<?> r);

        default void reset() {
        }
    }

    record Point(int x, int y) {
        Point {
            if (x < 0) throw new IllegalArgumentException();
        }

        int sum() {
            return x + y;
        }
    }
}
"#;

fn c7_reconstruction() -> Outcome {
    let mut corpus: Vec<(String, Vec<u8>)> = java_corpus(7, 49).into_iter().collect();
    corpus.push(("Rich.java".into(), RICH.as_bytes().to_vec()));
    check(corpus.len() == 50, || format!("corpus has {} files", corpus.len()))?;
    let mut methods = 0;
    let mut mismatches = Vec::new();
    for (path, src) in &corpus {
        let ex = extract(src).map_err(|e| format!("{path}: {e}"))?;
        for decl in &ex.methods {
            methods += 1;
            let want: Vec<String> = decl.body_tokens.iter().map(|t| t.text.clone()).collect();
            for cfg in [RenderConfig::default(), RenderConfig::tokens(true, false), RenderConfig::tokens(false, true)] {
                let got = reconstruct(&render_method(decl, &cfg), decl, &cfg).map_err(|e| e.to_string())?;
                if got != want {
                    mismatches.push(format!("{path}: {}", decl.name));
                }
            }
        }
    }
    check(mismatches.is_empty(), || format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))?;
    Ok(format!("50 files, {methods} methods, 0 mismatches"))
}

fn c8_naming() -> Outcome {
    let ex = extract(PERSON.as_bytes()).unwrap();
    let policy = NamePolicy::default();
    let m = method_file_name(&ex.methods[1], "", &policy);
    let f = field_file_name(&ex.fields[0], "", &policy);
    check(m == "Person#public_void_setLength(int).mjava", || format!("method file {m}"))?;
    check(f == "Person#private_int_length.fjava", || format!("field file {f}"))?;
    let params: Vec<String> = (0..40).map(|i| format!("java.util.Map<String, List<Long>> p{i}")).collect();
    let src = format!(
        "class Outer {{ class Inner {{ public static synchronized <T> java.util.List<T> aVeryLongMethodNameIndeed({}) {{ return null; }} }} }}",
        params.join(", ")
    );
    let long = extract(src.as_bytes()).unwrap();
    let mut checked = 0;
    for limit in [32usize, 40, 64, 100, 143, 200, 255] {
        let policy = NamePolicy::new(limit, None).unwrap();
        let name = method_file_name(&long.methods[0], "", &policy);
        let stem = name.strip_suffix(".mjava").ok_or_else(|| format!("{name}: bad extension"))?;
        check(name.len() <= limit, || format!("{} bytes over limit {limit}", name.len()))?;
        let (_, tail) = stem.split_at(stem.len() - 9);
        check(
            tail.starts_with('_') && tail[1..].bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)),
            || format!("{name}: no hash suffix"),
        )?;
        checked += 1;
    }
    Ok(format!("both examples exact, {checked} shortened names within limits"))
}

fn mjava(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn family(tag: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{tag}{i}")).collect()
}

fn with(base: &[String], keep: usize, fresh: &str) -> Vec<String> {
    let mut out = base[..keep].to_vec();
    out.extend(family(fresh, base.len() - keep));
    out
}

fn c9_metrics() -> Outcome {
    // Five methods, each with its own line vocabulary so no scores cross.
    let a = family("a", 10);
    let b = family("b", 10);
    let f = family("f", 10);
    let e = family("e", 10);
    let d = family("d", 10);
    let a1 = with(&a, 8, "x");
    let b1 = with(&b, 5, "y");
    let b2 = with(&b1, 9, "v");
    let f1 = with(&f, 9, "z");
    let f2 = with(&f1, 8, "s");
    let e1 = with(&e, 2, "w");
    let d2 = with(&d, 4, "u");
    let snap = |entries: &[(&str, &Vec<String>)]| -> FileSet {
        entries.iter().map(|(p, l)| (format!("src/{p}"), mjava(l).into_bytes())).collect()
    };
    let snaps = [
        snap(&[("A#m1().mjava", &a), ("A#m2().mjava", &b), ("F#m3().mjava", &f), ("E#m4().mjava", &e), ("D#old().mjava", &d)]),
        snap(&[("A#n1().mjava", &a1), ("B#m2().mjava", &b1), ("F#m3().mjava", &f1), ("E#m4x().mjava", &e1), ("D#old().mjava", &d)]),
        snap(&[("A#n1().mjava", &a1), ("C#m2().mjava", &b2), ("F#m3().mjava", &f2), ("E#m4x().mjava", &e1), ("D#m5().mjava", &d2)]),
    ];
    let fx = linear_repo(&snaps);
    let oracle: Vec<OracleEntry> = [("A#n1", 1), ("C#m2", 2), ("F#m3", 0), ("E#m4x", 1), ("D#m5", 0)]
        .into_iter()
        .map(|(p, n)| OracleEntry {
            method_path: format!("src/{p}().mjava"),
            expected_rename_count: n,
        })
        .collect();
    let report = evaluate(fx.path(), &StartPoint::Head, &oracle, &[30, 60, 90], &TrackerConfig::renames(50, Metric::Lines))
        .map_err(|e| e.to_string())?;
    // (threshold, tp, fp, fn, P, R, F) worked out by hand.
    let want = [
        (30, 3, 1, 1, Ratio::new(3, 4), Ratio::new(3, 4), Ratio::new(3, 4)),
        (60, 2, 0, 2, Ratio::new(1, 1), Ratio::new(1, 2), Ratio::new(2, 3)),
        (90, 1, 0, 3, Ratio::new(1, 1), Ratio::new(1, 4), Ratio::new(2, 5)),
    ];
    for (m, w) in report.metrics.iter().zip(want) {
        let c = m.counts;
        check(
            (m.threshold, c.true_positives, c.false_positives, c.false_negatives) == (w.0, w.1, w.2, w.3)
                && m.precision.same_value(&w.4)
                && m.recall.same_value(&w.5)
                && m.f_measure.same_value(&w.6),
            || format!("t={}: got {m:?}", w.0),
        )?;
    }
    for (i, m) in report.metrics.iter().enumerate() {
        let per_method: Vec<(u64, u64)> = report.methods.iter().map(|o| (o.detected[i], o.expected)).collect();
        let mut sum = finegrain_core::eval::Counts::default();
        for (det, exp) in &per_method {
            sum.add(finegrain_core::eval::Counts::of(*det, *exp));
        }
        check(sum == m.counts, || format!("t={}: counters do not sum", m.threshold))?;
        let det: u64 = per_method.iter().map(|p| p.0).sum();
        let exp: u64 = per_method.iter().map(|p| p.1).sum();
        check(
            m.counts.true_positives + m.counts.false_positives == det
                && m.counts.true_positives + m.counts.false_negatives == exp,
            || format!("t={}: conservation broken", m.threshold),
        )?;
    }
    check(report.missing.is_empty(), || format!("missing {:?}", report.missing))?;
    Ok("t=30 F=3/4, t=60 F=2/3, t=90 F=2/5; counters conserve".into())
}

fn c10_throughput() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let src = Repository::init(dir.path()).unwrap();
    let cfg = JavaHistoryConfig {
        seed: 10,
        commits: 1000,
        files: 200,
        methods_per_class: 6,
        merge_every: Some(40),
    };
    java_history(&src, &cfg).unwrap();
    let (_d, dst) = scratch();
    let start = Instant::now();
    let stats = rewrite_history(&src, &dst, &ConversionConfig::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    check(stats.commits == 1000, || format!("converted {} commits", stats.commits))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("1000 commits, {} files emitted in {took:.2?}", stats.files_emitted))
}

fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, "renamed accessors keep 8/10 and 11/15", c1_renamed_accessors),
        (2, "statement tags separate if and while", c2_statement_tags),
        (3, "structural elision lowers cross similarity", c3_structural_elision),
        (4, "end-to-end refactoring scenario", c4_end_to_end),
        (5, "deterministic conversion", c5_determinism),
        (6, "tracker equals brute-force scorer", c6_oracle_equivalence),
        (7, "tag stripping reconstructs token streams", c7_reconstruction),
        (8, "file naming", c8_naming),
        (9, "metrics arithmetic", c9_metrics),
        (10, "throughput", c10_throughput),
    ];
    let mut red = BTreeSet::new();
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => report(&format!("criterion {n:>2} PASS  {name}: {detail} [{took:.2?}]")),
            Err(why) => {
                let note = if KNOWN_RED.contains(&n) { " (known)" } else { "" };
                report(&format!("criterion {n:>2} FAIL{note}  {name}: {why} [{took:.2?}]"));
                red.insert(n);
            }
        }
    }
    let known: BTreeSet<u32> = KNOWN_RED.iter().copied().collect();
    report(&format!("acceptance: {}/10 pass, failing {:?}", 10 - red.len(), red));
    let unexpected: Vec<_> = red.difference(&known).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    let fixed: Vec<_> = known.difference(&red).collect();
    assert!(fixed.is_empty(), "criteria now pass, update KNOWN_RED: {fixed:?}");
}
