//! `--follow`-style history tracing with rename and copy detection.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{self, Write};
use std::rc::Rc;

use git2::{Commit, ObjectType, Oid, Repository, Tree, TreeWalkMode, TreeWalkResult};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fingerprint::Fingerprint;
use super::similarity::{similarity, Metric, SimilarityScore};

#[derive(Debug, Error)]
pub enum TrackError {
    #[error("path {path:?} not found at {start}")]
    PathNotFound { path: String, start: String },
    #[error("path {path:?} exists in several refs ({}); pin one", refs.join(", "))]
    AmbiguousStart { path: String, refs: Vec<String> },
    #[error("threshold {0} outside 1..=100")]
    InvalidThreshold(u8),
    #[error(transparent)]
    Git(#[from] git2::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrackerConfig {
    /// Rename threshold in percent.
    pub threshold: u8,
    pub detect_copies: bool,
    /// Copy threshold in percent; defaults to `threshold`.
    pub copy_threshold: Option<u8>,
    pub metric: Metric,
}

impl TrackerConfig {
    pub fn renames(threshold: u8, metric: Metric) -> Self {
        TrackerConfig {
            threshold,
            detect_copies: false,
            copy_threshold: None,
            metric,
        }
    }

    pub fn with_copies(threshold: u8, metric: Metric) -> Self {
        TrackerConfig {
            detect_copies: true,
            ..Self::renames(threshold, metric)
        }
    }

    pub fn validate(&self) -> Result<(), TrackError> {
        for t in [Some(self.threshold), self.copy_threshold].into_iter().flatten() {
            if !(1..=100).contains(&t) {
                return Err(TrackError::InvalidThreshold(t));
            }
        }
        Ok(())
    }

    fn copy_threshold(&self) -> u8 {
        self.copy_threshold.unwrap_or(self.threshold)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    Add,
    Modify,
    Rename,
    Copy,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Add => "ADD",
            StepKind::Modify => "MODIFY",
            StepKind::Rename => "RENAME",
            StepKind::Copy => "COPY",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackStep {
    pub commit: String,
    pub kind: StepKind,
    pub old_path: Option<String>,
    pub new_path: String,
    pub score: Option<SimilarityScore>,
}

/// Where a follow begins.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum StartPoint {
    #[default]
    Head,
    /// Any revision expression git understands.
    Rev(String),
    /// Every branch and tag; the path must resolve to a single commit.
    AnyRef,
}

impl fmt::Display for StartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartPoint::Head => f.write_str("HEAD"),
            StartPoint::Rev(r) => f.write_str(r),
            StartPoint::AnyRef => f.write_str("any ref"),
        }
    }
}

type FileMap = BTreeMap<String, Oid>;

/// Follows paths through one repository, caching tree listings and
/// fingerprints between calls.
pub struct Tracker<'r> {
    repo: &'r Repository,
    trees: RefCell<HashMap<Oid, Rc<FileMap>>>,
    prints: RefCell<HashMap<Oid, Rc<Fingerprint>>>,
}

impl<'r> Tracker<'r> {
    pub fn new(repo: &'r Repository) -> Self {
        Tracker {
            repo,
            trees: RefCell::default(),
            prints: RefCell::default(),
        }
    }

    pub fn repo(&self) -> &'r Repository {
        self.repo
    }

    /// All blob paths of `tree`, slash-separated.
    pub fn files(&self, tree: &Tree<'_>) -> Result<Rc<FileMap>, git2::Error> {
        if let Some(hit) = self.trees.borrow().get(&tree.id()) {
            return Ok(hit.clone());
        }
        let mut map = FileMap::new();
        tree.walk(TreeWalkMode::PreOrder, |dir, entry| {
            if entry.kind() == Some(ObjectType::Blob) {
                if let Ok(name) = entry.name() {
                    map.insert(format!("{dir}{name}"), entry.id());
                }
            }
            TreeWalkResult::Ok
        })?;
        let map = Rc::new(map);
        self.trees.borrow_mut().insert(tree.id(), map.clone());
        Ok(map)
    }

    pub fn fingerprint(&self, blob: Oid) -> Result<Rc<Fingerprint>, git2::Error> {
        if let Some(hit) = self.prints.borrow().get(&blob) {
            return Ok(hit.clone());
        }
        let fp = Rc::new(Fingerprint::new(self.repo.find_blob(blob)?.content()));
        self.prints.borrow_mut().insert(blob, fp.clone());
        Ok(fp)
    }

    fn score(&self, a: Oid, b: Oid, metric: Metric) -> Result<SimilarityScore, git2::Error> {
        if a == b {
            return Ok(SimilarityScore::ONE);
        }
        Ok(similarity(&*self.fingerprint(a)?, &*self.fingerprint(b)?, metric))
    }

    /// Resolve the starting commit for `path`.
    pub fn start_commit(&self, start: &StartPoint, path: &str) -> Result<Commit<'r>, TrackError> {
        let not_found = || TrackError::PathNotFound {
            path: path.to_string(),
            start: start.to_string(),
        };
        let commit = match start {
            StartPoint::Head => self.repo.head().and_then(|h| h.peel_to_commit()).map_err(|_| not_found())?,
            StartPoint::Rev(rev) => self
                .repo
                .revparse_single(rev)
                .and_then(|o| o.peel_to_commit())
                .map_err(|_| not_found())?,
            StartPoint::AnyRef => {
                let mut hits: BTreeMap<Oid, Vec<String>> = BTreeMap::new();
                for r in self.repo.references()? {
                    let r = r?;
                    let Ok(name) = r.name() else { continue };
                    if !(name.starts_with("refs/heads/") || name.starts_with("refs/tags/")) {
                        continue;
                    }
                    let Ok(c) = r.peel_to_commit() else { continue };
                    if self.files(&c.tree()?)?.contains_key(path) {
                        hits.entry(c.id()).or_default().push(name.to_string());
                    }
                }
                match hits.len() {
                    0 => return Err(not_found()),
                    1 => {
                        let id = *hits.keys().next().expect("one hit");
                        self.repo.find_commit(id)?
                    }
                    _ => {
                        return Err(TrackError::AmbiguousStart {
                            path: path.to_string(),
                            refs: hits.into_values().flatten().collect(),
                        })
                    }
                }
            }
        };
        if !self.files(&commit.tree()?)?.contains_key(path) {
            return Err(not_found());
        }
        Ok(commit)
    }

    /// History of `path`, newest step first, ending with its ADD.
    pub fn follow(&self, start: &StartPoint, path: &str, config: &TrackerConfig) -> Result<Vec<TrackStep>, TrackError> {
        config.validate()?;
        let commit = self.start_commit(start, path)?;
        self.follow_from(commit, path, config)
    }

    pub fn follow_from(&self, mut commit: Commit<'r>, path: &str, config: &TrackerConfig) -> Result<Vec<TrackStep>, TrackError> {
        config.validate()?;
        let mut path = path.to_string();
        let mut steps = Vec::new();
        loop {
            let files = self.files(&commit.tree()?)?;
            let Some(&blob) = files.get(&path) else {
                return Err(TrackError::PathNotFound {
                    path,
                    start: commit.id().to_string(),
                });
            };
            let parents: Vec<Commit<'r>> = commit.parents().collect();
            let mut holder = None;
            for p in &parents {
                let pf = self.files(&p.tree()?)?;
                if let Some(&old) = pf.get(&path) {
                    holder = Some((p.clone(), old));
                    break;
                }
            }
            let id = commit.id().to_string();
            match (holder, parents.first()) {
                (Some((parent, old)), _) => {
                    if old != blob {
                        steps.push(TrackStep {
                            commit: id,
                            kind: StepKind::Modify,
                            old_path: None,
                            new_path: path.clone(),
                            score: None,
                        });
                    }
                    commit = parent;
                }
                (None, Some(parent)) => {
                    let pf = self.files(&parent.tree()?)?;
                    match self.best_source(blob, &files, &pf, config)? {
                        Some((old_path, kind, score)) => {
                            steps.push(TrackStep {
                                commit: id,
                                kind,
                                old_path: Some(old_path.clone()),
                                new_path: std::mem::replace(&mut path, old_path),
                                score: Some(score),
                            });
                            commit = parent.clone();
                        }
                        None => {
                            steps.push(add_step(id, path));
                            return Ok(steps);
                        }
                    }
                }
                (None, None) => {
                    steps.push(add_step(id, path));
                    return Ok(steps);
                }
            }
        }
    }

    /// Best rename/copy source in the parent for a blob that appeared.
    fn best_source(
        &self,
        blob: Oid,
        files: &FileMap,
        parent_files: &FileMap,
        config: &TrackerConfig,
    ) -> Result<Option<(String, StepKind, SimilarityScore)>, git2::Error> {
        let mut best: Option<(String, StepKind, SimilarityScore)> = None;
        // BTreeMap iteration is path-ordered, so keeping the first of equal
        // scores breaks ties toward the smallest path.
        for (old_path, &old) in parent_files {
            let retained = files.contains_key(old_path);
            let (kind, threshold) = if retained {
                if !config.detect_copies {
                    continue;
                }
                (StepKind::Copy, config.copy_threshold())
            } else {
                (StepKind::Rename, config.threshold)
            };
            let score = self.score(old, blob, config.metric)?;
            if !score.meets(threshold) {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, s)| score > *s) {
                best = Some((old_path.clone(), kind, score));
            }
        }
        Ok(best)
    }
}

fn add_step(commit: String, path: String) -> TrackStep {
    TrackStep {
        commit,
        kind: StepKind::Add,
        old_path: None,
        new_path: path,
        score: None,
    }
}

pub fn follow(repo: &Repository, start: &StartPoint, path: &str, config: &TrackerConfig) -> Result<Vec<TrackStep>, TrackError> {
    Tracker::new(repo).follow(start, path, config)
}

/// Number of RENAME plus COPY steps.
pub fn count_renames(steps: &[TrackStep]) -> usize {
    steps
        .iter()
        .filter(|s| matches!(s.kind, StepKind::Rename | StepKind::Copy))
        .count()
}

/// `commit  kind  oldPath  newPath  score`, tab-separated, one step per line.
pub fn write_tsv<W: Write>(steps: &[TrackStep], mut out: W) -> io::Result<()> {
    for s in steps {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            s.commit,
            s.kind,
            s.old_path.as_deref().unwrap_or(""),
            s.new_path,
            s.score.map(|x| x.to_string()).unwrap_or_default()
        )?;
    }
    Ok(())
}

pub fn to_json(steps: &[TrackStep]) -> serde_json::Value {
    serde_json::to_value(steps).expect("steps serialize")
}
