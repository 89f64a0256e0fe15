//! Rewrite a Java repository's history into method-level files.
//!
//! Every commit reachable from the selected refs is replayed with the same
//! parents, identities, timestamps and message. Each `.java` blob becomes
//! one file per method (and per field, when enabled) in the same directory.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use git2::build::CheckoutBuilder;
use git2::{FileMode, ObjectType, Oid, Repository, Sort, Tree};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::emit::{render_field, render_method, RenderConfig, RenderedFile};
use crate::java::{extract, ExtractError};
use crate::naming::{field_file_name, method_file_name, NamePolicy};

/// Name of the source-to-destination commit map inside the destination's
/// `.git` directory.
pub const COMMIT_MAP: &str = "commit-map.tsv";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConversionConfig {
    pub render: RenderConfig,
    pub emit_fields: bool,
    pub keep_original_java: bool,
    pub pass_through_non_java: bool,
    pub name_policy: NamePolicy,
    /// Refs to convert (`main`, `refs/tags/v1`, ...). Empty means every
    /// branch and tag.
    pub refs: Vec<String>,
    /// Populate the destination working tree from HEAD when done.
    pub checkout: bool,
    /// Reuse conversions of blobs and trees already seen. Output is the same
    /// either way; disabling it only costs time.
    pub use_cache: bool,
}

impl Default for ConversionConfig {
    fn default() -> Self {
        ConversionConfig {
            render: RenderConfig::default(),
            emit_fields: false,
            keep_original_java: false,
            pass_through_non_java: true,
            name_policy: NamePolicy::default(),
            refs: Vec::new(),
            checkout: true,
            use_cache: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConversionStats {
    pub commits: u64,
    /// Rendered files written (each distinct conversion counted once).
    pub files_emitted: u64,
    /// `.java` blobs that failed to lex or parse and were kept verbatim.
    pub skipped_files: u64,
    pub refs: u64,
    pub blob_cache_hits: u64,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("destination {0} exists and is not empty")]
    DestinationNotEmpty(PathBuf),
    #[error("unreadable object {id}: {source}")]
    CorruptRepo { id: String, source: git2::Error },
    #[error("ref {0:?} not found")]
    UnknownRef(String),
    #[error(transparent)]
    Git(#[from] git2::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn corrupt(id: Oid) -> impl FnOnce(git2::Error) -> RewriteError {
    move |source| RewriteError::CorruptRepo {
        id: id.to_string(),
        source,
    }
}

fn is_java(name: &str) -> bool {
    name.ends_with(".java")
}

/// Render all declarations of one Java source file placed in `dir`.
///
/// Paths are not yet de-duplicated against siblings.
pub fn convert_java_source(dir: &str, source: &[u8], config: &ConversionConfig) -> Result<Vec<RenderedFile>, ExtractError> {
    let ex = extract(source)?;
    let policy = &config.name_policy;
    let mut out = Vec::with_capacity(ex.methods.len() + ex.fields.len());
    for m in &ex.methods {
        out.push(RenderedFile {
            relative_path: method_file_name(m, dir, policy),
            content: render_method(m, &config.render),
        });
    }
    if config.emit_fields {
        for f in &ex.fields {
            out.push(RenderedFile {
                relative_path: field_file_name(f, dir, policy),
                content: render_field(f, &config.render),
            });
        }
    }
    Ok(out)
}

/// First free variant of `name`: `name`, then `stem~2.ext`, `stem~3.ext`, ...
fn claim(name: String, taken: &mut HashSet<String>) -> String {
    if taken.insert(name.clone()) {
        return name;
    }
    let (stem, ext) = match name.rfind('.') {
        Some(p) if p > name.rfind('/').map_or(0, |s| s + 1) => name.split_at(p),
        _ => (name.as_str(), ""),
    };
    for k in 2.. {
        let candidate = format!("{stem}~{k}{ext}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
    }
    unreachable!()
}

fn split_dir(path: &str) -> (&str, &str) {
    match path.rfind('/') {
        Some(p) => (&path[..p], &path[p + 1..]),
        None => ("", path),
    }
}

/// Convert a flat `path -> content` file set without touching git.
///
/// Produces the same file set a converted commit tree would contain.
pub fn convert_file_set(files: &BTreeMap<String, Vec<u8>>, config: &ConversionConfig) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut taken = HashSet::new();
    let mut java = Vec::new();
    for (path, content) in files {
        let keep = if is_java(split_dir(path).1) {
            java.push((path, content));
            config.keep_original_java
        } else {
            config.pass_through_non_java
        };
        if keep {
            taken.insert(path.clone());
            out.insert(path.clone(), content.clone());
        }
    }
    for (path, content) in java {
        match convert_java_source(split_dir(path).0, content, config) {
            Ok(rendered) => {
                for r in rendered {
                    let p = claim(r.relative_path, &mut taken);
                    out.insert(p, r.content);
                }
            }
            Err(e) => {
                log::warn!("{path}: {e}; kept verbatim");
                if !config.keep_original_java {
                    let p = claim(path.clone(), &mut taken);
                    out.insert(p, content.clone());
                }
            }
        }
    }
    out
}

/// Result of converting one `.java` blob: file names with their blob ids,
/// or `None` when the source is kept verbatim.
type BlobResult = Option<Vec<(String, Oid)>>;

enum Job {
    Rendered(Vec<RenderedFile>),
    Verbatim(String),
}

/// Converts trees and commits from `src` into `dst`, caching per blob.
pub struct Rewriter<'a> {
    src: &'a Repository,
    dst: &'a Repository,
    config: ConversionConfig,
    blobs: HashMap<(Oid, String), BlobResult>,
    trees: HashMap<(Oid, String), Option<Oid>>,
    commits: HashMap<Oid, Oid>,
    stats: ConversionStats,
}

impl<'a> Rewriter<'a> {
    pub fn new(src: &'a Repository, dst: &'a Repository, config: ConversionConfig) -> Self {
        Rewriter {
            src,
            dst,
            config,
            blobs: HashMap::new(),
            trees: HashMap::new(),
            commits: HashMap::new(),
            stats: ConversionStats::default(),
        }
    }

    pub fn stats(&self) -> &ConversionStats {
        &self.stats
    }

    /// Destination id of an already converted source commit.
    pub fn mapped(&self, src: Oid) -> Option<Oid> {
        self.commits.get(&src).copied()
    }

    /// Cache key directory: names only depend on the directory when a path
    /// limit is in force.
    fn key_dir(&self, dir: &str) -> String {
        if self.config.name_policy.max_path_bytes().is_some() {
            dir.to_string()
        } else {
            String::new()
        }
    }

    /// Convert a source tree; returns the destination tree id.
    pub fn convert_tree(&mut self, tree: &Tree<'_>) -> Result<Oid, RewriteError> {
        self.prepare(tree)?;
        let id = self.build_tree(tree, "")?;
        match id {
            Some(id) => Ok(id),
            None => Ok(self.dst.treebuilder(None)?.write()?),
        }
    }

    /// Convert every `.java` blob of `tree` not yet in the cache, in parallel.
    fn prepare(&mut self, tree: &Tree<'_>) -> Result<(), RewriteError> {
        if !self.config.use_cache {
            self.blobs.clear();
            self.trees.clear();
        }
        let mut pending: Vec<(Oid, String)> = Vec::new();
        let mut seen = HashSet::new();
        self.collect(tree, "", &mut pending, &mut seen)?;
        if pending.is_empty() {
            return Ok(());
        }
        let mut inputs = Vec::with_capacity(pending.len());
        for (oid, dir) in pending {
            let blob = self.src.find_blob(oid).map_err(corrupt(oid))?;
            inputs.push((oid, dir, blob.content().to_vec()));
        }
        let config = &self.config;
        let results: Vec<(Oid, String, Job)> = inputs
            .into_par_iter()
            .map(|(oid, dir, content)| {
                let job = match convert_java_source(&dir, &content, config) {
                    Ok(files) => Job::Rendered(files),
                    Err(e) => Job::Verbatim(e.to_string()),
                };
                (oid, dir, job)
            })
            .collect();
        for (oid, dir, job) in results {
            let entry = match job {
                Job::Rendered(files) => {
                    let mut named = Vec::with_capacity(files.len());
                    for f in files {
                        let id = self.dst.blob(&f.content)?;
                        self.stats.files_emitted += 1;
                        named.push((split_dir(&f.relative_path).1.to_string(), id));
                    }
                    Some(named)
                }
                Job::Verbatim(why) => {
                    log::warn!("{dir}/{oid}: {why}; kept verbatim");
                    self.stats.skipped_files += 1;
                    None
                }
            };
            let key = (oid, self.key_dir(&dir));
            self.blobs.insert(key, entry);
        }
        Ok(())
    }

    fn collect(
        &mut self,
        tree: &Tree<'_>,
        dir: &str,
        pending: &mut Vec<(Oid, String)>,
        seen: &mut HashSet<(Oid, String)>,
    ) -> Result<(), RewriteError> {
        if self.trees.contains_key(&(tree.id(), self.key_dir(dir))) {
            return Ok(());
        }
        for entry in tree.iter() {
            let Ok(name) = entry.name() else { continue };
            match entry.kind() {
                Some(ObjectType::Tree) => {
                    let sub = self.src.find_tree(entry.id()).map_err(corrupt(entry.id()))?;
                    let path = join(dir, name);
                    self.collect(&sub, &path, pending, seen)?;
                }
                Some(ObjectType::Blob) if is_java(name) => {
                    let key = (entry.id(), self.key_dir(dir));
                    if self.blobs.contains_key(&key) {
                        self.stats.blob_cache_hits += 1;
                    } else if seen.insert(key) {
                        pending.push((entry.id(), dir.to_string()));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn build_tree(&mut self, tree: &Tree<'_>, dir: &str) -> Result<Option<Oid>, RewriteError> {
        let key = (tree.id(), self.key_dir(dir));
        if let Some(hit) = self.trees.get(&key) {
            return Ok(*hit);
        }
        let mut builder = self.dst.treebuilder(None)?;
        let mut taken = HashSet::new();
        let mut java = Vec::new();
        for entry in tree.iter() {
            let Ok(name) = entry.name() else {
                log::warn!("{dir}: skipping entry with a non-UTF-8 name");
                continue;
            };
            let mode = entry.filemode();
            match entry.kind() {
                Some(ObjectType::Tree) => {
                    let sub = self.src.find_tree(entry.id()).map_err(corrupt(entry.id()))?;
                    if let Some(id) = self.build_tree(&sub, &join(dir, name))? {
                        taken.insert(name.to_string());
                        builder.insert(name, id, i32::from(FileMode::Tree))?;
                    }
                }
                Some(ObjectType::Blob) => {
                    let java_file = is_java(name);
                    if java_file {
                        java.push((name.to_string(), entry.id(), mode));
                    }
                    let keep = if java_file {
                        self.config.keep_original_java
                    } else {
                        self.config.pass_through_non_java
                    };
                    if keep {
                        let id = self.copy_blob(entry.id())?;
                        taken.insert(name.to_string());
                        builder.insert(name, id, mode)?;
                    }
                }
                // Submodule links and anything else pass through untouched.
                _ => {
                    if self.config.pass_through_non_java {
                        taken.insert(name.to_string());
                        builder.insert(name, entry.id(), mode)?;
                    }
                }
            }
        }
        for (name, oid, mode) in java {
            let result = self.blobs.get(&(oid, self.key_dir(dir))).cloned().flatten();
            match result {
                Some(files) => {
                    for (file, id) in files {
                        let file = claim(file, &mut taken);
                        builder.insert(&file, id, i32::from(FileMode::Blob))?;
                    }
                }
                None if !self.config.keep_original_java => {
                    let id = self.copy_blob(oid)?;
                    let file = claim(name, &mut taken);
                    builder.insert(&file, id, mode)?;
                }
                None => {}
            }
        }
        let out = if builder.is_empty() { None } else { Some(builder.write()?) };
        self.trees.insert(key, out);
        Ok(out)
    }

    fn copy_blob(&self, oid: Oid) -> Result<Oid, RewriteError> {
        let dst_odb = self.dst.odb()?;
        if dst_odb.exists(oid) {
            return Ok(oid);
        }
        let blob = self.src.find_blob(oid).map_err(corrupt(oid))?;
        Ok(self.dst.blob(blob.content())?)
    }

    /// Convert one commit whose parents are already converted.
    pub fn convert_commit(&mut self, id: Oid) -> Result<Oid, RewriteError> {
        if let Some(done) = self.commits.get(&id) {
            return Ok(*done);
        }
        let commit = self.src.find_commit(id).map_err(corrupt(id))?;
        let tree = commit.tree().map_err(corrupt(commit.tree_id()))?;
        let new_tree = self.convert_tree(&tree)?;
        let mut raw = Vec::new();
        writeln!(raw, "tree {new_tree}")?;
        for p in commit.parent_ids() {
            let mapped = match self.commits.get(&p) {
                Some(m) => *m,
                None => self.convert_commit(p)?,
            };
            writeln!(raw, "parent {mapped}")?;
        }
        let mut skipping = false;
        for line in commit.raw_header_bytes().split(|&b| b == b'\n') {
            if line.is_empty() {
                continue;
            }
            if line[0] == b' ' {
                if !skipping {
                    raw.extend_from_slice(line);
                    raw.push(b'\n');
                }
                continue;
            }
            let key = line.split(|&b| b == b' ').next().unwrap_or_default();
            // Signatures cannot survive a rewrite.
            skipping = matches!(key, b"tree" | b"parent" | b"gpgsig" | b"gpgsig-sha256" | b"mergetag");
            if !skipping {
                raw.extend_from_slice(line);
                raw.push(b'\n');
            }
        }
        raw.push(b'\n');
        raw.extend_from_slice(commit.message_raw_bytes());
        let new_id = self.dst.odb()?.write(ObjectType::Commit, &raw)?;
        self.commits.insert(id, new_id);
        self.stats.commits += 1;
        Ok(new_id)
    }
}

fn join(dir: &str, name: &str) -> String {
    if dir.is_empty() {
        name.to_string()
    } else {
        format!("{dir}/{name}")
    }
}

/// Refs selected for conversion, sorted by name.
fn selected_refs(src: &Repository, wanted: &[String]) -> Result<Vec<(String, Oid)>, RewriteError> {
    let mut out = BTreeMap::new();
    if wanted.is_empty() {
        for r in src.references()? {
            let r = r?;
            let Ok(name) = r.name() else { continue };
            if name.starts_with("refs/heads/") || name.starts_with("refs/tags/") {
                if let Some(target) = r.target() {
                    out.insert(name.to_string(), target);
                }
            }
        }
    } else {
        for w in wanted {
            let full = [w.clone(), format!("refs/heads/{w}"), format!("refs/tags/{w}")]
                .into_iter()
                .find_map(|n| src.find_reference(&n).ok().and_then(|r| r.resolve().ok()));
            let r = full.ok_or_else(|| RewriteError::UnknownRef(w.clone()))?;
            let name = r.name().map_err(RewriteError::Git)?.to_string();
            let target = r.target().ok_or_else(|| RewriteError::UnknownRef(w.clone()))?;
            out.insert(name, target);
        }
    }
    Ok(out.into_iter().collect())
}

fn ensure_empty_dir(path: &Path) -> Result<(), RewriteError> {
    if path.exists() {
        if fs::read_dir(path)?.next().is_some() {
            return Err(RewriteError::DestinationNotEmpty(path.to_path_buf()));
        }
    } else {
        fs::create_dir_all(path)?;
    }
    Ok(())
}

/// Rewrite every selected ref of `src` into a new repository at `dst`.
pub fn rewrite_history(src: &Repository, dst_path: &Path, config: &ConversionConfig) -> Result<ConversionStats, RewriteError> {
    let started = Instant::now();
    ensure_empty_dir(dst_path)?;
    let dst = Repository::init(dst_path)?;
    let refs = selected_refs(src, &config.refs)?;

    // Peel tags to the commits they name; non-commit targets are skipped.
    let mut walk = src.revwalk()?;
    walk.set_sorting(Sort::TOPOLOGICAL | Sort::REVERSE)?;
    let mut tips = Vec::new();
    for (name, target) in &refs {
        let obj = src.find_object(*target, None).map_err(corrupt(*target))?;
        match obj.peel_to_commit() {
            Ok(c) => {
                walk.push(c.id())?;
                tips.push((name.clone(), *target, obj.kind()));
            }
            Err(_) => log::warn!("{name}: does not point at a commit; skipped"),
        }
    }
    let order: Vec<Oid> = if tips.is_empty() {
        Vec::new()
    } else {
        walk.collect::<Result<_, _>>()?
    };

    let mut rw = Rewriter::new(src, &dst, config.clone());
    let mut map = Vec::with_capacity(order.len());
    for (n, id) in order.iter().enumerate() {
        let new_id = rw.convert_commit(*id)?;
        map.push((*id, new_id));
        if (n + 1) % 1000 == 0 {
            log::info!("{} commits converted", n + 1);
        }
    }

    for (name, target, kind) in &tips {
        let new_target = match kind {
            Some(ObjectType::Tag) => rewrite_tag(src, &dst, *target, &rw)?,
            _ => {
                let c = src.find_object(*target, None)?.peel_to_commit()?;
                rw.mapped(c.id()).expect("tip converted")
            }
        };
        dst.reference(name, new_target, true, "convert")?;
    }
    set_head(src, &dst, &rw, &refs)?;

    let mut tsv = String::new();
    for (a, b) in &map {
        tsv.push_str(&format!("{a}\t{b}\n"));
    }
    fs::write(dst.path().join(COMMIT_MAP), tsv)?;

    if config.checkout && dst.head().is_ok() {
        dst.checkout_head(Some(CheckoutBuilder::new().force()))?;
    }
    let mut stats = rw.stats().clone();
    stats.refs = tips.len() as u64;
    stats.wall_clock_seconds = started.elapsed().as_secs_f64();
    Ok(stats)
}

/// Re-point an annotated tag at the converted commit. A tag of a tag is
/// flattened into a tag of the commit.
fn rewrite_tag(src: &Repository, dst: &Repository, tag_id: Oid, rw: &Rewriter<'_>) -> Result<Oid, RewriteError> {
    let odb = src.odb()?;
    let obj = odb.read(tag_id).map_err(corrupt(tag_id))?;
    let target = src.find_object(tag_id, None)?.peel_to_commit()?.id();
    let new_target = rw.mapped(target).expect("tag target converted");
    let mut out = Vec::with_capacity(obj.data().len());
    writeln!(out, "object {new_target}")?;
    for line in obj.data().split_inclusive(|&b| b == b'\n').skip(1) {
        if line.starts_with(b"type ") {
            out.extend_from_slice(b"type commit\n");
        } else {
            out.extend_from_slice(line);
        }
    }
    Ok(dst.odb()?.write(ObjectType::Tag, &out)?)
}

fn set_head(src: &Repository, dst: &Repository, rw: &Rewriter<'_>, refs: &[(String, Oid)]) -> Result<(), RewriteError> {
    let head = match src.find_reference("HEAD") {
        Ok(h) => h,
        Err(_) => return Ok(()),
    };
    if let Some(target) = head.symbolic_target().ok().flatten() {
        let target = target.to_string();
        if refs.iter().any(|(n, _)| *n == target) {
            dst.set_head(&target)?;
            return Ok(());
        }
    } else if let Ok(c) = head.peel_to_commit() {
        if let Some(m) = rw.mapped(c.id()) {
            dst.set_head_detached(m)?;
            return Ok(());
        }
    }
    // Source HEAD not converted: fall back to the first converted branch.
    if let Some((name, _)) = refs.iter().find(|(n, _)| n.starts_with("refs/heads/")) {
        dst.set_head(name)?;
    }
    Ok(())
}

/// Read `commit-map.tsv` from a converted repository.
pub fn read_commit_map(dst: &Repository) -> Result<Vec<(Oid, Oid)>, RewriteError> {
    let text = fs::read_to_string(dst.path().join(COMMIT_MAP))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let mut parts = line.split('\t');
        if let (Some(a), Some(b)) = (parts.next(), parts.next()) {
            out.push((Oid::from_str(a)?, Oid::from_str(b)?));
        }
    }
    Ok(out)
}
