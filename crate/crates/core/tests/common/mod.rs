//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use finegrain_core::synth::{commit_linear, FileSet};
use git2::{Oid, Repository};
use tempfile::TempDir;

pub const PERSON: &str = "public class Person {
    private int length;

    public int getLength() {
        return length;
    }

    public void setLength(int length) {
        this.length = length;
    }
}
";

/// `Person` after renaming the class, the field and both accessors.
pub const ENGINEER: &str = "public class Engineer {
    private int height;

    public int getHeight() {
        return height;
    }

    public void setHeight(int height) {
        this.height = height;
    }
}
";

pub const IF_NULL: &str = "if (a == null) {
    return -1;
}
";

pub const WHILE_SUM: &str = "while (i < 10) {
    total += b;
}
";

pub fn files(entries: &[(&str, &str)]) -> FileSet {
    entries.iter().map(|(p, c)| (p.to_string(), c.as_bytes().to_vec())).collect()
}

pub struct Fixture {
    pub dir: TempDir,
    pub ids: Vec<Oid>,
}

impl Fixture {
    pub fn path(&self) -> &Path {
        self.dir.path()
    }

    pub fn repo(&self) -> Repository {
        Repository::open(self.dir.path()).expect("open fixture")
    }
}

/// A fresh repository holding `snapshots` as a linear history on `main`.
pub fn linear_repo(snapshots: &[FileSet]) -> Fixture {
    let dir = TempDir::new().expect("tempdir");
    let repo = Repository::init(dir.path()).expect("init");
    let ids = commit_linear(&repo, snapshots).expect("commit");
    Fixture { dir, ids }
}

/// Two commits: Person.java, then Engineer.java in its place.
pub fn person_to_engineer() -> Fixture {
    linear_repo(&[
        files(&[("src/Person.java", PERSON)]),
        files(&[("src/Engineer.java", ENGINEER)]),
    ])
}

/// A destination path inside a fresh temp dir (the path itself does not exist).
pub fn scratch() -> (TempDir, PathBuf) {
    let dir = TempDir::new().expect("tempdir");
    let path = dir.path().join("out");
    (dir, path)
}
