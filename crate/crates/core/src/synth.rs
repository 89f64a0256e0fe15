//! Seeded generators for synthetic repositories.
//!
//! Used by tests and benchmarks: linear text histories with renames and
//! copies for tracker checks, and Java project histories for conversion.
//! Output depends only on the seed and configuration.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use git2::{Oid, Repository, Signature, Time};
use rand::rngs::Xoshiro256PlusPlus;
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};

/// Commit timestamps start here and advance one minute per commit.
pub const BASE_TIME: i64 = 1_600_000_000;

pub type FileSet = BTreeMap<String, Vec<u8>>;

/// Full path, path relative to the tree being built, content.
type Entry<'a> = (&'a str, &'a str, &'a [u8]);

/// Writes flat file snapshots as commits, reusing blobs of unchanged paths.
pub struct SnapshotWriter<'r> {
    repo: &'r Repository,
    blobs: HashMap<String, (Vec<u8>, Oid)>,
    clock: i64,
}

impl<'r> SnapshotWriter<'r> {
    pub fn new(repo: &'r Repository) -> Self {
        SnapshotWriter {
            repo,
            blobs: HashMap::new(),
            clock: BASE_TIME,
        }
    }

    fn blob(&mut self, path: &str, content: &[u8]) -> Result<Oid, git2::Error> {
        if let Some((old, id)) = self.blobs.get(path) {
            if old == content {
                return Ok(*id);
            }
        }
        let id = self.repo.blob(content)?;
        self.blobs.insert(path.to_string(), (content.to_vec(), id));
        Ok(id)
    }

    fn tree(&mut self, files: &[Entry<'_>]) -> Result<Oid, git2::Error> {
        let mut builder = self.repo.treebuilder(None)?;
        let mut subdirs: BTreeMap<&str, Vec<Entry<'_>>> = BTreeMap::new();
        for &(full, rel, content) in files {
            match rel.split_once('/') {
                Some((dir, rest)) => subdirs.entry(dir).or_default().push((full, rest, content)),
                None => {
                    let id = self.blob(full, content)?;
                    builder.insert(rel, id, 0o100644)?;
                }
            }
        }
        for (dir, entries) in subdirs {
            let id = self.tree(&entries)?;
            builder.insert(dir, id, 0o040000)?;
        }
        builder.write()
    }

    /// Commit `files` with the given parents; does not move any ref.
    pub fn commit(&mut self, files: &FileSet, parents: &[Oid], message: &str) -> Result<Oid, git2::Error> {
        let entries: Vec<Entry<'_>> =
            files.iter().map(|(p, c)| (p.as_str(), p.as_str(), c.as_slice())).collect();
        let tree_id = self.tree(&entries)?;
        let tree = self.repo.find_tree(tree_id)?;
        let sig = Signature::new("Synth Author", "synth@example.com", &Time::new(self.clock, 0))?;
        self.clock += 60;
        let parents: Vec<git2::Commit<'_>> =
            parents.iter().map(|p| self.repo.find_commit(*p)).collect::<Result<_, _>>()?;
        let refs: Vec<&git2::Commit<'_>> = parents.iter().collect();
        self.repo.commit(None, &sig, &sig, message, &tree, &refs)
    }

    /// Point `refs/heads/<branch>` at `id` and make it HEAD.
    pub fn set_branch(&self, branch: &str, id: Oid) -> Result<(), git2::Error> {
        let name = format!("refs/heads/{branch}");
        self.repo.reference(&name, id, true, "synth")?;
        self.repo.set_head(&name)
    }
}

/// Commit a linear sequence of snapshots on `main`. Returns commit ids,
/// oldest first.
pub fn commit_linear(repo: &Repository, snapshots: &[FileSet]) -> Result<Vec<Oid>, git2::Error> {
    let mut w = SnapshotWriter::new(repo);
    let mut ids: Vec<Oid> = Vec::new();
    for (i, files) in snapshots.iter().enumerate() {
        let parents: Vec<Oid> = ids.last().copied().into_iter().collect();
        ids.push(w.commit(files, &parents, &format!("commit {i}\n"))?);
    }
    if let Some(last) = ids.last() {
        w.set_branch("main", *last)?;
    }
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TextHistoryConfig {
    pub seed: u64,
    pub commits: usize,
    pub max_files: usize,
}

const WORDS: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "return x;", "}", "{", "i++;", "call();", "if (a)", "value",
    "; RETURN", "( METHOD_CALL", "int", "String", "total = total + 1;",
];

fn random_line(rng: &mut Xoshiro256PlusPlus) -> String {
    if rng.random_bool(0.1) {
        // Long enough to span several 64-byte chunks.
        let n = rng.random_range(65..200);
        let c = *b"abc".choose(rng).expect("non-empty");
        let mut s = String::from_utf8(vec![c; n]).expect("ascii");
        if rng.random_bool(0.5) {
            s.push_str(&rng.random_range(0..5).to_string());
        }
        return s;
    }
    let a = WORDS.choose(rng).expect("non-empty");
    if rng.random_bool(0.5) {
        a.to_string()
    } else {
        format!("{a} {}", rng.random_range(0..20))
    }
}

fn random_file(rng: &mut Xoshiro256PlusPlus) -> Vec<u8> {
    let n = rng.random_range(1..12);
    let mut s = String::new();
    for _ in 0..n {
        s.push_str(&random_line(rng));
        s.push('\n');
    }
    s.into_bytes()
}

fn mutate(rng: &mut Xoshiro256PlusPlus, content: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(content);
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let edits = rng.random_range(1..4);
    for _ in 0..edits {
        match rng.random_range(0..3) {
            0 if !lines.is_empty() => {
                let i = rng.random_range(0..lines.len());
                lines[i] = random_line(rng);
            }
            1 if lines.len() > 1 => {
                let i = rng.random_range(0..lines.len());
                lines.remove(i);
            }
            _ => {
                let i = rng.random_range(0..=lines.len());
                lines.insert(i, random_line(rng));
            }
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out.into_bytes()
}

fn fresh_path(rng: &mut Xoshiro256PlusPlus, files: &FileSet) -> String {
    loop {
        let dir = ["", "a/", "b/", "a/c/"].choose(rng).expect("non-empty");
        let p = format!("{dir}f{}.txt", rng.random_range(0..1000));
        if !files.contains_key(&p) {
            return p;
        }
    }
}

/// Snapshots of a random linear history of small text files: adds,
/// deletes, edits, renames (with and without edits) and copies.
pub fn text_history(config: &TextHistoryConfig) -> Vec<FileSet> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(config.seed);
    let mut files = FileSet::new();
    let mut out = Vec::with_capacity(config.commits);
    for _ in 0..rng.random_range(2..6).min(config.max_files) {
        let p = fresh_path(&mut rng, &files);
        files.insert(p, random_file(&mut rng));
    }
    out.push(files.clone());
    for _ in 1..config.commits {
        let ops = rng.random_range(1..4);
        for _ in 0..ops {
            let paths: Vec<String> = files.keys().cloned().collect();
            let pick = paths.choose(&mut rng).cloned();
            match (rng.random_range(0..6), pick) {
                (0, _) if files.len() < config.max_files => {
                    let p = fresh_path(&mut rng, &files);
                    files.insert(p, random_file(&mut rng));
                }
                (1, Some(p)) if files.len() > 1 => {
                    files.remove(&p);
                }
                (2, Some(p)) => {
                    let c = mutate(&mut rng, &files[&p]);
                    files.insert(p, c);
                }
                (3 | 4, Some(p)) => {
                    let mut c = files.remove(&p).expect("picked");
                    if rng.random_bool(0.6) {
                        c = mutate(&mut rng, &c);
                    }
                    let q = fresh_path(&mut rng, &files);
                    files.insert(q, c);
                }
                (_, Some(p)) if files.len() < config.max_files => {
                    let mut c = files[&p].clone();
                    if rng.random_bool(0.5) {
                        c = mutate(&mut rng, &c);
                    }
                    let q = fresh_path(&mut rng, &files);
                    files.insert(q, c);
                }
                _ => {}
            }
        }
        out.push(files.clone());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JavaHistoryConfig {
    pub seed: u64,
    pub commits: usize,
    /// Java files in the first commit.
    pub files: usize,
    pub methods_per_class: usize,
    /// Every n-th commit becomes a two-parent merge.
    pub merge_every: Option<usize>,
}

impl Default for JavaHistoryConfig {
    fn default() -> Self {
        JavaHistoryConfig {
            seed: 1,
            commits: 50,
            files: 20,
            methods_per_class: 6,
            merge_every: None,
        }
    }
}

#[derive(Debug, Clone)]
struct JMethod {
    modifiers: &'static str,
    ret: &'static str,
    name: String,
    params: Vec<(&'static str, String)>,
    body: Vec<String>,
    javadoc: bool,
}

#[derive(Debug, Clone)]
struct JClass {
    dir: String,
    name: String,
    fields: Vec<(&'static str, String)>,
    methods: Vec<JMethod>,
}

const VERBS: &[&str] = &["compute", "load", "store", "update", "find", "parse", "check", "build", "merge"];
const NOUNS: &[&str] = &["Value", "Item", "Count", "Name", "Length", "Height", "Index", "Total", "Size"];
const TYPES: &[&str] = &["int", "long", "String", "boolean", "double", "List<String>", "int[]"];
const RETURNS: &[&str] = &["void", "int", "String", "boolean", "long"];
const MODS: &[&str] = &["public", "private", "protected static", "public final", ""];

fn statement(rng: &mut Xoshiro256PlusPlus, k: usize) -> String {
    let n = rng.random_range(0..100);
    match rng.random_range(0..9) {
        0 => format!("int v{k} = a{k} + {n};"),
        1 => format!("if (x > {n}) {{\n            return;\n        }}"),
        2 => format!("for (int i = 0; i < {n}; i++) {{\n            total += i * {k};\n        }}"),
        3 => format!("while (count < {n}) {{\n            count++;\n        }}"),
        4 => format!("System.out.println(\"message {n}\");"),
        5 => format!("items.add(String.valueOf({n}));"),
        6 => format!("try {{\n            call{k}();\n        }} catch (Exception e) {{\n            log(e, {n});\n        }}"),
        7 => format!("// note {n}\n        total = (int) (total * {n}L);"),
        _ => format!("helper.process(new int[] {{ {k}, {n} }}, x -> x + {n});"),
    }
}

fn ret_stmt(ret: &str) -> Option<&'static str> {
    match ret {
        "int" => Some("return total;"),
        "long" => Some("return 0L;"),
        "String" => Some("return \"done\";"),
        "boolean" => Some("return total > 0;"),
        _ => None,
    }
}

fn method(rng: &mut Xoshiro256PlusPlus, taken: &[String]) -> JMethod {
    let name = loop {
        let n = format!(
            "{}{}{}",
            VERBS.choose(rng).expect("non-empty"),
            NOUNS.choose(rng).expect("non-empty"),
            rng.random_range(0..50)
        );
        if !taken.contains(&n) {
            break n;
        }
    };
    let params = (0..rng.random_range(0..3))
        .map(|i| (*TYPES.choose(rng).expect("non-empty"), format!("p{i}")))
        .collect();
    let body = (0..rng.random_range(3..9)).map(|k| statement(rng, k)).collect();
    JMethod {
        modifiers: MODS.choose(rng).expect("non-empty"),
        ret: RETURNS.choose(rng).expect("non-empty"),
        name,
        params,
        body,
        javadoc: rng.random_bool(0.3),
    }
}

fn render_class(c: &JClass) -> Vec<u8> {
    let mut s = String::new();
    let pkg = c.dir.replace('/', ".");
    let _ = writeln!(s, "package {pkg};\n\nimport java.util.List;\n\npublic class {} {{", c.name);
    for (ty, name) in &c.fields {
        let _ = writeln!(s, "    private {ty} {name};");
    }
    for m in &c.methods {
        s.push('\n');
        if m.javadoc {
            let _ = writeln!(s, "    /**\n     * {}.\n     */", m.name);
        }
        let params: Vec<String> = m.params.iter().map(|(t, n)| format!("{t} {n}")).collect();
        let mods = if m.modifiers.is_empty() { String::new() } else { format!("{} ", m.modifiers) };
        let _ = writeln!(s, "    {mods}{} {}({}) {{", m.ret, m.name, params.join(", "));
        for st in &m.body {
            let _ = writeln!(s, "        {st}");
        }
        if let Some(r) = ret_stmt(m.ret) {
            let _ = writeln!(s, "        {r}");
        }
        s.push_str("    }\n");
    }
    s.push_str("}\n");
    s.into_bytes()
}

struct JavaState {
    rng: Xoshiro256PlusPlus,
    classes: Vec<JClass>,
    /// Rendered source per class; `None` once the class is edited.
    rendered: Vec<Option<(String, Vec<u8>)>>,
    next_class: usize,
    methods_per_class: usize,
}

impl JavaState {
    fn new_class(&mut self) -> JClass {
        let dir = format!(
            "src/main/java/org/synth/{}",
            ["core", "util", "io", "model"][self.next_class % 4]
        );
        let name = format!("{}{}", NOUNS[self.next_class % NOUNS.len()], self.next_class);
        self.next_class += 1;
        let mut methods: Vec<JMethod> = Vec::new();
        for _ in 0..self.methods_per_class {
            let taken: Vec<String> = methods.iter().map(|m| m.name.clone()).collect();
            methods.push(method(&mut self.rng, &taken));
        }
        let fields = (0..self.rng.random_range(1..4))
            .map(|i| (*TYPES.choose(&mut self.rng).expect("non-empty"), format!("f{i}")))
            .collect();
        JClass {
            dir,
            name,
            fields,
            methods,
        }
    }

    fn new(seed: u64, classes: usize, methods_per_class: usize) -> Self {
        let mut state = JavaState {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
            classes: Vec::new(),
            rendered: Vec::new(),
            next_class: 0,
            methods_per_class: methods_per_class.max(1),
        };
        for _ in 0..classes.max(1) {
            let c = state.new_class();
            state.classes.push(c);
            state.rendered.push(None);
        }
        state
    }

    fn snapshot(&mut self) -> FileSet {
        let mut files = FileSet::new();
        files.insert("README.md".into(), b"Synthetic project.\n".to_vec());
        for (c, slot) in self.classes.iter().zip(self.rendered.iter_mut()) {
            let (path, content) =
                slot.get_or_insert_with(|| (format!("{}/{}.java", c.dir, c.name), render_class(c)));
            files.insert(path.clone(), content.clone());
        }
        files
    }

    fn edit(&mut self) {
        let ci = self.rng.random_range(0..self.classes.len());
        let op = self.rng.random_range(0..10);
        let len = self.classes[ci].methods.len();
        let mi = self.rng.random_range(0..len.max(1));
        let taken: Vec<String> = self.classes[ci].methods.iter().map(|m| m.name.clone()).collect();
        self.rendered[ci] = None;
        match op {
            0..=3 if len > 0 => {
                let m = &mut self.classes[ci].methods[mi];
                let k = self.rng.random_range(0..m.body.len());
                m.body[k] = statement(&mut self.rng, k);
            }
            4 if len > 0 => {
                let fresh = method(&mut self.rng, &taken);
                self.classes[ci].methods[mi].name = fresh.name;
            }
            5 => {
                let m = method(&mut self.rng, &taken);
                self.classes[ci].methods.push(m);
            }
            6 if len > 1 => {
                self.classes[ci].methods.remove(mi);
            }
            7 if len > 1 && self.classes.len() > 1 => {
                let mut to = self.rng.random_range(0..self.classes.len() - 1);
                if to >= ci {
                    to += 1;
                }
                let name = &self.classes[ci].methods[mi].name;
                if self.classes[to].methods.iter().all(|x| &x.name != name) {
                    self.rendered[to] = None;
                    let m = self.classes[ci].methods.remove(mi);
                    self.classes[to].methods.push(m);
                }
            }
            8 => {
                let n = self.next_class;
                self.next_class += 1;
                self.classes[ci].name = format!("{}{}", NOUNS[n % NOUNS.len()], n);
            }
            _ if len > 0 => {
                let ty = *TYPES.choose(&mut self.rng).expect("non-empty");
                let m = &mut self.classes[ci].methods[mi];
                m.params.push((ty, format!("q{}", m.params.len())));
            }
            _ => {}
        }
    }
}

/// A Java project history on `main`. Returns commit ids in creation order.
pub fn java_history(repo: &Repository, config: &JavaHistoryConfig) -> Result<Vec<Oid>, git2::Error> {
    let mut state = JavaState::new(config.seed, config.files, config.methods_per_class);
    let mut w = SnapshotWriter::new(repo);
    let mut ids = Vec::with_capacity(config.commits);
    let mut tip: Option<Oid> = None;
    while ids.len() < config.commits {
        let n = ids.len();
        if n > 0 {
            for _ in 0..state.rng.random_range(1..4) {
                state.edit();
            }
        }
        let parents: Vec<Oid> = tip.into_iter().collect();
        let merge = config.merge_every.is_some_and(|k| k > 0 && n > 0 && n % k == 0) && ids.len() + 3 <= config.commits;
        if merge {
            // Side commit and main commit off the same parent, then a merge.
            let side = w.commit(&state.snapshot(), &parents, &format!("side {n}\n"))?;
            state.edit();
            let main = w.commit(&state.snapshot(), &parents, &format!("main {n}\n"))?;
            let m = w.commit(&state.snapshot(), &[main, side], &format!("Merge side {n}\n"))?;
            ids.extend([side, main, m]);
            tip = Some(m);
        } else {
            let id = w.commit(&state.snapshot(), &parents, &format!("commit {n}\n"))?;
            ids.push(id);
            tip = Some(id);
        }
    }
    if let Some(t) = tip {
        w.set_branch("main", t)?;
    }
    Ok(ids)
}

/// `classes` generated Java files after some rounds of edits, keyed by path.
pub fn java_corpus(seed: u64, classes: usize) -> FileSet {
    let mut state = JavaState::new(seed, classes, 5);
    for _ in 0..classes * 8 {
        state.edit();
    }
    let mut files = state.snapshot();
    files.retain(|p, _| p.ends_with(".java"));
    files
}
