//! File names for method and field files.
//!
//! Base name grammar: `<chain joined by '$'>#<modifiers joined by '_'>_<type>_<name>`,
//! with `(<params joined by ','>)` appended for methods. Empty segments drop
//! together with their underscore.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::java::{FieldDecl, MethodDecl};

pub const METHOD_EXT: &str = ".mjava";
pub const FIELD_EXT: &str = ".fjava";
/// `_` plus eight hex digits.
const HASH_SUFFIX_LEN: usize = 9;
pub const MIN_FILE_NAME_BYTES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("file name limit {0} is below the minimum of {MIN_FILE_NAME_BYTES} bytes")]
pub struct InvalidPolicy(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NamePolicy {
    max_file_name_bytes: usize,
    max_path_bytes: Option<usize>,
}

impl Default for NamePolicy {
    fn default() -> Self {
        NamePolicy {
            max_file_name_bytes: 255,
            max_path_bytes: None,
        }
    }
}

impl NamePolicy {
    pub fn new(max_file_name_bytes: usize, max_path_bytes: Option<usize>) -> Result<Self, InvalidPolicy> {
        if max_file_name_bytes < MIN_FILE_NAME_BYTES {
            return Err(InvalidPolicy(max_file_name_bytes));
        }
        Ok(NamePolicy {
            max_file_name_bytes,
            max_path_bytes,
        })
    }

    /// Limits suitable for checkouts on Windows.
    pub fn windows() -> Self {
        NamePolicy {
            max_file_name_bytes: 255,
            max_path_bytes: Some(260),
        }
    }

    pub fn max_file_name_bytes(&self) -> usize {
        self.max_file_name_bytes
    }

    pub fn max_path_bytes(&self) -> Option<usize> {
        self.max_path_bytes
    }

    /// Effective file-name limit for a file placed in `dir`.
    fn limit_in(&self, dir: &str) -> usize {
        let mut limit = self.max_file_name_bytes;
        if let Some(max_path) = self.max_path_bytes {
            let prefix = if dir.is_empty() { 0 } else { dir.len() + 1 };
            limit = limit.min(max_path.saturating_sub(prefix));
        }
        limit.max(MIN_FILE_NAME_BYTES)
    }
}

fn join_segments(chain: &[String], modifiers: &[String], ty: &str, tail: &str) -> String {
    let mut s = chain.join("$");
    s.push('#');
    let mut parts: Vec<&str> = modifiers.iter().map(String::as_str).collect();
    if !ty.is_empty() {
        parts.push(ty);
    }
    parts.push(tail);
    s.push_str(&parts.join("_"));
    s
}

fn strip_spaces(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn method_base_name(decl: &MethodDecl) -> String {
    let params: Vec<String> = decl.param_types.iter().map(|p| strip_spaces(p)).collect();
    let tail = format!("{}({})", decl.name, params.join(","));
    join_segments(&decl.class_chain, &decl.modifiers, &strip_spaces(&decl.return_type), &tail)
}

pub fn field_base_name(decl: &FieldDecl) -> String {
    join_segments(&decl.class_chain, &decl.modifiers, &strip_spaces(&decl.field_type), &decl.name)
}

fn in_dir(dir: &str, file: String) -> String {
    if dir.is_empty() {
        file
    } else {
        format!("{dir}/{file}")
    }
}

/// Path of a method file placed in `dir` (the directory of the source file).
pub fn method_file_name(decl: &MethodDecl, dir: &str, policy: &NamePolicy) -> String {
    let base = shorten_to(&method_base_name(decl), METHOD_EXT, policy.limit_in(dir));
    in_dir(dir, base + METHOD_EXT)
}

pub fn field_file_name(decl: &FieldDecl, dir: &str, policy: &NamePolicy) -> String {
    let base = shorten_to(&field_base_name(decl), FIELD_EXT, policy.limit_in(dir));
    in_dir(dir, base + FIELD_EXT)
}

/// Shorten `base` so that `base + ext` fits the policy's file-name limit.
pub fn shorten(base: &str, ext: &str, policy: &NamePolicy) -> String {
    shorten_to(base, ext, policy.max_file_name_bytes)
}

fn shorten_to(base: &str, ext: &str, limit: usize) -> String {
    if base.len() + ext.len() <= limit {
        return base.to_string();
    }
    let keep = limit.saturating_sub(ext.len() + HASH_SUFFIX_LEN);
    let mut cut = keep.min(base.len());
    while !base.is_char_boundary(cut) {
        cut -= 1;
    }
    let digest = Sha256::digest(base.as_bytes());
    format!("{}_{}", &base[..cut], hex::encode(&digest[..4]))
}
