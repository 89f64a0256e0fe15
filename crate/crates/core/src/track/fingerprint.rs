//! Line fingerprints with the 64-byte chunk rule.

use std::hash::Hasher;

use fnv::FnvHasher;
use serde::{Deserialize, Serialize};

/// Lines longer than this are hashed in pieces.
pub const CHUNK_BYTES: usize = 64;

/// FNV-1a, 64-bit.
pub fn hash_bytes(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chunk {
    pub hash: u64,
    pub byte_len: u32,
}

/// Multiset of chunk hashes, plus whole-line hashes for the line metric.
///
/// Both multisets are kept sorted so intersections are a linear merge.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    chunks: Vec<Chunk>,
    lines: Vec<u64>,
    total_bytes: u64,
}

impl Fingerprint {
    /// Split on LF; each line keeps its terminator for chunking. A final
    /// unterminated line counts as a line.
    pub fn new(content: &[u8]) -> Self {
        let mut chunks = Vec::new();
        let mut lines = Vec::new();
        for line in content.split_inclusive(|&b| b == b'\n') {
            for piece in line.chunks(CHUNK_BYTES) {
                chunks.push(Chunk {
                    hash: hash_bytes(piece),
                    byte_len: piece.len() as u32,
                });
            }
            lines.push(hash_bytes(line.strip_suffix(b"\n").unwrap_or(line)));
        }
        chunks.sort_unstable();
        lines.sort_unstable();
        Fingerprint {
            chunks,
            lines,
            total_bytes: content.len() as u64,
        }
    }

    pub fn chunks(&self) -> &[Chunk] {
        &self.chunks
    }

    pub fn total_bytes(&self) -> u64 {
        self.total_bytes
    }

    pub fn line_count(&self) -> u64 {
        self.lines.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.total_bytes == 0
    }

    /// Bytes shared by the two chunk multisets.
    pub fn common_bytes(&self, other: &Fingerprint) -> u64 {
        let mut sum = 0u64;
        merge_common(&self.chunks, &other.chunks, |c| sum += u64::from(c.byte_len));
        sum
    }

    /// Lines shared by the two line multisets.
    pub fn common_lines(&self, other: &Fingerprint) -> u64 {
        let mut n = 0u64;
        merge_common(&self.lines, &other.lines, |_| n += 1);
        n
    }
}

fn merge_common<T: Ord>(a: &[T], b: &[T], mut hit: impl FnMut(&T)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                hit(&a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}
