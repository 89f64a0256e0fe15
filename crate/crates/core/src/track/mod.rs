//! Git-compatible similarity scoring and path following.

pub mod fingerprint;
pub mod follow;
pub mod similarity;

pub use fingerprint::{Chunk, Fingerprint};
pub use follow::{
    count_renames, follow, write_tsv, StartPoint, StepKind, TrackError, TrackStep, Tracker, TrackerConfig,
};
pub use similarity::{similarity, similarity_of, Metric, SimilarityScore};
