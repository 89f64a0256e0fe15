//! Method-level conversion of Java Git repositories and Git-compatible
//! rename tracking over the converted files.
//!
//! The pipeline: [`java`] lexes and extracts declarations, [`emit`] renders
//! each one as a token-per-line file, [`naming`] picks its file name,
//! [`rewrite`] replays a whole history with converted trees, [`track`]
//! follows a file across renames and copies, and [`eval`] scores tracking
//! against an oracle.

pub mod emit;
pub mod eval;
pub mod java;
pub mod naming;
pub mod rewrite;
pub mod synth;
pub mod track;

pub use emit::{render, render_field, render_method, Decl, LineFormat, RenderConfig, RenderedFile};
pub use eval::{compare_modes, evaluate, CompareReport, EvalMetrics, EvalReport, OracleEntry, Ratio};
pub use java::{extract, lex, FieldDecl, MethodDecl, Token, TokenKind};
pub use naming::{field_file_name, method_file_name, shorten, NamePolicy};
pub use rewrite::{convert_file_set, convert_java_source, rewrite_history, ConversionConfig, ConversionStats};
pub use track::{
    count_renames, follow, similarity, Fingerprint, Metric, SimilarityScore, StartPoint, StepKind, TrackStep,
    TrackerConfig,
};
