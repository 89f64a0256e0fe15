//! Rendering declarations into per-declaration files.

pub mod categorize;
pub mod category;
pub mod elide;
pub mod render;

pub use categorize::{categorize, categorize_field, categorize_method, AnnotatedToken, Context};
pub use category::{BracketTag, Category, ParenTag, SemicolonTag, TokenClass};
pub use elide::elide;
pub use render::{
    reconstruct, render, render_field, render_fragment, render_method, strip_tags, Decl, LineFormat, RenderConfig,
    RenderedFile,
};
