//! Byte-exact file content for method and field files.
//!
//! Token lines are the token text; a terminator line under Heuristic-1 is
//! `<text> <TAG>`. Every line ends with LF.

use serde::{Deserialize, Serialize};

use super::categorize::{categorize, categorize_field, categorize_method, AnnotatedToken, Context};
use super::category::{is_terminator, BracketTag, ParenTag, SemicolonTag};
use super::elide::{elide, elided_indices};
use crate::java::{lex, FieldDecl, LexError, MethodDecl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LineFormat {
    TokenPerLine,
    /// Original source lines of the declaration.
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RenderConfig {
    pub line_format: LineFormat,
    pub heuristic1: bool,
    pub heuristic2: bool,
    pub include_javadoc: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            line_format: LineFormat::TokenPerLine,
            heuristic1: true,
            heuristic2: true,
            include_javadoc: true,
        }
    }
}

impl RenderConfig {
    pub fn plain() -> Self {
        RenderConfig {
            line_format: LineFormat::Plain,
            ..Default::default()
        }
    }

    pub fn tokens(heuristic1: bool, heuristic2: bool) -> Self {
        RenderConfig {
            heuristic1,
            heuristic2,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RenderedFile {
    pub relative_path: String,
    pub content: Vec<u8>,
}

#[derive(Debug, Clone, Copy)]
pub enum Decl<'a> {
    Method(&'a MethodDecl),
    Field(&'a FieldDecl),
}

pub fn render(decl: Decl<'_>, config: &RenderConfig) -> Vec<u8> {
    match decl {
        Decl::Method(m) => render_method(m, config),
        Decl::Field(f) => render_field(f, config),
    }
}

pub fn render_method(decl: &MethodDecl, config: &RenderConfig) -> Vec<u8> {
    let mut out = header(decl.javadoc.as_deref(), config);
    if config.line_format == LineFormat::Plain {
        out.extend_from_slice(decl.plain_text.as_bytes());
        return out;
    }
    let mut toks = categorize_method(decl);
    if config.heuristic2 {
        toks = elide(toks, decl);
    }
    write_tokens(&mut out, &toks, config.heuristic1);
    out
}

pub fn render_field(decl: &FieldDecl, config: &RenderConfig) -> Vec<u8> {
    let mut out = header(decl.javadoc.as_deref(), config);
    if config.line_format == LineFormat::Plain {
        out.extend_from_slice(decl.plain_text.as_bytes());
        return out;
    }
    let toks = categorize_field(decl);
    write_tokens(&mut out, &toks, config.heuristic1);
    out
}

/// Render a run of block statements outside any declaration.
///
/// Heuristic-2 does not apply; PLAIN keeps the lines with trailing
/// whitespace trimmed.
pub fn render_fragment(source: &str, config: &RenderConfig) -> Result<Vec<u8>, LexError> {
    let mut out = Vec::new();
    if config.line_format == LineFormat::Plain {
        for line in source.lines() {
            let line = line.trim_end();
            if !line.is_empty() {
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
            }
        }
        return Ok(out);
    }
    let toks = lex(source.as_bytes())?;
    let annotated = categorize(&toks, Context::Statements);
    write_tokens(&mut out, &annotated, config.heuristic1);
    Ok(out)
}

fn header(javadoc: Option<&str>, config: &RenderConfig) -> Vec<u8> {
    let mut out = Vec::new();
    if let Some(doc) = javadoc.filter(|_| config.include_javadoc) {
        out.extend_from_slice(doc.as_bytes());
        out.push(b'\n');
    }
    out
}

fn write_tokens(out: &mut Vec<u8>, toks: &[AnnotatedToken], tagged: bool) {
    for t in toks {
        out.extend_from_slice(t.token.text.as_bytes());
        if tagged {
            if let Some(c) = t.category {
                out.push(b' ');
                out.extend_from_slice(c.tag().as_bytes());
            }
        }
        out.push(b'\n');
    }
}

fn is_tag(name: &str) -> bool {
    SemicolonTag::from_name(name).is_some()
        || BracketTag::from_name(name).is_some()
        || ParenTag::from_name(name).is_some()
}

/// Remove Heuristic-1 tags, leaving the bare token lines.
pub fn strip_tags(content: &str) -> String {
    let mut out = String::with_capacity(content.len());
    for line in content.split_inclusive('\n') {
        let body = line.strip_suffix('\n').unwrap_or(line);
        match body.split_once(' ') {
            Some((tok, tag)) if is_terminator(tok) && is_tag(tag) => {
                out.push_str(tok);
                if line.ends_with('\n') {
                    out.push('\n');
                }
            }
            _ => out.push_str(line),
        }
    }
    out
}

/// Recover the declaration's token texts from a rendered method file:
/// strip tags, re-lex (which also drops the Javadoc header) and put back
/// the elided parens and braces.
pub fn reconstruct(content: &[u8], decl: &MethodDecl, config: &RenderConfig) -> Result<Vec<String>, LexError> {
    let text = String::from_utf8_lossy(content);
    let stripped = strip_tags(&text);
    let mut toks: Vec<String> = lex(stripped.as_bytes())?.into_iter().map(|t| t.text).collect();
    if config.heuristic2 {
        for i in elided_indices(decl) {
            let text = decl.body_tokens[i].text.clone();
            toks.insert(i.min(toks.len()), text);
        }
    }
    Ok(toks)
}
