//! Method and field extraction.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::lexer::{lex_full, CommentKind, LexError, Lexed, Token};
use super::structure::{Member, MethodHeader, ParseError, Structure, TypeKind};

/// A method or constructor pulled out of a compilation unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDecl {
    /// Enclosing type names, outermost first. Anonymous classes appear as `$<k>`.
    pub class_chain: Vec<String>,
    /// Modifier keywords in declaration order; annotations excluded.
    pub modifiers: Vec<String>,
    pub type_params: Option<String>,
    /// Empty for constructors.
    pub return_type: String,
    pub name: String,
    pub param_types: Vec<String>,
    /// Signature tokens (annotations included) followed by body tokens.
    pub body_tokens: Vec<Token>,
    /// Verbatim Javadoc, delimiters included.
    pub javadoc: Option<String>,
    pub is_abstract: bool,
    /// Indices into `body_tokens` of the parameter-list parens.
    pub params_parens: Option<(usize, usize)>,
    /// Indices into `body_tokens` of the outermost body braces.
    pub body_braces: Option<(usize, usize)>,
    /// Original source lines of the declaration, comments removed.
    pub plain_text: String,
}

impl MethodDecl {
    pub fn is_constructor(&self) -> bool {
        self.return_type.is_empty() && self.class_chain.last() == Some(&self.name)
    }
}

/// One declared field variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDecl {
    pub class_chain: Vec<String>,
    pub modifiers: Vec<String>,
    pub field_type: String,
    pub name: String,
    /// Annotations, modifiers and type, then this variable's declarator
    /// (initializer included) and the terminating `;`.
    pub decl_tokens: Vec<Token>,
    pub javadoc: Option<String>,
    pub plain_text: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub methods: Vec<MethodDecl>,
    pub fields: Vec<FieldDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Extract every method, constructor and field declared in `source`.
pub fn extract(source: &[u8]) -> Result<Extraction, ExtractError> {
    let lexed = lex_full(source)?;
    let text = std::str::from_utf8(source).expect("lexer validated UTF-8");
    let structure = Structure::new(&lexed.tokens)?;
    let mut ex = Extractor {
        src: text,
        lexed: &lexed,
        s: &structure,
        anonymous: 0,
        out: Extraction::default(),
    };
    ex.compilation_unit();
    Ok(ex.out)
}

struct Extractor<'a> {
    src: &'a str,
    lexed: &'a Lexed,
    s: &'a Structure<'a>,
    anonymous: usize,
    out: Extraction,
}

impl Extractor<'_> {
    fn compilation_unit(&mut self) {
        let n = self.s.len();
        let mut i = 0;
        while i < n {
            match self.s.text(i) {
                "package" | "import" => {
                    i = self.s.find_at_depth0(i, n, &[";"]).map_or(n, |j| j + 1);
                    continue;
                }
                ";" => {
                    i += 1;
                    continue;
                }
                _ => {}
            }
            let (p, _) = self.s.modifiers(i, n);
            if let Some(h) = self.s.type_header(p, n) {
                let name = self.s.text(h.name).to_string();
                self.class_body(h.open, h.close, &[name], h.kind, h.record_params);
                i = h.close + 1;
            } else if self.s.is(p, "{") {
                i = self.s.partner(p) + 1;
            } else {
                i = p.max(i + 1);
            }
        }
    }

    fn class_body(
        &mut self,
        open: usize,
        close: usize,
        chain: &[String],
        kind: TypeKind,
        record_params: Option<(usize, usize)>,
    ) {
        let s = self.s;
        let class_name = chain.last().cloned().unwrap_or_default();
        let mut i = open + 1;
        if kind == TypeKind::Enum {
            i = self.enum_constants(i, close, chain);
        }
        while i < close {
            let member = s.member(i, close, &class_name);
            match &member {
                Member::Method(m) => {
                    self.method(m, chain, record_params);
                    if let Some((o, c)) = m.body {
                        self.scan_nested(o + 1, c, chain);
                    }
                }
                Member::Field(f) => {
                    let field_type = s.type_text(f.type_range.clone());
                    let javadoc = self.javadoc(f.start);
                    let prefix: Vec<Token> = s.toks[f.start..f.type_range.end].to_vec();
                    let single = f.declarators.len() == 1;
                    for d in &f.declarators {
                        let mut decl_tokens = prefix.clone();
                        decl_tokens.extend_from_slice(&s.toks[d.name..d.terminator]);
                        decl_tokens.push(s.toks[f.semi].clone());
                        let plain_text = if single {
                            self.plain(f.start, f.semi)
                        } else {
                            let head = self.plain(f.start, f.type_range.end - 1);
                            let decl = self.plain(d.name, d.terminator - 1);
                            format!("{} {};\n", head.trim_end(), decl.trim())
                        };
                        self.out.fields.push(FieldDecl {
                            class_chain: chain.to_vec(),
                            modifiers: f.modifiers.clone(),
                            field_type: format!("{field_type}{}", "[]".repeat(d.dims.len() / 2)),
                            name: s.text(d.name).to_string(),
                            decl_tokens,
                            javadoc: javadoc.clone(),
                            plain_text,
                        });
                    }
                    for d in &f.declarators {
                        if let Some(init) = &d.init {
                            self.scan_nested(init.start, init.end, chain);
                        }
                    }
                }
                Member::Type { header, .. } => {
                    let mut inner = chain.to_vec();
                    inner.push(s.text(header.name).to_string());
                    self.class_body(
                        header.open,
                        header.close,
                        &inner,
                        header.kind,
                        header.record_params,
                    );
                }
                Member::Initializer { open, close, .. } => {
                    self.scan_nested(open + 1, *close, chain);
                }
                Member::Empty(_) | Member::Unknown { .. } => {}
            }
            i = member.next().max(i + 1);
        }
    }

    /// Enum constants up to the terminating `;` (or the closing brace).
    fn enum_constants(&mut self, mut i: usize, close: usize, chain: &[String]) -> usize {
        let s = self.s;
        while i < close {
            while let Some(j) = s.skip_annotation(i) {
                i = j;
            }
            if !s.is_ident(i) {
                break;
            }
            i += 1;
            if s.is(i, "(") {
                let c = s.partner(i);
                self.scan_nested(i + 1, c, chain);
                i = c + 1;
            }
            if s.is(i, "{") {
                let c = s.partner(i);
                self.anonymous_body(i, c, chain);
                i = c + 1;
            }
            if s.is(i, ",") {
                i += 1;
            } else {
                break;
            }
        }
        if s.is(i, ";") {
            i += 1;
        }
        i
    }

    fn anonymous_body(&mut self, open: usize, close: usize, chain: &[String]) {
        self.anonymous += 1;
        let mut inner = chain.to_vec();
        inner.push(format!("${}", self.anonymous));
        self.class_body(open, close, &inner, TypeKind::Class, None);
    }

    /// Find local and anonymous classes inside a code region.
    fn scan_nested(&mut self, start: usize, end: usize, chain: &[String]) {
        let s = self.s;
        let mut anon_bodies: Vec<usize> = Vec::new();
        let mut i = start;
        while i < end {
            let t = s.text(i);
            if t == "{" && anon_bodies.last() == Some(&i) {
                anon_bodies.pop();
                let c = s.partner(i);
                self.anonymous_body(i, c, chain);
                i = c + 1;
                continue;
            }
            if t == "new" {
                if let Some(body) = self.anonymous_after_new(i, end) {
                    anon_bodies.push(body);
                }
                i += 1;
                continue;
            }
            let after_dot = i > 0 && s.is(i - 1, ".");
            if !after_dot && matches!(t, "class" | "interface" | "enum" | "record") {
                if let Some(h) = s.type_header(i, end) {
                    let mut inner = chain.to_vec();
                    inner.push(s.text(h.name).to_string());
                    self.class_body(h.open, h.close, &inner, h.kind, h.record_params);
                    i = h.close + 1;
                    continue;
                }
            }
            i += 1;
        }
    }

    /// For `new T(...) {`, the index of the `{` opening the anonymous body.
    fn anonymous_after_new(&self, new_at: usize, end: usize) -> Option<usize> {
        let s = self.s;
        let mut j = new_at + 1;
        while let Some(k) = s.skip_annotation(j) {
            j = k;
        }
        loop {
            if !s.is_ident(j) {
                return None;
            }
            j += 1;
            if s.is(j, "<") {
                j = s.generic_end(j)?;
            }
            if s.is(j, ".") {
                j += 1;
                continue;
            }
            break;
        }
        if !s.is(j, "(") {
            return None;
        }
        let c = s.partner(j);
        (c + 1 < end && s.is(c + 1, "{")).then_some(c + 1)
    }

    fn method(&mut self, m: &MethodHeader, chain: &[String], record_params: Option<(usize, usize)>) {
        let s = self.s;
        let name = s.text(m.name).to_string();
        let mut return_type = s.type_text(m.return_type.clone());
        return_type.push_str(&"[]".repeat(m.trailing_dims.len() / 2));
        let param_types = match (m.params, record_params) {
            (Some((o, c)), _) => s.param_types(o, c),
            // Compact canonical constructor: the record components.
            (None, Some((o, c))) => s.param_types(o, c),
            (None, None) => Vec::new(),
        };
        let type_params = m
            .type_params
            .as_ref()
            .map(|r| self.src[s.toks[r.start].offset..s.toks[r.end - 1].span().end].to_string());
        let rel = |i: usize| i - m.start;
        self.out.methods.push(MethodDecl {
            class_chain: chain.to_vec(),
            modifiers: m.modifiers.clone(),
            type_params,
            return_type,
            name,
            param_types,
            body_tokens: s.toks[m.start..=m.end].to_vec(),
            javadoc: self.javadoc(m.start),
            is_abstract: m.body.is_none(),
            params_parens: m.params.map(|(o, c)| (rel(o), rel(c))),
            body_braces: m.body.map(|(o, c)| (rel(o), rel(c))),
            plain_text: self.plain(m.start, m.end),
        });
    }

    fn javadoc(&self, token_index: usize) -> Option<String> {
        self.lexed
            .javadoc_before(token_index)
            .map(|c| self.src[c.span.clone()].to_string())
    }

    /// Original source lines spanning tokens `first..=last`, comments removed.
    fn plain(&self, first: usize, last: usize) -> String {
        let toks = &self.lexed.tokens;
        let start = toks[first].offset;
        let end = toks[last].span().end;
        let line_start = self.src[..start].rfind('\n').map_or(0, |p| p + 1);
        let indent = &self.src[line_start..start];
        let lead = if indent.chars().all(|c| c == ' ' || c == '\t') {
            indent
        } else {
            ""
        };
        let comments: Vec<Range<usize>> = self
            .lexed
            .comments
            .iter()
            .filter(|c| c.span.start >= start && c.span.end <= end)
            .filter(|c| matches!(c.kind, CommentKind::Line | CommentKind::Block | CommentKind::Javadoc))
            .map(|c| c.span.clone())
            .collect();
        plain_lines(self.src, lead, start..end, &comments)
    }
}

fn plain_lines(src: &str, lead: &str, span: Range<usize>, comments: &[Range<usize>]) -> String {
    let mut out = String::new();
    let mut line = String::from(lead);
    let mut had_comment = false;
    let mut pos = span.start;
    let mut ci = 0;
    let flush = |line: &mut String, had_comment: &mut bool, out: &mut String| {
        let trimmed = line.trim_end_matches([' ', '\t', '\r']);
        if !(*had_comment && trimmed.trim().is_empty()) {
            out.push_str(trimmed);
            out.push('\n');
        }
        line.clear();
        *had_comment = false;
    };
    while pos < span.end {
        if ci < comments.len() && comments[ci].start == pos {
            let c = &comments[ci];
            // Keep the newlines a block comment swallows so line structure holds.
            for _ in src[c.clone()].matches('\n') {
                had_comment = true;
                flush(&mut line, &mut had_comment, &mut out);
            }
            had_comment = true;
            pos = c.end;
            ci += 1;
            continue;
        }
        let ch = src[pos..].chars().next().expect("in bounds");
        if ch == '\n' {
            flush(&mut line, &mut had_comment, &mut out);
        } else {
            line.push(ch);
        }
        pos += ch.len_utf8();
    }
    flush(&mut line, &mut had_comment, &mut out);
    out
}
