//! Lightweight structural recognition over a Java token stream.
//!
//! Nothing here builds an AST. The helpers only find declaration boundaries:
//! matched brackets, annotation and modifier runs, generic argument lists, and
//! the shape of a class-body member (type, method, field, initializer).

use std::ops::Range;

use thiserror::Error;

use super::lexer::{Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unbalanced {found:?} at {line}:{column}")]
pub struct ParseError {
    pub found: String,
    pub line: u32,
    pub column: u32,
}

impl ParseError {
    fn at(tok: &Token) -> Self {
        ParseError {
            found: tok.text.clone(),
            line: tok.line,
            column: tok.column,
        }
    }
}

const NO_MATCH: usize = usize::MAX;

/// Token slice plus its bracket matching table.
pub struct Structure<'t> {
    pub toks: &'t [Token],
    matching: Vec<usize>,
}

pub const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

pub fn is_primitive(text: &str) -> bool {
    PRIMITIVES.contains(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Record,
    Annotation,
}

#[derive(Debug, Clone)]
pub struct TypeHeader {
    pub kind: TypeKind,
    /// Index of the `class`/`interface`/`enum`/`record` word.
    pub keyword: usize,
    pub name: usize,
    /// Record header parens, if any.
    pub record_params: Option<(usize, usize)>,
    pub open: usize,
    pub close: usize,
}

#[derive(Debug, Clone)]
pub struct MethodHeader {
    pub start: usize,
    pub modifiers: Vec<String>,
    pub type_params: Option<Range<usize>>,
    pub return_type: Range<usize>,
    pub name: usize,
    /// `None` only for compact record constructors.
    pub params: Option<(usize, usize)>,
    /// Array dimensions written after the parameter list (`int f()[]`).
    pub trailing_dims: Range<usize>,
    pub body: Option<(usize, usize)>,
    /// Annotation element default value (`default <expr>`).
    pub default_value: Option<Range<usize>>,
    /// Inclusive index of the last token.
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct Declarator {
    pub name: usize,
    pub dims: Range<usize>,
    pub init: Option<Range<usize>>,
    /// Index of the `,` or `;` ending this declarator.
    pub terminator: usize,
}

#[derive(Debug, Clone)]
pub struct FieldHeader {
    pub start: usize,
    pub modifiers: Vec<String>,
    pub type_range: Range<usize>,
    pub declarators: Vec<Declarator>,
    pub semi: usize,
}

#[derive(Debug, Clone)]
pub enum Member {
    Empty(usize),
    Initializer {
        is_static: bool,
        open: usize,
        close: usize,
    },
    Type {
        start: usize,
        header: TypeHeader,
    },
    Method(MethodHeader),
    Field(FieldHeader),
    /// Something we could not classify; resume scanning at `next`.
    Unknown { next: usize },
}

impl Member {
    /// Index just past this member.
    pub fn next(&self) -> usize {
        match self {
            Member::Empty(i) => i + 1,
            Member::Initializer { close, .. } => close + 1,
            Member::Type { header, .. } => header.close + 1,
            Member::Method(m) => m.end + 1,
            Member::Field(f) => f.semi + 1,
            Member::Unknown { next } => *next,
        }
    }
}

impl<'t> Structure<'t> {
    pub fn new(toks: &'t [Token]) -> Result<Self, ParseError> {
        let mut matching = vec![NO_MATCH; toks.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (i, t) in toks.iter().enumerate() {
            if t.kind != TokenKind::Separator {
                continue;
            }
            match t.text.as_str() {
                "(" | "[" | "{" => stack.push(i),
                ")" | "]" | "}" => {
                    let open = stack.pop().ok_or_else(|| ParseError::at(t))?;
                    let expected = match t.text.as_str() {
                        ")" => "(",
                        "]" => "[",
                        _ => "{",
                    };
                    if toks[open].text != expected {
                        return Err(ParseError::at(t));
                    }
                    matching[open] = i;
                    matching[i] = open;
                }
                _ => {}
            }
        }
        if let Some(open) = stack.pop() {
            return Err(ParseError::at(&toks[open]));
        }
        Ok(Structure { toks, matching })
    }

    pub fn len(&self) -> usize {
        self.toks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.toks.is_empty()
    }

    pub fn text(&self, i: usize) -> &str {
        self.toks.get(i).map_or("", |t| t.text.as_str())
    }

    pub fn is(&self, i: usize, text: &str) -> bool {
        self.toks.get(i).is_some_and(|t| t.text == text)
    }

    pub fn is_ident(&self, i: usize) -> bool {
        self.toks.get(i).is_some_and(|t| t.kind == TokenKind::Identifier)
    }

    pub fn kind(&self, i: usize) -> Option<TokenKind> {
        self.toks.get(i).map(|t| t.kind)
    }

    /// Matching bracket of the bracket at `i`.
    pub fn partner(&self, i: usize) -> usize {
        let m = self.matching[i];
        debug_assert!(m != NO_MATCH, "token {i} is not a bracket");
        m
    }

    pub fn is_bracket(&self, i: usize) -> bool {
        self.matching.get(i).is_some_and(|&m| m != NO_MATCH)
    }

    /// Skip one annotation starting at `i` (`@Name`, `@a.b.Name(...)`).
    pub fn skip_annotation(&self, i: usize) -> Option<usize> {
        if !self.is(i, "@") || !self.is_ident(i + 1) {
            return None;
        }
        let mut j = i + 2;
        while self.is(j, ".") && self.is_ident(j + 1) {
            j += 2;
        }
        if self.is(j, "(") {
            j = self.partner(j) + 1;
        }
        Some(j)
    }

    /// If `i` opens a generic argument/parameter list, the index after its
    /// closing `>`. Only type-like tokens are accepted inside.
    pub fn generic_end(&self, i: usize) -> Option<usize> {
        if !self.is(i, "<") {
            return None;
        }
        let mut depth: i32 = 0;
        let mut j = i;
        while j < self.len() {
            let t = &self.toks[j];
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                "," | "." | "?" | "&" | "extends" | "super" => {}
                "[" => {
                    if !self.is(j + 1, "]") {
                        return None;
                    }
                    j += 1;
                }
                "@" => {
                    j = self.skip_annotation(j)?;
                    continue;
                }
                _ if t.kind == TokenKind::Identifier => {}
                _ if is_primitive(&t.text) => {}
                _ => return None,
            }
            if depth < 0 {
                return None;
            }
            if depth == 0 {
                return Some(j + 1);
            }
            j += 1;
        }
        None
    }

    /// Collect annotations and modifier keywords starting at `i`.
    ///
    /// Returns the index of the first token after them and the modifier words
    /// in declaration order (annotations are skipped, not listed).
    pub fn modifiers(&self, mut i: usize, end: usize) -> (usize, Vec<String>) {
        let mut mods = Vec::new();
        while i < end {
            if self.is(i, "@") && !self.is(i + 1, "interface") {
                match self.skip_annotation(i) {
                    Some(j) => {
                        i = j;
                        continue;
                    }
                    None => break,
                }
            }
            let t = self.text(i);
            if MODIFIERS.contains(&t) {
                // `default:` / `default ->` are switch labels, not modifiers.
                if t == "default" && (self.is(i + 1, ":") || self.is(i + 1, "->")) {
                    break;
                }
                mods.push(t.to_string());
                i += 1;
            } else if t == "sealed" && self.is_ident(i) && self.starts_declaration_word(i + 1) {
                mods.push("sealed".into());
                i += 1;
            } else if t == "non"
                && self.is(i + 1, "-")
                && self.is(i + 2, "sealed")
                && self.starts_declaration_word(i + 3)
            {
                mods.push("non-sealed".into());
                i += 3;
            } else {
                break;
            }
        }
        (i, mods)
    }

    fn starts_declaration_word(&self, i: usize) -> bool {
        let t = self.text(i);
        MODIFIERS.contains(&t)
            || matches!(t, "class" | "interface" | "sealed" | "non" | "@" | "record" | "enum")
    }

    /// If a type declaration starts at `i` (after modifiers), describe it.
    pub fn type_header(&self, i: usize, end: usize) -> Option<TypeHeader> {
        let (kind, keyword) = match self.text(i) {
            "class" => (TypeKind::Class, i),
            "interface" => (TypeKind::Interface, i),
            "enum" => (TypeKind::Enum, i),
            "@" if self.is(i + 1, "interface") => (TypeKind::Annotation, i + 1),
            "record"
                if self.is_ident(i)
                    && self.is_ident(i + 1)
                    && (self.is(i + 2, "(") || self.is(i + 2, "<")) =>
            {
                (TypeKind::Record, i)
            }
            _ => return None,
        };
        let name = keyword + 1;
        if !self.is_ident(name) {
            return None;
        }
        let mut record_params = None;
        let mut j = name + 1;
        while j < end {
            match self.text(j) {
                "{" => {
                    return Some(TypeHeader {
                        kind,
                        keyword,
                        name,
                        record_params,
                        open: j,
                        close: self.partner(j),
                    });
                }
                "(" => {
                    if kind == TypeKind::Record && record_params.is_none() {
                        record_params = Some((j, self.partner(j)));
                    }
                    j = self.partner(j) + 1;
                }
                "[" => j = self.partner(j) + 1,
                ";" | "}" => return None,
                _ => j += 1,
            }
        }
        None
    }

    /// First index in `[i, end)` holding one of `stops` at bracket depth zero.
    ///
    /// Brackets are jumped over; `<...>` is treated as a generic list only
    /// where an expression can carry explicit type arguments (after `new`
    /// and after `.`), so relational operators are not mistaken for it.
    pub fn find_at_depth0(&self, mut i: usize, end: usize, stops: &[&str]) -> Option<usize> {
        while i < end {
            let t = self.text(i);
            if stops.contains(&t) {
                return Some(i);
            }
            if self.is_bracket(i) && matches!(t, "(" | "[" | "{") {
                i = self.partner(i) + 1;
                continue;
            }
            if t == "<" && self.generic_context(i) {
                if let Some(e) = self.generic_end(i) {
                    i = e;
                    continue;
                }
            }
            i += 1;
        }
        None
    }

    fn generic_context(&self, i: usize) -> bool {
        if i == 0 {
            return false;
        }
        if self.is(i - 1, ".") {
            return true;
        }
        // Walk back over a qualified name to see whether `new` precedes it.
        let mut j = i - 1;
        while self.is_ident(j) {
            if j == 0 {
                return false;
            }
            if self.is(j - 1, ".") && j >= 2 {
                j -= 2;
                continue;
            }
            return self.is(j - 1, "new");
        }
        false
    }

    /// Recognize the class-body member starting at `i`.
    ///
    /// `class_name` is the innermost enclosing type's simple name, used to spot
    /// compact record constructors.
    pub fn member(&self, i: usize, end: usize, class_name: &str) -> Member {
        if self.is(i, ";") {
            return Member::Empty(i);
        }
        let (p, modifiers) = self.modifiers(i, end);
        if p >= end {
            return Member::Unknown { next: end };
        }
        if self.is(p, "{") {
            return Member::Initializer {
                is_static: modifiers.iter().any(|m| m == "static"),
                open: p,
                close: self.partner(p),
            };
        }
        if let Some(header) = self.type_header(p, end) {
            return Member::Type { start: i, header };
        }
        let mut q = p;
        let mut type_params = None;
        if self.is(q, "<") {
            match self.generic_end(q) {
                Some(e) => {
                    type_params = Some(q..e);
                    q = e;
                }
                None => return Member::Unknown { next: p + 1 },
            }
        }
        let mut j = q;
        while j < end {
            let t = self.text(j);
            match t {
                "(" => {
                    if j == q || !self.is_ident(j - 1) {
                        return self.unknown_from(j, end);
                    }
                    return self.method(i, modifiers, type_params, q, j - 1, Some(j), end);
                }
                "{" => {
                    if j == q + 1 && self.is(q, class_name) && self.is_ident(q) {
                        return self.method(i, modifiers, type_params, q, q, None, end);
                    }
                    return self.unknown_from(j, end);
                }
                "=" | ";" | "," => {
                    return match self.field(i, modifiers, q, j, end) {
                        Some(f) => Member::Field(f),
                        None => self.unknown_from(j, end),
                    };
                }
                "<" => match self.generic_end(j) {
                    Some(e) => j = e,
                    None => return self.unknown_from(j, end),
                },
                "[" => j = self.partner(j) + 1,
                "@" => j = self.skip_annotation(j).unwrap_or(j + 1),
                ")" | "]" | "}" => return Member::Unknown { next: j + 1 },
                _ => j += 1,
            }
        }
        Member::Unknown { next: end }
    }

    fn unknown_from(&self, j: usize, end: usize) -> Member {
        // Skip to the end of whatever this is: a `;` or a brace block.
        let mut k = j;
        while k < end {
            match self.text(k) {
                ";" => return Member::Unknown { next: k + 1 },
                "{" => return Member::Unknown { next: self.partner(k) + 1 },
                "(" | "[" => k = self.partner(k) + 1,
                _ => k += 1,
            }
        }
        Member::Unknown { next: end }
    }

    #[allow(clippy::too_many_arguments)]
    fn method(
        &self,
        start: usize,
        modifiers: Vec<String>,
        type_params: Option<Range<usize>>,
        ret_start: usize,
        name: usize,
        params: Option<usize>,
        end: usize,
    ) -> Member {
        let params = params.map(|open| (open, self.partner(open)));
        let mut k = match params {
            Some((_, close)) => close + 1,
            None => name + 1,
        };
        let dims_start = k;
        while self.is(k, "[") && self.is(k + 1, "]") {
            k += 2;
        }
        let trailing_dims = dims_start..k;
        while k < end {
            match self.text(k) {
                "{" => {
                    let close = self.partner(k);
                    return Member::Method(MethodHeader {
                        start,
                        modifiers,
                        type_params,
                        return_type: ret_start..name,
                        name,
                        params,
                        trailing_dims,
                        body: Some((k, close)),
                        default_value: None,
                        end: close,
                    });
                }
                ";" => {
                    return Member::Method(MethodHeader {
                        start,
                        modifiers,
                        type_params,
                        return_type: ret_start..name,
                        name,
                        params,
                        trailing_dims,
                        body: None,
                        default_value: None,
                        end: k,
                    });
                }
                "default" => {
                    let Some(semi) = self.find_at_depth0(k + 1, end, &[";"]) else {
                        return Member::Unknown { next: end };
                    };
                    return Member::Method(MethodHeader {
                        start,
                        modifiers,
                        type_params,
                        return_type: ret_start..name,
                        name,
                        params,
                        trailing_dims,
                        body: None,
                        default_value: Some(k + 1..semi),
                        end: semi,
                    });
                }
                "(" | "[" => k = self.partner(k) + 1,
                "}" | ")" | "]" | "=" => return Member::Unknown { next: k + 1 },
                _ => k += 1,
            }
        }
        Member::Unknown { next: end }
    }

    fn field(
        &self,
        start: usize,
        modifiers: Vec<String>,
        type_start: usize,
        first_stop: usize,
        end: usize,
    ) -> Option<FieldHeader> {
        // The first declarator's name sits right before `first_stop`, after
        // any `[]` pairs.
        let mut n = first_stop.checked_sub(1)?;
        while self.is(n, "]") {
            n = self.partner(n).checked_sub(1)?;
        }
        if n <= type_start || !self.is_ident(n) {
            return None;
        }
        let type_range = type_start..n;
        let mut declarators = Vec::new();
        let mut name = n;
        loop {
            if !self.is_ident(name) {
                return None;
            }
            let mut d = name + 1;
            while self.is(d, "[") && self.is(d + 1, "]") {
                d += 2;
            }
            let dims = name + 1..d;
            let (init, terminator) = if self.is(d, "=") {
                let t = self.find_at_depth0(d + 1, end, &[",", ";"])?;
                (Some(d + 1..t), t)
            } else if self.is(d, ",") || self.is(d, ";") {
                (None, d)
            } else {
                return None;
            };
            declarators.push(Declarator {
                name,
                dims,
                init,
                terminator,
            });
            if self.is(terminator, ";") {
                return Some(FieldHeader {
                    start,
                    modifiers,
                    type_range,
                    declarators,
                    semi: terminator,
                });
            }
            name = terminator + 1;
        }
    }

    /// Split `[start, end)` at depth-zero commas, honoring generic lists.
    pub fn split_commas(&self, start: usize, end: usize) -> Vec<Range<usize>> {
        let mut parts = Vec::new();
        let mut s = start;
        let mut i = start;
        while i < end {
            match self.text(i) {
                "," => {
                    parts.push(s..i);
                    s = i + 1;
                    i += 1;
                }
                "(" | "[" | "{" => i = self.partner(i) + 1,
                "<" => i = self.generic_end(i).unwrap_or(i + 1),
                "@" => i = self.skip_annotation(i).unwrap_or(i + 1),
                _ => i += 1,
            }
        }
        if s < end {
            parts.push(s..end);
        }
        parts
    }

    /// Concatenate token texts in `range`, dropping annotations.
    pub fn type_text(&self, range: Range<usize>) -> String {
        let mut out = String::new();
        let mut i = range.start;
        while i < range.end {
            if self.is(i, "@") {
                if let Some(j) = self.skip_annotation(i) {
                    i = j;
                    continue;
                }
            }
            out.push_str(self.text(i));
            i += 1;
        }
        out
    }

    /// Parameter types of a formal parameter list, names erased.
    pub fn param_types(&self, open: usize, close: usize) -> Vec<String> {
        let mut out = Vec::new();
        for part in self.split_commas(open + 1, close) {
            let mut s = part.start;
            // Leading annotations and `final`.
            loop {
                if self.is(s, "final") {
                    s += 1;
                } else if self.is(s, "@") {
                    match self.skip_annotation(s) {
                        Some(j) => s = j,
                        None => break,
                    }
                } else {
                    break;
                }
            }
            let mut n = part.end;
            let mut trailing = String::new();
            while n > s && self.is(n - 1, "]") {
                trailing.push_str("[]");
                n = self.partner(n - 1);
            }
            if n <= s + 1 {
                // Lambda-style or malformed; keep whatever is there.
                out.push(self.type_text(s..part.end));
                continue;
            }
            let name = n - 1;
            if self.is(name, "this") {
                continue;
            }
            out.push(self.type_text(s..name) + &trailing);
        }
        out
    }
}
