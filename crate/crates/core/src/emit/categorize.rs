//! Assign a syntactic role to every terminator token.
//!
//! A second, role-oriented walk over the same structure the extractor uses.
//! Each `;`, brace pair and paren pair receives the category of the innermost
//! construct it delimits.

use serde::{Deserialize, Serialize};

use super::category::{BracketTag as B, Category, ParenTag as P, SemicolonTag as S};
use crate::java::lexer::{Token, TokenKind};
use crate::java::structure::{is_primitive, Member, Structure, TypeHeader, TypeKind};
use crate::java::{FieldDecl, MethodDecl};

/// A token with its terminator category, if it is a terminator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedToken {
    pub token: Token,
    pub category: Option<Category>,
}

/// What a token run represents, so the walk knows where to start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Context<'a> {
    /// One class-body member (method, constructor or field) of the named type.
    Member { class_name: &'a str },
    /// A run of block statements.
    Statements,
}

/// Categorize every terminator in `tokens`.
///
/// Unbalanced input degrades to generic categories instead of failing.
pub fn categorize(tokens: &[Token], context: Context<'_>) -> Vec<AnnotatedToken> {
    let tags = match Structure::new(tokens) {
        Ok(s) => {
            let mut walk = Walk {
                tags: vec![None; tokens.len()],
                s,
            };
            let n = tokens.len();
            match context {
                Context::Member { class_name } => {
                    let mut i = 0;
                    while i < n {
                        i = walk.member(i, n, class_name).max(i + 1);
                    }
                }
                Context::Statements => walk.statements(0, n),
            }
            walk.tags
        }
        Err(_) => vec![None; tokens.len()],
    };
    tokens
        .iter()
        .zip(tags)
        .map(|(t, tag)| AnnotatedToken {
            token: t.clone(),
            category: tag.or_else(|| default_category(t)),
        })
        .collect()
}

pub fn categorize_method(decl: &MethodDecl) -> Vec<AnnotatedToken> {
    let class_name = decl.class_chain.last().map_or("", String::as_str);
    categorize(&decl.body_tokens, Context::Member { class_name })
}

pub fn categorize_field(decl: &FieldDecl) -> Vec<AnnotatedToken> {
    let class_name = decl.class_chain.last().map_or("", String::as_str);
    categorize(&decl.decl_tokens, Context::Member { class_name })
}

fn default_category(t: &Token) -> Option<Category> {
    if t.kind != TokenKind::Separator {
        return None;
    }
    match t.text.as_str() {
        ";" => Some(Category::Semicolon(S::Other)),
        "{" | "}" => Some(Category::Bracket(B::PlainBlock)),
        "(" | ")" => Some(Category::Paren(P::Other)),
        _ => None,
    }
}

#[derive(Clone, Copy, Default)]
struct ExprCtx {
    assert: bool,
}

struct Walk<'a> {
    s: Structure<'a>,
    tags: Vec<Option<Category>>,
}

impl Walk<'_> {
    fn semi(&mut self, i: usize, tag: S) {
        if self.s.is(i, ";") {
            self.tags[i] = Some(Category::Semicolon(tag));
        }
    }

    fn braces(&mut self, open: usize, tag: B) -> usize {
        let close = self.s.partner(open);
        self.tags[open] = Some(Category::Bracket(tag));
        self.tags[close] = Some(Category::Bracket(tag));
        close
    }

    fn parens(&mut self, open: usize, tag: P) -> usize {
        let close = self.s.partner(open);
        self.tags[open] = Some(Category::Paren(tag));
        self.tags[close] = Some(Category::Paren(tag));
        close
    }

    fn member(&mut self, i: usize, end: usize, class_name: &str) -> usize {
        let member = self.s.member(i, end, class_name);
        match &member {
            Member::Empty(j) => self.semi(*j, S::Empty),
            Member::Initializer {
                is_static,
                open,
                close,
            } => {
                let tag = if *is_static {
                    B::StaticInit
                } else {
                    B::InstanceInit
                };
                self.annotations(i, *open);
                self.braces(*open, tag);
                self.statements(open + 1, *close);
            }
            Member::Type { start, header } => {
                self.annotations(*start, header.keyword);
                self.type_decl(header);
            }
            Member::Method(m) => {
                self.annotations(m.start, m.name);
                if let Some((open, close)) = m.params {
                    self.parens(open, P::MethodParams);
                    self.annotations(open + 1, close);
                }
                match (m.body, &m.default_value) {
                    (Some((open, close)), _) => {
                        self.braces(open, B::MethodBody);
                        self.statements(open + 1, close);
                    }
                    (None, Some(value)) => {
                        self.expression(value.start, value.end, ExprCtx::default());
                        self.semi(m.end, S::AbstractMethod);
                    }
                    (None, None) => self.semi(m.end, S::AbstractMethod),
                }
            }
            Member::Field(f) => {
                self.annotations(f.start, f.type_range.end);
                for d in &f.declarators {
                    if let Some(init) = &d.init {
                        self.expression(init.start, init.end, ExprCtx::default());
                    }
                }
                self.semi(f.semi, S::Field);
            }
            Member::Unknown { next } => {
                let stop = (*next).min(end);
                self.expression(i, stop, ExprCtx::default());
            }
        }
        member.next()
    }

    fn annotations(&mut self, start: usize, end: usize) {
        let mut i = start;
        while i < end {
            if self.s.is(i, "@") {
                if let Some(j) = self.s.skip_annotation(i) {
                    if self.s.is(j - 1, ")") {
                        let open = self.s.partner(j - 1);
                        self.parens(open, P::AnnotationArgs);
                        self.expression(open + 1, j - 1, ExprCtx::default());
                    }
                    i = j;
                    continue;
                }
            }
            i += 1;
        }
    }

    fn type_decl(&mut self, h: &TypeHeader) {
        let tag = match h.kind {
            TypeKind::Class | TypeKind::Record => B::Class,
            TypeKind::Interface | TypeKind::Annotation => B::Interface,
            TypeKind::Enum => B::Enum,
        };
        if let Some((open, close)) = h.record_params {
            self.parens(open, P::Other);
            self.annotations(open + 1, close);
        }
        self.braces(h.open, tag);
        let name = self.s.text(h.name).to_string();
        self.class_body(h.open, h.close, &name, h.kind);
    }

    fn class_body(&mut self, open: usize, close: usize, name: &str, kind: TypeKind) {
        let mut i = open + 1;
        if kind == TypeKind::Enum {
            i = self.enum_constants(i, close);
        }
        while i < close {
            i = self.member(i, close, name).max(i + 1);
        }
    }

    fn enum_constants(&mut self, mut i: usize, close: usize) -> usize {
        while i < close {
            let start = i;
            while let Some(j) = self.s.skip_annotation(i) {
                i = j;
            }
            self.annotations(start, i);
            if !self.s.is_ident(i) {
                break;
            }
            i += 1;
            if self.s.is(i, "(") {
                let c = self.parens(i, P::ConstructorCall);
                self.expression(i + 1, c, ExprCtx::default());
                i = c + 1;
            }
            if self.s.is(i, "{") {
                let c = self.braces(i, B::AnonymousClass);
                self.class_body(i, c, "", TypeKind::Class);
                i = c + 1;
            }
            if self.s.is(i, ",") {
                i += 1;
            } else {
                break;
            }
        }
        if self.s.is(i, ";") {
            self.semi(i, S::EnumConstantList);
            i += 1;
        }
        i
    }

    fn statements(&mut self, start: usize, end: usize) {
        let mut i = start;
        while i < end {
            i = self.statement(i, end, false).max(i + 1);
        }
    }

    /// A statement body: a block tagged `tag`, or a single statement.
    fn body(&mut self, i: usize, end: usize, tag: B) -> usize {
        if self.s.is(i, "{") {
            let c = self.braces(i, tag);
            self.statements(i + 1, c);
            c + 1
        } else if i < end {
            self.statement(i, end, false)
        } else {
            i
        }
    }

    /// `keyword ( ... )` followed by a body; returns the index after the body.
    fn conditional(&mut self, i: usize, end: usize, cond: P, block: B) -> usize {
        if !self.s.is(i + 1, "(") {
            return self.simple(i, end, S::Other, false);
        }
        let c = self.parens(i + 1, cond);
        self.expression(i + 2, c, ExprCtx::default());
        self.body(c + 1, end, block)
    }

    /// Expression-like statement up to its `;`, which gets `tag`.
    fn simple(&mut self, from: usize, end: usize, tag: S, assert: bool) -> usize {
        match self.s.find_at_depth0(from, end, &[";"]) {
            Some(semi) => {
                self.expression(from, semi, ExprCtx { assert });
                self.semi(semi, tag);
                semi + 1
            }
            None => {
                self.expression(from, end, ExprCtx { assert });
                end
            }
        }
    }

    fn statement(&mut self, i: usize, end: usize, labeled: bool) -> usize {
        let s = &self.s;
        let t = s.text(i).to_string();
        match t.as_str() {
            "{" => self.body(i, end, B::PlainBlock),
            ";" => {
                self.semi(i, S::Empty);
                i + 1
            }
            "if" => {
                let j = self.conditional(i, end, P::IfCond, B::If);
                if self.s.is(j, "else") {
                    self.body(j + 1, end, B::Else)
                } else {
                    j
                }
            }
            "while" => self.conditional(i, end, P::WhileCond, B::While),
            "do" => {
                let j = self.body(i + 1, end, B::Do);
                if self.s.is(j, "while") && self.s.is(j + 1, "(") {
                    let c = self.parens(j + 1, P::DoCond);
                    self.expression(j + 2, c, ExprCtx::default());
                    if self.s.is(c + 1, ";") {
                        self.semi(c + 1, S::DoWhile);
                        return c + 2;
                    }
                    return c + 1;
                }
                j
            }
            "for" => self.for_statement(i, end),
            "try" => self.try_statement(i, end),
            "switch" if s.is(i + 1, "(") => self.switch(i),
            "synchronized" if s.is(i + 1, "(") => {
                self.conditional(i, end, P::SynchronizedExpr, B::Synchronized)
            }
            "return" => self.simple(i + 1, end, S::Return, false),
            "throw" => self.simple(i + 1, end, S::Throw, false),
            "break" => self.simple(i + 1, end, S::Break, false),
            "continue" => self.simple(i + 1, end, S::Continue, false),
            "assert" => self.simple(i + 1, end, S::Assert, true),
            "yield" if s.is_ident(i) && self.is_yield(i) => self.simple(i + 1, end, S::Yield, false),
            "case" | "default" if !s.is(i + 1, ".") => {
                // Stray label outside a recognized switch body.
                match s.find_at_depth0(i + 1, end, &[":", "->"]) {
                    Some(j) => j + 1,
                    None => end,
                }
            }
            "this" | "super" if s.is(i + 1, "(") => {
                let c = self.parens(i + 1, P::SuperCall);
                self.expression(i + 2, c, ExprCtx::default());
                let tag = if labeled { S::Labeled } else { S::Expression };
                self.simple(c + 1, end, tag, false)
            }
            _ if s.is_ident(i) && s.is(i + 1, ":") => self.statement(i + 2, end, true),
            _ => {
                let (p, _) = s.modifiers(i, end);
                if let Some(h) = s.type_header(p, end) {
                    self.annotations(i, h.keyword);
                    self.type_decl(&h);
                    return h.close + 1;
                }
                let tag = if self.is_local_var(i) {
                    S::LocalVariable
                } else if labeled {
                    S::Labeled
                } else {
                    S::Expression
                };
                self.simple(i, end, tag, false)
            }
        }
    }

    fn is_yield(&self, i: usize) -> bool {
        !matches!(
            self.s.text(i + 1),
            "=" | "." | "[" | "++" | "--" | "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^="
                | "<<=" | ">>=" | ">>>=" | ";" | ":" | "->" | "::"
        )
    }

    /// End of a type starting at `j` (annotations, primitive or qualified
    /// name, generic arguments, array dims).
    fn type_end(&self, mut j: usize) -> Option<usize> {
        let s = &self.s;
        while let Some(k) = s.skip_annotation(j) {
            j = k;
        }
        let mut k = if is_primitive(s.text(j)) {
            j + 1
        } else if s.is_ident(j) {
            let mut k = j + 1;
            loop {
                if s.is(k, "<") {
                    k = s.generic_end(k)?;
                }
                if s.is(k, ".") && s.is_ident(k + 1) {
                    k += 2;
                    continue;
                }
                break;
            }
            k
        } else {
            return None;
        };
        while s.is(k, "[") && s.is(k + 1, "]") {
            k += 2;
        }
        Some(k)
    }

    fn is_local_var(&self, i: usize) -> bool {
        let s = &self.s;
        let mut j = i;
        loop {
            if s.is(j, "final") {
                j += 1;
            } else if let Some(k) = s.skip_annotation(j) {
                j = k;
            } else {
                break;
            }
        }
        match self.type_end(j) {
            Some(k) => s.is_ident(k) && matches!(s.text(k + 1), "=" | ";" | "," | "[" | ":"),
            None => false,
        }
    }

    fn for_statement(&mut self, i: usize, end: usize) -> usize {
        if !self.s.is(i + 1, "(") {
            return self.simple(i, end, S::Other, false);
        }
        let open = i + 1;
        let close = self.s.partner(open);
        if self.is_enhanced_for(open + 1, close) {
            self.parens(open, P::EnhancedFor);
            self.expression(open + 1, close, ExprCtx::default());
            return self.body(close + 1, end, B::EnhancedFor);
        }
        self.parens(open, P::For);
        let mut seg = open + 1;
        for tag in [S::ForInit, S::ForCond] {
            match self.s.find_at_depth0(seg, close, &[";"]) {
                Some(semi) => {
                    self.expression(seg, semi, ExprCtx::default());
                    self.semi(semi, tag);
                    seg = semi + 1;
                }
                None => break,
            }
        }
        self.expression(seg, close, ExprCtx::default());
        self.body(close + 1, end, B::For)
    }

    fn is_enhanced_for(&self, start: usize, end: usize) -> bool {
        let s = &self.s;
        let mut pending_ternary = 0usize;
        let mut i = start;
        while i < end {
            match s.text(i) {
                ";" => return false,
                "?" => pending_ternary += 1,
                ":" if pending_ternary > 0 => pending_ternary -= 1,
                ":" => return true,
                "(" | "[" | "{" => {
                    i = s.partner(i) + 1;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
        false
    }

    fn try_statement(&mut self, i: usize, end: usize) -> usize {
        let mut j = i + 1;
        if self.s.is(j, "(") {
            let close = self.parens(j, P::TryResource);
            let mut seg = j + 1;
            while let Some(semi) = self.s.find_at_depth0(seg, close, &[";"]) {
                self.expression(seg, semi, ExprCtx::default());
                self.semi(semi, S::LocalVariable);
                seg = semi + 1;
            }
            self.expression(seg, close, ExprCtx::default());
            j = close + 1;
        }
        if self.s.is(j, "{") {
            j = self.body(j, end, B::Try);
        }
        loop {
            if self.s.is(j, "catch") && self.s.is(j + 1, "(") {
                let c = self.parens(j + 1, P::CatchParam);
                self.annotations(j + 2, c);
                j = c + 1;
                if self.s.is(j, "{") {
                    j = self.body(j, end, B::Catch);
                }
            } else if self.s.is(j, "finally") && self.s.is(j + 1, "{") {
                j = self.body(j + 1, end, B::Finally);
            } else {
                return j;
            }
        }
    }

    /// `switch (sel) { ... }` as statement or expression; returns index past `}`.
    fn switch(&mut self, i: usize) -> usize {
        let c = self.parens(i + 1, P::SwitchSelector);
        self.expression(i + 2, c, ExprCtx::default());
        if !self.s.is(c + 1, "{") {
            return c + 1;
        }
        let close = self.braces(c + 1, B::Switch);
        self.switch_body(c + 2, close);
        close + 1
    }

    fn switch_body(&mut self, start: usize, end: usize) {
        let mut i = start;
        while i < end {
            let label = self.s.is(i, "case")
                || (self.s.is(i, "default") && matches!(self.s.text(i + 1), ":" | "->"));
            if !label {
                i = self.statement(i, end, false).max(i + 1);
                continue;
            }
            let Some(j) = self.s.find_at_depth0(i + 1, end, &[":", "->"]) else {
                return;
            };
            self.expression(i + 1, j, ExprCtx::default());
            if self.s.is(j, ":") {
                i = j + 1;
                continue;
            }
            let k = j + 1;
            i = if self.s.is(k, "{") {
                self.body(k, end, B::Switch)
            } else if self.s.is(k, "throw") {
                self.statement(k, end, false)
            } else {
                self.simple(k, end, S::Expression, false)
            };
        }
    }

    fn expression(&mut self, start: usize, end: usize, ctx: ExprCtx) {
        let mut i = start;
        while i < end {
            match self.s.text(i) {
                "(" => {
                    let c = self.s.partner(i);
                    let role = self.paren_role(i, c, ctx);
                    self.parens(i, role);
                    match role {
                        P::LambdaParams | P::Cast => self.annotations(i + 1, c),
                        _ => self.expression(i + 1, c, ctx),
                    }
                    if role == P::ConstructorCall && c + 1 < end && self.s.is(c + 1, "{") {
                        let bc = self.braces(c + 1, B::AnonymousClass);
                        self.class_body(c + 1, bc, "", TypeKind::Class);
                        i = bc + 1;
                    } else {
                        i = c + 1;
                    }
                }
                "{" => {
                    let c = self.s.partner(i);
                    if i > 0 && self.s.is(i - 1, "->") {
                        self.braces(i, B::LambdaBody);
                        self.statements(i + 1, c);
                    } else {
                        self.braces(i, B::ArrayInitializer);
                        self.expression(i + 1, c, ExprCtx::default());
                    }
                    i = c + 1;
                }
                "[" => {
                    let c = self.s.partner(i);
                    self.expression(i + 1, c, ctx);
                    i = c + 1;
                }
                "switch" if self.s.is(i + 1, "(") => i = self.switch(i),
                "@" => match self.s.skip_annotation(i) {
                    Some(j) => {
                        self.annotations(i, j);
                        i = j;
                    }
                    None => i += 1,
                },
                ";" => {
                    self.semi(i, S::Other);
                    i += 1;
                }
                _ => i += 1,
            }
        }
    }

    fn paren_role(&self, open: usize, close: usize, ctx: ExprCtx) -> P {
        let s = &self.s;
        if s.is(close + 1, "->") {
            return P::LambdaParams;
        }
        if open == 0 {
            return self.cast_or_grouping(open, close, ctx);
        }
        let prev = open - 1;
        if s.is_ident(prev) {
            let start = self.qualified_start(prev);
            if start > 0 && s.is(start - 1, "@") {
                return P::AnnotationArgs;
            }
            if start > 0 && s.is(start - 1, "new") {
                return P::ConstructorCall;
            }
            return P::MethodCall;
        }
        match s.text(prev) {
            "this" | "super" => return P::SuperCall,
            "if" => return P::IfCond,
            "while" => return P::WhileCond,
            "for" => return P::For,
            "switch" => return P::SwitchSelector,
            "catch" => return P::CatchParam,
            "synchronized" => return P::SynchronizedExpr,
            "try" => return P::TryResource,
            ">" | ">>" | ">>>" => {
                // `new Foo<>(` / `new Foo<Bar>(`
                let lo = prev.saturating_sub(64);
                for k in (lo..prev).rev() {
                    if s.is(k, "<") && s.generic_end(k) == Some(open) {
                        if k > 0 && s.is_ident(k - 1) {
                            let start = self.qualified_start(k - 1);
                            if start > 0 && s.is(start - 1, "new") {
                                return P::ConstructorCall;
                            }
                            return P::MethodCall;
                        }
                        break;
                    }
                }
            }
            _ => {}
        }
        let role = self.cast_or_grouping(open, close, ctx);
        if role == P::Grouping && s.is(prev, "[") {
            return P::ArrayAccessGuard;
        }
        role
    }

    fn qualified_start(&self, mut k: usize) -> usize {
        while k >= 2 && self.s.is(k - 1, ".") && self.s.is_ident(k - 2) {
            k -= 2;
        }
        k
    }

    fn cast_or_grouping(&self, open: usize, close: usize, ctx: ExprCtx) -> P {
        if self.is_cast(open, close) {
            return P::Cast;
        }
        if ctx.assert {
            P::AssertExpr
        } else {
            P::Grouping
        }
    }

    fn is_cast(&self, open: usize, close: usize) -> bool {
        let s = &self.s;
        let mut j = open + 1;
        if j >= close {
            return false;
        }
        let primitive = is_primitive(s.text(j));
        loop {
            match self.type_end(j) {
                Some(e) if e == close => break,
                Some(e) if s.is(e, "&") => j = e + 1,
                _ => return false,
            }
        }
        let next = close + 1;
        if next >= s.len() {
            return false;
        }
        let nt = s.text(next);
        let operand = s.is_ident(next)
            || s.kind(next) == Some(TokenKind::Literal)
            || matches!(nt, "(" | "!" | "~" | "this" | "super" | "new" | "switch")
            || is_primitive(nt);
        operand || (primitive && matches!(nt, "-" | "+" | "++" | "--"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::java::lexer::lex;

    fn tagged(src: &str, ctx: Context<'_>) -> Vec<String> {
        let toks = lex(src.as_bytes()).unwrap();
        categorize(&toks, ctx)
            .into_iter()
            .map(|a| match a.category {
                Some(c) => format!("{} {}", a.token.text, c.tag()),
                None => a.token.text,
            })
            .collect()
    }

    fn tags_only(src: &str, ctx: Context<'_>) -> Vec<String> {
        tagged(src, ctx)
            .into_iter()
            .filter(|l| l.contains(' '))
            .collect()
    }

    #[test]
    fn if_statement() {
        assert_eq!(
            tags_only("if (a == null) { return 0; }", Context::Statements),
            vec!["( IF_COND", ") IF_COND", "{ IF", "; RETURN", "} IF"]
        );
    }

    #[test]
    fn while_statement() {
        assert_eq!(
            tags_only("while (i < 10) { total += b; }", Context::Statements),
            vec!["( WHILE_COND", ") WHILE_COND", "{ WHILE", "; EXPRESSION", "} WHILE"]
        );
    }

    #[test]
    fn abstract_method_only_has_its_own_terminators() {
        let ctx = Context::Member { class_name: "A" };
        assert_eq!(
            tagged("abstract void f();", ctx),
            vec!["abstract", "void", "f", "( METHOD_PARAMS", ") METHOD_PARAMS", "; ABSTRACT_METHOD"]
        );
    }

    #[test]
    fn getter() {
        let ctx = Context::Member { class_name: "Person" };
        assert_eq!(
            tagged("public int getLength() { return length; }", ctx),
            vec![
                "public",
                "int",
                "getLength",
                "( METHOD_PARAMS",
                ") METHOD_PARAMS",
                "{ METHOD_BODY",
                "return",
                "length",
                "; RETURN",
                "} METHOD_BODY"
            ]
        );
    }

    #[test]
    fn loops_and_jumps() {
        let src = "for (int i = 0; i < n; i++) { if (x) break; else continue; }
                   for (String s : list) { }
                   do { i--; } while (i > 0);
                   outer: while (true) { x++; }
                   lbl: x++;";
        assert_eq!(
            tags_only(src, Context::Statements),
            vec![
                "( FOR", "; FOR_INIT", "; FOR_COND", ") FOR", "{ FOR", "( IF_COND", ") IF_COND",
                "; BREAK", "; CONTINUE", "} FOR", "( ENHANCED_FOR", ") ENHANCED_FOR",
                "{ ENHANCED_FOR", "} ENHANCED_FOR", "{ DO", "; EXPRESSION", "} DO", "( DO_COND",
                ") DO_COND", "; DO_WHILE", "( WHILE_COND", ") WHILE_COND", "{ WHILE",
                "; EXPRESSION", "} WHILE", "; LABELED"
            ]
        );
    }

    #[test]
    fn else_blocks() {
        assert_eq!(
            tags_only("if (a) { } else if (b) { } else { }", Context::Statements),
            vec![
                "( IF_COND", ") IF_COND", "{ IF", "} IF", "( IF_COND", ") IF_COND", "{ IF",
                "} IF", "{ ELSE", "} ELSE"
            ]
        );
    }

    #[test]
    fn try_catch_finally() {
        let src = "try (InputStream in = open(); Reader r = wrap(in)) { read(); }
                   catch (IOException | RuntimeException e) { throw e; } finally { close(); }";
        assert_eq!(
            tags_only(src, Context::Statements),
            vec![
                "( TRY_RESOURCE", "( METHOD_CALL", ") METHOD_CALL", "; LOCAL_VARIABLE",
                "( METHOD_CALL", ") METHOD_CALL", ") TRY_RESOURCE", "{ TRY", "( METHOD_CALL",
                ") METHOD_CALL", "; EXPRESSION", "} TRY", "( CATCH_PARAM", ") CATCH_PARAM",
                "{ CATCH", "; THROW", "} CATCH", "{ FINALLY", "( METHOD_CALL", ") METHOD_CALL",
                "; EXPRESSION", "} FINALLY"
            ]
        );
    }

    #[test]
    fn switch_forms() {
        let src = "switch (k) { case 1: x(); break; default: { } }
                   int v = switch (k) { case 1 -> 2; case 2 -> { yield 3; } default -> throw new E(); };";
        assert_eq!(
            tags_only(src, Context::Statements),
            vec![
                "( SWITCH_SELECTOR", ") SWITCH_SELECTOR", "{ SWITCH", "( METHOD_CALL",
                ") METHOD_CALL", "; EXPRESSION", "; BREAK", "{ PLAIN_BLOCK", "} PLAIN_BLOCK",
                "} SWITCH", "( SWITCH_SELECTOR", ") SWITCH_SELECTOR", "{ SWITCH", "; EXPRESSION",
                "{ SWITCH", "; YIELD", "} SWITCH", "( CONSTRUCTOR_CALL", ") CONSTRUCTOR_CALL",
                "; THROW", "} SWITCH", "; LOCAL_VARIABLE"
            ]
        );
    }

    #[test]
    fn expressions() {
        let src = "Object o = (String) s; int[] a = {1, 2}; int[][] b = new int[][] { {1} };
                   y = (a + b) * c; z = arr[(i)]; f(x -> { return x; }); g((p, q) -> p);
                   Runnable r = new Runnable() { public void run() { } };
                   var m = new HashMap<String, Integer>(); l = new ArrayList<>();
                   long w = (long) -1; assert (x > 0) : \"m\"; synchronized (lock) { }";
        assert_eq!(
            tags_only(src, Context::Statements),
            vec![
                "( CAST", ") CAST", "; LOCAL_VARIABLE",
                "{ ARRAY_INITIALIZER", "} ARRAY_INITIALIZER", "; LOCAL_VARIABLE",
                "{ ARRAY_INITIALIZER", "{ ARRAY_INITIALIZER", "} ARRAY_INITIALIZER",
                "} ARRAY_INITIALIZER", "; LOCAL_VARIABLE",
                "( GROUPING", ") GROUPING", "; EXPRESSION",
                "( ARRAY_ACCESS_GUARD", ") ARRAY_ACCESS_GUARD", "; EXPRESSION",
                "( METHOD_CALL", "{ LAMBDA_BODY", "; RETURN", "} LAMBDA_BODY", ") METHOD_CALL",
                "; EXPRESSION",
                "( METHOD_CALL", "( LAMBDA_PARAMS", ") LAMBDA_PARAMS", ") METHOD_CALL",
                "; EXPRESSION",
                "( CONSTRUCTOR_CALL", ") CONSTRUCTOR_CALL", "{ ANONYMOUS_CLASS",
                "( METHOD_PARAMS", ") METHOD_PARAMS", "{ METHOD_BODY", "} METHOD_BODY",
                "} ANONYMOUS_CLASS", "; LOCAL_VARIABLE",
                "( CONSTRUCTOR_CALL", ") CONSTRUCTOR_CALL", "; LOCAL_VARIABLE",
                "( CONSTRUCTOR_CALL", ") CONSTRUCTOR_CALL", "; EXPRESSION",
                "( CAST", ") CAST", "; LOCAL_VARIABLE",
                "( ASSERT_EXPR", ") ASSERT_EXPR", "; ASSERT",
                "( SYNCHRONIZED_EXPR", ") SYNCHRONIZED_EXPR", "{ SYNCHRONIZED", "} SYNCHRONIZED"
            ]
        );
    }

    #[test]
    fn local_types_and_initializers() {
        let src = "enum E { A, B; static { x(); } { y(); } } interface I { void f(); } class L { int x = 1; }";
        assert_eq!(
            tags_only(src, Context::Statements),
            vec![
                "{ ENUM", "; ENUM_CONSTANT_LIST", "{ STATIC_INIT", "( METHOD_CALL",
                ") METHOD_CALL", "; EXPRESSION", "} STATIC_INIT", "{ INSTANCE_INIT",
                "( METHOD_CALL", ") METHOD_CALL", "; EXPRESSION", "} INSTANCE_INIT", "} ENUM",
                "{ INTERFACE", "( METHOD_PARAMS", ") METHOD_PARAMS", "; ABSTRACT_METHOD",
                "} INTERFACE", "{ CLASS", "; FIELD", "} CLASS"
            ]
        );
    }

    #[test]
    fn constructor_calls_and_annotations() {
        let ctx = Context::Member { class_name: "A" };
        assert_eq!(
            tags_only("@SuppressWarnings(\"x\") A(@Named(\"n\") int a) { super(a); this.b = a; ; }", ctx),
            vec![
                "( ANNOTATION_ARGS", ") ANNOTATION_ARGS", "( METHOD_PARAMS", "( ANNOTATION_ARGS",
                ") ANNOTATION_ARGS", ") METHOD_PARAMS", "{ METHOD_BODY", "( SUPER_CALL",
                ") SUPER_CALL", "; EXPRESSION", "; EXPRESSION", "; EMPTY", "} METHOD_BODY"
            ]
        );
    }

    #[test]
    fn field_terminator() {
        let ctx = Context::Member { class_name: "A" };
        assert_eq!(
            tags_only("private int[] xs = {1};", ctx),
            vec!["{ ARRAY_INITIALIZER", "} ARRAY_INITIALIZER", "; FIELD"]
        );
    }

    #[test]
    fn every_terminator_tagged_even_when_unbalanced() {
        let toks = lex(b"f(a; }").unwrap();
        let out = categorize(&toks, Context::Statements);
        for a in out {
            let term = crate::emit::category::is_terminator(&a.token.text);
            assert_eq!(term, a.category.is_some());
        }
    }
}
