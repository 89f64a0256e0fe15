//! Java lexer.
//!
//! Produces the non-comment, non-whitespace lexical units of a compilation
//! unit in source order. Comments never become tokens; Javadoc comments are
//! kept on the side so they can be attached to the declaration that follows.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TokenKind {
    Identifier,
    Keyword,
    Literal,
    Operator,
    Separator,
}

/// One lexical unit of Java source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    /// Verbatim source text.
    pub text: String,
    pub kind: TokenKind,
    /// 1-based line of the first character.
    pub line: u32,
    /// 1-based column (in characters) of the first character.
    pub column: u32,
    /// Byte offset of the first character in the source.
    pub offset: usize,
}

impl Token {
    pub fn byte_len(&self) -> usize {
        self.text.len()
    }

    pub fn span(&self) -> Range<usize> {
        self.offset..self.offset + self.text.len()
    }

    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }

    pub fn is_ident(&self) -> bool {
        self.kind == TokenKind::Identifier
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommentKind {
    Line,
    Block,
    Javadoc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    pub kind: CommentKind,
    /// Byte range in the source, delimiters included.
    pub span: Range<usize>,
    /// Index of the first token after this comment (== token count at EOF).
    pub next_token: usize,
}

/// Full lexer output: tokens plus every comment seen.
#[derive(Debug, Clone, Default)]
pub struct Lexed {
    pub tokens: Vec<Token>,
    pub comments: Vec<Comment>,
}

impl Lexed {
    /// The Javadoc comment directly preceding token `index`, if any.
    ///
    /// Only the nearest Javadoc counts; an ordinary comment in between does
    /// not detach it.
    pub fn javadoc_before(&self, index: usize) -> Option<&Comment> {
        self.comments
            .iter()
            .rev()
            .filter(|c| c.next_token == index)
            .find(|c| c.kind == CommentKind::Javadoc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("source is not valid UTF-8 (byte {0})")]
    InvalidUtf8(usize),
    #[error("unterminated string literal at {line}:{column}")]
    UnterminatedString { line: u32, column: u32 },
    #[error("unterminated character literal at {line}:{column}")]
    UnterminatedChar { line: u32, column: u32 },
    #[error("unterminated comment at {line}:{column}")]
    UnterminatedComment { line: u32, column: u32 },
    #[error("unexpected character {ch:?} at {line}:{column}")]
    UnexpectedChar { ch: char, line: u32, column: u32 },
}

impl LexError {
    pub fn position(&self) -> Option<(u32, u32)> {
        match *self {
            LexError::InvalidUtf8(_) => None,
            LexError::UnterminatedString { line, column }
            | LexError::UnterminatedChar { line, column }
            | LexError::UnterminatedComment { line, column }
            | LexError::UnexpectedChar { line, column, .. } => Some((line, column)),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
];

// Longest first so that maximal munch falls out of a linear scan.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<", ">>", "=", ">", "<", "!", "~", "?", ":",
    "+", "-", "*", "/", "&", "|", "^", "%", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@",
];

fn punct_kind(p: &str) -> TokenKind {
    match p {
        "(" | ")" | "{" | "}" | "[" | "]" | ";" | "," | "." | "..." | "@" | "::" => {
            TokenKind::Separator
        }
        _ => TokenKind::Operator,
    }
}

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Lex `source` into tokens, dropping comments.
pub fn lex(source: &[u8]) -> Result<Vec<Token>, LexError> {
    lex_full(source).map(|l| l.tokens)
}

/// Lex `source`, keeping comment spans alongside the tokens.
pub fn lex_full(source: &[u8]) -> Result<Lexed, LexError> {
    let text = std::str::from_utf8(source).map_err(|e| LexError::InvalidUtf8(e.valid_up_to()))?;
    Lexer::new(text).run()
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    line_start: usize,
    out: Lexed,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            line: 1,
            line_start: 0,
            out: Lexed::default(),
        }
    }

    fn column_at(&self, offset: usize) -> u32 {
        self.src[self.line_start..offset].chars().count() as u32 + 1
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn byte_at(&self, offset: usize) -> Option<u8> {
        self.bytes.get(offset).copied()
    }

    /// Advance over `[from, to)` keeping line bookkeeping.
    fn advance_to(&mut self, to: usize) {
        for (i, b) in self.bytes[self.pos..to].iter().enumerate() {
            if *b == b'\n' {
                self.line += 1;
                self.line_start = self.pos + i + 1;
            }
        }
        self.pos = to;
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: u32, column: u32) {
        self.out.tokens.push(Token {
            text: self.src[start..self.pos].to_string(),
            kind,
            line,
            column,
            offset: start,
        });
    }

    fn run(mut self) -> Result<Lexed, LexError> {
        if self.src.starts_with('\u{feff}') {
            self.pos = '\u{feff}'.len_utf8();
            self.line_start = self.pos;
        }
        while let Some(c) = self.peek_char() {
            let start = self.pos;
            let line = self.line;
            let column = self.column_at(start);
            match c {
                ' ' | '\t' | '\n' | '\r' | '\x0c' | '\x1a' => self.advance_to(start + 1),
                '/' if self.byte_at(start + 1) == Some(b'/') => {
                    let end = self.src[start..]
                        .find('\n')
                        .map_or(self.src.len(), |n| start + n);
                    self.advance_to(end);
                    self.comment(CommentKind::Line, start);
                }
                '/' if self.byte_at(start + 1) == Some(b'*') => {
                    let Some(close) = self.src[start + 2..].find("*/") else {
                        return Err(LexError::UnterminatedComment { line, column });
                    };
                    let end = start + 2 + close + 2;
                    // `/**/` is an empty block comment, not Javadoc.
                    let kind = if self.src[start..end].starts_with("/**") && end - start > 4 {
                        CommentKind::Javadoc
                    } else {
                        CommentKind::Block
                    };
                    self.advance_to(end);
                    self.comment(kind, start);
                }
                '"' => {
                    if self.src[start..].starts_with("\"\"\"") {
                        self.text_block(start, line, column)?;
                    } else {
                        self.quoted(b'"', start, line, column)?;
                    }
                    self.push(TokenKind::Literal, start, line, column);
                }
                '\'' => {
                    self.quoted(b'\'', start, line, column)?;
                    self.push(TokenKind::Literal, start, line, column);
                }
                c if c.is_ascii_digit() => {
                    self.number(start);
                    self.push(TokenKind::Literal, start, line, column);
                }
                '.' if self.byte_at(start + 1).is_some_and(|b| b.is_ascii_digit()) => {
                    self.number(start);
                    self.push(TokenKind::Literal, start, line, column);
                }
                c if is_ident_start(c) => {
                    let end = self.src[start..]
                        .char_indices()
                        .find(|&(_, ch)| !is_ident_part(ch))
                        .map_or(self.src.len(), |(i, _)| start + i);
                    self.pos = end;
                    let word = &self.src[start..end];
                    let kind = if is_keyword(word) {
                        TokenKind::Keyword
                    } else if matches!(word, "true" | "false" | "null") {
                        TokenKind::Literal
                    } else {
                        TokenKind::Identifier
                    };
                    self.push(kind, start, line, column);
                }
                _ => {
                    let rest = &self.src[start..];
                    let Some(op) = OPERATORS.iter().find(|op| rest.starts_with(**op)) else {
                        return Err(LexError::UnexpectedChar { ch: c, line, column });
                    };
                    self.pos = start + op.len();
                    self.push(punct_kind(op), start, line, column);
                }
            }
        }
        Ok(self.out)
    }

    fn comment(&mut self, kind: CommentKind, start: usize) {
        self.out.comments.push(Comment {
            kind,
            span: start..self.pos,
            next_token: self.out.tokens.len(),
        });
    }

    fn quoted(&mut self, quote: u8, start: usize, line: u32, column: u32) -> Result<(), LexError> {
        let mut i = start + 1;
        loop {
            match self.byte_at(i) {
                None | Some(b'\n') | Some(b'\r') => {
                    return Err(if quote == b'"' {
                        LexError::UnterminatedString { line, column }
                    } else {
                        LexError::UnterminatedChar { line, column }
                    });
                }
                Some(b'\\') => i += 2,
                Some(b) if b == quote => {
                    self.pos = i + 1;
                    return Ok(());
                }
                Some(_) => i += 1,
            }
        }
    }

    fn text_block(&mut self, start: usize, line: u32, column: u32) -> Result<(), LexError> {
        let mut i = start + 3;
        loop {
            match self.byte_at(i) {
                None => return Err(LexError::UnterminatedString { line, column }),
                Some(b'\\') => i += 2,
                Some(b'"') if self.src[i..].starts_with("\"\"\"") => {
                    self.advance_to(i + 3);
                    return Ok(());
                }
                Some(_) => i += 1,
            }
        }
    }

    fn number(&mut self, start: usize) {
        let hex = self.src[start..].starts_with("0x") || self.src[start..].starts_with("0X");
        let mut i = start;
        let mut seen_dot = false;
        if hex {
            i += 2;
        }
        while let Some(b) = self.byte_at(i) {
            match b {
                b'0'..=b'9' | b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let exp = if hex {
                        matches!(b, b'p' | b'P')
                    } else {
                        matches!(b, b'e' | b'E')
                    };
                    i += 1;
                    if exp && matches!(self.byte_at(i), Some(b'+' | b'-')) {
                        i += 1;
                    }
                }
                b'.' if !seen_dot => {
                    let next = self.byte_at(i + 1);
                    let continues = match next {
                        Some(b'.') => false,
                        Some(n) if n.is_ascii_digit() => true,
                        Some(b'e' | b'E' | b'f' | b'F' | b'd' | b'D') => !self
                            .byte_at(i + 2)
                            .is_some_and(|n| n.is_ascii_alphanumeric() || n == b'_'),
                        Some(n) if n.is_ascii_alphabetic() || n == b'_' || n == b'$' => false,
                        Some(n) if n >= 0x80 => false,
                        _ => true,
                    };
                    if !continues {
                        break;
                    }
                    seen_dot = true;
                    i += 1;
                }
                _ => break,
            }
        }
        self.pos = i;
    }
}
