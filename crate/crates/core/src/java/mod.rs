//! Java source model: lexing and declaration extraction.

pub mod extract;
pub mod lexer;
pub mod structure;

pub use extract::{extract, ExtractError, Extraction, FieldDecl, MethodDecl};
pub use lexer::{lex, lex_full, LexError, Lexed, Token, TokenKind};
pub use structure::ParseError;
