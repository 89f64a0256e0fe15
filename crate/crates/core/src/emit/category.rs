//! Terminator categories.
//!
//! Every `;`, `{`, `}`, `(` and `)` in a rendered declaration is annotated
//! with the syntactic role it plays. The tag names are part of the on-disk
//! file format.

use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! tag_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn from_name(s: &str) -> Option<Self> {
                match s {
                    $($text => Some($name::$variant),)+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

tag_enum! {
    /// Role of a `;`.
    SemicolonTag {
        Return => "RETURN",
        Expression => "EXPRESSION",
        LocalVariable => "LOCAL_VARIABLE",
        Break => "BREAK",
        Continue => "CONTINUE",
        Throw => "THROW",
        Assert => "ASSERT",
        DoWhile => "DO_WHILE",
        ForInit => "FOR_INIT",
        ForCond => "FOR_COND",
        ForUpdate => "FOR_UPDATE",
        Empty => "EMPTY",
        Field => "FIELD",
        AbstractMethod => "ABSTRACT_METHOD",
        EnumConstantList => "ENUM_CONSTANT_LIST",
        Yield => "YIELD",
        Labeled => "LABELED",
        Other => "OTHER",
    }
}

tag_enum! {
    /// Role of a `{` / `}` pair.
    BracketTag {
        MethodBody => "METHOD_BODY",
        If => "IF",
        Else => "ELSE",
        For => "FOR",
        EnhancedFor => "ENHANCED_FOR",
        While => "WHILE",
        Do => "DO",
        Try => "TRY",
        Catch => "CATCH",
        Finally => "FINALLY",
        Switch => "SWITCH",
        Synchronized => "SYNCHRONIZED",
        StaticInit => "STATIC_INIT",
        InstanceInit => "INSTANCE_INIT",
        ArrayInitializer => "ARRAY_INITIALIZER",
        LambdaBody => "LAMBDA_BODY",
        AnonymousClass => "ANONYMOUS_CLASS",
        Class => "CLASS",
        Enum => "ENUM",
        Interface => "INTERFACE",
        PlainBlock => "PLAIN_BLOCK",
    }
}

tag_enum! {
    /// Role of a `(` / `)` pair.
    ParenTag {
        MethodParams => "METHOD_PARAMS",
        MethodCall => "METHOD_CALL",
        ConstructorCall => "CONSTRUCTOR_CALL",
        IfCond => "IF_COND",
        WhileCond => "WHILE_COND",
        DoCond => "DO_COND",
        For => "FOR",
        EnhancedFor => "ENHANCED_FOR",
        SwitchSelector => "SWITCH_SELECTOR",
        CatchParam => "CATCH_PARAM",
        Cast => "CAST",
        Grouping => "GROUPING",
        SynchronizedExpr => "SYNCHRONIZED_EXPR",
        AnnotationArgs => "ANNOTATION_ARGS",
        LambdaParams => "LAMBDA_PARAMS",
        TryResource => "TRY_RESOURCE",
        AssertExpr => "ASSERT_EXPR",
        ArrayAccessGuard => "ARRAY_ACCESS_GUARD",
        SuperCall => "SUPER_CALL",
        Other => "OTHER",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenClass {
    Semicolon,
    Bracket,
    Paren,
}

/// A terminator's category: which token class it belongs to plus its tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Semicolon(SemicolonTag),
    Bracket(BracketTag),
    Paren(ParenTag),
}

impl Category {
    pub fn token_class(self) -> TokenClass {
        match self {
            Category::Semicolon(_) => TokenClass::Semicolon,
            Category::Bracket(_) => TokenClass::Bracket,
            Category::Paren(_) => TokenClass::Paren,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Category::Semicolon(t) => t.as_str(),
            Category::Bracket(t) => t.as_str(),
            Category::Paren(t) => t.as_str(),
        }
    }

    /// Whether this category may annotate a token with text `text`.
    pub fn fits(self, text: &str) -> bool {
        matches!(
            (self.token_class(), text),
            (TokenClass::Semicolon, ";")
                | (TokenClass::Bracket, "{" | "}")
                | (TokenClass::Paren, "(" | ")")
        )
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn is_terminator(text: &str) -> bool {
    matches!(text, ";" | "{" | "}" | "(" | ")")
}
