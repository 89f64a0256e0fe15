//! Drop the structural tokens every method shares.

use super::categorize::AnnotatedToken;
use crate::java::MethodDecl;

/// Indices (into the declaration's token list) removed for `decl`, ascending.
pub fn elided_indices(decl: &MethodDecl) -> Vec<usize> {
    let mut out = Vec::with_capacity(4);
    if let Some((o, c)) = decl.params_parens {
        out.extend([o, c]);
    }
    if let Some((o, c)) = decl.body_braces {
        out.extend([o, c]);
    }
    out.sort_unstable();
    out
}

/// Remove the parameter-list parens and the outermost body braces.
pub fn elide(tokens: Vec<AnnotatedToken>, decl: &MethodDecl) -> Vec<AnnotatedToken> {
    let drop = elided_indices(decl);
    tokens
        .into_iter()
        .enumerate()
        .filter(|(i, _)| drop.binary_search(i).is_err())
        .map(|(_, t)| t)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emit::categorize::categorize_method;
    use crate::java::extract;

    fn method(src: &str) -> MethodDecl {
        extract(src.as_bytes()).unwrap().methods.remove(0)
    }

    #[test]
    fn getter_loses_four_tokens() {
        let m = method("class P { public int getLength() { return length; } }");
        let out = elide(categorize_method(&m), &m);
        let texts: Vec<_> = out.iter().map(|a| a.token.text.as_str()).collect();
        assert_eq!(texts, ["public", "int", "getLength", "return", "length", ";"]);
    }

    #[test]
    fn abstract_keeps_semicolon() {
        let m = method("abstract class A { abstract void f(); }");
        let out = elide(categorize_method(&m), &m);
        let texts: Vec<_> = out.iter().map(|a| a.token.text.as_str()).collect();
        assert_eq!(texts, ["abstract", "void", "f", ";"]);
    }

    #[test]
    fn nested_brackets_survive() {
        let m = method("class M { int max(int a,int b){return a>b?a:b;} }");
        let before = categorize_method(&m);
        let after = elide(before.clone(), &m);
        assert_eq!(before.len() - after.len(), 4);
        let m = method("class M { void g(int a) { if (a > 0) { f((a)); } } }");
        let after = elide(categorize_method(&m), &m);
        let parens = after.iter().filter(|a| a.token.text == "(").count();
        let braces = after.iter().filter(|a| a.token.text == "{").count();
        assert_eq!((parens, braces), (3, 1));
    }
}
