mod common;

use common::{ENGINEER, IF_NULL, PERSON, WHILE_SUM};
use finegrain_core::emit::render_fragment;
use finegrain_core::track::similarity_of;
use finegrain_core::{extract, render_method, Metric, RenderConfig, SimilarityScore};

fn no_doc(mut cfg: RenderConfig) -> RenderConfig {
    cfg.include_javadoc = false;
    cfg
}

fn method_score(before: &str, after: &str, a: usize, b: usize, cfg: RenderConfig) -> (u64, u64) {
    let x = extract(before.as_bytes()).unwrap();
    let y = extract(after.as_bytes()).unwrap();
    let s = similarity_of(&render_method(&x.methods[a], &cfg), &render_method(&y.methods[b], &cfg), Metric::Lines);
    s.parts()
}

#[test]
fn renamed_accessors_keep_most_lines() {
    let cfg = no_doc(RenderConfig::tokens(true, false));
    assert_eq!(method_score(PERSON, ENGINEER, 0, 0, cfg), (8, 10));
    assert_eq!(method_score(PERSON, ENGINEER, 1, 1, cfg), (11, 15));
}

// The getter's `int` return type and the setter's `int` parameter render
// as identical lines, so they share one line more than the four
// parens/braces plus `public`.
#[test]
fn getter_against_renamed_setter() {
    assert_eq!(method_score(PERSON, ENGINEER, 0, 1, no_doc(RenderConfig::tokens(true, false))), (6, 10));
    assert_eq!(method_score(PERSON, ENGINEER, 0, 1, no_doc(RenderConfig::tokens(true, true))), (2, 6));
}

#[test]
fn plain_accessors_share_only_the_closing_brace() {
    let cfg = no_doc(RenderConfig::plain());
    assert_eq!(method_score(PERSON, ENGINEER, 0, 0, cfg), (1, 3));
    assert_eq!(method_score(PERSON, ENGINEER, 0, 1, cfg), (1, 3));
}

fn fragment_score(cfg: RenderConfig) -> SimilarityScore {
    let a = render_fragment(IF_NULL, &cfg).unwrap();
    let b = render_fragment(WHILE_SUM, &cfg).unwrap();
    similarity_of(&a, &b, Metric::Lines)
}

#[test]
fn unrelated_statements_across_modes() {
    assert_eq!(fragment_score(RenderConfig::plain()).parts(), (1, 3));
    assert_eq!(fragment_score(RenderConfig::tokens(false, false)).parts(), (5, 12));
    assert_eq!(fragment_score(RenderConfig::tokens(true, false)).parts(), (0, 12));
}

#[test]
fn tagged_statement_lines() {
    let out = render_fragment(IF_NULL, &RenderConfig::tokens(true, false)).unwrap();
    assert_eq!(
        String::from_utf8(out).unwrap(),
        "if\n( IF_COND\na\n==\nnull\n) IF_COND\n{ IF\nreturn\n-\n1\n; RETURN\n} IF\n"
    );
}

#[test]
fn setter_file_content() {
    let ex = extract(PERSON.as_bytes()).unwrap();
    let out = render_method(&ex.methods[1], &no_doc(RenderConfig::tokens(true, false)));
    assert_eq!(
        String::from_utf8(out).unwrap(),
        "public\nvoid\nsetLength\n( METHOD_PARAMS\nint\nlength\n) METHOD_PARAMS\n{ METHOD_BODY\nthis\n.\nlength\n=\nlength\n; EXPRESSION\n} METHOD_BODY\n"
    );
}
