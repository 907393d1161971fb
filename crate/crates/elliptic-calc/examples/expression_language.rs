//! The expression language: grammar, canonical printing, spanned errors.
//!
//! Expressions name spheres (`S2`), the point (`pt`), rank-table literals
//! (`{pi: {3: 2}, h: {0: 1, 3: 2}}`), products (`*` or `x`), and powers
//! (`^`). Run with `cargo run --example expression_language`.

use elliptic_calc::dsl::{elaborate, parse, ParseErrorKind};
use elliptic_calc::invariants::report;
use elliptic_calc::render::annotate_span;
use elliptic_calc::space::Strictness;

fn main() {
    // `^` binds tighter than `*`, so this is S2 * (S4^3) * S7.
    let ast = parse("S2 * S4^3 x S7").unwrap();
    println!("parsed:    S2 * S4^3 x S7");
    println!("canonical: {ast}");
    assert_eq!(ast.to_string(), "S2 * S4 ^ 3 * S7");

    let (space, warnings) = elaborate(&ast, Strictness::Strict).unwrap();
    assert!(warnings.is_empty());
    println!("{}", report(&space));
    println!();

    // `x` is always an operator, so sphere names can be packed tight.
    assert_eq!(parse("S2xS4").unwrap(), parse("S2 * S4").unwrap());

    // Parentheses override precedence; powers of products need them.
    let ast = parse("(S2 x S4) ^ 2").unwrap();
    assert_eq!(ast.to_string(), "(S2 * S4) ^ 2");

    // Literals carry their own rank tables and print canonically.
    let ast = parse("{pi: {3: 2}, h: {0: 1, 3: 2}} * S2").unwrap();
    assert_eq!(ast.to_string(), "{pi: {3: 2}, h: {0: 1, 3: 2}} * S2");

    // Round trip: printing then reparsing is the identity on the tree.
    let reparsed = parse(&ast.to_string()).unwrap();
    assert_eq!(reparsed, ast);
    println!("round trip: parse . print . parse = parse");
    println!();

    // Errors carry byte spans, rendered here as caret diagnostics.
    for input in [
        "S2 & S3",
        "S0 * S3",
        "(S2 * S4",
        "S2 ^ 2 ^ 3",
        "{pi: {3: 1, 3: 2}, h: {0: 1}}",
    ] {
        let err = parse(input).unwrap_err();
        println!(
            "{}",
            annotate_span(input, &format!("error: {err}"), err.span)
        );
    }

    // The span pins the offending token, not the whole input.
    let err = parse("S2 ^ 2 ^ 3").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::ChainedCaret);
    assert_eq!((err.span.start, err.span.end), (7, 8));
}
