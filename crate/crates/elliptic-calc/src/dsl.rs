//! The space-expression language.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term { ("*" | "x") term }
//! term    := atom [ "^" UINT ]
//! atom    := SPHERE | "pt" | "(" expr ")" | literal
//! SPHERE  := "S" UINT                      (UINT >= 1)
//! literal := "{" "pi" ":" ranks "," "h" ":" ranks "}"
//! ranks   := "{" [ UINT ":" UINT { "," UINT ":" UINT } ] "}"
//! ```
//!
//! `x` is always a product operator, never part of a name, so `S2xS4` reads
//! as a product. `^` binds tighter than product and is non-associative:
//! `S2 ^ 2 ^ 3` is a parse error, write `(S2 ^ 2) ^ 3`. There is no wedge
//! operator — a wedge like S1 ∨ S2 has infinite total homotopy rank, so no
//! rank table in this model represents it.
//!
//! [`parse`] produces a [`SpaceExpr`] tree with byte spans for diagnostics;
//! [`elaborate`] folds a tree into validated [`EllipticRanks`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::space::{self, EllipticRanks, Strictness, ValidationError, Warning, MAX_DEGREE};

/// Inputs longer than this are rejected before lexing.
pub const MAX_INPUT_BYTES: usize = 1 << 20;

/// Byte range into the parsed input. `start == end` marks a position
/// (end-of-input errors).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> SourceSpan {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

/// Abstract syntax of a space expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Sphere(u64),
    Point,
    Literal(LiteralExpr),
    /// Invariant: at least one factor (the parser never builds fewer than
    /// two).
    Product(Vec<SpaceExpr>),
    Power(Box<SpaceExpr>, u64),
}

/// A raw rank-table literal. `label` names the space in reports (only
/// programmatic construction and the JSON form set it; the surface syntax
/// has no label field). `span` is where the literal sat in the source, kept
/// so elaboration errors can point at it; it is ignored by equality.
#[derive(Clone, Debug, Eq)]
pub struct LiteralExpr {
    pub pi: BTreeMap<u64, u64>,
    pub h: BTreeMap<u64, u64>,
    pub label: Option<String>,
    pub span: Option<SourceSpan>,
}

impl PartialEq for LiteralExpr {
    fn eq(&self, other: &Self) -> bool {
        self.pi == other.pi && self.h == other.h && self.label == other.label
    }
}

/// Canonical form: single-spaced operators, products parenthesized only
/// where the grammar requires it. Parsing the output of `Display` yields the
/// original tree back (for trees expressible in the grammar: products with
/// at least two factors and no literal labels).
impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Sphere(n) => write!(f, "S{n}"),
            SpaceExpr::Point => write!(f, "pt"),
            SpaceExpr::Literal(l) => write!(f, "{}", space::render_literal(&l.pi, &l.h)),
            SpaceExpr::Product(factors) => {
                if factors.is_empty() {
                    // Unreachable through the parser; kept total for
                    // hand-built trees.
                    return write!(f, "()");
                }
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    if matches!(factor, SpaceExpr::Product(_)) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            SpaceExpr::Power(base, n) => {
                if matches!(**base, SpaceExpr::Product(_) | SpaceExpr::Power(..)) {
                    write!(f, "({base}) ^ {n}")
                } else {
                    write!(f, "{base} ^ {n}")
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    InputTooLong,
    UnknownToken,
    /// A number does not fit in 64 bits.
    NumberTooLarge,
    /// Dimension, exponent, or literal degree above [`MAX_DEGREE`].
    CapExceeded,
    /// `S0`.
    SphereDimension,
    MissingCloseParen,
    /// Nothing where an expression was required: empty input or `()`.
    EmptyProduct,
    /// `^` applied to a power without parentheses.
    ChainedCaret,
    /// The same degree twice in one literal rank map.
    DuplicateDegree,
    UnexpectedToken,
    UnexpectedEnd,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl ParseError {
    fn new(kind: ParseErrorKind, message: impl Into<String>, span: SourceSpan) -> ParseError {
        ParseError {
            kind,
            message: message.into(),
            span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Sphere(u64),
    Point,
    Pi,
    H,
    Uint(u64),
    Times,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Sphere(n) => write!(f, "S{n}"),
            Tok::Point => write!(f, "pt"),
            Tok::Pi => write!(f, "pi"),
            Tok::H => write!(f, "h"),
            Tok::Uint(n) => write!(f, "{n}"),
            Tok::Times => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::Colon => write!(f, ":"),
            Tok::Comma => write!(f, ","),
        }
    }
}

#[derive(Clone, Debug)]
struct SpannedTok {
    tok: Tok,
    span: SourceSpan,
}

fn lex(input: &str) -> Result<Vec<SpannedTok>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        let simple = match c {
            '*' | 'x' => Some(Tok::Times),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            toks.push(SpannedTok {
                tok,
                span: SourceSpan::new(start, start + 1),
            });
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    end = i + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let span = SourceSpan::new(start, end);
            let value = parse_u64(&input[start..end], span)?;
            toks.push(SpannedTok {
                tok: Tok::Uint(value),
                span,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            // 'x' never joins a word: it is always the product operator, so
            // S2xS4 lexes as S2, x, S4.
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() && d != 'x' {
                    end = i + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let word = &input[start..end];
            let span = SourceSpan::new(start, end);
            let tok = match word {
                "pt" => Tok::Point,
                "pi" => Tok::Pi,
                "h" => Tok::H,
                _ => {
                    let digits = &word[1..];
                    if word.starts_with('S')
                        && !digits.is_empty()
                        && digits.bytes().all(|b| b.is_ascii_digit())
                    {
                        Tok::Sphere(parse_u64(digits, span)?)
                    } else {
                        return Err(ParseError::new(
                            ParseErrorKind::UnknownToken,
                            format!("unknown token `{word}`"),
                            span,
                        ));
                    }
                }
            };
            toks.push(SpannedTok { tok, span });
            continue;
        }
        return Err(ParseError::new(
            ParseErrorKind::UnknownToken,
            format!("unknown token `{c}`"),
            SourceSpan::new(start, start + c.len_utf8()),
        ));
    }
    Ok(toks)
}

fn parse_u64(digits: &str, span: SourceSpan) -> Result<u64, ParseError> {
    digits.parse().map_err(|_| {
        ParseError::new(
            ParseErrorKind::NumberTooLarge,
            format!("number `{digits}` does not fit in 64 bits"),
            span,
        )
    })
}

/// Parse an expression. Errors carry the byte span of the offending token
/// (or an empty span at the end of input).
pub fn parse(input: &str) -> Result<SpaceExpr, ParseError> {
    if input.len() > MAX_INPUT_BYTES {
        return Err(ParseError::new(
            ParseErrorKind::InputTooLong,
            format!(
                "input is {} bytes, maximum is {MAX_INPUT_BYTES}",
                input.len()
            ),
            SourceSpan::new(0, 0),
        ));
    }
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(ParseError::new(
            ParseErrorKind::EmptyProduct,
            "empty expression: expected a space expression",
            SourceSpan::new(0, 0),
        ));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        input_len: input.len(),
    };
    let expr = parser.expr()?;
    if let Some(t) = parser.peek() {
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken,
            format!("expected end of input, found `{}`", t.tok),
            t.span,
        ));
    }
    Ok(expr)
}

struct Parser {
    toks: Vec<SpannedTok>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&SpannedTok> {
        self.toks.get(self.pos)
    }

    fn advance(&mut self) -> Option<SpannedTok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> SourceSpan {
        SourceSpan::new(self.input_len, self.input_len)
    }

    fn unexpected_end(&self, expected: &str) -> ParseError {
        ParseError::new(
            ParseErrorKind::UnexpectedEnd,
            format!("unexpected end of input: expected {expected}"),
            self.end_span(),
        )
    }

    fn expr(&mut self) -> Result<SpaceExpr, ParseError> {
        let mut factors = vec![self.term()?];
        while matches!(self.peek(), Some(t) if t.tok == Tok::Times) {
            self.advance();
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            SpaceExpr::Product(factors)
        })
    }

    fn term(&mut self) -> Result<SpaceExpr, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(t) if t.tok == Tok::Caret) {
            return Ok(base);
        }
        self.advance();
        let (exponent, span) = self.expect_uint("an exponent after `^`")?;
        if exponent > MAX_DEGREE {
            return Err(ParseError::new(
                ParseErrorKind::CapExceeded,
                format!("exponent {exponent} exceeds the maximum {MAX_DEGREE}"),
                span,
            ));
        }
        if let Some(t) = self.peek() {
            if t.tok == Tok::Caret {
                return Err(ParseError::new(
                    ParseErrorKind::ChainedCaret,
                    "`^` is non-associative; parenthesize the inner power",
                    t.span,
                ));
            }
        }
        Ok(SpaceExpr::Power(Box::new(base), exponent))
    }

    fn atom(&mut self) -> Result<SpaceExpr, ParseError> {
        let Some(t) = self.advance() else {
            return Err(self.unexpected_end("a space expression"));
        };
        match t.tok {
            Tok::Sphere(0) => Err(ParseError::new(
                ParseErrorKind::SphereDimension,
                "sphere dimension must be ≥ 1",
                t.span,
            )),
            Tok::Sphere(n) if n > MAX_DEGREE => Err(ParseError::new(
                ParseErrorKind::CapExceeded,
                format!("sphere dimension {n} exceeds the maximum {MAX_DEGREE}"),
                t.span,
            )),
            Tok::Sphere(n) => Ok(SpaceExpr::Sphere(n)),
            Tok::Point => Ok(SpaceExpr::Point),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.advance() {
                    Some(t) if t.tok == Tok::RParen => Ok(inner),
                    Some(t) => Err(ParseError::new(
                        ParseErrorKind::MissingCloseParen,
                        format!("missing `)`: found `{}`", t.tok),
                        t.span,
                    )),
                    None => Err(ParseError::new(
                        ParseErrorKind::MissingCloseParen,
                        "missing `)` before end of input",
                        self.end_span(),
                    )),
                }
            }
            Tok::LBrace => self.literal(t.span),
            Tok::RParen => Err(ParseError::new(
                ParseErrorKind::EmptyProduct,
                "empty product `()`: expected a space expression",
                t.span,
            )),
            other => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                format!("expected a space expression, found `{other}`"),
                t.span,
            )),
        }
    }

    fn literal(&mut self, open: SourceSpan) -> Result<SpaceExpr, ParseError> {
        self.expect_tok(Tok::Pi, "`pi`")?;
        self.expect_tok(Tok::Colon, "`:`")?;
        let pi = self.ranks()?;
        self.expect_tok(Tok::Comma, "`,`")?;
        self.expect_tok(Tok::H, "`h`")?;
        self.expect_tok(Tok::Colon, "`:`")?;
        let h = self.ranks()?;
        let close = self.expect_tok(Tok::RBrace, "`}`")?;
        Ok(SpaceExpr::Literal(LiteralExpr {
            pi,
            h,
            label: None,
            span: Some(SourceSpan::new(open.start, close.end)),
        }))
    }

    fn ranks(&mut self) -> Result<BTreeMap<u64, u64>, ParseError> {
        self.expect_tok(Tok::LBrace, "`{`")?;
        let mut map = BTreeMap::new();
        if matches!(self.peek(), Some(t) if t.tok == Tok::RBrace) {
            self.advance();
            return Ok(map);
        }
        loop {
            let (degree, degree_span) = self.expect_uint("a degree")?;
            if degree > MAX_DEGREE {
                return Err(ParseError::new(
                    ParseErrorKind::CapExceeded,
                    format!("degree {degree} exceeds the maximum {MAX_DEGREE}"),
                    degree_span,
                ));
            }
            self.expect_tok(Tok::Colon, "`:`")?;
            let (rank, _) = self.expect_uint("a rank")?;
            if map.insert(degree, rank).is_some() {
                return Err(ParseError::new(
                    ParseErrorKind::DuplicateDegree,
                    format!("duplicate degree key `{degree}`"),
                    degree_span,
                ));
            }
            match self.advance() {
                Some(t) if t.tok == Tok::Comma => continue,
                Some(t) if t.tok == Tok::RBrace => return Ok(map),
                Some(t) => {
                    return Err(ParseError::new(
                        ParseErrorKind::UnexpectedToken,
                        format!("expected `,` or `}}`, found `{}`", t.tok),
                        t.span,
                    ))
                }
                None => return Err(self.unexpected_end("`,` or `}`")),
            }
        }
    }

    fn expect_tok(&mut self, want: Tok, describe: &str) -> Result<SourceSpan, ParseError> {
        match self.advance() {
            Some(t) if t.tok == want => Ok(t.span),
            Some(t) => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                format!("expected {describe}, found `{}`", t.tok),
                t.span,
            )),
            None => Err(self.unexpected_end(describe)),
        }
    }

    fn expect_uint(&mut self, describe: &str) -> Result<(u64, SourceSpan), ParseError> {
        match self.advance() {
            Some(t) => match t.tok {
                Tok::Uint(n) => Ok((n, t.span)),
                other => Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    format!("expected {describe}, found `{other}`"),
                    t.span,
                )),
            },
            None => Err(self.unexpected_end(describe)),
        }
    }
}

/// Elaboration failure: a validation error plus the span of the literal it
/// came from, when the tree remembers one.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{error}")]
pub struct ElaborateError {
    pub error: ValidationError,
    pub span: Option<SourceSpan>,
}

/// A table-level warning plus the span of the literal that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElaborateWarning {
    pub warning: Warning,
    pub span: Option<SourceSpan>,
}

impl fmt::Display for ElaborateWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.warning)
    }
}

/// Fold a tree into rank tables: spheres, the point, and literals at the
/// leaves; rank-table product and power at the nodes. Labels come out in
/// canonical printed form (unlabeled literals label themselves with their
/// canonical text).
pub fn elaborate(
    expr: &SpaceExpr,
    strictness: Strictness,
) -> Result<(EllipticRanks, Vec<ElaborateWarning>), ElaborateError> {
    let mut warnings = Vec::new();
    let ranks = elaborate_inner(expr, strictness, &mut warnings)?;
    Ok((ranks, warnings))
}

fn elaborate_inner(
    expr: &SpaceExpr,
    strictness: Strictness,
    warnings: &mut Vec<ElaborateWarning>,
) -> Result<EllipticRanks, ElaborateError> {
    match expr {
        SpaceExpr::Sphere(n) => {
            EllipticRanks::sphere(*n).map_err(|error| ElaborateError { error, span: None })
        }
        SpaceExpr::Point => Ok(EllipticRanks::point()),
        SpaceExpr::Literal(l) => {
            let (ranks, table_warnings) =
                EllipticRanks::from_literal(&l.pi, &l.h, l.label.as_deref(), strictness).map_err(
                    |error| ElaborateError {
                        error,
                        span: l.span,
                    },
                )?;
            warnings.extend(table_warnings.into_iter().map(|warning| ElaborateWarning {
                warning,
                span: l.span,
            }));
            Ok(ranks)
        }
        SpaceExpr::Product(factors) => {
            let ranks: Vec<EllipticRanks> = factors
                .iter()
                .map(|f| elaborate_inner(f, strictness, warnings))
                .collect::<Result<_, _>>()?;
            EllipticRanks::product(&ranks).map_err(|error| ElaborateError { error, span: None })
        }
        SpaceExpr::Power(base, n) => Ok(elaborate_inner(base, strictness, warnings)?.power(*n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ranks(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    fn literal_expr(pi: &[(u64, u64)], h: &[(u64, u64)]) -> SpaceExpr {
        SpaceExpr::Literal(LiteralExpr {
            pi: ranks(pi),
            h: ranks(h),
            label: None,
            span: None,
        })
    }

    #[test]
    fn parses_products() {
        assert_eq!(
            parse("S2 * S4").unwrap(),
            SpaceExpr::Product(vec![SpaceExpr::Sphere(2), SpaceExpr::Sphere(4)])
        );
        assert_eq!(parse("S2 * S4").unwrap(), parse("S2xS4").unwrap());
        assert_eq!(parse("S2 * S4").unwrap(), parse("  S2   x\tS4 ").unwrap());
    }

    #[test]
    fn parses_powers_and_grouping() {
        assert_eq!(
            parse("(S2 x S2) ^ 3").unwrap(),
            SpaceExpr::Power(
                Box::new(SpaceExpr::Product(vec![
                    SpaceExpr::Sphere(2),
                    SpaceExpr::Sphere(2)
                ])),
                3
            )
        );
        // ^ binds tighter than *.
        assert_eq!(
            parse("S2 * S4 ^ 3").unwrap(),
            SpaceExpr::Product(vec![
                SpaceExpr::Sphere(2),
                SpaceExpr::Power(Box::new(SpaceExpr::Sphere(4)), 3)
            ])
        );
        assert_eq!(
            parse("pt ^ 0").unwrap(),
            SpaceExpr::Power(Box::new(SpaceExpr::Point), 0)
        );
    }

    #[test]
    fn parses_literals() {
        let got = parse("{pi: {3: 1}, h: {0: 1, 3: 1}}").unwrap();
        assert_eq!(got, literal_expr(&[(3, 1)], &[(0, 1), (3, 1)]));
        let SpaceExpr::Literal(l) = &got else {
            panic!("expected a literal")
        };
        assert_eq!(l.span, Some(SourceSpan::new(0, 29)));
        assert_eq!(
            parse("{pi: {}, h: {0: 1}}").unwrap(),
            literal_expr(&[], &[(0, 1)])
        );
    }

    #[test]
    fn unknown_token_error() {
        let err = parse("S2 & S3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken);
        assert_eq!(err.span, SourceSpan::new(3, 4));
        assert!(err.message.contains('&'));

        let err = parse("foo").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken);
        assert_eq!(err.span, SourceSpan::new(0, 3));

        // Words never swallow 'x', so the unknown word here is `foo`, not
        // `fooxbar`.
        let err = parse("fooxbar").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(0, 3));

        let err = parse("S2 × S3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken);
        assert_eq!(err.span, SourceSpan::new(3, 5)); // multibyte ×
    }

    #[test]
    fn sphere_zero_error() {
        let err = parse("S0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SphereDimension);
        assert_eq!(err.message, "sphere dimension must be ≥ 1");
        assert_eq!(err.span, SourceSpan::new(0, 2));

        let err = parse("S3 * S0 ^ 2").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(5, 7));
    }

    #[test]
    fn missing_close_paren_error() {
        let err = parse("(S2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingCloseParen);
        assert_eq!(err.span, SourceSpan::new(3, 3));

        let err = parse("(S2 S4").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingCloseParen);
        assert_eq!(err.span, SourceSpan::new(4, 6));
    }

    #[test]
    fn empty_product_error() {
        let err = parse("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyProduct);
        assert_eq!(err.span, SourceSpan::new(0, 0));

        let err = parse("   ").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyProduct);

        let err = parse("()").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyProduct);
        assert_eq!(err.span, SourceSpan::new(1, 2));
    }

    #[test]
    fn chained_caret_error() {
        let err = parse("S2^2^3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ChainedCaret);
        assert_eq!(err.span, SourceSpan::new(4, 5));
        assert!(parse("(S2^2)^3").is_ok());
    }

    #[test]
    fn duplicate_degree_error() {
        let err = parse("{pi: {3: 1, 3: 2}, h: {0: 1}}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateDegree);
        assert_eq!(err.span, SourceSpan::new(12, 13));
        assert!(err.message.contains("duplicate degree key `3`"));

        let err = parse("{pi: {}, h: {0: 1, 0: 1}}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateDegree);
    }

    #[test]
    fn number_and_cap_errors() {
        let err = parse("S99999999999999999999999").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NumberTooLarge);

        let err = parse("S2000000").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CapExceeded);

        let err = parse("S2 ^ 2000000").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CapExceeded);
        assert_eq!(err.span, SourceSpan::new(5, 12));

        let err = parse("{pi: {2000000: 1}, h: {0: 1}}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CapExceeded);

        assert!(parse("S1000000").is_ok());
    }

    #[test]
    fn input_length_cap() {
        let long = "S2 * ".repeat(MAX_INPUT_BYTES / 5 + 1);
        let err = parse(&long).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InputTooLong);
    }

    #[test]
    fn trailing_and_misplaced_tokens() {
        let err = parse("S2 S3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(err.span, SourceSpan::new(3, 5));

        let err = parse("S2 *").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(err.span, SourceSpan::new(4, 4));

        let err = parse("* S2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);

        let err = parse("{h: {0: 1}, pi: {}}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);

        let err = parse("{pi: {}, h: {0: 1}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(parse("S2xS4^3").unwrap().to_string(), "S2 * S4 ^ 3");
        assert_eq!(parse("(S2 x S2) ^ 3").unwrap().to_string(), "(S2 * S2) ^ 3");
        assert_eq!(
            parse("(S2 * S3) * S4").unwrap().to_string(),
            "(S2 * S3) * S4"
        );
        assert_eq!(
            parse("{pi:{3:1},h:{0:1,3:1}}").unwrap().to_string(),
            "{pi: {3: 1}, h: {0: 1, 3: 1}}"
        );
        assert_eq!(parse("((S2))").unwrap().to_string(), "S2");
    }

    #[test]
    fn elaborates_to_rank_tables() {
        let (x, warnings) = elaborate(&parse("S2 * S4").unwrap(), Strictness::Strict).unwrap();
        let expected = EllipticRanks::product(&[
            EllipticRanks::sphere(2).unwrap(),
            EllipticRanks::sphere(4).unwrap(),
        ])
        .unwrap();
        assert_eq!(x, expected);
        assert_eq!(x.label(), "S2 * S4");
        assert!(warnings.is_empty());

        let (pt, _) = elaborate(&parse("pt ^ 7").unwrap(), Strictness::Strict).unwrap();
        assert_eq!(pt, EllipticRanks::point());
    }

    #[test]
    fn elaboration_labels_are_canonical() {
        let (x, _) = elaborate(&parse("(S2 x S2)^3").unwrap(), Strictness::Strict).unwrap();
        assert_eq!(x.label(), "(S2 * S2) ^ 3");
        let (y, _) = elaborate(
            &parse("{pi: {3: 1}, h: {0: 1, 3: 1}}").unwrap(),
            Strictness::Strict,
        )
        .unwrap();
        assert_eq!(y.label(), "{pi: {3: 1}, h: {0: 1, 3: 1}}");
    }

    #[test]
    fn elaboration_propagates_validation_errors_with_spans() {
        let input = "S3 * {pi: {2: 5}, h: {0: 1}}";
        let err = elaborate(&parse(input).unwrap(), Strictness::Permissive).unwrap_err();
        assert!(matches!(
            err.error,
            ValidationError::PointMustBeTrivial { .. }
        ));
        assert_eq!(err.span, Some(SourceSpan::new(5, 28)));
        assert_eq!(&input[5..28], "{pi: {2: 5}, h: {0: 1}}");
    }

    #[test]
    fn elaboration_respects_strictness() {
        let expr = parse("{pi: {2: 9}, h: {0: 1, 2: 1}}").unwrap();
        let err = elaborate(&expr, Strictness::Strict).unwrap_err();
        assert!(matches!(err.error, ValidationError::HilaliViolating { .. }));
        let (x, warnings) = elaborate(&expr, Strictness::Permissive).unwrap();
        assert_eq!(x.pi_total().to_string(), "9");
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].span.is_some());
        assert!(matches!(warnings[0].warning, Warning::MirrorFails { .. }));
    }

    #[test]
    fn power_elaborates_like_repeated_product() {
        for n in 1..=6u64 {
            let base = parse("S2 * S5").unwrap();
            let power = SpaceExpr::Power(Box::new(base.clone()), n);
            let product = SpaceExpr::Product(vec![base; n as usize]);
            let (via_power, _) = elaborate(&power, Strictness::Strict).unwrap();
            let (via_product, _) = elaborate(&product, Strictness::Strict).unwrap();
            assert_eq!(via_power, via_product, "n = {n}");
        }
    }

    fn arb_rank_map() -> impl Strategy<Value = BTreeMap<u64, u64>> {
        prop::collection::btree_map(0u64..=30, 0u64..=5, 0..4)
    }

    fn arb_expr() -> impl Strategy<Value = SpaceExpr> {
        let leaf = prop_oneof![
            (1u64..=50).prop_map(SpaceExpr::Sphere),
            Just(SpaceExpr::Point),
            (arb_rank_map(), arb_rank_map()).prop_map(|(pi, h)| {
                SpaceExpr::Literal(LiteralExpr {
                    pi,
                    h,
                    label: None,
                    span: None,
                })
            }),
        ];
        leaf.prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..=4).prop_map(SpaceExpr::Product),
                (inner, 0u64..=9).prop_map(|(base, n)| SpaceExpr::Power(Box::new(base), n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(expr in arb_expr()) {
            let printed = expr.to_string();
            let reparsed = parse(&printed);
            prop_assert_eq!(reparsed.as_ref(), Ok(&expr), "printed as {}", printed);
        }

        #[test]
        fn parse_never_panics_and_spans_stay_inside(input in "\\PC{0,60}") {
            match parse(&input) {
                Ok(expr) => {
                    // Reparsing the canonical form is stable.
                    let printed = expr.to_string();
                    prop_assert_eq!(parse(&printed), Ok(expr));
                }
                Err(e) => {
                    prop_assert!(e.span.start <= e.span.end);
                    prop_assert!(e.span.end <= input.len());
                    prop_assert!(!e.message.is_empty());
                }
            }
        }
    }
}
