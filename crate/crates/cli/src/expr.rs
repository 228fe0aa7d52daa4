//! Bundle expressions.
//!
//! ```text
//! input  := sum [ "on" "P" <n> ]
//! sum    := term { "(+)" term }
//! term   := [ coeff "*" ] atom
//! coeff  := <int> [ "/" <int> ]
//! atom   := "S" "[" ints "]" | "O" "(" int ")" | "push" "(" ints ")"
//!         | "dual" "(" sum ")" | "twist" "(" sum "," int ")" | "(" sum ")"
//! ```
//!
//! Whitespace is insignificant. The ambient dimension comes from the `on`
//! clause or, failing that, from the first term that fixes it; `O(t)` alone
//! needs the clause.

use std::fmt;

use num_rational::BigRational;
use river_banks::kunneth::{pushforward_table, MultiDegree};
use river_banks::{CohomologyTable, GenPartition};

use crate::CliError;

/// Byte range of a subterm in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Schur(Vec<i64>),
    Line(i64),
    Push(Vec<i64>),
    Dual(Box<BundleExpr>),
    Twist(Box<BundleExpr>, i64),
    Sum(Vec<BundleExpr>),
    Multiple(BigRational, Box<BundleExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleExpr {
    pub node: Node,
    pub span: Span,
}

/// A parsed expression together with its ambient `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub expr: BundleExpr,
    pub n: usize,
    source: String,
}

impl Parsed {
    pub fn to_table(&self) -> Result<CohomologyTable, CliError> {
        build(&self.expr, self.n)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match &self.node {
            Node::Schur(p) => write!(f, "S[{}]", list(p)),
            Node::Line(t) => write!(f, "O({t})"),
            Node::Push(a) => write!(f, "push({})", list(a)),
            Node::Dual(e) => write!(f, "dual({e})"),
            Node::Twist(e, t) => write!(f, "twist({e}, {t})"),
            Node::Sum(ts) => {
                let parts: Vec<String> = ts.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" (+) "))
            }
            Node::Multiple(c, e) => match e.node {
                Node::Sum(_) => write!(f, "{c}*({e})"),
                _ => write!(f, "{c}*{e}"),
            },
        }
    }
}

// ----- lexer ---------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Star,
    Slash,
    Minus,
    DirectSum,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(v) => write!(f, "'{v}'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::DirectSum => write!(f, "'(+)'"),
        }
    }
}

/// 1-based line and column of a byte offset.
pub fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, CliError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'-' => Some(Tok::Minus),
            _ => None,
        };
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if let Some(t) = single {
            out.push((t, Span { start, end: i + 1 }));
            i += 1;
        } else if c == b'(' {
            // "(+)" with optional inner whitespace is the direct-sum operator
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'+' {
                j += 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b')' {
                    out.push((Tok::DirectSum, Span { start, end: j + 1 }));
                    i = j + 1;
                    continue;
                }
                return Err(syntax(text, j, "expected ')' to close '(+)'"));
            }
            out.push((Tok::LParen, Span { start, end: i + 1 }));
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i].parse().map_err(|_| syntax(text, start, "integer out of range"))?;
            out.push((Tok::Int(v), Span { start, end: i }));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), Span { start, end: i }));
        } else {
            let ch = text[start..].chars().next().unwrap();
            if ch == '⊕' {
                out.push((Tok::DirectSum, Span { start, end: i + ch.len_utf8() }));
                i += ch.len_utf8();
                continue;
            }
            return Err(syntax(text, start, &format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

fn syntax(text: &str, offset: usize, message: &str) -> CliError {
    let (line, column) = position(text, offset);
    CliError::Syntax { line, column, message: message.to_string() }
}

// ----- parser --------------------------------------------------------------

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |(_, s)| s.start)
    }

    fn last_end(&self) -> usize {
        self.pos.checked_sub(1).map_or(0, |p| self.toks[p].1.end)
    }

    fn err(&self, message: impl Into<String>) -> CliError {
        syntax(self.text, self.offset(), &message.into())
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".to_string(), ToString::to_string)
    }

    fn expect(&mut self, want: Tok) -> Result<(), CliError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {want}, found {}", self.found())))
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.err(format!("expected an integer, found {}", self.found()))),
        }
    }

    fn int_list(&mut self, close: Tok) -> Result<Vec<i64>, CliError> {
        let mut out = vec![self.int()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.int()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn sum(&mut self) -> Result<BundleExpr, CliError> {
        let start = self.offset();
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::DirectSum) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        if terms.len() == 1 {
            return Ok(terms.pop().unwrap());
        }
        Ok(BundleExpr { node: Node::Sum(terms), span: Span { start, end: self.last_end() } })
    }

    fn term(&mut self) -> Result<BundleExpr, CliError> {
        let start = self.offset();
        if matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Minus)) {
            let num = self.int()?;
            let mut den = 1;
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                den = self.int()?;
                if den == 0 {
                    return Err(self.err("zero denominator"));
                }
            }
            self.expect(Tok::Star)?;
            let inner = self.atom()?;
            let c = BigRational::new(num.into(), den.into());
            return Ok(BundleExpr {
                node: Node::Multiple(c, Box::new(inner)),
                span: Span { start, end: self.last_end() },
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BundleExpr, CliError> {
        let start = self.offset();
        let node = match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                return Ok(inner);
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "S" => {
                        self.expect(Tok::LBracket)?;
                        Node::Schur(self.int_list(Tok::RBracket)?)
                    }
                    "O" => {
                        self.expect(Tok::LParen)?;
                        let t = self.int()?;
                        self.expect(Tok::RParen)?;
                        Node::Line(t)
                    }
                    "push" => {
                        self.expect(Tok::LParen)?;
                        Node::Push(self.int_list(Tok::RParen)?)
                    }
                    "dual" => {
                        self.expect(Tok::LParen)?;
                        let inner = self.sum()?;
                        self.expect(Tok::RParen)?;
                        Node::Dual(Box::new(inner))
                    }
                    "twist" => {
                        self.expect(Tok::LParen)?;
                        let inner = self.sum()?;
                        self.expect(Tok::Comma)?;
                        let t = self.int()?;
                        self.expect(Tok::RParen)?;
                        Node::Twist(Box::new(inner), t)
                    }
                    _ => {
                        self.pos -= 1;
                        return Err(
                            self.err(format!("unknown constructor '{name}' (expected S, O, push, dual or twist)"))
                        );
                    }
                }
            }
            _ => return Err(self.err(format!("expected a bundle expression, found {}", self.found()))),
        };
        Ok(BundleExpr { node, span: Span { start, end: self.last_end() } })
    }

    /// `on P<n>`, written `P3`, `P 3` or `P^3`.
    fn ambient(&mut self) -> Result<Option<usize>, CliError> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == "on" => self.pos += 1,
            None => return Ok(None),
            _ => return Err(self.err(format!("expected '(+)', 'on' or end of input, found {}", self.found()))),
        }
        let n = match self.peek().cloned() {
            Some(Tok::Ident(p)) if p == "P" => {
                self.pos += 1;
                self.int()?
            }
            Some(Tok::Ident(p)) if p.starts_with('P') && p[1..].chars().all(|c| c.is_ascii_digit()) && p.len() > 1 => {
                self.pos += 1;
                p[1..].parse().map_err(|_| self.err("bad dimension"))?
            }
            _ => return Err(self.err(format!("expected 'P<n>', found {}", self.found()))),
        };
        if n < 1 {
            return Err(syntax(self.text, self.last_end().saturating_sub(1), "ambient dimension must be at least 1"));
        }
        if self.peek().is_some() {
            return Err(self.err(format!("unexpected {} after the ambient clause", self.found())));
        }
        Ok(Some(n as usize))
    }
}

fn strip_caret(text: &str) -> String {
    // `P^3` reads as `P 3`; keep offsets by substituting a space
    text.replace("P^", "P ")
}

/// Dimension fixed by the subterm itself, if any.
fn intrinsic_n(e: &BundleExpr) -> Option<(usize, Span)> {
    match &e.node {
        Node::Schur(p) | Node::Push(p) => Some((p.len(), e.span)),
        Node::Line(_) => None,
        Node::Dual(inner) | Node::Twist(inner, _) | Node::Multiple(_, inner) => intrinsic_n(inner),
        Node::Sum(ts) => ts.iter().find_map(intrinsic_n),
    }
}

fn check_dims(e: &BundleExpr, n: usize, text: &str) -> Result<(), CliError> {
    match &e.node {
        Node::Schur(p) | Node::Push(p) if p.len() != n => Err(CliError::Dimension {
            subterm: text[e.span.start..e.span.end].to_string(),
            position: position(text, e.span.start),
            expected: n,
            got: p.len(),
        }),
        Node::Dual(inner) | Node::Twist(inner, _) | Node::Multiple(_, inner) => check_dims(inner, n, text),
        Node::Sum(ts) => ts.iter().try_for_each(|t| check_dims(t, n, text)),
        _ => Ok(()),
    }
}

pub fn parse_expr(text: &str) -> Result<Parsed, CliError> {
    let normalized = strip_caret(text);
    let mut p = Parser { text, toks: lex(&normalized)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(syntax(text, 0, "empty expression"));
    }
    let expr = p.sum()?;
    let ambient = p.ambient()?;
    let n = match (ambient, intrinsic_n(&expr)) {
        (Some(n), _) => n,
        (None, Some((n, _))) => n,
        (None, None) => {
            return Err(syntax(text, text.len(), "cannot infer the ambient dimension; add 'on P<n>'"));
        }
    };
    check_dims(&expr, n, text)?;
    Ok(Parsed { expr, n, source: text.to_string() })
}

fn build(e: &BundleExpr, n: usize) -> Result<CohomologyTable, CliError> {
    Ok(match &e.node {
        Node::Schur(p) => CohomologyTable::bott(GenPartition::new(p.clone())?),
        Node::Line(t) => CohomologyTable::line_bundle(n, *t),
        Node::Push(a) => pushforward_table(&MultiDegree::new(a.clone())?),
        Node::Dual(inner) => build(inner, n)?.dual(),
        Node::Twist(inner, t) => build(inner, n)?.twist(*t),
        Node::Sum(ts) => {
            let mut acc = build(&ts[0], n)?;
            for t in &ts[1..] {
                acc = acc.direct_sum(&build(t, n)?)?;
            }
            acc
        }
        Node::Multiple(c, inner) => build(inner, n)?.scale(c.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use river_banks::ColRange;

    #[test]
    fn single_term() {
        let p = parse_expr("S[1,0] on P2").unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.expr.node, Node::Schur(vec![1, 0]));
    }

    #[test]
    fn pushforward_is_kunneth() {
        let p = parse_expr("push(4,1,-1) on P3").unwrap();
        let t = p.to_table().unwrap();
        assert_eq!(t.entry_int(3, -7).unwrap(), 70.into());
    }

    #[test]
    fn sum_node() {
        let p = parse_expr("dual(S[2,1,0]) (+) 2*O(-1) on P3").unwrap();
        let Node::Sum(ts) = &p.expr.node else { panic!("{:?}", p.expr) };
        assert_eq!(ts.len(), 2);
        assert!(matches!(ts[1].node, Node::Multiple(_, _)));
        assert_eq!(p.expr.to_string(), "dual(S[2,1,0]) (+) 2*O(-1)");
        let t = p.to_table().unwrap();
        let want = CohomologyTable::bott("2,1,0".parse().unwrap())
            .dual()
            .direct_sum(&CohomologyTable::line_bundle(3, -1).scale(BigRational::from_integer(2.into())))
            .unwrap();
        assert!(t.entries_equal(&want, ColRange::new(-8, 8)).unwrap());
    }

    #[test]
    fn whitespace_and_spellings() {
        let a = parse_expr("twist( S[ 2 , 0 ] ,-1 )( + )O(0)on P^2").unwrap();
        let b = parse_expr("twist(S[2,0],-1) (+) O(0) on P 2").unwrap();
        assert_eq!(a.expr.to_string(), b.expr.to_string());
        assert_eq!((a.n, a.to_table().is_ok()), (b.n, true));
        assert_eq!(parse_expr("S[1,0]").unwrap().n, 2);
        assert_eq!(parse_expr("1/2 * (S[1,0] (+) O(1))").unwrap().n, 2);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("S[1,0] (+) Q(2) on P2") {
            Err(CliError::Syntax { line: 1, column: 12, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_expr("S[1,0]\n  (+) O(2 on P2") {
            Err(CliError::Syntax { line: 2, column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("O(1)"), Err(CliError::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(CliError::Syntax { .. })));
        assert!(matches!(parse_expr("S[1,0] on P0"), Err(CliError::Syntax { .. })));
    }

    #[test]
    fn dimension_mismatch_names_subterm() {
        match parse_expr("S[1,0] (+) push(1,2,3)") {
            Err(CliError::Dimension { subterm, expected: 2, got: 3, position }) => {
                assert_eq!(subterm, "push(1,2,3)");
                assert_eq!(position, (1, 12));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("S[1,0] on P3"), Err(CliError::Dimension { .. })));
        assert!(matches!(parse_expr("S[0,1]").unwrap().to_table(), Err(CliError::Core(_))));
    }
}
