//! Concrete syntax.
//!
//! Precedence, loosest first: `<->`/`==` (non-associative), `->` (right
//! associative), `|`, `&`, then the prefix operators `~`, `box`, `K`.
//! Atoms are `x<digits>`, `false`, `true`, and parenthesized formulas.
//! All abbreviations expand during parsing; the tree holds core
//! constructors only.

use super::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: found {found}, expected {}", expected.join(", "))]
pub struct ParseError {
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl ParseError {
    fn new(position: usize, found: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            position,
            found: found.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Arrow,
    Iff,
    StrictEq,
    Pipe,
    Amp,
    Tilde,
    LParen,
    RParen,
    BoxKw,
    KnowKw,
    FalseKw,
    TrueKw,
    Var(u32),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Arrow => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::StrictEq => "'=='".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::BoxKw => "'box'".into(),
            Tok::KnowKw => "'K'".into(),
            Tok::FalseKw => "'false'".into(),
            Tok::TrueKw => "'true'".into(),
            Tok::Var(i) => format!("variable x{i}"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            '~' => {
                toks.push((Tok::Tilde, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError::new(i, "'-'", &["'->'"]));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::Iff, i));
                    i += 3;
                } else {
                    return Err(ParseError::new(i, "'<'", &["'<->'"]));
                }
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::StrictEq, i));
                    i += 2;
                } else {
                    return Err(ParseError::new(i, "'='", &["'=='"]));
                }
            }
            _ if c.is_ascii_alphanumeric() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = match word {
                    "box" => Tok::BoxKw,
                    "K" => Tok::KnowKw,
                    "false" => Tok::FalseKw,
                    "true" => Tok::TrueKw,
                    _ => {
                        if let Some(digits) = word.strip_prefix('x') {
                            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                                let n: u32 = digits.parse().map_err(|_| {
                                    ParseError::new(start, format!("'{word}'"), &["variable index in range"])
                                })?;
                                Tok::Var(n)
                            } else {
                                return Err(ParseError::new(
                                    start,
                                    format!("'{word}'"),
                                    &["'x<digits>'", "'box'", "'K'", "'false'", "'true'"],
                                ));
                            }
                        } else {
                            return Err(ParseError::new(
                                start,
                                format!("'{word}'"),
                                &["'x<digits>'", "'box'", "'K'", "'false'", "'true'"],
                            ));
                        }
                    }
                };
                toks.push((tok, start));
            }
            _ => {
                return Err(ParseError::new(i, format!("'{c}'"), &["a formula token"]));
            }
        }
    }
    toks.push((Tok::Eof, bytes.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_pos(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(self.peek_pos(), self.peek().describe(), expected))
        }
    }

    // formula := imp ( ('<->' | '==') imp )?
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.imp()?;
        match self.peek() {
            Tok::Iff => {
                self.bump();
                let right = self.imp()?;
                if matches!(self.peek(), Tok::Iff | Tok::StrictEq) {
                    return Err(ParseError::new(
                        self.peek_pos(),
                        self.peek().describe(),
                        &["end of equivalence (chain '<->'/'==' with parentheses)"],
                    ));
                }
                Ok(Formula::iff(left, right))
            }
            Tok::StrictEq => {
                self.bump();
                let right = self.imp()?;
                if matches!(self.peek(), Tok::Iff | Tok::StrictEq) {
                    return Err(ParseError::new(
                        self.peek_pos(),
                        self.peek().describe(),
                        &["end of equivalence (chain '<->'/'==' with parentheses)"],
                    ));
                }
                Ok(Formula::equiv(left, right))
            }
            _ => Ok(left),
        }
    }

    // imp := disj ( '->' imp )?    right associative
    fn imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.imp()?;
            Ok(Formula::imp(left, right))
        } else {
            Ok(left)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::BoxKw => {
                self.bump();
                Ok(Formula::nec(self.unary()?))
            }
            Tok::KnowKw => {
                self.bump();
                Ok(Formula::know(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Var(i) => {
                self.bump();
                Ok(Formula::Var(i))
            }
            Tok::FalseKw => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::TrueKw => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, &["')'"])?;
                Ok(f)
            }
            other => Err(ParseError::new(
                self.peek_pos(),
                other.describe(),
                &["a variable", "'false'", "'true'", "'('", "'~'", "'box'", "'K'"],
            )),
        }
    }
}

/// Parse one formula; the whole input must be consumed.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    p.expect(Tok::Eof, &["end of input"])?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::super::Formula;
    use super::*;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn parses_precedence() {
        assert_eq!(
            parse("box x0 -> K x0").unwrap(),
            Formula::imp(Formula::nec(x(0)), Formula::know(x(0)))
        );
        assert_eq!(
            parse("x0 & x1 | x2").unwrap(),
            Formula::or(Formula::and(x(0), x(1)), x(2))
        );
        assert_eq!(
            parse("x0 -> x1 -> x2").unwrap(),
            Formula::imp(x(0), Formula::imp(x(1), x(2)))
        );
        assert_eq!(parse("~~x0").unwrap(), Formula::not(Formula::not(x(0))));
        assert_eq!(
            parse("box K x0").unwrap(),
            Formula::nec(Formula::know(x(0)))
        );
    }

    #[test]
    fn expands_abbreviations() {
        assert_eq!(parse("true").unwrap(), Formula::imp(Formula::Bottom, Formula::Bottom));
        assert_eq!(parse("~x0").unwrap(), Formula::imp(x(0), Formula::Bottom));
        assert_eq!(
            parse("x0 <-> x1").unwrap(),
            Formula::and(Formula::imp(x(0), x(1)), Formula::imp(x(1), x(0)))
        );
        let expanded = parse("x0 == ~~x0").unwrap();
        let nn = Formula::not(Formula::not(x(0)));
        assert_eq!(
            expanded,
            Formula::and(
                Formula::nec(Formula::imp(x(0), nn.clone())),
                Formula::nec(Formula::imp(nn, x(0)))
            )
        );
    }

    #[test]
    fn rejects_garbage_with_position() {
        let err = parse("x0 -> )").unwrap_err();
        assert_eq!(err.position, 6);
        assert!(err.expected.iter().any(|e| e.contains("variable")));

        let err = parse("x0 &").unwrap_err();
        assert_eq!(err.found, "end of input");

        let err = parse("boxx0").unwrap_err();
        assert_eq!(err.position, 0);

        assert!(parse("x0 <-> x1 <-> x2").is_err());
        assert!(parse("x0 = x1").is_err());
        assert!(parse("Kx0").is_err());
        assert!(parse("xa").is_err());
        assert!(parse("").is_err());
        assert!(parse("x0 x1").is_err());
    }

    #[test]
    fn whitespace_is_flexible() {
        assert_eq!(parse("  box    x0->x0 ").unwrap(), parse("box x0 -> x0").unwrap());
    }
}
