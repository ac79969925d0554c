//! Recursive-descent parser for the knowledge-base formula language.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*          left-associative
//! imp     := or ("->" or)*             right-associative
//! or      := and ("|" and)*
//! and     := not ("&" not)*
//! not     := "!" not | atom | "(" formula ")" | "true" | "false"
//! atom    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use crate::error::ParseError;
use crate::logic::formula::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn error(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos), ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match c {
            '!' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                (Tok::Iff, 3)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                (tok, j - start)
            }
            other => return Err(error(pos, format!("unknown token `{other}`"))),
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    Ok((out, Pos { line, column: col }))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.imp()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.not()?;
        while self.eat(&Tok::And) {
            let rhs = self.not()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(error(pos, "unexpected end of input, expected a formula"));
        };
        self.at += 1;
        match tok {
            Tok::Not => Ok(self.not()?.negate()),
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Ident(name) => Ok(Formula::Atom(Atom::new(&name))),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    let pos = self.pos();
                    return Err(match self.peek() {
                        Some(t) => error(pos, format!("expected `)`, found {}", t.describe())),
                        None => error(pos, "unexpected end of input, expected `)`"),
                    });
                }
                Ok(inner)
            }
            other => Err(error(
                pos,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }
}

/// Parses one formula occupying the whole of `text`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end };
    let f = p.iff()?;
    if let Some(tok) = p.peek() {
        return Err(error(
            p.pos(),
            format!("unexpected {} after formula", tok.describe()),
        ));
    }
    Ok(f)
}

/// Parses `text` as if it started at `line` of a larger file, so reported
/// positions point into that file.
pub(crate) fn parse_formula_at(text: &str, line: usize) -> Result<Formula, ParseError> {
    parse_formula(text).map_err(|mut e| {
        e.line += line - 1;
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn precedence_binds_not_tightest() {
        assert_eq!(p("!A | B"), a("A").negate().or(a("B")));
        assert_eq!(p("A -> (B & C)"), a("A").implies(a("B").and(a("C"))));
        assert_eq!(p("A | B & C"), a("A").or(a("B").and(a("C"))));
        assert_eq!(p("A <-> B -> C"), a("A").iff(a("B").implies(a("C"))));
    }

    #[test]
    fn associativity() {
        assert_eq!(p("A -> B -> C"), a("A").implies(a("B").implies(a("C"))));
        assert_eq!(p("A & B & C"), a("A").and(a("B")).and(a("C")));
        assert_eq!(p("A <-> B <-> C"), a("A").iff(a("B")).iff(a("C")));
    }

    #[test]
    fn constants_comments_and_whitespace() {
        assert_eq!(
            p("  true | false # trailing\n"),
            Formula::True.or(Formula::False)
        );
        assert_eq!(p("!!x_1"), a("x_1").negate().negate());
    }

    #[test]
    fn incomplete_input_is_a_syntax_error() {
        let e = parse_formula("A &").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        assert!(e.message.contains("end of input"), "{e}");
    }

    #[test]
    fn reports_unknown_token_position() {
        let e = parse_formula("A &\n  $B").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown token"));
    }

    #[test]
    fn rejects_trailing_and_unbalanced() {
        assert!(parse_formula("A B").is_err());
        assert!(parse_formula("(A | B").is_err());
        assert!(parse_formula("A)").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("A - B").is_err());
        assert!(parse_formula("->").is_err());
    }

    #[test]
    fn file_line_offset() {
        let e = parse_formula_at("A |", 7).unwrap_err();
        assert_eq!(e.line, 7);
    }
}
