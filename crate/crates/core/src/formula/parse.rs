//! Recursive-descent parser.
//!
//! ```text
//! imp     := or ( "->" imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ( "~" | "!" ) unary | postfix
//! postfix := primary ( "^" k | "^(" k ")" )*
//! primary := ident | "(" imp ")"
//! ```
//!
//! `¬ ∧ ∨ →` are accepted as aliases. `!` is strong negation for the `n`
//! passed to [`parse`].

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Neg,
    Strong,
    And,
    Or,
    Imp,
    Caret,
    Minus,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(k) => format!("number {k}"),
            Tok::End => "end of input".into(),
            Tok::Neg => "`~`".into(),
            Tok::Strong => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let tok = match c {
            '~' | '¬' => Tok::Neg,
            '!' => Tok::Strong,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                it.next();
                if let Some(&(_, '>')) = it.peek() {
                    it.next();
                    out.push((i, Tok::Imp));
                } else {
                    out.push((i, Tok::Minus));
                }
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut end = i;
                while let Some(&(j, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    it.next();
                }
                let k = text[i..end].parse().map_err(|_| ParseError {
                    offset: i,
                    message: "exponent out of range".into(),
                })?;
                out.push((i, Tok::Num(k)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = i;
                while let Some(&(j, d)) = it.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    end = j + 1;
                    it.next();
                }
                out.push((i, Tok::Ident(text[i..end].to_string())));
                continue;
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        it.next();
        out.push((i, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    n: u32,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Neg => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Strong => {
                self.bump();
                Ok(self.unary()?.strong_neg(self.n))
            }
            _ => self.postfix(),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(k) => {
                if k > u32::MAX as u64 {
                    return self.error("exponent out of range");
                }
                self.bump();
                Ok(k as u32)
            }
            Tok::Minus => self.error("negative exponent"),
            other => self.error(format!("expected exponent, found {}", other.describe())),
        }
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            if *self.peek() == Tok::LParen {
                self.bump();
                let k = self.exponent()?;
                self.expect(Tok::RParen)?;
                f = f.bounded_power(k);
            } else {
                let k = self.exponent()?;
                f = f.power(k);
            }
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::var(&name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.imp()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            other => self.error(format!("expected formula, found {}", other.describe())),
        }
    }
}

/// Parses one formula, expanding derived operators; `n` fixes `!`.
pub fn parse(text: &str, n: u32) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        n,
    };
    let f = p.imp()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(f)
}

/// Parses a `;`-separated list; empty entries are skipped. Error offsets are
/// relative to the whole input.
pub fn parse_list(text: &str, n: u32) -> Result<Vec<Formula>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in text.split(';') {
        if !part.trim().is_empty() {
            out.push(parse(part, n).map_err(|e| ParseError {
                offset: e.offset + start,
                message: e.message,
            })?);
        }
        start += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn atoms_and_towers() {
        assert_eq!(parse("p", 1).unwrap(), v("p"));
        assert_eq!(
            parse("p^1", 1).unwrap(),
            Formula::neg(Formula::and(v("p"), Formula::neg(v("p"))))
        );
        assert_eq!(parse("p^0", 1).unwrap(), v("p"));
        assert_eq!(
            parse("p^(2)", 2).unwrap(),
            Formula::and(v("p").power(1), v("p").power(2))
        );
        assert_eq!(parse("p^(0)", 2).unwrap(), v("p"));
        assert_eq!(
            parse("!p", 1).unwrap(),
            Formula::and(Formula::neg(v("p")), v("p").power(1))
        );
        assert_eq!(parse("p^1^1", 1).unwrap(), v("p").power(2));
    }

    #[test]
    fn precedence_and_associativity() {
        let (p, q, r) = (v("p"), v("q"), v("r"));
        assert_eq!(
            parse("p -> q -> r", 1).unwrap(),
            Formula::imp(p.clone(), Formula::imp(q.clone(), r.clone()))
        );
        assert_eq!(
            parse("p & q & r", 1).unwrap(),
            Formula::and(Formula::and(p.clone(), q.clone()), r.clone())
        );
        assert_eq!(
            parse("~p & q | r -> p", 1).unwrap(),
            Formula::imp(
                Formula::or(Formula::and(Formula::neg(p.clone()), q.clone()), r.clone()),
                p.clone()
            )
        );
        assert_eq!(parse("~p^1", 1).unwrap(), Formula::neg(p.power(1)));
        assert_eq!(parse("(~p)^1", 1).unwrap(), Formula::neg(p.clone()).power(1));
        assert_eq!(
            parse("¬p ∧ q → p ∨ q", 1).unwrap(),
            parse("~p & q -> p | q", 1).unwrap()
        );
    }

    #[test]
    fn identifiers() {
        assert_eq!(parse("x_1", 1).unwrap(), v("x_1"));
        assert_eq!(parse("Abc9", 1).unwrap(), v("Abc9"));
        assert!(parse("_x", 1).is_err());
        assert!(parse("1p", 1).is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse("p & ", 1).unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse("p^-1", 1).unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("negative"));
        let e = parse("p^(-2)", 1).unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse("(p", 1).unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse("p q", 1).unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse("p # q", 1).unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse("", 1).is_err());
        let e = parse("p ∧ #", 1).unwrap_err();
        assert_eq!(e.offset, 6);
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("p; ~p", 1).unwrap(), vec![v("p"), Formula::neg(v("p"))]);
        assert!(parse_list("", 1).unwrap().is_empty());
        let e = parse_list("p; q &", 1).unwrap_err();
        assert_eq!(e.offset, 6);
    }
}
