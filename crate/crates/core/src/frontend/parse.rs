//! Expression grammar:
//!
//! ```text
//! rational ::= int | int "/" int
//! atom     ::= rational | generator ["^" int]
//! term     ::= atom {"*" atom}
//! expr     ::= ["-"] term {("+" | "-") term}
//! ```
//!
//! Generator tokens are a family name followed by a 1-based index
//! (`x1`, `p2`, `xi3`, `th1`, `e2`, `eps1`). Whitespace is insignificant.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded_algebra::{GeneratorTable, Polynomial, Rational, Slot};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let col = pos + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '/' => Some(Token::Slash),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((col, tok));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((col, Token::Int(s.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                i += 1;
            }
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((col, Token::Ident(s)));
        } else {
            return Err(Error::Parse {
                pos: col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    table: &'a Arc<GeneratorTable>,
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.at += 1;
                    acc += &self.term()?;
                }
                Some(Token::Minus) => {
                    self.at += 1;
                    acc -= &self.term()?;
                }
                None => return Ok(acc),
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut coef = Rational::one();
        let mut slots = Vec::new();
        self.atom(&mut coef, &mut slots)?;
        while self.peek() == Some(&Token::Star) {
            self.at += 1;
            self.atom(&mut coef, &mut slots)?;
        }
        Ok(Polynomial::from_slots(self.table, coef, &slots))
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token::Int(_)) => match self.next() {
                Some(Token::Int(v)) => Ok(v),
                _ => unreachable!(),
            },
            _ => self.err("expected an integer"),
        }
    }

    fn atom(&mut self, coef: &mut Rational, slots: &mut Vec<Slot>) -> Result<()> {
        match self.peek() {
            Some(Token::Int(_)) => {
                let n = self.int()?;
                let value = if self.peek() == Some(&Token::Slash) {
                    self.at += 1;
                    let d = self.int()?;
                    if d.is_zero() {
                        return self.err("division by zero");
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                *coef *= value;
                Ok(())
            }
            Some(Token::Ident(name)) => {
                let name = name.clone();
                let start = self.pos();
                let slot = self.table.lookup(&name).map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("unknown generator `{name}`"),
                })?;
                self.at += 1;
                let exp = if self.peek() == Some(&Token::Caret) {
                    self.at += 1;
                    let e = self.int()?;
                    u32::try_from(e).or_else(|_| self.err("exponent too large"))?
                } else {
                    1
                };
                if matches!(slot, Slot::Odd(_)) && exp > 1 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("odd generator `{name}` cannot carry exponent {exp}"),
                    });
                }
                slots.extend(std::iter::repeat_n(slot, exp as usize));
                Ok(())
            }
            Some(_) => self.err("expected a number or a generator"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a normalized polynomial over `table`.
pub fn parse_expression(table: &Arc<GeneratorTable>, text: &str) -> Result<Polynomial> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse {
            pos: 1,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        table,
        tokens,
        at: 0,
        end: text.len() + 1,
    };
    p.expr()
}
