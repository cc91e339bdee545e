//! Recursive-descent parser.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= '-'? INT | '(' '-'? INT ')'
//! atom    := NUMBER | NUMBER 'i' | IDENT | IDENT '(' sum ')' | '(' sum ')'
//! ```

use super::{Expr, Func, Var};
use crate::C64;
use thiserror::Error;

/// Error positions are 1-based byte offsets into the input; an unexpected
/// end of input is reported one past the last byte.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the token and the 0-based offset where it starts.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            let mut end = self.pos;
            while end < self.src.len() && (self.src[end].is_ascii_digit() || self.src[end] == b'.') {
                end += 1;
            }
            if end < self.src.len() && (self.src[end] == b'e' || self.src[end] == b'E') {
                let mut k = end + 1;
                if k < self.src.len() && (self.src[k] == b'+' || self.src[k] == b'-') {
                    k += 1;
                }
                if k < self.src.len() && self.src[k].is_ascii_digit() {
                    while k < self.src.len() && self.src[k].is_ascii_digit() {
                        k += 1;
                    }
                    end = k;
                }
            }
            let text = std::str::from_utf8(&self.src[start..end]).unwrap_or("");
            let value: f64 = text.parse().map_err(|_| ParseError::SyntaxError {
                offset: start + 1,
                message: format!("malformed number '{text}'"),
            })?;
            self.pos = end;
            if self.pos < self.src.len() && self.src[self.pos] == b'i' {
                let after = self.src.get(self.pos + 1);
                if !after.is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    self.pos += 1;
                    return Ok((Tok::Imag(value), start));
                }
            }
            return Ok((Tok::Num(value), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = self.pos;
            while end < self.src.len() && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_') {
                end += 1;
            }
            let name = String::from_utf8_lossy(&self.src[start..end]).into_owned();
            self.pos = end;
            return Ok((Tok::Ident(name), start));
        }
        if b"+-*/^()".contains(&c) {
            self.pos += 1;
            return Ok((Tok::Op(c as char), start));
        }
        Err(ParseError::SyntaxError {
            offset: start + 1,
            message: format!("unexpected character '{}'", c as char),
        })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), ParseError> {
        let (t, at) = self.lex.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            offset: self.at + 1,
            message: message.into(),
        })
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.tok == Tok::Op(op) {
            self.bump()
        } else {
            self.error(format!("expected '{op}'"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.tok {
                Tok::Op('+') => {
                    self.bump()?;
                    lhs = Expr::add(lhs, self.product()?);
                }
                Tok::Op('-') => {
                    self.bump()?;
                    lhs = Expr::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.tok {
                Tok::Op('*') => {
                    self.bump()?;
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump()?;
                    lhs = Expr::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump()?;
        let paren = self.tok == Tok::Op('(');
        if paren {
            self.bump()?;
        }
        let neg = self.tok == Tok::Op('-');
        if neg {
            self.bump()?;
        }
        let n = match self.tok {
            Tok::Num(x) if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 => x as i32,
            _ => return self.error("exponent must be an integer literal"),
        };
        self.bump()?;
        if paren {
            self.expect(')')?;
        }
        Ok(Expr::pow(base, if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Num(x) => {
                self.bump()?;
                Ok(Expr::real(x))
            }
            Tok::Imag(x) => {
                self.bump()?;
                Ok(Expr::Const(C64::new(0.0, x)))
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                let func = match name.as_str() {
                    "conj" => Some(Func::Conj),
                    "exp" => Some(Func::Exp),
                    "ln" => Some(Func::Ln),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect('(')?;
                    let arg = self.sum()?;
                    self.expect(')')?;
                    return Ok(Expr::func(f, arg));
                }
                match name.as_str() {
                    "m1" => Ok(Expr::Var(Var::M1)),
                    "c1" => Ok(Expr::Var(Var::C1)),
                    "u" => Ok(Expr::Var(Var::U)),
                    "v" => Ok(Expr::Var(Var::V)),
                    "i" => Ok(Expr::Const(C64::new(0.0, 1.0))),
                    _ => Err(ParseError::UnknownIdentifier { name, offset: at + 1 }),
                }
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Op(c) => self.error(format!("unexpected '{c}'")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        lex: Lexer { src: text.as_bytes(), pos: 0 },
        tok: Tok::End,
        at: 0,
    };
    p.bump()?;
    let e = p.sum()?;
    if p.tok != Tok::End {
        return p.error("trailing input");
    }
    Ok(e)
}
