//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := ("-" factor) | power ;
//! power  := atom ("^" factor)? ;
//! atom   := NUMBER | "x" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")" ;
//! ```

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use super::{BinOp, Expr, Func, NamedConst};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    Empty,
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at offset {}: {msg}", self.offset),
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier `{name}` at offset {}", self.offset)
            }
            ParseErrorKind::Empty => f.write_str("empty expression"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(v) => alloc::format!("number {v}"),
            Token::Ident(s) => alloc::format!("`{s}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn syntax(offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    fn next_token(&mut self) -> Result<(usize, Token), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(start) else {
            return Ok((start, Token::End));
        };
        let single = match c {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start).map(|v| (start, Token::Number(v)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((start, Token::Ident(self.src[start..self.pos].to_string())));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Self::syntax(start, alloc::format!("unexpected character `{ch}`")))
    }

    fn number(&mut self, start: usize) -> Result<f64, ParseError> {
        let bytes = self.src.as_bytes();
        let digits = |pos: &mut usize| {
            let from = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            *pos - from
        };
        let mut pos = start;
        let mut count = digits(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'.' {
            pos += 1;
            count += digits(&mut pos);
        }
        if count == 0 {
            return Err(Self::syntax(start, "malformed number"));
        }
        // An exponent needs at least one digit; otherwise `e` is left for
        // the identifier rule.
        if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
            let mut probe = pos + 1;
            if probe < bytes.len() && (bytes[probe] == b'+' || bytes[probe] == b'-') {
                probe += 1;
            }
            if probe < bytes.len() && bytes[probe].is_ascii_digit() {
                pos = probe;
                digits(&mut pos);
            }
        }
        self.pos = pos;
        let text = &self.src[start..pos];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Self::syntax(
                start,
                alloc::format!("number `{text}` is not a finite real"),
            )),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    offset: usize,
    current: Token,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (offset, current) = lexer.next_token()?;
        Ok(Parser { lexer, offset, current })
    }

    fn advance(&mut self) -> Result<Token, ParseError> {
        let (offset, next) = self.lexer.next_token()?;
        self.offset = offset;
        Ok(core::mem::replace(&mut self.current, next))
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        Lexer::syntax(
            self.offset,
            alloc::format!("expected {expected}, found {}", self.current.describe()),
        )
    }

    fn expect(&mut self, tok: Token, expected: &str) -> Result<(), ParseError> {
        if self.current == tok {
            self.advance()?;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.current {
                Token::Plus => BinOp::Add,
                Token::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance()?;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.current {
                Token::Star => BinOp::Mul,
                Token::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.advance()?;
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.current == Token::Minus {
            self.advance()?;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.current != Token::Caret {
            return Ok(base);
        }
        self.advance()?;
        let exp_offset = self.offset;
        let exponent = self.factor()?;
        if exponent.is_constant() {
            let value = exponent
                .eval(0.0)
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Lexer::syntax(exp_offset, "exponent does not evaluate to a finite constant"))?;
            Ok(Expr::PowConst(Box::new(base), value))
        } else {
            // u^v = exp(v * ln u)
            Ok(Expr::Call(
                Func::Exp,
                Box::new(Expr::Binary(
                    BinOp::Mul,
                    Box::new(exponent),
                    Box::new(Expr::Call(Func::Ln, Box::new(base))),
                )),
            ))
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset;
        match self.current.clone() {
            Token::Number(v) => {
                self.advance()?;
                Ok(Expr::Const(v))
            }
            Token::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Token::Ident(name) => {
                self.advance()?;
                match name.as_str() {
                    "x" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Named(NamedConst::Pi)),
                    "e" => Ok(Expr::Named(NamedConst::E)),
                    _ => {
                        let func = Func::from_name(&name).ok_or(ParseError {
                            offset,
                            kind: ParseErrorKind::UnknownIdentifier(name.clone()),
                        })?;
                        self.expect(Token::LParen, "`(` after function name")?;
                        let arg = self.expr()?;
                        self.expect(Token::RParen, "`)`")?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                }
            }
            _ => Err(self.unexpected("a number, `x`, a constant, a function or `(`")),
        }
    }
}

/// Parses a one-variable real expression in `x`.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::Empty,
        });
    }
    let mut parser = Parser::new(source)?;
    let expr = parser.expr()?;
    if parser.current != Token::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(expr)
}
