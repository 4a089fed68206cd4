//! Expression language: lexer, recursive-descent parser and printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := call ('^' '-'? INT)?
//! call   := atom ('(' args? ')')*
//! atom   := INT | IDENT ('[' INT (',' INT)* ']')? | '[' INT (',' INT)* ']' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    Indexed(String, Vec<u32>),
    Index(Vec<u32>),
    Call(Box<Expr>, Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if ch.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                col: c0,
            });
        } else if ch.is_alphabetic() || ch == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                msg: format!("unexpected character `{ch}`"),
            });
        }
        col += i - start;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: String) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            msg,
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", self.peek().tok)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.call()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        let Tok::Int(n) = t.tok else {
            return Err(self.error(format!("expected integer exponent, found {}", t.tok)));
        };
        self.bump();
        let k: i32 = i32::try_from(&n).map_err(|_| ParseError {
            line: t.line,
            col: t.col,
            msg: format!("exponent {n} is too large"),
        })?;
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn call(&mut self) -> Result<Expr, ParseError> {
        let mut head = self.atom()?;
        while self.peek().tok == Tok::LParen {
            if matches!(head, Expr::Int(_) | Expr::Index(_)) {
                return Err(self.error("only names and parenthesized expressions can be applied".into()));
            }
            self.bump();
            let mut args = Vec::new();
            if self.peek().tok != Tok::RParen {
                loop {
                    args.push(self.expr()?);
                    if self.peek().tok == Tok::Comma {
                        self.bump();
                        continue;
                    }
                    break;
                }
            }
            self.expect(Tok::RParen, "`)` or `,`")?;
            head = Expr::Call(Box::new(head), args);
        }
        Ok(head)
    }

    fn indices(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LBrack, "`[`")?;
        let mut out = Vec::new();
        loop {
            let t = self.peek().clone();
            let Tok::Int(n) = t.tok else {
                return Err(self.error(format!("expected index, found {}", t.tok)));
            };
            self.bump();
            out.push(u32::try_from(&n).map_err(|_| ParseError {
                line: t.line,
                col: t.col,
                msg: format!("index {n} is too large"),
            })?);
            if self.peek().tok == Tok::Comma {
                self.bump();
                continue;
            }
            break;
        }
        self.expect(Tok::RBrack, "`]` or `,`")?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek().tok == Tok::LBrack {
                    Ok(Expr::Indexed(name, self.indices()?))
                } else {
                    Ok(Expr::Sym(name))
                }
            }
            Tok::LBrack => Ok(Expr::Index(self.indices()?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            other => Err(self.error(format!("expected an expression, found {other}"))),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error(format!("unexpected {} after expression", p.peek().tok)));
    }
    Ok(e)
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Pow(..) => POWER,
        _ => POWER + 1,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_indices(f: &mut fmt::Formatter<'_>, idx: &[u32]) -> fmt::Result {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    write!(f, "[{}]", parts.join(","))
}

/// Prints with the minimal parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => f.write_str(s),
            Expr::Indexed(s, idx) => {
                f.write_str(s)?;
                write_indices(f, idx)
            }
            Expr::Index(idx) => write_indices(f, idx),
            Expr::Call(head, args) => {
                write_at(f, head, POWER + 1)?;
                let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            Expr::Neg(x) => {
                f.write_str("-")?;
                write_at(f, x, UNARY)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, SUM)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_at(f, b, PRODUCT)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                write_at(f, a, PRODUCT)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { " * " } else { " / " })?;
                write_at(f, b, UNARY)
            }
            Expr::Pow(x, k) => {
                write_at(f, x, POWER + 1)?;
                write!(f, "^{k}")
            }
        }
    }
}
