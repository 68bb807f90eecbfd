//! Recursive-descent parser over the token stream.
//!
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'

use super::token::{lex, ParseError, Spanned, Tok};
use super::{BinOp, Expr, Func};

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        eof_pos: src.len(),
    };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            expected: "end of input",
        });
    }
    Ok(e)
}

struct Parser {
    toks: Vec<Spanned>,
    i: usize,
    eof_pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.eof_pos, |s| s.pos)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let s = self.toks.get(self.i).cloned();
        if s.is_some() {
            self.i += 1;
        }
        s
    }

    fn expect(&mut self, want: &Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.i += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos(),
                expected,
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(e),
            };
            self.i += 1;
            let rhs = self.term()?;
            e = Expr::Bin(op, Box::new(e), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(e),
            };
            self.i += 1;
            let rhs = self.unary()?;
            e = Expr::Bin(op, Box::new(e), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.i += 1;
            // Right-associative, and `x^-2` is legal.
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(s) = self.bump() else {
            return Err(ParseError::Syntax {
                pos,
                expected: "expression",
            });
        };
        match s.tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Ident(name) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.i += 1;
                    self.call(name, s.pos)
                } else if name == "x" {
                    Ok(Expr::Var)
                } else {
                    Ok(Expr::Param(name))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(ParseError::Syntax {
                pos: s.pos,
                expected: "expression",
            }),
        }
    }

    fn call(&mut self, name: String, name_pos: usize) -> Result<Expr, ParseError> {
        let func = Func::from_name(&name).ok_or(ParseError::UnknownFunction {
            pos: name_pos,
            name: name.clone(),
        })?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            args.push(self.expr()?);
        }
        self.expect(&Tok::RParen, "`)`")?;
        if args.len() != func.arity() {
            return Err(ParseError::Arity {
                pos: name_pos,
                name,
                takes: func.arity(),
                got: args.len(),
            });
        }
        Ok(Expr::Call(func, args))
    }
}
