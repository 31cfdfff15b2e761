use super::lexer::{tokenize, Token, TokenKind};
use super::{Const, Expr, ExprError, Func, IntegralQuery, UpperBound, MAX_DEPTH};

pub fn parse(text: &str) -> Result<IntegralQuery, ExprError> {
    let mut p = Parser::new(text)?;
    p.keyword("integral")?;
    let integrand = p.expr()?;
    p.keyword("dx")?;
    p.keyword("from")?;
    let lo_pos = p.peek().pos;
    let lo = p.expr()?;
    p.keyword("to")?;
    let hi_pos = p.peek().pos;
    let hi = if p.peek_ident("inf") {
        p.advance();
        UpperBound::Infinity
    } else {
        UpperBound::Expr(p.expr()?)
    };
    p.expect_eof()?;

    let lo_value = bound_value(&lo, lo_pos, "lower")?;
    if let UpperBound::Expr(h) = &hi {
        let hi_value = bound_value(h, hi_pos, "upper")?;
        if lo_value >= hi_value {
            return Err(ExprError::Bound {
                pos: lo_pos,
                message: format!("lower bound {lo_value} is not below upper bound {hi_value}"),
            });
        }
    }
    Ok(IntegralQuery { integrand, lo, hi })
}

/// Parses a bare expression (no `integral ... dx` wrapper).
pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

fn bound_value(e: &Expr, pos: usize, which: &str) -> Result<f64, ExprError> {
    if e.has_var() {
        return Err(ExprError::Bound {
            pos,
            message: format!("{which} bound must not contain x"),
        });
    }
    match e.eval_const() {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(ExprError::Bound {
            pos,
            message: format!("{which} bound does not evaluate to a finite number"),
        }),
    }
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ExprError> {
        Ok(Self {
            tokens: tokenize(text)?,
            at: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek_ident(&self, word: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == word)
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let t = self.peek();
        ExprError::Parse {
            pos: t.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.kind.describe(),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ExprError> {
        if self.peek_ident(word) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[&format!("'{word}'")]))
        }
    }

    fn expect(&mut self, kind: TokenKind, label: &str) -> Result<(), ExprError> {
        if self.peek().kind == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn expect_eof(&self) -> Result<(), ExprError> {
        match self.peek().kind {
            TokenKind::Eof => Ok(()),
            _ => Err(self.error(&["end of input"])),
        }
    }

    fn enter(&mut self) -> Result<(), ExprError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ExprError::TooDeep { pos: self.peek().pos });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let start = self.peek().pos;
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.advance();
                    lhs = Expr::add(lhs, self.term()?);
                }
                TokenKind::Minus => {
                    self.advance();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        if lhs.depth() > MAX_DEPTH {
            return Err(ExprError::TooDeep { pos: start });
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.advance();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                TokenKind::Slash => {
                    self.advance();
                    lhs = Expr::div(lhs, self.unary()?);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        self.enter()?;
        let e = if self.peek().kind == TokenKind::Minus {
            self.advance();
            Expr::neg(self.unary()?)
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.advance();
            let exponent = self.unary()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        const ATOM: &[&str] = &["number", "'pi'", "'e'", "'gamma'", "'x'", "function name", "'('"];
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Number(v) => {
                self.advance();
                Ok(Expr::Number(v))
            }
            TokenKind::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::Ident(ref name) => {
                let leaf = match name.as_str() {
                    "x" => Some(Expr::Var),
                    "pi" => Some(Expr::Const(Const::Pi)),
                    "e" => Some(Expr::Const(Const::E)),
                    "gamma" => Some(Expr::Const(Const::EulerGamma)),
                    _ => None,
                };
                if let Some(leaf) = leaf {
                    self.advance();
                    return Ok(leaf);
                }
                let Some(func) = Func::from_name(name) else {
                    return Err(self.error(ATOM));
                };
                self.advance();
                self.expect(TokenKind::LParen, "'('")?;
                let arg = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::apply(func, arg))
            }
            _ => Err(self.error(ATOM)),
        }
    }
}
