//! A small language for integral queries.
//!
//! ```text
//! query := "integral" expr "dx" "from" cexpr "to" (cexpr | "inf")
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := number | "pi" | "e" | "gamma" | "x" | func "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and `-x^2` reads as `-(x^2)`. There is no
//! implicit multiplication, so `tan²(x)` is written `tan(x)^2`. `gamma` is
//! the Euler–Mascheroni constant. Diagnostics carry 1-based character
//! positions.
//!
//! [`normalize`] brings a query to a canonical form, [`match_catalog`] finds
//! the catalog identity it instantiates and [`compile`] turns an expression
//! into a numeric integrand.

mod compile;
mod lexer;
mod matcher;
mod normalize;
mod parser;

use std::cmp::Ordering;
use std::fmt;

pub use compile::{compile, CompiledExpr};
pub use matcher::{match_catalog, MatchResult};
pub use normalize::{normalize, normalize_expr};
pub use parser::{parse, parse_expr};

use crate::quadrature::{Bound, Interval};

/// Parser guard on the depth of the expression tree.
pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Const {
    Pi,
    E,
    EulerGamma,
}

impl Const {
    pub fn value(self) -> f64 {
        match self {
            Const::Pi => std::f64::consts::PI,
            Const::E => std::f64::consts::E,
            Const::EulerGamma => crate::specfun::constants::EULER_GAMMA,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Const::Pi => "pi",
            Const::E => "e",
            Const::EulerGamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Cot,
    Sec,
    Csc,
    Sinh,
    Cosh,
    Arcsin,
    Arccos,
    Arcsinh,
    Arccosh,
    W,
    Erf,
    Erfc,
    Erfi,
}

impl Func {
    pub const ALL: [Func; 19] = [
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Cot,
        Func::Sec,
        Func::Csc,
        Func::Sinh,
        Func::Cosh,
        Func::Arcsin,
        Func::Arccos,
        Func::Arcsinh,
        Func::Arccosh,
        Func::W,
        Func::Erf,
        Func::Erfc,
        Func::Erfi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Sec => "sec",
            Func::Csc => "csc",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Arcsin => "arcsin",
            Func::Arccos => "arccos",
            Func::Arcsinh => "arcsinh",
            Func::Arccosh => "arccosh",
            Func::W => "W",
            Func::Erf => "erf",
            Func::Erfc => "erfc",
            Func::Erfi => "erfi",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Const(Const),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Apply(Func, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn apply(f: Func, a: Expr) -> Expr {
        Expr::Apply(f, Box::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Number(_) | Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(a) | Expr::Apply(_, a) => 1 + a.depth(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn has_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Number(_) | Expr::Const(_) => false,
            Expr::Neg(a) | Expr::Apply(_, a) => a.has_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.has_var() || b.has_var()
            }
        }
    }

    /// Value of a variable-free expression.
    pub fn eval_const(&self) -> Option<f64> {
        if self.has_var() {
            return None;
        }
        Some(compile::eval(self, f64::NAN))
    }

    fn rank(&self) -> u8 {
        match self {
            Expr::Number(_) => 0,
            Expr::Const(_) => 1,
            Expr::Var => 2,
            Expr::Apply(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Mul(..) => 5,
            Expr::Div(..) => 6,
            Expr::Add(..) => 7,
            Expr::Sub(..) => 8,
            Expr::Neg(_) => 9,
        }
    }

    /// Total structural order used to sort commutative operands.
    pub fn structural_cmp(&self, other: &Expr) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (Expr::Number(a), Expr::Number(b)) => a.total_cmp(b),
            (Expr::Const(a), Expr::Const(b)) => a.cmp(b),
            (Expr::Apply(f, a), Expr::Apply(g, b)) => f.cmp(g).then_with(|| a.structural_cmp(b)),
            (Expr::Neg(a), Expr::Neg(b)) => a.structural_cmp(b),
            (Expr::Add(a1, a2), Expr::Add(b1, b2))
            | (Expr::Sub(a1, a2), Expr::Sub(b1, b2))
            | (Expr::Mul(a1, a2), Expr::Mul(b1, b2))
            | (Expr::Div(a1, a2), Expr::Div(b1, b2))
            | (Expr::Pow(a1, a2), Expr::Pow(b1, b2)) => a1.structural_cmp(b1).then_with(|| a2.structural_cmp(b2)),
            _ => Ordering::Equal,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Number(v) if *v < 0.0 || v.is_sign_negative() => 3,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_bare(f)?;
            f.write_str(")")
        } else {
            self.write_bare(f)
        }
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Var => f.write_str("x"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)
            }
            Expr::Add(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" + ")?;
                b.write_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" - ")?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            Expr::Div(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("/")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, b) => {
                a.write_at(f, 5)?;
                f.write_str("^")?;
                b.write_at(f, 3)
            }
            Expr::Apply(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write_bare(f)?;
                f.write_str(")")
            }
        }
    }
}

/// Prints in the surface syntax; the output parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum UpperBound {
    Expr(Expr),
    Infinity,
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Expr(e) => e.fmt(f),
            UpperBound::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralQuery {
    pub integrand: Expr,
    pub lo: Expr,
    pub hi: UpperBound,
}

impl IntegralQuery {
    /// The numeric interval; the parser has already checked it is valid.
    pub fn interval(&self) -> Interval {
        let lo = self.lo.eval_const().unwrap_or(f64::NAN);
        let hi = match &self.hi {
            UpperBound::Expr(e) => Bound::Finite(e.eval_const().unwrap_or(f64::NAN)),
            UpperBound::Infinity => Bound::PosInfinity,
        };
        match hi {
            Bound::Finite(h) => Interval::finite(lo, h),
            Bound::PosInfinity => Interval::semi_infinite(lo),
        }
        .unwrap_or(Interval::new_unchecked(0.0, Bound::PosInfinity))
    }
}

impl fmt::Display for IntegralQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "integral {} dx from {} to {}", self.integrand, self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("position {pos}: unexpected character '{ch}'")]
    Lex { pos: usize, ch: char },
    #[error("position {pos}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("position {pos}: expression nested deeper than {MAX_DEPTH}")]
    TooDeep { pos: usize },
    #[error("position {pos}: {message}")]
    Bound { pos: usize, message: String },
}

impl ExprError {
    pub fn position(&self) -> usize {
        match self {
            ExprError::Lex { pos, .. }
            | ExprError::Parse { pos, .. }
            | ExprError::TooDeep { pos }
            | ExprError::Bound { pos, .. } => *pos,
        }
    }
}
