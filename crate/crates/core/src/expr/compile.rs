use std::sync::Arc;

use super::{Expr, Func};
use crate::specfun;

/// A numeric evaluator for an expression in `x`.
///
/// Poles and out-of-domain arguments give non-finite values, which the
/// quadrature oracle reports as sampling errors.
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    expr: Arc<Expr>,
}

impl CompiledExpr {
    pub fn eval(&self, x: f64) -> f64 {
        eval(&self.expr, x)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn as_fn(&self) -> impl Fn(f64) -> f64 + Send + Sync + '_ {
        move |x| self.eval(x)
    }
}

pub fn compile(e: &Expr) -> CompiledExpr {
    CompiledExpr {
        expr: Arc::new(e.clone()),
    }
}

pub(crate) fn eval(e: &Expr, x: f64) -> f64 {
    match e {
        Expr::Number(v) => *v,
        Expr::Const(c) => c.value(),
        Expr::Var => x,
        Expr::Neg(a) => -eval(a, x),
        Expr::Add(a, b) => eval(a, x) + eval(b, x),
        Expr::Sub(a, b) => eval(a, x) - eval(b, x),
        Expr::Mul(a, b) => eval(a, x) * eval(b, x),
        Expr::Div(a, b) => eval(a, x) / eval(b, x),
        Expr::Pow(base, exp) => match (base.as_ref(), exp.as_ref()) {
            (Expr::Apply(Func::Arccosh, g), Expr::Number(k)) if *k == 2.0 => arccosh_squared(eval(g, x)),
            _ => eval(base, x).powf(eval(exp, x)),
        },
        Expr::Apply(f, a) => apply(*f, eval(a, x)),
    }
}

/// arccosh(y)² continued below y = 1, where arccosh(y) = i·arccos(y).
fn arccosh_squared(y: f64) -> f64 {
    if y >= 1.0 {
        y.acosh().powi(2)
    } else if y >= -1.0 {
        -y.acos().powi(2)
    } else {
        f64::NAN
    }
}

fn apply(f: Func, v: f64) -> f64 {
    match f {
        Func::Exp => v.exp(),
        Func::Ln => v.ln(),
        Func::Sqrt => v.sqrt(),
        Func::Sin => v.sin(),
        Func::Cos => v.cos(),
        Func::Tan => v.tan(),
        Func::Cot => 1.0 / v.tan(),
        Func::Sec => 1.0 / v.cos(),
        Func::Csc => 1.0 / v.sin(),
        Func::Sinh => v.sinh(),
        Func::Cosh => v.cosh(),
        Func::Arcsin => v.asin(),
        Func::Arccos => v.acos(),
        Func::Arcsinh => v.asinh(),
        Func::Arccosh => v.acosh(),
        Func::W => specfun::lambert_w0(v).unwrap_or(f64::NAN),
        Func::Erf => specfun::erf(v),
        Func::Erfc => specfun::erfc(v),
        Func::Erfi => specfun::erfi(v),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, parse_expr};
    use super::*;
    use crate::catalog;

    fn at(s: &str, x: f64) -> f64 {
        compile(&parse_expr(s).unwrap()).eval(x)
    }

    #[test]
    fn basics() {
        assert_eq!(compile(&Expr::pow(Expr::Var, Expr::Number(2.0))).eval(3.0), 9.0);
        assert!((compile(&Expr::apply(Func::W, Expr::Var)).eval(std::f64::consts::E) - 1.0).abs() < 1e-15);
        assert!((at("exp(-tan(x)^2)", 1.0) - (-(1.0f64.tan().powi(2))).exp()).abs() < 1e-16);
        assert!((at("exp(-tan(x)^2)", 1.0) - (-2.425_518_820_814_759_f64).exp()).abs() < 1e-15);
        assert_eq!(at("gamma", 0.0), crate::specfun::constants::EULER_GAMMA);
    }

    #[test]
    fn reciprocal_trig() {
        let x = 0.7_f64;
        assert!((at("cot(x)", x) - 1.0 / x.tan()).abs() < 1e-15);
        assert!((at("sec(x)", x) - 1.0 / x.cos()).abs() < 1e-15);
        assert!((at("csc(x)", x) - 1.0 / x.sin()).abs() < 1e-15);
    }

    #[test]
    fn poles_are_not_finite() {
        assert!(!at("csc(x)", 0.0).is_finite());
        assert!(!at("ln(x)", 0.0).is_finite());
        assert!(at("W(x)", -1.0).is_nan());
        assert!(at("arccosh(x)", 0.5).is_nan());
    }

    #[test]
    fn arccosh_square_continues_below_one() {
        assert!((at("arccosh(x)^2", 0.5) + 0.5f64.acos().powi(2)).abs() < 1e-15);
        assert!((at("arccosh(x)^2", 2.0) - 2.0f64.acosh().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn example_queries_match_catalog_integrands() {
        for entry in catalog::all_entries() {
            let q = parse(entry.example_query).unwrap();
            let compiled = compile(&q.integrand);
            let reference = entry.integrand(&entry.example_param_set()).unwrap();
            for x in [0.05, 0.3, 0.77, 1.0, 1.4, 2.5, 6.0] {
                if entry.interval().contains(x) {
                    let (a, b) = (compiled.eval(x), reference(x));
                    assert!(
                        (a - b).abs() <= 1e-14 * b.abs().max(1.0),
                        "{} at {x}: {a} vs {b}",
                        entry.id
                    );
                }
            }
        }
    }
}
