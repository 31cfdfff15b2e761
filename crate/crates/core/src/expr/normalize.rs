//! Canonical form for queries.
//!
//! The rewrites, applied bottom-up and repeated until nothing changes:
//!
//! * variable-free subtrees fold to a single number (`pi/2` becomes 1.5707…);
//! * `a - b` becomes `a + (-b)` and `a / c` with numeric `c` becomes `a * (1/c)`;
//! * sums and products are flattened, numeric parts merged, and operands
//!   sorted by [`Expr::structural_cmp`];
//! * signs move out of products, and a sum whose addends are all negative
//!   becomes the negation of a sum;
//! * `exp(a) * exp(b)` fuses to `exp(a + b)`;
//! * repeated factors collect into powers, so `f * f` is `f^2`.

use std::cmp::Ordering;

use super::{Expr, Func, IntegralQuery, UpperBound};

const MAX_PASSES: usize = 32;

pub fn normalize(q: &IntegralQuery) -> IntegralQuery {
    IntegralQuery {
        integrand: normalize_expr(&q.integrand),
        lo: normalize_expr(&q.lo),
        hi: match &q.hi {
            UpperBound::Expr(e) => UpperBound::Expr(normalize_expr(e)),
            UpperBound::Infinity => UpperBound::Infinity,
        },
    }
}

pub fn normalize_expr(e: &Expr) -> Expr {
    let mut current = e.clone();
    for _ in 0..MAX_PASSES {
        let next = pass(&current);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

fn pass(e: &Expr) -> Expr {
    if let Some(v) = fold(e) {
        return Expr::Number(v);
    }
    match e {
        Expr::Number(_) | Expr::Const(_) | Expr::Var => e.clone(),
        Expr::Neg(a) => negate(pass(a)),
        Expr::Apply(f, a) => Expr::apply(*f, pass(a)),
        Expr::Pow(a, b) => power(pass(a), pass(b)),
        Expr::Sub(a, b) => sum(vec![pass(a), negate(pass(b))]),
        Expr::Add(..) => {
            let mut terms = Vec::new();
            collect_sum(e, &mut terms);
            sum(terms.into_iter().map(pass).collect())
        }
        Expr::Div(a, b) => {
            let (a, b) = (pass(a), pass(b));
            match b {
                Expr::Number(c) if c != 0.0 && (1.0 / c).is_finite() => product(vec![a, Expr::Number(1.0 / c)]),
                b => Expr::div(a, b),
            }
        }
        Expr::Mul(..) => {
            let mut factors = Vec::new();
            collect_product(e, &mut factors);
            product(factors.into_iter().map(pass).collect())
        }
    }
}

/// Value of a variable-free subtree, unless it is already a plain number or
/// does not evaluate to a finite value.
fn fold(e: &Expr) -> Option<f64> {
    if matches!(e, Expr::Number(_)) {
        return None;
    }
    e.eval_const().filter(|v| v.is_finite())
}

fn collect_sum<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match e {
        Expr::Add(a, b) => {
            collect_sum(a, out);
            collect_sum(b, out);
        }
        other => out.push(other),
    }
}

fn collect_product<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match e {
        Expr::Mul(a, b) => {
            collect_product(a, out);
            collect_product(b, out);
        }
        other => out.push(other),
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Neg(inner) => *inner,
        Expr::Number(v) => Expr::Number(-v),
        other => Expr::neg(other),
    }
}

fn is_negative(e: &Expr) -> bool {
    match e {
        Expr::Neg(_) => true,
        Expr::Number(v) => *v < 0.0,
        _ => false,
    }
}

fn cmp(a: &Expr, b: &Expr) -> Ordering {
    a.structural_cmp(b)
}

fn rebuild(items: Vec<Expr>, join: fn(Expr, Expr) -> Expr) -> Expr {
    let mut iter = items.into_iter();
    let first = iter.next().expect("non-empty operand list");
    iter.fold(first, join)
}

fn sum(terms: Vec<Expr>) -> Expr {
    let mut flat = Vec::new();
    let mut constant = 0.0;
    let mut saw_constant = false;
    for t in terms {
        match t {
            Expr::Add(..) => {
                let mut inner = Vec::new();
                collect_sum(&t, &mut inner);
                flat.extend(inner.into_iter().cloned());
            }
            Expr::Number(v) => {
                constant += v;
                saw_constant = true;
            }
            other => flat.push(other),
        }
    }
    if saw_constant && (constant != 0.0 || flat.is_empty()) {
        flat.push(Expr::Number(constant));
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    if flat.iter().all(is_negative) {
        let positive: Vec<Expr> = flat.into_iter().map(negate).collect();
        return Expr::neg(sorted_sum(positive));
    }
    sorted_sum(flat)
}

fn sorted_sum(mut terms: Vec<Expr>) -> Expr {
    terms.sort_by(cmp);
    rebuild(terms, Expr::add)
}

fn product(factors: Vec<Expr>) -> Expr {
    let mut coefficient = 1.0;
    let mut negative = false;
    let mut exponents: Vec<Expr> = Vec::new();
    // (base, numeric exponent) pairs, merged on structurally equal bases
    let mut powers: Vec<(Expr, f64)> = Vec::new();
    let mut rest: Vec<Expr> = Vec::new();

    let mut stack = factors;
    while let Some(f) = stack.pop() {
        match f {
            Expr::Mul(..) => {
                let mut inner = Vec::new();
                collect_product(&f, &mut inner);
                stack.extend(inner.into_iter().cloned());
            }
            Expr::Neg(inner) => {
                negative = !negative;
                stack.push(*inner);
            }
            Expr::Number(v) => coefficient *= v,
            Expr::Apply(Func::Exp, arg) => exponents.push(*arg),
            Expr::Pow(base, exp) => match *exp {
                Expr::Number(k) => add_power(&mut powers, *base, k),
                exp => rest.push(Expr::pow(*base, exp)),
            },
            other => add_power(&mut powers, other, 1.0),
        }
    }

    if coefficient < 0.0 {
        negative = !negative;
        coefficient = -coefficient;
    }
    let mut out = rest;
    for (base, k) in powers {
        out.push(if k == 1.0 {
            base
        } else {
            Expr::pow(base, Expr::Number(k))
        });
    }
    match exponents.len() {
        0 => {}
        1 => out.push(Expr::apply(Func::Exp, exponents.pop().unwrap())),
        _ => out.push(Expr::apply(Func::Exp, sum(exponents))),
    }
    if coefficient != 1.0 || out.is_empty() {
        out.push(Expr::Number(coefficient));
    }
    out.sort_by(cmp);
    let body = rebuild(out, Expr::mul);
    if negative {
        negate(body)
    } else {
        body
    }
}

fn add_power(powers: &mut Vec<(Expr, f64)>, base: Expr, k: f64) {
    match powers.iter_mut().find(|(b, _)| *b == base) {
        Some(slot) => slot.1 += k,
        None => powers.push((base, k)),
    }
}

fn power(base: Expr, exponent: Expr) -> Expr {
    match exponent {
        Expr::Number(1.0) => base,
        exponent => Expr::pow(base, exponent),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    fn norm(s: &str) -> Expr {
        normalize_expr(&parse_expr(s).unwrap())
    }

    #[test]
    fn constant_folding() {
        assert_eq!(norm("pi/2"), Expr::Number(std::f64::consts::FRAC_PI_2));
        assert_eq!(norm("2*3+1"), Expr::Number(7.0));
        assert_eq!(norm("x*(2+3)"), norm("5*x"));
    }

    #[test]
    fn exponent_fusion() {
        assert_eq!(norm("exp(-x^2)*exp(-x)"), norm("exp(-(x^2+x))"));
        assert_eq!(norm("exp(-x^2)*exp(-x)").to_string(), "exp(-(x + x^2))");
    }

    #[test]
    fn commutative_canonicalization() {
        assert_eq!(norm("2*x"), norm("x*2"));
        assert_eq!(norm("x^2 + 2*x + 1"), norm("1 + x*2 + x^2"));
        assert_eq!(norm("sin(x)*cos(x)"), norm("cos(x)*sin(x)"));
    }

    #[test]
    fn squares_are_powers() {
        assert_eq!(norm("tan(x)*tan(x)"), norm("tan(x)^2"));
        assert_eq!(norm("x*x*x"), norm("x^3"));
        assert_eq!(norm("x^2*x"), norm("x^3"));
    }

    #[test]
    fn canonical_inputs_are_unchanged() {
        for s in ["exp(-sec(x)^2)", "exp(-x^2)", "exp(-W(x)^2)", "exp(-arccosh(x)^2)"] {
            assert_eq!(norm(s), parse_expr(s).unwrap(), "{s}");
        }
    }

    #[test]
    fn signs() {
        assert_eq!(norm("-x^2-2*x-1"), norm("-(x^2+2*x+1)"));
        assert_eq!(norm("x - x^2"), norm("-x^2 + x"));
        assert_eq!(norm("--x"), Expr::Var);
        assert_eq!(norm("-2*x"), Expr::neg(norm("2*x")));
        assert_eq!(norm("x/2"), norm("0.5*x"));
    }

    #[test]
    fn idempotent_on_samples() {
        for s in [
            "exp(-(x^2+2*x+1))",
            "exp(-x^2)*x^3",
            "x - (1 - x)*exp(x)/ln(x)",
            "sqrt(2)*x^-1*x",
            "exp(x)*exp(-x)",
        ] {
            let once = norm(s);
            assert_eq!(normalize_expr(&once), once, "{s}");
        }
    }
}
