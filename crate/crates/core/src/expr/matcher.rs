//! Structural matching of normalized queries against catalog entries.
//!
//! Parameterized families are recognized by shape, in this order:
//!
//! 1. `exp(-x^n)`, n > 0 → GEN.N;
//! 2. `exp(-x^2) * x^n`, n ≥ 0 → T2.POW;
//! 3. `exp(-a x^2)`, a ≠ 1 → Q.A;
//! 4. `exp(-(a x^2 + b x + c))`, a > 0 → Q.ABC.
//!
//! All families integrate over [0, ∞). Every other entry is matched by
//! structural equality with its normalized example query, interval included.

use std::sync::OnceLock;

use super::{normalize, parse, Expr, Func, IntegralQuery};
use crate::catalog::{self, ParamSet};
use crate::quadrature::{Bound, Interval};

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub entry_id: &'static str,
    pub bound_params: ParamSet,
}

impl MatchResult {
    fn new(entry_id: &'static str, bound_params: ParamSet) -> Self {
        Self { entry_id, bound_params }
    }
}

/// Matches a query (normalized here if it is not already).
pub fn match_catalog(q: &IntegralQuery) -> Option<MatchResult> {
    let q = normalize(q);
    let interval = q.interval();
    let found = family(&q.integrand, &interval).or_else(|| template(&q.integrand, &interval))?;
    let entry = catalog::lookup(found.entry_id).ok()?;
    entry.bind(&found.bound_params).ok()?;
    Some(found)
}

fn same_interval(a: &Interval, b: &Interval) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
    close(a.lo(), b.lo())
        && match (a.hi(), b.hi()) {
            (Bound::PosInfinity, Bound::PosInfinity) => true,
            (Bound::Finite(x), Bound::Finite(y)) => close(x, y),
            _ => false,
        }
}

fn is_half_line(i: &Interval) -> bool {
    i.lo() == 0.0 && i.hi() == Bound::PosInfinity
}

fn family(integrand: &Expr, interval: &Interval) -> Option<MatchResult> {
    if !is_half_line(interval) {
        return None;
    }
    if let Expr::Apply(Func::Exp, arg) = integrand {
        if let Some(n) = neg_monomial(arg) {
            if n > 0.0 {
                return Some(MatchResult::new("GEN.N", ParamSet::new().with("n", n)));
            }
        }
        let [c, b, a] = poly(arg)?.map(|p| -p);
        if a.is_nan() || a <= 0.0 {
            return None;
        }
        if b == 0.0 && c == 0.0 {
            return Some(MatchResult::new("Q.A", ParamSet::new().with("a", a)));
        }
        return Some(MatchResult::new(
            "Q.ABC",
            ParamSet::new().with("a", a).with("b", b).with("c", c),
        ));
    }
    if let Expr::Mul(lhs, rhs) = integrand {
        let (gauss, other) = match (lhs.as_ref(), rhs.as_ref()) {
            (g @ Expr::Apply(Func::Exp, _), o) | (o, g @ Expr::Apply(Func::Exp, _)) => (g, o),
            _ => return None,
        };
        let Expr::Apply(Func::Exp, arg) = gauss else {
            return None;
        };
        if neg_monomial(arg) != Some(2.0) {
            return None;
        }
        let n = match other {
            Expr::Var => 1.0,
            Expr::Pow(base, exp) if **base == Expr::Var => match **exp {
                Expr::Number(n) if n >= 0.0 => n,
                _ => return None,
            },
            _ => return None,
        };
        return Some(MatchResult::new("T2.POW", ParamSet::new().with("n", n)));
    }
    None
}

/// `n` when `e` is `-x` or `-(x^n)` for a numeric `n`.
fn neg_monomial(e: &Expr) -> Option<f64> {
    let Expr::Neg(inner) = e else { return None };
    match inner.as_ref() {
        Expr::Var => Some(1.0),
        Expr::Pow(base, exp) if **base == Expr::Var => match **exp {
            Expr::Number(n) => Some(n),
            _ => None,
        },
        _ => None,
    }
}

/// Coefficients `[c0, c1, c2]` when `e` is a polynomial of degree ≤ 2 in x.
fn poly(e: &Expr) -> Option<[f64; 3]> {
    match e {
        Expr::Number(v) => Some([*v, 0.0, 0.0]),
        Expr::Const(c) => Some([c.value(), 0.0, 0.0]),
        Expr::Var => Some([0.0, 1.0, 0.0]),
        Expr::Neg(a) => poly(a).map(|p| p.map(|c| -c)),
        Expr::Add(a, b) => {
            let (p, q) = (poly(a)?, poly(b)?);
            Some([p[0] + q[0], p[1] + q[1], p[2] + q[2]])
        }
        Expr::Sub(a, b) => {
            let (p, q) = (poly(a)?, poly(b)?);
            Some([p[0] - q[0], p[1] - q[1], p[2] - q[2]])
        }
        Expr::Mul(a, b) => poly_mul(poly(a)?, poly(b)?),
        Expr::Div(a, b) => match **b {
            Expr::Number(d) if d != 0.0 => poly(a).map(|p| p.map(|c| c / d)),
            _ => None,
        },
        Expr::Pow(base, exp) => match **exp {
            Expr::Number(k) if k == 0.0 || k == 1.0 || k == 2.0 => {
                let p = poly(base)?;
                let mut acc = [1.0, 0.0, 0.0];
                for _ in 0..k as usize {
                    acc = poly_mul(acc, p)?;
                }
                Some(acc)
            }
            _ => None,
        },
        Expr::Apply(..) => None,
    }
}

fn poly_mul(p: [f64; 3], q: [f64; 3]) -> Option<[f64; 3]> {
    let mut out = [0.0; 3];
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            if *pi != 0.0 && *qj != 0.0 {
                *out.get_mut(i + j)? += pi * qj;
            }
        }
    }
    Some(out)
}

struct Template {
    id: &'static str,
    integrand: Expr,
    interval: Interval,
}

fn templates() -> &'static [Template] {
    static TEMPLATES: OnceLock<Vec<Template>> = OnceLock::new();
    TEMPLATES.get_or_init(|| {
        catalog::all_entries()
            .filter(|e| !e.is_parameterized())
            .filter_map(|e| {
                let q = normalize(&parse(e.example_query).ok()?);
                Some(Template {
                    id: e.id,
                    interval: q.interval(),
                    integrand: q.integrand,
                })
            })
            .collect()
    })
}

fn template(integrand: &Expr, interval: &Interval) -> Option<MatchResult> {
    templates()
        .iter()
        .find(|t| t.integrand == *integrand && same_interval(&t.interval, interval))
        .map(|t| MatchResult::new(t.id, ParamSet::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matched(s: &str) -> Option<MatchResult> {
        match_catalog(&parse(s).unwrap())
    }

    fn id(s: &str) -> Option<&'static str> {
        matched(s).map(|m| m.entry_id)
    }

    #[test]
    fn families() {
        let m = matched("integral exp(-x^3) dx from 0 to inf").unwrap();
        assert_eq!(m.entry_id, "GEN.N");
        assert_eq!(m.bound_params.get("n"), Some(3.0));
        assert_eq!(id("integral exp(-x) dx from 0 to inf"), Some("GEN.N"));
        assert_eq!(id("integral exp(-x^2) dx from 0 to inf"), Some("GEN.N"));

        let m = matched("integral x^2.5*exp(-x^2) dx from 0 to inf").unwrap();
        assert_eq!((m.entry_id, m.bound_params.get("n")), ("T2.POW", Some(2.5)));
        assert_eq!(
            matched("integral exp(-x^2)*x dx from 0 to inf")
                .unwrap()
                .bound_params
                .get("n"),
            Some(1.0)
        );

        let m = matched("integral exp(-4*x^2) dx from 0 to inf").unwrap();
        assert_eq!((m.entry_id, m.bound_params.get("a")), ("Q.A", Some(4.0)));

        let m = matched("integral exp(-(x^2+2*x+1)) dx from 0 to inf").unwrap();
        assert_eq!(m.entry_id, "Q.ABC");
        assert_eq!(
            m.bound_params,
            ParamSet::new().with("a", 1.0).with("b", 2.0).with("c", 1.0)
        );
        let m = matched("integral exp(-x^2)*exp(-x) dx from 0 to inf").unwrap();
        assert_eq!(
            m.bound_params,
            ParamSet::new().with("a", 1.0).with("b", 1.0).with("c", 0.0)
        );
        let m = matched("integral exp(-(x+1)^2) dx from 0 to inf").unwrap();
        assert_eq!(
            m.bound_params,
            ParamSet::new().with("a", 1.0).with("b", 2.0).with("c", 1.0)
        );
    }

    #[test]
    fn templates_by_structure() {
        assert_eq!(id("integral exp(-x^2)*erf(x) dx from 0 to inf"), Some("T2.ERF"));
        assert_eq!(id("integral erf(x)*exp(-x^2) dx from 0 to inf"), Some("T2.ERF"));
        assert_eq!(id("integral exp(-tan(x)*tan(x)) dx from 0 to pi/2"), Some("T1.TAN"));
        assert_eq!(
            id("integral exp(-arccosh(x)^2) dx from 1 to inf"),
            Some("T1.ACOSH.REAL")
        );
    }

    #[test]
    fn misses() {
        assert_eq!(id("integral exp(-x^2) dx from -1 to 1"), None);
        assert_eq!(id("integral exp(-tan(x)^2) dx from 0 to 1"), None);
        assert_eq!(id("integral exp(-x^-1) dx from 0 to inf"), None);
        assert_eq!(id("integral exp(x^2) dx from 0 to inf"), None);
        assert_eq!(id("integral exp(-1-tan(x)^2) dx from 0 to pi/2"), None);
        assert_eq!(id("integral exp(-x^2)*x^-0.5 dx from 0 to inf"), None);
    }

    #[test]
    fn every_example_query_resolves_to_its_entry() {
        for entry in catalog::all_entries() {
            let m = matched(entry.example_query).unwrap_or_else(|| panic!("{} did not match", entry.id));
            assert_eq!(m.entry_id, entry.id);
            assert_eq!(m.bound_params, entry.example_param_set(), "{}", entry.id);
        }
    }
}
