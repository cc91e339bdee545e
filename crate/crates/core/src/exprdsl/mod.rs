//! A small complex expression language for congruence charts.
//!
//! Expressions are built from complex literals (`2`, `0.5i`, `i`), the
//! variables `m1` (the chart parameter ν), `c1` (its conjugate), `u` and `v`
//! (real and imaginary parts of ν), the operators `+ - * /`, integer powers
//! `^` and the functions `conj`, `exp`, `ln`. `ln` is the principal branch,
//! cut along the negative real axis.
//!
//! Trees are immutable. The smart constructors fold constants and collapse
//! `conj(conj(e))`; nothing else is simplified.

mod diff;
mod parse;

pub use diff::{wirtinger_diff, Wirtinger};
pub use parse::{parse, ParseError};

use crate::scalar::Scalar;
use crate::C64;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    M1,
    C1,
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Conj,
    Exp,
    Ln,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(C64),
    Var(Var),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Pow(Arc<Expr>, i32),
    Func(Func, Arc<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    DomainError(String),
}

const DIV_EPS: f64 = 1e-300;

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if *c == C64::new(0.0, 0.0))
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if *c == C64::new(1.0, 0.0))
}

impl Expr {
    pub fn constant(c: C64) -> Expr {
        Expr::Const(c)
    }

    pub fn real(x: f64) -> Expr {
        Expr::Const(C64::new(x, 0.0))
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
            _ if is_zero(&a) => b,
            _ if is_zero(&b) => a,
            _ => Expr::Add(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
            _ if is_zero(&b) => a,
            _ if is_zero(&a) => Expr::neg(b),
            _ => Expr::Sub(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
            _ if is_zero(&a) || is_zero(&b) => Expr::real(0.0),
            _ if is_one(&a) => b,
            _ if is_one(&b) => a,
            _ => Expr::Mul(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) if y.norm() > DIV_EPS => Expr::Const(x / y),
            _ if is_one(&b) => a,
            _ if is_zero(&a) && !is_zero(&b) => Expr::real(0.0),
            _ => Expr::Div(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(x) => Expr::Const(-x),
            Expr::Neg(inner) => (*inner).clone(),
            _ => Expr::Neg(Arc::new(a)),
        }
    }

    pub fn pow(a: Expr, n: i32) -> Expr {
        match (&a, n) {
            (_, 0) => Expr::real(1.0),
            (_, 1) => a,
            (Expr::Const(x), n) if n > 0 || x.norm() > DIV_EPS => Expr::Const(x.powi(n)),
            _ => Expr::Pow(Arc::new(a), n),
        }
    }

    pub fn func(f: Func, a: Expr) -> Expr {
        match (f, &a) {
            (Func::Conj, Expr::Const(x)) => Expr::Const(x.conj()),
            (Func::Conj, Expr::Func(Func::Conj, inner)) => (**inner).clone(),
            (Func::Conj, Expr::Var(Var::M1)) => Expr::Var(Var::C1),
            (Func::Conj, Expr::Var(Var::C1)) => Expr::Var(Var::M1),
            (Func::Conj, Expr::Var(Var::U)) | (Func::Conj, Expr::Var(Var::V)) => a,
            (Func::Exp, Expr::Const(x)) => Expr::Const(x.exp()),
            (Func::Ln, Expr::Const(x)) if x.norm() > 0.0 => Expr::Const(x.ln()),
            _ => Expr::Func(f, Arc::new(a)),
        }
    }

    pub fn conj(a: Expr) -> Expr {
        Expr::func(Func::Conj, a)
    }

    /// Whether `v` occurs in the tree.
    pub fn contains(&self, v: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(w) => *w == v,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.contains(v) || b.contains(v),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Func(_, a) => a.contains(v),
        }
    }

    /// Evaluates at ν; `m1 = ν`, `c1 = ν̄`, `u + i v = ν`.
    pub fn eval(&self, nu: C64) -> Result<C64, EvalError> {
        self.eval_scalar(nu)
    }

    /// Evaluates on any [`Scalar`], e.g. a Taylor jet of ν.
    pub fn eval_scalar<S: Scalar>(&self, nu: S) -> Result<S, EvalError> {
        Ok(match self {
            Expr::Const(c) => S::constant(*c),
            Expr::Var(Var::M1) => nu,
            Expr::Var(Var::C1) => nu.conj(),
            Expr::Var(Var::U) => nu.re(),
            Expr::Var(Var::V) => nu.im(),
            Expr::Add(a, b) => a.eval_scalar(nu)? + b.eval_scalar(nu)?,
            Expr::Sub(a, b) => a.eval_scalar(nu)? - b.eval_scalar(nu)?,
            Expr::Mul(a, b) => a.eval_scalar(nu)? * b.eval_scalar(nu)?,
            Expr::Div(a, b) => {
                let d = b.eval_scalar(nu)?;
                if d.value().norm() <= DIV_EPS {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval_scalar(nu)? / d
            }
            Expr::Neg(a) => -a.eval_scalar(nu)?,
            Expr::Pow(a, n) => {
                let x = a.eval_scalar(nu)?;
                if *n < 0 && x.value().norm() <= DIV_EPS {
                    return Err(EvalError::DivisionByZero);
                }
                x.powi(*n)
            }
            Expr::Func(f, a) => {
                let x = a.eval_scalar(nu)?;
                match f {
                    Func::Conj => x.conj(),
                    Func::Exp => x.exp(),
                    Func::Ln => {
                        if x.value().norm() == 0.0 {
                            return Err(EvalError::DomainError("ln(0)".into()));
                        }
                        x.ln()
                    }
                }
            }
        })
    }
}

fn fmt_real(x: f64) -> String {
    format!("{x:?}")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if c.im == 0.0 {
                    if c.re < 0.0 {
                        write!(f, "(-{})", fmt_real(-c.re))
                    } else {
                        write!(f, "{}", fmt_real(c.re))
                    }
                } else {
                    let sign = if c.im < 0.0 { '-' } else { '+' };
                    let re = if c.re < 0.0 { format!("-{}", fmt_real(-c.re)) } else { fmt_real(c.re) };
                    write!(f, "({re} {sign} {}i)", fmt_real(c.im.abs()))
                }
            }
            Expr::Var(v) => write!(
                f,
                "{}",
                match v {
                    Var::M1 => "m1",
                    Var::C1 => "c1",
                    Var::U => "u",
                    Var::V => "v",
                }
            ),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, n) => write!(f, "({a}^{n})"),
            Expr::Func(g, a) => {
                let name = match g {
                    Func::Conj => "conj",
                    Func::Exp => "exp",
                    Func::Ln => "ln",
                };
                write!(f, "{name}({a})")
            }
        }
    }
}
