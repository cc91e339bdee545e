//! Symbolic Wirtinger differentiation.
//!
//! ∂ = ∂/∂ν and ∂̄ = ∂/∂ν̄, with ν = m1 = u + i v. Hence ∂u = ∂̄u = ½,
//! ∂v = −i/2, ∂̄v = i/2, and ∂(conj e) = conj(∂̄ e).

use super::{Expr, Func, Var};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wirtinger {
    /// ∂/∂m1
    D,
    /// ∂/∂c1
    Dbar,
}

impl Wirtinger {
    fn flip(self) -> Self {
        match self {
            Wirtinger::D => Wirtinger::Dbar,
            Wirtinger::Dbar => Wirtinger::D,
        }
    }
}

fn var_derivative(v: Var, w: Wirtinger) -> C64 {
    use Wirtinger::*;
    match (v, w) {
        (Var::M1, D) | (Var::C1, Dbar) => C64::new(1.0, 0.0),
        (Var::M1, Dbar) | (Var::C1, D) => C64::new(0.0, 0.0),
        (Var::U, _) => C64::new(0.5, 0.0),
        (Var::V, D) => C64::new(0.0, -0.5),
        (Var::V, Dbar) => C64::new(0.0, 0.5),
    }
}

pub fn wirtinger_diff(e: &Expr, w: Wirtinger) -> Expr {
    match e {
        Expr::Const(_) => Expr::real(0.0),
        Expr::Var(v) => Expr::Const(var_derivative(*v, w)),
        Expr::Add(a, b) => Expr::add(wirtinger_diff(a, w), wirtinger_diff(b, w)),
        Expr::Sub(a, b) => Expr::sub(wirtinger_diff(a, w), wirtinger_diff(b, w)),
        Expr::Mul(a, b) => Expr::add(
            Expr::mul(wirtinger_diff(a, w), (**b).clone()),
            Expr::mul((**a).clone(), wirtinger_diff(b, w)),
        ),
        Expr::Div(a, b) => {
            // (a'b − ab')/b²
            let num = Expr::sub(
                Expr::mul(wirtinger_diff(a, w), (**b).clone()),
                Expr::mul((**a).clone(), wirtinger_diff(b, w)),
            );
            Expr::div(num, Expr::pow((**b).clone(), 2))
        }
        Expr::Neg(a) => Expr::neg(wirtinger_diff(a, w)),
        Expr::Pow(a, n) => Expr::mul(
            Expr::mul(Expr::real(*n as f64), Expr::pow((**a).clone(), n - 1)),
            wirtinger_diff(a, w),
        ),
        Expr::Func(Func::Conj, a) => Expr::conj(wirtinger_diff(a, w.flip())),
        Expr::Func(Func::Exp, a) => Expr::mul(e.clone(), wirtinger_diff(a, w)),
        Expr::Func(Func::Ln, a) => Expr::div(wirtinger_diff(a, w), (**a).clone()),
    }
}
