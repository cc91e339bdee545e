//! Truncated bivariate Taylor series with complex coefficients.
//!
//! A [`Taylor`] holds the expansion of a complex function of two real
//! variables (u, v) to total degree three. Arithmetic and the elementary
//! functions propagate the expansion exactly, so composing analytic
//! formulas yields exact derivatives up to third order. Differentiating
//! once with [`Taylor::partial_u`] keeps the result exact to degree two,
//! which is what normal congruences of parametrised surfaces need.

use crate::scalar::Scalar;
use crate::C64;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const ORDER: usize = 3;
const N: usize = 10;

/// Exponents (p, q) of u^p v^q, ordered by total degree.
const EXPS: [(usize, usize); N] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

const fn index(p: usize, q: usize) -> usize {
    let d = p + q;
    d * (d + 1) / 2 + q
}

const fn degree(k: usize) -> usize {
    EXPS[k].0 + EXPS[k].1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor {
    c: [C64; N],
}

impl Taylor {
    pub fn zero() -> Self {
        Taylor {
            c: [C64::new(0.0, 0.0); N],
        }
    }

    /// The independent complex variable ν = ν₀ + u + i v.
    pub fn variable(nu0: C64) -> Self {
        let mut t = Self::zero();
        t.c[0] = nu0;
        t.c[1] = C64::new(1.0, 0.0);
        t.c[2] = C64::new(0.0, 1.0);
        t
    }

    /// The real variables u and v shifted by real base values.
    pub fn real_pair(u0: f64, v0: f64) -> (Self, Self) {
        let mut u = Self::zero();
        let mut v = Self::zero();
        u.c[0] = C64::new(u0, 0.0);
        u.c[1] = C64::new(1.0, 0.0);
        v.c[0] = C64::new(v0, 0.0);
        v.c[2] = C64::new(1.0, 0.0);
        (u, v)
    }

    /// Coefficient of u^p v^q.
    pub fn coeff(&self, p: usize, q: usize) -> C64 {
        if p + q > ORDER {
            return C64::new(0.0, 0.0);
        }
        self.c[index(p, q)]
    }

    /// The mixed partial ∂ᵘᵖ∂ᵛ𝑞 f at the base point.
    pub fn derivative(&self, p: usize, q: usize) -> C64 {
        let fact = |n: usize| (1..=n).product::<usize>() as f64;
        self.coeff(p, q) * (fact(p) * fact(q))
    }

    /// ∂/∂u; the top-degree part of the result is unknown and set to zero.
    pub fn partial_u(&self) -> Self {
        let mut out = Self::zero();
        for (k, &(p, q)) in EXPS.iter().enumerate() {
            if p > 0 {
                out.c[index(p - 1, q)] = self.c[k] * p as f64;
            }
        }
        out
    }

    pub fn partial_v(&self) -> Self {
        let mut out = Self::zero();
        for (k, &(p, q)) in EXPS.iter().enumerate() {
            if q > 0 {
                out.c[index(p, q - 1)] = self.c[k] * q as f64;
            }
        }
        out
    }

    /// f(x) given f and its first three derivatives at x₀ = self.value().
    fn compose(self, d: [C64; 4]) -> Self {
        let mut h = self;
        h.c[0] = C64::new(0.0, 0.0);
        let h2 = h * h;
        let h3 = h2 * h;
        let mut out = Self::zero();
        for k in 0..N {
            out.c[k] = d[1] * h.c[k] + d[2] * 0.5 * h2.c[k] + d[3] * (1.0 / 6.0) * h3.c[k];
        }
        out.c[0] = d[0];
        out
    }
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(mut self, o: Taylor) -> Taylor {
        for k in 0..N {
            self.c[k] += o.c[k];
        }
        self
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(mut self, o: Taylor) -> Taylor {
        for k in 0..N {
            self.c[k] -= o.c[k];
        }
        self
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(mut self) -> Taylor {
        for k in 0..N {
            self.c[k] = -self.c[k];
        }
        self
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, o: Taylor) -> Taylor {
        let mut out = Taylor::zero();
        for i in 0..N {
            if self.c[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..N {
                if degree(i) + degree(j) > ORDER {
                    continue;
                }
                let k = index(EXPS[i].0 + EXPS[j].0, EXPS[i].1 + EXPS[j].1);
                out.c[k] += self.c[i] * o.c[j];
            }
        }
        out
    }
}

impl Div for Taylor {
    type Output = Taylor;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Taylor) -> Taylor {
        self * o.recip()
    }
}

impl Scalar for Taylor {
    fn constant(c: C64) -> Self {
        let mut t = Taylor::zero();
        t.c[0] = c;
        t
    }
    fn value(&self) -> C64 {
        self.c[0]
    }
    fn conj(mut self) -> Self {
        for k in 0..N {
            self.c[k] = self.c[k].conj();
        }
        self
    }
    fn exp(self) -> Self {
        let e = self.c[0].exp();
        self.compose([e; 4])
    }
    fn ln(self) -> Self {
        let x = self.c[0];
        let r = x.inv();
        self.compose([x.ln(), r, -r * r, r * r * r * 2.0])
    }
    fn sqrt(self) -> Self {
        let s = self.c[0].sqrt();
        let r = s.inv();
        self.compose([s, r * 0.5, -r * r * r * 0.25, r.powi(5) * 0.375])
    }
    fn tanh(self) -> Self {
        let t = self.c[0].tanh();
        let one = C64::new(1.0, 0.0);
        let s = one - t * t;
        self.compose([t, s, -t * s * 2.0, -s * (one - t * t * 3.0) * 2.0])
    }
    fn cosh(self) -> Self {
        let (c, s) = (self.c[0].cosh(), self.c[0].sinh());
        self.compose([c, s, c, s])
    }
    fn sinh(self) -> Self {
        let (c, s) = (self.c[0].cosh(), self.c[0].sinh());
        self.compose([s, c, s, c])
    }
    fn atanh(self) -> Self {
        let x = self.c[0];
        let one = C64::new(1.0, 0.0);
        let w = (one - x * x).inv();
        self.compose([
            x.atanh(),
            w,
            x * w * w * 2.0,
            (one * 2.0 + x * x * 6.0) * w * w * w,
        ])
    }
    fn recip(self) -> Self {
        let r = self.c[0].inv();
        self.compose([r, -r * r, r * r * r * 2.0, -r.powi(4) * 6.0])
    }
    fn scale(mut self, k: f64) -> Self {
        for c in self.c.iter_mut() {
            *c *= k;
        }
        self
    }
}

/// Second-order Wirtinger jet of a complex function of ν.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WJet {
    pub f: C64,
    /// ∂f = ∂f/∂ν
    pub d: C64,
    /// ∂̄f = ∂f/∂ν̄
    pub db: C64,
    pub dd: C64,
    pub ddb: C64,
    pub dbdb: C64,
}

impl WJet {
    /// Builds the jet from real derivatives f_u, f_v, f_uu, f_uv, f_vv.
    pub fn from_real(f: C64, fu: C64, fv: C64, fuu: C64, fuv: C64, fvv: C64) -> Self {
        let i = C64::new(0.0, 1.0);
        WJet {
            f,
            d: (fu - i * fv) * 0.5,
            db: (fu + i * fv) * 0.5,
            dd: (fuu - i * fuv * 2.0 - fvv) * 0.25,
            ddb: (fuu + fvv) * 0.25,
            dbdb: (fuu + i * fuv * 2.0 - fvv) * 0.25,
        }
    }

    pub fn from_taylor(t: &Taylor) -> Self {
        Self::from_real(
            t.derivative(0, 0),
            t.derivative(1, 0),
            t.derivative(0, 1),
            t.derivative(2, 0),
            t.derivative(1, 1),
            t.derivative(0, 2),
        )
    }

    /// Real derivatives (f_u, f_v, f_uu, f_uv, f_vv).
    pub fn to_real(&self) -> [C64; 5] {
        let i = C64::new(0.0, 1.0);
        [
            self.d + self.db,
            i * (self.d - self.db),
            self.dd + self.ddb * 2.0 + self.dbdb,
            i * (self.dd - self.dbdb),
            -self.dd + self.ddb * 2.0 - self.dbdb,
        ]
    }

    /// Jet of the complex conjugate function.
    pub fn conj(&self) -> Self {
        WJet {
            f: self.f.conj(),
            d: self.db.conj(),
            db: self.d.conj(),
            dd: self.dbdb.conj(),
            ddb: self.ddb.conj(),
            dbdb: self.dd.conj(),
        }
    }
}
