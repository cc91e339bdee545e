//! Complex scalar abstraction shared by plain numbers and Taylor jets.
//!
//! Geometry routines that must be differentiated (surface normals, the
//! geodesic through a point, analytic charts) are written once over
//! [`Scalar`] and evaluated either on [`C64`] or on [`crate::taylor::Taylor`].

use crate::C64;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Send
    + Sync
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: C64) -> Self;
    /// Value at the expansion point.
    fn value(&self) -> C64;
    fn conj(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn tanh(self) -> Self;
    fn cosh(self) -> Self;
    fn sinh(self) -> Self;
    fn atanh(self) -> Self;
    fn recip(self) -> Self;
    fn scale(self, k: f64) -> Self;

    fn real(x: f64) -> Self {
        Self::constant(C64::new(x, 0.0))
    }
    fn mul_c(self, c: C64) -> Self {
        self * Self::constant(c)
    }
    fn add_c(self, c: C64) -> Self {
        self + Self::constant(c)
    }
    /// Real part, still a complex-valued scalar with zero imaginary part.
    fn re(self) -> Self {
        (self + self.conj()).scale(0.5)
    }
    fn im(self) -> Self {
        (self - self.conj()) * Self::constant(C64::new(0.0, -0.5))
    }
    fn mod_sqr(self) -> Self {
        self * self.conj()
    }
    fn modulus(self) -> Self {
        self.mod_sqr().sqrt()
    }
    fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut acc = Self::real(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for C64 {
    fn constant(c: C64) -> Self {
        c
    }
    fn value(&self) -> C64 {
        *self
    }
    fn conj(self) -> Self {
        C64::conj(&self)
    }
    fn exp(self) -> Self {
        C64::exp(self)
    }
    fn ln(self) -> Self {
        C64::ln(self)
    }
    fn sqrt(self) -> Self {
        C64::sqrt(self)
    }
    fn tanh(self) -> Self {
        C64::tanh(self)
    }
    fn cosh(self) -> Self {
        C64::cosh(self)
    }
    fn sinh(self) -> Self {
        C64::sinh(self)
    }
    fn atanh(self) -> Self {
        C64::atanh(self)
    }
    fn recip(self) -> Self {
        C64::new(1.0, 0.0) / self
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn powi(self, n: i32) -> Self {
        C64::powi(&self, n)
    }
}
