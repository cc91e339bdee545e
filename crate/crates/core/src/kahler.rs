//! The neutral Kähler structure (G, J, Ω) of L(H³) in the (μ₁, μ₂) chart.
//!
//! With a = (1 + μ₁μ̄₂)⁻² and tangent vectors X = (X₁, X₂) = (dμ₁, dμ₂)(X):
//!
//!   Ω(X, Y) = −Re[a (X₁Ȳ₂ − Y₁X̄₂)]
//!   G(X, Y) =  Im[a (X₁Ȳ₂ + Y₁X̄₂)]
//!
//! and J multiplies both components by i, so that G = Ω(J·, ·). The 2-form
//! is −½(a dμ₁∧dμ̄₂ + ā dμ̄₁∧dμ₂) with (α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X).

use crate::error::{Error, Result};
use crate::geodesic_space::OrientedGeodesic;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicTangent {
    pub base: OrientedGeodesic,
    pub dmu1: C64,
    pub dmu2: C64,
}

impl GeodesicTangent {
    pub fn new(base: OrientedGeodesic, dmu1: C64, dmu2: C64) -> Self {
        GeodesicTangent { base, dmu1, dmu2 }
    }
}

/// (1 + μ₁μ̄₂)⁻²
pub fn coefficient(mu1: C64, mu2: C64) -> C64 {
    let a = C64::new(1.0, 0.0) + mu1 * mu2.conj();
    (a * a).inv()
}

fn common_coefficient(x: &GeodesicTangent, y: &GeodesicTangent) -> Result<C64> {
    if x.base != y.base {
        return Err(Error::BaseMismatch);
    }
    let (mu1, mu2) = x.base.finite_mu()?;
    Ok(coefficient(mu1, mu2))
}

/// Ω on raw components at (μ₁, μ₂).
pub fn omega_raw(mu1: C64, mu2: C64, x: (C64, C64), y: (C64, C64)) -> f64 {
    let a = coefficient(mu1, mu2);
    -(a * (x.0 * y.1.conj() - y.0 * x.1.conj())).re
}

/// G on raw components at (μ₁, μ₂).
pub fn metric_raw(mu1: C64, mu2: C64, x: (C64, C64), y: (C64, C64)) -> f64 {
    let a = coefficient(mu1, mu2);
    (a * (x.0 * y.1.conj() + y.0 * x.1.conj())).im
}

pub fn omega(x: &GeodesicTangent, y: &GeodesicTangent) -> Result<f64> {
    let a = common_coefficient(x, y)?;
    Ok(-(a * (x.dmu1 * y.dmu2.conj() - y.dmu1 * x.dmu2.conj())).re)
}

pub fn metric_g(x: &GeodesicTangent, y: &GeodesicTangent) -> Result<f64> {
    let a = common_coefficient(x, y)?;
    Ok((a * (x.dmu1 * y.dmu2.conj() + y.dmu1 * x.dmu2.conj())).im)
}

pub fn apply_j(x: &GeodesicTangent) -> GeodesicTangent {
    let i = C64::new(0.0, 1.0);
    GeodesicTangent {
        base: x.base,
        dmu1: i * x.dmu1,
        dmu2: i * x.dmu2,
    }
}

/// Gram matrix of G in the real basis ∂/∂Re μ₁, ∂/∂Im μ₁, ∂/∂Re μ₂, ∂/∂Im μ₂.
pub fn gram_matrix(mu1: C64, mu2: C64) -> [[f64; 4]; 4] {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let basis = [(one, zero), (i, zero), (zero, one), (zero, i)];
    let mut m = [[0.0; 4]; 4];
    for (a, &x) in basis.iter().enumerate() {
        for (b, &y) in basis.iter().enumerate() {
            m[a][b] = metric_raw(mu1, mu2, x, y);
        }
    }
    m
}
