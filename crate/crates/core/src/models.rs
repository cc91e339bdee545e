//! Upper half-space and ball models of H³ and the isometry between them.
//!
//! The upper half-space is {(t, z) : t > 0, z ∈ ℂ} with metric
//! (dt² + |dz|²)/t². The ball is {y ∈ ℝ³ : |y| < 1} with metric
//! 4|dy|²/(1 − |y|²)². Boundary points are excluded by construction.

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint {
    pub t: f64,
    pub z: C64,
}

impl UpperHalfPoint {
    pub fn new(t: f64, z: C64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidPoint(format!("upper half-space needs t > 0, got t = {t}")));
        }
        Ok(UpperHalfPoint { t, z })
    }

    /// Cartesian coordinates (x₀, x₁, x₂) = (t, Re z, Im z).
    pub fn cartesian(&self) -> [f64; 3] {
        [self.t, self.z.re, self.z.im]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub y: [f64; 3],
}

impl BallPoint {
    pub fn new(y: [f64; 3]) -> Result<Self> {
        let n2: f64 = y.iter().map(|c| c * c).sum();
        if !(n2 < 1.0) || y.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("ball needs |y| < 1, got |y|² = {n2}")));
        }
        Ok(BallPoint { y })
    }

    pub fn norm(&self) -> f64 {
        self.y.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// y₁ = 2x₁/D, y₂ = 2x₂/D, y₃ = (x₀² + |z|² − 1)/D with D = (x₀ + 1)² + |z|².
pub fn uhs_to_ball(p: &UpperHalfPoint) -> BallPoint {
    let [x0, x1, x2] = p.cartesian();
    let zz = x1 * x1 + x2 * x2;
    let d = (x0 + 1.0) * (x0 + 1.0) + zz;
    BallPoint {
        y: [2.0 * x1 / d, 2.0 * x2 / d, (x0 * x0 + zz - 1.0) / d],
    }
}

/// Inverse of [`uhs_to_ball`]. Fails with `NearBoundary` when |y| > 1 − tol.
pub fn ball_to_uhs(b: &BallPoint, tol: f64) -> Result<UpperHalfPoint> {
    if b.norm() > 1.0 - tol {
        return Err(Error::NearBoundary { tol });
    }
    // (1 − y₃, y₁, y₂) is the inversion of (x₀ + 1, x₁, x₂) in the sphere of radius √2.
    let [y1, y2, y3] = b.y;
    let w0 = 1.0 - y3;
    let n = w0 * w0 + y1 * y1 + y2 * y2;
    UpperHalfPoint::new(2.0 * w0 / n - 1.0, C64::new(2.0 * y1 / n, 2.0 * y2 / n))
}

/// Hyperbolic distance: cosh d = 1 + |p − q|²/(2 t_p t_q).
pub fn distance(p: &UpperHalfPoint, q: &UpperHalfPoint) -> f64 {
    let d2 = (p.t - q.t).powi(2) + (p.z - q.z).norm_sqr();
    // acosh(1 + x) = 2 asinh(√(x/2)), accurate for small x
    2.0 * (d2 / (4.0 * p.t * q.t)).sqrt().asinh()
}

/// A point of one of the two models, for model-agnostic metric evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelPoint {
    UpperHalf(UpperHalfPoint),
    Ball(BallPoint),
}

/// The metric tensor in the model's own Cartesian coordinates.
pub fn metric_tensor(p: &ModelPoint) -> [[f64; 3]; 3] {
    let f = match p {
        ModelPoint::UpperHalf(q) => 1.0 / (q.t * q.t),
        ModelPoint::Ball(b) => {
            let s = 1.0 - b.norm() * b.norm();
            4.0 / (s * s)
        }
    };
    let mut g = [[0.0; 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = f;
    }
    g
}

/// Jacobian ∂y/∂x of [`uhs_to_ball`], rows indexed by y.
pub fn uhs_to_ball_jacobian(p: &UpperHalfPoint) -> [[f64; 3]; 3] {
    let x = p.cartesian();
    let w = [x[0] + 1.0, x[1], x[2]];
    let d: f64 = w.iter().map(|c| c * c).sum();
    // y = (2x₁/D, 2x₂/D, 1 − 2w₀/D)
    let num = [2.0 * x[1], 2.0 * x[2], -2.0 * w[0]];
    let dnum = [[0.0, 2.0, 0.0], [0.0, 0.0, 2.0], [-2.0, 0.0, 0.0]];
    let mut jac = [[0.0; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            jac[i][k] = dnum[i][k] / d - num[i] * 2.0 * w[k] / (d * d);
        }
    }
    jac
}
