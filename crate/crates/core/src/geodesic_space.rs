//! Oriented geodesics of H³ in holomorphic (μ₁, μ₂) coordinates.
//!
//! An oriented geodesic with finite ideal endpoints z₋ (start) and z₊ (end)
//! has μ₁ = −z₋ and μ₂ = 1/z̄₊. The alternative coordinates
//!
//!   ξ = 2μ₂/(1 + μ̄₁μ₂),   η = (1 − μ₁μ̄₂)/(2μ̄₂)
//!
//! describe the same geodesic as the Euclidean semicircle with centre η and
//! radius 1/|ξ| over the boundary plane. The arclength parameter r is zero
//! at the top of the semicircle and grows towards z₊:
//!
//!   t = 1/(|ξ| cosh r),   z = η + tanh r / ξ̄.

use crate::error::{Error, Result};
use crate::models::UpperHalfPoint;
use crate::scalar::Scalar;
use crate::C64;
use serde::{Deserialize, Serialize};

/// A point of the Riemann sphere ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedComplex {
    Finite(C64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(&self) -> Option<C64> {
        match self {
            ExtendedComplex::Finite(z) => Some(*z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(-z),
            ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        }
    }

    /// z ↦ 1/z̄, the map between μ₂ and the forward endpoint.
    pub fn inv_conj(&self) -> Self {
        match self {
            ExtendedComplex::Infinity => ExtendedComplex::Finite(C64::new(0.0, 0.0)),
            ExtendedComplex::Finite(z) if z.norm_sqr() == 0.0 => ExtendedComplex::Infinity,
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z.conj().inv()),
        }
    }

    /// Chordal distance on the unit Riemann sphere, 2|a − b|/√((1+|a|²)(1+|b|²)).
    pub fn chordal(&self, other: &Self) -> f64 {
        match (self, other) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
            (ExtendedComplex::Finite(a), ExtendedComplex::Infinity)
            | (ExtendedComplex::Infinity, ExtendedComplex::Finite(a)) => 2.0 / (1.0 + a.norm_sqr()).sqrt(),
            (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => {
                2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
            }
        }
    }
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            ExtendedComplex::Finite(z)
        } else {
            ExtendedComplex::Infinity
        }
    }
}

/// An oriented geodesic, stored by its (μ₁, μ₂) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedGeodesic {
    pub mu1: ExtendedComplex,
    pub mu2: ExtendedComplex,
}

/// |1 + μ₁μ̄₂| written in whichever chart is finite.
fn diagonal_distance(mu1: &ExtendedComplex, mu2: &ExtendedComplex) -> f64 {
    use ExtendedComplex::*;
    match (mu1, mu2) {
        (Finite(a), Finite(b)) => (C64::new(1.0, 0.0) + a * b.conj()).norm(),
        (Infinity, Finite(b)) => b.norm(),
        (Finite(a), Infinity) => a.norm(),
        (Infinity, Infinity) => 1.0,
    }
}

impl OrientedGeodesic {
    /// Fails with `ReflectedDiagonal` when |1 + μ₁μ̄₂| ≤ tol, i.e. when the
    /// two endpoints coincide and no geodesic exists.
    pub fn new(mu1: ExtendedComplex, mu2: ExtendedComplex, tol: f64) -> Result<Self> {
        let value = diagonal_distance(&mu1, &mu2);
        if value <= tol {
            return Err(Error::ReflectedDiagonal { value });
        }
        Ok(OrientedGeodesic { mu1, mu2 })
    }

    pub fn from_mu(mu1: C64, mu2: C64, tol: f64) -> Result<Self> {
        Self::new(ExtendedComplex::Finite(mu1), ExtendedComplex::Finite(mu2), tol)
    }

    /// Both coordinates as finite numbers, or `ChartSingular`.
    pub fn finite_mu(&self) -> Result<(C64, C64)> {
        match (self.mu1, self.mu2) {
            (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => Ok((a, b)),
            _ => Err(Error::ChartSingular("mu coordinate at infinity".into())),
        }
    }

    /// Equality up to chordal distance `tol` in both coordinates.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.mu1.chordal(&other.mu1) <= tol && self.mu2.chordal(&other.mu2) <= tol
    }
}

/// Semicircle coordinates of a geodesic with finite μ₁ and μ₂ ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiEta {
    pub xi: C64,
    pub eta: C64,
}

pub fn mu_to_xieta_generic<S: Scalar>(mu1: S, mu2: S) -> (S, S) {
    let one = S::real(1.0);
    let xi = mu2.scale(2.0) / (one + mu1.conj() * mu2);
    let eta = (one - mu1 * mu2.conj()) / mu2.conj().scale(2.0);
    (xi, eta)
}

pub fn xieta_to_mu_generic<S: Scalar>(xi: S, eta: S) -> (S, S) {
    let inv = xi.conj().recip();
    (inv - eta, (eta + inv).conj().recip())
}

pub fn point_at_generic<S: Scalar>(xi: S, eta: S, r: S) -> (S, S) {
    let t = (xi.modulus() * r.cosh()).recip();
    let z = eta + r.tanh() / xi.conj();
    (t, z)
}

/// Converts to (ξ, η). Geodesics ending or starting at ∞ (vertical lines)
/// and geodesics with μ₂ = 0 have no such coordinates.
pub fn mu_to_xieta(g: &OrientedGeodesic) -> Result<XiEta> {
    let (mu1, mu2) = g.finite_mu()?;
    if mu2.norm() == 0.0 {
        return Err(Error::ChartSingular("mu2 = 0 (vertical geodesic)".into()));
    }
    let (xi, eta) = mu_to_xieta_generic(mu1, mu2);
    Ok(XiEta { xi, eta })
}

pub fn xieta_to_mu(c: &XiEta, tol: f64) -> Result<OrientedGeodesic> {
    if c.xi.norm() == 0.0 {
        return Err(Error::ChartSingular("xi = 0".into()));
    }
    let (mu1, mu2) = xieta_to_mu_generic(c.xi, c.eta);
    OrientedGeodesic::new(mu1.into(), mu2.into(), tol)
}

/// The point at signed arclength r from the top of the semicircle.
pub fn point_at(g: &OrientedGeodesic, r: f64) -> Result<UpperHalfPoint> {
    let c = mu_to_xieta(g)?;
    let (t, z) = point_at_generic(c.xi, c.eta, C64::new(r, 0.0));
    UpperHalfPoint::new(t.re, z)
}

/// Unit tangent (dt/dr, dz/dr) of the geodesic at parameter r.
pub fn tangent_at(g: &OrientedGeodesic, r: f64) -> Result<(f64, C64)> {
    let c = mu_to_xieta(g)?;
    let ch = r.cosh();
    let dt = -r.tanh() / (c.xi.norm() * ch);
    let dz = c.xi.conj().inv() / (ch * ch);
    Ok((dt, dz))
}

/// Ideal endpoints (z₋, z₊) = (−μ₁, 1/μ̄₂).
pub fn boundary_endpoints(g: &OrientedGeodesic) -> (ExtendedComplex, ExtendedComplex) {
    (g.mu1.neg(), g.mu2.inv_conj())
}

pub fn from_endpoints(zm: ExtendedComplex, zp: ExtendedComplex, tol: f64) -> Result<OrientedGeodesic> {
    if zm.chordal(&zp) <= tol {
        return Err(Error::ReflectedDiagonal { value: zm.chordal(&zp) });
    }
    OrientedGeodesic::new(zm.neg(), zp.inv_conj(), tol)
}

/// (μ₁, μ₂, r) of the geodesic through (t, z) with direction (v₀, w),
/// w the horizontal part. Generic so that it can be differentiated.
pub fn geodesic_through_generic<S: Scalar>(t: S, z: S, v0: S, w: S) -> (S, S, S) {
    let wn = w.modulus();
    let what = w / wn;
    let d = -(v0 * t) / wn;
    let c = z - d * what;
    let rad = (d * d + t * t).sqrt();
    let zp = c + rad * what;
    let zm = c - rad * what;
    (-zm, zp.conj().recip(), (d / rad).atanh())
}

/// The oriented geodesic through p with initial direction v and the
/// parameter r at which it passes through p. Vertical directions give
/// geodesics with an endpoint at ∞, which are `ChartSingular` here.
pub fn geodesic_through(p: &UpperHalfPoint, v0: f64, w: C64, tol: f64) -> Result<(OrientedGeodesic, f64)> {
    let speed = (v0 * v0 + w.norm_sqr()).sqrt();
    if speed == 0.0 {
        return Err(Error::InvalidParameter("zero direction".into()));
    }
    if w.norm() <= tol * speed {
        return Err(Error::ChartSingular("vertical geodesic".into()));
    }
    let (mu1, mu2, r) = geodesic_through_generic(
        C64::new(p.t, 0.0),
        p.z,
        C64::new(v0, 0.0),
        w,
    );
    Ok((OrientedGeodesic::from_mu(mu1, mu2, tol)?, r.re))
}
