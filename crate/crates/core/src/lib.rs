//! Geometry of the space L(H³) of oriented geodesics of hyperbolic 3-space.
//!
//! L(H³) carries a neutral Kähler structure (G, J, Ω). A surface in L(H³)
//! is a two-parameter line congruence; when it is Lagrangian it is the
//! normal congruence of a one-parameter family of parallel surfaces in H³.
//! The crate evaluates the optical scalars of congruences, the induced
//! metric and its Gauss curvature, reconstructs the orthogonal surfaces and
//! checks that a surface is Weingarten exactly when the induced metric on
//! its normal congruence is flat.
//!
//! Modules, roughly bottom-up:
//!
//! * [`models`]: upper half-space and ball models of H³.
//! * [`geodesic_space`]: oriented geodesics in (μ₁, μ₂) and (ξ, η) coordinates.
//! * [`kahler`]: the Kähler triple on tangent vectors of L(H³).
//! * [`congruence`]: charts ν ↦ (μ₁, μ₂), their jets, optical scalars.
//! * [`induced_geometry`]: induced metric and its Gauss curvature.
//! * [`orthogonal_surfaces`]: r-fields, surfaces, principal curvatures.
//! * [`catalog`]: α-surfaces, spheres, horospheres, flat examples.
//! * [`exprdsl`]: a tiny complex expression language with Wirtinger derivatives.

pub mod catalog;
pub mod congruence;
pub mod error;
pub mod exprdsl;
pub mod geodesic_space;
pub mod grid;
pub mod induced_geometry;
pub mod kahler;
pub mod models;
pub mod orthogonal_surfaces;
pub mod scalar;
pub mod taylor;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Tolerances shared across modules. Each can be overridden per call where
/// the corresponding API takes a `Tolerances` argument.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Lagrangian / complex-point / totally-null classification.
    pub class: f64,
    /// Minimum |Δ| before the adapted frame is declared degenerate.
    pub frame: f64,
    /// Minimum |1 + μ₁ μ̄₂| away from the reflected diagonal.
    pub diag: f64,
    /// Closeness to the boundary (|y| → 1, t → 0) in the model conversions.
    pub chart: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            class: 1e-8,
            frame: 1e-10,
            diag: 1e-10,
            chart: 1e-9,
        }
    }
}
