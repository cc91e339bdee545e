//! Immersed surfaces in the upper half-space and their normal congruences.

use crate::congruence::{CongruenceChart, Jet2};
use crate::error::{Error, Result};
use crate::geodesic_space::geodesic_through_generic;
use crate::grid::Domain;
use crate::scalar::Scalar;
use crate::taylor::{Taylor, WJet};
use crate::{Tolerances, C64};

/// A parametrised surface (s, q) ↦ (t, z) in the upper half-space, written
/// over [`Scalar`] so that normals can be differentiated exactly. The
/// parameter plane is identified with the ν-plane by ν = s + i q.
pub trait Immersion: Send + Sync {
    fn point<S: Scalar>(&self, s: S, q: S) -> (S, S);
    fn domain(&self) -> Domain;
    fn name(&self) -> String {
        "surface".into()
    }
}

/// The congruence of oriented normal geodesics of an immersion. The normal
/// is the Euclidean cross product ∂ₛp × ∂𝑞p in (t, x₁, x₂) coordinates, or
/// its negative when `flip` is set.
#[derive(Debug, Clone)]
pub struct SurfaceChart<I> {
    pub surface: I,
    pub flip: bool,
}

/// Values of (μ₁, μ₂, r_p) as Taylor jets in (u, v) at ν.
fn normal_jets<I: Immersion>(surface: &I, flip: bool, nu: C64) -> (Taylor, Taylor, Taylor) {
    let (s, q) = Taylor::real_pair(nu.re, nu.im);
    let (t, z) = surface.point(s, q);
    let (x1, x2) = (z.re(), z.im());
    let (ts, tq) = (t.partial_u(), t.partial_v());
    let (x1s, x1q) = (x1.partial_u(), x1.partial_v());
    let (x2s, x2q) = (x2.partial_u(), x2.partial_v());
    let mut n0 = x1s * x2q - x2s * x1q;
    let mut n1 = x2s * tq - ts * x2q;
    let mut n2 = ts * x1q - x1s * tq;
    if flip {
        n0 = -n0;
        n1 = -n1;
        n2 = -n2;
    }
    let w = n1 + n2 * Taylor::constant(C64::new(0.0, 1.0));
    geodesic_through_generic(t, z, n0, w)
}

impl<I: Immersion> SurfaceChart<I> {
    pub fn new(surface: I) -> Self {
        SurfaceChart { surface, flip: false }
    }

    pub fn flipped(mut self) -> Self {
        self.flip = !self.flip;
        self
    }

    /// The surface point at ν.
    pub fn surface_point(&self, nu: C64) -> (f64, C64) {
        let (t, z) = self.surface.point(C64::new(nu.re, 0.0), C64::new(nu.im, 0.0));
        (t.re, z)
    }

    /// The parameter r at which the normal geodesic at ν meets the surface.
    pub fn surface_r(&self, nu: C64) -> Result<f64> {
        let (_, _, r) = self.checked(nu)?;
        Ok(r.value().re)
    }

    /// Jet of the surface parameter r_p(ν).
    pub fn surface_r_jet(&self, nu: C64) -> Result<WJet> {
        let (_, _, r) = self.checked(nu)?;
        Ok(WJet::from_taylor(&r))
    }

    fn checked(&self, nu: C64) -> Result<(Taylor, Taylor, Taylor)> {
        let (m1, m2, r) = normal_jets(&self.surface, self.flip, nu);
        let ok = |x: C64| x.re.is_finite() && x.im.is_finite();
        if !(ok(m1.value()) && ok(m2.value()) && ok(r.value())) || m2.value().norm() == 0.0 {
            return Err(Error::ChartSingular(format!("normal geodesic at {nu} reaches infinity")));
        }
        Ok((m1, m2, r))
    }
}

impl<I: Immersion> CongruenceChart for SurfaceChart<I> {
    fn eval(&self, nu: C64) -> Result<(C64, C64)> {
        let (m1, m2, _) = self.checked(nu)?;
        Ok((m1.value(), m2.value()))
    }
    fn jet(&self, nu: C64) -> Result<Jet2> {
        let (m1, m2, _) = self.checked(nu)?;
        Ok(Jet2 {
            nu,
            mu1: WJet::from_taylor(&m1),
            mu2: WJet::from_taylor(&m2),
        })
    }
    fn domain(&self) -> Domain {
        self.surface.domain()
    }
    fn name(&self) -> String {
        format!("normal congruence of {}", self.surface.name())
    }
}

/// The normal congruence of an immersion. Normals that are vertical at some
/// sample surface as `ChartSingular` when that sample is evaluated.
pub fn normal_congruence_of_surface<I: Immersion>(surface: I) -> SurfaceChart<I> {
    SurfaceChart::new(surface)
}

/// A graph t = t₀ + Σ c·xᵖyᵠ over z = x + i y.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGraph {
    pub t0: f64,
    pub terms: Vec<(u32, u32, f64)>,
    pub domain: Domain,
}

impl PolyGraph {
    /// A non-symmetric graph whose normal congruence is not Weingarten.
    pub fn bumpy() -> Self {
        PolyGraph {
            t0: 1.0,
            terms: vec![(2, 0, 0.3), (0, 1, 0.1), (1, 2, 0.2), (0, 3, 0.15)],
            domain: Domain::rect(-0.3, -0.3, 0.3, 0.3),
        }
    }
}

impl Immersion for PolyGraph {
    fn point<S: Scalar>(&self, s: S, q: S) -> (S, S) {
        let mut t = S::real(self.t0);
        for &(p, k, c) in &self.terms {
            t = t + s.powi(p as i32) * q.powi(k as i32) * S::real(c);
        }
        (t, s + q * S::constant(C64::new(0.0, 1.0)))
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        "polynomial graph".into()
    }
}

/// Profile functions for rotationally symmetric graphs t = F(|z|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// t = a cosh(b|z|)
    Cosh { a: f64, b: f64 },
    /// t = a + b|z|²
    Paraboloid { a: f64, b: f64 },
    /// t = a + b exp(−c|z|²)
    Gaussian { a: f64, b: f64, c: f64 },
}

impl Profile {
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "cosh" => Some(Profile::Cosh { a: 1.0, b: 1.0 }),
            "paraboloid" => Some(Profile::Paraboloid { a: 1.0, b: 0.4 }),
            "gaussian" => Some(Profile::Gaussian { a: 1.0, b: 0.5, c: 1.0 }),
            _ => None,
        }
    }
}

/// A graph t = F(|z|) over z = s + i q, rotationally symmetric about the
/// vertical axis through z = 0. Its normal congruence is Weingarten.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationalGraph {
    pub profile: Profile,
    pub domain: Domain,
}

impl RotationalGraph {
    /// The default domain stays off the symmetry axis, where the normal is vertical.
    pub fn new(profile: Profile) -> Self {
        RotationalGraph {
            profile,
            domain: Domain::rect(0.3, -0.25, 0.8, 0.25),
        }
    }
}

impl Immersion for RotationalGraph {
    fn point<S: Scalar>(&self, s: S, q: S) -> (S, S) {
        let rr = s * s + q * q;
        let t = match self.profile {
            Profile::Cosh { a, b } => (rr.sqrt() * S::real(b)).cosh() * S::real(a),
            Profile::Paraboloid { a, b } => S::real(a) + rr * S::real(b),
            Profile::Gaussian { a, b, c } => S::real(a) + (-(rr * S::real(c))).exp() * S::real(b),
        };
        (t, s + q * S::constant(C64::new(0.0, 1.0)))
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        format!("rotational graph {:?}", self.profile)
    }
}

/// The cap of the Euclidean sphere with centre (t_c, z_c) and radius R above
/// the plane, as a graph t = t_c + √(R² − |z − z_c|²). Covers geodesic
/// spheres (t_c > R), horospheres (t_c = R) and totally geodesic
/// hemispheres (t_c = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct SphereCap {
    pub center_t: f64,
    pub center_z: C64,
    pub radius: f64,
    pub domain: Domain,
}

impl SphereCap {
    /// The geodesic sphere of hyperbolic radius ρ about (t₀, z₀): the
    /// Euclidean sphere with centre height t₀ cosh ρ and radius t₀ sinh ρ.
    pub fn geodesic_sphere(t0: f64, z0: C64, rho: f64, domain: Domain) -> Self {
        SphereCap {
            center_t: t0 * rho.cosh(),
            center_z: z0,
            radius: t0 * rho.sinh(),
            domain,
        }
    }
}

impl Immersion for SphereCap {
    fn point<S: Scalar>(&self, s: S, q: S) -> (S, S) {
        let z = s + q * S::constant(C64::new(0.0, 1.0));
        let d = z - S::constant(self.center_z);
        let t = S::real(self.center_t) + (S::real(self.radius * self.radius) - d.mod_sqr()).sqrt();
        (t, z)
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        "sphere cap".into()
    }
}

/// Whether a jet-consistent normal congruence is Lagrangian at ν: the twist
/// at the surface parameter, relative to the scalars' size.
pub fn surface_twist<I: Immersion>(chart: &SurfaceChart<I>, nu: C64, tol: &Tolerances) -> Result<f64> {
    let r = chart.surface_r(nu)?;
    let s = crate::congruence::optical_scalars(chart, nu, r, tol)?;
    Ok(s.twist)
}
