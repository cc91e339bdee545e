//! Line congruences: charts ν ↦ (μ₁(ν), μ₂(ν)) into L(H³) and the optical
//! scalars of the corresponding geodesic congruence.
//!
//! Along the geodesic of parameter ν the scalars ρ (expansion and twist)
//! and σ (shear) depend on the arclength r. With A = 1 + μ₁μ̄₂ and the
//! invariants J_kl = ∂μ_k ∂̄μ_l − ∂̄μ_k ∂μ_l:
//!
//! ```text
//! ¼Δ = J₂₂̄ e^{2r}/(|μ₂|²|A|²) + J₂̄₁/A² + J₁̄₂/Ā² + |μ₂|² J₁₁̄ e^{−2r}/|A|²
//! σ  = 8 μ₂ J₂̄₁̄ / (μ̄₂ Δ |A|²)
//! ρ  = −1 − (8/Δ) [J₂₁̄/Ā² − |μ₂|² J₁₁̄ e^{−2r}/|A|²]
//! ```
//!
//! They satisfy the Sachs equations ∂ρ/∂r = ρ² + σσ̄ − 1 and
//! ∂σ/∂r = (ρ + ρ̄)σ.

mod charts;
mod xieta;

pub use charts::{Analytic, AnalyticMap, ExprChart, NumericChart};
pub use xieta::{adapted_frame, optical_scalars_xieta, FrameCoefficients, XiEtaJet};

use crate::error::{Error, Result};
use crate::grid::Domain;
use crate::taylor::{Taylor, WJet};
use crate::{Tolerances, C64};
use serde::{Deserialize, Serialize};

/// Values and Wirtinger partials up to second order of μ₁ and μ₂ at ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub nu: C64,
    pub mu1: WJet,
    pub mu2: WJet,
}

impl Jet2 {
    /// Checks that the image lies off the reflected diagonal and μ₂ ≠ 0.
    pub fn validated(self, tol: &Tolerances) -> Result<Self> {
        let (m1, m2) = (self.mu1.f, self.mu2.f);
        if !(m1.norm().is_finite() && m2.norm().is_finite()) {
            return Err(Error::ChartSingular(format!("non-finite image at {}", self.nu)));
        }
        if m2.norm() <= tol.chart {
            return Err(Error::ChartSingular(format!("mu2 = 0 at {}", self.nu)));
        }
        let a = (C64::new(1.0, 0.0) + m1 * m2.conj()).norm();
        if a <= tol.diag {
            return Err(Error::ReflectedDiagonal { value: a });
        }
        Ok(self)
    }

    /// 1 + μ₁μ̄₂
    pub fn a(&self) -> C64 {
        C64::new(1.0, 0.0) + self.mu1.f * self.mu2.f.conj()
    }

    /// Truncated Taylor expansions of (μ₁, μ₂) in (u, v), for chain rules.
    pub fn to_taylor(&self) -> (Taylor, Taylor) {
        (wjet_taylor(&self.mu1), wjet_taylor(&self.mu2))
    }
}

fn wjet_taylor(j: &WJet) -> Taylor {
    let [fu, fv, fuu, fuv, fvv] = j.to_real();
    let (u, v) = Taylor::real_pair(0.0, 0.0);
    let c = <Taylor as crate::scalar::Scalar>::constant;
    c(j.f) + c(fu) * u + c(fv) * v + c(fuu * 0.5) * u * u + c(fuv) * u * v + c(fvv * 0.5) * v * v
}

/// A parametrised surface in L(H³). `eval` and `jet` must be pure.
pub trait CongruenceChart: Send + Sync {
    fn eval(&self, nu: C64) -> Result<(C64, C64)>;
    /// The jet at ν, without a domain check.
    fn jet(&self, nu: C64) -> Result<Jet2>;
    fn domain(&self) -> Domain;
    fn name(&self) -> String {
        "chart".into()
    }
}

impl<T: CongruenceChart + ?Sized> CongruenceChart for Box<T> {
    fn eval(&self, nu: C64) -> Result<(C64, C64)> {
        (**self).eval(nu)
    }
    fn jet(&self, nu: C64) -> Result<Jet2> {
        (**self).jet(nu)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn name(&self) -> String {
        (**self).name()
    }
}

impl<T: CongruenceChart + ?Sized> CongruenceChart for &T {
    fn eval(&self, nu: C64) -> Result<(C64, C64)> {
        (**self).eval(nu)
    }
    fn jet(&self, nu: C64) -> Result<Jet2> {
        (**self).jet(nu)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn name(&self) -> String {
        (**self).name()
    }
}

/// The jet at ν, failing with `OutOfDomain` outside the chart's domain.
pub fn jets<C: CongruenceChart + ?Sized>(chart: &C, nu: C64) -> Result<Jet2> {
    if !chart.domain().contains(nu) {
        return Err(Error::OutOfDomain(nu));
    }
    chart.jet(nu)
}

/// Index into {μ₁, μ₂, μ̄₁, μ̄₂}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    One = 0,
    Two = 1,
    OneBar = 2,
    TwoBar = 3,
}

/// J_kl = ∂μ_k ∂̄μ_l − ∂̄μ_k ∂μ_l for k, l ∈ {1, 2, 1̄, 2̄}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JInvariants {
    pub m: [[C64; 4]; 4],
}

impl JInvariants {
    pub fn get(&self, k: Slot, l: Slot) -> C64 {
        self.m[k as usize][l as usize]
    }
}

pub fn j_invariants(jet: &Jet2) -> JInvariants {
    let c1 = jet.mu1.conj();
    let c2 = jet.mu2.conj();
    let comps = [&jet.mu1, &jet.mu2, &c1, &c2];
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for (k, a) in comps.iter().enumerate() {
        for (l, b) in comps.iter().enumerate() {
            m[k][l] = a.d * b.db - a.db * b.d;
        }
    }
    JInvariants { m }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalScalars {
    pub rho: C64,
    pub sigma: C64,
    /// λ = Im ρ
    pub twist: f64,
    /// Δ; the imaginary residue of the complex expression is dropped.
    pub delta: f64,
}

impl OpticalScalars {
    /// κ = ρρ̄ − σσ̄ − 1, the Gauss curvature of the orthogonal surface.
    pub fn kappa(&self) -> f64 {
        self.rho.norm_sqr() - self.sigma.norm_sqr() - 1.0
    }
}

/// Quantities of Prop-3 type that do not depend on r.
#[derive(Debug, Clone, Copy)]
struct MuTerms {
    j: JInvariants,
    m2: C64,
    a: C64,
    ab: C64,
}

impl MuTerms {
    fn new(jet: &Jet2) -> Self {
        let a = jet.a();
        MuTerms {
            j: j_invariants(jet),
            m2: jet.mu2.f,
            a,
            ab: a.conj(),
        }
    }

    /// ¼Δ as a complex number (real up to rounding).
    fn quarter_delta(&self, r: f64) -> C64 {
        use Slot::*;
        let (j, m2, a, ab) = (&self.j, self.m2, self.a, self.ab);
        let aa = a.norm_sqr();
        let e2 = (2.0 * r).exp();
        j.get(Two, TwoBar) * e2 / (m2.norm_sqr() * aa)
            + j.get(TwoBar, One) / (a * a)
            + j.get(OneBar, Two) / (ab * ab)
            + j.get(One, OneBar) * m2.norm_sqr() / (aa * e2)
    }
}

/// Δ(r) at a jet; complex-valued for diagnostics.
pub fn delta_complex(jet: &Jet2, r: f64) -> C64 {
    MuTerms::new(jet).quarter_delta(r) * 4.0
}

fn scalars_from_terms(t: &MuTerms, r: f64, tol: &Tolerances) -> Result<OpticalScalars> {
    use Slot::*;
    let delta = t.quarter_delta(r) * 4.0;
    if delta.norm() <= tol.frame {
        return Err(Error::DegenerateFrame { delta: delta.norm() });
    }
    let (j, m2, a, ab) = (&t.j, t.m2, t.a, t.ab);
    let d = C64::new(delta.re, 0.0);
    let sigma = m2 * j.get(TwoBar, OneBar) * 8.0 / (m2.conj() * d * a.norm_sqr());
    let rho = -C64::new(1.0, 0.0)
        - (j.get(Two, OneBar) / (ab * ab) - j.get(One, OneBar) * m2.norm_sqr() * (-2.0 * r).exp() / ab.norm_sqr()) * 8.0
            / d;
    Ok(OpticalScalars {
        rho,
        sigma,
        twist: rho.im,
        delta: delta.re,
    })
}

/// Optical scalars at a precomputed jet.
pub fn optical_scalars_at(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<OpticalScalars> {
    scalars_from_terms(&MuTerms::new(jet), r, tol)
}

pub fn optical_scalars<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, r: f64, tol: &Tolerances) -> Result<OpticalScalars> {
    optical_scalars_at(&chart.jet(nu)?.validated(tol)?, r, tol)
}

/// Closed forms of the twist λ and of κ in terms of the J invariants:
/// λ = (4i/Δ)[J₂₁̄/Ā² − J₁₂̄/A²], κ = (8/Δ)[J₂₁̄/Ā² + J₁₂̄/A²].
pub fn twist_and_kappa_j(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<(f64, f64)> {
    use Slot::*;
    let t = MuTerms::new(jet);
    let delta = t.quarter_delta(r) * 4.0;
    if delta.norm() <= tol.frame {
        return Err(Error::DegenerateFrame { delta: delta.norm() });
    }
    let p = t.j.get(Two, OneBar) / (t.ab * t.ab);
    let q = t.j.get(One, TwoBar) / (t.a * t.a);
    let lam = (p - q) * C64::new(0.0, 4.0) / delta.re;
    let kap = (p + q) * 8.0 / delta.re;
    Ok((lam.re, kap.re))
}

/// Ω(∂ᵤf, ∂ᵥf): the du∧dv coefficient of the pulled-back symplectic form.
pub fn pullback_omega(jet: &Jet2) -> f64 {
    let [u1, v1, ..] = jet.mu1.to_real();
    let [u2, v2, ..] = jet.mu2.to_real();
    crate::kahler::omega_raw(jet.mu1.f, jet.mu2.f, (u1, u2), (v1, v2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClass {
    pub lagrangian: bool,
    pub complex_point: bool,
    pub rank: u8,
    pub totally_null: bool,
}

/// Singular values (s_max, s_min) of the real Jacobian of ν ↦ μ₁.
pub fn mu1_singular_values(jet: &Jet2) -> (f64, f64) {
    let (a, b) = (jet.mu1.d.norm(), jet.mu1.db.norm());
    (a + b, (a - b).abs())
}

/// Pointwise classification. The twist is read at r = 0, or at r = ±1
/// when the frame degenerates at r = 0; its vanishing does not depend on r.
pub fn classify_point<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, tol: &Tolerances) -> Result<PointClass> {
    let jet = chart.jet(nu)?.validated(tol)?;
    classify_jet(&jet, tol)
}

pub fn classify_jet(jet: &Jet2, tol: &Tolerances) -> Result<PointClass> {
    let terms = MuTerms::new(jet);
    let twist = [0.0, 1.0, -1.0]
        .iter()
        .find_map(|&r| scalars_from_terms(&terms, r, tol).ok())
        .map(|s| s.twist)
        .ok_or(Error::DegenerateFrame { delta: 0.0 })?;
    let lagrangian = twist.abs() <= tol.class;
    let complex_point = terms.j.get(Slot::One, Slot::Two).norm() <= tol.class;
    let (smax, smin) = mu1_singular_values(jet);
    let rank = if smax <= tol.class {
        0
    } else if smin <= tol.class * smax.max(1.0) {
        1
    } else {
        2
    };
    Ok(PointClass {
        lagrangian,
        complex_point,
        rank,
        totally_null: lagrangian && complex_point,
    })
}

/// Residuals of the two Sachs equations at (ν, r), from fourth-order
/// central differences in r. Each residual is divided by
/// max(1, |ρ|² + |σ|²) and the step shrinks near focal points.
pub fn sachs_residual(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<(f64, f64)> {
    let terms = MuTerms::new(jet);
    let s0 = scalars_from_terms(&terms, r, tol)?;
    let size = 1.0 + s0.rho.norm() + s0.sigma.norm();
    let h = 1e-3 / size;
    let at = |k: f64| scalars_from_terms(&terms, r + k * h, tol);
    let (p2, p1, m1, m2) = (at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?);
    let d = |f: fn(&OpticalScalars) -> C64| (f(&m2) - f(&m1) * 8.0 + f(&p1) * 8.0 - f(&p2)) / (12.0 * h);
    let drho = d(|s| s.rho);
    let dsigma = d(|s| s.sigma);
    let (rho, sigma) = (s0.rho, s0.sigma);
    let scale = 1.0f64.max(rho.norm_sqr() + sigma.norm_sqr());
    let e1 = (drho - (rho * rho + sigma.norm_sqr() - 1.0)).norm() / scale;
    let e2 = (dsigma - (rho + rho.conj()) * sigma).norm() / scale;
    Ok((e1, e2))
}
