//! Closed-form congruence families and the flat / CMC-1 predicates.
//!
//! The holomorphic Lagrangian charts are the Möbius graphs
//!
//! ```text
//! μ₂ = (A₀ + (|A₀|² + A₁)μ₁)/(1 + Ā₀μ₁),   A₀ ∈ ℂ, A₁ ∈ ℝ
//! ```
//!
//! normal to a geodesic sphere (A₁ > 0), a horosphere (A₁ = 0) or a family
//! of equidistant surfaces containing a totally geodesic plane (A₁ < 0).

use crate::congruence::{optical_scalars_at, Analytic, AnalyticMap, CongruenceChart, ExprChart};
use crate::error::{Error, Result};
use crate::exprdsl::{Expr, Var};
use crate::geodesic_space::mu_to_xieta_generic;
use crate::grid::{Domain, Exec, Grid, DEFAULT_MARGIN};
use crate::induced_geometry::{GraphJet, GraphQuantities};
use crate::models::UpperHalfPoint;
use crate::orthogonal_surfaces::{potential_dr, RField};
use crate::scalar::Scalar;
use crate::{Tolerances, C64};
use serde::{Deserialize, Serialize};

pub const DEFAULT_RADIUS: f64 = 0.8;
pub const DEFAULT_GRID: usize = 41;

/// The disk |ν| ≤ 0.8.
pub fn default_domain() -> Domain {
    Domain::disk(C64::new(0.0, 0.0), DEFAULT_RADIUS)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParams {
    pub a0: C64,
    pub a1: f64,
}

impl AlphaParams {
    pub fn new(a0: C64, a1: f64) -> Self {
        AlphaParams { a0, a1 }
    }

    /// |A₀|² + A₁
    fn b(&self) -> f64 {
        self.a0.norm_sqr() + self.a1
    }

    /// The pole −1/Ā₀ of the Möbius map, if finite.
    pub fn pole(&self) -> Option<C64> {
        (self.a0.norm() > 0.0).then(|| -1.0 / self.a0.conj())
    }

    /// The zero −A₀/(|A₀|² + A₁), where the geodesics become vertical.
    pub fn zero(&self) -> Option<C64> {
        let b = self.b();
        (b != 0.0).then(|| -self.a0 / b)
    }

    pub fn mu2(&self, mu1: C64) -> C64 {
        (self.a0 + mu1 * self.b()) / (1.0 + self.a0.conj() * mu1)
    }
}

/// The Möbius graph of [`AlphaParams`] as an analytic chart.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMap {
    pub params: AlphaParams,
    pub domain: Domain,
}

impl AnalyticMap for AlphaMap {
    fn map<S: Scalar>(&self, nu: S) -> (S, S) {
        let p = &self.params;
        let mu2 = (S::constant(p.a0) + nu.scale(p.b())) / (S::real(1.0) + nu.mul_c(p.a0.conj()));
        (nu, mu2)
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        format!("alpha(A0={}, A1={})", self.params.a0, self.params.a1)
    }
}

pub type AlphaChart = Analytic<AlphaMap>;

/// The default disk with the pole and the zero of μ₂ cut out.
pub fn alpha_chart(p: AlphaParams) -> AlphaChart {
    let mut domain = default_domain();
    for c in [p.pole(), p.zero()].into_iter().flatten() {
        domain = domain.excluding(c, DEFAULT_MARGIN);
    }
    Analytic(AlphaMap { params: p, domain })
}

/// The chart on a caller-supplied domain, which must stay clear of the pole.
pub fn alpha_chart_on(p: AlphaParams, domain: Domain) -> Result<AlphaChart> {
    if let Some(pole) = p.pole() {
        if domain.contains(pole) {
            return Err(Error::PoleInDomain(format!("mu1 = {pole}")));
        }
    }
    Ok(Analytic(AlphaMap { params: p, domain }))
}

/// Taylor coefficients of μ₂ at μ₁ = 0: A₀, then Aₙ = (−1)ⁿ⁻¹Ā₀ⁿ⁻¹A₁.
pub fn alpha_series_coefficients(p: AlphaParams, n: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(p.a0);
    let mut term = C64::new(p.a1, 0.0);
    for _ in 1..=n {
        out.push(term);
        term *= -p.a0.conj();
    }
    out
}

/// Parameters of the normal congruence of the geodesic sphere with the given centre.
pub fn sphere_congruence(center: &UpperHalfPoint) -> AlphaParams {
    let s = center.t * center.t + center.z.norm_sqr();
    AlphaParams {
        a0: center.z / s,
        a1: center.t * center.t / (s * s),
    }
}

/// The centre z₀ = A₀/(A₁ + |A₀|²), t₀ = √A₁/(A₁ + |A₀|²); requires A₁ > 0.
pub fn sphere_center(p: AlphaParams) -> Result<UpperHalfPoint> {
    if p.a1 <= 0.0 {
        return Err(Error::InvalidParameter(format!("sphere centre needs A1 > 0, got {}", p.a1)));
    }
    let b = p.b();
    UpperHalfPoint::new(p.a1.sqrt() / b, p.a0 / b)
}

/// z̄₀μ₁μ₂ + (t₀² + |z₀|²)μ₂ − μ₁ − z₀, zero exactly on normals to the sphere.
pub fn sphere_residual(center: &UpperHalfPoint, mu1: C64, mu2: C64) -> C64 {
    let (t0, z0) = (center.t, center.z);
    z0.conj() * mu1 * mu2 + (t0 * t0 + z0.norm_sqr()) * mu2 - mu1 - z0
}

/// The parameter r₀ at which the geodesic (μ₁, μ₂) passes closest to
/// `center`: tanh r₀ = Re((z₀ − η)ξ̄), clamped to the open interval.
pub fn sphere_center_parameter(center: &UpperHalfPoint, mu1: C64, mu2: C64) -> f64 {
    let (xi, eta) = mu_to_xieta_generic(mu1, mu2);
    let th = ((center.z - eta) * xi.conj()).re;
    th.clamp(-1.0 + 1e-16, 1.0 - 1e-16).atanh()
}

/// μ₂ = A₀: normals to a horosphere, all sharing the forward endpoint
/// 1/Ā₀. In this orientation ρ = +1.
pub fn horosphere_chart(a0: C64) -> Result<ExprChart> {
    if a0.norm() == 0.0 {
        return Err(Error::InvalidParameter("A0 = 0 gives vertical geodesics".into()));
    }
    let domain = default_domain().excluding(-1.0 / a0.conj(), DEFAULT_MARGIN);
    Ok(ExprChart::graph(Expr::constant(a0), domain).with_name(format!("horosphere(A0={a0})")))
}

/// The same horosphere with the opposite orientation: μ₁ = −1/Ā₀ fixed,
/// μ₂ = ν. All geodesics share the backward endpoint 1/Ā₀ and ρ = −1.
pub fn horosphere_chart_converging(a0: C64) -> Result<ExprChart> {
    if a0.norm() == 0.0 {
        return Err(Error::InvalidParameter("A0 = 0 gives vertical geodesics".into()));
    }
    let domain = default_domain()
        .excluding(C64::new(0.0, 0.0), DEFAULT_MARGIN)
        .excluding(a0, DEFAULT_MARGIN);
    Ok(ExprChart::new(Expr::constant(-1.0 / a0.conj()), Expr::var(Var::M1), domain)
        .with_name(format!("horosphere(A0={a0}, converging)")))
}

/// The chart of p (A₁ < 0) and the constant C = −ln(−A₁) for which the
/// orthogonal surface 2r = ln|A₀ + (A₁ + |A₀|²)μ₁|² + C is totally geodesic.
pub fn totally_geodesic_chart(p: AlphaParams) -> Result<(AlphaChart, f64)> {
    if p.a1 >= 0.0 {
        return Err(Error::InvalidParameter(format!("totally geodesic branch needs A1 < 0, got {}", p.a1)));
    }
    Ok((alpha_chart(p), -(-p.a1).ln()))
}

/// r(μ₁) = ½(ln|A₀ + (A₁ + |A₀|²)μ₁|² + C).
pub fn alpha_r(p: AlphaParams, c: f64, mu1: C64) -> f64 {
    0.5 * ((p.a0 + mu1 * p.b()).norm_sqr().ln() + c)
}

/// The closed-form ρ = −(A₁e^C + 1)/(A₁e^C − 1) along the surface [`alpha_r`].
pub fn alpha_rho(p: AlphaParams, c: f64) -> f64 {
    let k = p.a1 * c.exp();
    -(k + 1.0) / (k - 1.0)
}

/// [`alpha_r`] sampled on a grid.
pub fn alpha_r_field(p: AlphaParams, c: f64, grid: &Grid) -> RField {
    let values: Vec<Option<f64>> = (0..grid.len())
        .map(|k| grid.active(k).then(|| alpha_r(p, c, grid.point(k))).filter(|r| r.is_finite()))
        .collect();
    let base = values.iter().position(|v| v.is_some()).unwrap_or(0);
    RField {
        grid: grid.clone(),
        r0: values[base].unwrap_or(0.0),
        values,
        base,
        max_circulation: 0.0,
    }
}

/// μ₂ = k·μ̄₁: anti-holomorphic, hence flat.
pub fn flat_conjugate_chart(k: C64) -> Result<ExprChart> {
    if k.norm() == 0.0 {
        return Err(Error::InvalidParameter("scale must be non-zero".into()));
    }
    let mu2 = Expr::mul(Expr::constant(k), Expr::var(Var::C1));
    let domain = default_domain().excluding(C64::new(0.0, 0.0), DEFAULT_MARGIN);
    Ok(ExprChart::graph(mu2, domain).with_name(format!("flat-conjugate(k={k})")))
}

/// A rotationally symmetric graph with holomorphic σ₀ = c/μ₁²:
/// μ₂ = μ₁(w − 1)/|μ₁|² with w = (w₊ − K s^q w₋)/(1 − K s^q), s = |μ₁|²,
/// q = √(1 + 4c), w± = (−1 ± q)/(2c).
#[derive(Debug, Clone, PartialEq)]
pub struct Cmc1Map {
    pub c: f64,
    pub k: f64,
    pub domain: Domain,
}

impl Cmc1Map {
    pub fn new(c: f64, k: f64) -> Result<Self> {
        if c <= 0.0 {
            return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
        }
        Ok(Cmc1Map {
            c,
            k,
            domain: Domain::disk(C64::new(0.3, 0.3), 0.15),
        })
    }
}

impl AnalyticMap for Cmc1Map {
    fn map<S: Scalar>(&self, nu: S) -> (S, S) {
        let q = (1.0 + 4.0 * self.c).sqrt();
        let wp = (-1.0 + q) / (2.0 * self.c);
        let wm = (-1.0 - q) / (2.0 * self.c);
        let s = nu * nu.conj();
        let sq = (s.ln().scale(q)).exp().scale(self.k);
        let w = (S::real(wp) - sq.scale(wm)) / (S::real(1.0) - sq);
        (nu, nu * (w - S::real(1.0)) / s)
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        format!("cmc1-rotational(c={}, K={})", self.c, self.k)
    }
}

pub fn cmc1_rotational_chart(c: f64, k: f64) -> Result<Analytic<Cmc1Map>> {
    Ok(Analytic(Cmc1Map::new(c, k)?))
}

/// Lagrangian rank-1 charts μ₁ = u, μ₂ = (1/(a(u) + i b(u, v)) − 1)/u on
/// u ∈ [0.5, 1], |v| ≤ 0.5. Three choices of (a, b) are built in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneMap {
    pub which: u8,
}

impl AnalyticMap for RankOneMap {
    fn map<S: Scalar>(&self, nu: S) -> (S, S) {
        let u = nu.re();
        let v = nu.im();
        let one = S::real(1.0);
        let (a, b) = match self.which {
            0 => (one + u * u, v),
            1 => (S::real(2.0) + u, v + (u * v).scale(0.5)),
            _ => (u.exp(), v + (v * v * v).scale(0.3) + u.scale(0.2)),
        };
        let i = S::constant(C64::new(0.0, 1.0));
        (u, ((a + i * b).recip() - one) / u)
    }
    fn domain(&self) -> Domain {
        Domain::rect(0.5, -0.5, 1.0, 0.5)
    }
    fn name(&self) -> String {
        format!("rank-one #{}", self.which)
    }
}

pub fn rank_one_chart(which: u8) -> Result<Analytic<RankOneMap>> {
    if which > 2 {
        return Err(Error::InvalidParameter(format!("rank-one chart index {which} not in 0..=2")));
    }
    Ok(Analytic(RankOneMap { which }))
}

/// Samples where the chart itself leaves the affine (μ₁, μ₂) chart are
/// skipped by the grid predicates; everything else is an error.
fn chart_singular(e: &Error) -> bool {
    matches!(e, Error::ChartSingular(_) | Error::ReflectedDiagonal { .. })
}

fn graph_quantities<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, tol: &Tolerances) -> Result<(GraphJet, GraphQuantities)> {
    let jet = chart.jet(nu)?.validated(tol)?;
    let gj = GraphJet::from_jet(&jet, tol)?;
    let q = gj.quantities();
    let lag = q.rho0.im.abs() / q.rho0.norm().max(1.0);
    if lag > tol.class.sqrt() {
        return Err(Error::NotLagrangian { residual: lag });
    }
    Ok((gj, q))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatnessReport {
    /// max |∂μ₂| in graph coordinates
    pub max_d_mu2: f64,
    /// max |κ| at r = 0 over the samples where the frame is regular
    pub max_kappa: f64,
    pub flat: bool,
    pub skipped: usize,
}

/// Flat ⟺ μ₂ is anti-holomorphic in μ₁. Fails with `NotLagrangian`.
pub fn flatness_test<C: CongruenceChart + ?Sized>(chart: &C, grid: &Grid, tol: &Tolerances, exec: Exec) -> Result<FlatnessReport> {
    let pts = grid.active_points();
    let rows: Vec<Result<(f64, Option<f64>)>> = exec.map(pts.len(), |i| {
        let nu = pts[i].1;
        let (gj, _) = graph_quantities(chart, nu, tol)?;
        let jet = chart.jet(nu)?.validated(tol)?;
        let kappa = optical_scalars_at(&jet, 0.0, tol).ok().map(|s| s.kappa().abs());
        Ok((gj.f.d.norm(), kappa))
    });
    let total = rows.len();
    let rows: Vec<(f64, Option<f64>)> = rows
        .into_iter()
        .filter(|r| !matches!(r, Err(e) if chart_singular(e)))
        .collect::<Result<_>>()?;
    let skipped = total - rows.len();
    if rows.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let max_d_mu2 = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let max_kappa = rows.iter().filter_map(|r| r.1).fold(0.0, f64::max);
    Ok(FlatnessReport {
        max_d_mu2,
        max_kappa,
        flat: max_d_mu2 <= 1e-8,
        skipped,
    })
}

/// 2∂r of the CMC-1 candidate r = −½ln(|1 + μ̄₁μ₂|²ρ₀/|μ₂|²) minus 2∂r from
/// the potential equation, in graph coordinates. Zero exactly when the
/// candidate is an orthogonal surface.
pub fn cmc1_condition_residual(gj: &GraphJet, q: &GraphQuantities) -> C64 {
    let (m1, m2) = (gj.mu1, gj.mu2);
    let (f_d, f_db) = (gj.f.d, gj.f.db);
    let a = q.a;
    let ab = a.conj();
    let d_a = m2.conj() + m1 * f_db.conj();
    let d_ab = m1.conj() * f_d;
    let d_abs_a = (d_a * ab + a * d_ab) / a.norm_sqr();
    let d_rho0 = q.db_rho0.conj() / q.rho0.re;
    let d_abs_m2 = (f_d * m2.conj() + m2 * f_db.conj()) / m2.norm_sqr();
    let closed = -(d_abs_a + d_rho0 - d_abs_m2);
    let potential = m2 / ab * (f_d / (m2 * m2)) + m2.conj() / a * (C64::new(1.0, 0.0) + f_db.conj() / (m2.conj() * m2.conj()));
    closed - potential
}

/// r = −½ln(|1 + μ̄₁μ₂|²ρ₀/|μ₂|²).
pub fn cmc1_r(q: &GraphQuantities) -> f64 {
    -0.5 * (q.a.norm_sqr() * q.rho0.re / q.mu2.norm_sqr()).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cmc1Report {
    pub max_db_sigma0: f64,
    pub max_sigma0: f64,
    pub holomorphic: bool,
    /// σ₀ ≡ 0: the induced metric is degenerate and the closed-form r is not used.
    pub degenerate: bool,
    /// max |ρ + 1| at the closed-form r, when holomorphic and non-degenerate
    pub max_rho_residual: Option<f64>,
    /// max |2∂r_closed − 2∂r_potential|
    pub max_condition_residual: Option<f64>,
    pub skipped: usize,
}

/// CMC-1 ⟺ σ₀ holomorphic (∂̄σ₀ = 0 up to 10⁻⁷). Fails with
/// `NotLagrangian`, or `NonPositiveRho0` when a non-degenerate chart has
/// ρ₀ ≤ 0 somewhere.
pub fn cmc1_test<C: CongruenceChart + ?Sized>(chart: &C, grid: &Grid, tol: &Tolerances, exec: Exec) -> Result<Cmc1Report> {
    let pts = grid.active_points();
    let rows: Vec<Result<(C64, GraphJet, GraphQuantities)>> = exec.map(pts.len(), |i| {
        let (gj, q) = graph_quantities(chart, pts[i].1, tol)?;
        Ok((pts[i].1, gj, q))
    });
    let total = rows.len();
    let rows: Vec<(C64, GraphJet, GraphQuantities)> = rows
        .into_iter()
        .filter(|r| !matches!(r, Err(e) if chart_singular(e)))
        .collect::<Result<_>>()?;
    let skipped = total - rows.len();
    if rows.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let max_db_sigma0 = rows.iter().map(|(_, _, q)| q.db_sigma0.norm()).fold(0.0, f64::max);
    let max_sigma0 = rows.iter().map(|(_, _, q)| q.sigma0.norm()).fold(0.0, f64::max);
    let holomorphic = max_db_sigma0 <= 1e-7;
    let degenerate = max_sigma0 <= tol.frame;
    let mut report = Cmc1Report {
        max_db_sigma0,
        max_sigma0,
        holomorphic,
        degenerate,
        max_rho_residual: None,
        max_condition_residual: None,
        skipped,
    };
    if degenerate {
        return Ok(report);
    }
    if let Some((_, _, q)) = rows.iter().find(|(_, _, q)| q.rho0.re <= 0.0) {
        return Err(Error::NonPositiveRho0 { rho0: q.rho0.re });
    }
    report.max_condition_residual = Some(
        rows.iter()
            .map(|(_, gj, q)| cmc1_condition_residual(gj, q).norm())
            .fold(0.0, f64::max),
    );
    if holomorphic {
        let res: Vec<Result<f64>> = exec.map(rows.len(), |i| {
            let (nu, _, q) = &rows[i];
            let jet = chart.jet(*nu)?.validated(tol)?;
            let s = optical_scalars_at(&jet, cmc1_r(q), tol)?;
            Ok((s.rho + 1.0).norm())
        });
        let res: Vec<f64> = res.into_iter().collect::<Result<_>>()?;
        report.max_rho_residual = Some(res.into_iter().fold(0.0, f64::max));
    }
    Ok(report)
}

/// The Codazzi residual |∂σ̄₀ − ∂̄ρ₀ − 2μ₂ρ₀/(1 + μ̄₁μ₂)| at ν.
pub fn codazzi_residual<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, tol: &Tolerances) -> Result<f64> {
    let jet = chart.jet(nu)?.validated(tol)?;
    Ok(GraphJet::from_jet(&jet, tol)?.quantities().codazzi_residual().norm())
}

/// Consistency of the potential equation with a closed-form r: 2∂r from
/// the equation minus `dr2`.
pub fn potential_mismatch<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, dr2: C64, tol: &Tolerances) -> Result<f64> {
    let jet = chart.jet(nu)?.validated(tol)?;
    Ok((potential_dr(&jet) * 2.0 - dr2).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::classify_point;

    #[test]
    fn alpha_examples() {
        let p = AlphaParams::new(C64::new(0.0, 0.0), 1.0);
        for nu in [C64::new(0.3, -0.2), C64::new(-0.5, 0.1)] {
            assert!((p.mu2(nu) - nu).norm() < 1e-15);
        }
        let p = AlphaParams::new(C64::new(0.5, 0.0), 0.75);
        let nu = C64::new(0.2, 0.4);
        assert!((p.mu2(nu) - (0.5 + nu) / (1.0 + 0.5 * nu)).norm() < 1e-15);
        let bad = alpha_chart_on(AlphaParams::new(C64::new(2.0, 0.0), 1.0), default_domain());
        assert!(matches!(bad, Err(Error::PoleInDomain(_))));
    }

    #[test]
    fn sphere_params_round_trip() {
        let c = UpperHalfPoint::new(1.0, C64::new(0.0, 0.0)).unwrap();
        let p = sphere_congruence(&c);
        assert_eq!((p.a0, p.a1), (C64::new(0.0, 0.0), 1.0));
        let c = UpperHalfPoint::new(0.7, C64::new(0.2, -0.4)).unwrap();
        let back = sphere_center(sphere_congruence(&c)).unwrap();
        assert!((back.t - c.t).abs() < 1e-12 && (back.z - c.z).norm() < 1e-12);
    }

    #[test]
    fn horosphere_classification() {
        let tol = Tolerances::default();
        let ch = horosphere_chart(C64::new(1.0, 0.0)).unwrap();
        let pc = classify_point(&ch, C64::new(0.2, 0.3), &tol).unwrap();
        assert!(pc.lagrangian && pc.complex_point);
        let s = crate::congruence::optical_scalars(&ch, C64::new(0.2, 0.3), 0.4, &tol).unwrap();
        assert!((s.rho - 1.0).norm() < 1e-12);
        let ch = horosphere_chart_converging(C64::new(1.0, 0.0)).unwrap();
        let s = crate::congruence::optical_scalars(&ch, C64::new(0.2, 0.3), 0.4, &tol).unwrap();
        assert!((s.rho + 1.0).norm() < 1e-12 && s.sigma.norm() < 1e-12);
    }

    #[test]
    fn totally_geodesic_rho() {
        let tol = Tolerances::default();
        let p = AlphaParams::new(C64::new(0.0, 0.0), -1.0);
        let (ch, c) = totally_geodesic_chart(p).unwrap();
        assert_eq!(c, 0.0);
        assert_eq!(alpha_rho(p, c), 0.0);
        let nu = C64::new(0.4, 0.2);
        let s = crate::congruence::optical_scalars(&ch, nu, alpha_r(p, c, nu), &tol).unwrap();
        assert!(s.rho.norm() < 1e-12 && s.sigma.norm() < 1e-12);
    }

    #[test]
    fn cmc1_rotational() {
        let tol = Tolerances::default();
        let ch = cmc1_rotational_chart(0.5, 0.3).unwrap();
        let grid = Grid::new(ch.domain(), 11);
        let rep = cmc1_test(&ch, &grid, &tol, Exec::Sequential).unwrap();
        assert!(rep.holomorphic && !rep.degenerate, "{rep:?}");
        assert!(rep.max_rho_residual.unwrap() < 1e-7, "{rep:?}");
        assert!(rep.max_condition_residual.unwrap() < 1e-7, "{rep:?}");
    }

    #[test]
    fn flat_conjugate_is_not_cmc() {
        let tol = Tolerances::default();
        let ch = flat_conjugate_chart(C64::new(1.0, 0.0)).unwrap();
        let grid = Grid::new(ch.domain(), 11);
        assert!(flatness_test(&ch, &grid, &tol, Exec::Sequential).unwrap().flat);
        assert!(matches!(cmc1_test(&ch, &grid, &tol, Exec::Sequential), Err(Error::NonPositiveRho0 { .. })));
    }
}
