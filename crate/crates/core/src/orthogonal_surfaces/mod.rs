//! Surfaces in H³ orthogonal to a Lagrangian congruence.
//!
//! On a Lagrangian chart the arclength parameter r(ν) of an orthogonal
//! surface solves
//!
//! ```text
//! 2∂r = μ₂/(1 + μ̄₁μ₂)·(∂μ̄₁ + ∂μ₂/μ₂²) + μ̄₂/(1 + μ₁μ̄₂)·(∂μ₁ + ∂μ̄₂/μ̄₂²)
//! ```
//!
//! which is integrable exactly when the chart is Lagrangian. Adding a
//! constant to r moves to a parallel surface. The surface point over ν is
//! the point of the geodesic μ(ν) at parameter r(ν), and its principal
//! curvatures are λ₁,₂ = −ρ ± |σ| at that r.

mod surfaces;

pub use surfaces::{
    normal_congruence_of_surface, surface_twist, Immersion, PolyGraph, Profile, RotationalGraph, SphereCap,
    SurfaceChart,
};

use crate::congruence::{classify_jet, optical_scalars_at, CongruenceChart, Jet2, OpticalScalars};
use crate::error::{Error, Result};
use crate::geodesic_space::{mu_to_xieta_generic, point_at, point_at_generic, tangent_at, OrientedGeodesic};
use crate::grid::{Exec, Grid};
use crate::induced_geometry::{gauss_k_closed, gauss_k_rank_one, GraphJet};
use crate::models::UpperHalfPoint;
use crate::scalar::Scalar;
use crate::taylor::Taylor;
use crate::{Tolerances, C64};
use serde::{Deserialize, Serialize};

/// ∂r from the potential equation at a jet.
pub fn potential_dr(jet: &Jet2) -> C64 {
    let m2 = jet.mu2.f;
    let a = jet.a();
    let ab = a.conj();
    let d_m1b = jet.mu1.db.conj();
    let d_m2b = jet.mu2.db.conj();
    (m2 / ab * (d_m1b + jet.mu2.d / (m2 * m2)) + m2.conj() / a * (jet.mu1.d + d_m2b / (m2.conj() * m2.conj()))) * 0.5
}

/// (r_u, r_v) from the potential equation.
pub fn potential_gradient(jet: &Jet2) -> (f64, f64) {
    let dr = potential_dr(jet);
    (2.0 * dr.re, -2.0 * dr.im)
}

/// Values of r(ν) on a grid, integrated from r₀ at the base node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RField {
    pub grid: Grid,
    pub values: Vec<Option<f64>>,
    pub base: usize,
    pub r0: f64,
    /// Largest |∮ dr| over the grid plaquettes.
    pub max_circulation: f64,
}

impl RField {
    pub fn value(&self, k: usize) -> Option<f64> {
        self.values[k]
    }

    /// The parallel field r + c.
    pub fn shifted(&self, c: f64) -> RField {
        RField {
            values: self.values.iter().map(|v| v.map(|x| x + c)).collect(),
            r0: self.r0 + c,
            ..self.clone()
        }
    }

    /// (flat index, ν, r) for every node that carries a value.
    pub fn samples(&self) -> Vec<(usize, C64, f64)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.map(|r| (k, self.grid.point(k), r)))
            .collect()
    }
}

/// Closedness tolerance for the r-form: 10⁻⁷ of the domain scale.
pub fn closed_tolerance(grid: &Grid) -> f64 {
    1e-7 * grid.domain.region.scale()
}

fn simpson_step<F: Fn(f64) -> Option<f64>>(f: &F, a: f64, b: f64, fa: f64, fb: f64) -> Option<(f64, f64)> {
    let fm = f(0.5 * (a + b))?;
    Some(((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm))
}

/// Adaptive Simpson on [a, b] to absolute accuracy `eps`; `None` if an
/// evaluation fails or the recursion bottoms out.
fn adaptive_simpson<F: Fn(f64) -> Option<f64>>(f: &F, a: f64, b: f64, fa: f64, fb: f64, eps: f64, depth: u32) -> Option<f64> {
    let (whole, fm) = simpson_step(f, a, b, fa, fb)?;
    refine(f, a, b, fa, fm, fb, whole, eps, depth)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> Option<f64>>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let (left, flm) = simpson_step(f, a, m, fa, fm)?;
    let (right, frm) = simpson_step(f, m, b, fm, fb)?;
    let err = left + right - whole;
    if err.abs() <= 15.0 * eps || depth >= 24 {
        return Some(left + right + err / 15.0);
    }
    Some(
        refine(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)?
            + refine(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1)?,
    )
}

/// Integrates the potential equation from (ν₀, r₀), ν₀ snapped to the
/// nearest active node. Paths run along the base row, then up and down each
/// column; nodes cut off by masked samples are reached through their
/// neighbours. Each edge uses adaptive Simpson started from panels of at
/// most 1% of the domain diameter. Fails with
/// `NotLagrangian` if some plaquette circulation exceeds [`closed_tolerance`].
pub fn integrate_r<C: CongruenceChart + ?Sized>(
    chart: &C,
    grid: &Grid,
    nu0: C64,
    r0: f64,
    tol: &Tolerances,
    exec: Exec,
) -> Result<RField> {
    let n = grid.n;
    let (dx, dy) = grid.step();
    let grad_at = |nu: C64| -> Option<(f64, f64)> {
        let j = chart.jet(nu).ok()?.validated(tol).ok()?;
        let g = potential_gradient(&j);
        (g.0.is_finite() && g.1.is_finite()).then_some(g)
    };
    let node_grad: Vec<Option<(f64, f64)>> =
        exec.map(grid.len(), |k| if grid.active(k) { grad_at(grid.point(k)) } else { None });
    // initial Simpson panels no longer than 1% of the domain scale
    let panel = 0.01 * grid.domain.region.scale();
    let mx = (dx / panel).ceil().max(1.0) as usize;
    let my = (dy / panel).ceil().max(1.0) as usize;
    // four edges per plaquette; keep each well below the closedness tolerance
    let edge_tol = 1e-3 * closed_tolerance(grid) / dx.max(dy);
    // edge integrals: horizontal edge k = (i, j)→(i+1, j), vertical edge k = (i, j)→(i, j+1)
    let edge = |k: usize, horizontal: bool| -> Option<f64> {
        let (i, j) = grid.coords(k);
        let (k2, h, m) = if horizontal {
            if i + 1 >= n {
                return None;
            }
            (grid.index(i + 1, j), dx, mx)
        } else {
            if j + 1 >= n {
                return None;
            }
            (grid.index(i, j + 1), dy, my)
        };
        let pick = |g: (f64, f64)| if horizontal { g.0 } else { g.1 };
        let (p0, p1) = (grid.point(k), grid.point(k2));
        let f = |t: f64| grad_at(p0 + (p1 - p0) * t).map(pick);
        let mut fa = pick(node_grad[k]?);
        let fb_end = pick(node_grad[k2]?);
        let mut total = 0.0;
        for q in 0..m {
            let (a, b) = (q as f64 / m as f64, (q + 1) as f64 / m as f64);
            let fb = if q + 1 == m { fb_end } else { f(b)? };
            total += adaptive_simpson(&f, a, b, fa, fb, edge_tol / m as f64, 0)?;
            fa = fb;
        }
        Some(h * total)
    };
    let horiz: Vec<Option<f64>> = exec.map(grid.len(), |k| edge(k, true));
    let vert: Vec<Option<f64>> = exec.map(grid.len(), |k| edge(k, false));

    let mut max_circ: f64 = 0.0;
    for j in 0..n.saturating_sub(1) {
        for i in 0..n - 1 {
            let k = grid.index(i, j);
            if let (Some(a), Some(b), Some(c), Some(d)) =
                (horiz[k], vert[grid.index(i + 1, j)], horiz[grid.index(i, j + 1)], vert[k])
            {
                max_circ = max_circ.max((a + b - c - d).abs());
            }
        }
    }
    if max_circ > closed_tolerance(grid) {
        return Err(Error::NotLagrangian { residual: max_circ });
    }

    let base = (0..grid.len())
        .filter(|&k| node_grad[k].is_some())
        .min_by(|&a, &b| (grid.point(a) - nu0).norm().total_cmp(&(grid.point(b) - nu0).norm()))
        .ok_or(Error::EmptyDomain)?;
    let mut values: Vec<Option<f64>> = vec![None; grid.len()];
    values[base] = Some(r0);
    let (bi, bj) = grid.coords(base);
    // base row
    for dir in [1i64, -1] {
        let mut i = bi as i64;
        loop {
            let next = i + dir;
            if next < 0 || next >= n as i64 {
                break;
            }
            let (from, to) = (grid.index(i as usize, bj), grid.index(next as usize, bj));
            let e = if dir > 0 { horiz[from] } else { horiz[to].map(|x| -x) };
            match (values[from], e) {
                (Some(r), Some(e)) => values[to] = Some(r + e),
                _ => break,
            }
            i = next;
        }
    }
    // columns
    for i in 0..n {
        if values[grid.index(i, bj)].is_none() {
            continue;
        }
        for dir in [1i64, -1] {
            let mut j = bj as i64;
            loop {
                let next = j + dir;
                if next < 0 || next >= n as i64 {
                    break;
                }
                let (from, to) = (grid.index(i, j as usize), grid.index(i, next as usize));
                let e = if dir > 0 { vert[from] } else { vert[to].map(|x| -x) };
                match (values[from], e) {
                    (Some(r), Some(e)) => values[to] = Some(r + e),
                    _ => break,
                }
                j = next;
            }
        }
    }
    // sweep remaining reachable nodes
    loop {
        let mut changed = false;
        for k in 0..grid.len() {
            if values[k].is_some() || node_grad[k].is_none() {
                continue;
            }
            let (i, j) = grid.coords(k);
            let mut cand = None;
            if i > 0 {
                let w = grid.index(i - 1, j);
                cand = cand.or(values[w].zip(horiz[w]).map(|(r, e)| r + e));
            }
            if i + 1 < n {
                let e = grid.index(i + 1, j);
                cand = cand.or(values[e].zip(horiz[k]).map(|(r, x)| r - x));
            }
            if j > 0 {
                let s = grid.index(i, j - 1);
                cand = cand.or(values[s].zip(vert[s]).map(|(r, e)| r + e));
            }
            if j + 1 < n {
                let nn = grid.index(i, j + 1);
                cand = cand.or(values[nn].zip(vert[k]).map(|(r, x)| r - x));
            }
            if let Some(r) = cand {
                values[k] = Some(r);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(RField {
        grid: grid.clone(),
        values,
        base,
        r0,
        max_circulation: max_circ,
    })
}

/// A reconstructed point of the orthogonal surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub nu: C64,
    pub r: f64,
    pub point: UpperHalfPoint,
    pub lambda1: f64,
    pub lambda2: f64,
    pub kappa: f64,
}

/// λ₁ = −Re ρ + |σ| ≥ λ₂ = −Re ρ − |σ|. Requires |Im ρ| ≤ 10⁻⁶·max(1, |ρ|).
pub fn principal_curvatures(s: &OpticalScalars) -> Result<(f64, f64)> {
    if s.twist.abs() > 1e-6 * s.rho.norm().max(1.0) {
        return Err(Error::NotLagrangian { residual: s.twist.abs() });
    }
    let m = s.sigma.norm();
    Ok((-s.rho.re + m, -s.rho.re - m))
}

pub fn surface_sample(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<SurfaceSample> {
    let g = OrientedGeodesic::from_mu(jet.mu1.f, jet.mu2.f, tol.diag)?;
    let point = point_at(&g, r)?;
    let s = optical_scalars_at(jet, r, tol)?;
    let (lambda1, lambda2) = principal_curvatures(&s)?;
    Ok(SurfaceSample {
        nu: jet.nu,
        r,
        point,
        lambda1,
        lambda2,
        kappa: s.kappa(),
    })
}

/// Surface samples at every node of the field.
pub fn reconstruct_surface<C: CongruenceChart + ?Sized>(
    chart: &C,
    rf: &RField,
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<Option<SurfaceSample>>> {
    let out: Vec<Result<Option<SurfaceSample>>> = exec.map(rf.grid.len(), |k| match rf.values[k] {
        None => Ok(None),
        Some(r) => {
            let jet = chart.jet(rf.grid.point(k))?.validated(tol)?;
            surface_sample(&jet, r, tol).map(Some)
        }
    });
    out.into_iter().collect()
}

/// Largest |cos| of the hyperbolic angle between the geodesic direction
/// and the two surface tangents at the point over ν.
pub fn orthogonality_residual(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<f64> {
    let (rut, rvt) = potential_gradient(jet);
    let (m1, m2) = jet.to_taylor();
    let (xi, eta) = mu_to_xieta_generic(m1, m2);
    let (u, v) = Taylor::real_pair(0.0, 0.0);
    let rt = Taylor::real(r) + u * Taylor::real(rut) + v * Taylor::real(rvt);
    let (t, z) = point_at_generic(xi, eta, rt);
    let g = OrientedGeodesic::from_mu(jet.mu1.f, jet.mu2.f, tol.diag)?;
    let (gt, gz) = tangent_at(&g, r)?;
    let dir = [gt, gz.re, gz.im];
    let mut worst: f64 = 0.0;
    for (p, q) in [(1, 0), (0, 1)] {
        let zt = z.derivative(p, q);
        let tan = [t.derivative(p, q).re, zt.re, zt.im];
        let dot: f64 = tan.iter().zip(dir.iter()).map(|(a, b)| a * b).sum();
        let na: f64 = tan.iter().map(|a| a * a).sum::<f64>().sqrt();
        let nb: f64 = dir.iter().map(|a| a * a).sum::<f64>().sqrt();
        worst = worst.max(dot.abs() / (na * nb));
    }
    Ok(worst)
}

/// κ of the orthogonal surface by both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceKappa {
    /// ρρ̄ − σσ̄ − 1
    pub from_scalars: f64,
    /// (8/Δ)[J₂₁̄/Ā² + J₁₂̄/A²]
    pub from_j: f64,
}

pub fn surface_kappa<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, r: f64, tol: &Tolerances) -> Result<SurfaceKappa> {
    let jet = chart.jet(nu)?.validated(tol)?;
    let s = optical_scalars_at(&jet, r, tol)?;
    let (_, from_j) = crate::congruence::twist_and_kappa_j(&jet, r, tol)?;
    Ok(SurfaceKappa {
        from_scalars: s.kappa(),
        from_j,
    })
}

/// Pointwise Weingarten data at (ν, r(ν)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeingartenSample {
    pub nu: C64,
    pub r: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub kappa: f64,
    /// ∂ᵤλ₁∂ᵥλ₂ − ∂ᵥλ₁∂ᵤλ₂, the du∧dv coefficient of dλ₁∧dλ₂.
    pub defect: f64,
    /// defect/(|∇λ₁||∇λ₂|): the sine of the angle between the gradients.
    pub normalized_defect: f64,
    /// dμ₁∧dμ̄₁ coefficient of d(|σ|²/κ²)∧d((ρ+1)/κ).
    pub wedge_lhs: C64,
    /// −|μ₂|²|σ₀|⁴/(2i e^{2r} ρ₀⁴ |1+μ₁μ̄₂|²)·K, when K has a closed form here.
    pub wedge_rhs: Option<C64>,
    pub k: Option<f64>,
}

impl WeingartenSample {
    /// |lhs − rhs| relative to the larger side.
    pub fn wedge_residual(&self) -> Option<f64> {
        let rhs = self.wedge_rhs?;
        let scale = self.wedge_lhs.norm().max(rhs.norm());
        Some(if scale == 0.0 { 0.0 } else { (self.wedge_lhs - rhs).norm() / scale })
    }
}

/// Curvature data of the orthogonal surface as a function of (jet, r):
/// [λ₁, λ₂, |σ|²/κ², (ρ + 1)/κ].
fn curvature_data(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<[f64; 4]> {
    let s = optical_scalars_at(jet, r, tol)?;
    let (l1, l2) = principal_curvatures(&s)?;
    let k = s.kappa();
    Ok([l1, l2, s.sigma.norm_sqr() / (k * k), (s.rho.re + 1.0) / k])
}

const D1: [f64; 4] = [1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0];
const OFFS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];

/// The factor in d(|σ|²/κ²)∧d((ρ+1)/κ) = factor·K dμ₁∧dμ̄₁, as printed
/// (`printed = true`, with |1+μ₁μ̄₂|³ and positive sign) or as it holds
/// numerically (|1+μ₁μ̄₂|² and negative sign).
pub fn wedge_factor(jet: &Jet2, r: f64, tol: &Tolerances, printed: bool) -> Result<C64> {
    let gj = GraphJet::from_jet(jet, tol)?;
    let q = gj.quantities();
    let a = q.a.norm();
    let num = q.mu2.norm_sqr() * q.sigma0.norm_sqr().powi(2);
    let den = C64::new(0.0, 2.0) * (2.0 * r).exp() * q.rho0.powi(4);
    Ok(if printed {
        num / (den * a.powi(3))
    } else {
        -num / (den * a * a)
    })
}

/// Weingarten data at ν on the surface r. Derivatives along the surface are
/// fourth-order central differences of the curvature data at fixed r, plus
/// the r-derivative times the exact gradient of r from the potential
/// equation. The step is `h` in ν, shrunk by up to 20× where |κ| < 0.2. Fails with `FlatPoint` when |κ| ≤ 10⁻⁹.
pub fn weingarten_sample<C: CongruenceChart + ?Sized>(
    chart: &C,
    nu: C64,
    r: f64,
    h: f64,
    tol: &Tolerances,
) -> Result<WeingartenSample> {
    let jet = chart.jet(nu)?.validated(tol)?;
    let s = optical_scalars_at(&jet, r, tol)?;
    let kappa = s.kappa();
    if kappa.abs() <= 1e-9 {
        return Err(Error::FlatPoint { kappa });
    }
    let (l1, l2) = principal_curvatures(&s)?;
    let (ru, rv) = potential_gradient(&jet);
    // |σ|²/κ² and (ρ + 1)/κ vary on the length scale |κ| near κ = 0
    let shrink = (kappa.abs() / 0.2).clamp(0.05, 1.0);
    let h = h * shrink;
    let hr = 2e-4 * shrink;
    let mut dr = [0.0; 4];
    for (w, o) in D1.iter().zip(OFFS) {
        let c = curvature_data(&jet, r + o * hr, tol)?;
        for k in 0..4 {
            dr[k] += w * c[k] / hr;
        }
    }
    let mut du = [0.0; 4];
    let mut dv = [0.0; 4];
    for (w, o) in D1.iter().zip(OFFS) {
        let cu = curvature_data(&chart.jet(nu + C64::new(o * h, 0.0))?.validated(tol)?, r, tol)?;
        let cv = curvature_data(&chart.jet(nu + C64::new(0.0, o * h))?.validated(tol)?, r, tol)?;
        for k in 0..4 {
            du[k] += w * cu[k] / h;
            dv[k] += w * cv[k] / h;
        }
    }
    for k in 0..4 {
        du[k] += dr[k] * ru;
        dv[k] += dr[k] * rv;
    }
    let defect = du[0] * dv[1] - dv[0] * du[1];
    let n1 = (du[0] * du[0] + dv[0] * dv[0]).sqrt();
    let n2 = (du[1] * du[1] + dv[1] * dv[1]).sqrt();
    let normalized_defect = defect.abs() / (n1 * n2 + 1e-300);
    // du∧dv = (i/2) dν∧dν̄ and dμ₁∧dμ̄₁ = J₁₁̄ dν∧dν̄
    let j11b = jet.mu1.d.norm_sqr() - jet.mu1.db.norm_sqr();
    let wedge_lhs = C64::new(0.0, 0.5) * (du[2] * dv[3] - dv[2] * du[3]) / j11b;
    let k = gauss_k_closed(&jet, tol).ok();
    let wedge_rhs = match k {
        Some(k) => Some(wedge_factor(&jet, r, tol, false)? * k),
        None => None,
    };
    Ok(WeingartenSample {
        nu,
        r,
        lambda1: l1,
        lambda2: l2,
        kappa,
        defect,
        normalized_defect,
        wedge_lhs,
        wedge_rhs,
        k,
    })
}

/// Per-sample result of [`main_theorem_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremSample {
    pub nu: C64,
    pub r: f64,
    pub rank: u8,
    pub k: f64,
    /// κ of the orthogonal surface; `None` on rank-1 charts.
    pub kappa: Option<f64>,
    /// Normalized Weingarten defect (rank 2) or
    /// |(λ₁² − 1)(λ₂² − 1)|/((1 + λ₁²)(1 + λ₂²)) (rank 1);
    /// `None` at flat points, where K = 0 is the assertion instead.
    pub defect: Option<f64>,
    pub wedge_residual: Option<f64>,
    pub flat_point: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub samples: Vec<TheoremSample>,
    pub max_abs_k: f64,
    pub max_defect: f64,
    pub max_wedge_residual: Option<f64>,
    pub flat_points: usize,
    pub tol_k: f64,
    pub tol_defect: f64,
    /// max|K| ≤ tol_k
    pub flat: bool,
    /// max defect ≤ tol_defect
    pub weingarten: bool,
    /// flat ⟺ weingarten
    pub consistent: bool,
}

pub const TOL_K: f64 = 1e-5;
/// The wedge identity is compared only where |κ| is at least this large
/// (both sides grow like κ⁻⁴ near κ = 0 and the difference quotients lose
/// all accuracy there) and where |K| > [`TOL_K`], so that there is
/// something to compare.
pub const WEDGE_KAPPA_MIN: f64 = 1e-2;
pub const TOL_DEFECT: f64 = 1e-4;

/// Evaluates K and the Weingarten defect at every node of `rf` and compares
/// the two verdicts. Nodes where the pointwise evaluation fails (focal
/// points, frame degeneracies) propagate their error.
pub fn main_theorem_check<C: CongruenceChart + ?Sized>(
    chart: &C,
    rf: &RField,
    tol: &Tolerances,
    exec: Exec,
) -> Result<MainTheoremReport> {
    let h = 1e-3 * rf.grid.domain.region.scale();
    let fd_k = 0.2 * h;
    let samples = rf.samples();
    let results: Vec<Result<TheoremSample>> = exec.map(samples.len(), |i| {
        let (_, nu, r) = samples[i];
        let jet = chart.jet(nu)?.validated(tol)?;
        let class = classify_jet(&jet, tol)?;
        if class.rank == 1 {
            let k = gauss_k_rank_one(&jet, tol)?;
            let s = optical_scalars_at(&jet, r, tol)?;
            let (l1, l2) = principal_curvatures(&s)?;
            return Ok(TheoremSample {
                nu,
                r,
                rank: 1,
                k,
                kappa: Some(s.kappa()),
                defect: Some(((l1 * l1 - 1.0) * (l2 * l2 - 1.0)).abs() / ((1.0 + l1 * l1) * (1.0 + l2 * l2))),
                wedge_residual: None,
                flat_point: false,
            });
        }
        match weingarten_sample(chart, nu, r, fd_k, tol) {
            Ok(w) => Ok(TheoremSample {
                nu,
                r,
                rank: class.rank,
                k: w.k.ok_or(Error::DegenerateMetric { det: 0.0 })?,
                kappa: Some(w.kappa),
                defect: Some(w.normalized_defect),
                wedge_residual: if w.kappa.abs() >= WEDGE_KAPPA_MIN && w.k.is_some_and(|k| k.abs() > TOL_K) {
                    w.wedge_residual()
                } else {
                    None
                },
                flat_point: false,
            }),
            Err(Error::FlatPoint { .. }) => Ok(TheoremSample {
                nu,
                r,
                rank: class.rank,
                k: gauss_k_closed(&jet, tol)?,
                kappa: None,
                defect: None,
                wedge_residual: None,
                flat_point: true,
            }),
            Err(e) => Err(e),
        }
    });
    let samples: Vec<TheoremSample> = results.into_iter().collect::<Result<_>>()?;
    if samples.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let max_abs_k = samples.iter().map(|s| s.k.abs()).fold(0.0, f64::max);
    let max_defect = samples.iter().filter_map(|s| s.defect).fold(0.0, f64::max);
    let max_wedge_residual = samples
        .iter()
        .filter_map(|s| s.wedge_residual)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let flat_points = samples.iter().filter(|s| s.flat_point).count();
    let flat = max_abs_k <= TOL_K;
    let weingarten = max_defect <= TOL_DEFECT;
    Ok(MainTheoremReport {
        samples,
        max_abs_k,
        max_defect,
        max_wedge_residual,
        flat_points,
        tol_k: TOL_K,
        tol_defect: TOL_DEFECT,
        flat,
        weingarten,
        consistent: flat == weingarten,
    })
}

/// The field r_p(ν) of a surface chart, read directly from the surface.
pub fn surface_rfield<I: Immersion>(chart: &SurfaceChart<I>, grid: &Grid, exec: Exec) -> RField {
    let values = exec.map(grid.len(), |k| if grid.active(k) { chart.surface_r(grid.point(k)).ok() } else { None });
    let base = values.iter().position(|v| v.is_some()).unwrap_or(0);
    RField {
        grid: grid.clone(),
        r0: values[base].unwrap_or(0.0),
        values,
        base,
        max_circulation: 0.0,
    }
}
