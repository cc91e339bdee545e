//! The metric induced by G on a congruence and its Gauss curvature.
//!
//! Components are taken in the real coordinates ν = u + i v:
//! g_uu = G(∂ᵤf, ∂ᵤf), g_uv = G(∂ᵤf, ∂ᵥf), g_vv = G(∂ᵥf, ∂ᵥf). Since
//! |dν∧dν̄| = 2 du∧dv, a determinant referred to dν∧dν̄ is one quarter of
//! det(g_ij); [`MetricSample::det_nu`] returns that normalisation, which is
//! the one in det f*G = −(Δ²/64)(|σ|² − λ²).
//!
//! Three routes to K:
//! * `ClosedForm`: on a rank-2 Lagrangian chart re-expressed as a graph
//!   μ₂ = F(μ₁, μ̄₁), with σ₀ = ∂μ̄₂/(1 + μ₁μ̄₂)² and
//!   K = (i/|σ₀|²)[μ̄₂∂σ̄₀/A − μ₂∂̄σ₀/Ā + ((∂σ̄₀)² − ∂̄σ̄₀∂̄σ₀)/(4σ̄₀)
//!   − ((∂̄σ₀)² − ∂σ₀∂σ̄₀)/(4σ₀)].
//! * `RankOneChain`: for μ₁ = μ₁(u), K = −∂ᵥΓᵘᵤᵤ/g_uv with
//!   ∂ᵥΓᵘᵤᵤ = 2 Re(∂ᵤμ₁ ∂ᵥμ̄₂/A²).
//! * `FdOracle`: Brioschi's formula on metric samples over a 5×5 stencil.

use crate::congruence::{optical_scalars_at, CongruenceChart, Jet2};
use crate::error::{Error, Result};
use crate::taylor::WJet;
use crate::{Tolerances, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Signature {
    Lorentz,
    Degenerate,
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSample {
    pub g_uu: f64,
    pub g_uv: f64,
    pub g_vv: f64,
    pub det: f64,
    pub signature: Signature,
}

/// Relative band inside which a determinant counts as zero.
pub const DEGENERATE_BAND: f64 = 1e-12;

impl MetricSample {
    pub fn new(g_uu: f64, g_uv: f64, g_vv: f64) -> Self {
        let det = g_uu * g_vv - g_uv * g_uv;
        let scale = g_uu.abs().max(g_uv.abs()).max(g_vv.abs());
        let signature = if det.abs() <= DEGENERATE_BAND * scale * scale {
            Signature::Degenerate
        } else if det < 0.0 {
            Signature::Lorentz
        } else {
            Signature::Riemannian
        };
        MetricSample {
            g_uu,
            g_uv,
            g_vv,
            det,
            signature,
        }
    }

    /// Determinant with respect to |dν∧dν̄|, i.e. det/4.
    pub fn det_nu(&self) -> f64 {
        self.det / 4.0
    }
}

/// G pulled back through the chart at the jet's base point.
pub fn pullback_metric_jet(jet: &Jet2) -> MetricSample {
    let [u1, v1, ..] = jet.mu1.to_real();
    let [u2, v2, ..] = jet.mu2.to_real();
    let g = |x: (C64, C64), y: (C64, C64)| crate::kahler::metric_raw(jet.mu1.f, jet.mu2.f, x, y);
    MetricSample::new(g((u1, u2), (u1, u2)), g((u1, u2), (v1, v2)), g((v1, v2), (v1, v2)))
}

pub fn pullback_metric<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, tol: &Tolerances) -> Result<MetricSample> {
    Ok(pullback_metric_jet(&chart.jet(nu)?.validated(tol)?))
}

/// A rank-2 chart re-expressed locally as the graph μ₂ = F(μ₁, μ̄₁);
/// `f` is the Wirtinger jet of F with respect to μ₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphJet {
    pub mu1: C64,
    pub mu2: C64,
    pub f: WJet,
    /// Wirtinger derivatives ∂μ₁, ∂̄μ₁ with respect to ν.
    pub dmu1: (C64, C64),
}

fn mat_inv(m: [[f64; 2]; 2]) -> Option<[[f64; 2]; 2]> {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    Some([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
}

impl GraphJet {
    /// Inverts ν ↦ μ₁ to second order. Fails with `WrongRank` when the
    /// real Jacobian of ν ↦ μ₁ is (numerically) singular.
    pub fn from_jet(jet: &Jet2, tol: &Tolerances) -> Result<Self> {
        let (smax, smin) = crate::congruence::mu1_singular_values(jet);
        if smin <= tol.class * smax.max(1.0) {
            let found = if smax <= tol.class { 0 } else { 1 };
            return Err(Error::WrongRank { expected: 2, found });
        }
        let [mu, mv, muu, muv, mvv] = jet.mu1.to_real();
        let [fu, fv, fuu, fuv, fvv] = jet.mu2.to_real();
        // φ(u, v) = (x, y) = (Re μ₁, Im μ₁)
        let jac = [[mu.re, mv.re], [mu.im, mv.im]];
        let inv = mat_inv(jac).ok_or(Error::WrongRank { expected: 2, found: 1 })?;
        let hx = [[muu.re, muv.re], [muv.re, mvv.re]];
        let hy = [[muu.im, muv.im], [muv.im, mvv.im]];
        // ∇_xy g = J⁻ᵀ ∇_uv f
        let gx = fu * inv[0][0] + fv * inv[1][0];
        let gy = fu * inv[0][1] + fv * inv[1][1];
        // H_g = J⁻ᵀ (H_f − g_x H_x − g_y H_y) J⁻¹
        let hf = [[fuu, fuv], [fuv, fvv]];
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                m[a][b] = hf[a][b] - gx * hx[a][b] - gy * hy[a][b];
            }
        }
        let mut hg = [[C64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let mut s = C64::new(0.0, 0.0);
                for c in 0..2 {
                    for d in 0..2 {
                        s += m[c][d] * inv[c][a] * inv[d][b];
                    }
                }
                hg[a][b] = s;
            }
        }
        Ok(GraphJet {
            mu1: jet.mu1.f,
            mu2: jet.mu2.f,
            f: WJet::from_real(jet.mu2.f, gx, gy, hg[0][0], hg[0][1], hg[1][1]),
            dmu1: (jet.mu1.d, jet.mu1.db),
        })
    }

    /// Quantities of the graph form: σ₀, ρ₀ and their first derivatives.
    pub fn quantities(&self) -> GraphQuantities {
        let one = C64::new(1.0, 0.0);
        let (m1, m2) = (self.mu1, self.mu2);
        let f = &self.f;
        let a = one + m1 * m2.conj();
        let ab = a.conj();
        let s_num = f.db.conj(); // ∂μ̄₂ = conj(∂̄μ₂)
        let sigma0 = s_num / (a * a);
        let rho0 = f.d / (ab * ab);
        let da = m2.conj() + m1 * f.db.conj();
        let dba = m1 * f.d.conj();
        let d_sigma0 = f.dbdb.conj() / (a * a) - s_num * da * 2.0 / (a * a * a);
        let db_sigma0 = f.ddb.conj() / (a * a) - s_num * dba * 2.0 / (a * a * a);
        let dbab = m2 + m1.conj() * f.db;
        let db_rho0 = f.ddb / (ab * ab) - f.d * dbab * 2.0 / (ab * ab * ab);
        GraphQuantities {
            mu1: m1,
            mu2: m2,
            a,
            sigma0,
            rho0,
            d_sigma0,
            db_sigma0,
            db_rho0,
        }
    }

    /// Lagrangian condition for a graph: Im ρ₀ = 0, i.e. ∂μ₂/(1 + μ̄₁μ₂)² real.
    pub fn lagrangian_residual(&self) -> f64 {
        self.quantities().rho0.im
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphQuantities {
    pub mu1: C64,
    pub mu2: C64,
    /// 1 + μ₁μ̄₂
    pub a: C64,
    pub sigma0: C64,
    pub rho0: C64,
    pub d_sigma0: C64,
    pub db_sigma0: C64,
    pub db_rho0: C64,
}

impl GraphQuantities {
    /// ∂σ̄₀ − ∂̄ρ₀ − 2μ₂ρ₀/(1 + μ̄₁μ₂)
    pub fn codazzi_residual(&self) -> C64 {
        let d_sigma0b = self.db_sigma0.conj();
        d_sigma0b - self.db_rho0 - self.mu2 * self.rho0 * 2.0 / self.a.conj()
    }

    /// The reduced closed form of K; requires σ₀ ≠ 0.
    pub fn gauss_k(&self) -> C64 {
        let s = self.sigma0;
        let sb = s.conj();
        let ds = self.d_sigma0;
        let dbs = self.db_sigma0;
        let dsb = dbs.conj();
        let dbsb = ds.conj();
        let ab = self.a.conj();
        let bracket = self.mu2.conj() * dsb / self.a - self.mu2 * dbs / ab + (dsb * dsb - dbsb * dbs) / (sb * 4.0)
            - (dbs * dbs - ds * dsb) / (s * 4.0);
        C64::new(0.0, 1.0) * bracket / s.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KMethod {
    ClosedForm,
    RankOneChain,
    FdOracle,
}

/// Closed-form K at a jet of a rank-2 Lagrangian chart.
pub fn gauss_k_closed(jet: &Jet2, tol: &Tolerances) -> Result<f64> {
    let metric = pullback_metric_jet(jet);
    if metric.signature == Signature::Degenerate {
        return Err(Error::DegenerateMetric { det: metric.det });
    }
    let gj = GraphJet::from_jet(jet, tol)?;
    let q = gj.quantities();
    let lag = q.rho0.im.abs() / q.rho0.norm().max(1.0);
    if lag > tol.class.sqrt() {
        return Err(Error::NotLagrangian { residual: lag });
    }
    Ok(q.gauss_k().re)
}

/// The assembled rank-1 expression −∂ᵥΓᵘᵤᵤ/g_uv for charts with μ₁ = μ₁(u).
pub fn gauss_k_rank_one(jet: &Jet2, tol: &Tolerances) -> Result<f64> {
    let metric = pullback_metric_jet(jet);
    if metric.signature == Signature::Degenerate {
        return Err(Error::DegenerateMetric { det: metric.det });
    }
    let [m1u, m1v, ..] = jet.mu1.to_real();
    let [_, m2v, ..] = jet.mu2.to_real();
    let scale = m1u.norm().max(1.0);
    if m1v.norm() > tol.class * scale || m1u.norm() <= tol.class {
        let (smax, smin) = crate::congruence::mu1_singular_values(jet);
        let found = if smax <= tol.class { 0 } else if smin <= tol.class * smax.max(1.0) { 1 } else { 2 };
        return Err(Error::WrongRank { expected: 1, found });
    }
    let a = jet.a();
    let dv_gamma = (m1u * m2v.conj() / (a * a)).re * 2.0;
    Ok(-dv_gamma / metric.g_uv)
}

const W1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
const W2: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

/// Brioschi's formula on metric samples over a 5×5 stencil of step h.
pub fn gauss_k_fd<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, h: f64, tol: &Tolerances) -> Result<f64> {
    let mut e = [[0.0; 5]; 5];
    let mut f = [[0.0; 5]; 5];
    let mut g = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            let p = nu + C64::new((i as f64 - 2.0) * h, (j as f64 - 2.0) * h);
            let m = pullback_metric_jet(&chart.jet(p)?.validated(tol)?);
            e[i][j] = m.g_uu;
            f[i][j] = m.g_uv;
            g[i][j] = m.g_vv;
        }
    }
    let (e0, f0, g0) = (e[2][2], f[2][2], g[2][2]);
    let det = e0 * g0 - f0 * f0;
    let scale = e0.abs().max(f0.abs()).max(g0.abs());
    if det.abs() <= DEGENERATE_BAND * scale * scale {
        return Err(Error::DegenerateMetric { det });
    }
    let du = |a: &[[f64; 5]; 5]| (0..5).map(|k| W1[k] * a[k][2]).sum::<f64>() / h;
    let dv = |a: &[[f64; 5]; 5]| (0..5).map(|k| W1[k] * a[2][k]).sum::<f64>() / h;
    let duu = |a: &[[f64; 5]; 5]| (0..5).map(|k| W2[k] * a[k][2]).sum::<f64>() / (h * h);
    let dvv = |a: &[[f64; 5]; 5]| (0..5).map(|k| W2[k] * a[2][k]).sum::<f64>() / (h * h);
    let duv = |a: &[[f64; 5]; 5]| {
        let mut s = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                s += W1[i] * W1[j] * a[i][j];
            }
        }
        s / (h * h)
    };
    let (eu, ev, fu, fv, gu, gv) = (du(&e), dv(&e), du(&f), dv(&f), du(&g), dv(&g));
    let (evv, fuv, guu) = (dvv(&e), duv(&f), duu(&g));
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let m1 = [
        [-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev],
        [fv - 0.5 * gu, e0, f0],
        [0.5 * gv, f0, g0],
    ];
    let m2 = [[0.0, 0.5 * ev, 0.5 * gu], [0.5 * ev, e0, f0], [0.5 * gu, f0, g0]];
    Ok((det3(m1) - det3(m2)) / (det * det))
}

/// K by the chosen method. The finite-difference step is 10⁻³ of the
/// chart domain's scale.
pub fn gauss_k<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, method: KMethod, tol: &Tolerances) -> Result<f64> {
    match method {
        KMethod::ClosedForm => gauss_k_closed(&chart.jet(nu)?.validated(tol)?, tol),
        KMethod::RankOneChain => gauss_k_rank_one(&chart.jet(nu)?.validated(tol)?, tol),
        KMethod::FdOracle => gauss_k_fd(chart, nu, 1e-3 * chart.domain().region.scale(), tol),
    }
}

/// Signature from the sign of |σ|² − λ², with a ±10⁻⁹ band for Degenerate.
/// The sign does not depend on r; r = 0 is used unless the frame degenerates there.
pub fn signature_classify<C: CongruenceChart + ?Sized>(chart: &C, nu: C64, tol: &Tolerances) -> Result<Signature> {
    let jet = chart.jet(nu)?.validated(tol)?;
    signature_classify_jet(&jet, tol)
}

pub fn signature_classify_jet(jet: &Jet2, tol: &Tolerances) -> Result<Signature> {
    let mut last = Error::DegenerateFrame { delta: 0.0 };
    for r in [0.0, 1.0, -1.0] {
        match optical_scalars_at(jet, r, tol) {
            Ok(s) => {
                let q = s.sigma.norm_sqr() - s.twist * s.twist;
                return Ok(if q.abs() <= 1e-9 {
                    Signature::Degenerate
                } else if q > 0.0 {
                    Signature::Lorentz
                } else {
                    Signature::Riemannian
                });
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// |det_nu + (Δ²/64)(|σ|² − λ²)| relative to the larger of the two terms.
pub fn det_identity_residual(jet: &Jet2, r: f64, tol: &Tolerances) -> Result<f64> {
    let s = optical_scalars_at(jet, r, tol)?;
    let lhs = pullback_metric_jet(jet).det_nu();
    let rhs = -(s.delta * s.delta / 64.0) * (s.sigma.norm_sqr() - s.twist * s.twist);
    // floor at rounding level of a metric built from these derivatives
    let a = 1.0 + jet.mu1.f * jet.mu2.f.conj();
    let m = (jet.mu1.d.norm_sqr() + jet.mu1.db.norm_sqr() + jet.mu2.d.norm_sqr() + jet.mu2.db.norm_sqr())
        / a.norm_sqr();
    let scale = lhs.abs().max(rhs.abs()).max(1e-12 * m * m);
    Ok(if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::ExprChart;
    use crate::exprdsl::parse;
    use crate::grid::Domain;

    fn chart(m2: &str) -> ExprChart {
        ExprChart::graph(parse(m2).unwrap(), Domain::disk(C64::new(0.0, 0.0), 0.8))
    }

    #[test]
    fn flat_chart_metric_at_origin() {
        // μ₂ = 0 at the origin: outside the (ξ, η) chart, but the metric is defined
        let j = chart("conj(m1)").jet(C64::new(0.0, 0.0)).unwrap();
        let m = pullback_metric_jet(&j);
        assert!(m.g_uu.abs() < 1e-15 && m.g_vv.abs() < 1e-15);
        assert!((m.g_uv - 2.0).abs() < 1e-15);
        assert_eq!(m.signature, Signature::Lorentz);
    }

    #[test]
    fn sphere_chart_is_degenerate() {
        let m = pullback_metric(&chart("m1"), C64::new(0.3, 0.1), &Tolerances::default()).unwrap();
        assert_eq!((m.g_uu, m.g_uv, m.g_vv), (0.0, 0.0, 0.0));
        assert_eq!(m.signature, Signature::Degenerate);
        assert!(matches!(
            gauss_k(&chart("m1"), C64::new(0.3, 0.1), KMethod::ClosedForm, &Tolerances::default()),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn flat_chart_curvature() {
        let k = gauss_k(&chart("conj(m1)"), C64::new(0.3, 0.2), KMethod::ClosedForm, &Tolerances::default()).unwrap();
        assert!(k.abs() < 1e-12, "{k}");
    }

    #[test]
    fn graph_jet_of_graph_is_identity() {
        let c = chart("m1^2 + 0.3*c1 + 0.1*m1*c1");
        let j = c.jet(C64::new(0.2, 0.3)).unwrap();
        let g = GraphJet::from_jet(&j, &Tolerances::default()).unwrap();
        for (a, b) in [(g.f.d, j.mu2.d), (g.f.db, j.mu2.db), (g.f.dd, j.mu2.dd), (g.f.ddb, j.mu2.ddb), (g.f.dbdb, j.mu2.dbdb)] {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn wrong_rank() {
        let c = ExprChart::new(parse("u").unwrap(), parse("1 + 0.1*v").unwrap(), Domain::rect(0.5, 0.0, 1.0, 0.5));
        let err = gauss_k(&c, C64::new(0.7, 0.2), KMethod::ClosedForm, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::WrongRank { .. } | Error::DegenerateMetric { .. }));
        let g = chart("conj(m1)");
        assert!(matches!(
            gauss_k(&g, C64::new(0.3, 0.2), KMethod::RankOneChain, &Tolerances::default()),
            Err(Error::WrongRank { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn signatures() {
        let tol = Tolerances::default();
        let nu = C64::new(0.3, 0.2);
        assert_eq!(signature_classify(&chart("conj(m1)"), nu, &tol).unwrap(), Signature::Lorentz);
        assert_eq!(signature_classify(&chart("m1"), nu, &tol).unwrap(), Signature::Degenerate);
        // holomorphic, twisting
        assert_eq!(signature_classify(&chart("m1 + 0.3*m1^2 + 0.2i"), nu, &tol).unwrap(), Signature::Riemannian);
    }
}
