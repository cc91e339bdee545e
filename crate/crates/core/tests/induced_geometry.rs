mod common;

use common::*;
use gcong::catalog;
use gcong::congruence::CongruenceChart;
use gcong::induced_geometry::*;
use gcong::kahler::gram_matrix;
use gcong::orthogonal_surfaces::SurfaceChart;
use gcong::{Tolerances, C64};
use nalgebra::{Matrix2, Matrix4, Vector4};
use proptest::prelude::*;

fn disk_point(radius: f64) -> impl Strategy<Value = C64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_is_the_gram_pullback(seed in 0u64..10_000, nu in disk_point(0.45)) {
        let j = expr_chart(&random_expr(&mut rng(seed))).jet(nu).unwrap();
        let gram = Matrix4::from_fn(|a, b| gram_matrix(j.mu1.f, j.mu2.f)[a][b]);
        let vec = |d1: C64, d2: C64| Vector4::new(d1.re, d1.im, d2.re, d2.im);
        // ∂_u = ∂ + ∂̄, ∂_v = i(∂ − ∂̄)
        let i = C64::new(0.0, 1.0);
        let xu = vec(j.mu1.d + j.mu1.db, j.mu2.d + j.mu2.db);
        let xv = vec(i * (j.mu1.d - j.mu1.db), i * (j.mu2.d - j.mu2.db));
        let m = pullback_metric_jet(&j);
        let s = 1e-10 * (1.0 + gram.abs().max() * (xu.norm() + xv.norm()).powi(2));
        prop_assert!((m.g_uu - xu.dot(&(gram * xu))).abs() <= s);
        prop_assert!((m.g_uv - xu.dot(&(gram * xv))).abs() <= s);
        prop_assert!((m.g_vv - xv.dot(&(gram * xv))).abs() <= s);
    }

    #[test]
    fn signature_matches_eigenvalues(seed in 0u64..10_000, nu in disk_point(0.45)) {
        let j = expr_chart(&random_expr(&mut rng(seed))).jet(nu).unwrap();
        let m = pullback_metric_jet(&j);
        let ev = Matrix2::new(m.g_uu, m.g_uv, m.g_uv, m.g_vv).symmetric_eigenvalues();
        let band = 1e-6 * ev.abs().max();
        prop_assume!(ev.iter().all(|e| e.abs() > band));
        let want = if ev[0] * ev[1] < 0.0 { Signature::Lorentz } else { Signature::Riemannian };
        prop_assert_eq!(m.signature, want);
    }

    #[test]
    fn determinant_identity(seed in 0u64..10_000, nu in disk_point(0.45), r in -2.0f64..2.0) {
        let tol = Tolerances::default();
        let j = expr_chart(&random_expr(&mut rng(seed))).jet(nu).unwrap().validated(&tol).unwrap();
        if let Ok(x) = det_identity_residual(&j, r, &tol) {
            prop_assert!(x <= 1e-8, "{}", x);
        }
    }

    #[test]
    fn closed_form_curvature_matches_differences(seed in 0u64..10_000, nu in disk_point(0.25)) {
        let tol = Tolerances::default();
        let ch = SurfaceChart::new(random_graph_surface(&mut rng(seed)));
        let (Ok(a), Ok(b)) = (
            gauss_k(&ch, nu, KMethod::ClosedForm, &tol),
            gauss_k(&ch, nu, KMethod::FdOracle, &tol),
        ) else {
            return Ok(());
        };
        prop_assert!((a - b).abs() <= 1e-5 * (1.0 + a.abs()), "{} vs {}", a, b);
    }
}

#[test]
fn flat_and_rank_one_charts() {
    let tol = Tolerances::default();
    let flat = catalog::flat_conjugate_chart(C64::new(0.7, 0.2)).unwrap();
    for nu in grid_points(&flat, 11) {
        let k = gauss_k(&flat, nu, KMethod::ClosedForm, &tol).unwrap();
        assert!(k.abs() <= 1e-8, "{k}");
    }
    for which in 0..3 {
        let ch = catalog::rank_one_chart(which).unwrap();
        for nu in grid_points(&ch, 7) {
            let k = gauss_k(&ch, nu, KMethod::RankOneChain, &tol).unwrap();
            assert!(k.abs() <= 1e-6, "{k}");
        }
    }
}

#[test]
fn totally_null_charts_have_no_curvature() {
    let tol = Tolerances::default();
    let ch = catalog::alpha_chart(catalog::AlphaParams::new(C64::new(0.1, 0.2), 0.6));
    let nu = C64::new(0.1, -0.1);
    assert_eq!(signature_classify(&ch, nu, &tol).unwrap(), Signature::Degenerate);
    assert!(gauss_k(&ch, nu, KMethod::ClosedForm, &tol).is_err());
    let _ = ch.domain();
}
