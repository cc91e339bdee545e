//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use common::*;
use gcong::catalog::{self, AlphaParams};
use gcong::congruence::{
    classify_jet, optical_scalars_at, optical_scalars_xieta, pullback_omega, sachs_residual, twist_and_kappa_j,
    CongruenceChart, XiEtaJet,
};
use gcong::geodesic_space::{point_at, OrientedGeodesic};
use gcong::grid::{Exec, Grid};
use gcong::induced_geometry::{det_identity_residual, gauss_k, gauss_k_rank_one, KMethod};
use gcong::models::{ball_to_uhs, distance, metric_tensor, uhs_to_ball, uhs_to_ball_jacobian, ModelPoint, UpperHalfPoint};
use gcong::orthogonal_surfaces::{
    integrate_r, main_theorem_check, principal_curvatures, surface_rfield, PolyGraph, Profile, RotationalGraph,
    SurfaceChart,
};
use gcong::{Error, Tolerances, C64};
use rand::Rng;
use std::time::Instant;

const GRID: usize = 41;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn sachs() -> Outcome {
    let tol = Tolerances::default();
    let charts = chart_battery(20, 11);
    let (mut worst, mut n, mut skipped) = (0.0f64, 0usize, 0usize);
    for ch in &charts {
        for nu in grid_points(&**ch, 11) {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else {
                skipped += 1;
                continue;
            };
            for k in 0..=12 {
                let r = -3.0 + 0.5 * k as f64;
                match sachs_residual(&j, r, &tol) {
                    Ok((a, b)) => {
                        worst = worst.max(a).max(b);
                        n += 1;
                    }
                    Err(Error::DegenerateFrame { .. }) => skipped += 1,
                    Err(e) => return check(false, format!("{}: {e}", ch.name())),
                }
            }
        }
    }
    check(
        worst <= 1e-6,
        format!("max residual {worst:.2e} <= 1e-6 over {n} samples of 20 charts, r in [-3,3] ({skipped} focal skipped)"),
    )
}

fn det_identity() -> Outcome {
    let tol = Tolerances::default();
    let charts = chart_battery(20, 12);
    let (mut worst, mut n) = (0.0f64, 0usize);
    for ch in &charts {
        for nu in grid_points(&**ch, GRID) {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else { continue };
            for r in [-1.0, 0.0, 0.7] {
                if let Ok(x) = det_identity_residual(&j, r, &tol) {
                    worst = worst.max(x);
                    n += 1;
                }
            }
        }
    }
    check(worst <= 1e-8, format!("max relative residual {worst:.2e} <= 1e-8 over {n} samples of 20 charts"))
}

fn lagrangian_battery() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(13);
    let mut lag: Vec<Box<dyn CongruenceChart>> = vec![];
    for _ in 0..4 {
        lag.push(boxed(catalog::alpha_chart(random_alpha(&mut r))));
    }
    for _ in 0..2 {
        lag.push(boxed(random_antiholomorphic(&mut r)));
    }
    for _ in 0..2 {
        lag.push(boxed(SurfaceChart::new(random_graph_surface(&mut r))));
    }
    lag.push(boxed(SurfaceChart::new(RotationalGraph::new(Profile::by_name("gaussian").unwrap()))));
    lag.push(boxed(catalog::rank_one_chart(2).unwrap()));
    let twisted: Vec<Box<dyn CongruenceChart>> = (0..10).map(|_| boxed(random_twisted(&mut r))).collect();
    let mut disagreements = vec![];
    for (expected, ch) in lag.iter().map(|c| (true, c)).chain(twisted.iter().map(|c| (false, c))) {
        let grid = Grid::new(ch.domain(), GRID);
        let mut omega_zero = true;
        let mut twist_zero = true;
        for (_, nu) in grid.active_points() {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else { continue };
            let scale = j.mu1.d.norm().max(j.mu1.db.norm()) * j.mu2.d.norm().max(j.mu2.db.norm()).max(1.0);
            omega_zero &= pullback_omega(&j).abs() <= tol.class * scale.max(1.0);
            twist_zero &= classify_jet(&j, &tol).map(|c| c.lagrangian).unwrap_or(false);
        }
        let closed = match integrate_r(&**ch, &grid, grid.point(grid.len() / 2), 0.0, &tol, Exec::default()) {
            Ok(_) => true,
            Err(Error::NotLagrangian { .. }) => false,
            Err(e) => {
                disagreements.push(format!("{}: {e}", ch.name()));
                continue;
            }
        };
        if !(omega_zero == expected && twist_zero == expected && closed == expected) {
            disagreements.push(format!(
                "{}: omega {omega_zero} twist {twist_zero} closed {closed}",
                ch.name()
            ));
        }
    }
    check(
        disagreements.is_empty(),
        format!("10 Lagrangian + 10 twisted charts, disagreements: {disagreements:?}"),
    )
}

fn main_positive() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = vec![];
    let mut pass = true;
    for name in ["cosh", "paraboloid", "gaussian"] {
        let ch = SurfaceChart::new(RotationalGraph::new(Profile::by_name(name).unwrap()));
        let grid = Grid::new(ch.domain(), GRID);
        let rf = surface_rfield(&ch, &grid, Exec::default());
        match main_theorem_check(&ch, &rf, &tol, Exec::default()) {
            Ok(rep) => {
                pass &= rep.max_abs_k <= 1e-5 && rep.max_defect <= 1e-4;
                parts.push(format!("{name}: |K| {:.1e} defect {:.1e}", rep.max_abs_k, rep.max_defect));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    let flat = catalog::flat_conjugate_chart(C64::new(1.0, 0.0)).unwrap();
    let mut kmax = 0.0f64;
    for nu in grid_points(&flat, GRID) {
        match gauss_k(&flat, nu, KMethod::ClosedForm, &tol) {
            Ok(k) => kmax = kmax.max(k.abs()),
            Err(e) => {
                pass = false;
                parts.push(format!("flat: {e}"));
                break;
            }
        }
    }
    pass &= kmax <= 1e-8;
    parts.push(format!("flat chart |K| {kmax:.1e}"));
    check(pass, format!("{} (tol K 1e-5, defect 1e-4, flat 1e-8)", parts.join("; ")))
}

fn main_negative() -> Outcome {
    let tol = Tolerances::default();
    let ch = SurfaceChart::new(PolyGraph::bumpy());
    let grid = Grid::new(ch.domain(), GRID);
    let rf = surface_rfield(&ch, &grid, Exec::default());
    match main_theorem_check(&ch, &rf, &tol, Exec::default()) {
        Ok(rep) => {
            let w = rep.max_wedge_residual.unwrap_or(f64::INFINITY);
            check(
                rep.max_abs_k > 1e-3 && rep.max_defect > 1e-3 && w <= 1e-5,
                format!(
                    "bumpy graph: max|K| {:.2e} > 1e-3, defect {:.2e} > 1e-3, wedge residual {w:.2e} <= 1e-5",
                    rep.max_abs_k, rep.max_defect
                ),
            )
        }
        Err(e) => check(false, format!("bumpy graph: {e}")),
    }
}

fn rank_one() -> Outcome {
    let tol = Tolerances::default();
    let (mut k_max, mut kappa_max, mut prod_max) = (0.0f64, 0.0f64, 0.0f64);
    for which in 0..3 {
        let ch = catalog::rank_one_chart(which).unwrap();
        for nu in grid_points(&ch, GRID) {
            let j = match ch.jet(nu).and_then(|j| j.validated(&tol)) {
                Ok(j) => j,
                Err(e) => return check(false, format!("rank-one #{which}: {e}")),
            };
            match gauss_k_rank_one(&j, &tol) {
                Ok(k) => k_max = k_max.max(k.abs()),
                Err(e) => return check(false, format!("rank-one #{which}: {e}")),
            }
            for r in [-0.5, 0.0, 0.5] {
                let Ok(s) = optical_scalars_at(&j, r, &tol) else { continue };
                let kappa = s.kappa();
                let rel = (kappa * kappa - 4.0 * s.sigma.norm_sqr()).abs() / (1.0 + kappa * kappa);
                kappa_max = kappa_max.max(rel);
                let (l1, l2) = principal_curvatures(&s).unwrap();
                let prod = ((l1 * l1 - 1.0) * (l2 * l2 - 1.0)).abs() / ((1.0 + l1 * l1) * (1.0 + l2 * l2));
                prod_max = prod_max.max(prod);
            }
        }
    }
    check(
        k_max <= 1e-6 && kappa_max <= 1e-8 && prod_max <= 1e-6,
        format!("3 charts: |K| {k_max:.1e} <= 1e-6, |κ²-4|σ|²| {kappa_max:.1e} <= 1e-8, (λ₁²-1)(λ₂²-1) {prod_max:.1e} <= 1e-6"),
    )
}

fn sphere_suite() -> Outcome {
    let tol = Tolerances::default();
    let (mut eq, mut dist, mut sigma) = (0.0f64, 0.0f64, 0.0f64);
    for (t, z) in [(1.0, C64::new(0.0, 0.0)), (0.7, C64::new(0.2, -0.4)), (1.6, C64::new(-0.5, 0.3))] {
        let center = UpperHalfPoint::new(t, z).unwrap();
        let ch = catalog::alpha_chart(catalog::sphere_congruence(&center));
        for nu in grid_points(&ch, GRID) {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else { continue };
            let (m1, m2) = (j.mu1.f, j.mu2.f);
            eq = eq.max(catalog::sphere_residual(&center, m1, m2).norm());
            let r0 = catalog::sphere_center_parameter(&center, m1, m2);
            let p = point_at(&OrientedGeodesic::from_mu(m1, m2, tol.diag).unwrap(), r0).unwrap();
            dist = dist.max(distance(&p, &center));
            if let Ok(s) = optical_scalars_at(&j, r0 + 0.5, &tol) {
                sigma = sigma.max(s.sigma.norm());
            }
        }
    }
    check(
        eq <= 1e-10 && dist <= 1e-9 && sigma <= 1e-10,
        format!("3 centres: equation {eq:.1e} <= 1e-10, distance to centre {dist:.1e} <= 1e-9, |σ| {sigma:.1e}"),
    )
}

fn alpha_recursion() -> Outcome {
    let mut worst = 0.0f64;
    let mut r = rng(17);
    for _ in 0..5 {
        let p = AlphaParams::new(
            C64::new(r.gen_range(-0.6..0.6), r.gen_range(-0.6..0.6)),
            r.gen_range(-1.0..1.5),
        );
        let ch = catalog::alpha_chart(p);
        let want = catalog::alpha_series_coefficients(p, 6);
        // discrete Fourier transform on a circle well inside the pole
        let rad = 0.5 / (1.0 + p.a0.norm());
        let n = 64;
        let samples: Vec<C64> = (0..n)
            .map(|k| {
                let nu = C64::from_polar(rad, std::f64::consts::TAU * k as f64 / n as f64);
                ch.eval(nu).unwrap().1
            })
            .collect();
        for (m, w) in want.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (k, s) in samples.iter().enumerate() {
                acc += s * C64::from_polar(1.0, -std::f64::consts::TAU * (m * k) as f64 / n as f64);
            }
            let got = acc / n as f64 / rad.powi(m as i32);
            worst = worst.max((got - w).norm());
        }
    }
    check(worst <= 1e-9, format!("5 parameter sets, n <= 6: max coefficient error {worst:.1e} <= 1e-9"))
}

fn totally_geodesic() -> Outcome {
    let tol = Tolerances::default();
    let (mut rho, mut sigma) = (0.0f64, 0.0f64);
    for p in [
        AlphaParams::new(C64::new(0.0, 0.0), -1.0),
        AlphaParams::new(C64::new(0.3, 0.2), -0.5),
        AlphaParams::new(C64::new(-0.4, 0.1), -2.0),
    ] {
        let (ch, c) = catalog::totally_geodesic_chart(p).unwrap();
        for nu in grid_points(&ch, GRID) {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else { continue };
            let s = optical_scalars_at(&j, catalog::alpha_r(p, c, nu), &tol).unwrap();
            rho = rho.max(s.rho.norm());
            sigma = sigma.max(s.sigma.norm());
        }
    }
    check(rho <= 1e-8 && sigma <= 1e-10, format!("3 charts: |ρ| {rho:.1e} <= 1e-8, |σ| {sigma:.1e} <= 1e-10"))
}

fn cmc1_and_codazzi() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = vec![];
    let mut pass = true;
    for (c, k) in [(0.5, 0.3), (1.0, 0.1), (0.8, 0.2)] {
        let ch = catalog::cmc1_rotational_chart(c, k).unwrap();
        let grid = Grid::new(ch.domain(), GRID);
        match catalog::cmc1_test(&ch, &grid, &tol, Exec::default()) {
            Ok(rep) => {
                let x = rep.max_rho_residual.unwrap_or(f64::INFINITY);
                pass &= rep.holomorphic && x <= 1e-7;
                parts.push(format!("cmc1(c={c},K={k}) |ρ+1| {x:.1e}"));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("cmc1(c={c},K={k}): {e}"));
            }
        }
    }
    let mut r = rng(19);
    let mut graphs: Vec<Box<dyn CongruenceChart>> = vec![];
    for _ in 0..3 {
        let mut p = random_alpha(&mut r);
        p.a1 = p.a1.abs() + 0.1;
        graphs.push(boxed(catalog::alpha_chart(p)));
    }
    graphs.push(boxed(random_antiholomorphic(&mut r)));
    graphs.push(boxed(SurfaceChart::new(random_graph_surface(&mut r))));
    graphs.push(boxed(SurfaceChart::new(PolyGraph::bumpy())));
    graphs.push(boxed(catalog::cmc1_rotational_chart(0.5, 0.3).unwrap()));
    let mut codazzi = 0.0f64;
    for ch in &graphs {
        for nu in grid_points(&**ch, GRID) {
            match catalog::codazzi_residual(&**ch, nu, &tol) {
                Ok(x) => codazzi = codazzi.max(x),
                Err(Error::ChartSingular(_) | Error::ReflectedDiagonal { .. }) => {}
                Err(e) => {
                    pass = false;
                    parts.push(format!("{}: {e}", ch.name()));
                }
            }
        }
    }
    pass &= codazzi <= 1e-8;
    parts.push(format!("Codazzi on 7 graphs {codazzi:.1e} <= 1e-8"));
    check(pass, format!("{} (ρ tol 1e-7)", parts.join("; ")))
}

fn cross_formula() -> Outcome {
    let tol = Tolerances::default();
    let charts = chart_battery(12, 23);
    let (mut prop, mut kap, mut kfd) = (0.0f64, 0.0f64, 0.0f64);
    for ch in &charts {
        for nu in grid_points(&**ch, 9) {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else { continue };
            let Ok(xe) = XiEtaJet::from_mu_jet(&j) else { continue };
            for r in [-0.8, 0.0, 0.6] {
                let (Ok(a), Ok(b)) = (optical_scalars_at(&j, r, &tol), optical_scalars_xieta(&xe, r, &tol)) else {
                    continue;
                };
                let scale = 1.0 + a.rho.norm() + a.sigma.norm();
                prop = prop.max(((a.rho - b.rho).norm() + (a.sigma - b.sigma).norm()) / scale);
                if let Ok((_, k)) = twist_and_kappa_j(&j, r, &tol) {
                    kap = kap.max((k - a.kappa()).abs() / (1.0 + k.abs()));
                }
            }
        }
    }
    let mut r = rng(29);
    let mut k_charts: Vec<Box<dyn CongruenceChart>> = vec![
        boxed(SurfaceChart::new(PolyGraph::bumpy())),
        boxed(catalog::cmc1_rotational_chart(0.5, 0.3).unwrap()),
    ];
    for _ in 0..2 {
        k_charts.push(boxed(SurfaceChart::new(random_graph_surface(&mut r))));
    }
    for ch in &k_charts {
        for nu in grid_points(&**ch, 7) {
            let (Ok(a), Ok(b)) = (
                gauss_k(&**ch, nu, KMethod::ClosedForm, &tol),
                gauss_k(&**ch, nu, KMethod::FdOracle, &tol),
            ) else {
                continue;
            };
            kfd = kfd.max((a - b).abs() / (1.0 + a.abs()));
        }
    }
    check(
        prop <= 1e-8 && kap <= 1e-8 && kfd <= 1e-5,
        format!("(ξ,η) vs μ scalars {prop:.1e} <= 1e-8; κ routes {kap:.1e} <= 1e-8; K closed vs FD {kfd:.1e} <= 1e-5"),
    )
}

fn models() -> Outcome {
    let mut r = rng(31);
    let (mut round, mut pull) = (0.0f64, 0.0f64);
    for _ in 0..2000 {
        let p = UpperHalfPoint::new(r.gen_range(0.05..5.0), C64::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0))).unwrap();
        let b = uhs_to_ball(&p);
        let q = ball_to_uhs(&b, 1e-14).unwrap();
        round = round.max(((q.t - p.t).abs() + (q.z - p.z).norm()) / (1.0 + p.t + p.z.norm()));
        let jac = nalgebra::Matrix3::from_fn(|i, j| uhs_to_ball_jacobian(&p)[i][j]);
        let gb = nalgebra::Matrix3::from_fn(|i, j| metric_tensor(&ModelPoint::Ball(b))[i][j]);
        let gu = nalgebra::Matrix3::from_fn(|i, j| metric_tensor(&ModelPoint::UpperHalf(p))[i][j]);
        let diff = jac.transpose() * gb * jac - gu;
        pull = pull.max(diff.abs().max() / gu.abs().max());
    }
    check(
        round <= 1e-12 && pull <= 1e-8,
        format!("2000 points: round trip {round:.1e} <= 1e-12, metric pullback {pull:.1e} <= 1e-8"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Sachs equations", sachs),
        ("determinant identity", det_identity),
        ("Lagrangian / twist-free / closed r-form", lagrangian_battery),
        ("main theorem, Weingarten => flat", main_positive),
        ("main theorem, non-Weingarten => K != 0", main_negative),
        ("rank-1 charts", rank_one),
        ("geodesic spheres", sphere_suite),
        ("alpha-surface series", alpha_recursion),
        ("totally geodesic branch", totally_geodesic),
        ("CMC-1 and Codazzi", cmc1_and_codazzi),
        ("cross-formula agreement", cross_formula),
        ("model isometry", models),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
