mod common;

use common::*;
use gcong::catalog;
use gcong::congruence::CongruenceChart;
use gcong::grid::{Exec, Grid};
use gcong::models::{distance, UpperHalfPoint};
use gcong::orthogonal_surfaces::*;
use gcong::{Error, Tolerances, C64};
use nalgebra::{DMatrix, DVector};

/// Least-squares fit of |z|² + t² = 2 Re(z c̄) + 2 h t + k; returns (c, h, k, max residual).
fn fit_sphere(points: &[UpperHalfPoint]) -> (C64, f64, f64, f64) {
    let a = DMatrix::from_fn(points.len(), 4, |i, j| {
        let p = &points[i];
        [2.0 * p.z.re, 2.0 * p.z.im, 2.0 * p.t, 1.0][j]
    });
    let b = DVector::from_fn(points.len(), |i, _| points[i].z.norm_sqr() + points[i].t * points[i].t);
    let x = a.clone().svd(true, true).solve(&b, 1e-14).unwrap();
    let res = (a * &x - b).abs().max();
    (C64::new(x[0], x[1]), x[2], x[3], res)
}

fn field_points<C: CongruenceChart + ?Sized>(chart: &C, rf: &RField) -> Vec<SurfaceSample> {
    reconstruct_surface(chart, rf, &Tolerances::default(), Exec::default())
        .unwrap()
        .into_iter()
        .flatten()
        .collect()
}

#[test]
fn graph_surfaces_are_recovered() {
    let tol = Tolerances::default();
    let mut r = rng(41);
    for _ in 0..4 {
        let ch = SurfaceChart::new(random_graph_surface(&mut r));
        let grid = Grid::new(ch.domain(), 21);
        let rf = surface_rfield(&ch, &grid, Exec::default());
        for s in field_points(&ch, &rf) {
            let (t, z) = ch.surface_point(s.nu);
            assert!((s.point.t - t).abs() + (s.point.z - z).norm() <= 1e-8);
        }
        // integrating the potential from one node recovers the same field
        let integrated = integrate_r(&ch, &grid, grid.point(rf.base), rf.r0, &tol, Exec::default()).unwrap();
        for (k, _, want) in rf.samples() {
            if let Some(got) = integrated.value(k) {
                assert!((got - want).abs() <= 1e-8, "{got} vs {want}");
            }
        }
    }
}

#[test]
fn parallel_surfaces_keep_their_distance() {
    let ch = SurfaceChart::new(PolyGraph::bumpy());
    let grid = Grid::new(ch.domain(), 15);
    let rf = surface_rfield(&ch, &grid, Exec::default());
    let base = field_points(&ch, &rf);
    for c in [-0.7, 0.4] {
        for (a, b) in base.iter().zip(field_points(&ch, &rf.shifted(c))) {
            assert!((distance(&a.point, &b.point) - c.abs()).abs() <= 1e-9);
            // principal curvatures of parallel surfaces: λ ↦ (λ + tanh c)/(1 + λ tanh c), as coth(s + c) for spheres
            let want = |l: f64| (l + c.tanh()) / (1.0 + l * c.tanh());
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-7 * (1.0 + x.abs());
            assert!(
                (close(b.lambda1, want(a.lambda1)) && close(b.lambda2, want(a.lambda2)))
                    || (close(b.lambda1, want(a.lambda2)) && close(b.lambda2, want(a.lambda1))),
                "{} {} -> {} {}",
                a.lambda1,
                a.lambda2,
                b.lambda1,
                b.lambda2
            );
        }
    }
}

#[test]
fn geodesic_spheres_are_recovered() {
    for (t0, z0, rad) in [(1.0, C64::new(0.0, 0.0), 0.6), (0.5, C64::new(0.1, -0.2), 1.3)] {
        let cap = SphereCap::geodesic_sphere(t0, z0, rad, gcong::grid::Domain::disk(z0, 0.4 * t0 * rad.sinh()));
        let ch = SurfaceChart::new(cap);
        let grid = Grid::new(ch.domain(), 15);
        let rf = surface_rfield(&ch, &grid, Exec::default());
        let center = UpperHalfPoint::new(t0, z0).unwrap();
        for s in field_points(&ch, &rf) {
            assert!((distance(&s.point, &center) - rad).abs() <= 1e-8);
            assert!((s.lambda1.abs() - 1.0 / rad.tanh()).abs() <= 1e-8);
            assert!((s.lambda2 - s.lambda1).abs() <= 1e-8);
        }
    }
}

#[test]
fn horosphere_normals_give_horospheres() {
    let tol = Tolerances::default();
    let a0 = C64::new(0.6, 0.3);
    let ch = catalog::horosphere_chart(a0).unwrap();
    let grid = Grid::new(ch.domain(), 21);
    let rf = integrate_r(&ch, &grid, C64::new(0.0, 0.0), 0.0, &tol, Exec::default()).unwrap();
    let pts = field_points(&ch, &rf);
    for s in &pts {
        assert!((s.lambda1 + 1.0).abs() <= 1e-9 && (s.lambda2 + 1.0).abs() <= 1e-9);
    }
    // a Euclidean sphere tangent to the boundary at the shared endpoint 1/Ā₀
    let (c, h, k, res) = fit_sphere(&pts.iter().map(|s| s.point).collect::<Vec<_>>());
    assert!(res <= 1e-8);
    assert!((c - 1.0 / a0.conj()).norm() <= 1e-8);
    assert!((k + c.norm_sqr()).abs() <= 1e-8 && h > 0.0);
}

#[test]
fn lagrangian_charts_admit_orthogonal_surfaces() {
    let tol = Tolerances::default();
    let mut r = rng(43);
    let charts: Vec<Box<dyn CongruenceChart>> = vec![
        boxed(catalog::alpha_chart(random_alpha(&mut r))),
        boxed(catalog::alpha_chart(random_alpha(&mut r))),
        boxed(random_antiholomorphic(&mut r)),
        boxed(random_antiholomorphic(&mut r)),
        boxed(catalog::rank_one_chart(2).unwrap()),
    ];
    for ch in &charts {
        let grid = Grid::new(ch.domain(), 21);
        let rf = integrate_r(&**ch, &grid, grid.point(grid.len() / 2), 0.1, &tol, Exec::default()).unwrap();
        for (_, nu, rv) in rf.samples() {
            let j = ch.jet(nu).unwrap().validated(&tol).unwrap();
            match orthogonality_residual(&j, rv, &tol) {
                Ok(x) => assert!(x <= 1e-8, "{}: {x}", ch.name()),
                Err(Error::DegenerateFrame { .. }) => {}
                Err(e) => panic!("{}: {e}", ch.name()),
            }
        }
    }
}

#[test]
fn twisted_charts_are_rejected() {
    let tol = Tolerances::default();
    let ch = random_twisted(&mut rng(47));
    let grid = Grid::new(ch.domain(), 21);
    assert!(matches!(
        integrate_r(&ch, &grid, C64::new(0.0, 0.0), 0.0, &tol, Exec::default()),
        Err(Error::NotLagrangian { .. })
    ));
}

#[test]
fn sequential_and_parallel_agree() {
    let tol = Tolerances::default();
    let ch = SurfaceChart::new(PolyGraph::bumpy());
    let grid = Grid::new(ch.domain(), 21);
    let a = integrate_r(&ch, &grid, C64::new(0.0, 0.0), 0.0, &tol, Exec::Sequential).unwrap();
    let b = integrate_r(&ch, &grid, C64::new(0.0, 0.0), 0.0, &tol, Exec::default()).unwrap();
    assert_eq!(a, b);
    let rf = surface_rfield(&ch, &grid, Exec::Sequential);
    let x = main_theorem_check(&ch, &rf, &tol, Exec::Sequential).unwrap();
    let y = main_theorem_check(&ch, &rf, &tol, Exec::default()).unwrap();
    assert_eq!(x.max_abs_k, y.max_abs_k);
    assert_eq!(x.max_defect, y.max_defect);
}

#[test]
fn the_printed_wedge_factor_does_not_balance() {
    let tol = Tolerances::default();
    let ch = SurfaceChart::new(PolyGraph::bumpy());
    let nu = C64::new(0.05, -0.1);
    let r = ch.surface_r(nu).unwrap();
    let s = weingarten_sample(&ch, nu, r, 1e-3, &tol).unwrap();
    assert!(s.wedge_residual().unwrap() <= 1e-5);
    let j = ch.jet(nu).unwrap();
    let printed = wedge_factor(&j, r, &tol, true).unwrap();
    let used = wedge_factor(&j, r, &tol, false).unwrap();
    assert!((printed - used).norm() > 0.1 * used.norm());
}
