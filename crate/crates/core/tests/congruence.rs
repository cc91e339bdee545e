mod common;

use common::*;
use gcong::catalog;
use gcong::congruence::*;
use gcong::models::UpperHalfPoint;
use gcong::{Error, Tolerances, C64};
use proptest::prelude::*;

fn seeds() -> impl Strategy<Value = u64> {
    0u64..10_000
}

fn disk_point(radius: f64) -> impl Strategy<Value = C64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn numeric_jets_agree_with_exact_ones(seed in seeds(), nu in disk_point(0.4)) {
        let tol = Tolerances::default();
        let exact = expr_chart(&random_expr(&mut rng(seed)));
        let numeric = NumericChart::new(|z| exact.eval(z), small_disk());
        let (a, b) = (exact.jet(nu).unwrap(), numeric.jet(nu).unwrap());
        for (x, y) in [(a.mu1, b.mu1), (a.mu2, b.mu2)] {
            prop_assert!((x.d - y.d).norm() <= 1e-8 && (x.db - y.db).norm() <= 1e-8);
        }
        let (Ok(sa), Ok(sb)) = (optical_scalars_at(&a, 0.3, &tol), optical_scalars_at(&b, 0.3, &tol)) else {
            return Ok(());
        };
        prop_assert!((sa.rho - sb.rho).norm() + (sa.sigma - sb.sigma).norm() <= 1e-6 * (1.0 + sa.rho.norm()));
    }

    #[test]
    fn scalars_do_not_depend_on_the_parametrisation(seed in seeds(), nu in disk_point(0.2), a in disk_point(1.0), b in disk_point(0.1)) {
        prop_assume!(a.norm() > 0.3);
        let tol = Tolerances::default();
        let mu2 = random_expr(&mut rng(seed));
        let sub = format!("({}+{}i)*m1+({}+{}i)", a.re, a.im, b.re, b.im);
        let mu2_sub = mu2.replace("m1", "M").replace("c1", &format!("conj({sub})")).replace('M', &format!("({sub})"));
        let base = expr_chart(&mu2);
        let moved = gcong::congruence::ExprChart::new(expr(&sub), expr(&mu2_sub), small_disk());
        let ja = base.jet(a * nu + b).unwrap().validated(&tol).unwrap();
        let jb = moved.jet(nu).unwrap().validated(&tol).unwrap();
        for r in [-1.0, 0.4] {
            let (Ok(x), Ok(y)) = (optical_scalars_at(&ja, r, &tol), optical_scalars_at(&jb, r, &tol)) else { continue };
            let s = 1e-9 * (1.0 + x.rho.norm() + x.sigma.norm());
            prop_assert!((x.rho - y.rho).norm() <= s, "{} vs {}", x.rho, y.rho);
            prop_assert!((x.sigma.norm() - y.sigma.norm()).abs() <= s);
        }
    }

    #[test]
    fn sachs_equations_hold(seed in seeds(), nu in disk_point(0.45), r in -3.0f64..3.0) {
        let tol = Tolerances::default();
        let ch = expr_chart(&random_expr(&mut rng(seed)));
        let j = ch.jet(nu).unwrap().validated(&tol).unwrap();
        match sachs_residual(&j, r, &tol) {
            Ok((a, b)) => prop_assert!(a <= 1e-6 && b <= 1e-6, "{} {}", a, b),
            Err(Error::DegenerateFrame { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn lagrangian_charts_are_twist_free(seed in seeds(), nu in disk_point(0.45)) {
        let tol = Tolerances::default();
        let mut r = rng(seed);
        let charts: Vec<Box<dyn CongruenceChart>> =
            vec![boxed(catalog::alpha_chart(random_alpha(&mut r))), boxed(random_antiholomorphic(&mut r))];
        for ch in &charts {
            let Ok(j) = ch.jet(nu).and_then(|j| j.validated(&tol)) else { continue };
            prop_assert!(pullback_omega(&j).abs() <= 1e-10);
            for rr in [-2.0, 0.0, 1.5] {
                if let Ok(s) = optical_scalars_at(&j, rr, &tol) {
                    prop_assert!(s.twist.abs() <= 1e-8 * (1.0 + s.rho.norm()));
                }
            }
        }
    }

    #[test]
    fn kappa_routes_agree(seed in seeds(), nu in disk_point(0.45), r in -1.5f64..1.5) {
        let tol = Tolerances::default();
        let j = expr_chart(&random_expr(&mut rng(seed))).jet(nu).unwrap().validated(&tol).unwrap();
        let (Ok(s), Ok((twist, kappa))) = (optical_scalars_at(&j, r, &tol), twist_and_kappa_j(&j, r, &tol)) else {
            return Ok(());
        };
        prop_assert!((kappa - s.kappa()).abs() <= 1e-8 * (1.0 + kappa.abs()));
        prop_assert!((twist - s.twist).abs() <= 1e-8 * (1.0 + twist.abs()));
    }

    #[test]
    fn two_coordinate_routes_agree(seed in seeds(), nu in disk_point(0.45), r in -1.5f64..1.5) {
        let tol = Tolerances::default();
        let j = expr_chart(&random_expr(&mut rng(seed))).jet(nu).unwrap().validated(&tol).unwrap();
        let xe = XiEtaJet::from_mu_jet(&j).unwrap();
        let (Ok(a), Ok(b)) = (optical_scalars_at(&j, r, &tol), optical_scalars_xieta(&xe, r, &tol)) else {
            return Ok(());
        };
        let s = 1e-8 * (1.0 + a.rho.norm() + a.sigma.norm());
        prop_assert!((a.rho - b.rho).norm() <= s && (a.sigma - b.sigma).norm() <= s);
    }
}

#[test]
fn sphere_scalars_follow_the_distance_to_the_centre() {
    let tol = Tolerances::default();
    let center = UpperHalfPoint::new(0.8, C64::new(0.1, 0.3)).unwrap();
    let ch = catalog::alpha_chart(catalog::sphere_congruence(&center));
    for nu in grid_points(&ch, 9) {
        let j = ch.jet(nu).unwrap().validated(&tol).unwrap();
        let r0 = catalog::sphere_center_parameter(&center, j.mu1.f, j.mu2.f);
        for s in [0.3, 1.0, 2.5] {
            let o = optical_scalars_at(&j, r0 + s, &tol).unwrap();
            assert!((o.rho - C64::new(-1.0 / s.tanh(), 0.0)).norm() <= 1e-9, "{} at {s}", o.rho);
            assert!(o.sigma.norm() <= 1e-10);
        }
    }
}

#[test]
fn classification_of_catalog_charts() {
    let tol = Tolerances::default();
    let nu = C64::new(0.2, 0.1);
    let sphere = classify_point(&expr_chart("m1"), nu, &tol).unwrap();
    assert!(sphere.lagrangian && sphere.complex_point && sphere.totally_null);
    let flat = classify_point(&expr_chart("conj(m1)"), nu, &tol).unwrap();
    assert!(flat.lagrangian && !flat.complex_point && !flat.totally_null);
    let twisted = classify_point(&expr_chart("1 + 0.3*m1*c1^2"), nu, &tol).unwrap();
    assert!(!twisted.lagrangian);
    assert_eq!(classify_point(&catalog::rank_one_chart(1).unwrap(), C64::new(0.7, 0.0), &tol).unwrap().rank, 1);
}

#[test]
fn jets_respect_the_domain() {
    let ch = expr_chart("m1");
    assert!(matches!(jets(&ch, C64::new(0.9, 0.0)), Err(Error::OutOfDomain(_))));
    assert!(jets(&ch, C64::new(0.1, 0.0)).is_ok());
}
