#![allow(dead_code)]

use gcong::catalog::{self, AlphaParams};
use gcong::congruence::{CongruenceChart, ExprChart};
use gcong::exprdsl::{parse, Expr};
use gcong::grid::{Domain, Grid};
use gcong::orthogonal_surfaces::{PolyGraph, SurfaceChart};
use gcong::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn coef(r: &mut ChaCha8Rng, size: f64) -> C64 {
    c(r.gen_range(-size..size), r.gen_range(-size..size))
}

fn lit(z: C64) -> String {
    format!("({:.6}+{:.6}i)", z.re, z.im)
}

/// The disk used by random expression charts: small enough that μ₂ stays
/// away from 0 and the reflected diagonal.
pub fn small_disk() -> Domain {
    Domain::disk(c(0.0, 0.0), 0.5)
}

/// A random polynomial μ₂ = a + Σ c·m1ᵖ·c1^q of degree ≤ 3, with |a| ≥ 0.6.
pub fn random_expr(r: &mut ChaCha8Rng) -> String {
    let a = C64::from_polar(r.gen_range(0.6..1.0), r.gen_range(0.0..std::f64::consts::TAU));
    let mut s = lit(a);
    for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (1, 2)] {
        if r.gen_bool(0.6) {
            s += &format!(" + {}*m1^{p}*c1^{q}", lit(coef(r, 0.2)));
        }
    }
    s
}

pub fn expr_chart(mu2: &str) -> ExprChart {
    ExprChart::graph(parse(mu2).unwrap(), small_disk()).with_name(mu2)
}

pub fn random_alpha(r: &mut ChaCha8Rng) -> AlphaParams {
    let a0 = coef(r, 0.6);
    let mut a1: f64 = r.gen_range(-1.0..1.5);
    if a1.abs() < 0.1 {
        a1 = 0.5;
    }
    AlphaParams::new(a0, a1)
}

/// μ₂ = conj(h(μ₁)) for a random polynomial h: anti-holomorphic, hence Lagrangian and flat.
pub fn random_antiholomorphic(r: &mut ChaCha8Rng) -> ExprChart {
    let a = C64::from_polar(r.gen_range(0.6..1.0), r.gen_range(0.0..std::f64::consts::TAU));
    let s = format!("{} + {}*c1 + {}*c1^2", lit(a), lit(coef(r, 0.3)), lit(coef(r, 0.2)));
    expr_chart(&s)
}

/// A random polynomial graph t = 1 + Σ c xᵖyᵠ over [−0.3, 0.3]².
pub fn random_graph_surface(r: &mut ChaCha8Rng) -> PolyGraph {
    let mut terms = vec![];
    for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (0, 3)] {
        terms.push((p, q, r.gen_range(-0.3..0.3)));
    }
    PolyGraph {
        t0: 1.0,
        terms,
        domain: Domain::rect(-0.3, -0.3, 0.3, 0.3),
    }
}

/// A non-Lagrangian chart: a random polynomial plus a definite μ̄₁² term.
pub fn random_twisted(r: &mut ChaCha8Rng) -> ExprChart {
    let base = random_expr(r);
    let e = C64::from_polar(r.gen_range(0.1..0.3), r.gen_range(0.0..std::f64::consts::TAU));
    expr_chart(&format!("{base} + {}*m1*c1^2 + {}*c1^2", lit(e), lit(e * 0.5)))
}

pub fn boxed<C: CongruenceChart + 'static>(c: C) -> Box<dyn CongruenceChart> {
    Box::new(c)
}

/// A mix of catalog and random charts, none degenerate along r.
pub fn chart_battery(n: usize, seed: u64) -> Vec<Box<dyn CongruenceChart>> {
    let mut r = rng(seed);
    let mut out: Vec<Box<dyn CongruenceChart>> = vec![
        boxed(catalog::alpha_chart(AlphaParams::new(c(0.2, -0.1), 0.7))),
        boxed(catalog::flat_conjugate_chart(c(1.0, 0.0)).unwrap()),
        boxed(catalog::cmc1_rotational_chart(0.5, 0.3).unwrap()),
        boxed(SurfaceChart::new(PolyGraph::bumpy())),
        boxed(catalog::rank_one_chart(0).unwrap()),
    ];
    while out.len() < n {
        out.push(boxed(expr_chart(&random_expr(&mut r))));
    }
    out
}

pub fn grid_points(chart: &dyn CongruenceChart, n: usize) -> Vec<C64> {
    Grid::new(chart.domain(), n).active_points().into_iter().map(|(_, p)| p).collect()
}

pub fn expr(text: &str) -> Expr {
    parse(text).unwrap()
}
