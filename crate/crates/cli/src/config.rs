//! Validated run configuration and chart construction.

use crate::args::{ChartArgs, Format};
use crate::error::{CliError, CliResult};
use gcong::catalog::{self, AlphaParams};
use gcong::congruence::{CongruenceChart, ExprChart};
use gcong::exprdsl::{parse, Expr, Var};
use gcong::grid::{Domain, Exec, Grid};
use gcong::models::UpperHalfPoint;
use gcong::orthogonal_surfaces::{PolyGraph, Profile, RotationalGraph, SurfaceChart};
use gcong::{Tolerances, C64};
use serde::Serialize;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub catalog: Option<String>,
    pub center: Option<[f64; 3]>,
    pub params: Vec<f64>,
    pub profile: Option<String>,
    pub expr: Option<String>,
    pub mu1: Option<String>,
    pub domain: Option<[f64; 4]>,
    pub grid: usize,
    pub r: Option<f64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub expect: Option<String>,
    pub sequential: bool,
}

fn floats(flag: &str, text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("--{flag}: '{s}' is not a number")))
        })
        .collect()
}

impl RunConfig {
    pub fn from_args(a: &ChartArgs) -> CliResult<Self> {
        if a.grid < 5 {
            return Err(CliError::Config(format!("--grid must be at least 5, got {}", a.grid)));
        }
        if let Some(t) = a.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("--tol must be positive, got {t}")));
            }
        }
        if let Some(r) = a.r {
            if !r.is_finite() {
                return Err(CliError::Config("--r must be finite".into()));
            }
        }
        let center = match &a.center {
            None => None,
            Some(s) => {
                let v = floats("center", s)?;
                match v.as_slice() {
                    [t, x] => Some([*t, *x, 0.0]),
                    [t, x, y] => Some([*t, *x, *y]),
                    _ => return Err(CliError::Config("--center expects t,x1[,x2]".into())),
                }
            }
        };
        let domain = match &a.domain {
            None => None,
            Some(s) => {
                let v = floats("domain", s)?;
                match v.as_slice() {
                    [x0, y0, x1, y1] if x1 > x0 && y1 > y0 => Some([*x0, *y0, *x1, *y1]),
                    _ => return Err(CliError::Config("--domain expects x0,y0,x1,y1 with x0<x1, y0<y1".into())),
                }
            }
        };
        let params = match &a.params {
            None => vec![],
            Some(s) => floats("params", s)?,
        };
        if a.catalog.is_none() && a.expr.is_none() {
            return Err(CliError::Config("one of --catalog or --expr is required".into()));
        }
        if a.catalog.is_some() && a.expr.is_some() {
            return Err(CliError::Config("--catalog and --expr are exclusive".into()));
        }
        Ok(RunConfig {
            catalog: a.catalog.clone(),
            center,
            params,
            profile: a.profile.clone(),
            expr: a.expr.clone(),
            mu1: a.mu1.clone(),
            domain,
            grid: a.grid,
            r: a.r,
            tol: a.tol,
            out: a.out.clone(),
            format: a.format,
            expect: a.expect.clone(),
            sequential: a.sequential,
        })
    }

    pub fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances::default()
    }

    pub fn center_point(&self) -> CliResult<Option<UpperHalfPoint>> {
        match self.center {
            None => Ok(None),
            Some([t, x, y]) => UpperHalfPoint::new(t, C64::new(x, y))
                .map(Some)
                .map_err(|e| CliError::Config(format!("--center: {e}"))),
        }
    }
}

/// What the commands need to know about a chart beyond its jets.
pub enum Extra {
    None,
    /// Möbius graph and the constant C of its distinguished r-field.
    Alpha(AlphaParams, f64),
    /// Normal congruence of an explicit surface; r at each ν.
    Surface(Arc<dyn Fn(C64) -> Option<f64> + Send + Sync>),
}

pub struct BuiltChart {
    pub chart: Box<dyn CongruenceChart>,
    pub extra: Extra,
    pub sphere_center: Option<UpperHalfPoint>,
}

impl BuiltChart {
    pub fn grid(&self, cfg: &RunConfig) -> Grid {
        Grid::new(self.chart.domain(), cfg.grid)
    }
}

/// Replaces the domain of a chart, keeping everything else.
struct Restricted<C> {
    inner: C,
    domain: Domain,
}

impl<C: CongruenceChart> CongruenceChart for Restricted<C> {
    fn eval(&self, nu: C64) -> gcong::Result<(C64, C64)> {
        self.inner.eval(nu)
    }
    fn jet(&self, nu: C64) -> gcong::Result<gcong::congruence::Jet2> {
        self.inner.jet(nu)
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        self.inner.name()
    }
}

fn boxed<C: CongruenceChart + 'static>(c: C, domain: &Option<[f64; 4]>) -> Box<dyn CongruenceChart> {
    match domain {
        None => Box::new(c),
        Some([x0, y0, x1, y1]) => Box::new(Restricted {
            inner: c,
            domain: Domain::rect(*x0, *y0, *x1, *y1),
        }),
    }
}

fn parse_expr(flag: &str, text: &str) -> CliResult<Expr> {
    parse(text).map_err(|e| CliError::Config(format!("--{flag}: {e}")))
}

fn need(params: &[f64], n: usize, what: &str) -> CliResult<()> {
    if params.len() != n {
        return Err(CliError::Config(format!("{what} expects {n} --params values, got {}", params.len())));
    }
    Ok(())
}

fn surface<I: gcong::orthogonal_surfaces::Immersion + Clone + 'static>(s: I, cfg: &RunConfig) -> BuiltChart {
    let sc = Arc::new(SurfaceChart::new(s));
    let for_r = sc.clone();
    let chart = SurfaceChart::new(sc.surface.clone());
    BuiltChart {
        chart: boxed(chart, &cfg.domain),
        extra: Extra::Surface(Arc::new(move |nu| for_r.surface_r(nu).ok())),
        sphere_center: None,
    }
}

pub fn build_chart(cfg: &RunConfig) -> CliResult<BuiltChart> {
    if let Some(text) = &cfg.expr {
        let mu2 = parse_expr("expr", text)?;
        let mu1 = match &cfg.mu1 {
            Some(t) => parse_expr("mu1", t)?,
            None => Expr::var(Var::M1),
        };
        let domain = catalog::default_domain();
        return Ok(BuiltChart {
            chart: boxed(ExprChart::new(mu1, mu2, domain).with_name(text.clone()), &cfg.domain),
            extra: Extra::None,
            sphere_center: cfg.center_point()?,
        });
    }
    let name = cfg.catalog.as_deref().unwrap_or_default();
    let p = &cfg.params;
    let alpha = |params: AlphaParams, c: f64, center: Option<UpperHalfPoint>| -> CliResult<BuiltChart> {
        let chart = match cfg.domain {
            None => catalog::alpha_chart(params),
            Some([x0, y0, x1, y1]) => catalog::alpha_chart_on(params, Domain::rect(x0, y0, x1, y1))?,
        };
        Ok(BuiltChart {
            chart: Box::new(chart),
            extra: Extra::Alpha(params, c),
            sphere_center: center,
        })
    };
    match name {
        "sphere" => {
            let center = cfg
                .center_point()?
                .ok_or_else(|| CliError::Config("sphere needs --center t,x1[,x2]".into()))?;
            alpha(catalog::sphere_congruence(&center), 0.0, Some(center))
        }
        "alpha" => {
            need(p, 3, "alpha (A0re,A0im,A1)")?;
            let params = AlphaParams::new(C64::new(p[0], p[1]), p[2]);
            let c = if params.a1 < 0.0 { -(-params.a1).ln() } else { 0.0 };
            let center = catalog::sphere_center(params).ok();
            alpha(params, c, center)
        }
        "totally-geodesic" => {
            let params = if p.is_empty() {
                AlphaParams::new(C64::new(0.0, 0.0), -1.0)
            } else {
                need(p, 3, "totally-geodesic (A0re,A0im,A1)")?;
                AlphaParams::new(C64::new(p[0], p[1]), p[2])
            };
            let (_, c) = catalog::totally_geodesic_chart(params)?;
            alpha(params, c, None)
        }
        "horosphere" | "horosphere-converging" => {
            let a0 = if p.is_empty() {
                C64::new(1.0, 0.0)
            } else {
                need(p, 2, "horosphere (A0re,A0im)")?;
                C64::new(p[0], p[1])
            };
            let chart = if name == "horosphere" {
                catalog::horosphere_chart(a0)?
            } else {
                catalog::horosphere_chart_converging(a0)?
            };
            Ok(BuiltChart {
                chart: boxed(chart, &cfg.domain),
                extra: Extra::None,
                sphere_center: None,
            })
        }
        "flat-conjugate" => {
            let k = match p.as_slice() {
                [] => C64::new(1.0, 0.0),
                [a] => C64::new(*a, 0.0),
                [a, b] => C64::new(*a, *b),
                _ => return Err(CliError::Config("flat-conjugate expects at most 2 --params values".into())),
            };
            Ok(BuiltChart {
                chart: boxed(catalog::flat_conjugate_chart(k)?, &cfg.domain),
                extra: Extra::None,
                sphere_center: None,
            })
        }
        "cmc1" => {
            let (c, k) = match p.as_slice() {
                [] => (0.5, 0.3),
                [c, k] => (*c, *k),
                _ => return Err(CliError::Config("cmc1 expects --params c,K".into())),
            };
            Ok(BuiltChart {
                chart: boxed(catalog::cmc1_rotational_chart(c, k)?, &cfg.domain),
                extra: Extra::None,
                sphere_center: None,
            })
        }
        "rank-one" => {
            let which = match p.as_slice() {
                [] => 0,
                [w] if *w >= 0.0 && w.fract() == 0.0 => *w as u8,
                _ => return Err(CliError::Config("rank-one expects --params INDEX".into())),
            };
            Ok(BuiltChart {
                chart: boxed(catalog::rank_one_chart(which)?, &cfg.domain),
                extra: Extra::None,
                sphere_center: None,
            })
        }
        "rotational" => {
            let pname = cfg.profile.as_deref().unwrap_or("cosh");
            let mut profile =
                Profile::by_name(pname).ok_or_else(|| CliError::Config(format!("unknown profile '{pname}'")))?;
            match (&mut profile, p.as_slice()) {
                (_, []) => {}
                (Profile::Cosh { a, b } | Profile::Paraboloid { a, b }, [x, y]) => (*a, *b) = (*x, *y),
                (Profile::Gaussian { a, b, c }, [x, y, z]) => (*a, *b, *c) = (*x, *y, *z),
                _ => return Err(CliError::Config(format!("wrong number of --params for profile '{pname}'"))),
            }
            Ok(surface(RotationalGraph::new(profile), cfg))
        }
        "bumpy" => Ok(surface(PolyGraph::bumpy(), cfg)),
        other => Err(CliError::Config(format!("unknown catalog entry '{other}'"))),
    }
}
