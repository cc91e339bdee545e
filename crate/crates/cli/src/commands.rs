use crate::args::{Export, Format, Suite};
use crate::config::{build_chart, BuiltChart, Extra, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{self, Report, Summary};
use gcong::catalog;
use gcong::congruence::{classify_jet, optical_scalars_at, sachs_residual, CongruenceChart};
use gcong::geodesic_space::{point_at, OrientedGeodesic};
use gcong::grid::Grid;
use gcong::induced_geometry::{det_identity_residual, pullback_metric_jet, signature_classify_jet, Signature};
use gcong::models::{distance, UpperHalfPoint};
use gcong::orthogonal_surfaces::{integrate_r, main_theorem_check, RField};
use gcong::{Error, C64};
use serde_json::{json, Value};
use std::io::Write;

fn sig_name(s: Signature) -> &'static str {
    match s {
        Signature::Lorentz => "lorentz",
        Signature::Degenerate => "degenerate",
        Signature::Riemannian => "riemannian",
    }
}

fn write_out(cfg: &RunConfig, bytes: &[u8]) -> CliResult<()> {
    match &cfg.out {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn check_expect(cfg: &RunConfig, got: &str) -> CliResult<()> {
    match &cfg.expect {
        Some(e) if e != got => Err(CliError::Assertion(format!("expected '{e}', got '{got}'"))),
        _ => Ok(()),
    }
}

/// Nodes of the grid together with their validated jets; failures are kept.
fn jets(b: &BuiltChart, cfg: &RunConfig, grid: &Grid) -> Vec<(C64, gcong::Result<gcong::congruence::Jet2>)> {
    let pts = grid.active_points();
    let tol = cfg.tolerances();
    cfg.exec()
        .map(pts.len(), |i| (pts[i].1, b.chart.jet(pts[i].1).and_then(|j| j.validated(&tol))))
}

pub fn classify(cfg: &RunConfig) -> CliResult<()> {
    let b = build_chart(cfg)?;
    let grid = b.grid(cfg);
    let tol = cfg.tolerances();
    let rows = jets(&b, cfg, &grid);
    let classes: Vec<(C64, gcong::Result<(gcong::congruence::PointClass, Signature)>)> = rows
        .into_iter()
        .map(|(nu, j)| {
            let r = j.and_then(|j| Ok((classify_jet(&j, &tol)?, signature_classify_jet(&j, &tol)?)));
            (nu, r)
        })
        .collect();
    let ok: Vec<_> = classes.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    if ok.is_empty() {
        return Err(match classes.into_iter().find_map(|(_, r)| r.err()) {
            Some(e) => e.into(),
            None => Error::EmptyDomain.into(),
        });
    }
    let lagrangian = ok.iter().all(|(c, _)| c.lagrangian);
    let summary_line = if !lagrangian {
        "not lagrangian".to_string()
    } else {
        let complex = ok.iter().all(|(c, _)| c.complex_point);
        let mut parts = vec!["lagrangian".to_string()];
        if complex {
            parts.push("complex".into());
        }
        let sig = ok[0].1;
        parts.push(if ok.iter().all(|(_, s)| *s == sig) {
            match sig {
                Signature::Degenerate => "degenerate metric".into(),
                s => sig_name(s).into(),
            }
        } else {
            "mixed signature".into()
        });
        if ok.iter().all(|(c, _)| c.rank == 1) {
            parts.push("rank 1".into());
        } else if ok.iter().all(|(c, _)| c.rank == 2) && !complex {
            if let Ok(f) = catalog::flatness_test(&*b.chart, &grid, &tol, cfg.exec()) {
                if f.flat {
                    parts.push("flat (kappa=0)".into());
                }
            }
        }
        let prefix = if complex { "alpha-surface: " } else { "" };
        format!("{prefix}{}", parts.join(", "))
    };
    println!("{summary_line}");
    if cfg.out.is_some() || cfg.format == Some(Format::Json) {
        let per_sample: Vec<Value> = classes
            .iter()
            .map(|(nu, r)| match r {
                Ok((c, s)) => json!({
                    "nu_re": nu.re, "nu_im": nu.im, "lagrangian": c.lagrangian,
                    "complex": c.complex_point, "rank": c.rank, "totally_null": c.totally_null,
                    "signature": sig_name(*s),
                }),
                Err(e) => json!({"nu_re": nu.re, "nu_im": nu.im, "error": e.to_string()}),
            })
            .collect();
        let report = Report::new("classify", cfg, per_sample, Summary::verdict_only(&summary_line));
        let bytes = output::json_bytes(&report)?;
        match &cfg.out {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().write_all(&bytes)?,
        }
    }
    check_expect(cfg, &summary_line)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Sachs => "sachs",
        Suite::DetIdentity => "det-identity",
        Suite::Codazzi => "codazzi",
        Suite::MainTheorem => "main-theorem",
        Suite::Cmc1 => "cmc1",
        Suite::SphereEquation => "sphere-equation",
    }
}

/// The base node: the active node closest to the middle of the domain.
fn base_node(grid: &Grid) -> CliResult<usize> {
    let (x0, y0, x1, y1) = grid.domain.region.bounds();
    grid.nearest_active(C64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1)))
        .ok_or_else(|| Error::EmptyDomain.into())
}

/// The r-field used by main-theorem and exports: the surface itself for
/// surface charts, otherwise the potential equation integrated from the
/// base node, starting at --r, or at the closed form for α-charts.
pub fn r_field(b: &BuiltChart, cfg: &RunConfig, grid: &Grid) -> CliResult<RField> {
    let tol = cfg.tolerances();
    if let Extra::Surface(f) = &b.extra {
        let values: Vec<Option<f64>> = cfg
            .exec()
            .map(grid.len(), |k| if grid.active(k) { f(grid.point(k)) } else { None });
        let base = values.iter().position(|v| v.is_some()).ok_or(Error::EmptyDomain)?;
        let rf = RField {
            grid: grid.clone(),
            r0: values[base].unwrap_or(0.0),
            values,
            base,
            max_circulation: 0.0,
        };
        return Ok(match cfg.r {
            Some(r) => rf.shifted(r),
            None => rf,
        });
    }
    let base = base_node(grid)?;
    let nu0 = grid.point(base);
    let r0 = match (&b.extra, cfg.r) {
        (_, Some(r)) => r,
        (Extra::Alpha(p, c), None) => catalog::alpha_r(*p, *c, nu0),
        _ => 0.0,
    };
    Ok(integrate_r(&*b.chart, grid, nu0, r0, &tol, cfg.exec())?)
}

struct Residuals {
    per_sample: Vec<Value>,
    values: Vec<f64>,
    skipped: usize,
}

impl Residuals {
    fn new() -> Self {
        Residuals {
            per_sample: vec![],
            values: vec![],
            skipped: 0,
        }
    }

    fn push(&mut self, nu: C64, r: Option<f64>, res: gcong::Result<f64>) {
        match res {
            Ok(x) => {
                self.values.push(x);
                self.per_sample.push(json!({"nu_re": nu.re, "nu_im": nu.im, "r": r, "residual": x}));
            }
            Err(e) => {
                self.skipped += 1;
                self.per_sample
                    .push(json!({"nu_re": nu.re, "nu_im": nu.im, "r": r, "error": e.to_string()}));
            }
        }
    }

    fn summary(&self, tol: f64) -> CliResult<Summary> {
        if self.values.is_empty() {
            return Err(CliError::Numeric(Error::EmptyDomain));
        }
        let max = self.values.iter().cloned().fold(0.0, f64::max);
        let mean = self.values.iter().sum::<f64>() / self.values.len() as f64;
        Ok(Summary::residuals(max, mean, tol, self.skipped))
    }
}

pub fn verify(which: Suite, cfg: &RunConfig) -> CliResult<()> {
    if matches!(cfg.format, Some(Format::Csv | Format::Obj)) {
        return Err(CliError::Config("verify writes JSON reports only".into()));
    }
    let b = build_chart(cfg)?;
    let grid = b.grid(cfg);
    let tol = cfg.tolerances();
    let mut res = Residuals::new();
    let summary = match which {
        Suite::Sachs => {
            let rs: Vec<f64> = match cfg.r {
                Some(r) => vec![r],
                None => (-3..=3).map(f64::from).collect(),
            };
            for (nu, j) in jets(&b, cfg, &grid) {
                for &r in &rs {
                    let x = j.clone().and_then(|j| sachs_residual(&j, r, &tol)).map(|(a, b)| a.max(b));
                    res.push(nu, Some(r), x);
                }
            }
            res.summary(cfg.tol.unwrap_or(1e-6))?
        }
        Suite::DetIdentity => {
            let r = cfg.r.unwrap_or(0.0);
            for (nu, j) in jets(&b, cfg, &grid) {
                res.push(nu, Some(r), j.and_then(|j| det_identity_residual(&j, r, &tol)));
            }
            res.summary(cfg.tol.unwrap_or(1e-8))?
        }
        Suite::Codazzi => {
            for (_, nu) in grid.active_points() {
                res.push(nu, None, catalog::codazzi_residual(&*b.chart, nu, &tol));
            }
            res.summary(cfg.tol.unwrap_or(1e-8))?
        }
        Suite::SphereEquation => {
            let center = b
                .sphere_center
                .ok_or_else(|| CliError::Config("sphere-equation needs a sphere chart or --center".into()))?;
            let mut dist = 0.0f64;
            for (_, nu) in grid.active_points() {
                let x = b.chart.eval(nu).and_then(|(m1, m2)| {
                    let r0 = catalog::sphere_center_parameter(&center, m1, m2);
                    let p: UpperHalfPoint = point_at(&OrientedGeodesic::from_mu(m1, m2, tol.diag)?, r0)?;
                    dist = dist.max(distance(&p, &center));
                    Ok(catalog::sphere_residual(&center, m1, m2).norm())
                });
                res.push(nu, None, x);
            }
            let mut s = res.summary(cfg.tol.unwrap_or(1e-10))?;
            s.extra.insert("max_center_distance".into(), json!(dist));
            if dist > 1e-9 {
                s.verdict = "fail".into();
            }
            s
        }
        Suite::Cmc1 => {
            let rep = catalog::cmc1_test(&*b.chart, &grid, &tol, cfg.exec())?;
            let t = cfg.tol.unwrap_or(1e-7);
            let pass = rep.holomorphic && (rep.degenerate || rep.max_rho_residual.is_some_and(|x| x <= t));
            let mut s = Summary::residuals(rep.max_rho_residual.unwrap_or(0.0), f64::NAN, t, 0);
            s.mean_residual = None;
            s.verdict = if pass { "pass" } else { "fail" }.into();
            s.extra.insert("report".into(), serde_json::to_value(&rep)?);
            s
        }
        Suite::MainTheorem => {
            let rf = r_field(&b, cfg, &grid)?;
            let rep = main_theorem_check(&*b.chart, &rf, &tol, cfg.exec())?;
            for s in &rep.samples {
                res.per_sample.push(serde_json::to_value(s)?);
            }
            let mean = rep.samples.iter().map(|s| s.k.abs()).sum::<f64>() / rep.samples.len() as f64;
            let mut s = Summary::residuals(rep.max_abs_k, mean, rep.tol_k, 0);
            s.verdict = if rep.consistent { "pass" } else { "fail" }.into();
            for (k, v) in [
                ("max_defect", json!(rep.max_defect)),
                ("max_wedge_residual", json!(rep.max_wedge_residual)),
                ("flat", json!(rep.flat)),
                ("weingarten", json!(rep.weingarten)),
                ("flat_points", json!(rep.flat_points)),
                ("tol_defect", json!(rep.tol_defect)),
            ] {
                s.extra.insert(k.into(), v);
            }
            s
        }
    };
    let verdict = summary.verdict.clone();
    let report = Report::new(&format!("verify {}", suite_name(which)), cfg, res.per_sample, summary);
    write_out(cfg, &output::json_bytes(&report)?)?;
    if cfg.expect.is_some() {
        return check_expect(cfg, &verdict);
    }
    if verdict != "pass" {
        return Err(CliError::Assertion(format!("verify {}: fail", suite_name(which))));
    }
    Ok(())
}

pub fn export(what: Export, cfg: &RunConfig) -> CliResult<()> {
    let b = build_chart(cfg)?;
    let grid = b.grid(cfg);
    let tol = cfg.tolerances();
    let format = cfg.format.unwrap_or(match what {
        Export::SurfaceMesh => Format::Obj,
        _ => Format::Csv,
    });
    if (what == Export::SurfaceMesh) != (format == Format::Obj) {
        return Err(CliError::Config("OBJ is the only format for surface-mesh, and only for it".into()));
    }
    let r = cfg.r.unwrap_or(0.0);
    let (kind, header, rows): (&str, Vec<&str>, Vec<Vec<output::Cell>>) = match what {
        Export::Scalars => {
            let rows = jets(&b, cfg, &grid)
                .into_iter()
                .map(|(nu, j)| {
                    let s = j.as_ref().ok().and_then(|j| optical_scalars_at(j, r, &tol).ok());
                    let (m1, m2) = j.map(|j| (j.mu1.f, j.mu2.f)).unwrap_or((C64::new(f64::NAN, f64::NAN), C64::new(f64::NAN, f64::NAN)));
                    let nan = f64::NAN;
                    let (rho, sigma, tw, de, ka) = match s {
                        Some(s) => (s.rho, s.sigma, s.twist, s.delta, s.kappa()),
                        None => (C64::new(nan, nan), C64::new(nan, nan), nan, nan, nan),
                    };
                    [nu.re, nu.im, r, m1.re, m1.im, m2.re, m2.im, rho.re, rho.im, sigma.re, sigma.im, tw, de, ka]
                        .into_iter()
                        .map(output::Cell::Num)
                        .collect()
                })
                .collect();
            let header = vec![
                "nu_re", "nu_im", "r", "mu1_re", "mu1_im", "mu2_re", "mu2_im", "rho_re", "rho_im", "sigma_re",
                "sigma_im", "twist", "delta", "kappa",
            ];
            ("scalars", header, rows)
        }
        Export::InducedMetric => {
            let rows = jets(&b, cfg, &grid)
                .into_iter()
                .map(|(nu, j)| {
                    let mut row: Vec<output::Cell> = vec![output::Cell::Num(nu.re), output::Cell::Num(nu.im)];
                    match j {
                        Ok(j) => {
                            let m = pullback_metric_jet(&j);
                            row.extend([m.g_uu, m.g_uv, m.g_vv, m.det].map(output::Cell::Num));
                            row.push(output::Cell::Text(sig_name(m.signature).into()));
                        }
                        Err(_) => {
                            row.extend([f64::NAN; 4].map(output::Cell::Num));
                            row.push(output::Cell::Text("error".into()));
                        }
                    }
                    row
                })
                .collect();
            ("induced-metric", vec!["nu_re", "nu_im", "g_uu", "g_uv", "g_vv", "det", "signature"], rows)
        }
        Export::RField => {
            let rf = r_field(&b, cfg, &grid)?;
            let rows = rf
                .samples()
                .into_iter()
                .map(|(_, nu, r)| [nu.re, nu.im, r].into_iter().map(output::Cell::Num).collect())
                .collect();
            ("r-field", vec!["nu_re", "nu_im", "r"], rows)
        }
        Export::SurfaceMesh => {
            let rf = r_field(&b, cfg, &grid)?;
            let verts: Vec<Option<UpperHalfPoint>> = cfg.exec().map(grid.len(), |k| {
                let r = rf.values[k]?;
                let (m1, m2) = b.chart.eval(grid.point(k)).ok()?;
                point_at(&OrientedGeodesic::from_mu(m1, m2, tol.diag).ok()?, r).ok()
            });
            return write_out(cfg, &output::obj_bytes(&grid, &verts));
        }
    };
    let bytes = match format {
        Format::Csv => output::csv_bytes(kind, &header, &rows)?,
        Format::Json => output::json_bytes(&output::table_json(kind, cfg, &header, &rows))?,
        Format::Obj => unreachable!(),
    };
    write_out(cfg, &bytes)
}
