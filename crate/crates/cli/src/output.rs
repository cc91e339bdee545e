//! Versioned file formats.
//!
//! * CSV: a first line `# gcong <kind> v1`, then a header row starting
//!   with `nu_re,nu_im`. Numbers are printed as `{:.16e}` (17 significant
//!   digits), so a value read back is bit-identical.
//! * JSON: `{"version": "1", "command", "config", "per_sample": [...],
//!   "summary": {"max_residual", "mean_residual", "verdict", ...}}`.
//! * OBJ: one `v x1 x2 x0` line per grid node that has a surface point
//!   (upper half-space coordinates, height last), quads `f a b c d` over
//!   grid cells whose four corners exist.

use crate::config::RunConfig;
use crate::error::CliResult;
use gcong::grid::Grid;
use gcong::models::UpperHalfPoint;
use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Summary {
    pub max_residual: Option<f64>,
    pub mean_residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub skipped: usize,
    pub verdict: String,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Summary {
    pub fn residuals(max: f64, mean: f64, tol: f64, skipped: usize) -> Self {
        Summary {
            max_residual: Some(max),
            mean_residual: Some(mean),
            tolerance: Some(tol),
            skipped,
            verdict: if max <= tol { "pass" } else { "fail" }.into(),
            extra: Map::new(),
        }
    }

    pub fn verdict_only(v: &str) -> Self {
        Summary {
            max_residual: None,
            mean_residual: None,
            tolerance: None,
            skipped: 0,
            verdict: v.into(),
            extra: Map::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub version: &'static str,
    pub command: String,
    pub config: &'a RunConfig,
    pub per_sample: Vec<Value>,
    pub summary: Summary,
}

impl<'a> Report<'a> {
    pub fn new(command: &str, config: &'a RunConfig, per_sample: Vec<Value>, summary: Summary) -> Self {
        Report {
            version: VERSION,
            command: command.into(),
            config,
            per_sample,
            summary,
        }
    }
}

pub fn json_bytes<T: Serialize>(v: &T) -> CliResult<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

pub fn csv_bytes(kind: &str, header: &[&str], rows: &[Vec<Cell>]) -> CliResult<Vec<u8>> {
    let mut out = format!("# gcong {kind} v{VERSION}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
    }
    Ok(out)
}

#[derive(Serialize)]
pub struct Table<'a> {
    version: &'static str,
    command: String,
    config: &'a RunConfig,
    columns: Vec<String>,
    per_sample: Vec<Value>,
}

pub fn table_json<'a>(kind: &str, cfg: &'a RunConfig, header: &[&str], rows: &[Vec<Cell>]) -> Table<'a> {
    Table {
        version: VERSION,
        command: format!("export {kind}"),
        config: cfg,
        columns: header.iter().map(|s| s.to_string()).collect(),
        per_sample: rows
            .iter()
            .map(|row| {
                Value::Object(header.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect())
            })
            .collect(),
    }
}

pub fn obj_bytes(grid: &Grid, verts: &[Option<UpperHalfPoint>]) -> Vec<u8> {
    let mut s = format!("# gcong surface-mesh v{VERSION}\n# vertex order: x1 x2 x0 (upper half-space, x0 = height)\n");
    let mut index = vec![0usize; verts.len()];
    let mut next = 1;
    for (k, v) in verts.iter().enumerate() {
        if let Some(p) = v {
            s += &format!("v {:.16e} {:.16e} {:.16e}\n", p.z.re, p.z.im, p.t);
            index[k] = next;
            next += 1;
        }
    }
    let n = grid.n;
    for j in 0..n - 1 {
        for i in 0..n - 1 {
            let c = [grid.index(i, j), grid.index(i + 1, j), grid.index(i + 1, j + 1), grid.index(i, j + 1)];
            if c.iter().all(|&k| index[k] > 0) {
                s += &format!("f {} {} {} {}\n", index[c[0]], index[c[1]], index[c[2]], index[c[3]]);
            }
        }
    }
    s.into_bytes()
}
