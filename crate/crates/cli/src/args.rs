use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "gcong", version, about = "Congruences of oriented geodesics in hyperbolic 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every sample of a chart and print a one-line verdict.
    Classify(ChartArgs),
    /// Run one of the residual suites.
    Verify {
        #[arg(value_enum)]
        which: Suite,
        #[command(flatten)]
        chart: ChartArgs,
    },
    /// Write grids or meshes.
    Export {
        #[arg(value_enum)]
        what: Export,
        #[command(flatten)]
        chart: ChartArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Sachs,
    DetIdentity,
    Codazzi,
    MainTheorem,
    Cmc1,
    SphereEquation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Export {
    Scalars,
    InducedMetric,
    SurfaceMesh,
    RField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Obj,
}

#[derive(Debug, Clone, Args)]
pub struct ChartArgs {
    /// sphere, horosphere, horosphere-converging, alpha, totally-geodesic,
    /// flat-conjugate, cmc1, rank-one, rotational, bumpy
    #[arg(long)]
    pub catalog: Option<String>,
    /// Sphere centre "t,x1[,x2]".
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    /// Comma-separated catalog parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Profile of a rotational surface: cosh, paraboloid, gaussian.
    #[arg(long)]
    pub profile: Option<String>,
    /// μ₂ as an expression in m1, c1, u, v.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// μ₁ as an expression (default m1).
    #[arg(long, allow_hyphen_values = true)]
    pub mu1: Option<String>,
    /// Rectangle "x0,y0,x1,y1" replacing the chart's domain.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Samples per side.
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    /// Parameter along the geodesics (or the base value of r).
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Pass/fail tolerance replacing the suite default.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Expected verdict; exit code 2 on mismatch.
    #[arg(long)]
    pub expect: Option<String>,
    /// Evaluate on one thread.
    #[arg(long)]
    pub sequential: bool,
}
