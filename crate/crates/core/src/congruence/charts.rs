//! Chart implementations differing in how jets are obtained: symbolic
//! (expression charts), automatic (analytic maps on Taylor jets) and
//! numeric (finite differences).

use super::{CongruenceChart, Jet2};
use crate::error::Result;
use crate::exprdsl::{wirtinger_diff, Expr, Var, Wirtinger};
use crate::grid::Domain;
use crate::scalar::Scalar;
use crate::taylor::{Taylor, WJet};
use crate::C64;

/// μ₁ and μ₂ given as expressions with symbolically differentiated jets.
#[derive(Debug, Clone)]
pub struct ExprChart {
    pub mu1: Expr,
    pub mu2: Expr,
    derivs: [[Expr; 5]; 2],
    domain: Domain,
    name: String,
}

fn derivatives(e: &Expr) -> [Expr; 5] {
    let d = wirtinger_diff(e, Wirtinger::D);
    let db = wirtinger_diff(e, Wirtinger::Dbar);
    [
        wirtinger_diff(&d, Wirtinger::D),
        wirtinger_diff(&d, Wirtinger::Dbar),
        wirtinger_diff(&db, Wirtinger::Dbar),
        d,
        db,
    ]
}

impl ExprChart {
    pub fn new(mu1: Expr, mu2: Expr, domain: Domain) -> Self {
        let name = format!("mu1 = {mu1}, mu2 = {mu2}");
        ExprChart {
            derivs: [derivatives(&mu1), derivatives(&mu2)],
            mu1,
            mu2,
            domain,
            name,
        }
    }

    /// The graph chart μ₁ = ν, μ₂ = F(μ₁, μ̄₁).
    pub fn graph(mu2: Expr, domain: Domain) -> Self {
        Self::new(Expr::Var(Var::M1), mu2, domain)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn wjet(&self, k: usize, e: &Expr, nu: C64) -> Result<WJet> {
        let [dd, ddb, dbdb, d, db] = &self.derivs[k];
        Ok(WJet {
            f: e.eval(nu)?,
            d: d.eval(nu)?,
            db: db.eval(nu)?,
            dd: dd.eval(nu)?,
            ddb: ddb.eval(nu)?,
            dbdb: dbdb.eval(nu)?,
        })
    }
}

impl CongruenceChart for ExprChart {
    fn eval(&self, nu: C64) -> Result<(C64, C64)> {
        Ok((self.mu1.eval(nu)?, self.mu2.eval(nu)?))
    }
    fn jet(&self, nu: C64) -> Result<Jet2> {
        Ok(Jet2 {
            nu,
            mu1: self.wjet(0, &self.mu1, nu)?,
            mu2: self.wjet(1, &self.mu2, nu)?,
        })
    }
    fn domain(&self) -> Domain {
        self.domain.clone()
    }
    fn name(&self) -> String {
        self.name.clone()
    }
}

/// A chart written once over [`Scalar`], differentiated by Taylor jets.
pub trait AnalyticMap: Send + Sync {
    fn map<S: Scalar>(&self, nu: S) -> (S, S);
    fn domain(&self) -> Domain;
    fn name(&self) -> String {
        "analytic chart".into()
    }
}

/// Adapter turning an [`AnalyticMap`] into a [`CongruenceChart`].
#[derive(Debug, Clone)]
pub struct Analytic<M>(pub M);

impl<M: AnalyticMap> CongruenceChart for Analytic<M> {
    fn eval(&self, nu: C64) -> Result<(C64, C64)> {
        Ok(self.0.map(nu))
    }
    fn jet(&self, nu: C64) -> Result<Jet2> {
        let (m1, m2) = self.0.map(Taylor::variable(nu));
        Ok(Jet2 {
            nu,
            mu1: WJet::from_taylor(&m1),
            mu2: WJet::from_taylor(&m2),
        })
    }
    fn domain(&self) -> Domain {
        self.0.domain()
    }
    fn name(&self) -> String {
        self.0.name()
    }
}

/// A chart known only through evaluation; jets by central differences on
/// the underlying real map with one Richardson step.
pub struct NumericChart<F> {
    f: F,
    domain: Domain,
    name: String,
}

impl<F> NumericChart<F>
where
    F: Fn(C64) -> Result<(C64, C64)> + Send + Sync,
{
    pub fn new(f: F, domain: Domain) -> Self {
        NumericChart {
            f,
            domain,
            name: "numeric chart".into(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Richardson-extrapolated central difference of a step-dependent estimate.
fn richardson(d: impl Fn(f64) -> Result<[C64; 2]>, h: f64) -> Result<[C64; 2]> {
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    Ok([(fine[0] * 4.0 - coarse[0]) / 3.0, (fine[1] * 4.0 - coarse[1]) / 3.0])
}

impl<F> CongruenceChart for NumericChart<F>
where
    F: Fn(C64) -> Result<(C64, C64)> + Send + Sync,
{
    fn eval(&self, nu: C64) -> Result<(C64, C64)> {
        (self.f)(nu)
    }

    fn jet(&self, nu: C64) -> Result<Jet2> {
        let f = |du: f64, dv: f64| -> Result<[C64; 2]> {
            let (a, b) = (self.f)(nu + C64::new(du, dv))?;
            Ok([a, b])
        };
        let scale = nu.norm().max(1.0);
        // first derivatives at h ~ ε^(1/3), second at h ~ ε^(1/6)
        let h1 = f64::EPSILON.cbrt() * scale;
        let h2 = f64::EPSILON.powf(1.0 / 6.0) * scale;
        let f0 = f(0.0, 0.0)?;
        let comb = |a: [C64; 2], b: [C64; 2], k: f64| [(a[0] - b[0]) * k, (a[1] - b[1]) * k];
        let fu = richardson(|h| Ok(comb(f(h, 0.0)?, f(-h, 0.0)?, 0.5 / h)), h1)?;
        let fv = richardson(|h| Ok(comb(f(0.0, h)?, f(0.0, -h)?, 0.5 / h)), h1)?;
        let second = |e: [C64; 2], w: [C64; 2], h: f64| {
            [(e[0] - f0[0] * 2.0 + w[0]) / (h * h), (e[1] - f0[1] * 2.0 + w[1]) / (h * h)]
        };
        let fuu = richardson(|h| Ok(second(f(h, 0.0)?, f(-h, 0.0)?, h)), h2)?;
        let fvv = richardson(|h| Ok(second(f(0.0, h)?, f(0.0, -h)?, h)), h2)?;
        let fuv = richardson(
            |h| {
                let (pp, pm, mp, mm) = (f(h, h)?, f(h, -h)?, f(-h, h)?, f(-h, -h)?);
                let k = 0.25 / (h * h);
                Ok([(pp[0] - pm[0] - mp[0] + mm[0]) * k, (pp[1] - pm[1] - mp[1] + mm[1]) * k])
            },
            h2,
        )?;
        let w = |i: usize| WJet::from_real(f0[i], fu[i], fv[i], fuu[i], fuv[i], fvv[i]);
        Ok(Jet2 { nu, mu1: w(0), mu2: w(1) })
    }

    fn domain(&self) -> Domain {
        self.domain.clone()
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}
