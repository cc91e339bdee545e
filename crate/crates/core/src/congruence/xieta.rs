//! Optical scalars and the adapted null frame in (ξ, η) coordinates.
//!
//! With F the defining function of the congruence,
//!
//! ```text
//! ∂⁺F = ξ e^r ∂η̄ − ξ̄ e^{−r} ∂η − e^r ∂ln ξ − e^{−r} ∂ln ξ̄
//! ∂⁻F = the same with ∂ replaced by ∂̄
//! Δ   = |∂⁺F|² − |∂⁻F|²
//! ```

use super::{Jet2, OpticalScalars};
use crate::error::{Error, Result};
use crate::geodesic_space::mu_to_xieta_generic;
use crate::taylor::WJet;
use crate::{Tolerances, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

/// Jets of ξ(ν) and η(ν).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiEtaJet {
    pub nu: C64,
    pub xi: WJet,
    pub eta: WJet,
}

impl XiEtaJet {
    pub fn from_mu_jet(jet: &Jet2) -> Result<Self> {
        if jet.mu2.f.norm() == 0.0 {
            return Err(Error::ChartSingular("mu2 = 0 has no (xi, eta) coordinates".into()));
        }
        let (m1, m2) = jet.to_taylor();
        let (xi, eta) = mu_to_xieta_generic(m1, m2);
        Ok(XiEtaJet {
            nu: jet.nu,
            xi: WJet::from_taylor(&xi),
            eta: WJet::from_taylor(&eta),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameCoefficients {
    pub omega_c: C64,
    pub a: C64,
    pub b: C64,
    pub dp_f: C64,
    pub dm_f: C64,
    pub delta: f64,
}

struct Parts {
    xi: C64,
    d_eta: C64,
    db_eta: C64,
    d_etab: C64,
    db_etab: C64,
    d_lnxi: C64,
    db_lnxi: C64,
    dp_f: C64,
    dm_f: C64,
    delta: f64,
}

fn parts(j: &XiEtaJet, r: f64, tol: &Tolerances) -> Result<Parts> {
    let xi = j.xi.f;
    let xib = xi.conj();
    let (er, emr) = (r.exp(), (-r).exp());
    let d_eta = j.eta.d;
    let db_eta = j.eta.db;
    let d_etab = j.eta.db.conj();
    let db_etab = j.eta.d.conj();
    let d_lnxi = j.xi.d / xi;
    let db_lnxi = j.xi.db / xi;
    let d_lnxib = j.xi.db.conj() / xib;
    let db_lnxib = j.xi.d.conj() / xib;
    let dp_f = xi * er * d_etab - xib * emr * d_eta - d_lnxi * er - d_lnxib * emr;
    let dm_f = xi * er * db_etab - xib * emr * db_eta - db_lnxi * er - db_lnxib * emr;
    let delta = dp_f.norm_sqr() - dm_f.norm_sqr();
    if delta.abs() <= tol.frame {
        return Err(Error::DegenerateFrame { delta: delta.abs() });
    }
    Ok(Parts {
        xi,
        d_eta,
        db_eta,
        d_etab,
        db_etab,
        d_lnxi,
        db_lnxi,
        dp_f,
        dm_f,
        delta,
    })
}

pub fn optical_scalars_xieta(j: &XiEtaJet, r: f64, tol: &Tolerances) -> Result<OpticalScalars> {
    let p = parts(j, r, tol)?;
    let k = 2.0 * (-r).exp() / p.delta;
    let plus = p.xi * p.d_etab + p.d_lnxi;
    let minus = p.xi * p.db_etab + p.db_lnxi;
    let sigma = (minus * p.dm_f.conj() - plus * p.dp_f.conj()) * k;
    let rho = C64::new(-1.0, 0.0) + (plus * p.dm_f - minus * p.dp_f) * k;
    Ok(OpticalScalars {
        rho,
        sigma,
        twist: rho.im,
        delta: p.delta,
    })
}

pub fn adapted_frame(j: &XiEtaJet, r: f64, tol: &Tolerances) -> Result<FrameCoefficients> {
    let p = parts(j, r, tol)?;
    let xib = p.xi.conj();
    let a = p.dp_f.conj() * (2.0 * SQRT_2) / p.delta;
    let b = -p.dm_f.conj() * (2.0 * SQRT_2) / p.delta;
    let omega_c = (p.dm_f.conj() * (xib * p.db_eta + p.xi * p.db_etab)
        - p.dp_f.conj() * (xib * p.d_eta + p.xi * p.d_etab))
        * SQRT_2
        / p.delta;
    Ok(FrameCoefficients {
        omega_c,
        a,
        b,
        dp_f: p.dp_f,
        dm_f: p.dm_f,
        delta: p.delta,
    })
}
