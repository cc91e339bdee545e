//! Sampling domains in the chart parameter ν and the grid executor.
//!
//! Every per-sample computation in the crate goes through [`Exec::map`],
//! which uses rayon when the `parallel` feature is on and a plain loop
//! otherwise. Results are collected in index order either way, so output
//! is identical for both strategies.

use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `f(0), …, f(n − 1)` in order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Rect { x0: f64, y0: f64, x1: f64, y1: f64 },
    Disk { center: C64, radius: f64 },
}

impl Region {
    pub fn contains(&self, nu: C64) -> bool {
        match *self {
            Region::Rect { x0, y0, x1, y1 } => nu.re >= x0 && nu.re <= x1 && nu.im >= y0 && nu.im <= y1,
            Region::Disk { center, radius } => (nu - center).norm() <= radius * (1.0 + 1e-12),
        }
    }

    /// Axis-aligned bounding box (x0, y0, x1, y1).
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match *self {
            Region::Rect { x0, y0, x1, y1 } => (x0, y0, x1, y1),
            Region::Disk { center, radius } => (
                center.re - radius,
                center.im - radius,
                center.re + radius,
                center.im + radius,
            ),
        }
    }

    /// Length of the bounding-box diagonal.
    pub fn scale(&self) -> f64 {
        let (x0, y0, x1, y1) = self.bounds();
        ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
    }
}

/// A region of the ν-plane with excluded points (poles, zeros of μ₂,
/// points mapped to ∞). Each exclusion is a centre and a radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub region: Region,
    pub exclusions: Vec<(C64, f64)>,
}

pub const DEFAULT_MARGIN: f64 = 0.05;

impl Domain {
    pub fn new(region: Region) -> Self {
        Domain {
            region,
            exclusions: Vec::new(),
        }
    }

    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self::new(Region::Rect { x0, y0, x1, y1 })
    }

    pub fn disk(center: C64, radius: f64) -> Self {
        Self::new(Region::Disk { center, radius })
    }

    pub fn excluding(mut self, point: C64, margin: f64) -> Self {
        self.exclusions.push((point, margin));
        self
    }

    pub fn contains(&self, nu: C64) -> bool {
        self.region.contains(nu) && self.exclusions.iter().all(|(p, m)| (nu - p).norm() > *m)
    }
}

/// n × n samples over the bounding box of a domain; samples outside the
/// domain are masked out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub domain: Domain,
    pub n: usize,
}

impl Grid {
    pub fn new(domain: Domain, n: usize) -> Self {
        assert!(n >= 2, "grid needs at least 2 samples per side");
        Grid { domain, n }
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Step sizes (dx, dy).
    pub fn step(&self) -> (f64, f64) {
        let (x0, y0, x1, y1) = self.domain.region.bounds();
        let m = (self.n - 1) as f64;
        ((x1 - x0) / m, (y1 - y0) / m)
    }

    /// Sample at column i, row j (flat index j·n + i).
    pub fn node(&self, i: usize, j: usize) -> C64 {
        let (x0, y0, _, _) = self.domain.region.bounds();
        let (dx, dy) = self.step();
        C64::new(x0 + i as f64 * dx, y0 + j as f64 * dy)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    pub fn coords(&self, k: usize) -> (usize, usize) {
        (k % self.n, k / self.n)
    }

    pub fn point(&self, k: usize) -> C64 {
        let (i, j) = self.coords(k);
        self.node(i, j)
    }

    pub fn active(&self, k: usize) -> bool {
        self.domain.contains(self.point(k))
    }

    /// All samples inside the domain, in index order.
    pub fn active_points(&self) -> Vec<(usize, C64)> {
        (0..self.len())
            .filter(|&k| self.active(k))
            .map(|k| (k, self.point(k)))
            .collect()
    }

    /// Flat index of the active node closest to `nu`.
    pub fn nearest_active(&self, nu: C64) -> Option<usize> {
        self.active_points()
            .into_iter()
            .min_by(|a, b| (a.1 - nu).norm().total_cmp(&(b.1 - nu).norm()))
            .map(|(k, _)| k)
    }
}
