//! Dirichlet data prescribed on the boundary curve as a function of azimuth.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{BemError, Result};
use crate::geometry::normalize_azimuth;

#[derive(Debug, Clone, PartialEq)]
pub enum DataKind {
    /// `sin(m phi)`.
    Sine {
        mode: u32,
    },
    /// `17 (1 - (6/pi)|phi|)` on `|phi| <= pi/6`, zero elsewhere.
    Hat,
    Constant(f64),
    /// Piecewise-linear interpolation of tabulated `(phi, g)` pairs.
    Tabulated,
    Custom,
}

/// Boundary data `g(phi)` together with the azimuths where it fails to be
/// smooth, so that quadrature can split there.
#[derive(Clone)]
pub struct DirichletData {
    kind: DataKind,
    sampler: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    kinks: Vec<f64>,
}

impl fmt::Debug for DirichletData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletData")
            .field("kind", &self.kind)
            .field("kinks", &self.kinks)
            .finish()
    }
}

/// The hat function `h(phi)`; `phi` is reduced to `(-pi, pi]` first.
pub fn hat_data(phi: f64) -> f64 {
    let mut p = normalize_azimuth(phi);
    if p > PI {
        p -= TAU;
    }
    let a = p.abs();
    if a <= PI / 6.0 {
        17.0 * (1.0 - 6.0 / PI * a)
    } else {
        0.0
    }
}

impl DirichletData {
    pub fn sine(mode: u32) -> Self {
        let m = mode as f64;
        Self {
            kind: DataKind::Sine { mode },
            sampler: Arc::new(move |phi| (m * phi).sin()),
            kinks: vec![],
        }
    }

    pub fn hat() -> Self {
        Self {
            kind: DataKind::Hat,
            sampler: Arc::new(hat_data),
            kinks: vec![0.0, PI / 6.0, TAU - PI / 6.0],
        }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            kind: DataKind::Constant(c),
            sampler: Arc::new(move |_| c),
            kinks: vec![],
        }
    }

    /// Arbitrary smooth data; `kinks` lists azimuths of derivative jumps.
    pub fn custom<F>(f: F, kinks: Vec<f64>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut kinks: Vec<f64> = kinks.into_iter().map(normalize_azimuth).collect();
        kinks.sort_by(f64::total_cmp);
        Self {
            kind: DataKind::Custom,
            sampler: Arc::new(f),
            kinks,
        }
    }

    /// Periodic piecewise-linear interpolant of `(phi, g)` pairs with
    /// strictly ascending `phi` in `[0, 2pi)`.
    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(BemError::Config(
                "tabulated data needs at least two points".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0.partial_cmp(&w[0].0) != Some(std::cmp::Ordering::Greater) {
                return Err(BemError::Config(format!(
                    "tabulated azimuths must be strictly ascending ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        let (first, last) = (points[0].0, points[points.len() - 1].0);
        if first < 0.0 || last >= TAU {
            return Err(BemError::Config(
                "tabulated azimuths must lie in [0, 2pi)".into(),
            ));
        }
        let kinks = points.iter().map(|p| p.0).collect();
        let table = Arc::new(points);
        let sampler = move |phi: f64| {
            let p = normalize_azimuth(phi);
            let n = table.len();
            let idx = table.partition_point(|q| q.0 <= p);
            // Segment [lo, hi] wraps around 2pi at either end.
            let (lo, hi) = if idx == 0 || idx == n {
                let lo = (table[n - 1].0 - TAU, table[n - 1].1);
                let hi = (table[0].0 + TAU, table[0].1);
                if idx == 0 {
                    (lo, table[0])
                } else {
                    (table[n - 1], hi)
                }
            } else {
                (table[idx - 1], table[idx])
            };
            let t = (p - lo.0) / (hi.0 - lo.0);
            lo.1 + t * (hi.1 - lo.1)
        };
        Ok(Self {
            kind: DataKind::Tabulated,
            sampler: Arc::new(sampler),
            kinks,
        })
    }

    /// Reads a CSV of `phi,g` rows. Blank lines, `#` comments and a
    /// non-numeric header row are skipped.
    pub fn from_csv_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BemError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_csv_str(&text)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split(',').map(str::trim);
            let (a, b) = match (cols.next(), cols.next()) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(BemError::Config(format!(
                        "line {}: expected two comma-separated columns",
                        lineno + 1
                    )))
                }
            };
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(phi), Ok(g)) => points.push((phi, g)),
                _ if points.is_empty() => continue,
                _ => {
                    return Err(BemError::Config(format!(
                        "line {}: cannot parse `{line}` as numbers",
                        lineno + 1
                    )))
                }
            }
        }
        Self::piecewise_linear(points)
    }

    pub fn kind(&self) -> &DataKind {
        &self.kind
    }

    pub fn eval(&self, phi: f64) -> f64 {
        (self.sampler)(phi)
    }

    /// Azimuths in `[0, 2pi)` where the data has a kink.
    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn is_smooth(&self) -> bool {
        self.kinks.is_empty()
    }

    /// Same data rotated by `delta`: `phi -> g(phi - delta)`.
    pub fn rotated(&self, delta: f64) -> Self {
        let inner = self.sampler.clone();
        let mut kinks: Vec<f64> = self
            .kinks
            .iter()
            .map(|k| normalize_azimuth(k + delta))
            .collect();
        kinks.sort_by(f64::total_cmp);
        Self {
            kind: DataKind::Custom,
            sampler: Arc::new(move |phi| inner(phi - delta)),
            kinks,
        }
    }

    /// Linear combination `a f + b g`.
    pub fn combine(a: f64, f: &DirichletData, b: f64, g: &DirichletData) -> Self {
        let (fs, gs) = (f.sampler.clone(), g.sampler.clone());
        let mut kinks: Vec<f64> = f.kinks.iter().chain(&g.kinks).copied().collect();
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();
        Self {
            kind: DataKind::Custom,
            sampler: Arc::new(move |phi| a * fs(phi) + b * gs(phi)),
            kinks,
        }
    }

    /// Smallest and largest value on a fine sample including the kinks.
    pub fn range(&self) -> (f64, f64) {
        let m = 4096;
        (0..m)
            .map(|k| TAU * k as f64 / m as f64)
            .chain(self.kinks.iter().copied())
            .map(|p| self.eval(p))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }
}
