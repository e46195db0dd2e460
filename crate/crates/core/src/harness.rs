//! Convergence studies along a latitude and their CSV output.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::data::DirichletData;
use crate::error::{BemError, Result};
use crate::geometry::{BoundaryCurve, CurveKind, SphericalPoint};
use crate::operators::{solve_dirichlet_single_layer, DensitySolution};
use crate::potential::eval_single_layer;
use crate::reference::poisson_hemisphere;

pub const DEFAULT_DOFS: [usize; 6] = [20, 40, 80, 160, 320, 640];
pub const DEFAULT_EVAL_THETA: f64 = 0.75 * PI;
pub const DEFAULT_EVAL_SAMPLES: usize = 1024;
const MIN_EVAL_SAMPLES: usize = 64;

/// The boundary curve of an experiment: a latitude circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSpec {
    Equator,
    Cap { theta0: f64 },
}

impl CurveSpec {
    pub fn theta0(&self) -> f64 {
        match self {
            CurveSpec::Equator => FRAC_PI_2,
            CurveSpec::Cap { theta0 } => *theta0,
        }
    }

    pub fn to_curve(&self) -> Result<BoundaryCurve> {
        BoundaryCurve::latitude_circle(self.theta0())
    }
}

impl FromStr for CurveSpec {
    type Err = BemError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "equator" {
            return Ok(CurveSpec::Equator);
        }
        let theta0 = s
            .strip_prefix("cap:")
            .ok_or_else(|| {
                BemError::Config(format!(
                    "unknown curve `{s}` (expected equator or cap:<theta0>)"
                ))
            })?
            .parse::<f64>()
            .map_err(|e| BemError::Config(format!("bad cap angle in `{s}`: {e}")))?;
        if !(theta0 > 0.0 && theta0 < PI) {
            return Err(BemError::Config(format!(
                "cap angle {theta0} must lie in (0, pi)"
            )));
        }
        Ok(CurveSpec::Cap { theta0 })
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSpec::Equator => write!(f, "equator"),
            CurveSpec::Cap { theta0 } => write!(f, "cap:{theta0}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSpec {
    Sine { mode: u32 },
    Hat,
    File(PathBuf),
}

impl DataSpec {
    pub fn load(&self) -> Result<DirichletData> {
        match self {
            DataSpec::Sine { mode } => Ok(DirichletData::sine(*mode)),
            DataSpec::Hat => Ok(DirichletData::hat()),
            DataSpec::File(path) => DirichletData::from_csv_file(path),
        }
    }
}

impl FromStr for DataSpec {
    type Err = BemError;

    /// `sin`, `sin:<m>`, `hat` or `file:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "sin" => return Ok(DataSpec::Sine { mode: 1 }),
            "hat" => return Ok(DataSpec::Hat),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("sin:") {
            let mode = m
                .parse::<u32>()
                .map_err(|e| BemError::Config(format!("bad sine mode in `{s}`: {e}")))?;
            return Ok(DataSpec::Sine { mode });
        }
        match s.strip_prefix("file:") {
            Some(p) if !p.is_empty() => Ok(DataSpec::File(PathBuf::from(p))),
            _ => Err(BemError::Config(format!(
                "unknown data `{s}` (expected sin, sin:<m>, hat or file:<path>)"
            ))),
        }
    }
}

impl fmt::Display for DataSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSpec::Sine { mode: 1 } => write!(f, "sin"),
            DataSpec::Sine { mode } => write!(f, "sin:{mode}"),
            DataSpec::Hat => write!(f, "hat"),
            DataSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Regular `(phi, theta)` sampling grid, written `<n_phi>x<n_theta>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n_phi: usize,
    pub n_theta: usize,
}

impl FromStr for GridSpec {
    type Err = BemError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || BemError::Config(format!("bad grid `{s}` (expected <n_phi>x<n_theta>)"));
        let (a, b) = s.trim().split_once('x').ok_or_else(bad)?;
        let grid = GridSpec {
            n_phi: a.parse().map_err(|_| bad())?,
            n_theta: b.parse().map_err(|_| bad())?,
        };
        grid.validate()?;
        Ok(grid)
    }
}

impl GridSpec {
    fn validate(&self) -> Result<()> {
        if self.n_phi == 0 || self.n_theta == 0 {
            return Err(BemError::Config(format!(
                "grid {}x{} has no points",
                self.n_phi, self.n_theta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub curve: CurveSpec,
    pub data: DataSpec,
    pub dofs: Vec<usize>,
    pub eval_theta: f64,
    pub eval_samples: usize,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            curve: CurveSpec::Equator,
            data: DataSpec::Sine { mode: 1 },
            dofs: DEFAULT_DOFS.to_vec(),
            eval_theta: DEFAULT_EVAL_THETA,
            eval_samples: DEFAULT_EVAL_SAMPLES,
            output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dofs.is_empty() {
            return Err(BemError::Config("empty list of panel counts".into()));
        }
        if let Some(&n) = self.dofs.iter().find(|&&n| n < 4) {
            return Err(BemError::TooCoarse(n));
        }
        if self.dofs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(BemError::Config(format!(
                "panel counts must be strictly increasing: {:?}",
                self.dofs
            )));
        }
        let theta0 = self.curve.theta0();
        if !(self.eval_theta > theta0 && self.eval_theta < PI) {
            return Err(BemError::Config(format!(
                "evaluation latitude {} must lie strictly between the curve ({theta0}) and the south pole",
                self.eval_theta
            )));
        }
        if self.eval_samples < MIN_EVAL_SAMPLES {
            return Err(BemError::Config(format!(
                "need at least {MIN_EVAL_SAMPLES} samples along the latitude, got {}",
                self.eval_samples
            )));
        }
        Ok(())
    }
}

/// Trapezoid L2 norm of `u_h - u_ref` on the latitude `theta`, with the
/// arc-length weight `sin(theta)`.
pub fn l2_error_on_latitude<F, G>(u_h: F, u_ref: G, theta: f64, m: usize) -> Result<f64>
where
    F: Fn(&SphericalPoint) -> Result<f64> + Sync,
    G: Fn(&SphericalPoint) -> Result<f64> + Sync,
{
    if m < MIN_EVAL_SAMPLES {
        return Err(BemError::Config(format!(
            "need at least {MIN_EVAL_SAMPLES} samples, got {m}"
        )));
    }
    let points = latitude_points(theta, m)?;
    let diffs: Vec<f64> = points
        .par_iter()
        .map(|p| Ok(u_h(p)? - u_ref(p)?))
        .collect::<Result<_>>()?;
    Ok(weighted_norm(&diffs, theta))
}

fn latitude_points(theta: f64, m: usize) -> Result<Vec<SphericalPoint>> {
    (0..m)
        .map(|k| SphericalPoint::new(TAU * k as f64 / m as f64, theta))
        .collect()
}

fn weighted_norm(diffs: &[f64], theta: f64) -> f64 {
    let sum_sq: f64 = diffs.iter().map(|d| d * d).sum();
    (TAU * theta.sin() / diffs.len() as f64 * sum_sq).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub dof: usize,
    pub l2_error: f64,
    /// Error of the previous row divided by this one.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn from_errors(errors: &[(usize, f64)]) -> Self {
        let rows = errors
            .iter()
            .enumerate()
            .map(|(k, &(dof, l2_error))| ConvergenceRow {
                dof,
                l2_error,
                ratio: (k > 0).then(|| errors[k - 1].1 / l2_error),
            })
            .collect();
        Self { rows }
    }

    /// CSV text: header `dof,l2_error,ratio`, floats in shortest round-trip
    /// scientific notation, empty ratio on the first row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dof,l2_error,ratio\n");
        for row in &self.rows {
            let _ = write!(out, "{},{:e},", row.dof, row.l2_error);
            if let Some(r) = row.ratio {
                let _ = write!(out, "{r:e}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn emit_csv(report: &ConvergenceReport, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_csv())?;
    Ok(())
}

/// The reference field for the configured curve and data, sampled on the
/// evaluation latitude. Hemispheres use the Poisson integral; other caps
/// use a single-layer solve with twice the finest panel count.
fn reference_values(
    cfg: &ExperimentConfig,
    data: &DirichletData,
    points: &[SphericalPoint],
) -> Result<Vec<f64>> {
    match cfg.curve {
        CurveSpec::Equator => points
            .par_iter()
            .map(|p| poisson_hemisphere(data, p.phi(), p.theta()))
            .collect(),
        CurveSpec::Cap { .. } => {
            let n_ref = 2 * cfg.dofs.last().copied().unwrap_or(DEFAULT_DOFS[5]);
            let sol =
                solve_dirichlet_single_layer(&cfg.curve.to_curve()?, data, n_ref).map_err(|e| {
                    BemError::AtDof {
                        dof: n_ref,
                        source: Box::new(e),
                    }
                })?;
            points
                .par_iter()
                .map(|p| eval_single_layer(&sol, p))
                .collect()
        }
    }
}

/// Solves for every panel count in the configuration (in parallel) and
/// reports the latitude L2 error against the reference. Rows follow the
/// order of `cfg.dofs`.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let curve = cfg.curve.to_curve()?;
    let data = cfg.data.load()?;
    let points = latitude_points(cfg.eval_theta, cfg.eval_samples)?;
    let reference = reference_values(cfg, &data, &points)?;
    let errors: Vec<(usize, f64)> = cfg
        .dofs
        .par_iter()
        .map(|&n| {
            let at = |e: BemError| BemError::AtDof {
                dof: n,
                source: Box::new(e),
            };
            let sol = solve_dirichlet_single_layer(&curve, &data, n).map_err(at)?;
            let diffs: Vec<f64> = points
                .par_iter()
                .zip(&reference)
                .map(|(p, r)| Ok(eval_single_layer(&sol, p)? - r))
                .collect::<Result<_>>()
                .map_err(at)?;
            Ok((n, weighted_norm(&diffs, cfg.eval_theta)))
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceReport::from_errors(&errors))
}

/// Writes `phi,theta,u` samples of the solution on a regular grid over the
/// domain `theta0 < theta < pi`, cell-centred in `theta` so that neither
/// the curve nor the pole is hit.
pub fn emit_field_grid(sol: &DensitySolution, grid: GridSpec, path: &Path) -> Result<()> {
    std::fs::write(path, field_grid_csv(sol, grid)?)?;
    Ok(())
}

pub fn field_grid_csv(sol: &DensitySolution, grid: GridSpec) -> Result<String> {
    grid.validate()?;
    let theta0 = match sol.panelization.curve().kind() {
        CurveKind::Latitude { theta0 } => theta0,
        CurveKind::Custom => {
            return Err(BemError::Domain(
                "field grids need a latitude-circle boundary".into(),
            ));
        }
    };
    let points: Vec<SphericalPoint> = (0..grid.n_theta)
        .flat_map(|j| {
            let theta = theta0 + (PI - theta0) * (j as f64 + 0.5) / grid.n_theta as f64;
            (0..grid.n_phi).map(move |i| (TAU * i as f64 / grid.n_phi as f64, theta))
        })
        .map(|(phi, theta)| SphericalPoint::new(phi, theta))
        .collect::<Result<_>>()?;
    let values: Vec<f64> = points
        .par_iter()
        .map(|p| eval_single_layer(sol, p))
        .collect::<Result<_>>()?;
    let mut out = String::from("phi,theta,u\n");
    for (p, u) in points.iter().zip(values) {
        let _ = writeln!(out, "{:e},{:e},{:e}", p.phi(), p.theta(), u);
    }
    Ok(out)
}
