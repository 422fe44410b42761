use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::replica::{experiment_replica, ReplicaRow};
use crate::geometry::TangentOperator;
use crate::monotone::MonotoneFunction;
use crate::operator::{DensityMatrix, HermitianOperator};
use crate::scan::config::{ExperimentConfig, ObservableTemplate, ScanConfig};
use crate::scan::grid::SimplexGrid;
use crate::scan::output::ScanOutput;
use crate::speed::bounds::{observable_speed, CoherentProblem};
use crate::speed::energy::energy_bounds;
use crate::speed::fast::fast_hamiltonian;
use crate::speed::optimize::{minimize_over_beta, optimize_xi};
use crate::{Error, Result};

/// Which quantity a scan maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    Xi,
    FastH,
    Energy,
}

impl ScanKind {
    /// Auxiliary CSV columns, sorted.
    pub fn aux_columns(self) -> &'static [&'static str] {
        match self {
            ScanKind::Xi => &["xi_rld"],
            ScanKind::FastH => &["speed_ratio"],
            ScanKind::Energy => &["bound_ratio", "kappa"],
        }
    }

    /// Auxiliary column summarized as `max_ratio`.
    pub fn ratio_column(self) -> Option<&'static str> {
        match self {
            ScanKind::Xi => None,
            ScanKind::FastH => Some("speed_ratio"),
            ScanKind::Energy => Some("bound_ratio"),
        }
    }
}

/// Result at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub point: Vec<f64>,
    pub beta_star: f64,
    pub xi_star: f64,
    pub auxiliary: BTreeMap<String, f64>,
}

fn skippable(e: &Error) -> bool {
    matches!(e, Error::DegenerateEigenvalues { .. } | Error::DegenerateCoherentTerm(_) | Error::ZeroObservableCoherence)
}

fn fully_degenerate(rho: &DensityMatrix) -> bool {
    let p = rho.eigenvalues();
    p[0] - p[p.len() - 1] <= 1e-12
}

/// `ξ^f`, with the uniform state mapped to 1: every mean coincides there, so
/// the ratio tends to 1 along any approach even though the tangent vanishes.
fn xi_or_uniform(problem: &CoherentProblem, rho: &DensityMatrix, f: &MonotoneFunction) -> Result<f64> {
    match problem.xi(f) {
        Err(Error::DegenerateCoherentTerm(_)) if fully_degenerate(rho) => Ok(1.0),
        other => other,
    }
}

fn evaluate(
    grid: &SimplexGrid,
    kind: ScanKind,
    point: impl Fn(&[f64]) -> Result<ScanRow> + Sync,
) -> Result<ScanOutput> {
    let results: Vec<Option<ScanRow>> = grid
        .points
        .par_iter()
        .map(|p| match point(p) {
            Ok(row) => Ok(Some(row)),
            Err(e) if skippable(&e) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let skipped = results.iter().filter(|r| r.is_none()).count();
    Ok(ScanOutput { kind, dim: grid.dim, rows: results.into_iter().flatten().collect(), skipped })
}

struct Prepared {
    grid: SimplexGrid,
    h: HermitianOperator,
    a: HermitianOperator,
}

fn prepare(config: &ScanConfig, default_observable: ObservableTemplate, needs_h: bool) -> Result<Prepared> {
    config.validate()?;
    let grid = config.grid.build()?;
    let h = config.hamiltonian.build()?;
    if needs_h && h.dim() != grid.dim {
        return Err(Error::Config(format!("hamiltonian has dimension {} but the grid has {}", h.dim(), grid.dim)));
    }
    let a = config.observable.clone().unwrap_or(default_observable).build(grid.dim)?;
    if a.dim() != grid.dim {
        return Err(Error::Config(format!("observable has dimension {} but the grid has {}", a.dim(), grid.dim)));
    }
    Ok(Prepared { grid, h, a })
}

/// `min_β ξ^{f_β}` under `ρ̇ = -i[H, ρ]` at every grid point.
pub fn scan_xi(config: &ScanConfig) -> Result<ScanOutput> {
    let Prepared { grid, h, a } = prepare(config, ObservableTemplate::X01, true)?;
    evaluate(&grid, ScanKind::Xi, |p| {
        let rho = DensityMatrix::from_diagonal(p)?;
        let rdot = TangentOperator::commutator(&rho, &h)?;
        let problem = CoherentProblem::new(&rho, &rdot, &a)?;
        let (beta_star, xi_star) = match optimize_xi(&problem, config.beta_step) {
            Ok(opt) => (opt.beta, opt.value),
            Err(Error::DegenerateCoherentTerm(_)) if fully_degenerate(&rho) => (-1.0, 1.0),
            Err(e) => return Err(e),
        };
        let xi_rld = xi_or_uniform(&problem, &rho, &MonotoneFunction::RLD)?;
        Ok(ScanRow {
            point: p.to_vec(),
            beta_star,
            xi_star,
            auxiliary: BTreeMap::from([("xi_rld".to_string(), xi_rld)]),
        })
    })
}

/// Speed reached by the fast Hamiltonian of `f_β` at fixed seminorm, maximized
/// over `β` and reported relative to `β = 1`.
pub fn scan_fast_h(config: &ScanConfig) -> Result<ScanOutput> {
    let Prepared { grid, a, .. } = prepare(config, ObservableTemplate::Ladder, false)?;
    let budget = config.norm_budget;
    evaluate(&grid, ScanKind::FastH, |p| {
        let rho = DensityMatrix::from_diagonal(p)?;
        let drive = |f: &MonotoneFunction| -> Result<TangentOperator> {
            TangentOperator::commutator(&rho, &fast_hamiltonian(&rho, &a, f, budget)?)
        };
        let speed = |f: &MonotoneFunction| -> Result<f64> { observable_speed(&drive(f)?, &a) };
        let reference = speed(&MonotoneFunction::SLD)?;
        if !(reference > 0.0) {
            return Err(Error::ZeroObservableCoherence);
        }
        let opt = minimize_over_beta(&mut |b| Ok(-speed(&MonotoneFunction::new(b)?)? / reference), config.beta_step)?;
        let best = MonotoneFunction::new(opt.beta)?;
        let xi_star = CoherentProblem::new(&rho, &drive(&best)?, &a)?.xi(&best)?;
        Ok(ScanRow {
            point: p.to_vec(),
            beta_star: opt.beta,
            xi_star,
            auxiliary: BTreeMap::from([("speed_ratio".to_string(), -opt.value)]),
        })
    })
}

/// Energy-variance bound over the bound built from the ordinary variance, at
/// the configured metric (RLD unless set).
pub fn scan_energy_bounds(config: &ScanConfig) -> Result<ScanOutput> {
    let Prepared { grid, h, a } = prepare(config, ObservableTemplate::X01, true)?;
    let f = config.beta.unwrap_or(MonotoneFunction::RLD);
    evaluate(&grid, ScanKind::Energy, |p| {
        let rho = DensityMatrix::from_diagonal(p)?;
        if fully_degenerate(&rho) {
            // Every mean equals p_j here, so the ratio tends to √κ/2 = 1/2
            // along any approach.
            return Ok(ScanRow {
                point: p.to_vec(),
                beta_star: f.beta(),
                xi_star: 1.0,
                auxiliary: BTreeMap::from([("bound_ratio".to_string(), 0.5), ("kappa".to_string(), 1.0)]),
            });
        }
        let report = energy_bounds(&rho, &h, &f, None, &a)?;
        if !(report.legacy_bound > 0.0) {
            return Err(Error::DegenerateCoherentTerm(report.legacy_bound));
        }
        let rdot = TangentOperator::commutator(&rho, &h)?;
        let xi_star = xi_or_uniform(&CoherentProblem::new(&rho, &rdot, &a)?, &rho, &f)?;
        Ok(ScanRow {
            point: p.to_vec(),
            beta_star: f.beta(),
            xi_star,
            auxiliary: BTreeMap::from([
                ("bound_ratio".to_string(), report.speed_bound / report.legacy_bound),
                ("kappa".to_string(), report.kappa),
            ]),
        })
    })
}

/// Runs the decay-chain experiment described by `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ReplicaRow>> {
    let spec = config.rates.build()?;
    config.drive.validate().map_err(|e| Error::Config(e.to_string()))?;
    let a = config.observable.clone().unwrap_or(ObservableTemplate::X01).build(3)?;
    if config.t_decay.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::Config("t_decay values must be non-negative".into()));
    }
    if !(config.window > 0.0 && config.dt > 0.0 && config.dt < config.window) {
        return Err(Error::Config(format!("need 0 < dt < window, got dt {} and window {}", config.dt, config.window)));
    }
    experiment_replica(&spec, &config.drive, &config.t_decay, Some(&a), &config.settings())
}
