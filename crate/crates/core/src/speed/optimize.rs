//! One-dimensional minimization over `β ∈ [-1, 1]`.
//!
//! A uniform grid is scanned first, then the best grid cell is refined by
//! golden-section search. The refined point replaces the grid point only if it
//! is better by more than a relative `1e-12`, so flat objectives keep the
//! smallest grid `β`.

use serde::Serialize;

use crate::geometry::TangentOperator;
use crate::monotone::MonotoneFunction;
use crate::operator::{DensityMatrix, HermitianOperator};
use crate::speed::bounds::CoherentProblem;
use crate::{Error, Result};

/// Bracket width at which golden-section refinement stops.
pub const BETA_TOLERANCE: f64 = 1e-6;

const TIE_TOLERANCE: f64 = 1e-12;

/// Minimizer and minimum of an objective over `β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaOptimum {
    pub beta: f64,
    pub value: f64,
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopped once the
/// bracket is narrower than `tol`. Returns the best point evaluated.
pub fn golden_section(f: &mut dyn FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Grid points `-1 + 2k/n`, `k = 0..=n`, with `n = round(2 / step)`.
pub fn beta_grid(grid_step: f64) -> Result<Vec<f64>> {
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(Error::InvalidParameter(format!("beta grid step must lie in (0, 1], got {grid_step}")));
    }
    let n = ((2.0 / grid_step).round() as usize).max(2);
    Ok((0..=n).map(|k| if k == n { 1.0 } else { -1.0 + 2.0 * k as f64 / n as f64 }).collect())
}

/// Grid scan plus golden-section refinement of `objective` over `[-1, 1]`.
/// Ties within a relative `1e-12` go to the smallest `β`.
pub fn minimize_over_beta(objective: &mut dyn FnMut(f64) -> Result<f64>, grid_step: f64) -> Result<BetaOptimum> {
    let grid = beta_grid(grid_step)?;
    let mut values = Vec::with_capacity(grid.len());
    for &b in &grid {
        values.push(objective(b)?);
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let threshold = min + TIE_TOLERANCE * min.abs().max(1.0);
    let best = values.iter().position(|&v| v <= threshold).unwrap_or(0);

    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let mut failure = None;
    let mut wrapped = |b: f64| match objective(b) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::INFINITY
        }
    };
    let (b_ref, v_ref) = golden_section(&mut wrapped, lo, hi, BETA_TOLERANCE);
    if let Some(e) = failure {
        return Err(e);
    }
    let grid_value = values[best];
    if v_ref < grid_value - TIE_TOLERANCE * grid_value.abs().max(1.0) {
        Ok(BetaOptimum { beta: b_ref, value: v_ref })
    } else {
        Ok(BetaOptimum { beta: grid[best], value: grid_value })
    }
}

/// `argmin_β ξ^{f_β}` and the minimum, for the coherent data of `(ρ, ρ̇, A)`.
pub fn optimize_beta(
    rho: &DensityMatrix,
    rdot: &TangentOperator,
    a: &HermitianOperator,
    grid_step: f64,
) -> Result<BetaOptimum> {
    let problem = CoherentProblem::new(rho, rdot, a)?;
    optimize_xi(&problem, grid_step)
}

pub(crate) fn optimize_xi(problem: &CoherentProblem, grid_step: f64) -> Result<BetaOptimum> {
    // surface degeneracy once instead of at every grid point
    problem.xi(&MonotoneFunction::SLD)?;
    minimize_over_beta(&mut |b| problem.xi(&MonotoneFunction::new(b)?), grid_step)
}
