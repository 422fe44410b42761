use nalgebra::DMatrix;

use crate::monotone::{clamped_mean, MeanProvider};
use crate::operator::{check_dims, seminorm, DensityMatrix, HermitianOperator};
use crate::{Error, Result, C64};

/// Relative eigenvalue gap below which a pair counts as degenerate.
pub const EIGENVALUE_GAP: f64 = 1e-8;

/// Hamiltonian whose unitary tangent `-i[H, ρ]` saturates the coherent bound
/// for `(ρ, A, f)`, scaled to seminorm `norm_budget`.
///
/// In the eigenbasis of `ρ`, `H_jk ∝ -i m^f(p_j, p_k) A_jk / (p_j - p_k)` for
/// `j ≠ k`. The tangent is then `ρ̇_jk ∝ m^f(p_j, p_k) A_jk`, the direction of
/// steepest ascent of `ȧ` in the metric; the sign makes `ȧ > 0`.
pub fn fast_hamiltonian(
    rho: &DensityMatrix,
    a: &HermitianOperator,
    f: &dyn MeanProvider,
    norm_budget: f64,
) -> Result<HermitianOperator> {
    check_dims(rho.dim(), a.dim())?;
    if !(norm_budget > 0.0 && norm_budget.is_finite()) {
        return Err(Error::InvalidParameter(format!("norm budget must be positive, got {norm_budget}")));
    }
    let p = rho.eigenvalues();
    let d = p.len();
    let rotated = rho.spectrum().to_eigenbasis(a.as_dmatrix());
    let cutoff = 1e-12 * a.matrix().max_abs().max(1.0);

    let mut h = DMatrix::<C64>::zeros(d, d);
    let mut any = false;
    for j in 0..d {
        for k in 0..d {
            if j == k || rotated[(j, k)].norm() <= cutoff {
                continue;
            }
            let gap = p[j] - p[k];
            if gap.abs() <= EIGENVALUE_GAP * p[j].max(p[k]) {
                let (j, k) = (j.min(k), j.max(k));
                return Err(Error::DegenerateEigenvalues { j, k, p_j: p[j], p_k: p[k] });
            }
            h[(j, k)] = C64::new(0.0, -clamped_mean(f, p[j], p[k]) / gap) * rotated[(j, k)];
            any = true;
        }
    }
    if !any {
        return Err(Error::ZeroObservableCoherence);
    }
    let h = HermitianOperator::hermitized(rho.spectrum().from_eigenbasis(&h));
    let scale = norm_budget / seminorm(&h);
    Ok(h.scaled(scale))
}
