//! Bounds on the coherent Fisher information of a unitary tangent in terms of
//! the energy variance, the condition number `κ_ρ` and the seminorm of `H`.
//!
//! For `ρ̇ = -i[H, ρ]` and any `f` in the family, with `x = p_i / p_j`:
//!
//! - `I^f_C ≤ 4 max_{i≠j} (m^SLD_ij / m^f_ij) (ΔH)²`
//! - `I^f_C ≤ κ_ρ (ΔH)²`, since `(x - 1)²/x ≤ κ_ρ` for every pair
//! - `(ΔH)² ≤ ‖H‖_s² / 4`
//! - `4 max (m^SLD / m^f) ≤ (1 + κ_ρ)² / κ_ρ`, with equality at RLD
//!
//! The first bound is not below the second in general (at RLD it exceeds it
//! by `(2 + 1/κ_ρ)(ΔH)²`); both are checked against `I^f_C` independently.

use serde::Serialize;

use crate::geometry::{split_qfi, split_variance, TangentOperator};
use crate::monotone::{clamped_mean, MonotoneFunction};
use crate::operator::{check_dims, condition_number, seminorm, variance_sld, DensityMatrix, HermitianOperator};
use crate::{Error, Result};

const CHAIN_SLACK: f64 = 1e-9;

/// Energy-variance bounds for one `(ρ, H, A, f_β)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyBoundReport {
    /// `κ_ρ = p_max / p_min`
    pub kappa: f64,
    /// `I^f_C` of `-i[H, ρ]`
    pub qfi_coherent: f64,
    /// `4 max_{i≠j}(m^SLD_ij / m^f_ij) (ΔH)²`
    pub qfi_c_bound_ratio: f64,
    /// `κ_ρ (ΔH)²`
    pub qfi_c_bound_kappa: f64,
    /// `κ_ρ ‖H‖_s²`
    pub qfi_c_bound_seminorm: f64,
    /// `√κ_ρ Δ^f A_C ΔH + 2 ΔA_I ΔH^int`
    pub speed_bound: f64,
    /// `2 ΔA_C ΔH + 2 ΔA_I ΔH^int`
    pub legacy_bound: f64,
}

fn check(what: &str, lhs: f64, rhs: f64) -> Result<()> {
    if lhs > rhs + CHAIN_SLACK * rhs.abs().max(1.0) {
        return Err(Error::BoundViolation { what: what.into(), lhs, rhs });
    }
    Ok(())
}

/// Evaluates every bound and verifies the valid orderings among them.
///
/// `h_int_variance` is `(ΔH^int)²` on the joint system-environment state; when
/// absent the incoherent terms are dropped (closed system).
pub fn energy_bounds(
    rho: &DensityMatrix,
    h: &HermitianOperator,
    f: &MonotoneFunction,
    h_int_variance: Option<f64>,
    a: &HermitianOperator,
) -> Result<EnergyBoundReport> {
    check_dims(rho.dim(), h.dim())?;
    check_dims(rho.dim(), a.dim())?;
    if let Some(v) = h_int_variance {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter(format!("interaction variance must be non-negative, got {v}")));
        }
    }
    let kappa = condition_number(rho);
    let var_h = variance_sld(rho, h)?;
    let norm_s = seminorm(h);
    let rdot = TangentOperator::commutator(rho, h)?;
    let (qfi_coherent, _) = split_qfi(rho, &rdot, f)?;

    let p = rho.eigenvalues();
    let mut worst = 1.0f64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let ratio = clamped_mean(&MonotoneFunction::SLD, p[i], p[j]) / clamped_mean(f, p[i], p[j]);
            worst = worst.max(ratio);
        }
    }
    let qfi_c_bound_ratio = 4.0 * worst * var_h;
    let qfi_c_bound_kappa = kappa * var_h;
    let qfi_c_bound_seminorm = kappa * norm_s * norm_s;

    let (var_c_f, var_i) = split_variance(rho, a, f)?;
    let (var_c_sld, _) = split_variance(rho, a, &MonotoneFunction::SLD)?;
    let incoherent = h_int_variance.map_or(0.0, |v| 2.0 * var_i.sqrt() * v.sqrt());
    let speed_bound = kappa.sqrt() * var_c_f.sqrt() * var_h.sqrt() + incoherent;
    let legacy_bound = 2.0 * var_c_sld.sqrt() * var_h.sqrt() + incoherent;

    check("I^f_C <= 4 max(m^SLD/m^f) (dH)^2", qfi_coherent, qfi_c_bound_ratio)?;
    check("I^f_C <= kappa (dH)^2", qfi_coherent, qfi_c_bound_kappa)?;
    check("kappa (dH)^2 <= kappa |H|_s^2 / 4", qfi_c_bound_kappa, qfi_c_bound_seminorm / 4.0)?;
    check(
        "4 max(m^SLD/m^f) (dH)^2 <= (1+kappa)^2/kappa (dH)^2",
        qfi_c_bound_ratio,
        (1.0 + kappa).powi(2) / kappa * var_h,
    )?;

    Ok(EnergyBoundReport {
        kappa,
        qfi_coherent,
        qfi_c_bound_ratio,
        qfi_c_bound_kappa,
        qfi_c_bound_seminorm,
        speed_bound,
        legacy_bound,
    })
}
