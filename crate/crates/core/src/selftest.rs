//! Seeded consistency run: eigenbasis formulas against the superoperator
//! oracle, and speed against both bounds over a `β` grid.

use serde::Serialize;

use crate::geometry::{generalized_variance, qfi};
use crate::monotone::MonotoneFunction;
use crate::oracle::{qfi_superop_oracle, variance_superop_oracle};
use crate::random::{random_density, random_hermitian, random_tangent, seeded};
use crate::speed::bounds::bound_split;
use crate::Result;

/// Relative tolerance for oracle agreement.
pub const ORACLE_TOLERANCE: f64 = 1e-9;
/// Relative slack for bound validity.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub instances: usize,
    pub betas: usize,
    pub max_qfi_rel_error: f64,
    pub max_variance_rel_error: f64,
    pub bound_violations: usize,
    pub passed: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Draws `instances` random `(ρ, ρ̇, A)` with `d ∈ {2, 3, 4}` and checks each
/// at 21 values of `β`.
pub fn run_selftest(seed: u64, instances: usize) -> Result<SelftestReport> {
    let mut rng = seeded(seed);
    let betas: Vec<f64> = (0..=20).map(|k| -1.0 + 0.1 * k as f64).collect();
    let mut max_qfi = 0.0f64;
    let mut max_var = 0.0f64;
    let mut violations = 0;
    for n in 0..instances {
        let d = 2 + n % 3;
        let rho = random_density(&mut rng, d, 1e-3)?;
        let rdot = random_tangent(&mut rng, &rho);
        let a = random_hermitian(&mut rng, d, 1.0);
        for &b in &betas {
            let f = MonotoneFunction::new(b)?;
            max_qfi = max_qfi.max(rel(qfi(&rho, &rdot, &f)?, qfi_superop_oracle(&rho, &rdot, &f)?));
            max_var = max_var.max(rel(generalized_variance(&rho, &a, &f)?, variance_superop_oracle(&rho, &a, &f)?));
            let r = bound_split(&rho, &rdot, &a, &f)?;
            if r.speed > r.bound_split + BOUND_SLACK * r.bound_split.max(1.0)
                || r.bound_split > r.bound_nonsplit + BOUND_SLACK * r.bound_nonsplit.max(1.0)
            {
                violations += 1;
            }
        }
    }
    let passed = max_qfi <= ORACLE_TOLERANCE && max_var <= ORACLE_TOLERANCE && violations == 0;
    Ok(SelftestReport {
        seed,
        instances,
        betas: betas.len(),
        max_qfi_rel_error: max_qfi,
        max_variance_rel_error: max_var,
        bound_violations: violations,
        passed,
    })
}
