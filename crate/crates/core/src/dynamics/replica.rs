//! Qutrit decay-chain preparation and the short-window speed measurement.
//!
//! Levels are ordered `g = 0`, `e = 1`, `f = 2`. The chain `f → e → g` starts
//! in `|f⟩`; waiting `t_decay` leaves a diagonal mixed state, which is then
//! driven by a ladder Hamiltonian while `⟨X_ge⟩` is recorded.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{evolve, measured_speed, unitary_generator, Generator, Jump};
use crate::geometry::TangentOperator;
use crate::monotone::MonotoneFunction;
use crate::operator::{transition, ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::speed::bounds::{bound_split, observable_speed, CoherentProblem};
use crate::{Error, Result, C64};

/// Decay rates of the chain, in 1/μs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayChainSpec {
    /// `|f⟩ → |e⟩`
    pub gamma_fe: f64,
    /// `|e⟩ → |g⟩`
    pub gamma_eg: f64,
}

impl DecayChainSpec {
    pub fn new(gamma_fe: f64, gamma_eg: f64) -> Result<Self> {
        let spec = DecayChainSpec { gamma_fe, gamma_eg };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("gamma_fe", self.gamma_fe), ("gamma_eg", self.gamma_eg)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Tabulated transmon rates read as 1/ms (`Γ_fe = 18.4`, `Γ_eg = 14.7` per
    /// ms), expressed in 1/μs. Populations then evolve over tens of μs.
    pub fn preset_per_ms() -> Self {
        DecayChainSpec { gamma_fe: 18.4e-3, gamma_eg: 14.7e-3 }
    }

    /// The same numbers read literally as 1/μs. Any `t_decay` of order 10 μs
    /// then leaves `|g⟩` with all but ~1e-64 of the population.
    pub fn preset_per_us() -> Self {
        DecayChainSpec { gamma_fe: 18.4, gamma_eg: 14.7 }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "per_ms" => Ok(Self::preset_per_ms()),
            "per_us" => Ok(Self::preset_per_us()),
            other => Err(Error::Config(format!("unknown rate preset `{other}` (expected per_ms or per_us)"))),
        }
    }
}

/// Rabi rates of the two ladder transitions, in rad/μs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSpec {
    pub omega_ge: f64,
    pub omega_ef: f64,
}

impl Default for DriveSpec {
    /// `2π · 10 MHz` on both transitions.
    fn default() -> Self {
        DriveSpec { omega_ge: 2.0 * PI * 10.0, omega_ef: 2.0 * PI * 10.0 }
    }
}

impl DriveSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("omega_ge", self.omega_ge), ("omega_ef", self.omega_ef)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be finite and non-negative, got {v}")));
            }
        }
        Ok(())
    }

    /// `H = i(Ω_ge/2)|g⟩⟨e| + i(Ω_ef/2)|e⟩⟨f| + h.c.`
    pub fn hamiltonian(&self) -> HermitianOperator {
        let mut m = DMatrix::<C64>::zeros(3, 3);
        m[(0, 1)] = C64::new(0.0, 0.5 * self.omega_ge);
        m[(1, 0)] = C64::new(0.0, -0.5 * self.omega_ge);
        m[(1, 2)] = C64::new(0.0, 0.5 * self.omega_ef);
        m[(2, 1)] = C64::new(0.0, -0.5 * self.omega_ef);
        HermitianOperator::new(ComplexMatrix::new(m).expect("3x3")).expect("Hermitian by construction")
    }
}

/// `(p_g, p_e, p_f)` after time `t` from `|f⟩`.
pub fn bateman_populations(spec: &DecayChainSpec, t: f64) -> Result<[f64; 3]> {
    spec.validate()?;
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    let a = spec.gamma_fe;
    let b = spec.gamma_eg;
    let p_f = (-a * t).exp();
    let delta = b - a;
    let p_e = if delta.abs() <= 1e-10 * a.max(b) {
        a * t * (-a * t).exp()
    } else {
        // a e^{-at} (1 - e^{-δt}) / δ, free of cancellation for small δt
        a * (-a * t).exp() * (-(-delta * t).exp_m1()) / delta
    };
    let p_e = p_e.clamp(0.0, 1.0);
    let p_g = (1.0 - p_e - p_f).clamp(0.0, 1.0);
    Ok([p_g, p_e, p_f])
}

/// Amplitude-damping chain with jumps `|e⟩⟨f|` at `Γ_fe` and `|g⟩⟨e|` at
/// `Γ_eg`, plus an optional drive.
pub fn decay_chain_generator(spec: &DecayChainSpec, drive: Option<&DriveSpec>) -> Result<Generator> {
    spec.validate()?;
    let h = match drive {
        Some(d) => {
            d.validate()?;
            d.hamiltonian()
        }
        None => HermitianOperator::zeros(3),
    };
    let lowering = |to: usize, from: usize| {
        let mut m = DMatrix::<C64>::zeros(3, 3);
        m[(to, from)] = C64::new(1.0, 0.0);
        m
    };
    Generator::lindblad(
        h,
        vec![
            Jump { rate: spec.gamma_fe, operator: lowering(1, 2) },
            Jump { rate: spec.gamma_eg, operator: lowering(0, 1) },
        ],
    )
}

/// Measurement window and integration settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReplicaSettings {
    /// Fit window, μs.
    pub window: f64,
    /// RK4 step, μs.
    pub dt: f64,
    /// Metrics evaluated besides SLD and RLD.
    pub extra_betas: Vec<f64>,
}

impl Default for ReplicaSettings {
    fn default() -> Self {
        ReplicaSettings { window: 0.016, dt: 1e-4, extra_betas: Vec::new() }
    }
}

/// `t_decay ∈ {11, 21, …, 101}` μs.
pub fn default_t_decay() -> Vec<f64> {
    (0..10).map(|k| 11.0 + 10.0 * k as f64).collect()
}

/// One prepared state of the replica.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplicaRow {
    pub t_decay: f64,
    /// `(p_g, p_e, p_f)`
    pub populations: [f64; 3],
    /// Slope fitted over the window.
    pub speed: f64,
    /// `|Tr[A ρ̇(0)]|`
    pub exact_speed: f64,
    pub bound_sld: f64,
    pub bound_rld: f64,
    pub xi_rld: Option<f64>,
    /// `(β, split bound)` for each extra metric.
    pub extra_bounds: Vec<(f64, f64)>,
}

fn replica_row(
    t_decay: f64,
    spec: &DecayChainSpec,
    h: &HermitianOperator,
    a: &HermitianOperator,
    settings: &ReplicaSettings,
    extra: &[MonotoneFunction],
) -> Result<ReplicaRow> {
    let populations = bateman_populations(spec, t_decay)?;
    let rho = DensityMatrix::from_diagonal(&populations)?;
    let rdot = TangentOperator::commutator(&rho, h)?;
    let traj = evolve(&rho, &unitary_generator(h), settings.window, settings.dt)?;
    let speed = measured_speed(&traj, a, settings.window)?.abs();
    let exact_speed = observable_speed(&rdot, a)?.abs();
    let bound_sld = bound_split(&rho, &rdot, a, &MonotoneFunction::SLD)?.bound_split;
    let bound_rld = bound_split(&rho, &rdot, a, &MonotoneFunction::RLD)?.bound_split;
    let xi_rld = CoherentProblem::new(&rho, &rdot, a)?.xi(&MonotoneFunction::RLD).ok();
    let extra_bounds =
        extra.iter().map(|f| Ok((f.beta(), bound_split(&rho, &rdot, a, f)?.bound_split))).collect::<Result<_>>()?;
    Ok(ReplicaRow { t_decay, populations, speed, exact_speed, bound_sld, bound_rld, xi_rld, extra_bounds })
}

/// For each `t_decay`: prepare the Bateman state, drive it, fit the speed of
/// `A` (default `X_ge`) over the window and evaluate the SLD and RLD bounds at
/// the prepared state. Rows come back in input order.
pub fn experiment_replica(
    spec: &DecayChainSpec,
    drive: &DriveSpec,
    t_decay_list: &[f64],
    a: Option<&HermitianOperator>,
    settings: &ReplicaSettings,
) -> Result<Vec<ReplicaRow>> {
    spec.validate()?;
    drive.validate()?;
    let a = a.cloned().unwrap_or_else(|| transition(3, 0, 1));
    if a.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: a.dim() });
    }
    let extra = settings.extra_betas.iter().map(|&b| MonotoneFunction::new(b)).collect::<Result<Vec<_>>>()?;
    let h = drive.hamiltonian();
    t_decay_list.par_iter().map(|&t| replica_row(t, spec, &h, &a, settings, &extra)).collect()
}
