//! Density-matrix trajectories.
//!
//! Generators are unitary (`-i[H, ρ]`) or Lindblad with a Hamiltonian part;
//! [`evolve`] integrates them with fixed-step RK4 and re-validates every
//! sample. [`replica`] prepares decay-chain states and extracts speeds the way
//! a short-time linear fit on hardware would; [`environment`] checks the
//! incoherent Fisher information of a system coupled to an environment.

pub mod environment;
pub mod replica;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::geometry::TangentOperator;
use crate::operator::{
    check_dims, commutator_tangent, trace_of_product, validate_density, ComplexMatrix, DensityMatrix, HermitianOperator,
};
use crate::{Error, Result, C64};

pub use environment::{env_incoherent_check, EnvCheck, EnvModelSpec};
pub use replica::{
    bateman_populations, decay_chain_generator, experiment_replica, DecayChainSpec, DriveSpec, ReplicaRow,
    ReplicaSettings,
};

/// Largest tolerated departure from hermiticity or unit trace along a run.
pub const DRIFT_TOLERANCE: f64 = 1e-8;

/// Jump operator `J` with rate `γ`: contributes `γ (J ρ J† - {J†J, ρ}/2)`.
#[derive(Clone, Debug)]
pub struct Jump {
    pub rate: f64,
    pub operator: DMatrix<C64>,
}

/// Right-hand side of `dρ/dt = G(ρ)`.
#[derive(Clone, Debug)]
pub enum Generator {
    Unitary(HermitianOperator),
    Lindblad { hamiltonian: HermitianOperator, jumps: Vec<Jump> },
}

/// `ρ ↦ -i[H, ρ]`.
pub fn unitary_generator(h: &HermitianOperator) -> Generator {
    Generator::Unitary(h.clone())
}

impl Generator {
    pub fn lindblad(hamiltonian: HermitianOperator, jumps: Vec<Jump>) -> Result<Self> {
        let d = hamiltonian.dim();
        for j in &jumps {
            if !(j.rate >= 0.0 && j.rate.is_finite()) {
                return Err(Error::InvalidParameter(format!("jump rate must be non-negative, got {}", j.rate)));
            }
            if j.operator.nrows() != d || j.operator.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: j.operator.nrows() });
            }
        }
        Ok(Generator::Lindblad { hamiltonian, jumps })
    }

    pub fn dim(&self) -> usize {
        match self {
            Generator::Unitary(h) => h.dim(),
            Generator::Lindblad { hamiltonian, .. } => hamiltonian.dim(),
        }
    }

    /// `G(ρ)` on a raw matrix.
    pub fn apply(&self, rho: &DMatrix<C64>) -> DMatrix<C64> {
        match self {
            Generator::Unitary(h) => commutator_tangent(h.as_dmatrix(), rho),
            Generator::Lindblad { hamiltonian, jumps } => {
                let mut out = commutator_tangent(hamiltonian.as_dmatrix(), rho);
                for j in jumps {
                    let jd = j.operator.adjoint();
                    let jdj = &jd * &j.operator;
                    let sandwich = &j.operator * rho * &jd;
                    let anti = (&jdj * rho + rho * &jdj) * C64::new(0.5, 0.0);
                    out += (sandwich - anti) * C64::new(j.rate, 0.0);
                }
                out
            }
        }
    }

    /// `ρ̇` at a validated state.
    pub fn tangent(&self, rho: &DensityMatrix) -> Result<TangentOperator> {
        check_dims(self.dim(), rho.dim())?;
        Ok(TangentOperator::projected(self.apply(rho.as_dmatrix())))
    }
}

/// Samples `(t, ρ(t), ρ̇(t))` on a uniform time grid.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub tangents: Vec<TangentOperator>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `Tr[ρ(t) A]` at every sample.
    pub fn expectations(&self, a: &HermitianOperator) -> Result<Vec<f64>> {
        self.states
            .iter()
            .map(|s| {
                check_dims(s.dim(), a.dim())?;
                Ok(trace_of_product(s.as_dmatrix(), a.as_dmatrix()).re)
            })
            .collect()
    }
}

fn rk4_step(g: &Generator, rho: &DMatrix<C64>, dt: f64) -> DMatrix<C64> {
    let h = C64::new(dt, 0.0);
    let half = C64::new(0.5 * dt, 0.0);
    let k1 = g.apply(rho);
    let k2 = g.apply(&(rho + &k1 * half));
    let k3 = g.apply(&(rho + &k2 * half));
    let k4 = g.apply(&(rho + &k3 * h));
    rho + (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * C64::new(dt / 6.0, 0.0)
}

fn sample(g: &Generator, raw: &DMatrix<C64>, t: f64, pd_floor: f64) -> Result<(DensityMatrix, TangentOperator)> {
    let m = ComplexMatrix::new(raw.clone())?;
    let tr = m.trace();
    let drift = m.hermiticity_deviation().max((tr.re - 1.0).abs()).max(tr.im.abs());
    if !(drift <= DRIFT_TOLERANCE) {
        return Err(Error::StateValidationDrift { time: t, drift });
    }
    let herm = HermitianOperator::hermitized(raw.clone());
    let cleaned = herm.as_dmatrix() / C64::new(tr.re, 0.0);
    let state = validate_density(ComplexMatrix::new(cleaned)?, pd_floor)?;
    let tangent = g.tangent(&state)?;
    Ok((state, tangent))
}

/// Fixed-step RK4 from `rho0` to `t_final`, sampled at every multiple of `dt`.
///
/// The raw integrated matrix is propagated untouched; each sample is checked
/// for drift, then a hermitized, trace-normalized copy is validated against
/// the floor of `rho0`.
pub fn evolve(rho0: &DensityMatrix, g: &Generator, t_final: f64, dt: f64) -> Result<Trajectory> {
    check_dims(g.dim(), rho0.dim())?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if !(t_final >= dt) {
        return Err(Error::InvalidParameter(format!("t_final {t_final} is shorter than dt {dt}")));
    }
    let steps = (t_final / dt + 1e-9).floor() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut tangents = Vec::with_capacity(steps + 1);

    times.push(0.0);
    states.push(rho0.clone());
    tangents.push(g.tangent(rho0)?);

    let mut raw = rho0.as_dmatrix().clone();
    for k in 1..=steps {
        raw = rk4_step(g, &raw, dt);
        let t = k as f64 * dt;
        let (state, tangent) = sample(g, &raw, t, rho0.pd_floor())?;
        times.push(t);
        states.push(state);
        tangents.push(tangent);
    }
    Ok(Trajectory { times, states, tangents })
}

/// Least-squares slope of `Tr[ρ(t) A]` over the samples with `t - t_0 ≤ window`.
pub fn measured_speed(traj: &Trajectory, a: &HermitianOperator, window: f64) -> Result<f64> {
    let Some(&t0) = traj.times.first() else {
        return Err(Error::WindowTooShort { window, samples: 0 });
    };
    let span = traj.times[traj.times.len() - 1] - t0;
    let slack = 1e-9 * window.abs().max(f64::MIN_POSITIVE);
    let n = traj.times.iter().take_while(|&&t| t - t0 <= window + slack).count();
    if !(window > 0.0) || window > span + slack || n < 3 {
        return Err(Error::WindowTooShort { window, samples: n });
    }
    let values = traj.expectations(a)?;
    let ts = &traj.times[..n];
    let ys = &values[..n];
    let t_mean = ts.iter().sum::<f64>() / n as f64;
    let y_mean = ys.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, y) in ts.iter().zip(ys) {
        num += (t - t_mean) * (y - y_mean);
        den += (t - t_mean) * (t - t_mean);
    }
    Ok(num / den)
}
