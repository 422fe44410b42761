//! A system coupled to an environment through `H^int`.
//!
//! Only the interaction changes the eigenvalues of the reduced system state,
//! which gives `I_I ≤ 4 (ΔH^int)²` on the joint state.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::dynamics::{evolve, unitary_generator};
use crate::geometry::{split_qfi, TangentOperator};
use crate::monotone::MonotoneFunction;
use crate::operator::{check_dims, kron, variance_sld, ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::{Error, Result, C64};

const LOCAL_PART_TOL: f64 = 1e-10;
const CHECK_SLACK: f64 = 1e-9;

/// Joint Hamiltonian `H_S ⊗ I + I ⊗ H_E + H^int` and a joint state.
#[derive(Clone, Debug)]
pub struct EnvModelSpec {
    pub sys_dim: usize,
    pub env_dim: usize,
    pub h_sys: HermitianOperator,
    pub h_env: HermitianOperator,
    pub h_int: HermitianOperator,
    pub joint_state: DensityMatrix,
}

/// `Tr_E` of a `(d_S d_E)`-dimensional matrix.
pub fn partial_trace_env(m: &DMatrix<C64>, sys_dim: usize, env_dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(sys_dim, sys_dim, |i, j| (0..env_dim).map(|k| m[(i * env_dim + k, j * env_dim + k)]).sum())
}

/// `Tr_S` of a `(d_S d_E)`-dimensional matrix.
pub fn partial_trace_sys(m: &DMatrix<C64>, sys_dim: usize, env_dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(env_dim, env_dim, |a, b| (0..sys_dim).map(|k| m[(k * env_dim + a, k * env_dim + b)]).sum())
}

/// Removes every term of `h` that acts on one factor only, leaving a valid
/// interaction Hamiltonian.
pub fn interaction_part(h: &HermitianOperator, sys_dim: usize, env_dim: usize) -> Result<HermitianOperator> {
    check_dims(sys_dim * env_dim, h.dim())?;
    let m = h.as_dmatrix();
    let ds = C64::new(sys_dim as f64, 0.0);
    let de = C64::new(env_dim as f64, 0.0);
    let sys_local = partial_trace_env(m, sys_dim, env_dim) / de;
    let env_local = partial_trace_sys(m, sys_dim, env_dim) / ds;
    let total = m.trace() / (ds * de);
    let eye_s = DMatrix::<C64>::identity(sys_dim, sys_dim);
    let eye_e = DMatrix::<C64>::identity(env_dim, env_dim);
    let eye = DMatrix::<C64>::identity(sys_dim * env_dim, sys_dim * env_dim);
    let out = m - kron(&sys_local, &eye_e) - kron(&eye_s, &env_local) + eye * total;
    Ok(HermitianOperator::hermitized(out))
}

impl EnvModelSpec {
    pub fn new(
        sys_dim: usize,
        env_dim: usize,
        h_sys: HermitianOperator,
        h_env: HermitianOperator,
        h_int: HermitianOperator,
        joint_state: DensityMatrix,
    ) -> Result<Self> {
        let spec = EnvModelSpec { sys_dim, env_dim, h_sys, h_env, h_int, joint_state };
        spec.validate()?;
        Ok(spec)
    }

    /// Dimensions agree and `H^int` has no single-factor part.
    pub fn validate(&self) -> Result<()> {
        if self.sys_dim == 0 || self.env_dim == 0 {
            return Err(Error::InvalidParameter("factor dimensions must be positive".into()));
        }
        let joint = self.sys_dim * self.env_dim;
        check_dims(self.sys_dim, self.h_sys.dim())?;
        check_dims(self.env_dim, self.h_env.dim())?;
        check_dims(joint, self.h_int.dim())?;
        check_dims(joint, self.joint_state.dim())?;
        let m = self.h_int.as_dmatrix();
        let tol = LOCAL_PART_TOL * self.h_int.matrix().max_abs().max(1.0);
        let on_sys = partial_trace_env(m, self.sys_dim, self.env_dim) / C64::new(self.env_dim as f64, 0.0);
        let on_env = partial_trace_sys(m, self.sys_dim, self.env_dim) / C64::new(self.sys_dim as f64, 0.0);
        for (name, part) in [("system", on_sys), ("environment", on_env)] {
            let size = part.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if size > tol {
                return Err(Error::InvalidParameter(format!(
                    "H_int has a local {name} part of size {size:e}; move it into the {name} Hamiltonian"
                )));
            }
        }
        Ok(())
    }

    pub fn total_hamiltonian(&self) -> HermitianOperator {
        let eye_s = DMatrix::<C64>::identity(self.sys_dim, self.sys_dim);
        let eye_e = DMatrix::<C64>::identity(self.env_dim, self.env_dim);
        let h = kron(self.h_sys.as_dmatrix(), &eye_e) + kron(&eye_s, self.h_env.as_dmatrix()) + self.h_int.as_dmatrix();
        HermitianOperator::hermitized(h)
    }
}

/// `I_I` of the reduced system and the bound `4 (ΔH^int)²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnvCheck {
    pub fisher_incoherent: f64,
    pub bound: f64,
}

/// Advances the joint state by one step `dt`, then compares the incoherent
/// Fisher information of the reduced system with `4 (ΔH^int)²` there.
pub fn env_incoherent_check(spec: &EnvModelSpec, dt: f64) -> Result<EnvCheck> {
    spec.validate()?;
    let h_tot = spec.total_hamiltonian();
    let traj = evolve(&spec.joint_state, &unitary_generator(&h_tot), dt, dt)?;
    let joint = &traj.states[traj.len() - 1];
    let joint_dot = &traj.tangents[traj.len() - 1];

    let reduced = partial_trace_env(joint.as_dmatrix(), spec.sys_dim, spec.env_dim);
    let reduced = HermitianOperator::hermitized(reduced);
    let rho_s = DensityMatrix::new(ComplexMatrix::new(reduced.as_dmatrix().clone())?)?;
    let rdot_s = TangentOperator::projected(partial_trace_env(joint_dot.as_dmatrix(), spec.sys_dim, spec.env_dim));

    let (_, fisher_incoherent) = split_qfi(&rho_s, &rdot_s, &MonotoneFunction::SLD)?;
    let bound = 4.0 * variance_sld(joint, &spec.h_int)?;
    if fisher_incoherent > bound + CHECK_SLACK * bound.max(1.0) {
        return Err(Error::BoundViolation { what: "I_I <= 4 (dH_int)^2".into(), lhs: fisher_incoherent, rhs: bound });
    }
    Ok(EnvCheck { fisher_incoherent, bound })
}
