//! Speed limits on observables and the tools built on them.
//!
//! - [`bounds`]: `|ȧ| ≤ Δ^f A √I^f` and its coherent/incoherent split, the
//!   coherent ratio `ξ^f` and the saturation residual.
//! - [`optimize`]: minimization of `ξ^{f_β}` over `β`.
//! - [`fast`]: Hamiltonians that saturate the coherent bound.
//! - [`energy`]: bounds in terms of the energy variance and `κ_ρ`.

pub mod bounds;
pub mod energy;
pub mod fast;
pub mod optimize;

pub use bounds::{
    bound_nonsplit, bound_split, coherent_ratio_xi, observable_speed, saturation_residual, xi_qutrit_closed_form,
    BoundReport, CoherentProblem,
};
pub use energy::{energy_bounds, EnergyBoundReport};
pub use fast::fast_hamiltonian;
pub use optimize::{golden_section, minimize_over_beta, optimize_beta, BetaOptimum};
