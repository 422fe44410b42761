//! Generalized geometric quantum speed limits on observables.
//!
//! For a positive-definite state `ρ`, a tangent `ρ̇` and a Hermitian observable
//! `A`, the rate `ȧ = Tr[A ρ̇]` is bounded by a product of a generalized
//! variance of `A` and the square root of a generalized quantum Fisher
//! information. Each symmetric normalized operator monotone function `f`
//! defines one such pair; this crate implements the one-parameter family
//! `f_β`, `β ∈ [-1, 1]`, which runs from the right logarithmic derivative
//! metric (`β = -1`) to the symmetric logarithmic derivative metric (`β = 1`).
//!
//! Layout:
//!
//! - [`operator`]: complex matrices, Hermitian operators, validated density
//!   matrices with cached spectral decompositions.
//! - [`monotone`]: the `f_β` family and the associated scalar means.
//! - [`geometry`]: generalized variances, Fisher informations, logarithmic
//!   derivatives and their coherent/incoherent splits; [`oracle`] holds an
//!   independent superoperator construction used for cross-checking.
//! - [`speed`]: the bounds themselves, the coherent ratio `ξ^f`, optimal-`β`
//!   search, saturation diagnostics, fast Hamiltonians and energy-variance
//!   bounds.
//! - [`dynamics`]: unitary and decay-chain trajectories, the short-window speed
//!   extraction protocol and a system-environment model.
//! - [`scan`]: simplex scans with deterministic CSV output.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod monotone;
pub mod operator;
pub mod oracle;
pub mod random;
pub mod scan;
pub mod selftest;
pub mod speed;

pub use error::{Error, Result};
pub use geometry::{GeometryReport, TangentOperator};
pub use monotone::{MeanProvider, MonotoneFunction};
pub use operator::{ComplexMatrix, DensityMatrix, HermitianOperator};
pub use speed::{BoundReport, EnergyBoundReport};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
