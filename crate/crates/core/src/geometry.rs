//! Generalized variances, Fisher informations and logarithmic derivatives.
//!
//! Every quantity is evaluated in the eigenbasis of `ρ`: the observable and the
//! tangent are rotated once, after which the mean superoperator is diagonal
//! with entries `m^f(p_i, p_j)`. Off-diagonal entries form the coherent part,
//! the diagonal the incoherent part.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::monotone::{means_over, MeanProvider};
use crate::operator::{check_dims, commutator_tangent, ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::{Error, Result, C64};

const TANGENT_TOL: f64 = 1e-12;

/// A traceless Hermitian candidate for `ρ̇`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TangentOperator {
    matrix: ComplexMatrix,
}

impl TangentOperator {
    /// Accepts `m` if it is Hermitian and traceless to `1e-12 · max(1, max|M|)`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let tolerance = TANGENT_TOL * matrix.max_abs().max(1.0);
        let deviation = matrix.hermiticity_deviation();
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation, tolerance });
        }
        let tr = matrix.trace().norm();
        if tr > tolerance {
            return Err(Error::NotTraceless { trace: tr, tolerance });
        }
        Ok(TangentOperator { matrix })
    }

    pub fn zeros(dim: usize) -> Self {
        TangentOperator { matrix: ComplexMatrix::zeros(dim) }
    }

    /// `-i[H, ρ]`.
    pub fn commutator(rho: &DensityMatrix, h: &HermitianOperator) -> Result<Self> {
        check_dims(rho.dim(), h.dim())?;
        Ok(Self::projected(commutator_tangent(h.as_dmatrix(), rho.as_dmatrix())))
    }

    /// Hermitian part of `m` with its trace removed. For generator outputs that
    /// are tangents analytically but carry rounding noise.
    pub fn projected(m: DMatrix<C64>) -> Self {
        let d = m.nrows();
        let mut h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let shift = h.trace() / C64::new(d as f64, 0.0);
        for i in 0..d {
            h[(i, i)] -= shift;
        }
        TangentOperator { matrix: ComplexMatrix::new(h).expect("square input") }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        self.matrix.as_dmatrix()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn scaled(&self, c: f64) -> Self {
        TangentOperator { matrix: ComplexMatrix::new(self.as_dmatrix() * C64::new(c, 0.0)).expect("square") }
    }
}

impl TryFrom<ComplexMatrix> for TangentOperator {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        TangentOperator::new(m)
    }
}

/// Variance and Fisher information of one `(ρ, ρ̇, A, f)` quadruple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    /// `(Δ^f A)²`
    pub var_f: f64,
    /// `(Δ^f A_C)²`
    pub var_f_coherent: f64,
    /// `(ΔA_I)²`
    pub var_incoherent: f64,
    /// `I^f`
    pub qfi_f: f64,
    /// `I^f_C`
    pub qfi_f_coherent: f64,
    /// `I_I`
    pub fisher_incoherent: f64,
    /// `L^f`, in the input basis.
    pub log_derivative: HermitianOperator,
}

/// `A_0` expressed in the eigenbasis of `ρ`.
pub(crate) fn centered_in_eigenbasis(rho: &DensityMatrix, a: &HermitianOperator) -> Result<DMatrix<C64>> {
    check_dims(rho.dim(), a.dim())?;
    let mut rotated = rho.spectrum().to_eigenbasis(a.as_dmatrix());
    let p = rho.eigenvalues();
    let mean: f64 = p.iter().enumerate().map(|(i, &pi)| pi * rotated[(i, i)].re).sum();
    for i in 0..p.len() {
        rotated[(i, i)] -= C64::new(mean, 0.0);
    }
    Ok(rotated)
}

pub(crate) fn tangent_in_eigenbasis(rho: &DensityMatrix, rdot: &TangentOperator) -> Result<DMatrix<C64>> {
    check_dims(rho.dim(), rdot.dim())?;
    Ok(rho.spectrum().to_eigenbasis(rdot.as_dmatrix()))
}

/// Relative gap below which two eigenvalues are one level.
pub const LEVEL_TOLERANCE: f64 = 1e-12;

/// Whether `p_i` and `p_j` belong to one eigenspace of `ρ`.
///
/// Entries of an operator inside one eigenspace form its incoherent part and
/// the rest its coherent part. Within a degenerate eigenspace this makes the
/// split independent of the basis the eigensolver happened to return.
pub(crate) fn same_level(p_i: f64, p_j: f64) -> bool {
    (p_i - p_j).abs() <= LEVEL_TOLERANCE * p_i.max(p_j)
}

/// `(Σ_coh |a_ij|² m_ij, Σ_inc |a_ij|² m_ij)`; on the incoherent entries
/// `m_ij = p_i`.
pub(crate) fn weighted_variance(a0: &DMatrix<C64>, p: &[f64], means: &DMatrix<f64>) -> (f64, f64) {
    let d = p.len();
    let mut coherent = 0.0;
    let mut incoherent = 0.0;
    for i in 0..d {
        for j in 0..d {
            let term = a0[(i, j)].norm_sqr() * means[(i, j)];
            if same_level(p[i], p[j]) {
                incoherent += term;
            } else {
                coherent += term;
            }
        }
    }
    (coherent, incoherent)
}

/// `(Σ_coh |r_ij|² / m_ij, Σ_inc |r_ij|² / m_ij)`.
pub(crate) fn weighted_fisher(r: &DMatrix<C64>, p: &[f64], means: &DMatrix<f64>) -> (f64, f64) {
    let d = p.len();
    let mut coherent = 0.0;
    let mut incoherent = 0.0;
    for i in 0..d {
        for j in 0..d {
            let term = r[(i, j)].norm_sqr() / means[(i, j)];
            if same_level(p[i], p[j]) {
                incoherent += term;
            } else {
                coherent += term;
            }
        }
    }
    (coherent, incoherent)
}

/// `(Δ^f A)² = Tr[A_0 m^f(L_ρ, R_ρ)(A_0)]`.
pub fn generalized_variance(rho: &DensityMatrix, a: &HermitianOperator, f: &dyn MeanProvider) -> Result<f64> {
    let (c, i) = split_variance(rho, a, f)?;
    Ok(c + i)
}

/// `((Δ^f A_C)², (ΔA_I)²)`.
pub fn split_variance(rho: &DensityMatrix, a: &HermitianOperator, f: &dyn MeanProvider) -> Result<(f64, f64)> {
    let a0 = centered_in_eigenbasis(rho, a)?;
    let means = means_over(f, rho.eigenvalues());
    Ok(weighted_variance(&a0, rho.eigenvalues(), &means))
}

/// `L^f = m^f(L_ρ, R_ρ)^{-1}(ρ̇)`.
pub fn log_derivative(rho: &DensityMatrix, rdot: &TangentOperator, f: &dyn MeanProvider) -> Result<HermitianOperator> {
    let r = tangent_in_eigenbasis(rho, rdot)?;
    let means = means_over(f, rho.eigenvalues());
    Ok(log_derivative_from(rho, &r, &means))
}

fn log_derivative_from(rho: &DensityMatrix, r: &DMatrix<C64>, means: &DMatrix<f64>) -> HermitianOperator {
    let l = DMatrix::from_fn(r.nrows(), r.ncols(), |i, j| r[(i, j)] / means[(i, j)]);
    HermitianOperator::hermitized(rho.spectrum().from_eigenbasis(&l))
}

/// `I^f = Tr[ρ̇ m^f(L_ρ, R_ρ)^{-1}(ρ̇)]`.
pub fn qfi(rho: &DensityMatrix, rdot: &TangentOperator, f: &dyn MeanProvider) -> Result<f64> {
    let (c, i) = split_qfi(rho, rdot, f)?;
    Ok(c + i)
}

/// `(I^f_C, I_I)`.
pub fn split_qfi(rho: &DensityMatrix, rdot: &TangentOperator, f: &dyn MeanProvider) -> Result<(f64, f64)> {
    let r = tangent_in_eigenbasis(rho, rdot)?;
    let means = means_over(f, rho.eigenvalues());
    Ok(weighted_fisher(&r, rho.eigenvalues(), &means))
}

/// `Σ_j ṗ_j² / p_j` for a strictly positive distribution and a zero-sum rate.
pub fn classical_fisher(p: &[f64], pdot: &[f64]) -> Result<f64> {
    if p.len() != pdot.len() {
        return Err(Error::InvalidDistribution(format!("{} probabilities but {} rates", p.len(), pdot.len())));
    }
    if let Some(bad) = p.iter().find(|&&x| !(x > 0.0)) {
        return Err(Error::InvalidDistribution(format!("probability {bad} is not strictly positive")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
    }
    let drift: f64 = pdot.iter().sum();
    let scale = pdot.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if drift.abs() > 1e-10 * scale {
        return Err(Error::InvalidDistribution(format!("rates sum to {drift:e}")));
    }
    Ok(p.iter().zip(pdot).map(|(&pj, &dj)| dj * dj / pj).sum())
}

/// Every geometric quantity of the quadruple from a single rotation.
pub fn geometry_report(
    rho: &DensityMatrix,
    rdot: &TangentOperator,
    a: &HermitianOperator,
    f: &dyn MeanProvider,
) -> Result<GeometryReport> {
    let a0 = centered_in_eigenbasis(rho, a)?;
    let r = tangent_in_eigenbasis(rho, rdot)?;
    let p = rho.eigenvalues();
    let means = means_over(f, p);
    let (var_f_coherent, var_incoherent) = weighted_variance(&a0, p, &means);
    let (qfi_f_coherent, fisher_incoherent) = weighted_fisher(&r, p, &means);
    Ok(GeometryReport {
        var_f: var_f_coherent + var_incoherent,
        var_f_coherent,
        var_incoherent,
        qfi_f: qfi_f_coherent + fisher_incoherent,
        qfi_f_coherent,
        fisher_incoherent,
        log_derivative: log_derivative_from(rho, &r, &means),
    })
}
