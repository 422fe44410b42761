//! Reference values built from the full `d² × d²` mean superoperator.
//!
//! With row-major vectorization, left multiplication by `ρ` is `ρ ⊗ I` and
//! right multiplication is `I ⊗ ρᵀ`. The two commute, so
//! `m^f(L_ρ, R_ρ) = L_ρ f(L_ρ^{-1} R_ρ)` where `L_ρ^{-1} R_ρ = ρ^{-1} ⊗ ρᵀ` is
//! Hermitian and positive. Nothing here uses the eigenbasis of `ρ`; these
//! routines exist to cross-check [`crate::geometry`].

use nalgebra::{DMatrix, DVector};

use crate::geometry::TangentOperator;
use crate::monotone::MeanProvider;
use crate::operator::{center, check_dims, trace_of_product, DensityMatrix, HermitianOperator};
use crate::{Error, Result, C64};

/// Largest dimension accepted (`d⁴` storage).
pub const MAX_ORACLE_DIM: usize = 8;

fn vec_row_major(m: &DMatrix<C64>) -> DVector<C64> {
    let d = m.nrows();
    DVector::from_fn(d * d, |k, _| m[(k / d, k % d)])
}

fn unvec_row_major(v: &DVector<C64>, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |i, j| v[i * d + j])
}

/// Matrix of `m^f(L_ρ, R_ρ)` in the computational basis.
pub fn mean_superoperator(rho: &DensityMatrix, f: &dyn MeanProvider) -> Result<DMatrix<C64>> {
    let d = rho.dim();
    if d > MAX_ORACLE_DIM {
        return Err(Error::InvalidParameter(format!("oracle supports d <= {MAX_ORACLE_DIM}, got {d}")));
    }
    let r = rho.as_dmatrix();
    let r_inv = r.clone().lu().try_inverse().ok_or(Error::SingularSuperoperator)?;
    let eye = DMatrix::<C64>::identity(d, d);
    let left = r.kronecker(&eye);
    let ratio = r_inv.kronecker(&r.transpose());
    let ratio = (&ratio + ratio.adjoint()) * C64::new(0.5, 0.0);

    let eig = ratio.symmetric_eigen();
    let mut weighted = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        // λ > 0 analytically; rounding can only push tiny ones across zero
        let value = f.eval(lambda.max(f64::MIN_POSITIVE));
        weighted.column_mut(k).scale_mut(value);
    }
    let f_ratio = weighted * eig.eigenvectors.adjoint();
    Ok(left * f_ratio)
}

/// `I^f = Tr[ρ̇ L]` with `L` from solving `m^f(L_ρ, R_ρ)(L) = ρ̇` directly.
pub fn qfi_superop_oracle(rho: &DensityMatrix, rdot: &TangentOperator, f: &dyn MeanProvider) -> Result<f64> {
    check_dims(rho.dim(), rdot.dim())?;
    let d = rho.dim();
    let m = mean_superoperator(rho, f)?;
    let rhs = vec_row_major(rdot.as_dmatrix());
    let sol = m.lu().solve(&rhs).ok_or(Error::SingularSuperoperator)?;
    if sol.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::SingularSuperoperator);
    }
    let l = unvec_row_major(&sol, d);
    Ok(trace_of_product(rdot.as_dmatrix(), &l).re)
}

/// `(Δ^f A)² = Tr[A_0 m^f(L_ρ, R_ρ)(A_0)]` by direct application.
pub fn variance_superop_oracle(rho: &DensityMatrix, a: &HermitianOperator, f: &dyn MeanProvider) -> Result<f64> {
    check_dims(rho.dim(), a.dim())?;
    let d = rho.dim();
    let a0 = center(rho, a)?;
    let m = mean_superoperator(rho, f)?;
    let image = unvec_row_major(&(m * vec_row_major(a0.as_dmatrix())), d);
    Ok(trace_of_product(a0.as_dmatrix(), &image).re)
}
