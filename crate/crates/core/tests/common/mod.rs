//! Reference computations written independently of the library code paths.
#![allow(dead_code)]

use nalgebra::DMatrix;

use geoqsl::geometry::TangentOperator;
use geoqsl::operator::{ComplexMatrix, DensityMatrix, HermitianOperator};
use geoqsl::C64;

/// `f_β(x)` straight from the piecewise definition; first-order Taylor next to
/// `x = 1`, where every branch is 0/0.
pub fn f_beta_direct(beta: f64, x: f64) -> f64 {
    let d = x - 1.0;
    if d.abs() < 1e-6 {
        return 1.0 + 0.5 * d;
    }
    if beta >= 0.5 {
        ((1.0 + x.powf(beta)) / 2.0).powf(1.0 / beta)
    } else if beta == 0.0 {
        d / x.ln()
    } else {
        beta * (1.0 - beta) * d * d / ((x.powf(beta) - 1.0) * (x.powf(1.0 - beta) - 1.0))
    }
}

/// `m(x, y) = y f(x / y)`
pub fn mean_direct(beta: f64, x: f64, y: f64) -> f64 {
    y * f_beta_direct(beta, x / y)
}

pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    DMatrix::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

fn vec_rows(m: &DMatrix<C64>) -> nalgebra::DVector<C64> {
    let d = m.nrows();
    nalgebra::DVector::from_fn(d * d, |k, _| m[(k / d, k % d)])
}

fn hermitian_power(m: &DMatrix<C64>, power: f64) -> DMatrix<C64> {
    let eig = m.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| C64::new(x.powf(power), 0.0)));
    v * diag * v.adjoint()
}

/// Pieces of `J = R^{1/2} f(R^{-1/2} L R^{-1/2}) R^{1/2}` with
/// `L = ρ ⊗ I`, `R = I ⊗ ρᵀ` acting on row-major vectorizations.
struct KuboAndo {
    r_half: DMatrix<C64>,
    r_neg_half: DMatrix<C64>,
    vectors: DMatrix<C64>,
    f_values: Vec<f64>,
}

impl KuboAndo {
    fn new(rho: &DMatrix<C64>, beta: f64) -> Self {
        let d = rho.nrows();
        let eye = DMatrix::<C64>::identity(d, d);
        let rt = rho.transpose();
        let r_half = kron(&eye, &hermitian_power(&rt, 0.5));
        let r_neg_half = kron(&eye, &hermitian_power(&rt, -0.5));
        let l = kron(rho, &eye);
        let s = &r_neg_half * l * &r_neg_half;
        let s = (&s + s.adjoint()) * C64::new(0.5, 0.0);
        let eig = s.symmetric_eigen();
        let f_values = eig.eigenvalues.iter().map(|&x| f_beta_direct(beta, x)).collect();
        KuboAndo { r_half, r_neg_half, vectors: eig.eigenvectors, f_values }
    }

    fn quadratic(&self, w: &nalgebra::DVector<C64>, weight: impl Fn(f64) -> f64) -> f64 {
        let c = self.vectors.adjoint() * w;
        c.iter().zip(&self.f_values).map(|(z, &fv)| z.norm_sqr() * weight(fv)).sum()
    }
}

/// `Tr[ρ̇ J⁻¹(ρ̇)]`
pub fn qfi_reference(rho: &DensityMatrix, rdot: &TangentOperator, beta: f64) -> f64 {
    let k = KuboAndo::new(rho.as_dmatrix(), beta);
    let w = &k.r_neg_half * vec_rows(rdot.as_dmatrix());
    k.quadratic(&w, |fv| 1.0 / fv)
}

/// `Tr[A₀ J(A₀)]` with `A₀ = A - Tr(ρA)`.
pub fn variance_reference(rho: &DensityMatrix, a: &HermitianOperator, beta: f64) -> f64 {
    let r = rho.as_dmatrix();
    let m = a.as_dmatrix();
    let mean = (r * m).trace();
    let a0 = m - DMatrix::<C64>::identity(m.nrows(), m.nrows()) * mean;
    let k = KuboAndo::new(r, beta);
    let u = &k.r_half * vec_rows(&a0);
    k.quadratic(&u, |fv| fv)
}

/// `-i[H, ρ]`
pub fn unitary_tangent(rho: &DensityMatrix, h: &HermitianOperator) -> TangentOperator {
    let r = rho.as_dmatrix();
    let m = h.as_dmatrix();
    let c = (m * r - r * m) * C64::new(0.0, -1.0);
    TangentOperator::new(ComplexMatrix::new(c).unwrap()).unwrap()
}

pub fn real_matrix(rows: &[&[f64]]) -> DMatrix<C64> {
    DMatrix::from_fn(rows.len(), rows.len(), |i, j| C64::new(rows[i][j], 0.0))
}

pub fn herm(m: DMatrix<C64>) -> HermitianOperator {
    HermitianOperator::new(ComplexMatrix::new(m).unwrap()).unwrap()
}

pub fn sigma_x() -> DMatrix<C64> {
    real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn sigma_y() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)])
}

/// Two-qubit drive `X ⊗ X` and observable `Y ⊗ X - (X ⊗ Y)/2`.
pub fn two_qubit_pair() -> (HermitianOperator, HermitianOperator) {
    let h = herm(kron(&sigma_x(), &sigma_x()));
    let a = kron(&sigma_y(), &sigma_x()) - kron(&sigma_x(), &sigma_y()) * C64::new(0.5, 0.0);
    (h, herm(a))
}

/// Populations of the `f → e → g` chain started in `f`, from the textbook
/// solution of the rate equations.
pub fn bateman_reference(gamma_fe: f64, gamma_eg: f64, t: f64) -> [f64; 3] {
    let pf = (-gamma_fe * t).exp();
    let pe = gamma_fe / (gamma_eg - gamma_fe) * ((-gamma_fe * t).exp() - (-gamma_eg * t).exp());
    [1.0 - pf - pe, pe, pf]
}

/// Ladder drive `i(Ω/2)(|0⟩⟨1| + |1⟩⟨2|) + h.c.`
pub fn ladder_drive(omega: f64) -> HermitianOperator {
    let z = C64::new(0.0, 0.5 * omega);
    let mut m = DMatrix::<C64>::zeros(3, 3);
    m[(0, 1)] = z;
    m[(1, 0)] = z.conj();
    m[(1, 2)] = z;
    m[(2, 1)] = z.conj();
    herm(m)
}

/// `|0⟩⟨1| + |1⟩⟨0|` in dimension `d`.
pub fn x01(d: usize) -> HermitianOperator {
    let mut m = DMatrix::<C64>::zeros(d, d);
    m[(0, 1)] = C64::new(1.0, 0.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    herm(m)
}

/// `ξ^RLD` for a diagonal qutrit under the ladder drive with `A = X_01`, as
/// the explicit rational function of the populations.
pub fn xi_rld_ladder_explicit(p: [f64; 3]) -> f64 {
    let [p0, p1, p2] = p;
    let num = (p1 - p0).powi(2) * (p0 + p1) * p2 + (p2 - p1).powi(2) * p0 * (p1 + p2);
    let den = (p1 - p0).powi(2) * (p1 + p2) + (p2 - p1).powi(2) * (p0 + p1);
    (p1 + p2) / (p2 * (p0 + p1)) * num / den
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
