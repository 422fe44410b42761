//! Dense complex matrices, Hermitian operators and validated density matrices.
//!
//! All matrices are dense and small (`d ≤ 64`). A [`DensityMatrix`] caches its
//! spectral decomposition so every eigenbasis formula downstream can rotate
//! into it once.

use std::fmt::Write as _;
use std::ops::Index;

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result, C64};

/// Default lower bound on the eigenvalues of a valid density matrix.
pub const DEFAULT_PD_FLOOR: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;

/// Square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::MalformedMatrix("dimension must be positive".into()));
        }
        Ok(ComplexMatrix(m))
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        ComplexMatrix(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        ComplexMatrix(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        ComplexMatrix::from_fn(d, |i, j| if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max_ij |M_ij - conj(M_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                dev = dev.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    /// Serializes to `{"dim": d, "re": [[...]], "im": [[...]]}` with 17 significant digits.
    pub fn to_json(&self) -> String {
        let d = self.dim();
        let mut out = String::with_capacity(64 + 60 * d * d);
        let _ = write!(out, "{{\"dim\":{d},\"re\":");
        self.write_part(&mut out, |z| z.re);
        out.push_str(",\"im\":");
        self.write_part(&mut out, |z| z.im);
        out.push('}');
        out
    }

    fn write_part(&self, out: &mut String, part: impl Fn(&C64) -> f64) {
        let d = self.dim();
        out.push('[');
        for i in 0..d {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for j in 0..d {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{:.16e}", part(&self.0[(i, j)]));
            }
            out.push(']');
        }
        out.push(']');
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: MatrixJson =
            serde_path_to_error::deserialize(de).map_err(|e| Error::Config(format!("{}: {}", e.path(), e.inner())))?;
        raw.try_into()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

/// Wire form of a matrix.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let d = raw.dim;
        if d == 0 {
            return Err(Error::MalformedMatrix("dim must be positive".into()));
        }
        for (name, part) in [("re", &raw.re), ("im", &raw.im)] {
            if part.len() != d || part.iter().any(|row| row.len() != d) {
                return Err(Error::MalformedMatrix(format!("`{name}` must be a {d}x{d} array")));
            }
        }
        Ok(ComplexMatrix::from_fn(d, |i, j| C64::new(raw.re[i][j], raw.im[i][j])))
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = serde_json::value::RawValue::from_string(self.to_json()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// Hermitian operator: observables and Hamiltonians.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Accepts `m` if `max |M_ij - conj(M_ji)| ≤ 1e-12 · max(1, max|M|)`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let tolerance = HERMITIAN_TOL * matrix.max_abs().max(1.0);
        let deviation = matrix.hermiticity_deviation();
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation, tolerance });
        }
        Ok(HermitianOperator { matrix })
    }

    /// Projects onto the Hermitian part, `(M + M†)/2`. For matrices that are
    /// Hermitian by construction up to rounding.
    pub fn hermitized(m: DMatrix<C64>) -> Self {
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        HermitianOperator { matrix: ComplexMatrix(h) }
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOperator { matrix: ComplexMatrix::zeros(dim) }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOperator { matrix: ComplexMatrix::identity(dim) }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        HermitianOperator { matrix: ComplexMatrix::from_real_diagonal(diag) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.matrix.0
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn scaled(&self, c: f64) -> Self {
        HermitianOperator { matrix: ComplexMatrix(&self.matrix.0 * C64::new(c, 0.0)) }
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(HermitianOperator { matrix: ComplexMatrix(&self.matrix.0 + &other.matrix.0) })
    }

    /// Real eigenvalues, descending, with the phase-fixed eigenvectors.
    pub fn spectrum(&self) -> SpectralDecomposition {
        SpectralDecomposition::of_hermitian(&self.matrix.0)
    }
}

impl TryFrom<ComplexMatrix> for HermitianOperator {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        HermitianOperator::new(m)
    }
}

impl<'de> Deserialize<'de> for HermitianOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        HermitianOperator::new(ComplexMatrix::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Eigenvalues in descending order and a unitary whose columns are the
/// matching eigenvectors.
///
/// Each eigenvector has its largest-magnitude component made real and positive
/// (first index wins ties). Degenerate blocks keep the solver's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl SpectralDecomposition {
    /// Decomposes the Hermitian part of `m`.
    pub fn of_hermitian(m: &DMatrix<C64>) -> Self {
        let d = m.nrows();
        let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let eig = h.symmetric_eigen();

        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut eigenvectors = DMatrix::zeros(d, d);
        for (col, &k) in order.iter().enumerate() {
            let v = eig.eigenvectors.column(k);
            let mut pivot = 0;
            let mut best = -1.0;
            for (i, z) in v.iter().enumerate() {
                if z.norm() > best {
                    best = z.norm();
                    pivot = i;
                }
            }
            let phase = if best > 0.0 { v[pivot].conj() / best } else { C64::new(1.0, 0.0) };
            for i in 0..d {
                eigenvectors[(i, col)] = v[i] * phase;
            }
            eigenvectors[(pivot, col)] = C64::new(best, 0.0);
        }
        SpectralDecomposition { eigenvalues, eigenvectors }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    /// `V diag(p) V†`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let d = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for j in 0..d {
            scaled.column_mut(j).scale_mut(self.eigenvalues[j]);
        }
        scaled * self.eigenvectors.adjoint()
    }

    /// `V† M V`: matrix elements of `m` in the eigenbasis.
    pub fn to_eigenbasis(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        self.eigenvectors.adjoint() * m * &self.eigenvectors
    }

    /// `V M V†`: back from the eigenbasis.
    pub fn from_eigenbasis(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        &self.eigenvectors * m * self.eigenvectors.adjoint()
    }
}

/// Positive-definite, unit-trace Hermitian matrix with its cached spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
    pd_floor: f64,
}

impl DensityMatrix {
    /// Validates with the default eigenvalue floor.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_density(m, DEFAULT_PD_FLOOR)
    }

    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        validate_density(ComplexMatrix::from_real_diagonal(p), DEFAULT_PD_FLOOR)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.matrix.0
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Eigenvalues `p_j`, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.spectrum.eigenvectors
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn pd_floor(&self) -> f64 {
        self.pd_floor
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DensityMatrix::new(ComplexMatrix::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Checks hermiticity, unit trace and `p_j ≥ pd_floor`, then caches the
/// spectral decomposition.
pub fn validate_density(m: ComplexMatrix, pd_floor: f64) -> Result<DensityMatrix> {
    let tolerance = HERMITIAN_TOL * m.max_abs().max(1.0);
    let deviation = m.hermiticity_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation, tolerance });
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace: tr.re, tolerance: TRACE_TOL });
    }
    let spectrum = SpectralDecomposition::of_hermitian(&m.0);
    let last = spectrum.eigenvalues.len() - 1;
    let p_min = spectrum.eigenvalues[last];
    if !(p_min >= pd_floor) {
        return Err(Error::NotPositiveDefinite { index: last, value: p_min, floor: pd_floor });
    }
    Ok(DensityMatrix { matrix: m, spectrum, pd_floor })
}

/// `Tr(ρA)`.
pub fn expectation(rho: &DensityMatrix, a: &HermitianOperator) -> Result<f64> {
    check_dims(rho.dim(), a.dim())?;
    Ok(trace_of_product(rho.as_dmatrix(), a.as_dmatrix()).re)
}

/// `Tr(XY)` without forming the product.
pub(crate) fn trace_of_product(x: &DMatrix<C64>, y: &DMatrix<C64>) -> C64 {
    let d = x.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            acc += x[(i, k)] * y[(k, i)];
        }
    }
    acc
}

/// Ordinary variance `Tr(ρA²) - Tr(ρA)²`, computed as `Tr(ρ A_0²)`.
pub fn variance_sld(rho: &DensityMatrix, a: &HermitianOperator) -> Result<f64> {
    let a0 = center(rho, a)?;
    let sq = a0.as_dmatrix() * a0.as_dmatrix();
    Ok(trace_of_product(rho.as_dmatrix(), &sq).re.max(0.0))
}

/// `A_0 = A - Tr(ρA)·I`.
pub fn center(rho: &DensityMatrix, a: &HermitianOperator) -> Result<HermitianOperator> {
    let mean = expectation(rho, a)?;
    let mut m = a.as_dmatrix().clone();
    for i in 0..m.nrows() {
        m[(i, i)] -= C64::new(mean, 0.0);
    }
    Ok(HermitianOperator { matrix: ComplexMatrix(m) })
}

/// Unitary tangent `-i[H, ρ]`.
pub fn commutator_generator(rho: &DensityMatrix, h: &HermitianOperator) -> Result<ComplexMatrix> {
    check_dims(rho.dim(), h.dim())?;
    Ok(ComplexMatrix(commutator_tangent(h.as_dmatrix(), rho.as_dmatrix())))
}

pub(crate) fn commutator_tangent(h: &DMatrix<C64>, rho: &DMatrix<C64>) -> DMatrix<C64> {
    let comm = h * rho - rho * h;
    let t = comm * C64::new(0.0, -1.0);
    // exact Hermitian projection; the two products round differently
    (&t + t.adjoint()) * C64::new(0.5, 0.0)
}

/// `κ_ρ = p_max / p_min`.
pub fn condition_number(rho: &DensityMatrix) -> f64 {
    let p = rho.eigenvalues();
    p[0] / p[p.len() - 1]
}

/// `‖H‖_s = λ_max - λ_min`.
pub fn seminorm(h: &HermitianOperator) -> f64 {
    let spec = h.spectrum();
    let ev = spec.eigenvalues();
    (ev[0] - ev[ev.len() - 1]).max(0.0)
}

/// Pauli X.
pub fn pauli_x() -> HermitianOperator {
    transition(2, 0, 1)
}

/// Pauli Y.
pub fn pauli_y() -> HermitianOperator {
    let i = C64::new(0.0, 1.0);
    HermitianOperator {
        matrix: ComplexMatrix::from_fn(2, |r, c| match (r, c) {
            (0, 1) => -i,
            (1, 0) => i,
            _ => C64::new(0.0, 0.0),
        }),
    }
}

/// Pauli Z.
pub fn pauli_z() -> HermitianOperator {
    HermitianOperator::diagonal(&[1.0, -1.0])
}

/// `|j⟩⟨k| + |k⟩⟨j|` in dimension `dim`.
pub fn transition(dim: usize, j: usize, k: usize) -> HermitianOperator {
    let mut m = DMatrix::zeros(dim, dim);
    m[(j, k)] += C64::new(1.0, 0.0);
    m[(k, j)] += C64::new(1.0, 0.0);
    HermitianOperator { matrix: ComplexMatrix(m) }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}
