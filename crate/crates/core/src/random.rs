//! Seeded random states, observables and tangents for sweeps and self-tests.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::geometry::TangentOperator;
use crate::operator::{ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::{Result, C64};

/// Deterministic generator used by every sweep.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-random unitary (QR of a Ginibre matrix with the phases of `R` removed).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DMatrix<C64> {
    let qr = ginibre(rng, d).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { C64::new(1.0, 0.0) };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    q
}

/// Flat-Dirichlet spectrum with every entry at least `floor`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, d: usize, floor: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let free = 1.0 - floor * d as f64;
    let mut p: Vec<f64> = raw.iter().map(|x| floor + free * x / total).collect();
    // push the rounding residue onto the largest entry
    let residue = 1.0 - p.iter().sum::<f64>();
    let imax = (0..d).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
    p[imax] += residue;
    p
}

/// Random full-rank state `U diag(p) U†` with `p_j ≥ floor`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize, floor: f64) -> Result<DensityMatrix> {
    let p = random_spectrum(rng, d, floor);
    let u = random_unitary(rng, d);
    let mut scaled = u.clone();
    for (j, &pj) in p.iter().enumerate() {
        scaled.column_mut(j).scale_mut(pj);
    }
    let m = scaled * u.adjoint();
    let mut m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let tr = m.trace().re;
    m /= C64::new(tr, 0.0);
    DensityMatrix::new(ComplexMatrix::new(m)?)
}

/// GUE-like Hermitian matrix, entries of order `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize, scale: f64) -> HermitianOperator {
    let g = ginibre(rng, d);
    HermitianOperator::hermitized(g * C64::new(scale, 0.0))
}

/// Generic tangent: a unitary part `-i[H, ρ]` plus a random traceless diagonal
/// part in the eigenbasis of `ρ`, so both coherent and incoherent pieces are
/// present.
pub fn random_tangent<R: Rng + ?Sized>(rng: &mut R, rho: &DensityMatrix) -> TangentOperator {
    let d = rho.dim();
    let h = random_hermitian(rng, d, 1.0);
    let unitary = TangentOperator::commutator(rho, &h).expect("dims match");
    let p = rho.eigenvalues();
    let mut diag: Vec<f64> = p.iter().map(|&pj| pj * rng.sample::<f64, _>(StandardNormal)).collect();
    let mean = diag.iter().sum::<f64>() / d as f64;
    diag.iter_mut().for_each(|x| *x -= mean);
    let diag_m = DMatrix::from_fn(d, d, |i, j| if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) });
    let incoherent = rho.spectrum().from_eigenbasis(&diag_m);
    TangentOperator::projected(unitary.as_dmatrix() + incoherent)
}
