mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;

use common::*;
use geoqsl::geometry::{generalized_variance, log_derivative, qfi, TangentOperator};
use geoqsl::monotone::MonotoneFunction;
use geoqsl::operator::{seminorm, ComplexMatrix, DensityMatrix, HermitianOperator};
use geoqsl::random::{random_density, random_hermitian, random_tangent, random_unitary, seeded};
use geoqsl::scan::{scan_xi, ScanConfig};
use geoqsl::speed::{bound_nonsplit, bound_split, coherent_ratio_xi, fast_hamiltonian, saturation_residual};
use geoqsl::C64;

fn conj(u: &DMatrix<C64>, m: &DMatrix<C64>) -> DMatrix<C64> {
    u * m * u.adjoint()
}

fn rotated_state(u: &DMatrix<C64>, rho: &DensityMatrix) -> DensityMatrix {
    let m = conj(u, rho.as_dmatrix());
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::new(ComplexMatrix::new(m).unwrap()).unwrap()
}

fn rotated_tangent(u: &DMatrix<C64>, t: &TangentOperator) -> TangentOperator {
    TangentOperator::projected(conj(u, t.as_dmatrix()))
}

fn rotated_op(u: &DMatrix<C64>, a: &HermitianOperator) -> HermitianOperator {
    HermitianOperator::hermitized(conj(u, a.as_dmatrix()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unitary_covariance(seed in any::<u64>(), d in 2usize..=4, beta in -1.0f64..=1.0) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let rdot = random_tangent(&mut rng, &rho);
        let a = random_hermitian(&mut rng, d, 1.0);
        let u = random_unitary(&mut rng, d);
        let f = MonotoneFunction::new(beta).unwrap();
        let (rho2, rdot2, a2) = (rotated_state(&u, &rho), rotated_tangent(&u, &rdot), rotated_op(&u, &a));
        prop_assert!(rel_err(qfi(&rho, &rdot, &f).unwrap(), qfi(&rho2, &rdot2, &f).unwrap()) < 1e-9);
        prop_assert!(rel_err(generalized_variance(&rho, &a, &f).unwrap(), generalized_variance(&rho2, &a2, &f).unwrap()) < 1e-9);
        let r1 = bound_split(&rho, &rdot, &a, &f).unwrap();
        let r2 = bound_split(&rho2, &rdot2, &a2, &f).unwrap();
        prop_assert!(rel_err(r1.bound_split, r2.bound_split) < 1e-9);
    }

    #[test]
    fn scaling_covariance(seed in any::<u64>(), d in 2usize..=4, beta in -1.0f64..=1.0, c in 0.01f64..100.0, shift in -5.0f64..5.0) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let rdot = random_tangent(&mut rng, &rho);
        let a = random_hermitian(&mut rng, d, 1.0);
        let f = MonotoneFunction::new(beta).unwrap();
        let q = qfi(&rho, &rdot, &f).unwrap();
        prop_assert!(rel_err(qfi(&rho, &rdot.scaled(c), &f).unwrap(), c * c * q) < 1e-9);
        let shifted = a.scaled(c).add(&HermitianOperator::identity(d).scaled(shift)).unwrap();
        let v = generalized_variance(&rho, &a, &f).unwrap();
        prop_assert!(rel_err(generalized_variance(&rho, &shifted, &f).unwrap(), c * c * v) < 1e-8);
    }

    #[test]
    fn log_derivative_observable_saturates(seed in any::<u64>(), d in 2usize..=4, beta in -1.0f64..=1.0) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let rdot = random_tangent(&mut rng, &rho);
        let f = MonotoneFunction::new(beta).unwrap();
        let l = log_derivative(&rho, &rdot, &f).unwrap();
        let a = l.scaled(-2.5).add(&HermitianOperator::identity(d).scaled(0.7)).unwrap();
        let r = bound_split(&rho, &rdot, &a, &f).unwrap();
        let nonsplit = bound_nonsplit(&rho, &rdot, &a, &f).unwrap();
        prop_assert!(rel_err(r.speed, nonsplit) < 1e-9);
        prop_assert!(saturation_residual(&rho, &rdot, &a, &f).unwrap() < 1e-9);
    }

    #[test]
    fn fast_hamiltonian_meets_budget(seed in any::<u64>(), d in 2usize..=4, beta in -1.0f64..=1.0, budget in 0.1f64..10.0) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let a = random_hermitian(&mut rng, d, 1.0);
        let f = MonotoneFunction::new(beta).unwrap();
        let h = fast_hamiltonian(&rho, &a, &f, budget).unwrap();
        prop_assert!(rel_err(seminorm(&h), budget) < 1e-9);
        let speed = geoqsl::speed::observable_speed(&unitary_tangent(&rho, &h), &a).unwrap();
        prop_assert!(speed > 0.0);
    }

    #[test]
    fn xi_is_at_most_one_somewhere_and_one_at_sld(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let rdot = random_tangent(&mut rng, &rho);
        let a = random_hermitian(&mut rng, d, 1.0);
        let xi = coherent_ratio_xi(&rho, &rdot, &a, &MonotoneFunction::SLD).unwrap();
        prop_assert!((xi - 1.0).abs() < 1e-12);
    }
}

#[test]
fn degenerate_subspace_rotation_is_invisible() {
    let rho = DensityMatrix::from_diagonal(&[0.4, 0.4, 0.2]).unwrap();
    let h = ladder_drive(1.3);
    let a = x01(3).add(&HermitianOperator::diagonal(&[0.5, -0.2, 0.1])).unwrap();
    let mut rng = seeded(5);
    let block = random_unitary(&mut rng, 2);
    let u = DMatrix::from_fn(3, 3, |i, j| match (i, j) {
        (2, 2) => C64::new(1.0, 0.0),
        (i, j) if i < 2 && j < 2 => block[(i, j)],
        _ => C64::new(0.0, 0.0),
    });
    let rho2 = rotated_state(&u, &rho);
    let rdot = unitary_tangent(&rho, &h);
    let rdot2 = rotated_tangent(&u, &rdot);
    let a2 = rotated_op(&u, &a);
    for beta in [-1.0, -0.3, 0.0, 0.5, 1.0] {
        let f = MonotoneFunction::new(beta).unwrap();
        let r1 = bound_split(&rho, &rdot, &a, &f).unwrap();
        let r2 = bound_split(&rho2, &rdot2, &a2, &f).unwrap();
        assert!(rel_err(r1.bound_split, r2.bound_split) < 1e-9, "beta {beta}");
        assert!(rel_err(r1.coherent_term, r2.coherent_term) < 1e-9, "beta {beta}");
        assert!(rel_err(qfi(&rho, &rdot, &f).unwrap(), qfi(&rho2, &rdot2, &f).unwrap()) < 1e-9);
    }
}

#[test]
fn scan_rows_never_beaten_by_anchor_betas() {
    let mut config = ScanConfig::default();
    config.grid.step = 0.02;
    let h = ladder_drive(2.0 * std::f64::consts::PI * 10.0);
    let a = x01(3);
    let out = scan_xi(&config).unwrap();
    assert!(!out.rows.is_empty());
    for row in &out.rows {
        let rho = DensityMatrix::from_diagonal(&row.point).unwrap();
        let rdot = unitary_tangent(&rho, &h);
        for beta in [-1.0, 0.0, 0.5, 1.0] {
            let xi = coherent_ratio_xi(&rho, &rdot, &a, &MonotoneFunction::new(beta).unwrap()).unwrap();
            assert!(row.xi_star <= xi + 1e-12 * xi.max(1.0), "{:?} beta {beta}: {} > {xi}", row.point, row.xi_star);
        }
    }
}

#[test]
fn means_match_direct_formula() {
    let xs = [1e-3, 0.05, 0.3, 0.5, 0.9];
    for k in 0..=40 {
        let beta = -1.0 + 0.05 * k as f64;
        let f = MonotoneFunction::new(beta).unwrap();
        for &x in &xs {
            for &y in &xs {
                if (x / y - 1.0f64).abs() < 1e-3 {
                    continue;
                }
                let m = f.mean(x, y).unwrap();
                assert!(rel_err(m, mean_direct(beta, x, y)) < 1e-10, "beta {beta} x {x} y {y}");
            }
        }
    }
}
