//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so every criterion reports even when an earlier one
//! fails. Criteria listed in `KNOWN_UNATTAINABLE` still print FAIL; the process
//! exits non-zero if any other criterion fails, or if one of those starts
//! passing.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use common::*;
use geoqsl::dynamics::environment::interaction_part;
use geoqsl::dynamics::{
    decay_chain_generator, env_incoherent_check, evolve, experiment_replica, unitary_generator, DecayChainSpec,
    DriveSpec, EnvModelSpec, ReplicaSettings,
};
use geoqsl::geometry::{generalized_variance, qfi, split_qfi, split_variance};
use geoqsl::monotone::MonotoneFunction;
use geoqsl::operator::{seminorm, validate_density, variance_sld, ComplexMatrix, DensityMatrix};
use geoqsl::oracle::{qfi_superop_oracle, variance_superop_oracle};
use geoqsl::random::{random_density, random_hermitian, random_tangent, seeded};
use geoqsl::scan::{run_experiment, scan_energy_bounds, scan_fast_h, scan_xi, ExperimentConfig, ScanConfig};
use geoqsl::speed::{bound_split, coherent_ratio_xi, fast_hamiltonian, saturation_residual, xi_qutrit_closed_form};
use geoqsl::MeanProvider;

/// Criteria whose stated target contradicts the model they describe; see the
/// detail line printed for each.
const KNOWN_UNATTAINABLE: &[&str] = &["5", "11"];

struct Outcome {
    id: &'static str,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(id: &'static str, name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome { id, name, passed, detail }
}

fn betas21() -> Vec<f64> {
    (0..=20).map(|k| -1.0 + 0.1 * k as f64).collect()
}

fn beta_grid201() -> Vec<f64> {
    (0..=200).map(|k| -1.0 + 0.01 * k as f64).collect()
}

fn fb(b: f64) -> MonotoneFunction {
    MonotoneFunction::new(b).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn diag(p: &[f64]) -> DensityMatrix {
    DensityMatrix::from_diagonal(p).unwrap()
}

fn c1_oracle_equivalence() -> Outcome {
    let ((worst_lib, worst_ref, n), dt) = timed(|| {
        let mut rng = seeded(101);
        let mut worst_lib = 0.0f64;
        let mut worst_ref = 0.0f64;
        for n in 0..200 {
            let d = 2 + n % 3;
            let rho = random_density(&mut rng, d, 1e-3).unwrap();
            let rdot = random_tangent(&mut rng, &rho);
            let a = random_hermitian(&mut rng, d, 1.0);
            let beta: f64 = rng.random_range(-1.0..=1.0);
            let f = fb(beta);
            let q = qfi(&rho, &rdot, &f).unwrap();
            let v = generalized_variance(&rho, &a, &f).unwrap();
            worst_lib = worst_lib
                .max(rel_err(q, qfi_superop_oracle(&rho, &rdot, &f).unwrap()))
                .max(rel_err(v, variance_superop_oracle(&rho, &a, &f).unwrap()));
            worst_ref = worst_ref
                .max(rel_err(q, qfi_reference(&rho, &rdot, beta)))
                .max(rel_err(v, variance_reference(&rho, &a, beta)));
        }
        (worst_lib, worst_ref, 200)
    });
    let passed = worst_lib <= 1e-9 && worst_ref <= 1e-9 && dt.as_secs_f64() < 10.0;
    outcome(
        "1",
        "oracle equivalence (QFI/variance)",
        passed,
        format!(
            "{n} instances, max rel err {worst_lib:.2e} (superoperator), {worst_ref:.2e} (Kubo-Ando reference), tol 1e-9, {:.2}s < 10s",
            dt.as_secs_f64()
        ),
    )
}

fn c2_bound_validity() -> Outcome {
    let ((violations, checks, tightest), dt) = timed(|| {
        let mut rng = seeded(202);
        let mut violations = 0;
        let mut checks = 0;
        let mut tightest = 0.0f64;
        for n in 0..500 {
            let d = 2 + n % 3;
            let rho = random_density(&mut rng, d, 1e-3).unwrap();
            let rdot = random_tangent(&mut rng, &rho);
            let a = random_hermitian(&mut rng, d, 1.0);
            for b in betas21() {
                let r = bound_split(&rho, &rdot, &a, &fb(b)).unwrap();
                let nonsplit = geoqsl::speed::bound_nonsplit(&rho, &rdot, &a, &fb(b)).unwrap();
                checks += 1;
                if r.speed > r.bound_split * (1.0 + 1e-9) || r.bound_split > nonsplit * (1.0 + 1e-9) {
                    violations += 1;
                }
                tightest = tightest.max(r.speed / r.bound_split);
            }
        }
        (violations, checks, tightest)
    });
    outcome(
        "2",
        "bound validity sweep",
        violations == 0 && dt.as_secs_f64() < 30.0,
        format!(
            "{checks} checks, {violations} violations, max |a'|/bound_split = {tightest:.6}, {:.2}s < 30s",
            dt.as_secs_f64()
        ),
    )
}

fn c3_orderings() -> Outcome {
    let mut rng = seeded(202);
    let mut bad = 0;
    let mut checks = 0;
    for n in 0..500 {
        let d = 2 + n % 3;
        let rho = random_density(&mut rng, d, 1e-3).unwrap();
        let rdot = random_tangent(&mut rng, &rho);
        let a = random_hermitian(&mut rng, d, 1.0);
        let q_sld = qfi(&rho, &rdot, &MonotoneFunction::SLD).unwrap();
        let v_sld = generalized_variance(&rho, &a, &MonotoneFunction::SLD).unwrap();
        let p = rho.eigenvalues().to_vec();
        for b in betas21() {
            let f = fb(b);
            let q = qfi(&rho, &rdot, &f).unwrap();
            let v = generalized_variance(&rho, &a, &f).unwrap();
            checks += 2;
            if q < q_sld * (1.0 - 1e-9) {
                bad += 1;
            }
            if v > v_sld * (1.0 + 1e-9) {
                bad += 1;
            }
            for i in 0..d {
                for j in 0..d {
                    let m = f.mean(p[i], p[j]).unwrap();
                    let harmonic = 2.0 * p[i] * p[j] / (p[i] + p[j]);
                    let arithmetic = 0.5 * (p[i] + p[j]);
                    checks += 1;
                    if m < harmonic * (1.0 - 1e-12) || m > arithmetic * (1.0 + 1e-12) {
                        bad += 1;
                    }
                }
            }
        }
    }
    outcome("3", "orderings of QFI, variance and means", bad == 0, format!("{checks} checks, {bad} failures"))
}

fn c4_qubit_equivalence() -> Outcome {
    let mut rng = seeded(404);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let rho = random_density(&mut rng, 2, 1e-3).unwrap();
        let rdot = random_tangent(&mut rng, &rho);
        let a = random_hermitian(&mut rng, 2, 1.0);
        let (vc_s, _) = split_variance(&rho, &a, &MonotoneFunction::SLD).unwrap();
        let (qc_s, _) = split_qfi(&rho, &rdot, &MonotoneFunction::SLD).unwrap();
        let reference = vc_s.sqrt() * qc_s.sqrt();
        let scale = reference.max(1.0);
        for b in beta_grid201() {
            let (vc, _) = split_variance(&rho, &a, &fb(b)).unwrap();
            let (qc, _) = split_qfi(&rho, &rdot, &fb(b)).unwrap();
            worst = worst.max((vc.sqrt() * qc.sqrt() - reference).abs() / scale);
        }
    }
    outcome(
        "4",
        "qubit equivalence of coherent products",
        worst <= 1e-10,
        format!("100 qubits x 201 betas, max scaled deviation {worst:.2e}, tol 1e-10"),
    )
}

fn ladder_xi_rld(eps: f64) -> f64 {
    // ε³ = 1e-12 sits below the default eigenvalue floor.
    let p = [eps.powi(3), eps, 1.0 - eps - eps.powi(3)];
    let rho = validate_density(ComplexMatrix::from_real_diagonal(&p), 1e-15).unwrap();
    let h = ladder_drive(2.0 * std::f64::consts::PI * 10.0);
    coherent_ratio_xi(&rho, &unitary_tangent(&rho, &h), &x01(3), &MonotoneFunction::RLD).unwrap()
}

fn c5_eps_scaling() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for eps in [1e-2f64, 1e-3, 1e-4] {
        let ratio = ladder_xi_rld(eps) / eps;
        passed &= (1.0 - 10.0 * eps..=1.0 + 10.0 * eps).contains(&ratio);
        parts.push(format!("eps={eps:.0e}: xi/eps={ratio:.6}"));
    }
    outcome(
        "5",
        "eps-scaling of xi^RLD",
        passed,
        format!(
            "{}; target [1-10eps, 1+10eps]. The explicit rational form of xi^RLD itself gives 2eps + O(eps^2), see 5b",
            parts.join(", ")
        ),
    )
}

fn c5b_eps_scaling_supplement() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for eps in [1e-2f64, 1e-3, 1e-4] {
        let xi = ladder_xi_rld(eps);
        let p = [eps.powi(3), eps, 1.0 - eps - eps.powi(3)];
        let explicit = xi_rld_ladder_explicit(p);
        let ratio = xi / (2.0 * eps);
        passed &= (1.0 - 10.0 * eps..=1.0 + 10.0 * eps).contains(&ratio) && rel_err(xi, explicit) <= 1e-9;
        parts.push(format!("eps={eps:.0e}: xi/(2eps)={ratio:.6}, rel err vs explicit {:.1e}", rel_err(xi, explicit)));
    }
    outcome("5b", "supplement: xi^RLD = 2eps + O(eps^2), matches explicit form", passed, parts.join(", "))
}

fn scan_with_step(step: f64) -> ScanConfig {
    let mut c = ScanConfig::default();
    c.grid.step = step;
    c
}

fn c6_region_structure() -> Outcome {
    let (out, dt) = timed(|| scan_xi(&ScanConfig::default()).unwrap());
    let region: Vec<_> = out.rows.iter().filter(|r| r.xi_star < 1.0 - 1e-9).collect();
    let off = region.iter().filter(|r| (r.beta_star + 1.0).abs() > 1e-6).count();
    let mut corner = Vec::new();
    for eps in [1e-2f64, 1e-3] {
        let mut c = ScanConfig::default();
        c.grid.points = Some(vec![vec![eps.powi(3), eps, 1.0 - eps - eps.powi(3)]]);
        corner.push(scan_xi(&c).unwrap().rows[0].xi_star);
    }
    let passed = !region.is_empty() && off == 0 && corner.iter().all(|&x| x < 0.05) && dt.as_secs_f64() < 120.0;
    outcome(
        "6",
        "ladder-scan region structure",
        passed,
        format!(
            "step 0.005: {} rows, {} with xi*<1, {off} of them with beta* != -1; corner xi* = {:?}; {:.1}s < 120s",
            out.rows.len(),
            region.len(),
            corner.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>(),
            dt.as_secs_f64()
        ),
    )
}

fn c7_optimal_beta_richness() -> Outcome {
    let config = ScanConfig::from_json(
        r#"{"hamiltonian": {"template": "triangle"}, "grid": {"step": 0.0025, "fixed_p0": 0.0375}}"#,
    )
    .unwrap();
    let out = scan_xi(&config).unwrap();
    let at_rld = out.rows.iter().any(|r| (r.beta_star + 1.0).abs() <= 1e-6);
    let interior: Vec<f64> = out.rows.iter().map(|r| r.beta_star).filter(|b| b.abs() < 1.0 - 1e-6).collect();
    let lo = interior.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = interior.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if interior.is_empty() { 0.0 } else { hi - lo };
    outcome(
        "7",
        "triangle-drive optimal-beta richness",
        at_rld && span >= 1.0,
        format!(
            "p0=0.0375 line, {} rows: beta*=-1 present: {at_rld}; {} interior beta* in [{lo:.3}, {hi:.3}], span {span:.3} >= 1.0",
            out.rows.len(),
            interior.len()
        ),
    )
}

fn c8_saturation_examples() -> Outcome {
    let (h, a) = two_qubit_pair();
    let sld_state = diag(&[0.3, 0.4, 0.1, 0.2]);
    let rdot = unitary_tangent(&sld_state, &h);
    let res_sld = saturation_residual(&sld_state, &rdot, &a, &MonotoneFunction::SLD).unwrap();
    let r = bound_split(&sld_state, &rdot, &a, &MonotoneFunction::SLD).unwrap();
    let ratio = r.bound_split / r.speed;

    let s = 89f64.sqrt();
    let rld_state = diag(&[(s - 3.0) / 20.0, 0.4, 0.1, (13.0 - s) / 20.0]);
    let rdot = unitary_tangent(&rld_state, &h);
    let res_rld = saturation_residual(&rld_state, &rdot, &a, &MonotoneFunction::RLD).unwrap();
    let res_rld_at_sld = saturation_residual(&rld_state, &rdot, &a, &MonotoneFunction::SLD).unwrap();

    let passed = res_sld <= 1e-9 && (1.0..=1.0 + 1e-8).contains(&ratio) && res_rld <= 1e-9 && res_rld_at_sld > 1e-2;
    outcome(
        "8",
        "two-qubit saturation examples",
        passed,
        format!(
            "SLD state: residual {res_sld:.2e}, bound/|a'| = {ratio:.12}; RLD state: residual(-1) {res_rld:.2e}, residual(1) {res_rld_at_sld:.3e}"
        ),
    )
}

fn c9_fast_hamiltonian() -> Outcome {
    let mut rng = seeded(909);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 0..12 {
        let d = 3 + n % 2;
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let a = random_hermitian(&mut rng, d, 1.0);
        for b in beta_grid201() {
            let f = fb(b);
            let h = fast_hamiltonian(&rho, &a, &f, 1.0).unwrap();
            let r = bound_split(&rho, &unitary_tangent(&rho, &h), &a, &f).unwrap();
            worst = worst.max((r.coherent_term - r.speed).abs() / r.coherent_term);
            cases += 1;
        }
    }
    let (out, dt) = timed(|| scan_fast_h(&scan_with_step(0.01)).unwrap());
    let max_ratio = out.summary().max_ratio.unwrap_or(f64::NAN);
    let min_ratio = out.rows.iter().map(|r| r.auxiliary["speed_ratio"]).fold(f64::INFINITY, f64::min);
    let passed =
        worst <= 1e-9 && (1.15..=1.25).contains(&max_ratio) && min_ratio >= 1.0 - 1e-9 && dt.as_secs_f64() < 120.0;
    outcome(
        "9",
        "fast-Hamiltonian saturation and speed-gain scan",
        passed,
        format!(
            "{cases} (state, beta) drives, max rel gap to coherent bound {worst:.2e}; step 0.01 scan: {} rows, {} skipped, speed ratio in [{min_ratio:.6}, {max_ratio:.6}], target max in [1.15, 1.25]; {:.1}s < 120s",
            out.rows.len(),
            out.skipped,
            dt.as_secs_f64()
        ),
    )
}

fn c10_energy_chain() -> Outcome {
    let mut rng = seeded(1010);
    let mut bad = 0;
    let mut checks = 0;
    let le = |lhs: f64, rhs: f64| lhs <= rhs + 1e-9 * rhs.abs().max(1.0);
    for n in 0..300 {
        let d = 2 + n % 3;
        let rho = random_density(&mut rng, d, 1e-3).unwrap();
        let h = random_hermitian(&mut rng, d, 1.0);
        let rdot = unitary_tangent(&rho, &h);
        let p = rho.eigenvalues().to_vec();
        let kappa = p.iter().copied().fold(0.0, f64::max) / p.iter().copied().fold(f64::INFINITY, f64::min);
        let var_h = variance_sld(&rho, &h).unwrap();
        let norm_s = seminorm(&h);
        for b in betas21() {
            let (qc, _) = split_qfi(&rho, &rdot, &fb(b)).unwrap();
            let mut worst = 1.0f64;
            for i in 0..d {
                for j in i + 1..d {
                    worst = worst.max(mean_direct(1.0, p[i], p[j]) / mean_direct(b, p[i], p[j]));
                }
            }
            let ratio_bound = 4.0 * worst * var_h;
            let ok = le(qc, ratio_bound)
                && le(ratio_bound, (1.0 + kappa).powi(2) / kappa * var_h)
                && le(qc, kappa * var_h)
                && le(kappa * var_h, kappa * norm_s * norm_s / 4.0);
            checks += 1;
            if !ok {
                bad += 1;
            }
        }
    }
    let out = scan_energy_bounds(&ScanConfig::default()).unwrap();
    let small_kappa: Vec<_> = out.rows.iter().filter(|r| r.auxiliary["kappa"] < 4.0).collect();
    let small_bad = small_kappa.iter().filter(|r| r.auxiliary["bound_ratio"] >= 1.0).count();
    let beyond = out.rows.iter().filter(|r| r.auxiliary["kappa"] > 4.0 && r.auxiliary["bound_ratio"] < 1.0).count();
    let passed = bad == 0 && !small_kappa.is_empty() && small_bad == 0 && beyond > 0;
    outcome(
        "10",
        "energy-variance chain and bound-ratio region",
        passed,
        format!(
            "{checks} chain checks, {bad} failures; scan: {} points with kappa<4, {small_bad} with ratio>=1; {beyond} points with kappa>4 and ratio<1",
            small_kappa.len()
        ),
    )
}

fn c11_experiment_replica() -> Outcome {
    let rows = run_experiment(&ExperimentConfig::default()).unwrap();
    let mut order_bad = 0;
    let mut checked = 0;
    let mut worst_fit = 0.0f64;
    for r in &rows {
        if r.xi_rld.is_some_and(|x| x <= 1.0) {
            checked += 1;
            if r.speed > r.bound_rld * (1.0 + 1e-9) || r.bound_rld > r.bound_sld * (1.0 + 1e-9) {
                order_bad += 1;
            }
        }
        worst_fit = worst_fit.max(rel_err(r.speed, r.exact_speed));
    }
    let first = &rows[0];
    let tight = first.bound_rld / first.bound_sld;
    let passed = order_bad == 0 && checked > 0 && tight < 0.9 && worst_fit <= 0.02;
    outcome(
        "11",
        "experiment replica",
        passed,
        format!(
            "{checked} rows with xi^RLD<=1, {order_bad} ordering failures; rld/sld at t_decay={} is {tight:.4} < 0.9; \
             max |fit - Tr[A rho']|/Tr[A rho'] = {worst_fit:.4} at window 0.016 (target 0.02): a linear fit over a \
             window with Omega*T ~ 1 carries O((Omega T)^2) curvature error, see 11b",
            first.t_decay
        ),
    )
}

fn c11b_window_convergence() -> Outcome {
    let spec = DecayChainSpec::preset_per_ms();
    let drive = DriveSpec::default();
    let t_list: Vec<f64> = (0..10).map(|k| 11.0 + 10.0 * k as f64).collect();
    let mut parts = Vec::new();
    let mut worst_small = 0.0f64;
    for (window, dt) in [(0.016, 1e-4), (0.004, 2.5e-5), (0.0016, 1e-5)] {
        let settings = ReplicaSettings { window, dt, extra_betas: Vec::new() };
        let rows = experiment_replica(&spec, &drive, &t_list, None, &settings).unwrap();
        // Rows where the exact speed nearly vanishes have no meaningful relative error.
        let scale = rows.iter().map(|r| r.exact_speed).fold(0.0, f64::max);
        let worst = rows.iter().map(|r| (r.speed - r.exact_speed).abs() / scale).fold(0.0, f64::max);
        parts.push(format!("window {window}: {worst:.2e}"));
        worst_small = worst;
    }
    outcome(
        "11b",
        "supplement: fitted speed converges to Tr[A rho'] as the window shrinks",
        worst_small <= 0.02,
        format!("max |fit - exact| / max exact: {}", parts.join(", ")),
    )
}

fn c12_dynamics_integrity() -> Outcome {
    let mut rng = seeded(1212);
    let mut iso = 0.0f64;
    for d in [2, 3, 4] {
        let rho = random_density(&mut rng, d, 1e-2).unwrap();
        let h = random_hermitian(&mut rng, d, 1.0);
        let traj = evolve(&rho, &unitary_generator(&h), 1.0, 1e-3).unwrap();
        let p0 = rho.eigenvalues().to_vec();
        let last = &traj.states[traj.len() - 1];
        assert_eq!(traj.len(), 1001);
        for (x, y) in p0.iter().zip(last.eigenvalues().iter()) {
            iso = iso.max((x - y).abs());
        }
    }

    let spec = DecayChainSpec::preset_per_ms();
    let t0 = 5.0;
    let start = bateman_reference(spec.gamma_fe, spec.gamma_eg, t0);
    let traj = evolve(&diag(&start), &decay_chain_generator(&spec, None).unwrap(), 100.0, 0.05).unwrap();
    let mut bateman = 0.0f64;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let want = bateman_reference(spec.gamma_fe, spec.gamma_eg, t0 + t);
        for (k, w) in want.iter().enumerate() {
            bateman = bateman.max((s.as_dmatrix()[(k, k)].re - w).abs());
        }
    }

    let mut env_bad = 0;
    let mut tightest = 0.0f64;
    for _ in 0..100 {
        let h_sys = random_hermitian(&mut rng, 2, 1.0);
        let h_env = random_hermitian(&mut rng, 2, 1.0);
        let h_int = interaction_part(&random_hermitian(&mut rng, 4, 1.0), 2, 2).unwrap();
        let joint = random_density(&mut rng, 4, 1e-2).unwrap();
        let spec = EnvModelSpec::new(2, 2, h_sys, h_env, h_int, joint).unwrap();
        match env_incoherent_check(&spec, 1e-3) {
            Ok(c) if c.fisher_incoherent <= c.bound + 1e-9 * c.bound.max(1.0) => {
                tightest = tightest.max(c.fisher_incoherent / c.bound)
            }
            _ => env_bad += 1,
        }
    }
    outcome(
        "12",
        "dynamics integrity",
        iso <= 1e-8 && bateman <= 1e-7 && env_bad == 0,
        format!(
            "isospectral drift over 1000 steps {iso:.2e}; max |p - Bateman| {bateman:.2e}; env check: {env_bad}/100 failures, max I_I/4(dH_int)^2 = {tightest:.4}"
        ),
    )
}

fn c13_determinism() -> Outcome {
    let config = scan_with_step(0.02);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            [
                scan_xi(&config).unwrap().to_csv(),
                scan_fast_h(&config).unwrap().to_csv(),
                scan_energy_bounds(&config).unwrap().to_csv(),
            ]
        })
    };
    let a = run(1);
    let b = run(1);
    let c = run(4);
    outcome(
        "13",
        "determinism",
        a == b && a == c,
        format!("three scan kinds, byte-identical across repeat runs: {}, across 1 vs 4 threads: {}", a == b, a == c),
    )
}

fn closed_form_consistency() -> bool {
    // Guards criterion 5b: the library closed form and the explicit one agree.
    let p = [0.05, 0.15, 0.8];
    let rho = diag(&p);
    let h = ladder_drive(1.0);
    let rdot = unitary_tangent(&rho, &h);
    let r = rdot.as_dmatrix();
    let v = |j: usize, k: usize| 2.0 * r[(j, k)].norm_sqr();
    let f: &dyn MeanProvider = &MonotoneFunction::RLD;
    let cf = xi_qutrit_closed_form(p, v(0, 1), v(0, 2), v(1, 2), f).unwrap();
    rel_err(cf, xi_rld_ladder_explicit(p)) <= 1e-12
}

fn main() {
    let criteria: Vec<fn() -> Outcome> = vec![
        c1_oracle_equivalence,
        c2_bound_validity,
        c3_orderings,
        c4_qubit_equivalence,
        c5_eps_scaling,
        c5b_eps_scaling_supplement,
        c6_region_structure,
        c7_optimal_beta_richness,
        c8_saturation_examples,
        c9_fast_hamiltonian,
        c10_energy_chain,
        c11_experiment_replica,
        c11b_window_convergence,
        c12_dynamics_integrity,
        c13_determinism,
    ];
    let mut unexpected = Vec::new();
    for criterion in criteria {
        let o = criterion();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let known = KNOWN_UNATTAINABLE.contains(&o.id);
        let note = if known { " [known unattainable]" } else { "" };
        println!("{tag} criterion {:<3} {}{note}: {}", o.id, o.name, o.detail);
        if o.passed == known {
            unexpected.push(o.id);
        }
    }
    if !closed_form_consistency() {
        unexpected.push("closed-form");
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
