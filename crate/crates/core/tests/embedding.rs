use num_complex::Complex64;
use proptest::prelude::*;
use qzspec_core::embed::{embed, lift_vector, pair_partner, project_vector, rotation_partner};
use qzspec_core::qspec::{gaussian_tensor, qeig_all};
use qzspec_core::zsolve::{z_residual, zeig_multistart};
use qzspec_core::{ComplexSymTensor, SolverConfig, SymTensor, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_psi(m: usize, n: usize, seed: u64) -> ComplexSymTensor {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    ComplexSymTensor::new(gaussian_tensor(m, n, &mut r).unwrap(), gaussian_tensor(m, n, &mut r).unwrap()).unwrap()
}

fn random_unit_z(n: usize, seed: u64) -> Vec<Complex64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let z: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
        .collect();
    let s = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    z.into_iter().map(|c| c / s).collect()
}

fn q_residual(psi: &ComplexSymTensor, lambda: f64, z: &[Complex64]) -> f64 {
    let g = psi.contract_m1(z).unwrap();
    g.iter().zip(z).map(|(a, b)| (a - b.conj() * lambda).norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn matrix_blocks() {
    let psi = ComplexSymTensor::from_real(SymTensor::diagonal(2, &[1.0, 1.0]).unwrap());
    let e = embed(&psi, Variant::General).unwrap();
    let d = e.target.to_dense();
    let diag: Vec<f64> = (0..4).map(|i| d[i * 4 + i]).collect();
    assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    assert_eq!(e.target.order(), 2);
    assert_eq!(e.target.dim(), 4);
}

#[test]
fn target_is_symmetric() {
    let psi = random_psi(4, 2, 5);
    let t = embed(&psi, Variant::General).unwrap().target;
    let d = t.to_dense();
    let n = 4;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let v = d[((a * n + b) * n + c) * n + e];
                    assert_eq!(v, d[((b * n + e) * n + a) * n + c]);
                    assert_eq!(v, d[((e * n + c) * n + b) * n + a]);
                }
            }
        }
    }
}

#[test]
fn vector_round_trip() {
    for seed in 0..10 {
        let z = random_unit_z(3, seed);
        let w = lift_vector(&z);
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-15);
        assert_eq!(project_vector(&w).unwrap(), z);
        let twice = pair_partner(&pair_partner(&w).unwrap()).unwrap();
        assert!(twice.iter().zip(&w).all(|(a, b)| *a == -*b));
    }
}

#[test]
fn hat_partner_pairs_only_for_orders_two_mod_four() {
    // Ψ = [a] with n = 1: w = (0, 1) is an eigenvector of λ = −a for every
    // order. (y, −x) is an eigenvector of +a only when (−i)^m = −1.
    for m in 2..=6usize {
        let mut psi = ComplexSymTensor::zeros(m, 1).unwrap();
        psi.set(&vec![1; m], Complex64::new(1.0, 0.0)).unwrap();
        let t = embed(&psi, Variant::General).unwrap().target;
        let w = [1.0, 0.0];
        let lambda = t.apply_m(&w).unwrap();
        assert!(z_residual(&t, lambda, &w).unwrap() < 1e-15);
        let hat = pair_partner(&w).unwrap();
        let r_hat = z_residual(&t, -lambda, &hat).unwrap();
        if m % 4 == 2 {
            assert!(r_hat < 1e-15, "m={m}");
        } else {
            assert!(r_hat > 0.5, "m={m}: {r_hat}");
        }
        let rot = rotation_partner(&w, m).unwrap();
        assert!(z_residual(&t, -lambda, &rot).unwrap() < 1e-14, "m={m}");
    }
}

#[test]
fn rotation_partner_on_solver_output() {
    let cfg = SolverConfig {
        num_starts: Some(60),
        ..Default::default()
    };
    for (m, seed) in [(3, 1), (4, 2), (5, 3)] {
        let t = embed(&random_psi(m, 2, seed), Variant::General).unwrap().target;
        let r = zeig_multistart(&t, &cfg).unwrap();
        for e in &r.entries {
            let p = rotation_partner(&e.vector, m).unwrap();
            assert!(z_residual(&t, -e.lambda, &p).unwrap() < 1e-9, "m={m} λ={}", e.lambda);
        }
    }
}

#[test]
fn variants_agree_on_order_three() {
    let psi = random_psi(3, 2, 21);
    let cfg = SolverConfig {
        num_starts: Some(80),
        ..Default::default()
    };
    let a = qeig_all(&psi, &cfg).unwrap();
    let b = qzspec_core::qspec::qeig_all_with(&psi, Variant::Order3, &cfg).unwrap();
    assert_eq!(a.pairs.len(), b.pairs.len());
    for (p, q) in a.pairs.iter().zip(&b.pairs) {
        assert!((p.lambda - q.lambda).abs() < 1e-8);
    }
    // the alternative table's eigenvectors are conjugated
    let e = embed(&psi, Variant::Order3).unwrap();
    for p in &b.pairs {
        let w = e.to_target_vector(&p.z);
        assert!(z_residual(&e.target, p.lambda, &w).unwrap() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn norm_relation(m in 2usize..=5, n in 1usize..=3, seed in any::<u64>()) {
        let psi = random_psi(m, n, seed);
        let e = embed(&psi, Variant::General).unwrap();
        let want = 2f64.powf((m as f64 - 1.0) / 2.0) * psi.frobenius_norm();
        prop_assert!((e.target.frobenius_norm() - want).abs() <= 1e-12 * want);
        prop_assert!((e.scale_fact - 2f64.powf((m as f64 - 1.0) / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn residuals_coincide(m in 2usize..=5, seed in any::<u64>(), lambda in -3.0f64..3.0) {
        let psi = random_psi(m, 2, seed);
        let e = embed(&psi, Variant::General).unwrap();
        let z = random_unit_z(2, seed ^ 1);
        let w = lift_vector(&z);
        let rz = q_residual(&psi, lambda, &z);
        let rw = z_residual(&e.target, lambda, &w).unwrap();
        prop_assert!((rz - rw).abs() <= 1e-12 * (1.0 + rz));
        let tw = e.target.apply_m(&w).unwrap();
        let pz = psi.apply_m(&z).unwrap();
        prop_assert!((tw - pz.re).abs() <= 1e-12 * (1.0 + tw.abs()));
    }

    #[test]
    fn order_three_variant_residuals(seed in any::<u64>(), lambda in -3.0f64..3.0) {
        let psi = random_psi(3, 2, seed);
        let e = embed(&psi, Variant::Order3).unwrap();
        let z = random_unit_z(2, seed ^ 2);
        let rz = q_residual(&psi, lambda, &z);
        let rw = z_residual(&e.target, lambda, &e.to_target_vector(&z)).unwrap();
        prop_assert!((rz - rw).abs() <= 1e-12 * (1.0 + rz));
    }
}
