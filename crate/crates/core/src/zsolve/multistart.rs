use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::power::{newton_polish, run_from};
use super::{dedup, Eigenpair, SolverConfig, SolverKind, SpectrumEntry, SpectrumReport};
use crate::error::{Error, Result};
use crate::linalg::jacobi_eigh;
use crate::math;
use crate::tensor::SymTensor;

/// All eigenpairs of a symmetric matrix (order-2 tensor), descending.
pub fn eig_sym_matrix(t: &SymTensor) -> Result<Vec<Eigenpair>> {
    if t.order() != 2 {
        return Err(Error::InvalidOrder {
            order: t.order(),
            need: "== 2",
        });
    }
    let n = t.dim();
    let (_, vectors) = jacobi_eigh(&t.to_dense(), n)?;
    vectors
        .into_iter()
        .map(|v| Eigenpair::from_vector(t, v, SolverKind::Jacobi))
        .collect()
}

const NEWTON_STEPS: usize = 50;

pub(crate) fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        if let Some(u) = math::normalized(&v) {
            return u;
        }
    }
}

fn radius(entries: &[SpectrumEntry]) -> f64 {
    entries.iter().fold(0.0, |r, e| r.max(e.lambda.abs()))
}

/// Z-eigenpairs by multistart shifted power iteration.
///
/// Order 2 goes to [`eig_sym_matrix`]. Otherwise every start runs once
/// ascending and once descending; converged pairs are clustered by
/// eigenvalue. Starts are uniform on the sphere from `cfg.seed`, plus the
/// eigenvectors of the matrix `T w₀^{m−2}` for the first start `w₀`.
///
/// Power passes only reach local extrema of `T w^m` on the sphere, so every
/// start also gets a plain Newton solve, which converges to saddles too.
pub fn zeig_multistart(t: &SymTensor, cfg: &SolverConfig) -> Result<SpectrumReport> {
    cfg.validate()?;
    let (m, n) = (t.order(), t.dim());
    if m == 2 {
        let pairs = eig_sym_matrix(t)?;
        let objective_max = pairs.iter().fold(0.0f64, |r, p| r.max(p.lambda.abs()));
        let accepted = pairs.len();
        let entries = dedup(pairs, m, cfg.dedup_tol);
        return Ok(SpectrumReport {
            order: m,
            dim: n,
            z_spectral_radius: radius(&entries),
            objective_max,
            entries,
            heuristic: false,
            starts_run: 0,
            pairs_accepted: accepted,
            config: cfg.clone(),
        });
    }
    if t.is_zero() {
        // every unit vector is an eigenvector of 0
        let mut e1 = vec![0.0; n];
        e1[0] = 1.0;
        let pair = Eigenpair::from_vector(t, e1, SolverKind::ShiftedPower)?;
        return Ok(SpectrumReport {
            order: m,
            dim: n,
            entries: dedup(vec![pair], m, cfg.dedup_tol),
            z_spectral_radius: 0.0,
            objective_max: 0.0,
            heuristic: true,
            starts_run: 0,
            pairs_accepted: 1,
            config: cfg.clone(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts: Vec<Vec<f64>> = (0..cfg.starts_for(n)).map(|_| random_unit(&mut rng, n)).collect();
    let slice = t.contract_m2(&starts[0])?;
    if let Ok((_, warm)) = jacobi_eigh(&slice, n) {
        starts.extend(warm);
    }

    let mut accepted = Vec::new();
    let mut objective_max = 0.0f64;
    let mut runs = 0;
    for start in &starts {
        for sign in [1.0, -1.0] {
            let out = run_from(t, sign, start, cfg);
            runs += 1;
            objective_max = objective_max.max(out.objective_max);
            if let Some(p) = out.pair {
                if p.residual < cfg.tol {
                    accepted.push(p);
                }
            }
        }
        if let Some(mut p) = newton_polish(t, start, cfg.tol, NEWTON_STEPS) {
            p.source = SolverKind::Newton;
            objective_max = objective_max.max(p.lambda.abs());
            accepted.push(p);
        }
    }
    if accepted.is_empty() {
        return Err(Error::BudgetExhausted {
            starts: runs,
            max_iter: cfg.max_iter,
        });
    }
    let pairs_accepted = accepted.len();
    let entries = dedup(accepted, m, cfg.dedup_tol);
    Ok(SpectrumReport {
        order: m,
        dim: n,
        z_spectral_radius: radius(&entries),
        objective_max,
        entries,
        heuristic: true,
        starts_run: runs,
        pairs_accepted,
        config: cfg.clone(),
    })
}

/// `Z(T) = max |λ|` over the computed spectrum.
pub fn z_spectral_radius(t: &SymTensor, cfg: &SolverConfig) -> Result<f64> {
    if t.is_zero() {
        return Err(Error::ZeroTensor);
    }
    Ok(zeig_multistart(t, cfg)?.z_spectral_radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_route_is_exact() {
        let t = SymTensor::diagonal(2, &[3.0, -1.0]).unwrap();
        let pairs = eig_sym_matrix(&t).unwrap();
        assert_eq!(pairs[0].lambda, 3.0);
        assert_eq!(pairs[0].vector, vec![1.0, 0.0]);
        assert_eq!(pairs[1].lambda, -1.0);
        assert!(eig_sym_matrix(&SymTensor::zeros(3, 2).unwrap()).is_err());
    }

    #[test]
    fn identity_is_one_cluster() {
        let t = SymTensor::diagonal(2, &[1.0; 4]).unwrap();
        let r = zeig_multistart(&t, &SolverConfig::default()).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].lambda, 1.0);
        assert_eq!(r.entries[0].cluster_size, 4);
        assert!(!r.heuristic);
    }

    #[test]
    fn zero_tensor() {
        let t = SymTensor::zeros(3, 3).unwrap();
        assert_eq!(zeig_multistart(&t, &SolverConfig::default()).unwrap().eigenvalues(), vec![0.0]);
        assert!(matches!(z_spectral_radius(&t, &SolverConfig::default()), Err(Error::ZeroTensor)));
    }
}
