//! Brute-force stationary-point search on sphere grids.
//!
//! These do not share starts or iteration logic with the multistart solver
//! and exist to check it.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::power::newton_polish;
use super::{canonical_sign, dedup, Eigenpair, SolverConfig, SolverKind, SpectrumReport};
use crate::error::{Error, Result};
use crate::math;
use crate::tensor::SymTensor;

/// Circle grid size for [`grid_oracle_n2`].
pub const GRID_N2: usize = 100_000;
/// Default sphere grid size for [`grid_oracle_n3plus`].
pub const DEFAULT_RESOLUTION: usize = 4000;

/// Tangential derivative of `θ ↦ T w(θ)^m` up to the factor `m`.
fn tangential(t: &SymTensor, theta: f64) -> f64 {
    let (s, c) = libm::sincos(theta);
    let g = t.contract_m1(&[c, s]).expect("dim 2");
    -s * g[0] + c * g[1]
}

/// Every stationary point of `T w^m` on the unit circle, found by sign
/// changes of the tangential derivative on a [`GRID_N2`]-point grid and
/// bisection to `1e−12` in angle. Sorted by descending eigenvalue.
pub fn grid_oracle_n2(t: &SymTensor) -> Result<Vec<Eigenpair>> {
    if t.dim() != 2 {
        return Err(Error::DimensionMismatch {
            got: t.dim(),
            expected: 2,
        });
    }
    let step = 2.0 * PI / GRID_N2 as f64;
    let h: Vec<f64> = (0..GRID_N2).map(|k| tangential(t, k as f64 * step)).collect();
    let mut roots = Vec::new();
    for k in 0..GRID_N2 {
        let (ha, hb) = (h[k], h[(k + 1) % GRID_N2]);
        if ha == 0.0 {
            roots.push(k as f64 * step);
        } else if ha * hb < 0.0 {
            let (mut a, mut b) = (k as f64 * step, (k + 1) as f64 * step);
            let mut fa = ha;
            while b - a > 1e-12 {
                let mid = 0.5 * (a + b);
                let fm = tangential(t, mid);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    let mut out = roots
        .into_iter()
        .map(|th| {
            let (s, c) = libm::sincos(th);
            Eigenpair::from_vector(t, alloc::vec![c, s], SolverKind::GridOracle)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| b.lambda.total_cmp(&a.lambda));
    Ok(out)
}

fn fibonacci_sphere(count: usize) -> Vec<Vec<f64>> {
    let golden = PI * (3.0 - math::sqrt(5.0));
    (0..count)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
            let r = math::sqrt((1.0 - z * z).max(0.0));
            let (s, c) = libm::sincos(golden * k as f64);
            alloc::vec![r * c, r * s, z]
        })
        .collect()
}

/// Hopf-coordinate grid on S³ with roughly `count` points.
fn hopf_grid(count: usize) -> Vec<Vec<f64>> {
    let k = (libm::round(libm::cbrt(count as f64 / 4.0)) as usize).max(2);
    let mut out = Vec::with_capacity(4 * k * k * k);
    for a in 0..k {
        let eta = (a as f64 + 0.5) * (PI / 2.0) / k as f64;
        let (se, ce) = libm::sincos(eta);
        for b in 0..2 * k {
            let (s1, c1) = libm::sincos(PI * b as f64 / k as f64);
            for c in 0..2 * k {
                let (s2, c2) = libm::sincos(PI * (c as f64 + 0.5) / k as f64);
                out.push(alloc::vec![ce * c1, ce * s1, se * c2, se * s2]);
            }
        }
    }
    out
}

/// Stationary points of `T w^m` on S² or S³ by Newton-polishing every point
/// of a quasi-uniform grid (Fibonacci lattice for dimension 3, Hopf
/// coordinates for dimension 4). Newton converges to saddles as well as
/// extrema, so the output is complete up to grid resolution in practice,
/// but nothing certifies that.
pub fn grid_oracle_n3plus(t: &SymTensor, resolution: usize) -> Result<Vec<Eigenpair>> {
    let grid = match t.dim() {
        3 => fibonacci_sphere(resolution.max(16)),
        4 => hopf_grid(resolution.max(32)),
        d => {
            return Err(Error::DimensionMismatch { got: d, expected: 3 });
        }
    };
    let mut found: Vec<Eigenpair> = Vec::new();
    for p in &grid {
        let Some(mut e) = newton_polish(t, p, 1e-11, 40) else {
            continue;
        };
        e.source = SolverKind::GridOracle;
        e.vector = canonical_sign(t.order(), &e.vector);
        let dup = found
            .iter()
            .any(|f| (f.lambda - e.lambda).abs() < 1e-9 && math::dist(&f.vector, &e.vector) < 1e-6);
        if !dup {
            found.push(e);
        }
    }
    found.sort_by(|a, b| b.lambda.total_cmp(&a.lambda));
    Ok(found)
}

/// The grid oracle matching `T`'s dimension, packaged like a solver report.
/// Only dimension 2 is marked complete.
pub fn zeig_oracle(t: &SymTensor, cfg: &SolverConfig) -> Result<SpectrumReport> {
    cfg.validate()?;
    let pairs = match t.dim() {
        2 => grid_oracle_n2(t)?,
        3 | 4 => grid_oracle_n3plus(t, DEFAULT_RESOLUTION)?,
        d => return Err(Error::DimensionMismatch { got: d, expected: 4 }),
    };
    let accepted: Vec<Eigenpair> = pairs.into_iter().filter(|p| p.residual < cfg.tol).collect();
    let pairs_accepted = accepted.len();
    let entries = dedup(accepted, t.order(), cfg.dedup_tol);
    let radius = entries.iter().fold(0.0f64, |r, e| r.max(e.lambda.abs()));
    Ok(SpectrumReport {
        order: t.order(),
        dim: t.dim(),
        z_spectral_radius: radius,
        objective_max: radius,
        entries,
        heuristic: t.dim() != 2,
        starts_run: 0,
        pairs_accepted,
        config: cfg.clone(),
    })
}

/// Distinct values of a set of eigenpairs, descending, merged within `tol`.
pub fn distinct_values(pairs: &[Eigenpair], tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    let mut out: Vec<f64> = Vec::new();
    for x in v {
        if out.last().is_none_or(|&l| l - x >= tol) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_matrix_on_circle() {
        let t = SymTensor::from_matrix(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let vals = distinct_values(&grid_oracle_n2(&t).unwrap(), 1e-9);
        assert_eq!(vals.len(), 2);
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rayleigh_stationary_values() {
        let t = SymTensor::diagonal(2, &[1.0, 2.0, 3.0]).unwrap();
        let vals = distinct_values(&grid_oracle_n3plus(&t, 500).unwrap(), 1e-9);
        assert_eq!(vals.len(), 3);
        for (v, w) in vals.iter().zip([3.0, 2.0, 1.0]) {
            assert!((v - w).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_dimension() {
        let t = SymTensor::zeros(3, 5).unwrap();
        assert!(grid_oracle_n2(&t).is_err());
        assert!(grid_oracle_n3plus(&t, 100).is_err());
    }

    #[test]
    fn hopf_grid_is_unit() {
        for p in hopf_grid(500) {
            assert!((math::norm(&p) - 1.0).abs() < 1e-14);
        }
    }
}
