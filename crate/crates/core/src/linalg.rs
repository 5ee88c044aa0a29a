//! Small dense linear algebra: cyclic Jacobi for symmetric matrices, a
//! pivoted linear solve, and Gram–Schmidt.
//!
//! Matrices are row-major `Vec<f64>`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric `n × n` matrix by cyclic Jacobi
/// rotations.
///
/// Returns `(values, vectors)` sorted by descending eigenvalue; `vectors[k]`
/// is the unit eigenvector of `values[k]`. The upper triangle is read.
pub fn jacobi_eigh(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if a.len() != n * n {
        return Err(Error::DimensionMismatch {
            got: a.len(),
            expected: n * n,
        });
    }
    let mut s = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            s[i * n + j] = a[i * n + j];
            s[j * n + i] = a[i * n + j];
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = s.iter().map(|x| x * x).sum();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += s[i * n + j] * s[i * n + j];
            }
        }
        if off <= 1e-32 * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = s[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (2.0 * apq);
                let t = if libm::fabs(theta) > 1e150 {
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (libm::fabs(theta) + math::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let sn = t * c;
                for k in 0..n {
                    let skp = s[k * n + p];
                    let skq = s[k * n + q];
                    s[k * n + p] = c * skp - sn * skq;
                    s[k * n + q] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let spk = s[p * n + k];
                    let sqk = s[q * n + k];
                    s[p * n + k] = c * spk - sn * sqk;
                    s[q * n + k] = sn * spk + c * sqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[b * n + b].total_cmp(&s[a * n + a]));
    let values = order.iter().map(|&k| s[k * n + k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok((values, vectors))
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `1e-14` of the largest entry.
pub fn solve(a: &mut [f64], b: &mut [f64], n: usize) -> Option<()> {
    let big = a.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
    if big == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| libm::fabs(a[i * n + col]).total_cmp(&libm::fabs(a[j * n + col])))
            .unwrap();
        if libm::fabs(a[piv * n + col]) < 1e-14 * big {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        for r in col + 1..n {
            let f = a[r * n + col] / a[col * n + col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
            b[r] -= f * b[col];
        }
    }
    for r in (0..n).rev() {
        let mut acc = b[r];
        for k in r + 1..n {
            acc -= a[r * n + k] * b[k];
        }
        b[r] = acc / a[r * n + r];
    }
    Some(())
}

/// Modified Gram–Schmidt on a list of vectors. `None` if they are
/// numerically dependent.
pub fn orthonormalize(vectors: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut u = v.clone();
        for q in &out {
            let d = math::dot(&u, q);
            for (ui, qi) in u.iter_mut().zip(q) {
                *ui -= d * qi;
            }
        }
        if math::norm(&u) < 1e-10 * math::norm(v).max(1e-300) {
            return None;
        }
        out.push(math::normalized(&u)?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let (vals, vecs) = jacobi_eigh(&[3.0, 0.0, 0.0, -1.0], 2).unwrap();
        assert_eq!(vals, vec![3.0, -1.0]);
        assert_eq!(vecs[0], vec![1.0, 0.0]);
        assert_eq!(vecs[1], vec![0.0, 1.0]);
    }

    #[test]
    fn swap_matrix() {
        let (vals, vecs) = jacobi_eigh(&[0.0, 1.0, 1.0, 0.0], 2).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
        let r = 0.5f64.sqrt();
        assert!((vecs[0][0].abs() - r).abs() < 1e-15);
        assert!((vecs[0][0] - vecs[0][1]).abs() < 1e-15);
    }

    #[test]
    fn solve_small_system() {
        let mut a = vec![0.0, 2.0, 1.0, 1.0];
        let mut b = vec![4.0, 3.0];
        solve(&mut a, &mut b, 2).unwrap();
        assert!((b[0] - 1.0).abs() < 1e-15 && (b[1] - 2.0).abs() < 1e-15);
        let mut sing = vec![1.0, 2.0, 2.0, 4.0];
        assert!(solve(&mut sing, &mut [1.0, 1.0], 2).is_none());
    }

    #[test]
    fn gram_schmidt() {
        let q = orthonormalize(&[vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = math::dot(&q[i], &q[j]);
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        assert!(orthonormalize(&[vec![1.0, 2.0], vec![2.0, 4.0]]).is_none());
    }
}
