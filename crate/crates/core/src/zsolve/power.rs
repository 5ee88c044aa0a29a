//! Shifted symmetric power iteration and Newton polishing.

use alloc::vec;
use alloc::vec::Vec;

use super::{Eigenpair, ShiftMode, SolverConfig, SolverKind};
use crate::error::{Error, Result};
use crate::linalg;
use crate::math;
use crate::tensor::SymTensor;

/// `m · max|orbit value| · n^{(m−2)/2}`.
pub fn auto_shift(t: &SymTensor) -> f64 {
    let (m, n) = (t.order() as f64, t.dim() as f64);
    let a = m * t.max_abs_value() * libm::pow(n, (m - 2.0) / 2.0);
    if a > 0.0 {
        a
    } else {
        1.0
    }
}

/// One step `w ↦ normalize(T w^{m−1} + α w)`.
pub fn shifted_power_step(t: &SymTensor, w: &[f64], alpha: f64) -> Result<Vec<f64>> {
    let mut g = t.contract_m1(w)?;
    for (gi, wi) in g.iter_mut().zip(w) {
        *gi += alpha * wi;
    }
    math::normalized(&g).ok_or(Error::DegenerateShift(alpha))
}

/// Newton's method on `T w^{m−1} = λw, wᵀw = 1` from `w0`.
///
/// Converges to the nearby stationary point whatever its type (maximum,
/// minimum or saddle). Returns `None` if the residual never drops below
/// `tol` within `max_steps` steps or the bordered Jacobian is singular.
pub fn newton_polish(t: &SymTensor, w0: &[f64], tol: f64, max_steps: usize) -> Option<Eigenpair> {
    let n = t.dim();
    let m = t.order() as f64;
    let mut w = math::normalized(w0)?;
    let mut best: Option<Eigenpair> = None;
    for _ in 0..=max_steps {
        let g = t.contract_m1(&w).ok()?;
        let lambda = math::dot(&g, &w);
        let res = math::eig_residual(&g, lambda, &w);
        if !res.is_finite() {
            return None;
        }
        if best.as_ref().is_none_or(|b| res < b.residual) {
            best = Some(Eigenpair {
                lambda,
                vector: w.clone(),
                residual: res,
                source: SolverKind::ShiftedPower,
            });
        }
        if res < tol * 1e-3 {
            break;
        }
        // bordered system [[H, −w], [−wᵀ, 0]] [dw; dλ] = [−r; 0]
        let h = t.contract_m2(&w).ok()?;
        let k = n + 1;
        let mut a = vec![0.0; k * k];
        for i in 0..n {
            for j in 0..n {
                a[i * k + j] = (m - 1.0) * h[i * n + j];
            }
            a[i * k + i] -= lambda;
            a[i * k + n] = -w[i];
            a[n * k + i] = -w[i];
        }
        let mut rhs: Vec<f64> = (0..n).map(|i| lambda * w[i] - g[i]).collect();
        rhs.push(0.0);
        linalg::solve(&mut a, &mut rhs, k)?;
        let next: Vec<f64> = w.iter().zip(&rhs).map(|(wi, d)| wi + d).collect();
        w = math::normalized(&next)?;
    }
    best.filter(|b| b.residual < tol)
}

pub(crate) struct Outcome {
    pub pair: Option<Eigenpair>,
    /// Largest `|T w^m|` over all iterates.
    pub objective_max: f64,
    /// No accepted step decreased the shifted objective.
    pub monotone: bool,
}

/// Runs the shifted power iteration on `sign · T` from `start`.
///
/// `sign = 1` ascends to a local maximum of `T w^m`, `sign = −1` descends to
/// a local minimum. Once the residual is small a Newton polish finishes the
/// job; the returned eigenpair always refers to `T` itself.
pub(crate) fn run_from(t: &SymTensor, sign: f64, start: &[f64], cfg: &SolverConfig) -> Outcome {
    let mut out = Outcome {
        pair: None,
        objective_max: 0.0,
        monotone: true,
    };
    let Some(mut w) = math::normalized(start) else {
        return out;
    };
    let alpha0 = match cfg.shift {
        ShiftMode::Auto => auto_shift(t),
        ShiftMode::Fixed(a) => a,
    };
    let mut alpha = alpha0;
    let signed = |w: &[f64]| -> Vec<f64> {
        let mut g = t.contract_m1(w).expect("dimension checked by caller");
        for gi in &mut g {
            *gi *= sign;
        }
        g
    };
    let mut g = signed(&w);
    let mut lambda = math::dot(&g, &w);
    out.objective_max = lambda.abs();
    let newton_gate = 1e-4 * (1.0 + lambda.abs().max(alpha0));
    let mut next_newton = 0;
    let mut stagnant = false;
    for it in 0..cfg.max_iter {
        let res = math::eig_residual(&g, lambda, &w);
        if stagnant && res < cfg.tol {
            out.pair = Some(Eigenpair {
                lambda: sign * lambda,
                vector: w,
                residual: res,
                source: SolverKind::ShiftedPower,
            });
            return out;
        }
        if res < newton_gate && it >= next_newton {
            if let Some(p) = newton_polish(t, &w, cfg.tol, 30) {
                if math::dist(&p.vector, &w) < 0.1 {
                    out.objective_max = out.objective_max.max(p.lambda.abs());
                    out.pair = Some(p);
                    return out;
                }
            }
            next_newton = it + 25;
        }
        // the shifted objective must not decrease; double α until it does not
        let (wn, gn, ln) = loop {
            let step: Vec<f64> = g.iter().zip(&w).map(|(gi, wi)| gi + alpha * wi).collect();
            if let Some(wn) = math::normalized(&step) {
                let gn = signed(&wn);
                let ln = math::dot(&gn, &wn);
                if ln >= lambda - 1e-14 * (lambda.abs() + alpha) {
                    break (wn, gn, ln);
                }
            }
            out.monotone = false;
            alpha *= 2.0;
            if alpha > 1e12 * alpha0 {
                return out;
            }
        };
        stagnant = (ln - lambda).abs() < cfg.tol / 10.0;
        w = wn;
        g = gn;
        lambda = ln;
        out.objective_max = out.objective_max.max(lambda.abs());
    }
    out
}
