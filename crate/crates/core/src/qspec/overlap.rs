use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embed::project_vector;
use crate::error::{Error, Result};
use crate::math;
use crate::tensor::ComplexSymTensor;
use crate::zsolve::SolverConfig;

/// Separate stream so the starts differ from the embedded solver's.
const STREAM: u64 = 0x6f76_6572_6c61_7000;

/// `(|Ψz^m|², Riemannian gradient)` at a unit `w = (x, y)`.
fn value_and_grad(psi: &ComplexSymTensor, w: &[f64]) -> (f64, Vec<f64>) {
    let m = psi.order() as f64;
    let z = project_vector(w).expect("even length");
    let c = psi.contract_m1(&z).expect("dimension");
    let p: Complex64 = c.iter().zip(&z).map(|(ci, zi)| ci * zi).sum();
    let val = p.norm_sqr();
    // ∂/∂xⱼ |P|² = 2 Re(P̄ m cⱼ), ∂/∂yⱼ |P|² = −2 Im(P̄ m cⱼ)
    let q: Vec<Complex64> = c.iter().map(|ci| p.conj() * ci * m).collect();
    let mut g: Vec<f64> = q.iter().map(|qi| 2.0 * qi.re).chain(q.iter().map(|qi| -2.0 * qi.im)).collect();
    let radial = math::dot(&g, w);
    for (gi, wi) in g.iter_mut().zip(w) {
        *gi -= radial * wi;
    }
    (val, g)
}

fn ascend(psi: &ComplexSymTensor, start: Vec<f64>, max_iter: usize) -> f64 {
    let mut w = start;
    let (mut val, mut g) = value_and_grad(psi, &w);
    let mut step = 1.0 / (1.0 + val);
    for _ in 0..max_iter {
        let gn = math::dot(&g, &g);
        if math::sqrt(gn) < 1e-12 * (1.0 + val) {
            break;
        }
        let mut moved = false;
        for _ in 0..60 {
            let trial: Vec<f64> = w.iter().zip(&g).map(|(wi, gi)| wi + step * gi).collect();
            let trial = math::normalized(&trial).expect("nonzero trial");
            let (tv, tg) = value_and_grad(psi, &trial);
            if tv >= val + 1e-4 * step * gn {
                moved = tv > val;
                w = trial;
                val = tv;
                g = tg;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    math::sqrt(val)
}

/// `max |Ψ z^m|` over the complex unit sphere by multistart Riemannian
/// gradient ascent over the `2n` real coordinates.
///
/// A stationary point of `|Ψz^m|` satisfies `Ψ z^{m−1} = μ z̄` with
/// `μ = Ψz^m`, and a phase rotation makes `μ` real, so the maximum is
/// `Q(Ψ)`. This route never builds the embedded tensor.
pub fn direct_overlap_max(psi: &ComplexSymTensor, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    if psi.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let n2 = 2 * psi.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ STREAM);
    let starts = cfg.starts_for(n2);
    let mut best = 0.0f64;
    for _ in 0..starts {
        let w = crate::zsolve::random_unit(&mut rng, n2);
        best = best.max(ascend(psi, w, cfg.max_iter));
    }
    Ok(best)
}
