//! Lanczos with full reorthogonalization for the top adjacency eigenpair.
//! Used to accelerate the shifted power iteration when the spectral gap is
//! small (long path-like graphs).

use crate::graph::Graph;
use crate::tridiagonal::SymTridiagonal;

use super::adjacency_apply;

pub(super) struct RitzPair {
    pub vector: Vec<f64>,
    pub steps: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

const CHECK_EVERY: usize = 8;

/// Runs at most `max_steps` Lanczos steps from `start` and returns the top
/// Ritz pair once its residual estimate `β_j |y_j|` drops below `tol / 10`,
/// the Krylov space becomes invariant, or the step budget runs out.
pub(super) fn top_ritz_pair(g: &Graph, start: &[f64], tol: f64, max_steps: usize) -> RitzPair {
    let n = g.order();
    let max_steps = max_steps.clamp(1, n);
    let norm = dot(start, start).sqrt();
    let mut basis: Vec<Vec<f64>> = vec![start.iter().map(|x| x / norm).collect()];
    let mut alpha = Vec::with_capacity(max_steps);
    let mut beta: Vec<f64> = Vec::with_capacity(max_steps);
    let mut w = vec![0.0; n];
    let scale = g.max_degree().max(1) as f64;
    loop {
        let j = basis.len() - 1;
        adjacency_apply(g, &basis[j], &mut w);
        let a = dot(&basis[j], &w);
        alpha.push(a);
        // Two passes of classical Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let b = dot(&w, &w).sqrt();
        let steps = j + 1;
        let invariant = b <= 1e-13 * scale;
        let last = steps == max_steps || invariant;
        if last || steps.is_multiple_of(CHECK_EVERY) {
            let t = SymTridiagonal::new(alpha.clone(), beta.clone())
                .expect("alpha has one more entry than beta");
            let theta = t
                .eigenvalue(steps - 1, f64::MIN_POSITIVE)
                .expect("index in range and positive tolerance");
            let y = t.eigenvector(theta);
            let estimate = b * y[steps - 1].abs();
            if last || estimate <= 0.1 * tol {
                let mut vector = vec![0.0; n];
                for (q, &yi) in basis.iter().zip(&y) {
                    vector.iter_mut().zip(q).for_each(|(v, qi)| *v += yi * qi);
                }
                let norm = dot(&vector, &vector).sqrt();
                vector.iter_mut().for_each(|v| *v /= norm);
                return RitzPair { vector, steps };
            }
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
}
