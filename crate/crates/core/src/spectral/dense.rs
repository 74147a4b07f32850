//! Dense symmetric matrices: cyclic Jacobi eigensolver and Householder
//! reduction to tridiagonal form. Intended for the small graphs used as
//! oracles and for Laplacian spectra.

use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::tridiagonal::SymTridiagonal;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetric {
    n: usize,
    data: Vec<f64>,
}

impl DenseSymmetric {
    pub fn zeros(n: usize) -> Self {
        DenseSymmetric {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }
}

pub fn adjacency_matrix(g: &Graph) -> DenseSymmetric {
    let mut m = DenseSymmetric::zeros(g.order());
    for (u, v) in g.edges() {
        m.set(u, v, 1.0);
    }
    m
}

pub fn laplacian_matrix(g: &Graph) -> DenseSymmetric {
    let mut m = DenseSymmetric::zeros(g.order());
    for v in 0..g.order() {
        m.set(v, v, g.degree(v) as f64);
    }
    for (u, v) in g.edges() {
        m.set(u, v, -1.0);
    }
    m
}

/// Eigenvalues (ascending) with matching unit eigenvectors as columns,
/// `vectors[i][k]` being entry `i` of eigenvector `k`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// `tol · max(1, ‖A‖_F)`.
pub fn jacobi_eigen(m: &DenseSymmetric, tol: f64) -> Result<Eigen> {
    if tol.is_nan() || tol <= 0.0 {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let n = m.order();
    let mut a = m.clone();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let threshold = tol * a.frobenius().max(1.0);
    for _ in 0..MAX_SWEEPS {
        if a.off_diagonal_norm() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let tau = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a.data[k * n + p], a.data[k * n + q]);
                    a.data[k * n + p] = c * akp - s * akq;
                    a.data[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a.data[p * n + k], a.data[q * n + k]);
                    a.data[p * n + k] = c * apk - s * aqk;
                    a.data[q * n + k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    if a.off_diagonal_norm() > threshold {
        return Err(crate::error::Error::NoConvergence {
            iterations: MAX_SWEEPS,
            residual: a.off_diagonal_norm(),
            tol: threshold,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = v
        .iter()
        .map(|row| order.iter().map(|&k| row[k]).collect())
        .collect();
    Ok(Eigen { values, vectors })
}

/// Largest adjacency eigenvalue by Jacobi, for any graph (connected or not).
pub fn dense_spectral_radius(g: &Graph, tol: f64) -> Result<f64> {
    if g.order() == 0 {
        return domain("graph has no vertices");
    }
    let eig = jacobi_eigen(&adjacency_matrix(g), tol)?;
    Ok(*eig.values.last().expect("nonempty spectrum"))
}

/// Orthogonally similar tridiagonal matrix via Householder reflections.
pub fn householder_tridiagonal(m: &DenseSymmetric) -> Result<SymTridiagonal> {
    let n = m.order();
    if n == 0 {
        return domain("matrix has no rows");
    }
    let mut a = m.clone();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| a.get(i, k)).collect();
        let alpha = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        diag[k] = a.get(k, k);
        if alpha == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let sign = if x[0] >= 0.0 { 1.0 } else { -1.0 };
        off[k] = -sign * alpha;
        let mut v = x;
        v[0] += sign * alpha;
        let vtv: f64 = v.iter().map(|t| t * t).sum();
        let beta = 2.0 / vtv;
        let len = n - k - 1;
        // p = β A₂₂ v, q = p − (β/2)(vᵀp) v, A₂₂ ← A₂₂ − v qᵀ − q vᵀ
        let p: Vec<f64> = (0..len)
            .map(|i| {
                beta * (0..len)
                    .map(|j| a.get(k + 1 + i, k + 1 + j) * v[j])
                    .sum::<f64>()
            })
            .collect();
        let kappa = 0.5 * beta * v.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>();
        let q: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa * vi).collect();
        for i in 0..len {
            for j in i..len {
                let value = a.get(k + 1 + i, k + 1 + j) - v[i] * q[j] - q[i] * v[j];
                a.set(k + 1 + i, k + 1 + j, value);
            }
        }
    }
    if n >= 2 {
        diag[n - 2] = a.get(n - 2, n - 2);
        off[n - 2] = a.get(n - 1, n - 2);
    }
    diag[n - 1] = a.get(n - 1, n - 1);
    SymTridiagonal::new(diag, off)
}
