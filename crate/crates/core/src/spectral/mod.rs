//! Spectral radius, Perron vector and the quadratic-form machinery used to
//! bound `Δ − ρ`.
//!
//! [`spectral_radius`] runs power iteration on `A + I`. The shift keeps the
//! iteration from oscillating on bipartite graphs, where `−ρ` is also an
//! eigenvalue. Graphs with a tiny spectral gap (long path-like graphs) stall
//! the power iteration; after a warm-up the iterate seeds a Lanczos
//! (Rayleigh–Ritz) solve, restarted until the residual `‖Ax − ρx‖∞` meets the
//! requested tolerance.

pub mod dense;
mod lanczos;

use serde::Serialize;

use crate::constructions::b_graph_mirror_pairs;
use crate::error::{domain, Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;
const WARMUP_ITERATIONS: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Unit Perron vector, entrywise positive.
    pub x: Vec<f64>,
    /// A vertex maximizing `x`.
    pub w_hat: usize,
    /// A vertex minimizing `x`.
    pub w_check: usize,
    /// Matrix-vector products spent.
    pub iterations: usize,
    /// `‖Ax − ρx‖∞`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticFormReport {
    /// `Σ_{uv∈E} (x_u − x_v)²`
    pub edge_term: f64,
    /// `Σ_v (Δ − d(v)) x_v²`
    pub deficiency_term: f64,
    pub total: f64,
}

pub(crate) fn adjacency_apply(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, slot) in out.iter_mut().enumerate() {
        *slot = g.neighbors(v).iter().map(|&w| x[w]).sum();
    }
}

fn residual_inf(g: &Graph, x: &[f64], rho: f64, ax: &mut [f64]) -> f64 {
    adjacency_apply(g, x, ax);
    ax.iter()
        .zip(x)
        .map(|(a, xi)| (a - rho * xi).abs())
        .fold(0.0, f64::max)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        domain(format!("tolerance must be positive and finite, got {tol}"))
    }
}

pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    check_tol(tol)?;
    let n = g.order();
    if n == 0 {
        return domain("graph has no vertices");
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(finish(vec![1.0], 0.0, 0, 0.0));
    }

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut ax = vec![0.0; n];
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    while iterations < WARMUP_ITERATIONS {
        adjacency_apply(g, &x, &mut ax);
        let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        residual = ax
            .iter()
            .zip(&x)
            .map(|(a, xi)| (a - rho * xi).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return Ok(finish(x, rho, iterations, residual));
        }
        let mut norm = 0.0;
        for (xi, ai) in x.iter_mut().zip(&ax) {
            *xi += ai;
            norm += *xi * *xi;
        }
        let norm = norm.sqrt();
        x.iter_mut().for_each(|xi| *xi /= norm);
        iterations += 1;
    }

    while iterations < MAX_ITERATIONS {
        let pair = lanczos::top_ritz_pair(g, &x, tol, MAX_ITERATIONS - iterations);
        iterations += pair.steps;
        let mut candidate = pair.vector;
        if candidate.iter().sum::<f64>() < 0.0 {
            candidate.iter_mut().for_each(|v| *v = -*v);
        }
        adjacency_apply(g, &candidate, &mut ax);
        let rho: f64 = candidate.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let r = residual_inf(g, &candidate, rho, &mut ax);
        if r <= tol {
            return Ok(finish(candidate, rho, iterations, r));
        }
        if r >= residual {
            // A restart that does not improve the residual will not converge.
            residual = residual.min(r);
            break;
        }
        residual = r;
        x = candidate;
    }
    Err(Error::NoConvergence {
        iterations,
        residual,
        tol,
    })
}

fn finish(x: Vec<f64>, rho: f64, iterations: usize, residual: f64) -> SpectralResult {
    let mut w_hat = 0;
    let mut w_check = 0;
    for (v, &xv) in x.iter().enumerate() {
        if xv > x[w_hat] {
            w_hat = v;
        }
        if xv < x[w_check] {
            w_check = v;
        }
    }
    SpectralResult {
        rho,
        x,
        w_hat,
        w_check,
        iterations,
        residual,
    }
}

/// `2 Σ_{uv∈E} z_u z_v / Σ_v z_v²`.
pub fn rayleigh_quotient(g: &Graph, z: &[f64]) -> Result<f64> {
    if z.len() != g.order() {
        return domain(format!(
            "vector has {} entries, graph has {} vertices",
            z.len(),
            g.order()
        ));
    }
    let norm2: f64 = z.iter().map(|v| v * v).sum();
    if norm2 <= 0.0 || !norm2.is_finite() {
        return domain("vector must be nonzero and finite");
    }
    let num: f64 = g.edges().map(|(u, v)| z[u] * z[v]).sum();
    Ok(2.0 * num / norm2)
}

/// Edge and deficiency terms of `Δ xᵀx − xᵀAx` for an arbitrary vector.
pub fn quadratic_form(g: &Graph, delta: usize, x: &[f64]) -> Result<QuadraticFormReport> {
    if x.len() != g.order() {
        return domain(format!(
            "vector has {} entries, graph has {} vertices",
            x.len(),
            g.order()
        ));
    }
    if delta < g.max_degree() {
        return domain(format!(
            "delta {delta} is below the maximum degree {}",
            g.max_degree()
        ));
    }
    let edge_term: f64 = g.edges().map(|(u, v)| (x[u] - x[v]).powi(2)).sum();
    let deficiency_term: f64 = (0..g.order())
        .map(|v| (delta - g.degree(v)) as f64 * x[v] * x[v])
        .sum();
    Ok(QuadraticFormReport {
        edge_term,
        deficiency_term,
        total: edge_term + deficiency_term,
    })
}

/// The decomposition of `Δ − ρ` for the Perron vector in `result`.
pub fn deficiency_identity(g: &Graph, result: &SpectralResult) -> Result<QuadraticFormReport> {
    quadratic_form(g, g.max_degree(), &result.x)
}

/// Test vector on `b_graph(2k)`: `z(u_i) = z(v_i) = sin((k − i)π/(2k))`
/// over the mirror pairs of the construction.
pub fn lemma5_test_vector(k: usize) -> Result<Vec<f64>> {
    if k < 3 {
        return domain(format!("test vector needs k >= 3, got {k}"));
    }
    let pairs = b_graph_mirror_pairs(2 * k)?;
    let mut z = vec![0.0; 2 * k];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let value = ((k - (i + 1)) as f64 * std::f64::consts::PI / (2 * k) as f64).sin();
        z[u] = value;
        z[v] = value;
    }
    Ok(z)
}

/// `G − {wu : w ∈ S} + {wv : w ∈ S}` for `S ⊆ N(u) \ N(v)`, `v ∉ S`.
pub fn rotate_edges(g: &Graph, u: usize, v: usize, s: &[usize]) -> Result<Graph> {
    let n = g.order();
    for w in [u, v].iter().chain(s) {
        if *w >= n {
            return Err(Error::VertexOutOfRange { vertex: *w, n });
        }
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return domain("rotation set lists a vertex twice");
    }
    for &w in s {
        if w == v || !g.has_edge(w, u) || g.has_edge(w, v) {
            return domain(format!(
                "vertex {w} is not in N({u}) \\ N({v}) minus {{{v}}}"
            ));
        }
    }
    let removed: Vec<_> = s.iter().map(|&w| (w, u)).collect();
    let added: Vec<_> = s.iter().map(|&w| (w, v)).collect();
    g.without_edges(&removed)?.with_edges(&added)
}

/// Second-smallest Laplacian eigenvalue, via Householder reduction and
/// Sturm bisection to `tol`.
pub fn algebraic_connectivity(g: &Graph, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if g.order() < 2 {
        return domain("algebraic connectivity needs at least two vertices");
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let t = dense::householder_tridiagonal(&dense::laplacian_matrix(g))?;
    t.eigenvalue(1, tol)
}

/// `a(p − q)² + bq² − abp²/(a + b)` for `a, b > 0`; never negative and zero
/// exactly when `q = ap/(a + b)`.
pub fn shi_inequality_gap(a: f64, b: f64, p: f64, q: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return domain(format!("weights must be positive, got a = {a}, b = {b}"));
    }
    Ok(a * (p - q).powi(2) + b * q * q - a * b * p * p / (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{b_graph, complete_bipartite, path};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn regular_graph_has_rho_equal_to_degree() {
        let r = spectral_radius(&complete_bipartite(3, 3).unwrap(), DEFAULT_TOL).unwrap();
        assert!(close(r.rho, 3.0, 1e-12));
        assert!(r.residual <= DEFAULT_TOL);
    }

    #[test]
    fn path_closed_form() {
        let r = spectral_radius(&path(4).unwrap(), DEFAULT_TOL).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 5.0).cos();
        assert!(close(r.rho, expected, 1e-12));
        assert!(close(r.x.iter().map(|v| v * v).sum::<f64>(), 1.0, 1e-12));
        assert!(r.x.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn b6_spectral_radius() {
        let r = spectral_radius(&b_graph(6).unwrap(), DEFAULT_TOL).unwrap();
        assert!(close(r.rho, 1.0 + 3f64.sqrt(), 1e-12));
        assert!(r.x[r.w_hat] >= r.x[r.w_check]);
    }

    #[test]
    fn long_path_needs_acceleration() {
        let g = path(400).unwrap();
        let r = spectral_radius(&g, DEFAULT_TOL).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 401.0).cos();
        assert!(close(r.rho, expected, 1e-12), "{} vs {expected}", r.rho);
        assert!(r.residual <= DEFAULT_TOL);
        assert!(r.iterations > WARMUP_ITERATIONS);
    }

    #[test]
    fn spectral_radius_errors() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(spectral_radius(&g, 1e-12), Err(Error::Disconnected));
        assert!(spectral_radius(&path(3).unwrap(), 0.0).is_err());
        assert!(spectral_radius(&Graph::empty(0), 1e-12).is_err());
        let single = spectral_radius(&Graph::empty(1), 1e-12).unwrap();
        assert_eq!(single.rho, 0.0);
    }

    #[test]
    fn rayleigh_quotient_cases() {
        let k33 = complete_bipartite(3, 3).unwrap();
        assert!(close(
            rayleigh_quotient(&k33, &[1.0; 6]).unwrap(),
            3.0,
            1e-15
        ));
        let p4 = path(4).unwrap();
        let r = spectral_radius(&p4, DEFAULT_TOL).unwrap();
        assert!(close(rayleigh_quotient(&p4, &r.x).unwrap(), r.rho, 1e-12));
        assert!(rayleigh_quotient(&p4, &[0.0; 4]).is_err());
        assert!(rayleigh_quotient(&p4, &[1.0; 3]).is_err());
    }

    #[test]
    fn deficiency_identity_examples() {
        let k33 = complete_bipartite(3, 3).unwrap();
        let r = spectral_radius(&k33, DEFAULT_TOL).unwrap();
        let q = deficiency_identity(&k33, &r).unwrap();
        assert!(q.edge_term.abs() < 1e-12 && q.deficiency_term.abs() < 1e-12);

        let p3 = path(3).unwrap();
        let r = spectral_radius(&p3, DEFAULT_TOL).unwrap();
        let q = deficiency_identity(&p3, &r).unwrap();
        assert!(close(q.total, 2.0 - 2f64.sqrt(), 1e-11));

        let b6 = b_graph(6).unwrap();
        let r = spectral_radius(&b6, DEFAULT_TOL).unwrap();
        let q = deficiency_identity(&b6, &r).unwrap();
        assert!(close(q.total, 2.0 - 3f64.sqrt(), 1e-11));

        let mut short = r.clone();
        short.x.pop();
        assert!(deficiency_identity(&b6, &short).is_err());
    }

    #[test]
    fn test_vector_norm_and_cap() {
        let z = lemma5_test_vector(3).unwrap();
        assert!(close(z.iter().map(|v| v * v).sum(), 2.0, 1e-14));
        let cap = (4.0 * 3.0 + 24.0) * (std::f64::consts::PI / 12.0).sin().powi(2) / 2.0;
        assert!(close(cap, 1.205_771_4, 1e-7));
        assert!(lemma5_test_vector(2).is_err());
    }

    #[test]
    fn test_vector_bounds_gap_on_b12() {
        let k = 6;
        let g = b_graph(2 * k).unwrap();
        let z = lemma5_test_vector(k).unwrap();
        let zz: f64 = z.iter().map(|v| v * v).sum();
        assert!(close(zz, (k - 1) as f64, 1e-12));
        let form = quadratic_form(&g, 3, &z).unwrap();
        let rho = spectral_radius(&g, DEFAULT_TOL).unwrap().rho;
        let ratio = form.total / zz;
        let cap = (4 * k + 24) as f64 * (std::f64::consts::PI / (4 * k) as f64).sin().powi(2)
            / (k - 1) as f64;
        assert!(3.0 - rho <= ratio + 1e-12);
        assert!(ratio <= cap + 1e-12);
        // Same statement through the Rayleigh quotient.
        let rq = rayleigh_quotient(&g, &z).unwrap();
        assert!(close(3.0 - rq, ratio, 1e-12));
        let bound = 3.0 - (4.0 * 12.0 + 48.0) / 10.0 * (std::f64::consts::PI / 24.0).sin().powi(2);
        assert!(rq >= bound - 1e-12);
    }

    #[test]
    fn rotation_examples() {
        let p4 = path(4).unwrap();
        assert_eq!(rotate_edges(&p4, 1, 3, &[]).unwrap(), p4);
        let rotated = rotate_edges(&p4, 1, 3, &[0]).unwrap();
        let expected = Graph::from_edges(4, &[(0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(rotated, expected);
        // 2 is adjacent to both 1 and 3.
        assert!(rotate_edges(&p4, 1, 3, &[2]).is_err());
        assert!(rotate_edges(&p4, 1, 3, &[0, 0]).is_err());
        assert!(rotate_edges(&p4, 1, 9, &[0]).is_err());
    }

    #[test]
    fn algebraic_connectivity_examples() {
        let c4 = complete_bipartite(2, 2).unwrap();
        assert!(close(
            algebraic_connectivity(&c4, 1e-12).unwrap(),
            2.0,
            1e-11
        ));
        assert!(close(
            algebraic_connectivity(&path(2).unwrap(), 1e-12).unwrap(),
            2.0,
            1e-11
        ));
        assert!(close(
            algebraic_connectivity(&path(3).unwrap(), 1e-12).unwrap(),
            1.0,
            1e-11
        ));
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(algebraic_connectivity(&g, 1e-12), Err(Error::Disconnected));
    }

    #[test]
    fn shi_examples() {
        assert_eq!(shi_inequality_gap(1.0, 1.0, 2.0, 1.0).unwrap(), 0.0);
        assert!(close(
            shi_inequality_gap(1.0, 2.0, 3.0, 0.0).unwrap(),
            3.0,
            1e-14
        ));
        assert!(shi_inequality_gap(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(shi_inequality_gap(1.0, -1.0, 1.0, 1.0).is_err());
    }
}
