use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::graph::{bipartition, graph6_encode, Graph};
use crate::spectral::{spectral_radius, DEFAULT_TOL};

/// Entries of the Perron vector this close to the extreme value count as
/// extreme too, so every maximizer/minimizer pair is checked.
const EXTREME_MARGIN: f64 = 1e-9;

/// Structure checks expected of a spectral-radius maximizer among connected
/// irregular bipartite graphs with maximum degree `Δ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub graph6: String,
    pub delta: usize,
    /// Unsaturated vertices of each part.
    pub x_star: Vec<usize>,
    pub y_star: Vec<usize>,
    /// `|X* ∪ Y*| ≥ 2`.
    pub unsaturated_at_least_two: bool,
    /// Whether both parts have unsaturated vertices and there are at least
    /// three of them, so that `X* ∪ Y*` must induce a complete bipartite graph.
    pub complete_bipartite_applies: bool,
    pub complete_bipartite: bool,
    /// A non-adjacent pair from `X* × Y*`, when there is one.
    pub missing_edge: Option<(usize, usize)>,
    /// Vertices where the Perron vector is (numerically) largest/smallest.
    pub w_hat: Vec<usize>,
    pub w_check: Vec<usize>,
    /// Largest distance over all `(ŵ, w̌)` pairs.
    pub max_distance: usize,
    /// `2(n − 1)/Δ`.
    pub distance_limit: f64,
    pub distance_ok: bool,
    /// Every minimizer has degree below `Δ`.
    pub w_check_unsaturated: bool,
    pub passed: bool,
}

pub fn verify_extremal_structure(g: &Graph, delta: usize) -> Result<Certificate> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_regular() {
        return Err(Error::RegularGraph);
    }
    if g.max_degree() != delta {
        return domain(format!(
            "maximum degree is {}, expected {delta}",
            g.max_degree()
        ));
    }
    let parts = bipartition(g)?.ok_or(Error::NotBipartite)?;
    let n = g.order();

    let unsaturated_at_least_two = parts.x_star.len() + parts.y_star.len() >= 2;
    let complete_bipartite_applies = !parts.x_star.is_empty()
        && !parts.y_star.is_empty()
        && parts.x_star.len() + parts.y_star.len() >= 3;
    let missing_edge = parts
        .x_star
        .iter()
        .flat_map(|&x| parts.y_star.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| !g.has_edge(x, y));
    let complete_bipartite = missing_edge.is_none();

    let x = spectral_radius(g, DEFAULT_TOL)?.x;
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let w_hat: Vec<usize> = (0..n).filter(|&v| x[v] >= hi - EXTREME_MARGIN).collect();
    let w_check: Vec<usize> = (0..n).filter(|&v| x[v] <= lo + EXTREME_MARGIN).collect();
    let mut max_distance = 0;
    for &a in &w_hat {
        let dist = g.bfs_distances(a);
        for &b in &w_check {
            max_distance = max_distance.max(dist[b].expect("connected"));
        }
    }
    let distance_limit = 2.0 * (n - 1) as f64 / delta as f64;
    let distance_ok = max_distance as f64 <= distance_limit;
    let w_check_unsaturated = w_check.iter().all(|&v| g.degree(v) < delta);

    let passed = unsaturated_at_least_two
        && (!complete_bipartite_applies || complete_bipartite)
        && distance_ok
        && w_check_unsaturated;
    Ok(Certificate {
        graph6: graph6_encode(g),
        delta,
        x_star: parts.x_star,
        y_star: parts.y_star,
        unsaturated_at_least_two,
        complete_bipartite_applies,
        complete_bipartite,
        missing_edge,
        w_hat,
        w_check,
        max_distance,
        distance_limit,
        distance_ok,
        w_check_unsaturated,
        passed,
    })
}
