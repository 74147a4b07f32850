//! Builders for the named graph families.
//!
//! * `path(n)`: vertices `0..n` in order.
//! * `complete_bipartite(a, b)`: parts `0..a` and `a..a+b`.
//! * `h_graph(n, Δ)`: the extremal irregular bipartite graph for
//!   `Δ ≥ ⌊n/2⌋`, namely `K_{Δ,n−Δ}` when `2Δ > n`, `K_{Δ,Δ} − e` when
//!   `2Δ = n`, and `K_{Δ,Δ} − e` plus a pendant when `2Δ = n − 1`.
//! * `b_graph(n)`: the subcubic family grown from `K_{3,3} − e`.
//!
//! Every `K_{Δ,Δ} − e` deletes the edge between the last vertex of each part,
//! and a pendant is attached to the first-part endpoint of that edge.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::{bipartition, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Path { n: usize },
    CompleteBipartite { a: usize, b: usize },
    H { n: usize, delta: usize },
    B { n: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Path { n } => path(n),
            FamilySpec::CompleteBipartite { a, b } => complete_bipartite(a, b),
            FamilySpec::H { n, delta } => h_graph(n, delta),
            FamilySpec::B { n } => b_graph(n),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path { n } | FamilySpec::H { n, .. } | FamilySpec::B { n } => n,
            FamilySpec::CompleteBipartite { a, b } => a + b,
        }
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return domain(format!("path needs n >= 2, got {n}"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return domain(format!(
            "complete bipartite graph needs nonempty parts, got ({a}, {b})"
        ));
    }
    let edges: Vec<_> = (0..a)
        .flat_map(|x| (a..a + b).map(move |y| (x, y)))
        .collect();
    Graph::from_edges(a + b, &edges)
}

/// `K_{k,k}` without the edge `{k−1, 2k−1}`.
fn balanced_minus_edge(k: usize) -> Result<Graph> {
    complete_bipartite(k, k)?.without_edges(&[(k - 1, 2 * k - 1)])
}

pub fn h_graph(n: usize, delta: usize) -> Result<Graph> {
    if n < 4 {
        return domain(format!("H graph needs n >= 4, got {n}"));
    }
    if delta < n / 2 || delta >= n {
        return domain(format!(
            "H graph needs floor(n/2) <= delta <= n - 1, got n = {n}, delta = {delta}"
        ));
    }
    if 2 * delta > n {
        complete_bipartite(delta, n - delta)
    } else if 2 * delta == n {
        balanced_minus_edge(delta)
    } else {
        balanced_minus_edge(delta)?.with_vertex(&[delta - 1])
    }
}

pub fn b_graph(n: usize) -> Result<Graph> {
    if n < 6 {
        return domain(format!("B graph needs n >= 6, got {n}"));
    }
    let mut g = balanced_minus_edge(3)?;
    while g.order() < n {
        g = grow_b(&g)?;
    }
    Ok(g)
}

/// One step of the B recursion. Balanced: join the new vertex to the
/// lowest-index unsaturated vertex of the part containing vertex 0 (or of
/// the other part if that one is saturated). Unbalanced: join it to every
/// unsaturated vertex.
fn grow_b(g: &Graph) -> Result<Graph> {
    let parts = bipartition(g)?.expect("B graphs are bipartite");
    let unsaturated: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) < 3).collect();
    if parts.is_balanced() {
        let target = parts
            .x_star
            .first()
            .or(parts.y_star.first())
            .copied()
            .expect("irregular graph has an unsaturated vertex");
        g.with_vertex(&[target])
    } else {
        g.with_vertex(&unsaturated)
    }
}

/// Mirror pairs `(u_i, v_i)`, `i = 1..k`, of `b_graph(2k)`.
///
/// `u_1, u_2, u_3` are `0, 1, 2` and `v_1, v_2, v_3` are `3, 4, 5`; for
/// `i ≥ 4` the pair is the two vertices added at orders `2i−1` and `2i`,
/// ordered so that `u_i` is adjacent to `u_{i−1}`. Swapping every `u_i`
/// with `v_i` is an automorphism, and `u_k`, `v_k` are the two vertices of
/// degree 2.
pub fn b_graph_mirror_pairs(n: usize) -> Result<Vec<(usize, usize)>> {
    if n < 6 || n % 2 == 1 {
        return domain(format!("mirror pairs need even n >= 6, got {n}"));
    }
    let g = b_graph(n)?;
    let mut pairs = vec![(0, 3), (1, 4), (2, 5)];
    for i in 4..=n / 2 {
        let (a, b) = (2 * i - 2, 2 * i - 1);
        let prev_u = pairs[i - 2].0;
        pairs.push(if g.has_edge(a, prev_u) {
            (a, b)
        } else {
            (b, a)
        });
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn small_paths() {
        assert_eq!(path(2).unwrap().size(), 1);
        assert!(path(1).is_err());
        let p6 = path(6).unwrap();
        assert!(p6.is_connected() && !p6.is_regular());
        assert_eq!(p6.max_degree(), 2);
        assert!(bipartition(&p6).unwrap().is_some());
    }

    #[test]
    fn complete_bipartite_shapes() {
        assert_eq!(complete_bipartite(1, 1).unwrap().size(), 1);
        assert_eq!(complete_bipartite(2, 3).unwrap().size(), 6);
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn h_graph_cases() {
        assert_eq!(h_graph(5, 3).unwrap(), complete_bipartite(3, 2).unwrap());
        let h8 = h_graph(8, 4).unwrap();
        assert_eq!(h8.size(), 15);
        assert!(!h8.has_edge(3, 7));
        let h7 = h_graph(7, 3).unwrap();
        assert_eq!(h7.degree(6), 1);
        assert!(h7.has_edge(2, 6));
        assert!(h_graph(8, 3).is_err());
        assert!(h_graph(8, 8).is_err());
        assert!(h_graph(3, 2).is_err());
    }

    #[test]
    fn h_graph_unsaturated_counts() {
        for n in 4..=14 {
            for delta in n / 2..n {
                let g = h_graph(n, delta).unwrap();
                assert_eq!(g.max_degree(), delta);
                assert!(g.is_connected() && !g.is_regular());
                let parts = bipartition(&g).unwrap().unwrap();
                let unsaturated = parts.x_star.len() + parts.y_star.len();
                let expected = if 2 * delta > n { delta } else { 2 };
                assert_eq!(unsaturated, expected, "n = {n}, delta = {delta}");
            }
        }
    }

    #[test]
    fn small_b_graphs_match_h_graphs() {
        assert_eq!(
            canonical_form(&b_graph(6).unwrap()),
            canonical_form(&h_graph(6, 3).unwrap())
        );
        assert_eq!(
            canonical_form(&b_graph(7).unwrap()),
            canonical_form(&h_graph(7, 3).unwrap())
        );
        assert!(b_graph(5).is_err());
    }

    #[test]
    fn b_graph_growth_sequence() {
        let b8 = b_graph(8).unwrap();
        assert!(b8.has_edge(2, 6) && b8.has_edge(5, 7) && b8.has_edge(6, 7));
        let b10 = b_graph(10).unwrap();
        assert!(b10.has_edge(7, 8) && b10.has_edge(6, 9) && b10.has_edge(8, 9));
    }

    #[test]
    fn mirror_pairs_form_an_automorphism() {
        for n in (6..=40).step_by(2) {
            let g = b_graph(n).unwrap();
            let pairs = b_graph_mirror_pairs(n).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            for &(u, v) in &pairs {
                perm[u] = v;
                perm[v] = u;
            }
            assert_eq!(g.relabel(&perm).unwrap(), g, "n = {n}");
            let (uk, vk) = *pairs.last().unwrap();
            assert_eq!((g.degree(uk), g.degree(vk)), (2, 2));
            let twos = g.degrees().iter().filter(|&&d| d == 2).count();
            assert_eq!(twos, 2);
        }
    }
}
