//! Isomorph-free generation of connected bipartite graphs with bounded
//! maximum degree, and exhaustive extremal search over them.
//!
//! Generation is canonical augmentation by vertex addition. A graph on `k+1`
//! vertices is produced from a graph on `k` vertices by adding a vertex whose
//! neighbours all lie in one part and all have spare degree. A child is kept
//! only when deleting its canonical vertex (the non-cut vertex with the
//! largest canonical label) gives back the parent's isomorphism class, so
//! each class has exactly one accepted parent. Children of one parent are
//! deduplicated by canonical form.
//!
//! The frontier is expanded level by level. The parallel path maps parents
//! with rayon and collects in order, so output is identical for any worker
//! count.

mod certificate;
mod search;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::{
    canonical_form, canonical_labeling, graph6_encode, two_coloring, CanonicalForm, Graph,
};

pub use certificate::{verify_extremal_structure, Certificate};
pub use search::{
    extremal_search, extremal_search_with_workers, ExtremalResult, RankedGraph, TIE_MARGIN,
};

/// Largest order accepted by [`generate`].
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaxSpectralRadius,
    MinAlgebraicConnectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub n: usize,
    pub delta_max: usize,
    /// Keep only graphs whose maximum degree equals `delta_max`.
    pub max_degree_exact: bool,
    pub require_irregular: bool,
    pub require_bipartite: bool,
    pub require_connected: bool,
    /// Keep only `k`-regular graphs.
    pub regularity: Option<usize>,
    pub objective: Objective,
}

impl SearchSpec {
    /// Connected irregular bipartite graphs of order `n` with maximum degree
    /// exactly `delta`, ranked by spectral radius.
    pub fn irregular_bipartite(n: usize, delta: usize) -> Self {
        SearchSpec {
            n,
            delta_max: delta,
            max_degree_exact: true,
            require_irregular: true,
            require_bipartite: true,
            require_connected: true,
            regularity: None,
            objective: Objective::MaxSpectralRadius,
        }
    }

    /// Connected `k`-regular bipartite graphs of order `n`, ranked by
    /// smallest algebraic connectivity.
    pub fn regular_bipartite(n: usize, k: usize) -> Self {
        SearchSpec {
            n,
            delta_max: k,
            max_degree_exact: true,
            require_irregular: false,
            require_bipartite: true,
            require_connected: true,
            regularity: Some(k),
            objective: Objective::MinAlgebraicConnectivity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_ORDER {
            return Err(Error::TooLarge {
                n: self.n,
                limit: MAX_ORDER,
            });
        }
        if self.n < 2 {
            return domain(format!("search needs n >= 2, got {}", self.n));
        }
        if self.delta_max < 1 || self.delta_max >= self.n {
            return domain(format!(
                "search needs 1 <= delta < n, got n = {}, delta = {}",
                self.n, self.delta_max
            ));
        }
        if !self.require_bipartite || !self.require_connected {
            return domain("only connected bipartite graphs can be generated");
        }
        if let Some(k) = self.regularity {
            if self.require_irregular {
                return domain("regularity and irregularity requested together");
            }
            if k < 1 || k > self.delta_max {
                return domain(format!("regularity {k} outside 1..={}", self.delta_max));
            }
        }
        Ok(())
    }

    fn accepts(&self, g: &Graph) -> bool {
        let max = g.max_degree();
        if self.max_degree_exact && max != self.delta_max {
            return false;
        }
        if self.require_irregular && g.is_regular() {
            return false;
        }
        match self.regularity {
            Some(k) => g.is_regular() && max == k,
            None => true,
        }
    }
}

struct Node {
    graph: Graph,
    form: CanonicalForm,
}

/// Every isomorphism class matching `spec` once, canonically labeled, in a
/// fixed order.
pub fn generate(spec: &SearchSpec) -> Result<Vec<Graph>> {
    generate_with_workers(spec, 1)
}

/// As [`generate`], expanding each level on `workers` threads; `0` uses the
/// available parallelism. The output does not depend on `workers`.
pub fn generate_with_workers(spec: &SearchSpec, workers: usize) -> Result<Vec<Graph>> {
    spec.validate()?;
    let all = if workers == 1 {
        grow(spec.n, spec.delta_max, false)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
        pool.install(|| grow(spec.n, spec.delta_max, true))
    };
    Ok(all.into_iter().filter(|g| spec.accepts(g)).collect())
}

fn grow(n: usize, delta: usize, parallel: bool) -> Vec<Graph> {
    let single = Graph::empty(1);
    let mut frontier = vec![Node {
        form: canonical_form(&single).expect("one vertex"),
        graph: single,
    }];
    for _ in 1..n {
        frontier = if parallel {
            frontier
                .par_iter()
                .map(|p| children(p, delta))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        } else {
            frontier.iter().flat_map(|p| children(p, delta)).collect()
        };
    }
    frontier.into_iter().map(|node| node.graph).collect()
}

fn children(parent: &Node, delta: usize) -> Vec<Node> {
    let g = &parent.graph;
    let color = two_coloring(g).expect("generated graphs are bipartite");
    let new_vertex = g.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for part in [0u8, 1] {
        let open: Vec<usize> = (0..g.order())
            .filter(|&v| color[v] == part && g.degree(v) < delta)
            .collect();
        for mask in 1u64..(1 << open.len()) {
            if mask.count_ones() as usize > delta {
                continue;
            }
            let neighbors: Vec<usize> = open
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let child = g.with_vertex(&neighbors).expect("valid neighbours");
            let perm = canonical_labeling(&child).expect("order within canonical limit");
            let canonical = child.relabel(&perm).expect("labeling is a permutation");
            let deleted = (0..canonical.order())
                .rev()
                .find(|&v| !canonical.is_cut_vertex(v))
                .expect("a connected graph has a non-cut vertex");
            let accepted = perm[new_vertex] == deleted
                || canonical_form(&canonical.without_vertex(deleted).expect("vertex exists"))
                    .expect("order within canonical limit")
                    == parent.form;
            if !accepted {
                continue;
            }
            let form = CanonicalForm::from_canonical(graph6_encode(&canonical));
            if seen.insert(form.clone()) {
                out.push(Node {
                    graph: canonical,
                    form,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::path;

    fn count(n: usize, delta: usize, exact: bool, irregular: bool) -> usize {
        let mut spec = SearchSpec::irregular_bipartite(n, delta);
        spec.max_degree_exact = exact;
        spec.require_irregular = irregular;
        generate(&spec).unwrap().len()
    }

    #[test]
    fn connected_bipartite_totals() {
        let expected = [(2, 1), (3, 1), (4, 3), (5, 5), (6, 17), (7, 44), (8, 182)];
        for (n, total) in expected {
            assert_eq!(count(n, n - 1, false, false), total, "n = {n}");
        }
    }

    #[test]
    fn counts_by_degree_and_irregularity() {
        assert_eq!(count(6, 3, true, true), 9);
        assert_eq!(count(6, 4, true, true), 4);
        assert_eq!(count(7, 3, true, true), 17);
        assert_eq!(count(7, 4, true, true), 20);
        assert_eq!(count(6, 3, true, false), 10);
    }

    #[test]
    fn only_path_on_four_vertices_with_degree_two() {
        let graphs = generate(&SearchSpec::irregular_bipartite(4, 2)).unwrap();
        assert_eq!(graphs.len(), 1);
        assert_eq!(
            canonical_form(&graphs[0]).unwrap(),
            canonical_form(&path(4).unwrap()).unwrap()
        );
    }

    #[test]
    fn order_two() {
        assert_eq!(count(2, 1, true, false), 1);
        assert_eq!(count(2, 1, true, true), 0);
    }

    #[test]
    fn parallel_matches_serial() {
        let spec = SearchSpec::irregular_bipartite(8, 3);
        assert_eq!(
            generate(&spec).unwrap(),
            generate_with_workers(&spec, 4).unwrap()
        );
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&SearchSpec::irregular_bipartite(13, 3)).is_err());
        assert!(generate(&SearchSpec::irregular_bipartite(5, 5)).is_err());
        assert!(generate(&SearchSpec::irregular_bipartite(1, 0)).is_err());
        let mut spec = SearchSpec::irregular_bipartite(6, 3);
        spec.require_connected = false;
        assert!(generate(&spec).is_err());
        spec = SearchSpec::irregular_bipartite(6, 3);
        spec.regularity = Some(3);
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn regular_mode() {
        // K_{3,3} and the 6-cycle are the connected regular bipartite graphs
        // on 6 vertices with degree 3 and 2.
        assert_eq!(
            generate(&SearchSpec::regular_bipartite(6, 3))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            generate(&SearchSpec::regular_bipartite(6, 2))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            generate(&SearchSpec::regular_bipartite(8, 3))
                .unwrap()
                .len(),
            1
        );
    }
}
