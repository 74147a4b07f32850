use std::collections::{BTreeMap, HashSet};

use subcubic::bounds::bound_report;
use subcubic::enumerate::{generate, generate_with_workers, SearchSpec};
use subcubic::graph::{canonical_form, graph6_decode, graph6_encode, two_coloring};
use subcubic::spectral::DEFAULT_TOL;
use subcubic::Graph;

/// Class counts keyed by (maximum degree, irregular), by canonicalizing every
/// labeled graph on `n` vertices.
fn naive_counts(n: usize) -> BTreeMap<(usize, bool), usize> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = HashSet::new();
    let mut counts = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() || two_coloring(&g).is_none() {
            continue;
        }
        if seen.insert(canonical_form(&g).unwrap()) {
            *counts.entry((g.max_degree(), !g.is_regular())).or_insert(0) += 1;
        }
    }
    counts
}

#[test]
fn generator_matches_naive_oracle() {
    for n in 2..=7 {
        let naive = naive_counts(n);
        for delta in 1..n {
            for irregular in [false, true] {
                let mut spec = SearchSpec::irregular_bipartite(n, delta);
                spec.require_irregular = irregular;
                let generated = generate(&spec).unwrap();
                let expected: usize = naive
                    .iter()
                    .filter(|((d, irr), _)| *d == delta && (*irr || !irregular))
                    .map(|(_, c)| c)
                    .sum();
                assert_eq!(
                    generated.len(),
                    expected,
                    "n = {n}, delta = {delta}, irregular = {irregular}"
                );
            }
        }
    }
}

#[test]
fn connected_bipartite_totals_up_to_ten() {
    for (n, total) in [(9, 730), (10, 4032)] {
        let mut spec = SearchSpec::irregular_bipartite(n, n - 1);
        spec.max_degree_exact = false;
        spec.require_irregular = false;
        assert_eq!(
            generate_with_workers(&spec, 0).unwrap().len(),
            total,
            "n = {n}"
        );
    }
}

#[test]
fn output_is_canonical_and_distinct() {
    let graphs = generate(&SearchSpec::irregular_bipartite(9, 4)).unwrap();
    let mut forms = HashSet::new();
    for g in &graphs {
        let form = canonical_form(g).unwrap();
        assert_eq!(form.as_str(), graph6_encode(g));
        assert!(forms.insert(form));
        assert_eq!(&graph6_decode(&graph6_encode(g)).unwrap(), g);
        assert!(g.is_connected() && !g.is_regular() && g.max_degree() == 4);
    }
}

#[test]
fn every_generated_graph_satisfies_all_bounds() {
    for n in 4..=10 {
        for delta in 2..n {
            for g in generate_with_workers(&SearchSpec::irregular_bipartite(n, delta), 0).unwrap() {
                let r = bound_report(&g, DEFAULT_TOL).unwrap();
                assert!(r.all_satisfied(), "{}: {r:?}", graph6_encode(&g));
            }
        }
    }
}
