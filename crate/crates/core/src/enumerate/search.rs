use rayon::prelude::*;
use serde::Serialize;

use super::{generate_with_workers, verify_extremal_structure, Certificate, Objective, SearchSpec};
use crate::error::{Error, Result};
use crate::graph::{graph6_encode, Graph};
use crate::spectral::dense::{dense_spectral_radius, jacobi_eigen, laplacian_matrix};
use crate::spectral::{algebraic_connectivity, spectral_radius, DEFAULT_TOL};

/// Graphs whose objective is within this of the best are re-evaluated with
/// the dense eigensolver.
pub const TIE_MARGIN: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-14;
/// After dense re-evaluation, values this close to the winner stay ties.
const RESOLVED_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedGraph {
    pub graph6: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub spec: SearchSpec,
    /// Canonically labeled.
    #[serde(skip)]
    pub winner: Graph,
    pub winner_graph6: String,
    pub objective_value: f64,
    /// Best objective among the other graphs, `None` if there are none.
    pub runner_up_value: Option<f64>,
    /// Graphs the dense re-evaluation could not separate from the winner.
    pub tie_set: Vec<RankedGraph>,
    pub graphs_considered: usize,
    /// Structure checks for the winner and every tie, when the search is
    /// over irregular graphs with an exact maximum degree.
    pub certificates: Vec<Certificate>,
}

impl ExtremalResult {
    pub fn is_unique(&self) -> bool {
        self.tie_set.is_empty()
    }
}

pub fn extremal_search(spec: &SearchSpec) -> Result<ExtremalResult> {
    extremal_search_with_workers(spec, 1)
}

/// Larger is better for both objectives.
fn score(objective: Objective, g: &Graph) -> Result<f64> {
    match objective {
        Objective::MaxSpectralRadius => Ok(spectral_radius(g, DEFAULT_TOL)?.rho),
        Objective::MinAlgebraicConnectivity => Ok(-algebraic_connectivity(g, DEFAULT_TOL)?),
    }
}

fn oracle_score(objective: Objective, g: &Graph) -> Result<f64> {
    match objective {
        Objective::MaxSpectralRadius => dense_spectral_radius(g, ORACLE_TOL),
        Objective::MinAlgebraicConnectivity => {
            Ok(-jacobi_eigen(&laplacian_matrix(g), ORACLE_TOL)?.values[1])
        }
    }
}

fn to_value(objective: Objective, score: f64) -> f64 {
    match objective {
        Objective::MaxSpectralRadius => score,
        Objective::MinAlgebraicConnectivity => -score,
    }
}

pub fn extremal_search_with_workers(spec: &SearchSpec, workers: usize) -> Result<ExtremalResult> {
    let graphs = generate_with_workers(spec, workers)?;
    if graphs.is_empty() {
        return Err(Error::EmptySearchSpace);
    }
    let objective = spec.objective;
    let scores: Vec<f64> = if workers == 1 {
        graphs
            .iter()
            .map(|g| score(objective, g))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            graphs
                .par_iter()
                .map(|g| score(objective, g))
                .collect::<Result<_>>()
        })?
    };
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut candidates = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        if scores[i] >= best - TIE_MARGIN {
            candidates.push((i, graph6_encode(g), oracle_score(objective, g)?));
        }
    }
    // Highest dense score first; equal scores in graph6 order.
    candidates.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| a.1.cmp(&b.1)));
    let (winner_index, winner_graph6, winner_score) = candidates[0].clone();
    let mut tie_set: Vec<RankedGraph> = candidates[1..]
        .iter()
        .filter(|c| c.2 >= winner_score - RESOLVED_MARGIN)
        .map(|c| RankedGraph {
            graph6: c.1.clone(),
            value: to_value(objective, c.2),
        })
        .collect();
    tie_set.sort_by(|a, b| a.graph6.cmp(&b.graph6));

    let runner_up = scores
        .iter()
        .enumerate()
        .filter(|(i, _)| !candidates.iter().any(|c| c.0 == *i))
        .map(|(_, &s)| s)
        .chain(candidates[1..].iter().map(|c| c.2))
        .fold(None, |acc: Option<f64>, s| {
            Some(acc.map_or(s, |a| a.max(s)))
        });

    let winner = graphs[winner_index].clone();
    let mut certificates = Vec::new();
    if objective == Objective::MaxSpectralRadius && spec.require_irregular && spec.max_degree_exact
    {
        certificates.push(verify_extremal_structure(&winner, spec.delta_max)?);
        for tie in &tie_set {
            let g = crate::graph::graph6_decode(&tie.graph6)?;
            certificates.push(verify_extremal_structure(&g, spec.delta_max)?);
        }
    }
    Ok(ExtremalResult {
        spec: *spec,
        winner,
        winner_graph6,
        objective_value: to_value(objective, winner_score),
        runner_up_value: runner_up.map(|s| to_value(objective, s)),
        tie_set,
        graphs_considered: graphs.len(),
        certificates,
    })
}
