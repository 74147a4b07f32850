//! Closed-form lower bounds on `Δ − ρ` and per-graph reports checking them.
//!
//! All the lower bounds are strict inequalities. A report marks a strict
//! bound satisfied only when the numerical gap clears it by
//! [`STRICT_MARGIN`]` · Δ`, which is well above the solver's error in `ρ`.

use serde::Serialize;

use crate::constructions::b_graph;
use crate::error::{domain, Error, Result};
use crate::graph::{bipartition, canonical_form, Graph, CANON_MAX_VERTICES};
use crate::spectral::spectral_radius;

pub const STRICT_MARGIN: f64 = 1e-12;

/// `1/(2n(nΔ − 1)Δ²)`, valid for connected irregular graphs.
pub fn stevanovic_bound(n: usize, delta: usize) -> Result<f64> {
    if n < 2 || delta < 1 {
        return domain(format!("needs n >= 2 and delta >= 1, got ({n}, {delta})"));
    }
    let (n, d) = (n as f64, delta as f64);
    Ok(1.0 / (2.0 * n * (n * d - 1.0) * d * d))
}

/// `1/(nD)` for diameter `D`, valid for connected irregular graphs.
pub fn cioaba_bound(n: usize, diameter: usize) -> Result<f64> {
    if n < 1 || diameter < 1 {
        return domain(format!("needs n >= 1 and D >= 1, got ({n}, {diameter})"));
    }
    Ok(1.0 / (n as f64 * diameter as f64))
}

/// `2Δ/(n(4n + Δ − 4))`, valid for connected irregular bipartite graphs.
pub fn new_bipartite_bound(n: usize, delta: usize) -> Result<f64> {
    if n < 2 || delta < 2 {
        return domain(format!("needs n >= 2 and delta >= 2, got ({n}, {delta})"));
    }
    let (n, d) = (n as f64, delta as f64);
    Ok(2.0 * d / (n * (4.0 * n + d - 4.0)))
}

/// `√m`, an upper bound on `ρ` for bipartite graphs with `m` edges.
pub fn sqrt_size_bound(m: usize) -> f64 {
    (m as f64).sqrt()
}

/// `(4sin²(π/(2n+2)), (4n+48)/(n−2) · sin²(π/(2n)))`, bracketing `3 − ρ(B_n)`
/// for even `n ≥ 6`.
pub fn lemma5_bounds(n: usize) -> Result<(f64, f64)> {
    if n < 6 || n % 2 == 1 {
        return domain(format!("bracket needs even n >= 6, got {n}"));
    }
    let pi = std::f64::consts::PI;
    let nf = n as f64;
    let lower = 4.0 * (pi / (2.0 * nf + 2.0)).sin().powi(2);
    let upper = (4.0 * nf + 48.0) / (nf - 2.0) * (pi / (2.0 * nf)).sin().powi(2);
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub delta: usize,
    pub m: usize,
    pub diameter: usize,
    pub bipartite: bool,
    pub rho: f64,
    pub gap: f64,
    pub stevanovic: f64,
    pub stevanovic_ok: bool,
    pub cioaba: f64,
    pub cioaba_ok: bool,
    /// Only for bipartite graphs.
    pub new_bound: Option<f64>,
    pub new_bound_ok: Option<bool>,
    pub sqrt_m: f64,
    pub sqrt_m_ok: Option<bool>,
    /// Only for `B_n` with even `n`.
    pub lemma5_lower: Option<f64>,
    pub lemma5_upper: Option<f64>,
    pub lemma5_ok: Option<bool>,
}

impl BoundReport {
    /// True when every applicable bound holds.
    pub fn all_satisfied(&self) -> bool {
        self.stevanovic_ok
            && self.cioaba_ok
            && self.new_bound_ok.unwrap_or(true)
            && self.sqrt_m_ok.unwrap_or(true)
            && self.lemma5_ok.unwrap_or(true)
    }
}

/// Whether `g` is `B_n`, either exactly as built or up to isomorphism.
pub fn is_b_graph(g: &Graph) -> bool {
    let n = g.order();
    if n < 6 || g.max_degree() != 3 {
        return false;
    }
    let Ok(b) = b_graph(n) else { return false };
    if b.size() != g.size() {
        return false;
    }
    if &b == g {
        return true;
    }
    n <= CANON_MAX_VERTICES && canonical_form(&b).ok() == canonical_form(g).ok()
}

pub fn bound_report(g: &Graph, tol: f64) -> Result<BoundReport> {
    if g.is_regular() {
        return Err(Error::RegularGraph);
    }
    let spec = spectral_radius(g, tol)?;
    let n = g.order();
    let delta = g.max_degree();
    let m = g.size();
    let diameter = g.diameter().ok_or(Error::Disconnected)?;
    let bipartite = bipartition(g)?.is_some();
    let rho = spec.rho;
    let gap = delta as f64 - rho;
    let margin = STRICT_MARGIN * delta as f64;
    let strictly_above = |bound: f64| gap > bound + margin;

    let stevanovic = stevanovic_bound(n, delta)?;
    let cioaba = cioaba_bound(n, diameter)?;
    let new_bound = if bipartite {
        Some(new_bipartite_bound(n, delta)?)
    } else {
        None
    };
    let sqrt_m = sqrt_size_bound(m);
    let (lemma5_lower, lemma5_upper, lemma5_ok) = if n.is_multiple_of(2) && is_b_graph(g) {
        let (lo, hi) = lemma5_bounds(n)?;
        (
            Some(lo),
            Some(hi),
            Some(lo <= gap + margin && gap <= hi + margin),
        )
    } else {
        (None, None, None)
    };
    Ok(BoundReport {
        n,
        delta,
        m,
        diameter,
        bipartite,
        rho,
        gap,
        stevanovic,
        stevanovic_ok: strictly_above(stevanovic),
        cioaba,
        cioaba_ok: strictly_above(cioaba),
        new_bound,
        new_bound_ok: new_bound.map(strictly_above),
        sqrt_m,
        sqrt_m_ok: bipartite.then_some(rho <= sqrt_m + margin),
        lemma5_lower,
        lemma5_upper,
        lemma5_ok,
    })
}
