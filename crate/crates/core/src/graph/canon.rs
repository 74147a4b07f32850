//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine the vertex partition to an
//! equitable ordered partition, pick the first smallest non-singleton cell,
//! and branch on each of its vertices. Every leaf is a discrete partition and
//! therefore a relabeling; the canonical labeling is the leaf whose relabeled
//! adjacency matrix is lexicographically greatest.
//!
//! Two kinds of pruning keep highly symmetric inputs cheap:
//!
//! * a leaf equal to the first or the best leaf yields an automorphism, and
//!   the search jumps back to the level where the two paths diverge;
//! * children lying in one orbit of the automorphisms found so far that fix
//!   the current path pointwise are explored once.

use super::{graph6_encode, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`]. Rows are packed into one
/// `u64`, which bounds this at 64; practical cost is only tested up to 16.
pub const CANON_MAX_VERTICES: usize = 64;

/// Isomorphism-invariant byte string: the graph6 encoding of the canonically
/// relabeled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    /// Wraps the graph6 string of a graph that is already canonically labeled.
    pub(crate) fn from_canonical(graph6: String) -> Self {
        CanonicalForm(graph6.into_bytes())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

/// Canonical labeling: vertex `v` of `g` goes to position `perm[v]`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    let n = g.order();
    if n > CANON_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: CANON_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj: Vec<u64> = (0..n).map(|v| g.row_mask(v)).collect();
    let mut search = Search {
        adj,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    search.refine(&mut cells);
    search.explore(cells, &mut Vec::new());
    Ok(search.best.map(|leaf| leaf.labeling).unwrap_or_default())
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let perm = canonical_labeling(g)?;
    let relabeled = g.relabel(&perm)?;
    Ok(CanonicalForm(graph6_encode(&relabeled).into_bytes()))
}

struct Leaf {
    certificate: Vec<u64>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

struct Search {
    adj: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn mask_of(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search {
    /// Refines `cells` in place to the coarsest equitable ordered partition
    /// finer than it. Cells split into sub-cells ordered by neighbor count.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter = mask_of(&cells[s]);
                let mut next = Vec::with_capacity(cells.len() + 1);
                for cell in cells.iter() {
                    if cell.len() == 1 {
                        next.push(cell.clone());
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cell
                        .iter()
                        .map(|&v| ((self.adj[v] & splitter).count_ones(), v))
                        .collect();
                    keyed.sort_unstable();
                    let mut group = vec![keyed[0].1];
                    for w in keyed.windows(2) {
                        if w[1].0 != w[0].0 {
                            next.push(std::mem::take(&mut group));
                        }
                        group.push(w[1].1);
                    }
                    next.push(group);
                }
                if next.len() != cells.len() {
                    *cells = next;
                    changed = true;
                }
                s += 1;
            }
            if !changed {
                return;
            }
        }
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn explore(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.adj.len() {
            return self.visit_leaf(&cells, path);
        }
        let level = path.len();
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !tried.is_empty() && self.same_orbit_as_tried(v, &tried, path) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut child);
            path.push(v);
            let jump = self.explore(child, path);
            path.pop();
            if let Some(to) = jump {
                if to < level {
                    return Some(to);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let n = self.adj.len();
        let mut labeling = vec![0; n];
        for (pos, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let mut certificate = vec![0u64; n];
        for v in 0..n {
            let mut row = 0u64;
            let mut rest = self.adj[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                row |= 1 << labeling[w];
            }
            certificate[labeling[v]] = row;
        }
        let leaf = Leaf {
            certificate,
            labeling,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                certificate: leaf.certificate.clone(),
                labeling: leaf.labeling.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.certificate == first.certificate {
            let jump = common_prefix(&leaf.path, &first.path);
            let gamma = automorphism(&leaf.labeling, &first.labeling);
            self.generators.push(gamma);
            return Some(jump);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.certificate.cmp(&best.certificate) {
            std::cmp::Ordering::Equal => {
                let jump = common_prefix(&leaf.path, &best.path);
                let gamma = automorphism(&leaf.labeling, &best.labeling);
                self.generators.push(gamma);
                Some(jump)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Orbit test under the group generated by the stored automorphisms that
    /// fix `path` pointwise.
    fn same_orbit_as_tried(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (i, &j) in gamma.iter().enumerate() {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = root(&mut parent, v);
        tried.iter().any(|&w| root(&mut parent, w) == rv)
    }
}

/// The automorphism sending each vertex to the vertex holding the same
/// position in the other leaf.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inverse_to = vec![0; to.len()];
    for (v, &pos) in to.iter().enumerate() {
        inverse_to[pos] = v;
    }
    from.iter().map(|&pos| inverse_to[pos]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a)
            .flat_map(|x| (a..a + b).map(move |y| (x, y)))
            .collect();
        Graph::from_edges(a + b, &edges).unwrap()
    }

    /// Brute force over all n! relabelings: the maximum adjacency string.
    fn brute_force_form(g: &Graph) -> Vec<bool> {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        fn heap(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut Option<Vec<bool>>) {
            if k <= 1 {
                let n = perm.len();
                let mut inv = vec![0; n];
                for (v, &p) in perm.iter().enumerate() {
                    inv[p] = v;
                }
                let code: Vec<bool> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| g.has_edge(inv[i], inv[j]))
                    .collect();
                if best.as_ref().is_none_or(|b| code > *b) {
                    *best = Some(code);
                }
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, g, best);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                perm.swap(j, k - 1);
            }
        }
        heap(n, &mut perm, g, &mut best);
        best.unwrap()
    }

    #[test]
    fn path_relabeling_invariance() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn distinguishes_edge_deletion() {
        let k = complete_bipartite(3, 3);
        let ke = k.without_edges(&[(2, 5)]).unwrap();
        assert_ne!(canonical_form(&k).unwrap(), canonical_form(&ke).unwrap());
    }

    #[test]
    fn symmetric_graphs_finish_quickly() {
        let k = complete_bipartite(8, 8);
        let perm: Vec<usize> = (0..16).map(|v| (v * 5) % 16).collect();
        assert_eq!(
            canonical_form(&k).unwrap(),
            canonical_form(&k.relabel(&perm).unwrap()).unwrap()
        );
        let empty = Graph::empty(16);
        assert_eq!(
            canonical_form(&empty).unwrap().as_str(),
            "O".to_owned() + &"?".repeat(20)
        );
    }

    #[test]
    fn oversize_rejected() {
        assert_eq!(
            canonical_form(&Graph::empty(65)),
            Err(Error::TooLarge { n: 65, limit: 64 })
        );
    }

    #[test]
    fn agrees_with_brute_force_on_all_graphs_of_order_five() {
        // Two graphs get the same canonical form iff their brute-force
        // canonical strings coincide.
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        let mut by_form = std::collections::HashMap::new();
        let mut by_brute = std::collections::HashMap::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(5, &edges).unwrap();
            let form = canonical_form(&g).unwrap();
            let brute = brute_force_form(&g);
            let prev = by_form.entry(form.clone()).or_insert_with(|| brute.clone());
            assert_eq!(*prev, brute);
            let prev = by_brute.entry(brute).or_insert(form.clone());
            assert_eq!(*prev, form);
        }
        // 34 isomorphism classes of graphs on five vertices.
        assert_eq!(by_form.len(), 34);
    }
}
