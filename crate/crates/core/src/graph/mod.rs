//! Simple undirected graphs on labeled vertices `0..n`.
//!
//! A [`Graph`] is immutable once built. Adjacency is kept twice: sorted
//! neighbor lists for iteration and a packed bit matrix for constant-time
//! edge queries. Operations that "modify" a graph return a new value.

mod bipartition;
mod canon;
mod edgelist;
mod graph6;

pub use bipartition::{bipartition, two_coloring, Bipartition};
pub use canon::{canonical_form, canonical_labeling, CanonicalForm, CANON_MAX_VERTICES};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use graph6::{graph6_decode, graph6_encode};

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
    diameter: OnceLock<Option<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            words,
            bits: vec![0; words * n],
            diameter: OnceLock::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set_bit(u, v);
        self.set_bit(v, u);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
        Ok(())
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    fn finish(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Adjacency row of `v` as a bit mask. Only meaningful for `n <= 64`.
    pub(crate) fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.words]
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Shortest-path edge count between `u` and `v`.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        self.bfs_distances(u)[v].ok_or(Error::Unreachable(u, v))
    }

    /// Diameter by all-pairs BFS, computed once and cached. `None` when the
    /// graph is disconnected or has no vertices.
    pub fn diameter(&self) -> Option<usize> {
        *self.diameter.get_or_init(|| {
            if self.n == 0 {
                return None;
            }
            let mut best = 0;
            for s in 0..self.n {
                for d in self.bfs_distances(s) {
                    best = best.max(d?);
                }
            }
            Some(best)
        })
    }

    /// True when deleting `v` disconnects the remaining vertices.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        if self.n <= 2 {
            return false;
        }
        let start = if v == 0 { 1 } else { 0 };
        let mut seen = vec![false; self.n];
        seen[v] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count < self.n - 1
    }

    /// A copy of this graph with extra edges.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone_structure(self.n);
        for &(u, v) in extra {
            g.insert_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    /// A copy of this graph plus one new vertex `n` joined to `neighbors`.
    pub fn with_vertex(&self, neighbors: &[usize]) -> Result<Graph> {
        let mut g = self.clone_structure(self.n + 1);
        for &u in neighbors {
            g.insert_edge(u, self.n)?;
        }
        g.finish();
        Ok(g)
    }

    /// A copy of this graph without the listed edges.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Result<Graph> {
        for &(u, v) in removed {
            if !self.has_edge(u, v) {
                return Err(Error::Domain(format!("edge {{{u}, {v}}} is not present")));
            }
        }
        let keep: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| {
                !removed
                    .iter()
                    .any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v))
            })
            .collect();
        Graph::from_edges(self.n, &keep)
    }

    fn clone_structure(&self, n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.set_bit(u, v);
            g.set_bit(v, u);
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        g.m = self.m;
        g
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Domain(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain("relabeling is not a permutation".into()));
            }
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            if index[v] != usize::MAX {
                return Err(Error::Domain(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edges(vertices.len(), &edges)
    }

    /// The graph with vertex `v` deleted; later vertices shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<Graph> {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
