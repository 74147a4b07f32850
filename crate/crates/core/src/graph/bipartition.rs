use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Parts of a connected bipartite graph, with the unsaturated vertices
/// (degree below the maximum degree) of each part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x_star: Vec<usize>,
    pub y_star: Vec<usize>,
}

impl Bipartition {
    pub fn is_balanced(&self) -> bool {
        self.x.len() == self.y.len()
    }

    pub fn contains_x(&self, v: usize) -> bool {
        self.x.binary_search(&v).is_ok()
    }
}

/// Proper 2-coloring by BFS, for any graph; vertex 0 of every component gets
/// color 0 at its lowest-index vertex. `None` if an odd cycle exists.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// The bipartition of a connected graph, with vertex 0 placed in `x`.
///
/// Returns `Ok(None)` for non-bipartite graphs and `Err(Disconnected)` when
/// the bipartition would not be unique.
pub fn bipartition(g: &Graph) -> Result<Option<Bipartition>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let Some(color) = two_coloring(g) else {
        return Ok(None);
    };
    let delta = g.max_degree();
    let part = |c: u8| -> Vec<usize> { (0..g.order()).filter(|&v| color[v] == c).collect() };
    let x = part(0);
    let y = part(1);
    let x_star = x.iter().copied().filter(|&v| g.degree(v) < delta).collect();
    let y_star = y.iter().copied().filter(|&v| g.degree(v) < delta).collect();
    Ok(Some(Bipartition {
        x,
        y,
        x_star,
        y_star,
    }))
}
