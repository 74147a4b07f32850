use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("no path between vertices {0} and {1}")]
    Unreachable(usize, usize),

    #[error("graph has {n} vertices; this operation supports at most {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("malformed edge list: {0}")]
    EdgeList(String),

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("graph is regular; bounds for irregular graphs do not apply")]
    RegularGraph,

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("search space is empty")]
    EmptySearchSpace,

    #[error(
        "eigensolver did not converge after {iterations} iterations \
         (residual {residual:e}, requested {tol:e})"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
