use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point is not in the lattice")]
    NotInLattice,

    #[error("simplex is degenerate")]
    DegenerateSimplex,

    #[error("inequality is not valid on the polytope")]
    InvalidFacet,

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("polytope is not compressed")]
    NotCompressed,

    #[error("graph has a K5 minor")]
    HasK5Minor,

    #[error("complex is not a graph (a facet has more than two vertices)")]
    NotAGraph,

    #[error("matrix is not homogeneous: no w with w^T A_j = 1 for all columns")]
    Inhomogeneous,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
