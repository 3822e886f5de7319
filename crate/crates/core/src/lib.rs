//! Finite models of tree amalgamations of graphs and certificates for
//! asymptotic-dimension bounds.

pub mod amalgam;
pub mod cover;
pub mod error;
pub mod graph;
pub mod quasi;
pub mod sampling;
pub mod theorem;
mod union_find;

pub use error::{BuildError, CoverError, GraphError, QiError, TheoremError};
pub use graph::{load_graph, BallSearch, FiniteGraph, GraphDocument, MetricView, VertexSubset, INF};
pub use quasi::{
    check_coarse_equivalence, check_quasi_isometry, fit_qi_constants, qi_constants_per_gamma, QiFit, Rational,
    StepTable, VertexMap,
};
pub use theorem::{run_certificate, theorem_bound, ProofParameters, TheoremCertificate, Verdict};
pub use union_find::UnionFind;
