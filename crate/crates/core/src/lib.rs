//! Branching and pseudo-branching decompositions of digraphs with a
//! degree-bounded last part, plus the density, flow and Hall machinery they
//! rest on.

pub mod decompose;
pub mod density;
pub mod digraph;
pub mod error;
pub mod families;
pub mod flow;
pub mod hall;
pub mod oracle;

/// Exact rational used for densities and ratios.
pub type Rational = num_rational::Ratio<i64>;

pub use decompose::{
    frank_decompose, hakimi_pseudoforest_decompose, ndt_branching_decompose, pseudo_ndt_decompose,
    verify_decomposition, Decomposition, DecompositionKind, DensityCertificate,
    HakimiDecomposition, PseudoOutcome, Violation,
};
pub use density::{fractional_arboricity, max_average_degree, DensityMode, DensityWitness};
pub use digraph::{ArcId, ArcSubset, Digraph, VertexId};
pub use error::{NdtError, Result};
pub use hall::{check_hall, extract_bounded_branching, HallInstance, HallViolation};
pub use oracle::{
    brute_decompose, brute_gamma, brute_mad, DecompositionQuery, OracleBudget, OracleVerdict,
};
