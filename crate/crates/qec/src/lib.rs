//! Quadratic embedding constants of finite simple graphs.
//!
//! The quadratic embedding constant of a connected graph G is
//!
//! ```text
//! qec(G) = max { <f, D_G f> : <f, f> = 1, <e, f> = 0 }
//! ```
//!
//! where D_G is the shortest-path distance matrix and e the all-ones
//! vector. A graph embeds into Euclidean space with squared distances
//! matching its graph distances exactly when qec(G) <= 0 (its distance
//! matrix is then conditionally negative definite), and qec(G) >= -1 with
//! equality exactly for complete graphs.
//!
//! The crate computes the constant two independent ways and is built to
//! cross-verify them:
//!
//! * a numeric oracle ([`oracle::qec_oracle`]): the largest eigenvalue of
//!   the distance matrix compressed onto the hyperplane orthogonal to e;
//! * spectral formulas ([`formulas`]): closed forms for complete and
//!   complete bipartite graphs, stationary-candidate formulas for joins
//!   with a regular or complete multipartite operand, and scaling laws
//!   for Cartesian products with a complete or complete bipartite factor.
//!
//! [`catalog`] pins the verification corpus the `qec` CLI and the
//! acceptance suite run over.
//!
//! # Example
//!
//! ```
//! use qec::{qec_complete_bipartite, qec_oracle, Graph};
//!
//! let g = Graph::complete_bipartite(3, 3).unwrap();
//! let oracle = qec_oracle(&g).unwrap();
//! let formula = qec_complete_bipartite(3, 3).unwrap();
//! assert!((oracle.value - formula).abs() <= 1e-9);
//! assert_eq!(formula, 1.0); // K_{3,3} is not of QE class
//! ```

pub mod catalog;
mod error;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod secular;
pub mod spectral;

pub use error::{Error, Result};
pub use formulas::{
    p_roots, qec_cart_bipartite, qec_cart_complete, qec_complete, qec_complete_bipartite,
    qec_join_multipartite, qec_join_regular, LambdaSets, SecularP,
};
pub use graph::{DistanceMatrix, Graph, MultipartiteSpec};
pub use oracle::{
    conditional_extrema, is_qe_class, qec_join_adjacency, qec_oracle, quadratic_embedding, Branch,
    Method, QecResult, QE_CLASS_TOL,
};
