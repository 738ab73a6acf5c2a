//! Constructive tools around the size Ramsey numbers `r(K_s, G)`.
//!
//! Colorings follow one convention throughout: red is the forbidden
//! clique side (`H`, usually `K_s`), blue is the side that must host `G`.

pub mod bits;
pub mod bounds;
pub mod construct;
pub mod density;
pub mod detect;
pub mod embed;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod format;
pub mod graph;

pub use bits::VertexSet;
pub use density::{density, rho_star, Rational};
pub use detect::{CliquePacking, EmbeddingMap, PackingMode, Search};
pub use error::{Error, Result};
pub use extremal::{union_of_cliques, UnionOfCliques};
pub use graph::{Color, Graph, TwoColoring};
