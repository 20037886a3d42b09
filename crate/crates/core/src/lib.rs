//! Effective resistance and node resistance curvature on finite weighted
//! graphs, with exact rational arithmetic and closed forms for grids and
//! ladders.
//!
//! Everything numeric is generic over [`Scalar`]: [`Rational`] for exact
//! results, `f64` for large graphs.
//!
//! ```
//! use rescurv::{graph_node_curvatures, parse_shorthand, Rational};
//!
//! let grid = parse_shorthand("P3xP4").unwrap().graph();
//! let p = graph_node_curvatures::<Rational>(&grid).unwrap();
//! assert_eq!(p.sum(), Rational::from_integer(1.into()));
//! ```

pub mod bounds;
pub mod curvature;
pub mod error;
pub mod export;
pub mod generators;
pub mod graph;
pub mod grids;
pub mod laws;
pub mod matrix;
pub mod poly;
pub mod products;
pub mod scalar;
pub mod shorthand;
pub mod spectral;

pub use curvature::{graph_curvature, graph_node_curvatures, node_curvatures, sign_classify, CurvatureVector, Sign};
pub use error::{Error, Result};
pub use graph::{Edge, WeightedGraph};
pub use matrix::Matrix;
pub use products::{cartesian_product, ProductDescriptor, VertexLabel};
pub use scalar::{parse_rational, Backend, Rational, Scalar};
pub use shorthand::{load_input, parse_shorthand};
pub use spectral::{
    effective_resistance, eigensystem, graph_resistances, laplacian, pseudoinverse, resistance_matrix, EigenSystem,
    Laplacian, Pseudoinverse, ResistanceMatrix,
};
