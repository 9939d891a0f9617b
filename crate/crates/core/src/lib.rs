//! Generic rigidity and combinatorial pseudo-triangulations of plane graphs.
//!
//! The pipeline: decide rigidity with the pebble game ([`rigidity`]), build a
//! generalized Laman CPT labelling ([`labelling`]), check it ([`cpt`]),
//! realize it as a pseudo-triangulation on an integer grid ([`stretch`]) and
//! render it ([`draw`]). [`surfaces`] extends the counting to closed
//! surfaces, and [`oracle`] holds brute-force cross-checks.
//!
//! Geometry is generic over the scalar through `num-traits`; the aliases
//! below name the concrete types used by the pipeline.

pub mod corpus;
pub mod cpt;
pub mod draw;
pub mod error;
pub mod geometry;
pub mod labelling;
pub mod linalg;
pub mod oracle;
pub mod plane_graph;
pub mod rigidity;
pub mod stretch;
pub mod surfaces;

pub use cpt::{CptLabelling, Label};
pub use error::{Error, Result};
pub use geometry::Point;
pub use plane_graph::{Angle, Dart, GraphFile, PlaneGraph, SubComplex};

/// Floating-point point.
pub type Point64 = geometry::Point<f64>;
/// Single-precision point.
pub type Point32 = geometry::Point<f32>;
/// Integer grid point, as produced by snapping.
pub type GridPoint = geometry::Point<i64>;
/// Floating-point drawing.
pub type Embedding64 = stretch::EmbeddedGraph<f64>;
/// Snapped integer drawing.
pub type GridEmbedding = stretch::EmbeddedGraph<i64>;
