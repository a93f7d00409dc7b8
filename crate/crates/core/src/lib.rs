//! Rainbow edge-colourings of line graphs.
//!
//! Given a connected graph `G` and a set of edge-disjoint triangles, this
//! crate builds rainbow colourings of `L(G)` (and `L²(G)`) whose colour counts
//! meet the bounds `n₂ − t` (triangle-forest packings), `t + n₂′ + c` (any
//! packing), `n + 1` (iterated line graphs of cubic graphs) and `m − m₁`
//! (iterated line graphs in general). Every colouring is checked by an exact
//! rainbow-connectivity verifier, and small instances can be compared with
//! the exact rainbow connection number found by exhaustive search.
//!
//! Modules:
//! * [`graph`]: simple graphs, diameter, blocks, induced subgraphs, shrinking.
//! * [`line_graph`]: `L(G)`, iterated line graphs, star cliques, clique graphs.
//! * [`triangles`]: triangle packings, structure classification, Operations 1 and 2.
//! * [`coloring`]: the constructions, palette combination and trace projection.
//! * [`verify`]: the rainbow-connectivity checker and the `rc` oracle.
//! * [`families`], [`random`], [`io`]: generators and file formats.

pub mod coloring;
pub mod exec;
pub mod families;
pub mod graph;
pub mod io;
pub mod line_graph;
pub mod random;
pub mod triangles;
pub mod verify;

pub use coloring::{ColoringCertificate, ColoringError, EdgeColoring};
pub use exec::Execution;
pub use graph::{Graph, GraphError};
pub use line_graph::LineGraph;
pub use triangles::{PackingMode, Triangle, TrianglePacking};
