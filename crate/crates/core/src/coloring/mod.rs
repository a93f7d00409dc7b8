//! Edge colourings, their combination over edge partitions, projection through
//! transform traces, and the constructive colourings of line graphs.

mod construct;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::GraphError;
use crate::line_graph::{LineGraph, LineGraphError};
use crate::triangles::{TransformStep, TransformTrace, TriangleError};
use crate::verify::VerifyError;

pub use construct::{
    color_iterated, color_iterated_cubic, color_single_triangle, color_thm31, color_thm32,
    color_triangle_tree, pendent_two_paths, star_coloring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("edge {edge} has color 0; colors start at 1")]
    ZeroColor { edge: usize },
    #[error("edge {edge} has color {color} outside the palette 1..={k}")]
    OutOfPalette { edge: usize, color: usize, k: usize },
    #[error("edge {0} belongs to more than one part")]
    Overlap(usize),
    #[error("edge {0} is not covered by any part")]
    Uncovered(usize),
    #[error("part {part} lists {edges} edges but colors {colors}")]
    PartLength {
        part: usize,
        edges: usize,
        colors: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("the line graph has fewer than two vertices")]
    TrivialLineGraph,
    #[error("packing component is not a triangle forest")]
    NotForest,
    #[error("edge {0} joins two structure vertices but is not a packing edge")]
    ChordPresent(usize),
    #[error("graph is not a single triangle with pendant edges: {0}")]
    NotSingleTriangle(&'static str),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("trace does not match the colouring: {0}")]
    TraceMismatch(String),
    #[error("construction invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    LineGraph(#[from] LineGraphError),
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A total map from edge ids to colours `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    k: usize,
}

impl EdgeColoring {
    /// Palette size is the largest colour present.
    pub fn new(colors: Vec<usize>) -> Result<Self, ColoringError> {
        let k = colors.iter().copied().max().unwrap_or(0);
        Self::with_palette(colors, k)
    }

    pub fn with_palette(colors: Vec<usize>, k: usize) -> Result<Self, ColoringError> {
        for (edge, &color) in colors.iter().enumerate() {
            if color == 0 {
                return Err(ColoringError::ZeroColor { edge });
            }
            if color > k {
                return Err(ColoringError::OutOfPalette { edge, color, k });
            }
        }
        Ok(EdgeColoring { colors, k })
    }

    pub fn uniform(edges: usize, color: usize) -> Self {
        EdgeColoring::new(vec![color; edges]).expect("uniform colour must be positive")
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, e: usize) -> usize {
        self.colors[e]
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Palette size `k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of distinct colours actually assigned.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }
}

/// The outcome of one construction, checked by the exact verifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringCertificate {
    pub bound_name: String,
    pub bound_value: usize,
    pub colors_used: usize,
    pub verified: bool,
    pub witness_failure: Option<(usize, usize)>,
}

/// A colouring of some of the edges: `coloring.color(i)` belongs to `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPart {
    pub edges: Vec<usize>,
    pub coloring: EdgeColoring,
}

impl ColoredPart {
    pub fn new(edges: Vec<usize>, colors: Vec<usize>) -> Result<Self, ColoringError> {
        Ok(ColoredPart {
            edges,
            coloring: EdgeColoring::new(colors)?,
        })
    }
}

/// Concatenates the parts' palettes: part `j` is shifted by `k₀ + … + k_{j−1}`.
///
/// The parts must partition `0..edge_count`.
pub fn combine_colorings(
    edge_count: usize,
    parts: &[ColoredPart],
) -> Result<EdgeColoring, ColoringError> {
    let mut colors = vec![0; edge_count];
    let mut offset = 0;
    for (j, part) in parts.iter().enumerate() {
        if part.edges.len() != part.coloring.edge_count() {
            return Err(ColoringError::PartLength {
                part: j,
                edges: part.edges.len(),
                colors: part.coloring.edge_count(),
            });
        }
        for (i, &e) in part.edges.iter().enumerate() {
            if e >= edge_count {
                return Err(GraphError::InvalidEdge(e).into());
            }
            if colors[e] != 0 {
                return Err(ColoringError::Overlap(e));
            }
            colors[e] = offset + part.coloring.color(i);
        }
        offset += part.coloring.k();
    }
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        return Err(ColoringError::Uncovered(e));
    }
    EdgeColoring::with_palette(colors, offset)
}

/// Carries a colouring of `L(final)` back to `L(source)` by replaying the trace.
///
/// An L-edge is tracked as the pair of G-edges it joins plus their shared
/// vertex. Operation 1 maps the `v`-side of the split edge to its new id;
/// Operation 2 keeps L-edges whose two G-edges stay together and drops the
/// rest, which receive colour 1.
pub fn project_coloring(
    trace: &TransformTrace,
    coloring: &EdgeColoring,
) -> Result<EdgeColoring, ColoringError> {
    let source = LineGraph::new(&trace.source);
    let target = LineGraph::new(&trace.final_graph);
    if coloring.edge_count() != target.graph.edge_count() {
        return Err(ColoringError::TraceMismatch(format!(
            "colouring has {} entries, L(final) has {} edges",
            coloring.edge_count(),
            target.graph.edge_count()
        )));
    }
    let mut colors = Vec::with_capacity(source.graph.edge_count());
    for (le, &(a, b)) in source.graph.edges().iter().enumerate() {
        let mut state = Some((source.edge_star[le], a, b));
        for step in &trace.steps {
            let Some((x, a, b)) = state else { break };
            state = match step {
                TransformStep::Op1 {
                    edge, v, v_edge, ..
                } => {
                    let remap = |f: usize| if f == *edge && x == *v { *v_edge } else { f };
                    Some((x, remap(a), remap(b)))
                }
                TransformStep::Op2 {
                    vertex,
                    new_vertex,
                    moved_edges,
                    ..
                } => {
                    if x != *vertex {
                        Some((x, a, b))
                    } else {
                        match (moved_edges.contains(&a), moved_edges.contains(&b)) {
                            (true, true) => Some((*new_vertex, a, b)),
                            (false, false) => Some((x, a, b)),
                            _ => None,
                        }
                    }
                }
            };
        }
        let color = match state {
            None => 1,
            Some((x, a, b)) => {
                let le2 = target.edge_for(a, b).ok_or_else(|| {
                    ColoringError::TraceMismatch(format!(
                        "edges {a} and {b} are not adjacent in the final graph"
                    ))
                })?;
                if target.edge_star[le2] != x {
                    return Err(ColoringError::TraceMismatch(format!(
                        "edges {a} and {b} meet at {} instead of {x}",
                        target.edge_star[le2]
                    )));
                }
                coloring.color(le2)
            }
        };
        colors.push(color);
    }
    EdgeColoring::with_palette(colors, coloring.k().max(1))
}
