//! Constructive rainbow colourings of `L(G)` and `L²(G)`.
//!
//! Everything is built from star cliques `⟨S(v)⟩`, which partition the edges
//! of a line graph. A triangle-tree component with `tᵢ` triangles colours the
//! stars of its `2tᵢ + 1` vertices with `tᵢ + 1` colours; every other inner
//! vertex's star gets one fresh colour.

use std::collections::{BTreeSet, HashMap};

use super::{
    combine_colorings, project_coloring, ColoredPart, ColoringCertificate, ColoringError,
    EdgeColoring,
};
use crate::graph::Graph;
use crate::line_graph::LineGraph;
use crate::triangles::{build_transformed, enumerate_triangles, Triangle, TrianglePacking};
use crate::verify::{is_rainbow_connected, RainbowCheck};

/// Colours `⟨S(u)⟩, ⟨S(v)⟩, ⟨S(w)⟩` for one triangle of a graph whose other
/// edges at `u, v, w` are pendant, with colours 1 and 2.
///
/// With `u < v < w`, `e₁ = uv`, `e₂ = vw`, `e₃ = uw`: at `u` the L-edges
/// touching `e₁` get 1 and those touching `e₃` get 2, and cyclically at `v`
/// (`e₂`/`e₁`) and `w` (`e₃`/`e₂`). The L-edge between two triangle edges
/// touches both and takes 2, as does every pendant–pendant L-edge.
fn color_base(g: &Graph, lg: &LineGraph, tri: &Triangle, out: &mut HashMap<usize, usize>) {
    let [u, v, w] = tri.vertices;
    let e1 = g.edge_between(u, v).unwrap();
    let e2 = g.edge_between(v, w).unwrap();
    let e3 = g.edge_between(u, w).unwrap();
    for (x, first, second) in [(u, e1, e3), (v, e2, e1), (w, e3, e2)] {
        for &le in &lg.star_edges[x] {
            let (a, b) = lg.graph.endpoints(le);
            let touches = |e| lg.edge_to_vertex[e] == a || lg.edge_to_vertex[e] == b;
            let color = if touches(second) {
                2
            } else if touches(first) {
                1
            } else {
                2
            };
            out.insert(le, color);
        }
    }
}

/// Recursive leaf-peeling colouring; returns the number of colours used.
fn color_tree(
    g: &Graph,
    lg: &LineGraph,
    tris: &[Triangle],
    out: &mut HashMap<usize, usize>,
) -> Result<usize, ColoringError> {
    if tris.len() == 1 {
        color_base(g, lg, &tris[0], out);
        return Ok(2);
    }
    let shared_count = |i: usize, x: usize| {
        tris.iter()
            .enumerate()
            .any(|(j, t)| j != i && t.contains(x))
    };
    let (leaf, u) = tris
        .iter()
        .enumerate()
        .find_map(|(i, t)| {
            let shared: Vec<usize> = t
                .vertices
                .iter()
                .copied()
                .filter(|&x| shared_count(i, x))
                .collect();
            (shared.len() == 1).then(|| (i, shared[0]))
        })
        .ok_or(ColoringError::NotForest)?;
    let rest: Vec<Triangle> = tris
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != leaf)
        .map(|(_, t)| t.clone())
        .collect();
    let h = color_tree(g, lg, &rest, out)?;

    let mut others = tris[leaf].vertices.iter().copied().filter(|&x| x != u);
    let (v, w) = (others.next().unwrap(), others.next().unwrap());
    let e1 = g.edge_between(u, w).unwrap();
    let e2 = g.edge_between(u, v).unwrap();
    let e3 = g.edge_between(v, w).unwrap();
    let fresh = h + 1;
    let (c1, c2) = (1, 2);
    for (x, new_side, old_color) in [(w, e1, c1), (v, e2, c2)] {
        for &le in &lg.star_edges[x] {
            let (a, b) = lg.graph.endpoints(le);
            let touches = |e| lg.edge_to_vertex[e] == a || lg.edge_to_vertex[e] == b;
            let color = if touches(new_side) {
                fresh
            } else if touches(e3) {
                old_color
            } else {
                fresh
            };
            out.insert(le, color);
        }
    }
    Ok(fresh)
}

/// Colours the star cliques of one triangle-tree component with at most
/// `tᵢ + 1` colours.
///
/// `g` must already have its chords split (no non-packing edge between two
/// component vertices). The returned part covers exactly the L-edges of the
/// component vertices' stars.
pub fn color_triangle_tree(
    g: &Graph,
    lg: &LineGraph,
    component: &[Triangle],
) -> Result<ColoredPart, ColoringError> {
    if component.is_empty() {
        return Err(ColoringError::NotForest);
    }
    let vertices: BTreeSet<usize> = component.iter().flat_map(|t| t.vertices).collect();
    let packing = TrianglePacking::classify(g, component.to_vec())?;
    if packing.c != 1 || !packing.is_forest() {
        return Err(ColoringError::NotForest);
    }
    let packed: BTreeSet<usize> = packing.edge_set().into_iter().collect();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if vertices.contains(&a) && vertices.contains(&b) && !packed.contains(&e) {
            return Err(ColoringError::ChordPresent(e));
        }
    }
    let mut out = HashMap::new();
    color_tree(g, lg, component, &mut out)?;
    let mut edges: Vec<usize> = vertices
        .iter()
        .flat_map(|&x| lg.star_edges[x].iter().copied())
        .collect();
    edges.sort_unstable();
    if edges.len() != out.len() {
        return Err(ColoringError::Invariant(format!(
            "tree colouring touched {} L-edges, the stars hold {}",
            out.len(),
            edges.len()
        )));
    }
    let colors = edges.iter().map(|e| out[e]).collect();
    ColoredPart::new(edges, colors)
}

/// The two-colour scheme on `L(G)` for a graph made of one triangle plus
/// pendant edges at its corners.
pub fn color_single_triangle(g: &Graph, lg: &LineGraph) -> Result<EdgeColoring, ColoringError> {
    let tris = enumerate_triangles(g);
    if tris.len() != 1 {
        return Err(ColoringError::NotSingleTriangle(
            "expected exactly one triangle",
        ));
    }
    let tri = &tris[0];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if tri.has_edge(e) {
            continue;
        }
        let pendant_at_corner =
            (g.degree(a) == 1 && tri.contains(b)) || (g.degree(b) == 1 && tri.contains(a));
        if !pendant_at_corner {
            return Err(ColoringError::NotSingleTriangle(
                "every other edge must be pendant at a triangle vertex",
            ));
        }
    }
    let part = color_triangle_tree(g, lg, std::slice::from_ref(tri))?;
    combine_colorings(lg.graph.edge_count(), &[part])
}

/// One fresh colour per star clique of each inner vertex, in vertex order.
pub fn star_coloring(g: &Graph, lg: &LineGraph) -> EdgeColoring {
    let mut colors = vec![0; lg.graph.edge_count()];
    let mut next = 0;
    for x in g.degree_profile().inner_vertices {
        next += 1;
        for &le in &lg.star_edges[x] {
            colors[le] = next;
        }
    }
    EdgeColoring::with_palette(colors, next).expect("stars partition the line graph's edges")
}

/// Colours `L(h)` for a graph whose packing is a chord-free triangle forest.
fn color_forest_structure(
    h: &Graph,
    lh: &LineGraph,
    packing: &TrianglePacking,
) -> Result<EdgeColoring, ColoringError> {
    let mut parts = Vec::new();
    for comp in &packing.components {
        let tris: Vec<Triangle> = comp
            .triangles
            .iter()
            .map(|&i| packing.triangles[i].clone())
            .collect();
        parts.push(color_triangle_tree(h, lh, &tris)?);
    }
    for x in h.degree_profile().inner_vertices {
        if !packing.covered_vertices.contains(&x) {
            let edges = lh.star_edges[x].clone();
            let ones = vec![1; edges.len()];
            parts.push(ColoredPart::new(edges, ones)?);
        }
    }
    combine_colorings(lh.graph.edge_count(), &parts)
}

fn require_nontrivial(g: &Graph) -> Result<(), ColoringError> {
    if !g.is_connected() {
        return Err(ColoringError::Disconnected);
    }
    if g.edge_count() < 2 {
        return Err(ColoringError::TrivialLineGraph);
    }
    Ok(())
}

/// Transform, colour the forest structure, project back to `L(g)`, verify.
fn construct(
    g: &Graph,
    p: &TrianglePacking,
) -> Result<(EdgeColoring, RainbowCheck), ColoringError> {
    let transformed = build_transformed(g, p)?;
    let final_graph = &transformed.trace.final_graph;
    let lh = LineGraph::new(final_graph);
    let on_final = color_forest_structure(final_graph, &lh, &transformed.packing)?;
    let coloring = project_coloring(&transformed.trace, &on_final)?;
    let lg = LineGraph::new(g);
    let check = is_rainbow_connected(&lg.graph, &coloring)?;
    Ok((coloring, check))
}

fn certificate(
    name: &str,
    bound: usize,
    coloring: &EdgeColoring,
    check: RainbowCheck,
) -> ColoringCertificate {
    let colors_used = coloring.colors_used();
    ColoringCertificate {
        bound_name: name.to_string(),
        bound_value: bound,
        colors_used,
        verified: check.connected && colors_used <= bound,
        witness_failure: check.failing_pair,
    }
}

/// Rainbow colouring of `L(g)` with at most `n₂ − t` colours for a packing
/// whose structure is a triangle forest.
pub fn color_thm31(
    g: &Graph,
    p: &TrianglePacking,
) -> Result<(EdgeColoring, ColoringCertificate), ColoringError> {
    require_nontrivial(g)?;
    let p = TrianglePacking::classify(g, p.triangles.clone())?;
    if !p.is_forest() {
        return Err(ColoringError::NotForest);
    }
    let (coloring, check) = construct(g, &p)?;
    let bound = g.degree_profile().n2 - p.t;
    let cert = certificate("n2 - t", bound, &coloring, check);
    Ok((coloring, cert))
}

/// Rainbow colouring of `L(g)` with at most `t + n₂′ + c` (equivalently
/// `n₂ + op − t`) colours for any edge-disjoint packing.
pub fn color_thm32(
    g: &Graph,
    p: &TrianglePacking,
) -> Result<(EdgeColoring, ColoringCertificate), ColoringError> {
    require_nontrivial(g)?;
    let p = TrianglePacking::classify(g, p.triangles.clone())?;
    let (coloring, check) = construct(g, &p)?;
    let bound = p.t + p.n2_prime + p.c;
    let lemma = g.degree_profile().n2 + p.op - p.t;
    if bound != lemma {
        return Err(ColoringError::Invariant(format!(
            "t + n2' + c = {bound} but n2 + op - t = {lemma}"
        )));
    }
    let cert = certificate("t + n2' + c", bound, &coloring, check);
    Ok((coloring, cert))
}

/// Rainbow colouring of `L²(g)` with at most `n + 1` colours for a connected
/// cubic graph, packing `L(g)` with its `n` star triangles.
pub fn color_iterated_cubic(
    g: &Graph,
) -> Result<(EdgeColoring, ColoringCertificate), ColoringError> {
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) != 3) {
        return Err(ColoringError::NotCubic {
            vertex: v,
            degree: g.degree(v),
        });
    }
    if !g.is_connected() {
        return Err(ColoringError::Disconnected);
    }
    let lg = LineGraph::new(g);
    let tris = lg
        .star_of
        .iter()
        .map(|s| Triangle::in_graph(&lg.graph, s[0], s[1], s[2]))
        .collect::<Result<Vec<_>, _>>()?;
    let packing = TrianglePacking::classify(&lg.graph, tris)?;
    if packing.n2_prime != 0 || packing.c != 1 {
        return Err(ColoringError::Invariant(format!(
            "star packing of a connected cubic line graph has n2' = {}, c = {}",
            packing.n2_prime, packing.c
        )));
    }
    let (coloring, check) = construct(&lg.graph, &packing)?;
    let cert = certificate("n + 1", g.vertex_count() + 1, &coloring, check);
    Ok((coloring, cert))
}

/// `m₁`: degree-1 vertices whose neighbour has degree 2.
pub fn pendent_two_paths(g: &Graph) -> usize {
    (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 1)
        .filter(|&v| g.degree(g.incident(v)[0].0) == 2)
        .count()
}

/// Star colouring of `L²(g)` over the inner vertices of `L(g)`: exactly
/// `m − m₁` colours.
pub fn color_iterated(g: &Graph) -> Result<(EdgeColoring, ColoringCertificate), ColoringError> {
    if !g.is_connected() {
        return Err(ColoringError::Disconnected);
    }
    let l1 = LineGraph::new(g);
    if l1.graph.edge_count() < 2 {
        return Err(ColoringError::TrivialLineGraph);
    }
    let l2 = LineGraph::new(&l1.graph);
    let coloring = star_coloring(&l1.graph, &l2);
    let bound = g.edge_count() - pendent_two_paths(g);
    if coloring.colors_used() != bound {
        return Err(ColoringError::Invariant(format!(
            "star colouring used {} colours, m - m1 = {bound}",
            coloring.colors_used()
        )));
    }
    let check = is_rainbow_connected(&l2.graph, &coloring)?;
    let cert = certificate("m - m1", bound, &coloring, check);
    Ok((coloring, cert))
}
