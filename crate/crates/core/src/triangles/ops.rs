//! Operation 1 (split an edge into two pendant edges) and Operation 2 (split a
//! vertex shared by edge-disjoint triangles), recorded as replayable traces.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{Dsu, Triangle, TriangleError, TrianglePacking};
use crate::graph::{Graph, GraphError};

/// One applied operation. Edge ids are stable across steps: Operation 1 keeps
/// the id of `uv` for `u–u_new` and appends `v–v_new`; Operation 2 only moves
/// endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TransformStep {
    Op1 {
        edge: usize,
        u: usize,
        v: usize,
        u_new: usize,
        v_new: usize,
        v_edge: usize,
    },
    Op2 {
        vertex: usize,
        new_vertex: usize,
        /// Edges re-attached from `vertex` to `new_vertex`.
        moved_edges: Vec<usize>,
        /// Vertex triples (before the split) of the triangles moved to `new_vertex`.
        moved: Vec<[usize; 3]>,
        /// Vertex triples of the triangles left at `vertex`.
        kept: Vec<[usize; 3]>,
    },
}

impl TransformStep {
    /// Applies the step to `g`, which must be the graph it was recorded on.
    pub fn apply(&self, g: &Graph) -> Result<Graph, TriangleError> {
        match self {
            TransformStep::Op1 { edge, .. } => operation1(g, *edge).map(|(h, _)| h),
            TransformStep::Op2 {
                vertex,
                moved_edges,
                ..
            } => Ok(split_vertex(g, *vertex, moved_edges)?),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformTrace {
    #[serde(skip)]
    pub source: Graph,
    pub steps: Vec<TransformStep>,
    #[serde(skip)]
    pub final_graph: Graph,
}

impl TransformTrace {
    pub fn identity(g: &Graph) -> Self {
        TransformTrace {
            source: g.clone(),
            steps: Vec::new(),
            final_graph: g.clone(),
        }
    }

    /// Re-applies every step to the source graph.
    pub fn replay(&self) -> Result<Graph, TriangleError> {
        let mut g = self.source.clone();
        for step in &self.steps {
            g = step.apply(&g)?;
        }
        Ok(g)
    }

    pub fn op1_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, TransformStep::Op1 { .. }))
            .count()
    }

    pub fn op2_count(&self) -> usize {
        self.steps.len() - self.op1_count()
    }

    fn push(&mut self, g: Graph, step: TransformStep) {
        self.steps.push(step);
        self.final_graph = g;
    }
}

/// Operation 1 on edge `e = uv` (`u < v`): `e` becomes `u–u_e` and a new edge `v–v_e` is appended.
pub fn operation1(g: &Graph, e: usize) -> Result<(Graph, TransformStep), TriangleError> {
    if e >= g.edge_count() {
        return Err(GraphError::InvalidEdge(e).into());
    }
    let (u, v) = g.endpoints(e);
    if g.degree(u) < 2 || g.degree(v) < 2 {
        return Err(TriangleError::PendantEdge { edge: e });
    }
    let n = g.vertex_count();
    let mut pairs = g.edges().to_vec();
    pairs[e] = (u, n);
    pairs.push((v, n + 1));
    let h = Graph::new(n + 2, pairs)?;
    let step = TransformStep::Op1 {
        edge: e,
        u,
        v,
        u_new: n,
        v_new: n + 1,
        v_edge: g.edge_count(),
    };
    Ok((h, step))
}

/// Operation 2 at `v`: the triangles in `moved` are re-attached to a new
/// vertex, those in `kept` (and every other edge at `v`) stay at `v`.
pub fn operation2(
    g: &Graph,
    v: usize,
    kept: &[Triangle],
    moved: &[Triangle],
) -> Result<(Graph, TransformStep), TriangleError> {
    let bad = |reason| TriangleError::BadSplit { vertex: v, reason };
    if kept.is_empty() || moved.is_empty() {
        return Err(bad("both sides of the split must hold a triangle"));
    }
    let mut seen = BTreeSet::new();
    for tri in kept.iter().chain(moved) {
        let [a, b, c] = tri.vertices;
        if !tri.contains(v) {
            return Err(bad("every triangle must contain the split vertex"));
        }
        if Triangle::in_graph(g, a, b, c)? != *tri {
            return Err(TriangleError::NotATriangle {
                vertices: tri.vertices,
            });
        }
        for e in tri.edge_ids {
            if !seen.insert(e) {
                return Err(bad("triangles must be edge-disjoint"));
            }
        }
    }
    let moved_edges: Vec<usize> = moved.iter().flat_map(|t| t.edges_at(v)).collect();
    let h = split_vertex(g, v, &moved_edges)?;
    let step = TransformStep::Op2 {
        vertex: v,
        new_vertex: g.vertex_count(),
        moved_edges,
        moved: moved.iter().map(|t| t.vertices).collect(),
        kept: kept.iter().map(|t| t.vertices).collect(),
    };
    Ok((h, step))
}

fn split_vertex(g: &Graph, v: usize, moved_edges: &[usize]) -> Result<Graph, GraphError> {
    let n = g.vertex_count();
    let mut pairs = g.edges().to_vec();
    for &e in moved_edges {
        let (a, b) = pairs[e];
        pairs[e] = if a == v { (n, b) } else { (a, n) };
    }
    Graph::new(n + 1, pairs)
}

/// The transformed graph, its trace, and the packing re-classified on it.
#[derive(Debug, Clone)]
pub struct Transformed {
    pub trace: TransformTrace,
    pub packing: TrianglePacking,
}

/// Applies Operation 1 to every non-packing edge inside a component's vertex
/// set, then Operation 2 until every component is a triangle forest.
///
/// The split rule takes the lowest vertex lying in two or more triangles of a
/// non-forest component, and moves the lowest triangle through it whose
/// detachment keeps the component connected. Exactly `p.op` splits must be
/// performed; anything else is reported as an invariant violation.
pub fn build_transformed(g: &Graph, p: &TrianglePacking) -> Result<Transformed, TriangleError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let p = TrianglePacking::classify(g, p.triangles.clone())?;
    let mut trace = TransformTrace::identity(g);

    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    for (i, comp) in p.components.iter().enumerate() {
        for &v in &comp.vertices {
            comp_of[v] = i;
        }
    }
    let packed: BTreeSet<usize> = p.edge_set().into_iter().collect();
    let chords: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, &(a, b))| {
            comp_of[a] != usize::MAX && comp_of[a] == comp_of[b] && !packed.contains(&e)
        })
        .map(|(e, _)| e)
        .collect();
    for e in chords {
        let (h, step) = operation1(&trace.final_graph, e)?;
        trace.push(h, step);
    }

    let mut triangles = p.triangles.clone();
    let mut splits = 0;
    loop {
        let current = TrianglePacking::classify(&trace.final_graph, triangles.clone())?;
        if current.op == 0 {
            if current.c != p.c {
                return Err(TriangleError::Invariant(format!(
                    "splitting changed the component count from {} to {}",
                    p.c, current.c
                )));
            }
            break;
        }
        if splits == p.op {
            return Err(TriangleError::Invariant(format!(
                "{} splits performed but the structure is still not a forest (op = {})",
                splits, current.op
            )));
        }
        let (v, ti) = choose_split(&current).ok_or_else(|| {
            TriangleError::Invariant("no split keeps the component connected".into())
        })?;
        let kept: Vec<Triangle> = triangles
            .iter()
            .enumerate()
            .filter(|&(i, t)| i != ti && t.contains(v))
            .map(|(_, t)| t.clone())
            .collect();
        let (h, step) = operation2(
            &trace.final_graph,
            v,
            &kept,
            std::slice::from_ref(&triangles[ti]),
        )?;
        let new_vertex = trace.final_graph.vertex_count();
        let [a, b, c] = triangles[ti]
            .vertices
            .map(|x| if x == v { new_vertex } else { x });
        triangles[ti] = Triangle::in_graph(&h, a, b, c)?;
        trace.push(h, step);
        splits += 1;
    }
    if splits != p.op {
        return Err(TriangleError::Invariant(format!(
            "{} splits performed, op predicts {}",
            splits, p.op
        )));
    }
    let packing = TrianglePacking::classify(&trace.final_graph, triangles)?;
    Ok(Transformed { trace, packing })
}

fn choose_split(p: &TrianglePacking) -> Option<(usize, usize)> {
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for (ci, comp) in p.components.iter().enumerate() {
        if !comp.is_forest {
            candidates.extend(comp.vertices.iter().map(|&v| (v, ci)));
        }
    }
    candidates.sort_unstable();
    for (v, ci) in candidates {
        let comp = &p.components[ci];
        let at_v: Vec<usize> = comp
            .triangles
            .iter()
            .copied()
            .filter(|&i| p.triangles[i].contains(v))
            .collect();
        if at_v.len() < 2 {
            continue;
        }
        for &ti in &at_v {
            if stays_connected(p, &comp.triangles, ti, v) {
                return Some((v, ti));
            }
        }
    }
    None
}

/// Whether the component's triangles stay connected once triangle `ti` no longer uses `v`.
fn stays_connected(p: &TrianglePacking, members: &[usize], ti: usize, v: usize) -> bool {
    let mut dsu = Dsu::new(members.len());
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (local, &i) in members.iter().enumerate() {
        for &x in &p.triangles[i].vertices {
            if i == ti && x == v {
                continue;
            }
            match first.get(&x) {
                Some(&other) => {
                    dsu.union(other, local);
                }
                None => {
                    first.insert(x, local);
                }
            }
        }
    }
    (0..members.len()).all(|i| dsu.find(i) == dsu.find(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::triangles::{
        enumerate_triangles, pack_edge_disjoint, PackingMode, DEFAULT_EXACT_CAP,
    };

    #[test]
    fn operation1_on_triangle_edge() {
        let k3 = families::complete(3);
        let (h, step) = operation1(&k3, 0).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.edges(), &[(0, 3), (0, 2), (1, 2), (1, 4)]);
        assert_eq!(
            step,
            TransformStep::Op1 {
                edge: 0,
                u: 0,
                v: 1,
                u_new: 3,
                v_new: 4,
                v_edge: 3
            }
        );
    }

    #[test]
    fn operation1_needs_inner_endpoints() {
        let p3 = families::path(3);
        for e in 0..2 {
            assert_eq!(
                operation1(&p3, e).unwrap_err(),
                TriangleError::PendantEdge { edge: e }
            );
        }
    }

    #[test]
    fn operation1_on_c4_gives_path() {
        let c4 = families::cycle(4);
        let (h, _) = operation1(&c4, 3).unwrap(); // edge 3–0
        assert_eq!(h.edge_count(), 5);
        assert!(h.is_connected());
        assert_eq!(h.diameter(), Some(5));
        assert_eq!(h.degree_profile().n1, 2);
    }

    #[test]
    fn operation2_examples() {
        let bowtie = families::friendship(2);
        let tris = enumerate_triangles(&bowtie);
        let (h, _) = operation2(&bowtie, 0, &tris[..1], &tris[1..]).unwrap();
        assert_eq!(h.edge_count(), bowtie.edge_count());
        assert_eq!(h.vertex_count(), bowtie.vertex_count() + 1);
        assert_eq!(h.components().0, 2);

        let f3 = families::friendship(3);
        let tris = enumerate_triangles(&f3);
        let (h, _) = operation2(&f3, 0, &tris[1..], &tris[..1]).unwrap();
        let (count, label) = h.components();
        assert_eq!(count, 2);
        let sizes: Vec<usize> = (0..count)
            .map(|c| label.iter().filter(|&&l| l == c).count())
            .collect();
        assert_eq!(sizes, vec![5, 3]);

        assert!(matches!(
            operation2(&f3, 0, &[], &tris),
            Err(TriangleError::BadSplit { .. })
        ));
        assert!(matches!(
            operation2(&f3, 1, &tris[..1], &tris[1..2]),
            Err(TriangleError::BadSplit { .. })
        ));
    }

    #[test]
    fn ring_needs_one_split() {
        let g = families::triangle_ring(3);
        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        let out = build_transformed(&g, &p).unwrap();
        // the inner triangle's edges are packing edges, so no chords
        assert_eq!(out.trace.op1_count(), 0);
        assert_eq!(out.trace.op2_count(), 1);
        assert_eq!(out.trace.final_graph.vertex_count(), 7);
        assert!(out.packing.is_forest());
        assert_eq!(out.packing.c, 1);
        assert_eq!(out.trace.replay().unwrap(), out.trace.final_graph);
    }

    #[test]
    fn example31_has_nothing_to_transform() {
        let g = families::example31(3);
        let p = pack_edge_disjoint(&g, PackingMode::ForestExact, DEFAULT_EXACT_CAP).unwrap();
        let out = build_transformed(&g, &p).unwrap();
        assert!(out.trace.steps.is_empty());
    }

    #[test]
    fn k4_max_packing_has_no_chords() {
        let g = families::complete(4);
        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        let out = build_transformed(&g, &p).unwrap();
        assert_eq!(out.trace.op1_count(), 0);
        assert_eq!(out.trace.op2_count(), 0);
    }

    #[test]
    fn chords_are_split() {
        // triangle 0,1,2 with a fourth vertex 3 adjacent to 0 and 1, packing only {0,1,2}
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]).unwrap();
        let tri = Triangle::in_graph(&g, 0, 1, 2).unwrap();
        let p = TrianglePacking::classify(&g, vec![tri]).unwrap();
        let out = build_transformed(&g, &p).unwrap();
        assert_eq!(out.trace.op1_count(), 0); // 3 is outside V₁
        let g = families::complete(4);
        let tri = Triangle::in_graph(&g, 0, 1, 2).unwrap();
        let p = TrianglePacking::classify(&g, vec![tri]).unwrap();
        let out = build_transformed(&g, &p).unwrap();
        assert_eq!(out.trace.op1_count(), 0);

        // a 4-cycle of triangles' hub vertices joined by a diagonal chord
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (0, 4)]).unwrap();
        let p = pack_edge_disjoint(&g, PackingMode::ForestExact, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(p.t, 2);
        let out = build_transformed(&g, &p).unwrap();
        assert_eq!(out.trace.op1_count(), 1);
        assert_eq!(out.trace.final_graph.edge_count(), 8);
        assert_eq!(out.trace.replay().unwrap(), out.trace.final_graph);
    }

    #[test]
    fn cubic_star_packing_of_line_graph() {
        // 𝒯 = star triangles of L(K₄): 4 triangles on 6 vertices, op = 2·4+1−6 = 3
        let l = crate::line_graph::line_graph(&families::complete(4));
        let tris: Vec<Triangle> = (0..4)
            .map(|v| {
                let s = &l.star_of[v];
                Triangle::in_graph(&l.graph, s[0], s[1], s[2]).unwrap()
            })
            .collect();
        let p = TrianglePacking::classify(&l.graph, tris).unwrap();
        assert_eq!(p.op, 3);
        let out = build_transformed(&l.graph, &p).unwrap();
        assert_eq!(out.trace.op2_count(), 3);
        assert!(out.packing.is_forest());
        assert_eq!(out.packing.covered_vertices.len(), 2 * 4 + 1);
    }
}
