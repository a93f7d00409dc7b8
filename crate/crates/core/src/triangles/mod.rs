//! Edge-disjoint triangle packings and the structure they induce.
//!
//! A packing `𝒯` induces the subgraph `G[E(𝒯)]`. Each connected component of
//! that subgraph is a triangle-tree-structure exactly when it has `2tᵢ + 1`
//! vertices; otherwise it contains triangle cycles and needs
//! `2tᵢ + 1 − |Vᵢ|` vertex splits (Operation 2) to become one.

mod ops;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use ops::{
    build_transformed, operation1, operation2, TransformStep, TransformTrace, Transformed,
};

/// Default cap on the number of triangles the exact packing modes accept.
pub const DEFAULT_EXACT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("{vertices:?} is not a triangle of the graph")]
    NotATriangle { vertices: [usize; 3] },
    #[error("triangles {0} and {1} share an edge")]
    NotEdgeDisjoint(usize, usize),
    #[error("exact packing over {count} triangles exceeds the cap of {cap}")]
    TooManyTriangles { count: usize, cap: usize },
    #[error("operation 1 needs both endpoints of edge {edge} to have degree at least 2")]
    PendantEdge { edge: usize },
    #[error("operation 2 at vertex {vertex}: {reason}")]
    BadSplit { vertex: usize, reason: &'static str },
    #[error("structure invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 3-clique; `edge_ids` are the edges `v0v1`, `v0v2`, `v1v2` of the sorted triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub edge_ids: [usize; 3],
}

impl Triangle {
    /// Looks up the triangle on three vertices of `g`.
    pub fn in_graph(g: &Graph, a: usize, b: usize, c: usize) -> Result<Self, TriangleError> {
        let mut v = [a, b, c];
        v.sort_unstable();
        let err = TriangleError::NotATriangle { vertices: v };
        if v[0] == v[1] || v[1] == v[2] || v[2] >= g.vertex_count() {
            return Err(err);
        }
        let e01 = g.edge_between(v[0], v[1]).ok_or(err.clone())?;
        let e02 = g.edge_between(v[0], v[2]).ok_or(err.clone())?;
        let e12 = g.edge_between(v[1], v[2]).ok_or(err)?;
        Ok(Triangle {
            vertices: v,
            edge_ids: [e01, e02, e12],
        })
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: usize) -> bool {
        self.edge_ids.contains(&e)
    }

    /// The two triangle edges at `v`.
    pub fn edges_at(&self, v: usize) -> [usize; 2] {
        let [a, b, _] = self.vertices;
        let [e01, e02, e12] = self.edge_ids;
        if v == a {
            [e01, e02]
        } else if v == b {
            [e01, e12]
        } else {
            debug_assert_eq!(v, self.vertices[2]);
            [e02, e12]
        }
    }
}

/// All 3-cliques of `g`, each once, in lexicographic vertex order.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        let higher: Vec<(usize, usize)> = g
            .incident(u)
            .iter()
            .copied()
            .filter(|&(w, _)| w > u)
            .collect();
        for (i, &(v, euv)) in higher.iter().enumerate() {
            for &(w, euw) in &higher[i + 1..] {
                if let Some(evw) = g.edge_between(v, w) {
                    out.push(Triangle {
                        vertices: [u, v, w],
                        edge_ids: [euv, euw, evw],
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingMode {
    Greedy,
    Exact,
    ForestGreedy,
    ForestExact,
}

impl PackingMode {
    pub const ALL: [PackingMode; 4] = [
        PackingMode::Greedy,
        PackingMode::Exact,
        PackingMode::ForestGreedy,
        PackingMode::ForestExact,
    ];

    pub fn is_exact(self) -> bool {
        matches!(self, PackingMode::Exact | PackingMode::ForestExact)
    }

    pub fn is_forest(self) -> bool {
        matches!(self, PackingMode::ForestGreedy | PackingMode::ForestExact)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PackingMode::Greedy => "greedy",
            PackingMode::Exact => "exact",
            PackingMode::ForestGreedy => "forest_greedy",
            PackingMode::ForestExact => "forest_exact",
        }
    }
}

impl fmt::Display for PackingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PackingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PackingMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown packing mode `{s}`"))
    }
}

/// One connected component of `G[E(𝒯)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingComponent {
    /// Indices into [`TrianglePacking::triangles`], ascending.
    pub triangles: Vec<usize>,
    pub vertices: BTreeSet<usize>,
    /// Every block of the component is a triangle.
    pub is_forest: bool,
}

impl PackingComponent {
    pub fn size(&self) -> usize {
        self.triangles.len()
    }
}

/// A set of pairwise edge-disjoint triangles with its structure statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrianglePacking {
    pub triangles: Vec<Triangle>,
    /// Components ordered by their lowest triangle index.
    pub components: Vec<PackingComponent>,
    pub t: usize,
    pub c: usize,
    pub covered_vertices: BTreeSet<usize>,
    /// Inner vertices of the graph that no packed triangle touches.
    pub n2_prime: usize,
    /// Vertex splits needed to turn the structure into a triangle forest.
    pub op: usize,
}

impl TrianglePacking {
    /// Validates `triangles` against `g` and computes every derived field.
    pub fn classify(g: &Graph, triangles: Vec<Triangle>) -> Result<Self, TriangleError> {
        for tri in &triangles {
            let [a, b, c] = tri.vertices;
            if Triangle::in_graph(g, a, b, c)? != *tri {
                return Err(TriangleError::NotATriangle {
                    vertices: tri.vertices,
                });
            }
        }
        let mut owner = vec![usize::MAX; g.edge_count()];
        for (i, tri) in triangles.iter().enumerate() {
            for &e in &tri.edge_ids {
                if owner[e] != usize::MAX {
                    return Err(TriangleError::NotEdgeDisjoint(owner[e], i));
                }
                owner[e] = i;
            }
        }

        // triangles are connected in G[E(𝒯)] exactly when they share a vertex
        let mut dsu = Dsu::new(triangles.len());
        let mut first_at = vec![usize::MAX; g.vertex_count()];
        for (i, tri) in triangles.iter().enumerate() {
            for &v in &tri.vertices {
                if first_at[v] == usize::MAX {
                    first_at[v] = i;
                } else {
                    dsu.union(first_at[v], i);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of_root = vec![usize::MAX; triangles.len()];
        for i in 0..triangles.len() {
            let r = dsu.find(i);
            if group_of_root[r] == usize::MAX {
                group_of_root[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[group_of_root[r]].push(i);
        }

        let mut components = Vec::with_capacity(groups.len());
        for group in groups {
            let vertices: BTreeSet<usize> =
                group.iter().flat_map(|&i| triangles[i].vertices).collect();
            let edges: Vec<usize> = group.iter().flat_map(|&i| triangles[i].edge_ids).collect();
            let sub = g.induced_by_edges(&edges)?;
            let is_forest = sub.graph.blocks().blocks.iter().all(|b| b.len() == 3);
            if is_forest != (vertices.len() == 2 * group.len() + 1) {
                return Err(TriangleError::Invariant(format!(
                    "block test and vertex count disagree on component {group:?}"
                )));
            }
            components.push(PackingComponent {
                triangles: group,
                vertices,
                is_forest,
            });
        }

        let covered_vertices: BTreeSet<usize> = components
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        let inner = g.degree_profile().inner_vertices;
        let n2_prime = inner.difference(&covered_vertices).count();
        let t = triangles.len();
        let c = components.len();
        let op = 2 * t + c - covered_vertices.len();
        Ok(TrianglePacking {
            triangles,
            components,
            t,
            c,
            covered_vertices,
            n2_prime,
            op,
        })
    }

    pub fn empty(g: &Graph) -> Self {
        Self::classify(g, Vec::new()).expect("empty packing is valid")
    }

    pub fn is_forest(&self) -> bool {
        self.components.iter().all(|c| c.is_forest)
    }

    /// Edge set `E(𝒯)`, ascending.
    pub fn edge_set(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.triangles.iter().flat_map(|t| t.edge_ids).collect();
        e.sort_unstable();
        e
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(PackingComponent::size).collect()
    }
}

/// Recomputes the derived fields of `p` on `g`.
pub fn classify_structure(
    g: &Graph,
    p: &TrianglePacking,
) -> Result<TrianglePacking, TriangleError> {
    TrianglePacking::classify(g, p.triangles.clone())
}

/// Packs edge-disjoint triangles; exact modes refuse more than `exact_cap` triangles.
pub fn pack_edge_disjoint(
    g: &Graph,
    mode: PackingMode,
    exact_cap: usize,
) -> Result<TrianglePacking, TriangleError> {
    let all = enumerate_triangles(g);
    let chosen = if mode.is_exact() {
        if all.len() > exact_cap {
            return Err(TriangleError::TooManyTriangles {
                count: all.len(),
                cap: exact_cap,
            });
        }
        ExactSearch::new(&all, mode.is_forest()).run()
    } else {
        greedy(g, &all, mode.is_forest())
    };
    TrianglePacking::classify(g, chosen.into_iter().map(|i| all[i].clone()).collect())
}

fn greedy(g: &Graph, all: &[Triangle], forest: bool) -> Vec<usize> {
    let mut used = vec![false; g.edge_count()];
    let mut dsu = Dsu::new(g.vertex_count());
    let mut chosen = Vec::new();
    for (i, tri) in all.iter().enumerate() {
        if tri.edge_ids.iter().any(|&e| used[e]) {
            continue;
        }
        let [a, b, c] = tri.vertices;
        if forest {
            let (ra, rb, rc) = (dsu.find(a), dsu.find(b), dsu.find(c));
            if ra == rb || rb == rc || ra == rc {
                continue;
            }
            dsu.union(a, b);
            dsu.union(b, c);
        }
        for &e in &tri.edge_ids {
            used[e] = true;
        }
        chosen.push(i);
    }
    chosen
}

/// Branch-and-bound over triangle subsets, include-first, keeping the first
/// maximum found so results are deterministic.
struct ExactSearch {
    masks: Vec<u128>,
    verts: Vec<[usize; 3]>,
    local_vertices: usize,
    forest: bool,
    best: Vec<usize>,
}

impl ExactSearch {
    fn new(all: &[Triangle], forest: bool) -> Self {
        let mut edge_local = std::collections::HashMap::new();
        let mut vertex_local = std::collections::HashMap::new();
        let mut masks = Vec::with_capacity(all.len());
        let mut verts = Vec::with_capacity(all.len());
        for tri in all {
            let mut mask = 0u128;
            for &e in &tri.edge_ids {
                let next = edge_local.len();
                let bit = *edge_local.entry(e).or_insert(next);
                mask |= 1u128 << bit;
            }
            masks.push(mask);
            let mut local = [0; 3];
            for (slot, &v) in local.iter_mut().zip(&tri.vertices) {
                let next = vertex_local.len();
                *slot = *vertex_local.entry(v).or_insert(next);
            }
            verts.push(local);
        }
        ExactSearch {
            masks,
            verts,
            local_vertices: vertex_local.len(),
            forest,
            best: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<usize> {
        let labels: Vec<usize> = (0..self.local_vertices).collect();
        self.dfs(0, 0, &mut Vec::new(), &labels);
        self.best
    }

    fn dfs(&mut self, i: usize, used: u128, chosen: &mut Vec<usize>, labels: &[usize]) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        let compatible = self.masks[i..].iter().filter(|&&m| m & used == 0).count();
        if chosen.len() + compatible <= self.best.len() {
            return;
        }
        if used & self.masks[i] == 0 {
            if !self.forest {
                chosen.push(i);
                self.dfs(i + 1, used | self.masks[i], chosen, labels);
                chosen.pop();
            } else {
                let [a, b, c] = self.verts[i];
                let (la, lb, lc) = (labels[a], labels[b], labels[c]);
                if la != lb && lb != lc && la != lc {
                    let merged: Vec<usize> = labels
                        .iter()
                        .map(|&l| if l == lb || l == lc { la } else { l })
                        .collect();
                    chosen.push(i);
                    self.dfs(i + 1, used | self.masks[i], chosen, &merged);
                    chosen.pop();
                }
            }
        }
        self.dfs(i + 1, used, chosen, labels);
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn k4() -> Graph {
        families::complete(4)
    }

    /// Maximum packing size by trying every subset of triangles.
    fn brute_force_max(all: &[Triangle], forest: bool) -> usize {
        let mut best = 0;
        for subset in 0u32..(1 << all.len()) {
            let chosen: Vec<&Triangle> = (0..all.len())
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| &all[i])
                .collect();
            let mut edges: Vec<usize> = chosen.iter().flat_map(|t| t.edge_ids).collect();
            let total = edges.len();
            edges.sort_unstable();
            edges.dedup();
            if edges.len() != total {
                continue;
            }
            if forest {
                let verts: BTreeSet<usize> = chosen.iter().flat_map(|t| t.vertices).collect();
                // components by shared vertices
                let mut dsu = Dsu::new(chosen.len());
                for i in 0..chosen.len() {
                    for j in 0..i {
                        if chosen[i].vertices.iter().any(|v| chosen[j].contains(*v)) {
                            dsu.union(i, j);
                        }
                    }
                }
                let comps = (0..chosen.len()).filter(|&i| dsu.find(i) == i).count();
                if verts.len() != 2 * chosen.len() + comps {
                    continue;
                }
            }
            best = best.max(chosen.len());
        }
        best
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(enumerate_triangles(&k4()).len(), 4);
        assert!(enumerate_triangles(&families::cycle(5)).is_empty());
        assert_eq!(enumerate_triangles(&families::friendship(2)).len(), 2);
    }

    #[test]
    fn k4_exact_packing_is_one() {
        let all = enumerate_triangles(&k4());
        assert_eq!(brute_force_max(&all, false), 1);
        let p = pack_edge_disjoint(&k4(), PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(p.t, 1);
    }

    #[test]
    fn example31_family_every_mode() {
        let g = families::example31(3);
        for mode in PackingMode::ALL {
            let p = pack_edge_disjoint(&g, mode, DEFAULT_EXACT_CAP).unwrap();
            assert_eq!((p.t, p.c, p.op), (3, 3, 0), "{mode}");
            assert!(p.is_forest());
        }
    }

    #[test]
    fn triangle_free_packing_is_empty() {
        let g = families::cycle(5);
        for mode in PackingMode::ALL {
            let p = pack_edge_disjoint(&g, mode, DEFAULT_EXACT_CAP).unwrap();
            assert_eq!(p.t, 0);
            assert_eq!(p.n2_prime, 5);
        }
    }

    #[test]
    fn exact_cap_is_enforced() {
        let g = families::complete(6); // 20 triangles
        assert_eq!(
            pack_edge_disjoint(&g, PackingMode::Exact, 10).unwrap_err(),
            TriangleError::TooManyTriangles { count: 20, cap: 10 }
        );
    }

    #[test]
    fn classify_bowtie_ring_and_example32() {
        let g = families::friendship(2);
        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!((p.c, p.t, p.covered_vertices.len(), p.op), (1, 2, 5, 0));
        assert!(p.is_forest());

        let g = families::triangle_ring(3);
        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!((p.c, p.t, p.covered_vertices.len()), (1, 3, 6));
        assert!(!p.is_forest());
        assert_eq!(p.op, 1);

        let g = families::example32(5);
        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!((p.c, p.t, p.n2_prime), (1, 4, 1));
        assert!(p.is_forest());
    }

    #[test]
    fn classify_rejects_bad_input() {
        let g = k4();
        let all = enumerate_triangles(&g);
        assert!(matches!(
            TrianglePacking::classify(&g, vec![all[0].clone(), all[1].clone()]),
            Err(TriangleError::NotEdgeDisjoint(0, 1))
        ));
        let bogus = Triangle {
            vertices: [0, 1, 2],
            edge_ids: [0, 0, 0],
        };
        assert!(matches!(
            TrianglePacking::classify(&g, vec![bogus]),
            Err(TriangleError::NotATriangle { .. })
        ));
        let c5 = families::cycle(5);
        assert!(Triangle::in_graph(&c5, 0, 1, 2).is_err());
    }

    #[test]
    fn exact_matches_brute_force_on_small_graphs() {
        let graphs = [
            families::complete(5),
            families::triangle_ring(3),
            families::triangle_ring(4),
            families::petersen(),
            families::friendship(3),
            families::example32(4),
        ];
        for g in graphs {
            let all = enumerate_triangles(&g);
            for forest in [false, true] {
                let mode = if forest {
                    PackingMode::ForestExact
                } else {
                    PackingMode::Exact
                };
                let p = pack_edge_disjoint(&g, mode, DEFAULT_EXACT_CAP).unwrap();
                assert_eq!(p.t, brute_force_max(&all, forest));
                if forest {
                    assert!(p.is_forest());
                }
            }
        }
    }
}
