//! Line graphs, iterated line graphs, star cliques and clique graphs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineGraphError {
    #[error("iteration {0} would take the line graph of an edgeless graph")]
    Edgeless(usize),
    #[error("maximal clique enumeration exceeded the cap of {0} cliques")]
    TooManyCliques(usize),
}

/// `L(G)` together with the correspondence to `G`.
///
/// Vertex `i` of `L(G)` is edge `i` of `G`; the maps are kept explicit so
/// callers never rely on that numbering.
#[derive(Debug, Clone)]
pub struct LineGraph {
    pub graph: Graph,
    pub edge_to_vertex: Vec<usize>,
    pub vertex_to_edge: Vec<usize>,
    /// `S(v)` as L-vertices, for every vertex `v` of `G`.
    pub star_of: Vec<Vec<usize>>,
    /// L-edges of the clique `⟨S(v)⟩`, for every vertex `v` of `G`.
    pub star_edges: Vec<Vec<usize>>,
    /// The vertex `v` of `G` whose star clique contains each L-edge.
    pub edge_star: Vec<usize>,
}

impl LineGraph {
    pub fn new(g: &Graph) -> Self {
        let m = g.edge_count();
        let star_of: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.star(v)).collect();
        let mut pairs = Vec::new();
        let mut edge_star = Vec::new();
        let mut star_edges = vec![Vec::new(); g.vertex_count()];
        for (v, star) in star_of.iter().enumerate() {
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    star_edges[v].push(pairs.len());
                    pairs.push((a, b));
                    edge_star.push(v);
                }
            }
        }
        // two edges of a simple graph share at most one endpoint, so no pair repeats
        let graph = Graph::new(m, pairs).expect("line graph of a simple graph is simple");
        LineGraph {
            graph,
            edge_to_vertex: (0..m).collect(),
            vertex_to_edge: (0..m).collect(),
            star_of,
            star_edges,
            edge_star,
        }
    }

    /// The L-edge joining the L-vertices of two G-edges, if they are adjacent.
    pub fn edge_for(&self, e: usize, f: usize) -> Option<usize> {
        self.graph
            .edge_between(self.edge_to_vertex[e], self.edge_to_vertex[f])
    }
}

/// `L(G)`.
pub fn line_graph(g: &Graph) -> LineGraph {
    LineGraph::new(g)
}

/// `L(G), L²(G), …, Lᵏ(G)`, each built on the previous result.
///
/// Fails when an intermediate graph has no edges; a single-vertex final
/// graph (e.g. `L²(P₃)`) is returned as is.
pub fn iterated_line_graph(g: &Graph, k: usize) -> Result<Vec<LineGraph>, LineGraphError> {
    let mut chain: Vec<LineGraph> = Vec::with_capacity(k);
    for i in 0..k {
        let base = chain.last().map(|l| &l.graph).unwrap_or(g);
        if base.edge_count() == 0 {
            return Err(LineGraphError::Edgeless(i + 1));
        }
        let next = LineGraph::new(base);
        chain.push(next);
    }
    Ok(chain)
}

pub const DEFAULT_CLIQUE_CAP: usize = 10_000;

/// Maximal cliques and their intersection graph `K(G)`.
#[derive(Debug, Clone)]
pub struct CliqueGraph {
    /// Sorted vertex lists, in lexicographic order.
    pub maximal_cliques: Vec<Vec<usize>>,
    pub k_graph: Graph,
}

/// Enumerates maximal cliques (Bron–Kerbosch with Tomita pivoting) and builds `K(G)`.
pub fn clique_graph(g: &Graph, cap: usize) -> Result<CliqueGraph, LineGraphError> {
    let mut cliques = Vec::new();
    let all: BTreeSet<usize> = (0..g.vertex_count()).collect();
    bron_kerbosch(g, &mut Vec::new(), all, BTreeSet::new(), &mut cliques, cap)?;
    cliques.sort();
    let mut pairs = Vec::new();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            if intersects(&cliques[i], &cliques[j]) {
                pairs.push((i, j));
            }
        }
    }
    let k_graph = Graph::new(cliques.len(), pairs).expect("clique pairs are distinct");
    Ok(CliqueGraph {
        maximal_cliques: cliques,
        k_graph,
    })
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), LineGraphError> {
    if p.is_empty() && x.is_empty() {
        if !r.is_empty() {
            if out.len() == cap {
                return Err(LineGraphError::TooManyCliques(cap));
            }
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
        }
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| g.neighbors(u).filter(|w| p.contains(w)).count())
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&v| !g.has_edge(pivot, v))
        .collect();
    for v in candidates {
        let nbrs: BTreeSet<usize> = g.neighbors(v).collect();
        r.push(v);
        bron_kerbosch(
            g,
            r,
            p.intersection(&nbrs).copied().collect(),
            x.intersection(&nbrs).copied().collect(),
            out,
            cap,
        )?;
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
    Ok(())
}
