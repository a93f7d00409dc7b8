//! Simple undirected graphs with dense vertex ids and insertion-ordered edge ids.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} ({u}, {v}) is a loop")]
    Loop { index: usize, u: usize, v: usize },
    #[error("edge {index} ({u}, {v}) duplicates an earlier edge")]
    Duplicate { index: usize, u: usize, v: usize },
    #[error("edge {index} ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange {
        index: usize,
        u: usize,
        v: usize,
        n: usize,
    },
    #[error("edge id {0} does not exist")]
    InvalidEdge(usize),
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("shrink set must be a nonempty proper subset of the vertices")]
    BadShrinkSet,
    #[error("graph is disconnected")]
    Disconnected,
}

/// A simple undirected graph.
///
/// Edge `i` is the `i`-th pair passed at construction, stored as `(min, max)`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices; edge ids follow the order of `pairs`.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::new();
        for (i, (u, v)) in pairs.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { index: i, u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop { index: i, u, v });
            }
            let key = (u.min(v), u.max(v));
            if index.insert(key, i).is_some() {
                return Err(GraphError::Duplicate { index: i, u, v });
            }
            adj[u].push((v, i));
            adj[v].push((u, i));
            edges.push(key);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            index,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge id)` pairs at `v`, sorted by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// Edge ids incident to `v`, ascending.
    pub fn star(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.adj[v].iter().map(|&(_, e)| e).collect();
        s.sort_unstable();
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// The common endpoint of two distinct edges, if any.
    pub fn shared_vertex(&self, e: usize, f: usize) -> Option<usize> {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        if a == c || a == d {
            Some(a)
        } else if b == c || b == d {
            Some(b)
        } else {
            None
        }
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &(w, _) in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Component label per vertex, labels numbered in order of first vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().0 == 1
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Largest shortest-path distance over all vertex pairs.
    ///
    /// `None` stands for an infinite diameter (disconnected graph). A graph
    /// with at most one vertex has diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Classical biconnected-component decomposition; bridges are one-edge blocks.
    pub fn blocks(&self) -> BlockDecomposition {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut blocks = Vec::new();
        let mut cut_vertices = BTreeSet::new();

        for root in 0..n {
            if disc[root] != usize::MAX || self.adj[root].is_empty() {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, edge used to enter it, next adjacency position)
            let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
            while let Some(frame) = stack.last_mut() {
                let (v, parent_edge, pos) = *frame;
                if pos < self.adj[v].len() {
                    frame.2 += 1;
                    let (w, e) = self.adj[v][pos];
                    if Some(e) == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(e), 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    let Some(&(parent, _, _)) = stack.last() else {
                        continue;
                    };
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let pe = parent_edge.unwrap();
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                        if parent != root {
                            cut_vertices.insert(parent);
                        }
                    }
                }
            }
            if root_children > 1 {
                cut_vertices.insert(root);
            }
        }
        blocks.sort();
        BlockDecomposition {
            blocks,
            cut_vertices,
        }
    }

    /// `G[E₁]`: the subgraph formed by the given edges and their endpoints.
    ///
    /// Local vertices are ordered by parent id, local edges by parent edge id.
    pub fn induced_by_edges(&self, edge_ids: &[usize]) -> Result<Subgraph, GraphError> {
        let mut chosen = BTreeSet::new();
        for &e in edge_ids {
            if e >= self.edges.len() {
                return Err(GraphError::InvalidEdge(e));
            }
            chosen.insert(e);
        }
        let vertices: BTreeSet<usize> = chosen
            .iter()
            .flat_map(|&e| {
                let (a, b) = self.edges[e];
                [a, b]
            })
            .collect();
        let vertex_map: Vec<usize> = vertices.into_iter().collect();
        let local: HashMap<usize, usize> = vertex_map
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let edge_map: Vec<usize> = chosen.into_iter().collect();
        let graph = Graph::new(
            vertex_map.len(),
            edge_map.iter().map(|&e| {
                let (a, b) = self.edges[e];
                (local[&a], local[&b])
            }),
        )
        .expect("subgraph of a simple graph is simple");
        Ok(Subgraph {
            graph,
            vertex_map,
            edge_map,
        })
    }

    /// Deletes the edges inside `x` and identifies `x` into one vertex `w`.
    ///
    /// Vertices outside `x` keep their relative order; `w` is the last vertex.
    /// Edges that become parallel are merged into the first one.
    pub fn shrink(&self, x: &[usize]) -> Result<Quotient, GraphError> {
        let mut inside = vec![false; self.n];
        for &v in x {
            if v >= self.n {
                return Err(GraphError::InvalidVertex(v));
            }
            inside[v] = true;
        }
        let size = inside.iter().filter(|&&b| b).count();
        if size == 0 || size == self.n {
            return Err(GraphError::BadShrinkSet);
        }
        let w = self.n - size;
        let mut vertex_map = vec![w; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !inside[v] {
                vertex_map[v] = next;
                next += 1;
            }
        }
        let mut pairs = Vec::new();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            if inside[a] && inside[b] {
                edge_map.push(None);
                continue;
            }
            let (p, q) = (vertex_map[a], vertex_map[b]);
            let key = (p.min(q), p.max(q));
            let id = *seen.entry(key).or_insert_with(|| {
                pairs.push(key);
                pairs.len() - 1
            });
            edge_map.push(Some(id));
        }
        let graph = Graph::new(w + 1, pairs).expect("quotient is simple by construction");
        Ok(Quotient {
            graph,
            vertex_map,
            edge_map,
        })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let n1 = degrees.iter().filter(|&&d| d == 1).count();
        let inner_vertices: BTreeSet<usize> = (0..self.n).filter(|&v| degrees[v] >= 2).collect();
        DegreeProfile {
            n1,
            n2: inner_vertices.len(),
            degrees,
            inner_vertices,
        }
    }

    /// `E[X, Y]` for disjoint or equal vertex sets given as membership masks.
    pub fn edges_between(&self, x: &[bool], y: &[bool]) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(_, &(a, b))| (x[a] && y[b]) || (x[b] && y[a]))
            .map(|(e, _)| e)
            .collect()
    }

    /// The edge cut `∂(X)`.
    pub fn boundary(&self, x: &[bool]) -> Vec<usize> {
        let outside: Vec<bool> = x.iter().map(|b| !b).collect();
        self.edges_between(x, &outside)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// Number of degree-1 vertices.
    pub n1: usize,
    /// Number of inner vertices (degree at least two).
    pub n2: usize,
    pub inner_vertices: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge ids of each block, sorted; blocks sorted lexicographically.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: BTreeSet<usize>,
}

/// A subgraph together with maps from its local ids to parent ids.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Result of [`Graph::shrink`], with maps from parent ids to quotient ids.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    /// `None` for edges deleted because both ends were shrunk.
    pub edge_map: Vec<Option<usize>>,
}
