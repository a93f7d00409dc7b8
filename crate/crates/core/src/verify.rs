//! Ground truth: exact rainbow-connectivity checking and the exhaustive
//! rainbow-connection-number oracle.
//!
//! The checker explores `(vertex, used colour set)` states from every source.
//! Walks are allowed: a walk with pairwise distinct colours has distinct edges
//! and contains a rainbow path between its ends, so reachability is unchanged.
//! States are expanded breadth-first, so colour sets grow one colour per
//! layer; a state whose colour set contains an already-seen set at the same
//! vertex is dominated and skipped.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{color_iterated, ColoringError, EdgeColoring};
use crate::exec::{self, Execution};
use crate::graph::Graph;
use crate::line_graph::iterated_line_graph;

/// Largest number of distinct colours the state search represents exactly.
pub const COLOR_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("coloring has {found} entries but the graph has {expected} edges")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{count} distinct colors exceed the search cap of {cap}")]
    TooManyColors { count: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rainbow connection is undefined on a graph with fewer than two vertices")]
    Trivial,
    #[error("oracle limit reached; rc lies in [{lower}, {upper}]")]
    LimitExceeded { lower: usize, upper: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RainbowCheck {
    pub connected: bool,
    /// Lexicographically smallest pair with no rainbow path.
    pub failing_pair: Option<(usize, usize)>,
}

/// Checks that every vertex pair of `g` is joined by a rainbow path under `col`.
pub fn is_rainbow_connected(g: &Graph, col: &EdgeColoring) -> Result<RainbowCheck, VerifyError> {
    is_rainbow_connected_with(g, col, Execution::default())
}

pub fn is_rainbow_connected_with(
    g: &Graph,
    col: &EdgeColoring,
    exec: Execution,
) -> Result<RainbowCheck, VerifyError> {
    let masks = color_masks(g, col)?;
    let sources: Vec<usize> = (0..g.vertex_count()).collect();
    let failing_pair = exec::find_map_first(exec, &sources, |&s| {
        let reached = reach_from(g, &masks, s);
        (s + 1..g.vertex_count())
            .find(|&t| !reached[t])
            .map(|t| (s, t))
    });
    Ok(RainbowCheck {
        connected: failing_pair.is_none(),
        failing_pair,
    })
}

/// Per-edge single-bit masks after compacting the distinct colours of `col`.
fn color_masks(g: &Graph, col: &EdgeColoring) -> Result<Vec<u64>, VerifyError> {
    if col.edge_count() != g.edge_count() {
        return Err(VerifyError::LengthMismatch {
            expected: g.edge_count(),
            found: col.edge_count(),
        });
    }
    let mut compact: HashMap<usize, u32> = HashMap::new();
    let mut masks = Vec::with_capacity(g.edge_count());
    for &c in col.colors() {
        let next = compact.len() as u32;
        let bit = *compact.entry(c).or_insert(next);
        if compact.len() > COLOR_CAP {
            return Err(VerifyError::TooManyColors {
                count: col.colors_used(),
                cap: COLOR_CAP,
            });
        }
        masks.push(1u64 << bit);
    }
    Ok(masks)
}

/// Vertices reachable from `s` along rainbow walks.
fn reach_from(g: &Graph, masks: &[u64], s: usize) -> Vec<bool> {
    let n = g.vertex_count();
    let mut reached = vec![false; n];
    reached[s] = true;
    let mut remaining = n - 1;
    let mut seen: Vec<Vec<u64>> = vec![Vec::new(); n];
    seen[s].push(0);
    let mut frontier = vec![(s, 0u64)];
    while !frontier.is_empty() && remaining > 0 {
        let mut next = Vec::new();
        for (v, used) in frontier {
            for &(w, e) in g.incident(v) {
                let bit = masks[e];
                if used & bit != 0 {
                    continue;
                }
                let grown = used | bit;
                if seen[w].iter().any(|&m| m & !grown == 0) {
                    continue;
                }
                seen[w].push(grown);
                if !reached[w] {
                    reached[w] = true;
                    remaining -= 1;
                }
                next.push((w, grown));
            }
        }
        frontier = next;
    }
    reached
}

/// `rc(G) ≥ diam(G)`.
pub fn rc_lower_bound(g: &Graph) -> Result<usize, VerifyError> {
    g.diameter().ok_or(VerifyError::Disconnected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_edges: usize,
    pub time_budget: Option<Duration>,
    pub exec: Execution,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges: 12,
            time_budget: Some(Duration::from_secs(60)),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRc {
    pub rc: usize,
    /// A rainbow colouring with exactly `rc` colours.
    pub witness: EdgeColoring,
}

const PREFIX_DEPTH: usize = 6;
const DEADLINE_STRIDE: usize = 512;

/// Exact `rc(g)` by exhaustive search over canonical colourings.
///
/// Levels `k = max(diam, 1), …, m − 1` are tried in order; level `k` visits
/// every partition of the edges into exactly `k` colour classes once
/// (restricted growth strings). If no level succeeds, `rc = m`.
pub fn exact_rc(g: &Graph, limits: &OracleLimits) -> Result<ExactRc, VerifyError> {
    if g.vertex_count() < 2 {
        return Err(VerifyError::Trivial);
    }
    let lower = rc_lower_bound(g)?.max(1);
    let m = g.edge_count();
    if m > limits.max_edges {
        return Err(VerifyError::LimitExceeded { lower, upper: m });
    }
    let deadline = limits.time_budget.map(|d| Instant::now() + d);
    for k in lower..m {
        let search = LevelSearch {
            g,
            k,
            deadline,
            timed_out: AtomicBool::new(false),
            leaves: AtomicUsize::new(0),
        };
        let found = search.run(limits.exec);
        if search.timed_out.load(Ordering::Relaxed) && found.is_none() {
            return Err(VerifyError::LimitExceeded { lower: k, upper: m });
        }
        if let Some(colors) = found {
            let witness = EdgeColoring::new(colors.into_iter().map(|c| c + 1).collect())
                .expect("canonical colours are 1-based after shift");
            return Ok(ExactRc { rc: k, witness });
        }
    }
    let witness = EdgeColoring::new((1..=m).collect()).expect("distinct colours are valid");
    Ok(ExactRc { rc: m, witness })
}

struct LevelSearch<'a> {
    g: &'a Graph,
    k: usize,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
    leaves: AtomicUsize,
}

impl LevelSearch<'_> {
    fn run(&self, exec: Execution) -> Option<Vec<usize>> {
        let m = self.g.edge_count();
        let depth = m.min(PREFIX_DEPTH);
        let mut prefixes = Vec::new();
        self.prefixes(&mut vec![0], 0, depth, &mut prefixes);
        exec::find_map_first(exec, &prefixes, |prefix| {
            let mut colors = prefix.clone();
            let top = *prefix.iter().max().unwrap();
            self.complete(&mut colors, top)
        })
    }

    fn feasible(&self, len: usize, top: usize) -> bool {
        // enough positions left to introduce the missing colours
        self.k - 1 - top <= self.g.edge_count() - len
    }

    fn prefixes(&self, cur: &mut Vec<usize>, top: usize, depth: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        for c in 0..=(top + 1).min(self.k - 1) {
            let new_top = top.max(c);
            if !self.feasible(cur.len() + 1, new_top) {
                continue;
            }
            cur.push(c);
            self.prefixes(cur, new_top, depth, out);
            cur.pop();
        }
    }

    fn complete(&self, cur: &mut Vec<usize>, top: usize) -> Option<Vec<usize>> {
        if self.timed_out.load(Ordering::Relaxed) {
            return None;
        }
        let m = self.g.edge_count();
        if cur.len() == m {
            if top + 1 != self.k {
                return None;
            }
            let n = self.leaves.fetch_add(1, Ordering::Relaxed);
            if n.is_multiple_of(DEADLINE_STRIDE) {
                if let Some(d) = self.deadline {
                    if Instant::now() > d {
                        self.timed_out.store(true, Ordering::Relaxed);
                        return None;
                    }
                }
            }
            let masks: Vec<u64> = cur.iter().map(|&c| 1u64 << c).collect();
            let ok = (0..self.g.vertex_count())
                .all(|s| reach_from(self.g, &masks, s).iter().all(|&r| r));
            return ok.then(|| cur.clone());
        }
        for c in 0..=(top + 1).min(self.k - 1) {
            let new_top = top.max(c);
            if !self.feasible(cur.len() + 1, new_top) {
                continue;
            }
            cur.push(c);
            let found = self.complete(cur, new_top);
            cur.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityVerdict {
    Equality,
    Strict,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IteratedEquality {
    /// `m − m₁`, the colours used by the star construction on `L²(G)`.
    pub construction_colors: usize,
    pub exact_rc: Option<usize>,
    pub verdict: EqualityVerdict,
    /// `G` is a path of length at least 3.
    pub is_long_path: bool,
}

/// Compares `m − m₁` with the exact `rc(L²(G))` when the oracle finishes.
pub fn check_iterated_equality(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<IteratedEquality, ColoringError> {
    let (coloring, cert) = color_iterated(g)?;
    debug_assert!(cert.verified);
    let chain = iterated_line_graph(g, 2)?;
    let l2 = &chain[1].graph;
    let construction_colors = coloring.colors_used();
    let (exact, verdict) = match exact_rc(l2, limits) {
        Ok(r) if r.rc == construction_colors => (Some(r.rc), EqualityVerdict::Equality),
        Ok(r) => (Some(r.rc), EqualityVerdict::Strict),
        Err(_) => (None, EqualityVerdict::Undecided),
    };
    Ok(IteratedEquality {
        construction_colors,
        exact_rc: exact,
        verdict,
        is_long_path: is_long_path(g),
    })
}

/// A connected graph whose degrees form a path with at least 3 edges.
pub fn is_long_path(g: &Graph) -> bool {
    let m = g.edge_count();
    m >= 3
        && g.is_connected()
        && m + 1 == g.vertex_count()
        && (0..g.vertex_count()).all(|v| g.degree(v) <= 2)
}

/// Summary of the bounds and exact value known for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RcReport {
    pub vertices: usize,
    pub edges: usize,
    pub diameter: Option<usize>,
    pub bounds: BTreeMap<String, usize>,
    pub construction_colors: Option<usize>,
    pub exact_rc: Option<usize>,
    pub exact_limits_hit: bool,
}

impl RcReport {
    pub fn new(g: &Graph) -> Self {
        RcReport {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            diameter: g.diameter(),
            bounds: BTreeMap::new(),
            construction_colors: None,
            exact_rc: None,
            exact_limits_hit: false,
        }
    }

    /// Runs the oracle and records its value or the fact that it gave up.
    pub fn with_exact(mut self, g: &Graph, limits: &OracleLimits) -> Self {
        match exact_rc(g, limits) {
            Ok(r) => self.exact_rc = Some(r.rc),
            Err(VerifyError::LimitExceeded { .. }) => self.exact_limits_hit = true,
            Err(_) => {}
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn col(v: &[usize]) -> EdgeColoring {
        EdgeColoring::new(v.to_vec()).unwrap()
    }

    #[test]
    fn complete_graph_one_color() {
        let k4 = families::complete(4);
        let c = EdgeColoring::uniform(k4.edge_count(), 1);
        assert!(is_rainbow_connected(&k4, &c).unwrap().connected);
    }

    #[test]
    fn monochromatic_p3_fails_on_endpoints() {
        let p3 = families::path(3);
        let r = is_rainbow_connected(&p3, &col(&[1, 1])).unwrap();
        assert_eq!(r.failing_pair, Some((0, 2)));
    }

    #[test]
    fn alternating_c4() {
        let c4 = families::cycle(4);
        assert!(
            is_rainbow_connected(&c4, &col(&[1, 2, 1, 2]))
                .unwrap()
                .connected
        );
        assert!(
            !is_rainbow_connected(&c4, &col(&[1, 1, 2, 2]))
                .unwrap()
                .connected
        );
    }

    #[test]
    fn checker_errors() {
        let p3 = families::path(3);
        assert_eq!(
            is_rainbow_connected(&p3, &col(&[1])).unwrap_err(),
            VerifyError::LengthMismatch {
                expected: 2,
                found: 1
            }
        );
        let big = families::path(70);
        let c = EdgeColoring::new((1..70).collect()).unwrap();
        assert!(matches!(
            is_rainbow_connected(&big, &c),
            Err(VerifyError::TooManyColors { .. })
        ));
        // sparse ids are compacted, not rejected
        let c = EdgeColoring::new(vec![5, 900]).unwrap();
        assert!(is_rainbow_connected(&p3, &c).unwrap().connected);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = families::petersen();
        let c = EdgeColoring::new((0..15).map(|e| e % 3 + 1).collect()).unwrap();
        assert_eq!(
            is_rainbow_connected_with(&g, &c, Execution::Sequential).unwrap(),
            is_rainbow_connected_with(&g, &c, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn oracle_examples() {
        let limits = OracleLimits::default();
        assert_eq!(exact_rc(&families::cycle(5), &limits).unwrap().rc, 3);
        assert_eq!(exact_rc(&families::path(5), &limits).unwrap().rc, 4);
        assert_eq!(exact_rc(&families::complete(4), &limits).unwrap().rc, 1);
        let r = exact_rc(&families::cycle(6), &limits).unwrap();
        assert_eq!(r.rc, 3);
        assert_eq!(r.witness.colors_used(), 3);
        assert!(
            is_rainbow_connected(&families::cycle(6), &r.witness)
                .unwrap()
                .connected
        );
    }

    #[test]
    fn oracle_limits() {
        let limits = OracleLimits {
            max_edges: 4,
            ..OracleLimits::default()
        };
        assert_eq!(
            exact_rc(&families::cycle(5), &limits).unwrap_err(),
            VerifyError::LimitExceeded { lower: 2, upper: 5 }
        );
        assert_eq!(
            exact_rc(&Graph::empty(1), &limits).unwrap_err(),
            VerifyError::Trivial
        );
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            exact_rc(&two_edges, &limits).unwrap_err(),
            VerifyError::Disconnected
        );
    }

    #[test]
    fn zero_budget_reports_bracket() {
        let limits = OracleLimits {
            time_budget: Some(Duration::ZERO),
            ..OracleLimits::default()
        };
        // star K_{1,6}: diameter 2, rc 6, so level 2 must be searched
        match exact_rc(&families::star(6), &limits) {
            Err(VerifyError::LimitExceeded { lower, upper }) => {
                assert_eq!((lower, upper), (2, 6));
            }
            other => panic!("expected a bracket, got {other:?}"),
        }
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(rc_lower_bound(&families::complete(5)).unwrap(), 1);
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(rc_lower_bound(&g).unwrap_err(), VerifyError::Disconnected);
    }

    #[test]
    fn long_path_predicate() {
        assert!(is_long_path(&families::path(4)));
        assert!(!is_long_path(&families::path(3)));
        assert!(!is_long_path(&families::cycle(4)));
        assert!(!is_long_path(&families::spider(3, 2)));
    }
}
