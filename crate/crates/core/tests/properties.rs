use std::collections::BTreeSet;

use proptest::prelude::*;
use rclg::coloring::{color_thm31, color_thm32};
use rclg::io::{parse_edge_list, render_edge_list};
use rclg::line_graph::line_graph;
use rclg::triangles::{
    build_transformed, enumerate_triangles, operation2, pack_edge_disjoint, DEFAULT_EXACT_CAP,
};
use rclg::verify::is_rainbow_connected;
use rclg::{Graph, PackingMode};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let chosen = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p);
            Graph::new(n, chosen).unwrap()
        })
    })
}

fn connected_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_filter("connected with 2+ edges", |g| {
        g.is_connected() && g.edge_count() >= 2
    })
}

/// All-pairs distances by Floyd–Warshall.
fn floyd_diameter(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let best = d.iter().flatten().copied().max().unwrap_or(0);
    (best < inf).then_some(best)
}

/// Edge sets of all simple cycles.
fn simple_cycles(g: &Graph) -> Vec<BTreeSet<usize>> {
    fn dfs(
        g: &Graph,
        start: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        edges: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        for &(w, e) in g.incident(v) {
            if w == start && edges.len() >= 2 && !edges.contains(&e) {
                out.push(edges.iter().copied().chain([e]).collect());
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                edges.push(e);
                dfs(g, start, w, on_path, edges, out);
                edges.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        let mut on_path = vec![false; g.vertex_count()];
        on_path[s] = true;
        dfs(g, s, s, &mut on_path, &mut Vec::new(), &mut out);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diameter_matches_floyd(g in graph_strategy(8)) {
        prop_assert_eq!(g.diameter(), floyd_diameter(&g));
    }

    #[test]
    fn blocks_are_cycle_classes(g in graph_strategy(7)) {
        let b = g.blocks();
        let mut block_of = vec![usize::MAX; g.edge_count()];
        for (i, block) in b.blocks.iter().enumerate() {
            for &e in block {
                prop_assert_eq!(block_of[e], usize::MAX);
                block_of[e] = i;
            }
        }
        prop_assert!(block_of.iter().all(|&i| i != usize::MAX));
        let cycles = simple_cycles(&g);
        for e in 0..g.edge_count() {
            for f in e + 1..g.edge_count() {
                let together = cycles.iter().any(|c| c.contains(&e) && c.contains(&f));
                prop_assert_eq!(block_of[e] == block_of[f], together);
            }
        }
    }

    #[test]
    fn star_cliques_partition_line_graph(g in graph_strategy(8)) {
        let l = line_graph(&g);
        let mut seen = vec![0; l.graph.edge_count()];
        for (v, edges) in l.star_edges.iter().enumerate() {
            let d = g.degree(v);
            prop_assert_eq!(edges.len(), d * d.saturating_sub(1) / 2);
            for &e in edges {
                seen[e] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        for x in 0..l.graph.vertex_count() {
            let containing = l.star_of.iter().filter(|s| s.contains(&x)).count();
            prop_assert_eq!(containing, 2);
        }
    }

    #[test]
    fn packings_are_valid_and_exact_dominates(g in graph_strategy(7)) {
        for mode in PackingMode::ALL {
            let p = pack_edge_disjoint(&g, mode, DEFAULT_EXACT_CAP).unwrap();
            let edges = p.edge_set();
            let distinct: BTreeSet<usize> = edges.iter().copied().collect();
            prop_assert_eq!(edges.len(), distinct.len());
            prop_assert_eq!(p.op, 2 * p.t + p.c - p.covered_vertices.len());
            if mode.is_forest() {
                prop_assert_eq!(p.op, 0);
            }
            // three equivalent forest tests per component
            for comp in &p.components {
                let sub = g.induced_by_edges(
                    &comp.triangles.iter().flat_map(|&i| p.triangles[i].edge_ids).collect::<Vec<_>>(),
                ).unwrap();
                let all_triangle_blocks = sub.graph.blocks().blocks.iter().all(|b| b.len() == 3);
                prop_assert_eq!(comp.is_forest, comp.vertices.len() == 2 * comp.size() + 1);
                prop_assert_eq!(comp.is_forest, all_triangle_blocks);
            }
        }
        let t = |m| pack_edge_disjoint(&g, m, DEFAULT_EXACT_CAP).unwrap().t;
        prop_assert!(t(PackingMode::Exact) >= t(PackingMode::Greedy));
        prop_assert!(t(PackingMode::ForestExact) >= t(PackingMode::ForestGreedy));
        prop_assert!(t(PackingMode::Exact) >= t(PackingMode::ForestExact));
    }

    #[test]
    fn operation2_adds_one_vertex(g in graph_strategy(8)) {
        let tris = enumerate_triangles(&g);
        for v in 0..g.vertex_count() {
            let mut at_v = Vec::new();
            for t in tris.iter().filter(|t| t.contains(v)) {
                if at_v.iter().all(|o: &rclg::Triangle| o.edge_ids.iter().all(|e| !t.has_edge(*e))) {
                    at_v.push(t.clone());
                }
            }
            if at_v.len() >= 2 {
                let (h, _) = operation2(&g, v, &at_v[..1], &at_v[1..]).unwrap();
                prop_assert_eq!(h.edge_count(), g.edge_count());
                prop_assert_eq!(h.vertex_count(), g.vertex_count() + 1);
            }
        }
    }

    #[test]
    fn transformation_replays_and_uses_op_splits(g in connected_strategy(8)) {
        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        let tr = build_transformed(&g, &p).unwrap();
        prop_assert_eq!(tr.trace.op2_count(), p.op);
        prop_assert_eq!(tr.trace.replay().unwrap(), tr.trace.final_graph.clone());
        prop_assert_eq!(tr.packing.op, 0);
        prop_assert_eq!(tr.packing.c, p.c);
    }

    #[test]
    fn constructions_verify(g in connected_strategy(8)) {
        let n2 = g.degree_profile().n2;
        let p = pack_edge_disjoint(&g, PackingMode::ForestExact, DEFAULT_EXACT_CAP).unwrap();
        let (c, cert) = color_thm31(&g, &p).unwrap();
        prop_assert!(cert.verified);
        prop_assert!(c.colors_used() <= n2 - p.t);
        let l = line_graph(&g);
        prop_assert!(is_rainbow_connected(&l.graph, &c).unwrap().connected);

        let p = pack_edge_disjoint(&g, PackingMode::Exact, DEFAULT_EXACT_CAP).unwrap();
        let (c, cert) = color_thm32(&g, &p).unwrap();
        prop_assert!(cert.verified);
        prop_assert!(c.colors_used() <= p.t + p.n2_prime + p.c);
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(9)) {
        prop_assert_eq!(parse_edge_list(&render_edge_list(&g)).unwrap(), g);
    }
}
