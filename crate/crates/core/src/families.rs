//! Deterministic graph families.
//!
//! Vertex numbering is fixed so that generated instances, and everything
//! derived from them, are reproducible:
//!
//! * `example31(t)`: triangle `i` is `{3i, 3i+1, 3i+2}`; bridge `i` joins
//!   `3i+2` to `3i+3`. `3t` vertices, `4t − 1` edges.
//! * `example32(k)`: `uᵢ = 2(i−1)`, `vᵢ = 2i−1` for triangles
//!   `{uᵢ, vᵢ, uᵢ₊₁}`, `i < k`; then the pendent path `u_k – (2k−1) – 2k`.
//! * `triangle_ring(r)`: hub `hᵢ = 2i`, apex `aᵢ = 2i+1`, triangles
//!   `{hᵢ, aᵢ, hᵢ₊₁ mod r}`.
//! * `friendship(f)`: hub `0`, triangles `{0, 2i+1, 2i+2}`.
//! * `petersen()`: outer cycle `0..5`, inner pentagram `5..10`, spokes `i – i+5`.
//! * `spider(legs, len)`: centre `0`, leg `j` is `0 – 1+j·len – … – (j+1)·len`.

use crate::graph::Graph;

fn build(n: usize, pairs: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, pairs).expect("family generators emit simple graphs")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// `C_n` for `n ≥ 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    build(n, pairs)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            pairs.push((u, v));
        }
    }
    build(a + b, pairs)
}

/// `K_{1,k}` centred at `0`.
pub fn star(k: usize) -> Graph {
    build(k + 1, (1..=k).map(|i| (0, i)).collect())
}

pub fn spider(legs: usize, len: usize) -> Graph {
    let mut pairs = Vec::new();
    for j in 0..legs {
        let mut prev = 0;
        for s in 0..len {
            let v = 1 + j * len + s;
            pairs.push((prev, v));
            prev = v;
        }
    }
    build(1 + legs * len, pairs)
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    for i in 0..5 {
        pairs.push((i, i + 5));
    }
    build(10, pairs)
}

/// `t` vertex-disjoint triangles chained into a path by `t − 1` bridges.
pub fn example31(t: usize) -> Graph {
    assert!(t >= 1);
    let mut pairs = Vec::new();
    for i in 0..t {
        let b = 3 * i;
        pairs.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        if i + 1 < t {
            pairs.push((b + 2, b + 3));
        }
    }
    build(3 * t, pairs)
}

/// Triangles `{uᵢ, vᵢ, uᵢ₊₁}` for `i < k` plus a pendent 2-length path at `u_k`.
pub fn example32(k: usize) -> Graph {
    assert!(k >= 2);
    let u = |i: usize| 2 * (i - 1);
    let v = |i: usize| 2 * i - 1;
    let mut pairs = Vec::new();
    for i in 1..k {
        pairs.extend([(u(i), v(i)), (v(i), u(i + 1)), (u(i), u(i + 1))]);
    }
    pairs.extend([(u(k), 2 * k - 1), (2 * k - 1, 2 * k)]);
    build(2 * k + 1, pairs)
}

/// `r ≥ 3` triangles chained cyclically through `r` shared vertices.
pub fn triangle_ring(r: usize) -> Graph {
    assert!(r >= 3);
    let mut pairs = Vec::new();
    for i in 0..r {
        let (h, a, next) = (2 * i, 2 * i + 1, 2 * ((i + 1) % r));
        pairs.extend([(h, a), (a, next), (h, next)]);
    }
    build(2 * r, pairs)
}

/// `f` triangles sharing the single vertex `0`.
pub fn friendship(f: usize) -> Graph {
    assert!(f >= 1);
    let mut pairs = Vec::new();
    for i in 0..f {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        pairs.extend([(0, a), (a, b), (0, b)]);
    }
    build(2 * f + 1, pairs)
}
