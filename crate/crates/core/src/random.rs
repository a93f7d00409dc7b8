//! Seeded random graph models. Every sampler draws from a caller-supplied RNG,
//! so a fixed seed reproduces the same instance stream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// The RNG used by the CLI and test ensembles.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One `G(n, p)` sample.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, pairs).expect("sampled pairs are distinct")
}

/// `G(n, p)` resampled until connected. `n ≥ 2` and `p > 0`.
pub fn gnp_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(n >= 2 && p > 0.0, "gnp_connected needs n >= 2 and p > 0");
    loop {
        let g = gnp(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Connected simple cubic graph on `n` vertices (even, ≥ 4) from the
/// configuration model with rejection.
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(
        n >= 4 && n.is_multiple_of(2),
        "cubic graphs need an even n >= 4"
    );
    let mut points: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
    'retry: loop {
        points.shuffle(rng);
        let mut pairs = Vec::with_capacity(3 * n / 2);
        for pair in points.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b {
                continue 'retry;
            }
            pairs.push((a, b));
        }
        match Graph::new(n, pairs) {
            Ok(g) if g.is_connected() => return g,
            _ => continue,
        }
    }
}
