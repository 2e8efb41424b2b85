//! Seeded random instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer; derives per-instance seeds from a campaign seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `G(n, p)`; pairs are visited in lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let p = p.clamp(0.0, 1.0);
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Random bipartite adjacency: `adj[x]` lists the `Y`-indices adjacent to `x`.
pub fn random_bipartite(nx: usize, ny: usize, p: f64, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let p = p.clamp(0.0, 1.0);
    (0..nx).map(|_| (0..ny).filter(|_| rng.gen_bool(p)).collect()).collect()
}

/// A random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
