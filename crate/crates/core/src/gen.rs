//! Random posets for property checks.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{Element, ElementId, FinitePoset};

/// Environment variable holding the seed for randomized checks.
pub const SEED_ENV: &str = "STRATAFLOW_SEED";

const DEFAULT_SEED: u64 = 0x5eed_f10e;

/// Seed from `STRATAFLOW_SEED`, or a fixed default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

/// Random poset on `n` points: each pair `i < j` of a hidden linear order is
/// related with probability `density`, then closed transitively.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let elements = (0..n).map(|i| Element::new(format!("p{i}"))).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                covers.push((
                    ElementId::new(format!("p{}", perm[i])),
                    ElementId::new(format!("p{}", perm[j])),
                ));
            }
        }
    }
    FinitePoset::build(elements, &covers).expect("pairs follow a linear order")
}
