//! Shared inputs for the pipeline benchmarks.

use strataflow::flows::{build_stratified_poset, enumerate_component, ComponentSignature};
use strataflow::gen::random_poset;
use strataflow::FinitePoset;

/// The 29-class annulus component as a plain poset.
pub fn component_poset() -> FinitePoset {
    let e = enumerate_component(&ComponentSignature::annulus(), 3).expect("supported signature");
    build_stratified_poset(&e)
        .expect("moves stay inside the enumeration")
        .poset()
        .clone()
}

/// Deterministic random posets of the given size.
pub fn random_posets(count: usize, n: usize, density: f64) -> Vec<FinitePoset> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    (0..count).map(|_| random_poset(&mut rng, n, density)).collect()
}
