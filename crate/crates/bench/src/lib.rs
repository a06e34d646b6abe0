//! Fixed inputs shared by the benchmarks.

use gwa_core::groth::{random_monomial, GrothElement};
use gwa_core::modules::{Module, PathModule};
use gwa_core::orbit::{parse_letters, OrbitConfig, TParam};
use gwa_core::sample::{random_module, SampleBounds};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The two path modules of the worked tensor example, `p = 3`.
pub fn worked_pair() -> (Module, Module) {
    let cfg = OrbitConfig::with_p(3);
    let a = PathModule::new(
        cfg,
        TParam::parse("0:1,2:1", 3).unwrap(),
        2,
        parse_letters("x1x").unwrap(),
    );
    let b = PathModule::new(
        cfg,
        TParam::parse("1:1,2:1", 3).unwrap(),
        2,
        parse_letters("1yx10x1").unwrap(),
    );
    (Module::Path(a.unwrap()), Module::Path(b.unwrap()))
}

/// Seeded random module pairs over an orbit of size `p`.
pub fn random_pairs(p: u32, count: usize, seed: u64) -> Vec<(Module, Module)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = OrbitConfig::with_p(p);
    let b = SampleBounds::default();
    (0..count)
        .map(|_| (random_module(&mut rng, &cfg, &b), random_module(&mut rng, &cfg, &b)))
        .collect()
}

/// Seeded Grothendieck monomials of the given degree, conductor 12.
pub fn random_monomials(p: u32, deg: u32, count: usize, seed: u64) -> Vec<GrothElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = OrbitConfig::new(p, 12).unwrap();
    (0..count)
        .map(|_| GrothElement::monomial(cfg, random_monomial(&mut rng, &cfg, deg)))
        .collect()
}
