use gwa_core::modules::{IsoData, Module};
use gwa_core::oracle::{kronecker_tensor, oracle_decompose, oracle_iso_data, realize};
use gwa_core::orbit::OrbitConfig;
use gwa_core::sample::{random_module, SampleBounds};
use gwa_core::tensor::tensor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn agrees(m1: &Module, m2: &Module) -> bool {
    let sym = tensor(m1, m2).unwrap().decomposition;
    let kron = kronecker_tensor(&realize(m1), &realize(m2)).unwrap();
    let ok = IsoData::of(&sym).unwrap().isomorphic(&oracle_iso_data(&kron).unwrap());
    if let Ok(d) = oracle_decompose(&kron) {
        assert_eq!(d, sym, "split summands of {} and {}", m1, m2);
    }
    ok
}

#[test]
fn sampled_pairs_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bounds = SampleBounds {
        max_reps: 3,
        max_jordan: 3,
        zero_rate: 0.1,
    };
    for n in 0..100u32 {
        let cfg = OrbitConfig::with_p(2 + n % 4);
        let m1 = random_module(&mut rng, &cfg, &bounds);
        let m2 = random_module(&mut rng, &cfg, &bounds);
        assert!(agrees(&m1, &m2), "mismatch on {} and {}", m1, m2);
    }
}

#[test]
fn larger_conductor_pairs_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let bounds = SampleBounds::default();
    for n in 0..40u32 {
        let cfg = OrbitConfig::new(2 + n % 3, 12).unwrap();
        let m1 = random_module(&mut rng, &cfg, &bounds);
        let m2 = random_module(&mut rng, &cfg, &bounds);
        assert!(agrees(&m1, &m2), "mismatch on {} and {}", m1, m2);
    }
}
