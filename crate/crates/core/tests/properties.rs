use gwa_core::graphmod::{graph_tensor, graph_to_module, graph_union, graph_validate, random_graph, GraphModule};
use gwa_core::groth::{groth_mul_rewrite, random_monomial, GrothElement};
use gwa_core::modules::{
    composition_factors, decompose, decompositions_isomorphic, dimension_vector, is_indecomposable, Decomposition,
    IsoData, Module,
};
use gwa_core::oracle::{oracle_composition_series, oracle_iso_data, realize};
use gwa_core::orbit::{canonical_shift, word_shift, word_tensor, OrbitConfig, Word};
use gwa_core::sample::{random_module, SampleBounds};
use gwa_core::scalars::{companion, poly_power_bracket, CycloScalar, Poly};
use gwa_core::tensor::{tensor, tensor_decompositions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 6, 12])
}

fn scalar(n: u32) -> impl Strategy<Value = CycloScalar> {
    prop::collection::vec(-4i64..=4, n as usize).prop_map(move |cs| {
        cs.iter().enumerate().fold(CycloScalar::zero(n), |acc, (k, &c)| {
            &acc + &(&CycloScalar::from_int(c, n) * &CycloScalar::root_of_unity(k as i64, n))
        })
    })
}

fn modules(seed: u64, p: u32, count: usize) -> Vec<Module> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = OrbitConfig::with_p(p);
    let b = SampleBounds::default();
    (0..count).map(|_| random_module(&mut rng, &cfg, &b)).collect()
}

fn tensor_iso(a: &Decomposition, b: &Decomposition) -> bool {
    decompositions_isomorphic(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in conductor().prop_flat_map(|n| (scalar(n), scalar(n), scalar(n)))) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn companion_has_its_polynomial(cs in prop::collection::vec(-3i64..=3, 1..=4), c0 in 1i64..=3) {
        let mut coeffs = vec![c0];
        coeffs.extend(cs);
        coeffs.push(1);
        let f = Poly::from_ints(&coeffs, 3);
        prop_assert_eq!(companion(&f).unwrap().charpoly(), f.monic());
    }

    #[test]
    fn power_bracket_composes(cs in prop::collection::vec(-2i64..=2, 1..=3), c0 in 1i64..=2, m in 1u32..=3, n in 1u32..=2) {
        let mut coeffs = vec![c0];
        coeffs.extend(cs);
        coeffs.push(1);
        let f = Poly::from_ints(&coeffs, 1);
        prop_assert_eq!(
            poly_power_bracket(&f, m * n),
            poly_power_bracket(&poly_power_bracket(&f, m), n)
        );
    }

    #[test]
    fn word_tensor_is_commutative_and_keeps_validity(seed in any::<u64>(), p in 1u32..=3) {
        let cfg = OrbitConfig::with_p(p);
        for pair in modules(seed, p, 8).chunks(2) {
            let (Module::Cycle(a), Module::Cycle(b)) = (&pair[0], &pair[1]) else { continue };
            let w = word_tensor(&cfg, &a.w, &b.w).unwrap();
            prop_assert_eq!(&w, &word_tensor(&cfg, &b.w, &a.w).unwrap());
            prop_assert!(Word::cyclic(w).is_valid(&a.t.mul(&b.t)));
        }
    }

    #[test]
    fn canonical_shift_is_constant_on_orbits(seed in any::<u64>(), p in 1u32..=4) {
        let cfg = OrbitConfig::with_p(p);
        for m in modules(seed, p, 6) {
            let Module::Cycle(c) = m else { continue };
            let (canon, _) = canonical_shift(&cfg, &c.w).unwrap();
            prop_assert_eq!(&canonical_shift(&cfg, &canon).unwrap().0, &canon);
            for j in 0..c.r() as i64 {
                let shifted = word_shift(&cfg, &c.w, j).unwrap();
                prop_assert_eq!(&canonical_shift(&cfg, &shifted).unwrap().0, &canon);
            }
        }
    }

    #[test]
    fn decomposition_preserves_dimension(seed in any::<u64>(), p in 2u32..=4) {
        for m in modules(seed, p, 4) {
            let Ok(d) = decompose(&m) else { continue };
            prop_assert_eq!(d.dimension_vector(p), dimension_vector(&m));
            for (s, _) in d.iter() {
                prop_assert!(is_indecomposable(s));
            }
            let cf = composition_factors(&m).unwrap();
            prop_assert_eq!(cf.dimension_vector(p), dimension_vector(&m));
        }
    }

    #[test]
    fn oracle_recovers_each_module(seed in any::<u64>(), p in 2u32..=5) {
        for m in modules(seed, p, 3) {
            let e = realize(&m);
            e.check_relations().unwrap();
            let iso = IsoData::of(&Decomposition::single(m.clone())).unwrap();
            prop_assert!(iso.isomorphic(&oracle_iso_data(&e).unwrap()), "{}", m);
        }
    }

    #[test]
    fn composition_length_is_seed_independent(seed in any::<u64>(), p in 2u32..=3) {
        for m in modules(seed, p, 2) {
            let e = realize(&m);
            let Ok(want) = composition_factors(&m) else {
                prop_assert!(oracle_composition_series(&e, seed).is_err());
                continue;
            };
            let a = oracle_composition_series(&e, seed).unwrap();
            let b = oracle_composition_series(&e, seed.wrapping_add(1)).unwrap();
            prop_assert_eq!(a.count(), b.count());
            prop_assert_eq!(a, want);
        }
    }

    #[test]
    fn support_rule_and_commutativity(seed in any::<u64>(), p in 2u32..=4) {
        let ms = modules(seed, p, 2);
        let (a, b) = (&ms[0], &ms[1]);
        let ab = tensor(a, b).unwrap();
        let ba = tensor(b, a).unwrap();
        let da = dimension_vector(a);
        let db = dimension_vector(b);
        let want: Vec<usize> = da.iter().zip(&db).map(|(x, y)| x * y).collect();
        prop_assert_eq!(ab.decomposition.dimension_vector(p), want);
        prop_assert_eq!(&ab.product_t, &a.t().mul(b.t()));
        prop_assert!(tensor_iso(&ab.decomposition, &ba.decomposition));
    }

    #[test]
    fn tensor_is_associative(seed in any::<u64>(), p in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = OrbitConfig::with_p(p);
        let b = SampleBounds { max_reps: 2, max_jordan: 2, zero_rate: 0.1 };
        let ms: Vec<Module> = (0..3).map(|_| random_module(&mut rng, &cfg, &b)).collect();
        let one = |m: &Module| Decomposition::single(m.clone());
        let left = tensor_decompositions(&tensor(&ms[0], &ms[1]).unwrap().decomposition, &one(&ms[2])).unwrap();
        let right = tensor_decompositions(&one(&ms[0]), &tensor(&ms[1], &ms[2]).unwrap().decomposition).unwrap();
        prop_assert!(tensor_iso(&left, &right));
    }

    #[test]
    fn pre_split_invariance(seed in any::<u64>(), p in 2u32..=4) {
        let ms = modules(seed, p, 2);
        let (Ok(d0), Ok(d1)) = (decompose(&ms[0]), decompose(&ms[1])) else { return Ok(()) };
        let whole = tensor(&ms[0], &ms[1]).unwrap().decomposition;
        let split = tensor_decompositions(&d0, &d1).unwrap();
        prop_assert!(tensor_iso(&whole, &split));
    }

    #[test]
    fn rewrite_is_commutative_and_unital(seed in any::<u64>(), p in 2u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = OrbitConfig::new(p, 12).unwrap();
        let [a, b, c] = [0, 1, 2].map(|_| GrothElement::monomial(cfg, random_monomial(&mut rng, &cfg, 2)));
        let one = GrothElement::one(cfg);
        prop_assert_eq!(groth_mul_rewrite(&one, &a).unwrap(), a.clone());
        prop_assert_eq!(groth_mul_rewrite(&a, &b).unwrap(), groth_mul_rewrite(&b, &a).unwrap());
        let left = groth_mul_rewrite(&groth_mul_rewrite(&a, &b).unwrap(), &c).unwrap();
        let right = groth_mul_rewrite(&a, &groth_mul_rewrite(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn graph_products_stay_valid(seed in any::<u64>(), p in 1u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = OrbitConfig::new(p, 12).unwrap();
        let g1 = random_graph(&mut rng, &cfg);
        let g2 = random_graph(&mut rng, &cfg);
        prop_assert!(graph_validate(&g1).is_ok());
        prop_assert!(graph_validate(&graph_tensor(&g1, &g2).unwrap()).is_ok());
    }

    #[test]
    fn disjoint_union_is_direct_sum(seed in any::<u64>(), p in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = OrbitConfig::new(p, 12).unwrap();
        let g1 = random_graph(&mut rng, &cfg);
        let mut g2 = random_graph(&mut rng, &cfg);
        g2.t = g1.t.clone();
        for v in g2.vertices.iter_mut() {
            v.id = format!("b{}", v.id);
        }
        for e in g2.edges.iter_mut() {
            e.from = format!("b{}", e.from);
            e.to = format!("b{}", e.to);
        }
        // g2 only stays valid if it was built for the same parameter
        prop_assume!(graph_validate(&g2).is_ok());
        let union = graph_union(&g1, &g2).unwrap();
        let mut sum = graph_to_module(&g1).unwrap();
        sum.extend(&graph_to_module(&g2).unwrap(), 1);
        prop_assert!(tensor_iso(&graph_to_module(&union).unwrap(), &sum));
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), p in 2u32..=4) {
        let ms = modules(seed, p, 2);
        for m in &ms {
            let back: Module = serde_json::from_str(&serde_json::to_string(m).unwrap()).unwrap();
            prop_assert_eq!(&back, m);
        }
        let d = tensor(&ms[0], &ms[1]).unwrap().decomposition;
        let back: Decomposition = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = OrbitConfig::new(p, 12).unwrap();
        let e = GrothElement::monomial(cfg, random_monomial(&mut rng, &cfg, 3));
        let back: GrothElement = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
        let g = random_graph(&mut rng, &cfg);
        let back: GraphModule = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }
}
