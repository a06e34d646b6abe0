use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gwa_bench::{random_monomials, random_pairs, worked_pair};
use gwa_core::groth::{groth_mul_modules, groth_mul_rewrite};
use gwa_core::oracle::{kronecker_tensor, oracle_decompose, realize};
use gwa_core::tensor::tensor;

fn tensor_products(c: &mut Criterion) {
    let (a, b) = worked_pair();
    c.bench_function("tensor/worked_example", |bench| {
        bench.iter(|| tensor(black_box(&a), black_box(&b)).unwrap())
    });
    let pairs = random_pairs(4, 16, 7);
    c.bench_function("tensor/random_p4", |bench| {
        bench.iter(|| {
            for (a, b) in &pairs {
                let _ = tensor(black_box(a), black_box(b));
            }
        })
    });
}

fn groth_products(c: &mut Criterion) {
    let ms = random_monomials(3, 3, 8, 11);
    let mut group = c.benchmark_group("groth_mul");
    group.bench_function("rewrite", |bench| {
        bench.iter(|| {
            for w in ms.windows(2) {
                groth_mul_rewrite(black_box(&w[0]), black_box(&w[1])).unwrap();
            }
        })
    });
    group.bench_function("modules", |bench| {
        bench.iter(|| {
            for w in ms.windows(2) {
                groth_mul_modules(black_box(&w[0]), black_box(&w[1])).unwrap();
            }
        })
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let (a, b) = worked_pair();
    let kron = kronecker_tensor(&realize(&a), &realize(&b)).unwrap();
    c.bench_function("oracle/kronecker_worked_example", |bench| {
        bench.iter(|| kronecker_tensor(&realize(black_box(&a)), &realize(black_box(&b))).unwrap())
    });
    c.bench_function("oracle/decompose_worked_example", |bench| {
        bench.iter(|| oracle_decompose(black_box(&kron)).unwrap())
    });
}

criterion_group!(benches, tensor_products, groth_products, oracle);
criterion_main!(benches);
