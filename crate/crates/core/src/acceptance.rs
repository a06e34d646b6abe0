//! The acceptance suite: nine end-to-end checks, each with a time limit.
//!
//! Every check returns a [`CriterionReport`]. The suite is shared by the
//! `acceptance` integration test and the `gwa selftest` command.

use crate::graphmod::{figure_instance, graph_realize, graph_tensor, graph_to_module, graph_validate, random_graph};
use crate::groth::{
    basis_dimension, cyclic_chain, groth_mul_modules, groth_mul_rewrite, hilbert_enumerated, hilbert_series_coeff,
    random_monomial, GrothElement, Rel,
};
use crate::modules::{
    composition_factors, decompositions_isomorphic, is_indecomposable, is_simple, split_path_at_zeros, CycleModule,
    Decomposition, IsoData, Module, PathModule,
};
use crate::oracle::{kronecker_tensor, oracle_iso_data, realize};
use crate::orbit::{parse_letters, Letter, OrbitConfig, TParam};
use crate::sample::{random_module, SampleBounds};
use crate::scalars::{jordan_decompose, CycloScalar, JordanType};
use crate::split::{
    canonical_y_word, class_to_quotient, decomposition_to_quotient, quotient_generator_module, quotient_mul,
    quotient_mul_modules, semisimple_symbol_module, semisimple_symbol_mul, simple_to_symbol, trivial_mul,
    QuotientElement, QuotientSplitMonomial, SemisimpleSymbol, TrivialElement, TrivialSplitMonomial, YPower,
};
use crate::tensor::{tensor, tensor_decompositions};
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::time::{Duration, Instant};

/// Conductor used wherever sample scalars from `Q(zeta_12)` are needed.
const CONDUCTOR: u32 = 12;

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ({:.2}s, limit {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

fn run_timed(id: u32, name: &'static str, limit_secs: u64, f: impl FnOnce() -> Check) -> CriterionReport {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let (ok, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if ok && elapsed > limit {
        detail = format!("{}; exceeded the time limit", detail);
    }
    CriterionReport {
        id,
        name,
        passed: ok && elapsed <= limit,
        elapsed,
        limit,
        detail,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Four sample scalars in `Q(zeta_12)^x`: `1`, `zeta`, `-2` and `3 zeta^5`.
pub fn sample_scalars() -> Vec<CycloScalar> {
    let n = CONDUCTOR;
    vec![
        CycloScalar::from_int(1, n),
        CycloScalar::root_of_unity(1, n),
        CycloScalar::from_int(-2, n),
        &CycloScalar::from_int(3, n) * &CycloScalar::root_of_unity(5, n),
    ]
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=9).filter_map(run).collect()
}

pub fn run(id: u32) -> Option<CriterionReport> {
    Some(match id {
        1 => run_timed(1, "worked tensor example", 1, example_reproduction),
        2 => run_timed(2, "Grothendieck ring relations", 120, relation_certification),
        3 => run_timed(3, "Hilbert series", 10, hilbert_series),
        4 => run_timed(4, "Jordan block tensor products", 10, jordan_tensor),
        5 => run_timed(5, "oracle equivalence", 300, oracle_equivalence),
        6 => run_timed(6, "semisimple section", 30, semisimple_section),
        7 => run_timed(7, "split quotient ring", 30, split_quotient),
        8 => run_timed(8, "graph module products", 60, graph_products),
        9 => run_timed(9, "ring axioms", 60, ring_axioms),
        _ => return None,
    })
}

// ---------------------------------------------------------------------------
// 1

fn example_reproduction() -> Check {
    let cfg = OrbitConfig::with_p(3);
    let tp = |s: &str| TParam::parse(s, 3).map_err(err);
    let lw = |s: &str| parse_letters(s).map_err(err);
    let a = PathModule::new(cfg, tp("0:1,2:1")?, 2, lw("x1x")?).map_err(err)?;
    let b = PathModule::new(cfg, tp("1:1,2:1")?, 2, lw("1yx10x1")?).map_err(err)?;
    let tt = tp("0:1,1:1,2:2")?;
    let mut want = Decomposition::new();
    for (i, w, k) in [(2, "xyx", 1), (2, "", 1), (2, "x", 2), (1, "x", 1)] {
        want.push(
            Module::Path(PathModule::new(cfg, tt.clone(), i, lw(w)?).map_err(err)?),
            k,
        );
    }
    let direct = tensor(&Module::Path(a.clone()), &Module::Path(b.clone())).map_err(err)?;
    ensure(direct.decomposition == want, || {
        format!("direct route gave {}", direct.decomposition)
    })?;
    ensure(direct.product_t == tt, || {
        format!("product parameter {}", direct.product_t)
    })?;
    let pieces = split_path_at_zeros(&b);
    ensure(pieces.count() == 2, || format!("pre-split pieces {}", pieces))?;
    let mut pre = Decomposition::new();
    for (piece, k) in pieces.iter() {
        pre.extend(&tensor(&Module::Path(a.clone()), piece).map_err(err)?.decomposition, k);
    }
    ensure(pre == want, || format!("pre-split route gave {}", pre))?;
    Ok(format!("both routes give {}", want))
}

// ---------------------------------------------------------------------------
// 2 and 9

/// Products in the Grothendieck ring, computed by tensoring modules and
/// cross-checked against the rewriting system on every call.
struct GrothProducts {
    products: usize,
}

impl GrothProducts {
    fn mul(&mut self, a: &GrothElement, b: &GrothElement) -> std::result::Result<GrothElement, String> {
        self.products += 1;
        let m = groth_mul_modules(a, b).map_err(|e| format!("({}) * ({}): {}", a, b, e))?;
        let r = groth_mul_rewrite(a, b).map_err(|e| format!("({}) * ({}): {}", a, b, e))?;
        ensure(m == r, || {
            format!("({}) * ({}): modules give {}, rewriting gives {}", a, b, m, r)
        })?;
        Ok(m)
    }

    fn prod(&mut self, factors: &[&GrothElement]) -> std::result::Result<GrothElement, String> {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }
}

struct Generators {
    cfg: OrbitConfig,
    x: Vec<GrothElement>,
    y: Vec<GrothElement>,
    ys: Vec<GrothElement>,
    u: Vec<(CycloScalar, GrothElement)>,
}

impl Generators {
    fn new(p: u32) -> std::result::Result<Self, String> {
        let cfg = OrbitConfig::new(p, CONDUCTOR).map_err(err)?;
        Ok(Generators {
            cfg,
            x: (0..p).map(|i| GrothElement::x(cfg, i)).collect(),
            y: (0..p).map(|i| GrothElement::y(cfg, i)).collect(),
            ys: (0..p).map(|i| GrothElement::ys(cfg, i)).collect(),
            u: sample_scalars()
                .into_iter()
                .map(|s| (s.clone(), GrothElement::u(cfg, s)))
                .collect(),
        })
    }

    fn arc(&self, i: u32, j: u32) -> GrothElement {
        GrothElement::x_arc(self.cfg, i, j)
    }

    fn all(&self) -> Vec<GrothElement> {
        let p = self.cfg.p();
        let mut out: Vec<GrothElement> = self.u.iter().map(|(_, e)| e.clone()).collect();
        out.extend(self.x.iter().cloned());
        out.extend(self.y.iter().cloned());
        out.extend(self.ys.iter().cloned());
        for i in 0..p {
            for j in 0..p {
                if i != j {
                    out.push(self.arc(i, j));
                }
            }
        }
        out
    }
}

fn tuples(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..p).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

fn relation_instances(ring: &mut GrothProducts, g: &Generators) -> std::result::Result<[usize; 12], String> {
    use Rel::{Le, Lt};
    let cfg = g.cfg;
    let p = cfg.p();
    let mut count = [0usize; 12];
    let mut check = |rel: usize, lhs: GrothElement, rhs: GrothElement, what: String| {
        count[rel] += 1;
        ensure(lhs == rhs, || {
            format!("relation ({}) fails for {}: {} != {}", rel + 1, what, lhs, rhs)
        })
    };
    let one = GrothElement::one(cfg);
    // (i)
    for e in g.all() {
        check(0, ring.mul(&one, &e)?, e.clone(), format!("u_1 * {}", e))?;
    }
    // (ii), (iii), (iv)
    for (xi, u) in &g.u {
        for (eta, v) in &g.u {
            check(
                1,
                ring.mul(u, v)?,
                GrothElement::u(cfg, xi * eta),
                format!("{} * {}", u, v),
            )?;
        }
        for (i, x) in g.x.iter().enumerate() {
            check(2, ring.mul(u, x)?, x.clone(), format!("u * x_{}", i))?;
        }
        for i in 0..p {
            for j in 0..p {
                if i != j {
                    let a = g.arc(i, j);
                    check(3, ring.mul(u, &a)?, a, format!("{} * x_{}{}", xi.to_literal(), i, j))?;
                }
            }
        }
    }
    for i in 0..p as usize {
        for j in 0..p as usize {
            let (iu, ju) = (i as u32, j as u32);
            if i != j {
                // (v)
                let rhs = g.arc(iu, ju).add(&g.arc(ju, iu));
                for (a, b) in [
                    (&g.y[i], &g.ys[j]),
                    (&g.x[i], &g.x[j]),
                    (&g.x[i], &g.y[j]),
                    (&g.x[i], &g.ys[j]),
                ] {
                    check(4, ring.mul(a, b)?, rhs.clone(), format!("{} * {}", a, b))?;
                }
            } else {
                // (vi)
                let rhs = ring.mul(&g.x[i], &g.x[i])?;
                for (a, b) in [(&g.y[i], &g.ys[i]), (&g.x[i], &g.y[i]), (&g.x[i], &g.ys[i])] {
                    check(5, ring.mul(a, b)?, rhs.clone(), format!("{} * {}", a, b))?;
                }
            }
        }
    }
    // (vii)
    for t in tuples(p, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        if i != j && cyclic_chain(p, &[i, k, j, i], &[Lt, Lt, Lt]) {
            let lhs = ring.mul(&g.arc(i, j), &g.x[k as usize])?;
            let a = ring.mul(&g.arc(i, k), &g.x[j as usize])?;
            let b = ring.mul(&g.arc(k, j), &g.x[i as usize])?;
            check(6, lhs, a.add(&b), format!("(i,j,k) = ({},{},{})", i, j, k))?;
        }
    }
    // (viii) to (xi)
    for t in tuples(p, 4) {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        if i == j || k == l {
            continue;
        }
        let what = format!("(i,j,k,l) = ({},{},{},{})", i, j, k, l);
        let xs = |n: u32| &g.x[n as usize];
        if cyclic_chain(p, &[i, j, k, l, i], &[Lt, Le, Lt, Le]) {
            let lhs = ring.mul(&g.arc(i, j), &g.arc(k, l))?;
            check(7, lhs, GrothElement::zero(cfg), what.clone())?;
        }
        if cyclic_chain(p, &[i, k, j, l, i], &[Le, Lt, Le, Le]) {
            let lhs = ring.mul(&g.arc(i, j), &g.arc(k, l))?;
            let rhs = ring.prod(&[&g.arc(k, j), xs(i), xs(l)])?;
            check(8, lhs, rhs, what.clone())?;
        }
        if cyclic_chain(p, &[i, k, l, j, i], &[Le, Lt, Le, Le]) {
            let lhs = ring.mul(&g.arc(i, j), &g.arc(k, l))?;
            let rhs = ring.prod(&[&g.arc(k, l), xs(i), xs(j)])?;
            check(9, lhs, rhs, what.clone())?;
        }
        if cyclic_chain(p, &[i, l, k, j, i], &[Lt, Lt, Lt, Le]) {
            let lhs = ring.mul(&g.arc(i, j), &g.arc(k, l))?;
            let a = ring.prod(&[&g.arc(i, l), xs(k), xs(j)])?;
            let b = ring.prod(&[&g.arc(k, j), xs(i), xs(l)])?;
            check(10, lhs, a.add(&b), what)?;
        }
    }
    // (xii)
    for i in 0..p {
        for j in 0..p {
            if i == j {
                continue;
            }
            for k in 0..p as usize {
                let a = g.arc(i, j);
                let rhs = ring.mul(&a, &g.x[k])?;
                for b in [&g.y[k], &g.ys[k]] {
                    check(11, ring.mul(&a, b)?, rhs.clone(), format!("x_{}{} * {}", i, j, b))?;
                }
            }
        }
    }
    Ok(count)
}

fn random_pairs(seed: u64, n: usize) -> std::result::Result<Vec<(GrothElement, GrothElement)>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let cfg = OrbitConfig::new(2 + (k % 3) as u32, CONDUCTOR).map_err(err)?;
        let a = GrothElement::monomial(cfg, random_monomial(&mut rng, &cfg, 2));
        let b = GrothElement::monomial(cfg, random_monomial(&mut rng, &cfg, 2));
        out.push((a, b));
    }
    Ok(out)
}

fn relation_certification() -> Check {
    let mut ring = GrothProducts { products: 0 };
    let mut totals = [0usize; 12];
    for p in 2..=4 {
        let g = Generators::new(p)?;
        let c = relation_instances(&mut ring, &g)?;
        for (t, n) in totals.iter_mut().zip(c) {
            *t += n;
        }
    }
    for (n, &t) in totals.iter().enumerate() {
        ensure(t > 0, || format!("relation ({}) has no instances", n + 1))?;
    }
    for (a, b) in random_pairs(2, 200)? {
        ring.mul(&a, &b)?;
    }
    Ok(format!(
        "{} relation instances (per relation {:?}), {} products cross-checked",
        totals.iter().sum::<usize>(),
        totals,
        ring.products
    ))
}

fn ring_axioms() -> Check {
    let mut comm = 0;
    for p in 2..=4 {
        let g = Generators::new(p)?;
        let all = g.all();
        for (n, a) in all.iter().enumerate() {
            for b in &all[n + 1..] {
                let ab = groth_mul_modules(a, b).map_err(err)?;
                let ba = groth_mul_modules(b, a).map_err(err)?;
                ensure(ab == ba, || format!("{} * {} is not commutative", a, b))?;
                comm += 1;
            }
        }
    }
    for (a, b) in random_pairs(2, 200)? {
        let ab = groth_mul_modules(&a, &b).map_err(err)?;
        let ba = groth_mul_modules(&b, &a).map_err(err)?;
        ensure(ab == ba, || format!("{} * {} is not commutative", a, b))?;
        comm += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..50 {
        let cfg = OrbitConfig::new(2 + (k % 3) as u32, CONDUCTOR).map_err(err)?;
        let [a, b, c] = [0, 1, 2].map(|_| GrothElement::monomial(cfg, random_monomial(&mut rng, &cfg, 2)));
        let left = groth_mul_modules(&groth_mul_modules(&a, &b).map_err(err)?, &c).map_err(err)?;
        let right = groth_mul_modules(&a, &groth_mul_modules(&b, &c).map_err(err)?).map_err(err)?;
        ensure(left == right, || {
            format!("({} * {}) * {} != {} * ({} * {})", a, b, c, a, b, c)
        })?;
    }
    Ok(format!("{} commuting pairs, 50 associative triples", comm))
}

// ---------------------------------------------------------------------------
// 3

fn multidegrees(p: u32, deg: u32) -> Vec<Vec<u32>> {
    if p == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for a in 0..=deg {
        for mut rest in multidegrees(p - 1, deg - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn hilbert_series() -> Check {
    let mut checked = 0;
    for p in 2..=4 {
        for deg in 0..=6 {
            let enumerated = hilbert_enumerated(p, deg);
            let series = hilbert_series_coeff(p, deg);
            ensure(enumerated == series, || {
                format!(
                    "p = {}, degree {}: enumerated {} but series gives {}",
                    p, deg, enumerated, series
                )
            })?;
            for d in multidegrees(p, deg) {
                let want = if deg == 0 {
                    1
                } else {
                    2 + d.iter().filter(|&&a| a > 0).count()
                };
                let got = basis_dimension(p, &d);
                ensure(got == want, || {
                    format!("p = {}, multidegree {:?}: {} basis elements, want {}", p, d, got, want)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("21 series coefficients and {} multidegrees agree", checked))
}

// ---------------------------------------------------------------------------
// 4

fn jordan_tensor() -> Check {
    let n = CONDUCTOR;
    let s = sample_scalars();
    let pairs = [
        (s[0].clone(), s[0].clone()),
        (s[1].clone(), s[2].clone()),
        (s[3].clone(), s[1].clone()),
    ];
    let mut checked = 0;
    for (xi, eta) in &pairs {
        for a in 1..=6u32 {
            for b in 1..=6u32 {
                let m1 = TrivialSplitMonomial::new(xi.clone(), a).map_err(err)?;
                let m2 = TrivialSplitMonomial::new(eta.clone(), b).map_err(err)?;
                let got = trivial_mul(&m1, &m2);
                let k = JordanType::single(xi.clone(), a as usize)
                    .to_matrix(n)
                    .kron(&JordanType::single(eta.clone(), b as usize).to_matrix(n));
                let mut oracle = TrivialElement::zero();
                for (lam, size) in jordan_decompose(&k).map_err(err)?.blocks() {
                    oracle.add_term(
                        TrivialSplitMonomial::new(lam.clone(), *size as u32).map_err(err)?,
                        BigRational::one(),
                    );
                }
                let mut formula = TrivialElement::zero();
                for k in 1..=a.min(b) {
                    formula.add_term(
                        TrivialSplitMonomial::new(xi * eta, a + b - (2 * k - 1)).map_err(err)?,
                        BigRational::one(),
                    );
                }
                ensure(got == oracle && got == formula, || {
                    format!("u({},{}) * u({},{}): {} vs Jordan form {}", xi, a, eta, b, got, oracle)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} products match the Kronecker Jordan form", checked))
}

// ---------------------------------------------------------------------------
// 5

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bounds = SampleBounds {
        max_reps: 3,
        max_jordan: 3,
        zero_rate: 0.1,
    };
    let mut summands = 0;
    for k in 0..200 {
        let cfg = OrbitConfig::with_p(2 + k % 4);
        let m1 = random_module(&mut rng, &cfg, &bounds);
        let m2 = random_module(&mut rng, &cfg, &bounds);
        let sym = tensor(&m1, &m2).map_err(|e| format!("tensor of {} and {}: {}", m1, m2, e))?;
        let kron = kronecker_tensor(&realize(&m1), &realize(&m2)).map_err(err)?;
        let orc = oracle_iso_data(&kron).map_err(|e| format!("oracle on {} and {}: {}", m1, m2, e))?;
        let ok = IsoData::of(&sym.decomposition).map_err(err)?.isomorphic(&orc);
        ensure(ok, || {
            format!(
                "{} (x) {}: tensor gives {} which the oracle rejects",
                m1, m2, sym.decomposition
            )
        })?;
        summands += sym.decomposition.count();
    }
    Ok(format!("200 pairs agree ({} summands)", summands))
}

// ---------------------------------------------------------------------------
// 6

fn semisimple_section() -> Check {
    let mut checked = 0;
    let n = CONDUCTOR;
    let xis = [
        CycloScalar::from_int(1, n),
        CycloScalar::root_of_unity(1, n),
        CycloScalar::from_int(-2, n),
    ];
    for p in 2..=3 {
        let cfg = OrbitConfig::new(p, n).map_err(err)?;
        let mut syms = Vec::new();
        for xi in &xis {
            syms.push(SemisimpleSymbol::U(xi.clone()));
        }
        for a in 1..=3 {
            syms.push(SemisimpleSymbol::X(a));
            for xi in &xis {
                syms.push(SemisimpleSymbol::Y(a, xi.clone()));
                syms.push(SemisimpleSymbol::Ys(a, xi.clone()));
            }
        }
        for s1 in &syms {
            for s2 in &syms {
                let m1 = semisimple_symbol_module(&cfg, s1).map_err(err)?;
                let m2 = semisimple_symbol_module(&cfg, s2).map_err(err)?;
                let d = tensor(&m1, &m2).map_err(err)?.decomposition;
                let single: Vec<(&Module, usize)> = d.iter().collect();
                ensure(single.len() == 1 && single[0].1 == 1, || {
                    format!("{} * {} gives {}", s1, s2, d)
                })?;
                let m = single[0].0;
                ensure(is_simple(m), || format!("{} * {} gives the non-simple {}", s1, s2, m))?;
                let got = simple_to_symbol(m).map_err(err)?;
                let want = semisimple_symbol_mul(s1, s2);
                ensure(got == want, || {
                    format!("{} * {} gives {}, table says {}", s1, s2, got, want)
                })?;
                checked += 1;
            }
        }
    }
    // two breaks: the product is indecomposable of length two
    let cfg = OrbitConfig::with_p(3);
    let t = TParam::parse("0:1", 3).map_err(err)?;
    let t2 = TParam::parse("1:1,2:1", 3).map_err(err)?;
    let simple = Module::Cycle(
        CycleModule::with_eigenvalue(cfg, t, parse_letters("11x").map_err(err)?, cfg.scalar(1)).map_err(err)?,
    );
    let other = Module::Path(PathModule::new(cfg, t2, 2, parse_letters("1").map_err(err)?).map_err(err)?);
    ensure(is_simple(&simple) && is_simple(&other), || {
        "counterexample factors are not simple".into()
    })?;
    let tt = TParam::parse("0:1,1:1,2:1", 3).map_err(err)?;
    let want = Module::Path(PathModule::new(cfg, tt.clone(), 2, vec![Letter::X]).map_err(err)?);
    let d = tensor(&simple, &other).map_err(err)?.decomposition;
    ensure(d == Decomposition::single(want.clone()), || {
        format!("counterexample product is {}", d)
    })?;
    ensure(is_indecomposable(&want) && !is_simple(&want), || {
        format!("{} should be indecomposable and not simple", want)
    })?;
    let mut factors = Decomposition::new();
    for i in [2, 0] {
        factors.push(
            Module::Path(PathModule::new(cfg, tt.clone(), i, vec![]).map_err(err)?),
            1,
        );
    }
    let got = composition_factors(&want).map_err(err)?;
    ensure(got == factors, || format!("composition factors {}", got))?;
    Ok(format!(
        "{} simple products match the table; {} has factors {}",
        checked, want, factors
    ))
}

// ---------------------------------------------------------------------------
// 7

/// Canonical representatives of all zero-free non-periodic words for
/// `t = z - 1` of length at most `max_reps * p`.
fn y_words(cfg: &OrbitConfig, max_reps: usize) -> Vec<Vec<Letter>> {
    let p = cfg.p() as usize;
    let mut out: Vec<Vec<Letter>> = Vec::new();
    for r in 1..=max_reps {
        for mask in 0..1u32 << r {
            let mut w = vec![Letter::One; r * p];
            for s in 0..r {
                w[(s + 1) * p - 1] = if mask >> s & 1 == 1 { Letter::Y } else { Letter::X };
            }
            if let Ok(c) = canonical_y_word(cfg, &w) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn split_quotient() -> Check {
    let n = CONDUCTOR;
    let mut pairs = 0;
    let mut instances = [0usize; 4];
    let mut powers = 0;
    for p in 2..=3u32 {
        let cfg = OrbitConfig::new(p, n).map_err(err)?;
        let words = y_words(&cfg, 2);
        let mut xis = sample_scalars();
        xis.push(CycloScalar::from_int(-1, n));
        xis.push(CycloScalar::root_of_unity(4, n));
        let mut gens: Vec<QuotientSplitMonomial> =
            xis.iter().map(|x| QuotientSplitMonomial::u(&cfg, x.clone())).collect();
        gens.push(QuotientSplitMonomial::u12(&cfg));
        for w in &words {
            gens.push(QuotientSplitMonomial::y(&cfg, w).map_err(err)?);
        }
        let module = |g: &QuotientSplitMonomial| quotient_generator_module(&cfg, g).map_err(err);
        let by_modules =
            |a: &QuotientSplitMonomial, b: &QuotientSplitMonomial| -> std::result::Result<QuotientElement, String> {
                quotient_mul_modules(&module(a)?, &module(b)?).map_err(err)
            };
        for a in &gens {
            for b in &gens {
                let m = by_modules(a, b)?;
                let s = quotient_mul(&cfg, a, b).map_err(err)?;
                ensure(m == s, || {
                    format!("p = {}: {} * {} gives {} by modules, {} by relations", p, a, b, m, s)
                })?;
                pairs += 1;
            }
        }
        let unit = QuotientSplitMonomial::unit(&cfg);
        for g in &gens {
            let got = by_modules(&unit, g)?;
            ensure(got == QuotientElement::basis(g.clone()), || {
                format!("u_1 * {} = {}", g, got)
            })?;
            instances[0] += 1;
        }
        for x in &xis {
            for y in &xis {
                let got = by_modules(
                    &QuotientSplitMonomial::u(&cfg, x.clone()),
                    &QuotientSplitMonomial::u(&cfg, y.clone()),
                )?;
                let want = QuotientElement::basis(QuotientSplitMonomial::u(&cfg, x * y));
                ensure(got == want, || format!("u_{} u_{} = {}", x, y, got))?;
                instances[1] += 1;
            }
        }
        for w in &words {
            let yw = QuotientSplitMonomial::y(&cfg, w).map_err(err)?;
            let r = (w.len() / p as usize) as i64;
            for k in 0..n as i64 {
                let xi = CycloScalar::root_of_unity(k, n);
                if !xi.pow(r).is_one() {
                    continue;
                }
                let got = by_modules(&QuotientSplitMonomial::u(&cfg, xi.clone()), &yw)?;
                ensure(got == QuotientElement::basis(yw.clone()), || {
                    format!("u_{} {} = {}", xi, yw, got)
                })?;
                instances[2] += 1;
            }
            for w2 in &words {
                if w2 != w {
                    let yw2 = QuotientSplitMonomial::y(&cfg, w2).map_err(err)?;
                    let got = by_modules(&yw, &yw2)?;
                    ensure(got.is_zero(), || format!("{} {} = {}", yw, yw2, got))?;
                    instances[3] += 1;
                }
            }
            // powers of y
            let ym = module(&yw)?;
            let mut cur = ym.clone();
            for k in 2..=4u32 {
                let d = tensor(&cur, &ym).map_err(err)?.decomposition;
                let next = Module::Cycle(
                    CycleModule::with_eigenvalue(cfg, TParam::single(p, 0, k), w.clone(), cfg.scalar(1))
                        .map_err(err)?,
                );
                let want = QuotientElement::basis(QuotientSplitMonomial {
                    u: cfg.scalar(1),
                    a: 0,
                    y: Some(YPower { word: w.clone(), n: k }),
                });
                let got = decomposition_to_quotient(&d).map_err(err)?;
                ensure(got == want && class_to_quotient(&next).map_err(err)? == want, || {
                    format!("{}^{} gives {}", yw, k, got)
                })?;
                cur = next;
                powers += 1;
            }
        }
    }
    Ok(format!(
        "{} generator pairs, relation instances {:?}, {} powers of y",
        pairs, instances, powers
    ))
}

// ---------------------------------------------------------------------------
// 8

fn graph_products() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..50u32 {
        let cfg = OrbitConfig::new(1 + k % 4, CONDUCTOR).map_err(err)?;
        let g1 = random_graph(&mut rng, &cfg);
        let g2 = random_graph(&mut rng, &cfg);
        graph_validate(&g1).map_err(err)?;
        graph_validate(&g2).map_err(err)?;
        let prod = graph_tensor(&g1, &g2).map_err(err)?;
        graph_validate(&prod).map_err(|e| format!("product graph invalid: {}", e))?;
        let direct = graph_to_module(&prod).map_err(err)?;
        let via = tensor_decompositions(&graph_to_module(&g1).map_err(err)?, &graph_to_module(&g2).map_err(err)?)
            .map_err(err)?;
        ensure(decompositions_isomorphic(&direct, &via).map_err(err)?, || {
            format!("pair {}: graph product gives {}, tensor gives {}", k, direct, via)
        })?;
        let orc = oracle_iso_data(&graph_realize(&prod).map_err(err)?).map_err(err)?;
        ensure(IsoData::of(&direct).map_err(err)?.isomorphic(&orc), || {
            format!("pair {}: oracle disagrees with {}", k, direct)
        })?;
    }
    let (_, _, prod) = figure_instance();
    let ids: Vec<&str> = prod.vertices.iter().map(|v| v.id.as_str()).collect();
    ensure(
        ids == ["v0⊗w0'", "v1⊗v1'", "v1⊗w1'", "v2⊗v2'", "w0⊗w0'"],
        || format!("figure vertices {:?}", ids),
    )?;
    let edges: Vec<(&str, &str, char)> = prod
        .edges
        .iter()
        .map(|e| (e.from.as_str(), e.to.as_str(), e.label.to_char()))
        .collect();
    let want = [
        ("v0⊗w0'", "v1⊗w1'", 'x'),
        ("v1⊗v1'", "v2⊗v2'", 'y'),
        ("v2⊗v2'", "w0⊗w0'", 'x'),
    ];
    ensure(edges == want, || format!("figure edges {:?}", edges))?;
    Ok("50 random pairs agree; figure product has 5 vertices and edges x, y, x".into())
}
