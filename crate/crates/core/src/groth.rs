//! The Grothendieck ring of weight modules on the orbit, summed over all
//! parameters `t = prod (z - q^k)^{a_k}`.
//!
//! Elements are combinations of normal-form monomials, one per simple
//! module. Products are computed two ways: by rewriting formal products of
//! generators with the defining relations, and by tensoring the simple
//! modules and reading off composition factors.

use crate::error::{GwaError, Result};
use crate::modules::{composition_factors, CycleModule, Module, PathModule};
use crate::oracle::{kronecker_tensor, oracle_decompose, realize};
use crate::orbit::{Letter, OrbitConfig, TParam};
use crate::scalars::literal::LiteralParser;
use crate::scalars::{CycloScalar, JordanType};
use crate::tensor::tensor;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Normal-form basis monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum GrothMonomial {
    /// `x_{ij} prod x_k^{a_k}` with every `k` in the closed arc from `j` to `i`.
    Arc { i: u32, j: u32, x: Vec<u32> },
    /// `x_i^a`, `a > 0`.
    XPow { i: u32, a: u32 },
    /// `u_xi`.
    U(CycloScalar),
    /// `u_xi prod y_k^{a_k}`, not all `a_k` zero.
    UY { xi: CycloScalar, y: Vec<u32> },
    /// `u_xi prod (y*_k)^{a_k}`, not all `a_k` zero.
    UYs { xi: CycloScalar, ys: Vec<u32> },
}

/// Step of a cyclic chain: strict or weak.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rel {
    Lt,
    Le,
}

/// Closed chain `a_0 R a_1 R ... R a_m` in the cyclic order, read as one
/// counterclockwise turn starting and ending at `a_0 = a_m`.
pub fn cyclic_chain(p: u32, pts: &[u32], rels: &[Rel]) -> bool {
    debug_assert_eq!(pts.len(), rels.len() + 1);
    let mut o = 0u32;
    for (n, r) in rels.iter().enumerate() {
        let mut diff = (pts[n + 1] + p - pts[n]) % p;
        if diff == 0 && *r == Rel::Lt {
            diff = p;
        }
        o += diff;
    }
    o == p
}

/// `a < b < c` in the cyclic order.
pub fn strictly_between(p: u32, a: u32, b: u32, c: u32) -> bool {
    use Rel::*;
    cyclic_chain(p, &[a, b, c, a], &[Lt, Lt, Lt])
}

/// `j <= k <= i` in the cyclic order, for `i != j`.
pub fn in_closed_arc(p: u32, j: u32, k: u32, i: u32) -> bool {
    use Rel::*;
    cyclic_chain(p, &[j, k, i, j], &[Le, Le, Lt])
}

impl GrothMonomial {
    /// Degree vector of the parameter `t`.
    pub fn multidegree(&self, p: u32) -> Vec<u32> {
        match self {
            GrothMonomial::Arc { i, j, x } => {
                let mut d = x.clone();
                d[*i as usize] += 1;
                d[*j as usize] += 1;
                d
            }
            GrothMonomial::XPow { i, a } => {
                let mut d = vec![0; p as usize];
                d[*i as usize] = *a;
                d
            }
            GrothMonomial::U(_) => vec![0; p as usize],
            GrothMonomial::UY { y, .. } => y.clone(),
            GrothMonomial::UYs { ys, .. } => ys.clone(),
        }
    }

    /// Checks the shape constraints of the five normal forms.
    pub fn validate(&self, p: u32) -> Result<()> {
        let bad = |m: &str| Err(GwaError::InvalidWord(m.to_string()));
        match self {
            GrothMonomial::Arc { i, j, x } => {
                if i == j || *i >= p || *j >= p || x.len() != p as usize {
                    return bad("x_ij needs distinct indices below p");
                }
                for (k, &a) in x.iter().enumerate() {
                    if a > 0 && !in_closed_arc(p, *j, k as u32, *i) {
                        return bad("x_k inside the open arc of x_ij");
                    }
                }
            }
            GrothMonomial::XPow { i, a } => {
                if *a == 0 || *i >= p {
                    return bad("x_i^a needs a > 0");
                }
            }
            GrothMonomial::U(xi) => {
                if xi.is_zero() {
                    return bad("u_0 is not defined");
                }
            }
            GrothMonomial::UY { xi, y: e } | GrothMonomial::UYs { xi, ys: e } => {
                if xi.is_zero() || e.len() != p as usize || e.iter().all(|&a| a == 0) {
                    return bad("y monomial needs nonzero exponents");
                }
            }
        }
        Ok(())
    }

    fn to_formal(&self, cfg: &OrbitConfig) -> Formal {
        let mut f = Formal::one(cfg);
        match self {
            GrothMonomial::Arc { i, j, x } => {
                f.arcs.push((*i, *j));
                f.x = x.clone();
            }
            GrothMonomial::XPow { i, a } => f.x[*i as usize] = *a,
            GrothMonomial::U(xi) => f.u = xi.clone(),
            GrothMonomial::UY { xi, y } => {
                f.u = xi.clone();
                f.y = y.clone();
            }
            GrothMonomial::UYs { xi, ys } => {
                f.u = xi.clone();
                f.ys = ys.clone();
            }
        }
        f
    }
}

fn power_text(name: &str, args: &str, a: u32) -> String {
    if a == 1 {
        format!("{}[{}]", name, args)
    } else {
        format!("{}[{}]^{}", name, args, a)
    }
}

fn exps_text(name: &str, e: &[u32]) -> Vec<String> {
    e.iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(k, &a)| power_text(name, &k.to_string(), a))
        .collect()
}

impl fmt::Display for GrothMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            GrothMonomial::Arc { i, j, x } => {
                let mut v = vec![format!("x[{},{}]", i, j)];
                v.extend(exps_text("x", x));
                v
            }
            GrothMonomial::XPow { i, a } => vec![power_text("x", &i.to_string(), *a)],
            GrothMonomial::U(xi) => vec![format!("u[{}]", xi.to_literal())],
            GrothMonomial::UY { xi, y } => {
                let mut v = if xi.is_one() {
                    vec![]
                } else {
                    vec![format!("u[{}]", xi.to_literal())]
                };
                v.extend(exps_text("y", y));
                v
            }
            GrothMonomial::UYs { xi, ys } => {
                let mut v = if xi.is_one() {
                    vec![]
                } else {
                    vec![format!("u[{}]", xi.to_literal())]
                };
                v.extend(exps_text("ys", ys));
                v
            }
        };
        write!(f, "{}", parts.join("*"))
    }
}

/// Formal commutative product of generators.
#[derive(Clone, Debug)]
pub struct Formal {
    pub u: CycloScalar,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub ys: Vec<u32>,
    pub arcs: Vec<(u32, u32)>,
}

impl Formal {
    pub fn one(cfg: &OrbitConfig) -> Self {
        let p = cfg.p() as usize;
        Formal {
            u: cfg.scalar(1),
            x: vec![0; p],
            y: vec![0; p],
            ys: vec![0; p],
            arcs: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Formal) -> Formal {
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().copied());
        Formal {
            u: &self.u * &other.u,
            x: add(&self.x, &other.x),
            y: add(&self.y, &other.y),
            ys: add(&self.ys, &other.ys),
            arcs,
        }
    }
}

/// Element of the ring: rational combination of normal-form monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrothElement {
    pub cfg: OrbitConfig,
    terms: BTreeMap<GrothMonomial, BigRational>,
}

impl GrothElement {
    pub fn zero(cfg: OrbitConfig) -> Self {
        GrothElement {
            cfg,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(cfg: OrbitConfig, m: GrothMonomial) -> Self {
        let mut e = Self::zero(cfg);
        e.add_term(m, BigRational::one());
        e
    }

    pub fn one(cfg: OrbitConfig) -> Self {
        Self::monomial(cfg, GrothMonomial::U(cfg.scalar(1)))
    }

    pub fn u(cfg: OrbitConfig, xi: CycloScalar) -> Self {
        Self::monomial(cfg, GrothMonomial::U(xi.lift(cfg.conductor())))
    }

    pub fn x(cfg: OrbitConfig, i: u32) -> Self {
        Self::monomial(cfg, GrothMonomial::XPow { i, a: 1 })
    }

    pub fn x_arc(cfg: OrbitConfig, i: u32, j: u32) -> Self {
        Self::monomial(
            cfg,
            GrothMonomial::Arc {
                i,
                j,
                x: vec![0; cfg.p() as usize],
            },
        )
    }

    fn unit_vec(cfg: &OrbitConfig, i: u32) -> Vec<u32> {
        let mut e = vec![0; cfg.p() as usize];
        e[i as usize] = 1;
        e
    }

    pub fn y(cfg: OrbitConfig, i: u32) -> Self {
        Self::monomial(
            cfg,
            GrothMonomial::UY {
                xi: cfg.scalar(1),
                y: Self::unit_vec(&cfg, i),
            },
        )
    }

    pub fn ys(cfg: OrbitConfig, i: u32) -> Self {
        Self::monomial(
            cfg,
            GrothMonomial::UYs {
                xi: cfg.scalar(1),
                ys: Self::unit_vec(&cfg, i),
            },
        )
    }

    pub fn add_term(&mut self, m: GrothMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.cfg);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrothMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for GrothElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if !a.is_one() {
                write!(f, "{}*", a)?;
            }
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    monomial: GrothMonomial,
    text: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    p: u32,
    conductor: u32,
    terms: Vec<TermJson>,
}

impl Serialize for GrothElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            p: self.cfg.p(),
            conductor: self.cfg.conductor(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    monomial: m.clone(),
                    text: m.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrothElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let j = ElementJson::deserialize(d)?;
        let cfg = OrbitConfig::new(j.p, j.conductor).map_err(D::Error::custom)?;
        let mut e = GrothElement::zero(cfg);
        for t in j.terms {
            let c: BigRational = t.coeff.parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            e.add_term(t.monomial, c);
        }
        Ok(e)
    }
}

fn arc_pair(p: u32, a: (u32, u32), b: (u32, u32)) -> Option<Vec<((u32, u32), [u32; 2])>> {
    use Rel::*;
    let ((i, j), (k, l)) = (a, b);
    if cyclic_chain(p, &[i, j, k, l, i], &[Lt, Le, Lt, Le]) {
        return Some(vec![]);
    }
    if cyclic_chain(p, &[i, k, j, l, i], &[Le, Lt, Le, Le]) {
        return Some(vec![((k, j), [i, l])]);
    }
    if cyclic_chain(p, &[i, k, l, j, i], &[Le, Lt, Le, Le]) {
        return Some(vec![((k, l), [i, j])]);
    }
    if cyclic_chain(p, &[i, l, k, j, i], &[Lt, Lt, Lt, Le]) {
        return Some(vec![((i, l), [k, j]), ((k, j), [i, l])]);
    }
    None
}

/// Product of two arcs `x_{ij} x_{kl}` as a sum of single arcs times
/// `x`-generators.
fn combine_arcs(p: u32, a: (u32, u32), b: (u32, u32)) -> Vec<((u32, u32), [u32; 2])> {
    arc_pair(p, a, b)
        .or_else(|| arc_pair(p, b, a))
        .expect("every pair of arcs matches one relation")
}

/// Rewrites a formal product of generators to normal form, following the
/// elimination order of the basis proof.
pub fn normalize(cfg: &OrbitConfig, f: Formal) -> GrothElement {
    let mut out = GrothElement::zero(*cfg);
    normalize_into(cfg, f, &BigRational::one(), &mut out);
    out
}

fn normalize_into(cfg: &OrbitConfig, mut f: Formal, coef: &BigRational, out: &mut GrothElement) {
    let p = cfg.p();
    let pu = p as usize;
    if !f.arcs.is_empty() {
        // u against x_ij, then y and y* absorbed into x_ij
        f.u = cfg.scalar(1);
        for k in 0..pu {
            f.x[k] += f.y[k] + f.ys[k];
            f.y[k] = 0;
            f.ys[k] = 0;
        }
        if f.arcs.len() >= 2 {
            let b = f.arcs.pop().unwrap();
            let a = f.arcs.pop().unwrap();
            for (arc, extra) in combine_arcs(p, a, b) {
                let mut g = f.clone();
                g.arcs.push(arc);
                for k in extra {
                    g.x[k as usize] += 1;
                }
                normalize_into(cfg, g, coef, out);
            }
            return;
        }
        let (i, j) = f.arcs[0];
        if let Some(k) = (0..p).find(|&k| f.x[k as usize] > 0 && strictly_between(p, i, k, j)) {
            f.x[k as usize] -= 1;
            for (arc, extra) in [((i, k), j), ((k, j), i)] {
                let mut g = f.clone();
                g.arcs[0] = arc;
                g.x[extra as usize] += 1;
                normalize_into(cfg, g, coef, out);
            }
            return;
        }
        out.add_term(GrothMonomial::Arc { i, j, x: f.x }, coef.clone());
        return;
    }
    if let Some(i) = (0..pu).find(|&k| f.x[k] > 0) {
        f.u = cfg.scalar(1);
        if let Some(j) = (0..pu).find(|&k| k != i && f.x[k] + f.y[k] + f.ys[k] > 0) {
            f.x[i] -= 1;
            if f.x[j] > 0 {
                f.x[j] -= 1;
            } else if f.y[j] > 0 {
                f.y[j] -= 1;
            } else {
                f.ys[j] -= 1;
            }
            split_pair(cfg, f, i as u32, j as u32, coef, out);
            return;
        }
        let a = f.x[i] + f.y[i] + f.ys[i];
        out.add_term(GrothMonomial::XPow { i: i as u32, a }, coef.clone());
        return;
    }
    let yi = (0..pu).find(|&k| f.y[k] > 0);
    let ysj = (0..pu).find(|&k| f.ys[k] > 0);
    if let (Some(i), Some(j)) = (yi, ysj) {
        f.y[i] -= 1;
        f.ys[j] -= 1;
        if i != j {
            split_pair(cfg, f, i as u32, j as u32, coef, out);
        } else {
            f.x[i] += 2;
            normalize_into(cfg, f, coef, out);
        }
        return;
    }
    let m = if yi.is_some() {
        GrothMonomial::UY { xi: f.u, y: f.y }
    } else if ysj.is_some() {
        GrothMonomial::UYs { xi: f.u, ys: f.ys }
    } else {
        GrothMonomial::U(f.u)
    };
    out.add_term(m, coef.clone());
}

/// Replaces a product of two degree-one generators at `i != j` by
/// `x_{ij} + x_{ji}`.
fn split_pair(cfg: &OrbitConfig, f: Formal, i: u32, j: u32, coef: &BigRational, out: &mut GrothElement) {
    for arc in [(i, j), (j, i)] {
        let mut g = f.clone();
        g.arcs.push(arc);
        normalize_into(cfg, g, coef, out);
    }
}

/// Product computed by formal rewriting.
pub fn groth_mul_rewrite(e1: &GrothElement, e2: &GrothElement) -> Result<GrothElement> {
    e1.cfg.check_same(&e2.cfg)?;
    let cfg = e1.cfg;
    let mut out = GrothElement::zero(cfg);
    for (m1, c1) in &e1.terms {
        for (m2, c2) in &e2.terms {
            let f = m1.to_formal(&cfg).mul(&m2.to_formal(&cfg));
            let prod = normalize(&cfg, f);
            out = out.add(&prod.scale(&(c1 * c2)));
        }
    }
    Ok(out)
}

/// Product computed from tensor products of the simple modules.
pub fn groth_mul_modules(e1: &GrothElement, e2: &GrothElement) -> Result<GrothElement> {
    e1.cfg.check_same(&e2.cfg)?;
    let cfg = e1.cfg;
    let mut out = GrothElement::zero(cfg);
    for (m1, c1) in &e1.terms {
        let a = monomial_to_module(&cfg, m1)?;
        for (m2, c2) in &e2.terms {
            let b = monomial_to_module(&cfg, m2)?;
            let prod = tensor(&a, &b)?;
            for (summand, k) in prod.decomposition.iter() {
                for (simple, mult) in composition_factors(summand)?.iter() {
                    let c = c1 * c2 * BigRational::from_integer(BigInt::from(k * mult));
                    out.add_term(module_to_monomial(simple)?, c);
                }
            }
        }
    }
    Ok(out)
}

fn tparam_of(exps: &[u32]) -> TParam {
    TParam::new(exps.to_vec())
}

/// Word of length `p` with `letter` at the breaks of `t` and `1` elsewhere.
fn break_word(p: u32, exps: &[u32], letter: Letter) -> Vec<Letter> {
    (1..=p)
        .map(|k| {
            if exps[(k % p) as usize] > 0 {
                letter
            } else {
                Letter::One
            }
        })
        .collect()
}

fn y_generator(cfg: &OrbitConfig, k: u32) -> Module {
    let p = cfg.p();
    let t = TParam::single(p, k, 1);
    let w = break_word(p, t.exps(), Letter::X);
    Module::Cycle(CycleModule::new(*cfg, t, w, JordanType::trivial(cfg.conductor())).expect("valid generator"))
}

/// Eigenvalue of the simple `x`-type cycle in `prod y_k^{a_k}`, read off the
/// monodromy of the explicit tensor product.
pub fn nu_twist(cfg: &OrbitConfig, exps: &[u32]) -> Result<CycloScalar> {
    type Key = (u32, u32, Vec<u32>);
    static CACHE: OnceLock<Mutex<HashMap<Key, CycloScalar>>> = OnceLock::new();
    let key = (cfg.p(), cfg.conductor(), exps.to_vec());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let mut acc: Option<crate::oracle::ExplicitModule> = None;
    for (k, &a) in exps.iter().enumerate() {
        for _ in 0..a {
            let e = realize(&y_generator(cfg, k as u32));
            acc = Some(match acc {
                None => e,
                Some(prev) => kronecker_tensor(&prev, &e)?,
            });
        }
    }
    let nu = match acc {
        None => cfg.scalar(1),
        Some(e) => {
            let d = oracle_decompose(&e)?;
            let flat = d.flatten();
            match flat.as_slice() {
                [Module::Cycle(c)] if c.f.blocks().len() == 1 => c.f.blocks()[0].0.clone(),
                _ => {
                    return Err(GwaError::UnsupportedShape(
                        "product of y generators is not a single simple cycle".into(),
                    ))
                }
            }
        }
    };
    cache.lock().unwrap().insert(key, nu.clone());
    Ok(nu)
}

/// The simple module whose class is the given monomial.
pub fn monomial_to_module(cfg: &OrbitConfig, m: &GrothMonomial) -> Result<Module> {
    let p = cfg.p();
    m.validate(p)?;
    let t = tparam_of(&m.multidegree(p));
    Ok(match m {
        GrothMonomial::Arc { i, j, .. } => {
            let len = ((j + p - i) % p - 1) as usize;
            Module::Path(PathModule::new(*cfg, t, *i, vec![Letter::One; len])?)
        }
        GrothMonomial::XPow { i, .. } => Module::Path(PathModule::new(*cfg, t, *i, vec![Letter::One; p as usize - 1])?),
        GrothMonomial::U(xi) => Module::Cycle(CycleModule::with_eigenvalue(
            *cfg,
            t,
            vec![Letter::One; p as usize],
            xi.clone(),
        )?),
        GrothMonomial::UY { xi, y } => {
            let w = break_word(p, y, Letter::X);
            let nu = nu_twist(cfg, y)?;
            Module::Cycle(CycleModule::with_eigenvalue(*cfg, t, w, xi * &nu)?)
        }
        GrothMonomial::UYs { xi, ys } => {
            let w = break_word(p, ys, Letter::Y);
            Module::Cycle(CycleModule::with_eigenvalue(*cfg, t, w, xi.clone())?)
        }
    })
}

/// Normal-form monomial of a simple module.
pub fn module_to_monomial(m: &Module) -> Result<GrothMonomial> {
    let not_simple = || GwaError::UnsupportedShape(format!("{} is not simple", m));
    match m {
        Module::Path(pm) => {
            let p = pm.cfg.p();
            if pm.w.iter().any(|&l| l != Letter::One) {
                return Err(not_simple());
            }
            let exps = pm.t.exps().to_vec();
            let j = pm.cfg.weight(pm.end());
            if j == pm.i {
                let others = exps.iter().enumerate().any(|(k, &a)| k as u32 != pm.i && a > 0);
                if others || pm.w.len() != p as usize - 1 {
                    return Err(not_simple());
                }
                return Ok(GrothMonomial::XPow {
                    i: pm.i,
                    a: exps[pm.i as usize],
                });
            }
            let mut x = exps;
            x[pm.i as usize] -= 1;
            x[j as usize] -= 1;
            Ok(GrothMonomial::Arc { i: pm.i, j, x })
        }
        Module::Cycle(c) => {
            let p = c.cfg.p();
            if c.w.len() != p as usize || c.f.blocks().len() != 1 || c.f.blocks()[0].1 != 1 {
                return Err(not_simple());
            }
            let lambda = c.f.blocks()[0].0.clone();
            let exps = c.t.exps().to_vec();
            if !c.t.has_breaks() {
                return Ok(GrothMonomial::U(lambda));
            }
            let directional: Vec<Letter> = c.w.iter().copied().filter(|&l| l != Letter::One).collect();
            if directional.iter().all(|&l| l == Letter::X) {
                let nu = nu_twist(&c.cfg, &exps)?;
                let xi = &lambda / &nu;
                Ok(GrothMonomial::UY { xi, y: exps })
            } else if directional.iter().all(|&l| l == Letter::Y) {
                Ok(GrothMonomial::UYs { xi: lambda, ys: exps })
            } else {
                Err(not_simple())
            }
        }
    }
}

/// Number of normal-form monomials of multidegree `d` once every `u_xi` is
/// identified with 1, found by enumerating the five forms.
pub fn basis_dimension(p: u32, d: &[u32]) -> usize {
    let pu = p as usize;
    assert_eq!(d.len(), pu);
    let total: u32 = d.iter().sum();
    if total == 0 {
        return 1;
    }
    let mut count = 2; // y-form and y*-form
    let support: Vec<u32> = (0..p).filter(|&k| d[k as usize] > 0).collect();
    if support.len() == 1 {
        count += 1;
    }
    for i in 0..p {
        for j in 0..p {
            if i == j || d[i as usize] == 0 || d[j as usize] == 0 {
                continue;
            }
            let mut x = d.to_vec();
            x[i as usize] -= 1;
            x[j as usize] -= 1;
            let m = GrothMonomial::Arc { i, j, x };
            if m.validate(p).is_ok() {
                count += 1;
            }
        }
    }
    count
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Coefficient of `T^deg` in `-1 + (2 + pT)/(1 - T)^p`.
pub fn hilbert_series_coeff(p: u32, deg: u32) -> i64 {
    let (p, n) = (p as u64, deg as u64);
    let c = |m: i64| -> i64 {
        if m < 0 {
            0
        } else {
            binomial(m as u64 + p - 1, p - 1) as i64
        }
    };
    let v = 2 * c(n as i64) + p as i64 * c(n as i64 - 1);
    if n == 0 {
        v - 1
    } else {
        v
    }
}

/// Sum of [`basis_dimension`] over all multidegrees of total degree `deg`.
pub fn hilbert_enumerated(p: u32, deg: u32) -> i64 {
    fn rec(p: u32, left: u32, cur: &mut Vec<u32>, acc: &mut i64) {
        if cur.len() as u32 == p - 1 {
            cur.push(left);
            *acc += basis_dimension(p, cur) as i64;
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(p, left - a, cur, acc);
            cur.pop();
        }
    }
    let mut acc = 0;
    rec(p, deg, &mut Vec::new(), &mut acc);
    acc
}

/// Coefficients of `1 / H(-T)` up to degree `maxdeg`.
pub fn reciprocal_series(p: u32, maxdeg: u32) -> Vec<i64> {
    let h: Vec<i64> = (0..=maxdeg)
        .map(|d| {
            let c = hilbert_series_coeff(p, d);
            if d % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let mut e = vec![0i64; maxdeg as usize + 1];
    e[0] = 1;
    for n in 1..=maxdeg as usize {
        let s: i64 = (1..=n).map(|k| h[k] * e[n - k]).sum();
        e[n] = -s;
    }
    e
}

/// Parser for element expressions such as `2*x[0]*y[1] + u[z^2]*ys[0]^2`.
struct ElementParser<'a> {
    src: &'a str,
    pos: usize,
    cfg: OrbitConfig,
}

impl<'a> ElementParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(GwaError::Parse {
            offset: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected a number");
        }
        self.pos += digits.len();
        digits.parse().or_else(|_| self.err("number out of range"))
    }

    fn index(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let v = self.uint()?;
        if v >= self.cfg.p() as u64 {
            self.pos = start;
            return self.err(format!("index {} is not below p = {}", v, self.cfg.p()));
        }
        Ok(v as u32)
    }

    fn bracket_end(&mut self) -> Result<usize> {
        let mut depth = 0usize;
        for (n, c) in self.rest().char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ']' if depth == 0 => return Ok(self.pos + n),
                ']' => depth -= 1,
                _ => {}
            }
        }
        self.err("missing ']'")
    }

    fn generator(&mut self) -> Result<Formal> {
        self.skip_ws();
        let name: String = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        let start = self.pos;
        self.pos += name.len();
        if !self.eat('[') {
            return self.err("expected '['");
        }
        let cfg = self.cfg;
        let mut f = Formal::one(&cfg);
        match name.as_str() {
            "u" => {
                let end = self.bracket_end()?;
                let lit = &self.src[self.pos..end];
                let xi = LiteralParser::new(lit, self.pos, cfg.conductor()).parse_all()?;
                if xi.is_zero() {
                    return self.err("u needs a nonzero scalar");
                }
                self.pos = end;
                f.u = xi;
            }
            "x" => {
                let i = self.index()?;
                if self.eat(',') {
                    let j = self.index()?;
                    if i == j {
                        return self.err("x[i,j] needs i != j");
                    }
                    f.arcs.push((i, j));
                } else {
                    f.x[i as usize] = 1;
                }
            }
            "y" => f.y[self.index()? as usize] = 1,
            "ys" => f.ys[self.index()? as usize] = 1,
            _ => {
                self.pos = start;
                return self.err(format!("unknown generator '{}'", name));
            }
        }
        if !self.eat(']') {
            return self.err("expected ']'");
        }
        if self.eat('^') {
            let n = self.uint()?;
            let base = f.clone();
            f = Formal::one(&cfg);
            for _ in 0..n {
                f = f.mul(&base);
            }
        }
        Ok(f)
    }

    fn term(&mut self) -> Result<(BigRational, Formal)> {
        let mut coef = BigRational::one();
        let mut f = Formal::one(&self.cfg);
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.uint()?;
            let den = if self.eat('/') { self.uint()? } else { 1 };
            if den == 0 {
                return self.err("zero denominator");
            }
            coef = BigRational::new(BigInt::from(num), BigInt::from(den));
            if !self.eat('*') {
                return Ok((coef, f));
            }
        }
        loop {
            f = f.mul(&self.generator()?);
            if !self.eat('*') {
                break;
            }
        }
        Ok((coef, f))
    }

    fn element(&mut self) -> Result<GrothElement> {
        let cfg = self.cfg;
        let mut out = GrothElement::zero(cfg);
        let mut sign = BigRational::one();
        if self.eat('-') {
            sign = -sign;
        }
        if self.peek() == Some('0') && self.rest().trim() == "0" {
            self.pos = self.src.len();
            return Ok(out);
        }
        loop {
            let (c, f) = self.term()?;
            out = out.add(&normalize(&cfg, f).scale(&(c * &sign)));
            if self.eat('+') {
                sign = BigRational::one();
            } else if self.eat('-') {
                sign = -BigRational::one();
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

/// Parses an element expression and reduces it to normal form.
pub fn parse_element(s: &str, cfg: &OrbitConfig) -> Result<GrothElement> {
    ElementParser {
        src: s,
        pos: 0,
        cfg: *cfg,
    }
    .element()
}

/// Random normal-form monomial with exponents at most `max_exp`.
pub fn random_monomial<R: rand::Rng>(rng: &mut R, cfg: &OrbitConfig, max_exp: u32) -> GrothMonomial {
    let p = cfg.p();
    let exps = |rng: &mut R| loop {
        let e: Vec<u32> = (0..p).map(|_| rng.gen_range(0..=max_exp)).collect();
        if e.iter().any(|&a| a > 0) {
            return e;
        }
    };
    match rng.gen_range(0..5) {
        0 if p > 1 => {
            let i = rng.gen_range(0..p);
            let j = (i + rng.gen_range(1..p)) % p;
            let x = (0..p)
                .map(|k| {
                    if in_closed_arc(p, j, k, i) {
                        rng.gen_range(0..=max_exp)
                    } else {
                        0
                    }
                })
                .collect();
            GrothMonomial::Arc { i, j, x }
        }
        1 => GrothMonomial::XPow {
            i: rng.gen_range(0..p),
            a: rng.gen_range(1..=max_exp.max(1)),
        },
        2 => GrothMonomial::UY {
            xi: crate::sample::random_eigenvalue(rng, cfg),
            y: exps(rng),
        },
        3 => GrothMonomial::UYs {
            xi: crate::sample::random_eigenvalue(rng, cfg),
            ys: exps(rng),
        },
        _ => GrothMonomial::U(crate::sample::random_eigenvalue(rng, cfg)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u32) -> OrbitConfig {
        OrbitConfig::with_p(p)
    }

    fn el(s: &str, c: &OrbitConfig) -> GrothElement {
        parse_element(s, c).unwrap()
    }

    fn both(a: &GrothElement, b: &GrothElement) -> GrothElement {
        let r = groth_mul_rewrite(a, b).unwrap();
        assert_eq!(
            r,
            groth_mul_modules(a, b).unwrap(),
            "routes differ on ({}) * ({})",
            a,
            b
        );
        r
    }

    #[test]
    fn random_pairs_agree() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..300 {
            let c = OrbitConfig::new(2 + n % 3, 12).unwrap();
            let a = GrothElement::monomial(c, random_monomial(&mut rng, &c, 2));
            let b = GrothElement::monomial(c, random_monomial(&mut rng, &c, 2));
            both(&a, &b);
        }
    }

    #[test]
    fn cyclic_order() {
        assert!(strictly_between(4, 3, 0, 1));
        assert!(!strictly_between(4, 1, 0, 3));
        assert!(in_closed_arc(4, 2, 2, 0));
        assert!(in_closed_arc(4, 2, 0, 0));
        assert!(!in_closed_arc(4, 2, 1, 0));
    }

    #[test]
    fn y_times_ystar_is_sum_of_arcs() {
        let c = cfg(3);
        let r = both(&GrothElement::y(c, 0), &GrothElement::ys(c, 1));
        assert_eq!(r, GrothElement::x_arc(c, 0, 1).add(&GrothElement::x_arc(c, 1, 0)));
    }

    #[test]
    fn arc_times_inner_x() {
        let c = cfg(3);
        let r = both(&GrothElement::x_arc(c, 0, 2), &GrothElement::x(c, 1));
        assert_eq!(r, el("x[0,1]*x[2] + x[1,2]*x[0]", &c));
    }

    #[test]
    fn disjoint_arcs_vanish() {
        let c = cfg(4);
        assert!(both(&GrothElement::x_arc(c, 0, 1), &GrothElement::x_arc(c, 2, 3)).is_zero());
    }

    #[test]
    fn x_times_y_same_index() {
        let c = cfg(3);
        let r = both(&GrothElement::x(c, 1), &GrothElement::y(c, 1));
        assert_eq!(r, GrothElement::monomial(c, GrothMonomial::XPow { i: 1, a: 2 }));
    }

    #[test]
    fn units_multiply() {
        let c = cfg(4);
        let z = CycloScalar::root_of_unity(1, 4);
        let r = both(&GrothElement::u(c, z.clone()), &GrothElement::u(c, z.clone()));
        assert_eq!(r, GrothElement::u(c, z.pow(2)));
    }

    #[test]
    fn twisted_y_products() {
        let c = cfg(3);
        let r = both(&GrothElement::y(c, 1), &GrothElement::y(c, 2));
        assert_eq!(r, el("y[1]*y[2]", &c));
        let r = both(&el("u[2]*y[0]", &c), &el("u[z]*y[1]", &c));
        assert_eq!(r, el("u[2*z]*y[0]*y[1]", &c));
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for p in 2..=4 {
            for d in 0..=6 {
                assert_eq!(hilbert_enumerated(p, d), hilbert_series_coeff(p, d), "p={} d={}", p, d);
            }
        }
        assert_eq!(hilbert_series_coeff(2, 1), 6);
        assert_eq!(basis_dimension(3, &[1, 1, 1]), 5);
        assert_eq!(basis_dimension(3, &[0, 0, 0]), 1);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let c = OrbitConfig::new(3, 6).unwrap();
        let e = el("2*x[0,1]*x[2]^2 - 1/2*u[-z]*y[1] + ys[0]^2", &c);
        assert_eq!(el(&e.to_string(), &c), e);
        let json = serde_json::to_string(&e).unwrap();
        let back: GrothElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert!(matches!(
            parse_element("x[5]", &c),
            Err(GwaError::Parse { offset: 2, .. })
        ));
    }
}
