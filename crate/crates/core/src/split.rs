//! Split Grothendieck rings: classes modulo direct sums only.
//!
//! Three structures are exposed. The ring for the trivial parameter `t = 1`,
//! with basis `u(xi, a)`; the quotient of the single-break ring by the span
//! of path classes; and the subalgebra spanned by simple classes for the
//! single-break monoid, together with the section sending a module to the sum
//! of its composition factors.

use crate::error::{GwaError, Result};
use crate::modules::{composition_factors, decompose, CycleModule, Decomposition, Module, PathModule};
use crate::orbit::{canonical_shift, letters_to_string, primitive_period, Letter, OrbitConfig, TParam};
use crate::scalars::roots::roots_in_field;
use crate::scalars::{CycloScalar, JordanType, Poly};
use crate::tensor::tensor;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse rational combination over an ordered basis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "K: Serialize + Ord", deserialize = "K: Deserialize<'de> + Ord"))]
pub struct Combination<K> {
    #[serde(with = "term_list")]
    terms: BTreeMap<K, BigRational>,
}

/// JSON objects need string keys, so terms are written as a list of
/// `{"term": .., "coeff": "p/q"}` entries.
mod term_list {
    use num_rational::BigRational;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Entry<K> {
        term: K,
        coeff: String,
    }

    pub fn serialize<K: Serialize + Ord, S: Serializer>(m: &BTreeMap<K, BigRational>, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<Entry<&K>> = m
            .iter()
            .map(|(k, c)| Entry {
                term: k,
                coeff: c.to_string(),
            })
            .collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, K: Deserialize<'de> + Ord, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<K, BigRational>, D::Error> {
        let list = Vec::<Entry<K>>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for e in list {
            let c: BigRational = e
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", e.coeff)))?;
            if c != BigRational::from_integer(0.into()) {
                out.insert(e.term, c);
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> Default for Combination<K> {
    fn default() -> Self {
        Combination { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut c = Self::zero();
        c.add_term(k, BigRational::one());
        c
    }

    pub fn add_term(&mut self, k: K, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bilinear extension of a product on basis elements.
    pub fn bilinear<F>(&self, other: &Self, mut f: F) -> Result<Self>
    where
        F: FnMut(&K, &K) -> Result<Self>,
    {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out = out.add(&f(a, b)?.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}*", a)?;
            }
            write!(f, "{}", k)?;
        }
        Ok(())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Trivial parameter

/// `u(xi, a)`: the class of `V^1(1^p, (x - xi)^a)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct TrivialSplitMonomial {
    pub xi: CycloScalar,
    pub a: u32,
}

impl TrivialSplitMonomial {
    pub fn new(xi: CycloScalar, a: u32) -> Result<Self> {
        if a == 0 || xi.is_zero() {
            return Err(GwaError::UnsupportedShape("u(xi, a) needs a >= 1 and xi != 0".into()));
        }
        Ok(TrivialSplitMonomial { xi, a })
    }

    /// The cycle module of this class on the orbit `cfg`.
    pub fn module(&self, cfg: &OrbitConfig) -> Result<Module> {
        let p = cfg.p();
        let f = JordanType::single(self.xi.lift(cfg.conductor()), self.a as usize);
        Ok(Module::Cycle(CycleModule::new(
            *cfg,
            TParam::one(p),
            vec![Letter::One; p as usize],
            f,
        )?))
    }
}

impl fmt::Display for TrivialSplitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{},{}]", self.xi.to_literal(), self.a)
    }
}

pub type TrivialElement = Combination<TrivialSplitMonomial>;

/// `u(xi,a) u(eta,b) = sum_{k=1}^{min(a,b)} u(xi eta, a + b - 2k + 1)`.
pub fn trivial_mul(m1: &TrivialSplitMonomial, m2: &TrivialSplitMonomial) -> TrivialElement {
    let xi = &m1.xi * &m2.xi;
    let mut out = TrivialElement::zero();
    for k in 1..=m1.a.min(m2.a) {
        out.add_term(
            TrivialSplitMonomial {
                xi: xi.clone(),
                a: m1.a + m2.a - 2 * k + 1,
            },
            BigRational::one(),
        );
    }
    out
}

pub fn trivial_mul_elements(e1: &TrivialElement, e2: &TrivialElement) -> TrivialElement {
    e1.bilinear(e2, |a, b| Ok(trivial_mul(a, b))).expect("infallible")
}

/// `u(xi, 1) * P(u(1,2))`, the polynomial presentation of the trivial ring.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratorPoly {
    pub xi: CycloScalar,
    /// Coefficient of `u(1,2)^k` at index `k`.
    pub coeffs: Vec<BigInt>,
}

/// Coefficients of `u(1,a)` as a polynomial in `u(1,2)`.
pub fn chebyshev_coeffs(a: u32) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![];
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    for _ in 1..a {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Writes `u(xi, a)` as `u(xi,1) * P(u(1,2))` using
/// `u(1,a) = u(1,a-1) u(1,2) - u(1,a-2)`.
pub fn trivial_ring_normalize(m: &TrivialSplitMonomial) -> GeneratorPoly {
    GeneratorPoly {
        xi: m.xi.clone(),
        coeffs: chebyshev_coeffs(m.a),
    }
}

/// Expands `u(xi,1) * P(u(1,2))` back into the basis `u(xi, a)`.
pub fn trivial_ring_expand(g: &GeneratorPoly) -> TrivialElement {
    let n = g.xi.conductor();
    let u12 = TrivialElement::basis(TrivialSplitMonomial {
        xi: CycloScalar::one(n),
        a: 2,
    });
    let mut power = TrivialElement::basis(TrivialSplitMonomial { xi: g.xi.clone(), a: 1 });
    let mut out = TrivialElement::zero();
    for c in &g.coeffs {
        out = out.add(&power.scale(&BigRational::from_integer(c.clone())));
        power = trivial_mul_elements(&power, &u12);
    }
    out
}

/// Class of an indecomposable module: `true` for the path family, which
/// spans the ideal.
pub fn ideal_membership(m: &Module) -> bool {
    m.is_path()
}

// ---------------------------------------------------------------------------
// Quotient of the single-break ring

fn single_break_t(cfg: &OrbitConfig, n: u32) -> TParam {
    TParam::single(cfg.p(), 0, n)
}

/// Checks that `w` is a zero-free, non-periodic word for `t = z - 1` and
/// returns the canonical representative of its shift orbit.
pub fn canonical_y_word(cfg: &OrbitConfig, w: &[Letter]) -> Result<Vec<Letter>> {
    let p = cfg.p() as usize;
    if w.is_empty() || w.len() % p != 0 {
        return Err(GwaError::InvalidWord(format!(
            "length {} is not a positive multiple of p",
            w.len()
        )));
    }
    for (s, &l) in w.iter().enumerate() {
        let brk = (s + 1) % p == 0;
        let ok = if brk {
            l == Letter::X || l == Letter::Y
        } else {
            l == Letter::One
        };
        if !ok {
            return Err(GwaError::InvalidWord(format!(
                "letter {} at position {} of {}",
                l.to_char(),
                s + 1,
                letters_to_string(w)
            )));
        }
    }
    if primitive_period(cfg, w)? != w.len() / p {
        return Err(GwaError::InvalidWord(format!("{} is periodic", letters_to_string(w))));
    }
    Ok(canonical_shift(cfg, w)?.0)
}

/// Power of a `y` generator inside a quotient monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct YPower {
    /// Canonical representative of the shift orbit.
    pub word: Vec<Letter>,
    pub n: u32,
}

impl YPower {
    /// `r`, the word length divided by `p`.
    pub fn r(&self, p: u32) -> u32 {
        self.word.len() as u32 / p
    }
}

/// `u_xi u(1,2)^a y^n` in normal form. When `y` is present the stored
/// scalar is the invariant `xi^r`, otherwise it is `xi` itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct QuotientSplitMonomial {
    pub u: CycloScalar,
    pub a: u32,
    pub y: Option<YPower>,
}

impl QuotientSplitMonomial {
    pub fn unit(cfg: &OrbitConfig) -> Self {
        Self::u(cfg, cfg.scalar(1))
    }

    pub fn u(cfg: &OrbitConfig, xi: CycloScalar) -> Self {
        QuotientSplitMonomial {
            u: xi.lift(cfg.conductor()),
            a: 0,
            y: None,
        }
    }

    pub fn u12(cfg: &OrbitConfig) -> Self {
        QuotientSplitMonomial {
            u: cfg.scalar(1),
            a: 1,
            y: None,
        }
    }

    pub fn y(cfg: &OrbitConfig, w: &[Letter]) -> Result<Self> {
        Ok(QuotientSplitMonomial {
            u: cfg.scalar(1),
            a: 0,
            y: Some(YPower {
                word: canonical_y_word(cfg, w)?,
                n: 1,
            }),
        })
    }
}

impl fmt::Display for QuotientSplitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.u.is_one() || (self.a == 0 && self.y.is_none()) {
            match &self.y {
                Some(_) => parts.push(format!("u[({})^(1/r)]", self.u.to_literal())),
                None => parts.push(format!("u[{}]", self.u.to_literal())),
            }
        }
        match self.a {
            0 => {}
            1 => parts.push("u[1,2]".into()),
            a => parts.push(format!("u[1,2]^{}", a)),
        }
        if let Some(y) = &self.y {
            let w = letters_to_string(&y.word);
            parts.push(if y.n == 1 {
                format!("yw[{}]", w)
            } else {
                format!("yw[{}]^{}", w, y.n)
            });
        }
        write!(f, "{}", parts.join("*"))
    }
}

pub type QuotientElement = Combination<QuotientSplitMonomial>;

/// Product of quotient monomials under the four defining relations.
pub fn quotient_mul(
    cfg: &OrbitConfig,
    m1: &QuotientSplitMonomial,
    m2: &QuotientSplitMonomial,
) -> Result<QuotientElement> {
    let p = cfg.p();
    let (u, y) = match (&m1.y, &m2.y) {
        (Some(y1), Some(y2)) => {
            if y1.word != y2.word {
                return Ok(QuotientElement::zero());
            }
            (
                &m1.u * &m2.u,
                Some(YPower {
                    word: y1.word.clone(),
                    n: y1.n + y2.n,
                }),
            )
        }
        (Some(y1), None) => (&m1.u * &m2.u.pow(y1.r(p) as i64), Some(y1.clone())),
        (None, Some(y2)) => (&m1.u.pow(y2.r(p) as i64) * &m2.u, Some(y2.clone())),
        (None, None) => (&m1.u * &m2.u, None),
    };
    Ok(QuotientElement::basis(QuotientSplitMonomial { u, a: m1.a + m2.a, y }))
}

pub fn quotient_mul_elements(cfg: &OrbitConfig, e1: &QuotientElement, e2: &QuotientElement) -> Result<QuotientElement> {
    e1.bilinear(e2, |a, b| quotient_mul(cfg, a, b))
}

/// An `r`-th root of the stored invariant, giving an actual `u_xi` factor.
pub fn quotient_u_factor(cfg: &OrbitConfig, m: &QuotientSplitMonomial) -> Result<CycloScalar> {
    let Some(y) = &m.y else {
        return Ok(m.u.clone());
    };
    let r = y.r(cfg.p());
    if r == 1 {
        return Ok(m.u.clone());
    }
    let n = cfg.conductor();
    let mut coeffs = vec![CycloScalar::zero(n); r as usize + 1];
    coeffs[0] = -m.u.clone();
    coeffs[r as usize] = CycloScalar::one(n);
    roots_in_field(&Poly::new(coeffs, n)).into_iter().next().ok_or_else(|| {
        GwaError::RootExtractionNeeded(format!(
            "no {}-th root of {} in Q(zeta_{}); a conductor divisible by {} may be needed",
            r,
            m.u.to_literal(),
            n,
            n as u64 * r as u64
        ))
    })
}

/// Module realising a quotient generator: `u_xi`, `u(1,2)` or `y_w`.
pub fn quotient_generator_module(cfg: &OrbitConfig, m: &QuotientSplitMonomial) -> Result<Module> {
    let p = cfg.p();
    let ones = vec![Letter::One; p as usize];
    match (&m.y, m.a) {
        (None, 0) => Ok(Module::Cycle(CycleModule::with_eigenvalue(
            *cfg,
            TParam::one(p),
            ones,
            m.u.clone(),
        )?)),
        (None, 1) if m.u.is_one() => TrivialSplitMonomial::new(cfg.scalar(1), 2)?.module(cfg),
        (Some(y), 0) if y.n == 1 && m.u.is_one() => Ok(Module::Cycle(CycleModule::with_eigenvalue(
            *cfg,
            single_break_t(cfg, 1),
            y.word.clone(),
            cfg.scalar(1),
        )?)),
        _ => Err(GwaError::UnsupportedShape(format!("{} is not a generator", m))),
    }
}

/// Class of a module in the quotient: path summands vanish, a cycle summand
/// `V^{(z-1)^n}(w, (x - lambda)^b)` becomes `u_{lambda^{1/r}} u(1,b) y^n`.
pub fn class_to_quotient(m: &Module) -> Result<QuotientElement> {
    let mut out = QuotientElement::zero();
    for (s, k) in decompose(m)?.iter() {
        out = out.add(&indecomposable_to_quotient(s)?.scale(&int(k as i64)));
    }
    Ok(out)
}

pub fn decomposition_to_quotient(d: &Decomposition) -> Result<QuotientElement> {
    let mut out = QuotientElement::zero();
    for (s, k) in d.iter() {
        out = out.add(&class_to_quotient(s)?.scale(&int(k as i64)));
    }
    Ok(out)
}

fn indecomposable_to_quotient(m: &Module) -> Result<QuotientElement> {
    let c = match m {
        Module::Path(_) => return Ok(QuotientElement::zero()),
        Module::Cycle(c) => c,
    };
    let cfg = c.cfg;
    let exps = c.t.exps();
    if exps.iter().skip(1).any(|&a| a > 0) {
        return Err(GwaError::UnsupportedShape(format!(
            "{} is outside the single-break monoid",
            m
        )));
    }
    let n = exps[0];
    let (lambda, b) = c.f.blocks()[0].clone();
    let y = if n == 0 {
        None
    } else {
        Some(YPower {
            word: canonical_y_word(&cfg, &c.w)?,
            n,
        })
    };
    let mut out = QuotientElement::zero();
    for (k, coef) in chebyshev_coeffs(b as u32).into_iter().enumerate() {
        out.add_term(
            QuotientSplitMonomial {
                u: lambda.clone(),
                a: k as u32,
                y: y.clone(),
            },
            BigRational::from_integer(coef),
        );
    }
    Ok(out)
}

/// Product of two module classes computed by tensoring and projecting.
pub fn quotient_mul_modules(m1: &Module, m2: &Module) -> Result<QuotientElement> {
    decomposition_to_quotient(&tensor(m1, m2)?.decomposition)
}

// ---------------------------------------------------------------------------
// Simple classes for the single-break monoid

/// Simple classes for `t = (z-1)^a`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SemisimpleSymbol {
    U(CycloScalar),
    X(u32),
    Y(u32, CycloScalar),
    Ys(u32, CycloScalar),
}

impl fmt::Display for SemisimpleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemisimpleSymbol::U(xi) => write!(f, "u[{}]", xi.to_literal()),
            SemisimpleSymbol::X(a) => write!(f, "xa[{}]", a),
            SemisimpleSymbol::Y(a, xi) => write!(f, "ya[{},{}]", a, xi.to_literal()),
            SemisimpleSymbol::Ys(a, xi) => write!(f, "ysa[{},{}]", a, xi.to_literal()),
        }
    }
}

pub type SemisimpleM0Element = Combination<SemisimpleSymbol>;

/// Product of two simple classes.
pub fn semisimple_symbol_mul(a: &SemisimpleSymbol, b: &SemisimpleSymbol) -> SemisimpleSymbol {
    use SemisimpleSymbol::*;
    match (a, b) {
        (U(x), U(y)) => U(x * y),
        (U(x), Y(n, y)) | (Y(n, y), U(x)) => Y(*n, x * y),
        (U(x), Ys(n, y)) | (Ys(n, y), U(x)) => Ys(*n, x * y),
        (Y(m, x), Y(n, y)) => Y(m + n, x * y),
        (Ys(m, x), Ys(n, y)) => Ys(m + n, x * y),
        (Y(m, _), Ys(n, _)) | (Ys(m, _), Y(n, _)) => X(m + n),
        (X(m), X(n)) => X(m + n),
        (U(_), X(n)) | (X(n), U(_)) => X(*n),
        (X(m), Y(n, _)) | (Y(n, _), X(m)) | (X(m), Ys(n, _)) | (Ys(n, _), X(m)) => X(m + n),
    }
}

pub fn semisimple_mul(e1: &SemisimpleM0Element, e2: &SemisimpleM0Element) -> SemisimpleM0Element {
    e1.bilinear(e2, |a, b| Ok(SemisimpleM0Element::basis(semisimple_symbol_mul(a, b))))
        .expect("infallible")
}

/// The simple module of a symbol.
pub fn semisimple_symbol_module(cfg: &OrbitConfig, s: &SemisimpleSymbol) -> Result<Module> {
    let p = cfg.p() as usize;
    let cyc = |n: u32, last: Letter, xi: &CycloScalar| -> Result<Module> {
        let mut w = vec![Letter::One; p];
        w[p - 1] = last;
        Ok(Module::Cycle(CycleModule::with_eigenvalue(
            *cfg,
            single_break_t(cfg, n),
            w,
            xi.lift(cfg.conductor()),
        )?))
    };
    match s {
        SemisimpleSymbol::U(xi) => cyc(0, Letter::One, xi),
        SemisimpleSymbol::X(a) => Ok(Module::Path(PathModule::new(
            *cfg,
            single_break_t(cfg, *a),
            0,
            vec![Letter::One; p - 1],
        )?)),
        SemisimpleSymbol::Y(a, xi) => cyc(*a, Letter::X, xi),
        SemisimpleSymbol::Ys(a, xi) => cyc(*a, Letter::Y, xi),
    }
}

/// Symbol of a simple module for the single-break monoid.
pub fn simple_to_symbol(m: &Module) -> Result<SemisimpleSymbol> {
    let unsupported = || GwaError::UnsupportedShape(format!("{} is not a simple class for t = (z-1)^a", m));
    let exps = m.t().exps();
    if exps.iter().skip(1).any(|&a| a > 0) {
        return Err(unsupported());
    }
    let a = exps[0];
    let p = m.cfg().p() as usize;
    match m {
        Module::Path(pm) => {
            if a == 0 || pm.i != 0 || pm.w.len() != p - 1 || pm.w.iter().any(|&l| l != Letter::One) {
                return Err(unsupported());
            }
            Ok(SemisimpleSymbol::X(a))
        }
        Module::Cycle(c) => {
            let blocks = c.f.blocks();
            if c.r() != 1 || blocks.len() != 1 || blocks[0].1 != 1 {
                return Err(unsupported());
            }
            let xi = blocks[0].0.clone();
            match (a, c.w[p - 1]) {
                (0, _) => Ok(SemisimpleSymbol::U(xi)),
                (_, Letter::X) => Ok(SemisimpleSymbol::Y(a, xi)),
                (_, Letter::Y) => Ok(SemisimpleSymbol::Ys(a, xi)),
                _ => Err(unsupported()),
            }
        }
    }
}

/// The section: a module goes to the sum of its simple subquotients.
pub fn section_alpha(m: &Module) -> Result<SemisimpleM0Element> {
    let mut out = SemisimpleM0Element::zero();
    for (s, k) in decompose(m)?.iter() {
        for (f, j) in composition_factors(s)?.iter() {
            out.add_term(simple_to_symbol(f)?, int((k * j) as i64));
        }
    }
    Ok(out)
}

pub fn section_alpha_decomposition(d: &Decomposition) -> Result<SemisimpleM0Element> {
    let mut out = SemisimpleM0Element::zero();
    for (s, k) in d.iter() {
        out = out.add(&section_alpha(s)?.scale(&int(k as i64)));
    }
    Ok(out)
}

/// Tensor of two simple classes, read off as a sum of simple classes. Fails
/// with `UnsupportedShape` if some summand is not simple.
pub fn semisimple_mul_modules(
    cfg: &OrbitConfig,
    a: &SemisimpleSymbol,
    b: &SemisimpleSymbol,
) -> Result<SemisimpleM0Element> {
    let prod = tensor(&semisimple_symbol_module(cfg, a)?, &semisimple_symbol_module(cfg, b)?)?;
    let mut out = SemisimpleM0Element::zero();
    for (s, k) in prod.decomposition.iter() {
        out.add_term(simple_to_symbol(s)?, int(k as i64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::parse_letters;
    use crate::scalars::jordan_decompose;

    fn u(xi: i64, a: u32, n: u32) -> TrivialSplitMonomial {
        TrivialSplitMonomial::new(CycloScalar::from_int(xi, n), a).unwrap()
    }

    #[test]
    fn jordan_block_products() {
        let e = trivial_mul(&u(1, 2, 1), &u(1, 2, 1));
        assert_eq!(
            e,
            TrivialElement::basis(u(1, 3, 1)).add(&TrivialElement::basis(u(1, 1, 1)))
        );
        let e = trivial_mul(&u(1, 3, 1), &u(1, 2, 1));
        assert_eq!(
            e,
            TrivialElement::basis(u(1, 4, 1)).add(&TrivialElement::basis(u(1, 2, 1)))
        );
        assert_eq!(trivial_mul(&u(2, 1, 1), &u(3, 1, 1)), TrivialElement::basis(u(6, 1, 1)));
    }

    #[test]
    fn product_matches_kronecker() {
        let n = 4;
        let xi = CycloScalar::root_of_unity(1, n);
        let eta = CycloScalar::from_int(2, n);
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                let m1 = TrivialSplitMonomial::new(xi.clone(), a).unwrap();
                let m2 = TrivialSplitMonomial::new(eta.clone(), b).unwrap();
                let k = JordanType::single(xi.clone(), a as usize)
                    .to_matrix(n)
                    .kron(&JordanType::single(eta.clone(), b as usize).to_matrix(n));
                let mut expect = TrivialElement::zero();
                for (lam, s) in jordan_decompose(&k).unwrap().blocks() {
                    expect.add_term(
                        TrivialSplitMonomial::new(lam.clone(), *s as u32).unwrap(),
                        BigRational::one(),
                    );
                }
                assert_eq!(trivial_mul(&m1, &m2), expect);
            }
        }
    }

    #[test]
    fn chebyshev_round_trip() {
        let c = chebyshev_coeffs(3);
        assert_eq!(c, vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
        for a in 1..=7 {
            let m = u(5, a, 3);
            assert_eq!(
                trivial_ring_expand(&trivial_ring_normalize(&m)),
                TrivialElement::basis(m)
            );
        }
    }

    #[test]
    fn quotient_relations() {
        let cfg = OrbitConfig::new(2, 4).unwrap();
        let w1 = parse_letters("1x1y").unwrap();
        let w2 = parse_letters("1x1x1y").unwrap();
        let y1 = QuotientSplitMonomial::y(&cfg, &w1).unwrap();
        let y2 = QuotientSplitMonomial::y(&cfg, &w2).unwrap();
        assert!(quotient_mul(&cfg, &y1, &y2).unwrap().is_zero());
        let minus = QuotientSplitMonomial::u(&cfg, cfg.scalar(-1));
        assert_eq!(
            quotient_mul(&cfg, &minus, &y1).unwrap(),
            QuotientElement::basis(y1.clone())
        );
        let ym = quotient_generator_module(&cfg, &y1).unwrap();
        assert_eq!(
            quotient_mul_modules(&ym, &ym).unwrap(),
            quotient_mul(&cfg, &y1, &y1).unwrap()
        );
        let um = quotient_generator_module(&cfg, &minus).unwrap();
        assert_eq!(
            quotient_mul_modules(&um, &ym).unwrap(),
            QuotientElement::basis(y1.clone())
        );
        assert!(canonical_y_word(&cfg, &parse_letters("1x1x").unwrap()).is_err());
    }

    #[test]
    fn root_extraction_reported() {
        let cfg = OrbitConfig::new(2, 2).unwrap();
        let w = parse_letters("1x1y").unwrap();
        let mut m = QuotientSplitMonomial::y(&cfg, &w).unwrap();
        m.u = cfg.scalar(-1);
        assert!(matches!(
            quotient_u_factor(&cfg, &m),
            Err(GwaError::RootExtractionNeeded(_))
        ));
        m.u = cfg.scalar(4);
        assert_eq!(quotient_u_factor(&cfg, &m).unwrap().pow(2), cfg.scalar(4));
    }

    #[test]
    fn simple_tensor_table() {
        let cfg = OrbitConfig::new(3, 3).unwrap();
        let z = CycloScalar::root_of_unity(1, 3);
        let syms = [
            SemisimpleSymbol::U(z.clone()),
            SemisimpleSymbol::X(1),
            SemisimpleSymbol::X(2),
            SemisimpleSymbol::Y(1, z.clone()),
            SemisimpleSymbol::Ys(2, cfg.scalar(2)),
            SemisimpleSymbol::Y(2, cfg.scalar(-1)),
        ];
        for a in &syms {
            for b in &syms {
                assert_eq!(
                    semisimple_mul_modules(&cfg, a, b).unwrap(),
                    SemisimpleM0Element::basis(semisimple_symbol_mul(a, b)),
                    "{} * {}",
                    a,
                    b
                );
            }
        }
    }

    #[test]
    fn paths_lie_in_the_ideal() {
        let cfg = OrbitConfig::with_p(3);
        let x = semisimple_symbol_module(&cfg, &SemisimpleSymbol::X(1)).unwrap();
        assert!(ideal_membership(&x));
        assert!(!ideal_membership(
            &TrivialSplitMonomial::new(cfg.scalar(1), 2)
                .unwrap()
                .module(&cfg)
                .unwrap()
        ));
        let y = semisimple_symbol_module(&cfg, &SemisimpleSymbol::Y(1, cfg.scalar(1))).unwrap();
        for (s, _) in tensor(&x, &y).unwrap().decomposition.iter() {
            assert!(ideal_membership(s));
        }
    }

    #[test]
    fn combinations_round_trip_through_json() {
        let cfg = OrbitConfig::new(2, 4).unwrap();
        let e = SemisimpleM0Element::basis(SemisimpleSymbol::Y(1, cfg.scalar(1)))
            .add(&SemisimpleM0Element::basis(SemisimpleSymbol::X(2)).scale(&BigRational::new(3.into(), 2.into())));
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains("\"3/2\""));
        let back: SemisimpleM0Element = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
