//! Cycle modules `V^t(w, F)` and path modules `V^t(i, w)`: validation,
//! splitting into indecomposables, composition factors and canonical forms.

use crate::error::{GwaError, Result};
use crate::orbit::{canonical_shift, letters_to_string, primitive_period, Letter, OrbitConfig, TParam};
use crate::scalars::{parse_scalar, roots_in_field, CycloScalar, JordanType, Matrix, Poly};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `V^t(w, F)` on a circular basis `e_{k,s}`, `1 <= k <= rp`, `1 <= s <= d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleModule {
    pub cfg: OrbitConfig,
    pub t: TParam,
    pub w: Vec<Letter>,
    pub f: JordanType,
}

/// `V^t(i, w)` on the basis `e_k`, `i + 1 <= k <= i + l + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathModule {
    pub cfg: OrbitConfig,
    pub t: TParam,
    pub i: u32,
    pub w: Vec<Letter>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ModuleJson", try_from = "ModuleJson")]
pub enum Module {
    Cycle(CycleModule),
    Path(PathModule),
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModuleKind {
    Cycle,
    Path,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    w: String,
    start: i64,
}

/// JSON form: `{"kind", "p", "conductor", "t", "i", "w": {"w", "start"}, "F"}`
/// with scalars written as literals.
#[derive(Serialize, Deserialize)]
struct ModuleJson {
    kind: ModuleKind,
    p: u32,
    conductor: u32,
    t: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<u32>,
    w: WordJson,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    f: Option<Vec<(String, usize)>>,
}

impl From<Module> for ModuleJson {
    fn from(m: Module) -> Self {
        let cfg = *m.cfg();
        let t = m.t().to_string();
        match m {
            Module::Cycle(c) => ModuleJson {
                kind: ModuleKind::Cycle,
                p: cfg.p(),
                conductor: cfg.conductor(),
                t,
                i: None,
                w: WordJson {
                    w: letters_to_string(&c.w),
                    start: 1,
                },
                f: Some(c.f.blocks().iter().map(|(x, a)| (x.to_literal(), *a)).collect()),
            },
            Module::Path(pm) => ModuleJson {
                kind: ModuleKind::Path,
                p: cfg.p(),
                conductor: cfg.conductor(),
                t,
                i: Some(pm.i),
                w: WordJson {
                    w: letters_to_string(&pm.w),
                    start: pm.i as i64 + 1,
                },
                f: None,
            },
        }
    }
}

impl TryFrom<ModuleJson> for Module {
    type Error = GwaError;

    fn try_from(j: ModuleJson) -> Result<Self> {
        let cfg = OrbitConfig::new(j.p, j.conductor)?;
        let f = match j.f {
            None => None,
            Some(blocks) => Some(
                blocks
                    .iter()
                    .map(|(x, a)| Ok((parse_scalar(x, cfg.conductor())?, *a)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let path = matches!(j.kind, ModuleKind::Path);
        Module::from_parts(
            cfg,
            TParam::parse(&j.t, cfg.p())?,
            path,
            j.i,
            &j.w.w,
            Some(j.w.start),
            f,
        )
    }
}

impl Module {
    /// Builds a module from literal parts. A path takes its start index from
    /// `i` or, failing that, from the word start minus one. A cycle word
    /// given at another start is rotated so that it starts at position 1.
    pub fn from_parts(
        cfg: OrbitConfig,
        t: TParam,
        path: bool,
        i: Option<u32>,
        word: &str,
        start: Option<i64>,
        f: Option<Vec<(CycloScalar, usize)>>,
    ) -> Result<Module> {
        let letters = crate::orbit::parse_letters(word)?;
        if path {
            if f.is_some() {
                return Err(GwaError::UnsupportedShape("a path module takes no eigen-data".into()));
            }
            let i = match (i, start) {
                (Some(i), Some(s)) if s - 1 != i as i64 => {
                    return Err(GwaError::InvalidBreakIndex(format!(
                        "word starts at {} but i = {}",
                        s, i
                    )))
                }
                (Some(i), _) => i,
                (None, Some(s)) => cfg.weight(s - 1),
                (None, None) => return Err(GwaError::InvalidBreakIndex("path needs i or a word start".into())),
            };
            if i >= cfg.p() {
                return Err(GwaError::InvalidBreakIndex(format!("i = {} is outside the orbit", i)));
            }
            return Ok(Module::Path(PathModule::new(cfg, t, i, letters)?));
        }
        let f = f.ok_or_else(|| GwaError::UnsupportedShape("a cycle module needs eigen-data F".into()))?;
        if f.iter().any(|(x, _)| x.is_zero()) {
            return Err(GwaError::SingularF);
        }
        let n = letters.len() as i64;
        let s = start.unwrap_or(1);
        let w: Vec<Letter> = if n == 0 {
            letters
        } else {
            (0..n).map(|k| letters[(k + 1 - s).rem_euclid(n) as usize]).collect()
        };
        let f = JordanType::new(f.into_iter().map(|(x, a)| (x.lift(cfg.conductor()), a)).collect());
        Ok(Module::Cycle(CycleModule::new(cfg, t, w, f)?))
    }
}

impl CycleModule {
    pub fn new(cfg: OrbitConfig, t: TParam, w: Vec<Letter>, f: JordanType) -> Result<Self> {
        let m = CycleModule {
            cfg,
            t,
            w,
            f: f.lift(cfg.conductor()),
        };
        m.validate()?;
        Ok(m)
    }

    /// `V^t(w, x - xi)`.
    pub fn with_eigenvalue(cfg: OrbitConfig, t: TParam, w: Vec<Letter>, xi: CycloScalar) -> Result<Self> {
        Self::new(cfg, t, w, JordanType::single(xi, 1))
    }

    pub fn r(&self) -> usize {
        self.w.len() / self.cfg.p() as usize
    }

    pub fn d(&self) -> usize {
        self.f.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.cfg.p() as usize;
        if self.t.p() as usize != p {
            return Err(GwaError::ContextMismatch(format!(
                "parameter has {} exponents for orbit size {}",
                self.t.p(),
                p
            )));
        }
        if self.w.is_empty() || self.w.len() % p != 0 {
            return Err(GwaError::InvalidWord(format!(
                "cycle word length {} is not a positive multiple of p = {}",
                self.w.len(),
                p
            )));
        }
        crate::orbit::Word::new(1, self.w.clone()).validate(&self.t)?;
        if self.f.dim() == 0 || !self.f.is_invertible() {
            return Err(GwaError::SingularF);
        }
        Ok(())
    }

    pub fn has_zero(&self) -> bool {
        self.w.contains(&Letter::Zero)
    }

    /// Canonical representative: least p-rotation of the word. Rotation by
    /// multiples of p does not change the normalized monodromy.
    pub fn canonical(&self) -> Self {
        let (w, _) = canonical_shift(&self.cfg, &self.w).expect("valid cycle word");
        CycleModule {
            cfg: self.cfg,
            t: self.t.clone(),
            w,
            f: self.f.clone(),
        }
    }
}

impl PathModule {
    pub fn new(cfg: OrbitConfig, t: TParam, i: u32, w: Vec<Letter>) -> Result<Self> {
        let m = PathModule { cfg, t, i, w };
        m.validate()?;
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// Absolute position of the last basis vector, `i + l + 1`.
    pub fn end(&self) -> i64 {
        self.i as i64 + self.w.len() as i64 + 1
    }

    /// Letter `w_k` for `i + 1 <= k <= i + l`.
    pub fn letter(&self, k: i64) -> Letter {
        self.w[(k - self.i as i64 - 1) as usize]
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.cfg.p();
        if self.t.p() != p {
            return Err(GwaError::ContextMismatch(format!(
                "parameter has {} exponents for orbit size {}",
                self.t.p(),
                p
            )));
        }
        if self.i >= p {
            return Err(GwaError::InvalidBreakIndex(format!(
                "start index {} outside 0..{}",
                self.i, p
            )));
        }
        if !self.t.is_break(self.i as i64) {
            return Err(GwaError::InvalidBreakIndex(format!(
                "start index {} is not a break",
                self.i
            )));
        }
        if !self.t.is_break(self.end()) {
            return Err(GwaError::InvalidBreakIndex(format!(
                "end position {} (weight {}) is not a break",
                self.end(),
                self.cfg.weight(self.end())
            )));
        }
        crate::orbit::Word::new(self.i as i64 + 1, self.w.clone()).validate(&self.t)
    }

    pub fn has_zero(&self) -> bool {
        self.w.contains(&Letter::Zero)
    }
}

impl Module {
    pub fn cfg(&self) -> &OrbitConfig {
        match self {
            Module::Cycle(c) => &c.cfg,
            Module::Path(p) => &p.cfg,
        }
    }

    pub fn t(&self) -> &TParam {
        match self {
            Module::Cycle(c) => &c.t,
            Module::Path(p) => &p.t,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Module::Cycle(c) => c.validate(),
            Module::Path(p) => p.validate(),
        }
    }

    pub fn canonical(&self) -> Module {
        match self {
            Module::Cycle(c) => Module::Cycle(c.canonical()),
            Module::Path(p) => Module::Path(p.clone()),
        }
    }

    pub fn dim(&self) -> usize {
        dimension_vector(self).iter().sum()
    }

    pub fn is_path(&self) -> bool {
        matches!(self, Module::Path(_))
    }

    pub fn has_zero(&self) -> bool {
        match self {
            Module::Cycle(c) => c.has_zero(),
            Module::Path(p) => p.has_zero(),
        }
    }
}

impl From<CycleModule> for Module {
    fn from(c: CycleModule) -> Self {
        Module::Cycle(c)
    }
}

impl From<PathModule> for Module {
    fn from(p: PathModule) -> Self {
        Module::Path(p)
    }
}

impl fmt::Display for CycleModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V^[{}](w={}, F={})", self.t, letters_to_string(&self.w), self.f)
    }
}

impl fmt::Display for PathModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.w.is_empty() {
            "∅".to_string()
        } else {
            letters_to_string(&self.w)
        };
        write!(f, "V^[{}](i={}, w={})", self.t, self.i, w)
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Module::Cycle(c) => write!(f, "{}", c),
            Module::Path(p) => write!(f, "{}", p),
        }
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for CycleModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for PathModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A multiset of modules kept in canonical form, so equality of
/// decompositions is equality up to isomorphism of summands.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Summand>", from = "Vec<Summand>")]
pub struct Decomposition {
    summands: BTreeMap<Module, usize>,
}

/// Serialized form of one entry of a [`Decomposition`].
#[derive(Clone, Serialize, Deserialize)]
pub struct Summand {
    pub module: Module,
    pub multiplicity: usize,
}

impl From<Decomposition> for Vec<Summand> {
    fn from(d: Decomposition) -> Self {
        d.summands
            .into_iter()
            .map(|(module, multiplicity)| Summand { module, multiplicity })
            .collect()
    }
}

impl From<Vec<Summand>> for Decomposition {
    fn from(v: Vec<Summand>) -> Self {
        let mut d = Decomposition::new();
        for s in v {
            d.push(s.module, s.multiplicity);
        }
        d
    }
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(m: Module) -> Self {
        let mut d = Self::new();
        d.push(m, 1);
        d
    }

    pub fn push(&mut self, m: Module, mult: usize) {
        if mult > 0 {
            *self.summands.entry(m.canonical()).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &Decomposition, mult: usize) {
        for (m, k) in &other.summands {
            self.push(m.clone(), k * mult);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Module, usize)> {
        self.summands.iter().map(|(m, k)| (m, *k))
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Number of summands counted with multiplicity.
    pub fn count(&self) -> usize {
        self.summands.values().sum()
    }

    pub fn dim(&self) -> usize {
        self.iter().map(|(m, k)| m.dim() * k).sum()
    }

    pub fn dimension_vector(&self, p: u32) -> Vec<usize> {
        let mut out = vec![0; p as usize];
        for (m, k) in self.iter() {
            for (o, v) in out.iter_mut().zip(dimension_vector(m)) {
                *o += v * k;
            }
        }
        out
    }

    /// Summands listed with repetition.
    pub fn flatten(&self) -> Vec<Module> {
        let mut out = Vec::new();
        for (m, k) in self.iter() {
            for _ in 0..k {
                out.push(m.clone());
            }
        }
        out
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(m, k)| if k == 1 { m.to_string() } else { format!("{}^{}", m, k) })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Per-weight dimensions.
pub fn dimension_vector(m: &Module) -> Vec<usize> {
    match m {
        Module::Cycle(c) => vec![c.r() * c.d(); c.cfg.p() as usize],
        Module::Path(pm) => {
            let mut v = vec![0; pm.cfg.p() as usize];
            for k in pm.i as i64 + 1..=pm.end() {
                v[pm.cfg.weight(k) as usize] += 1;
            }
            v
        }
    }
}

/// Splits a path module at every letter `0`.
pub fn split_path_at_zeros(m: &PathModule) -> Decomposition {
    let mut out = Decomposition::new();
    let mut start = m.i as i64;
    let mut current: Vec<Letter> = Vec::new();
    for (s, &l) in m.w.iter().enumerate() {
        let k = m.i as i64 + 1 + s as i64;
        if l == Letter::Zero {
            out.push(
                Module::Path(PathModule {
                    cfg: m.cfg,
                    t: m.t.clone(),
                    i: m.cfg.weight(start),
                    w: std::mem::take(&mut current),
                }),
                1,
            );
            start = k;
        } else {
            current.push(l);
        }
    }
    out.push(
        Module::Path(PathModule {
            cfg: m.cfg,
            t: m.t.clone(),
            i: m.cfg.weight(start),
            w: current,
        }),
        1,
    );
    out
}

/// Complete decomposition of a cycle module into indecomposables.
pub fn split_cycle(m: &CycleModule) -> Result<Decomposition> {
    let cfg = m.cfg;
    let p = cfg.p() as usize;
    let mut out = Decomposition::new();
    if let Some(qpos) = m.w.iter().position(|&l| l == Letter::Zero) {
        let q = qpos + 1;
        let mut w2: Vec<Letter> = m.w[q..].to_vec();
        w2.extend_from_slice(&m.w[..q - 1]);
        let path = PathModule {
            cfg,
            t: m.t.clone(),
            i: cfg.weight(q as i64),
            w: w2,
        };
        out.extend(&split_path_at_zeros(&path), m.d());
        return Ok(out);
    }
    let r = m.r();
    let r0 = primitive_period(&cfg, &m.w)?;
    let e = r / r0;
    let w0 = m.w[..r0 * p].to_vec();
    for (lambda, a) in m.f.blocks() {
        if e == 1 {
            out.push(
                Module::Cycle(CycleModule {
                    cfg,
                    t: m.t.clone(),
                    w: m.w.clone(),
                    f: JordanType::single(lambda.clone(), *a),
                }),
                1,
            );
            continue;
        }
        // x^e - lambda must split into distinct linear factors
        let mut coeffs = vec![CycloScalar::zero(cfg.conductor()); e + 1];
        coeffs[0] = -lambda;
        coeffs[e] = CycloScalar::one(cfg.conductor());
        let f = Poly::new(coeffs, cfg.conductor());
        let roots = roots_in_field(&f);
        if roots.len() < e {
            let mut rest = f.clone();
            for rt in &roots {
                rest = rest.divrem(&Poly::linear(rt)).0;
            }
            return Err(GwaError::NonSplitSpectrum {
                factor: rest.to_string(),
                conductor: cfg.conductor(),
            });
        }
        for alpha in roots {
            out.push(
                Module::Cycle(CycleModule {
                    cfg,
                    t: m.t.clone(),
                    w: w0.clone(),
                    f: JordanType::single(alpha, *a),
                }),
                1,
            );
        }
    }
    Ok(out)
}

/// Decomposes any module into indecomposables.
pub fn decompose(m: &Module) -> Result<Decomposition> {
    match m {
        Module::Cycle(c) => split_cycle(c),
        Module::Path(pm) => Ok(split_path_at_zeros(pm)),
    }
}

/// Like [`decompose`], but a Jordan block whose splitting needs eigenvalue
/// roots outside the field is kept as a single summand.
pub fn decompose_lenient(m: &Module) -> Result<Decomposition> {
    match m {
        Module::Cycle(c) => split_cycle_lenient(c),
        Module::Path(pm) => Ok(split_path_at_zeros(pm)),
    }
}

pub fn split_cycle_lenient(c: &CycleModule) -> Result<Decomposition> {
    match split_cycle(c) {
        Err(GwaError::NonSplitSpectrum { .. }) => {
            let mut out = Decomposition::new();
            for block in c.f.blocks() {
                let one = CycleModule {
                    f: JordanType::new(vec![block.clone()]),
                    ..c.clone()
                };
                match split_cycle(&one) {
                    Ok(d) => out.extend(&d, 1),
                    Err(GwaError::NonSplitSpectrum { .. }) => out.push(Module::Cycle(one), 1),
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        }
        other => other,
    }
}

pub fn is_indecomposable(m: &Module) -> bool {
    match m {
        Module::Path(pm) => !pm.has_zero(),
        Module::Cycle(c) => {
            !c.has_zero() && c.f.is_single_block() && primitive_period(&c.cfg, &c.w).map_or(false, |r0| r0 == c.r())
        }
    }
}

pub fn is_simple(m: &Module) -> bool {
    match m {
        Module::Path(pm) => pm.w.iter().all(|&l| l == Letter::One),
        Module::Cycle(c) => {
            c.r() == 1
                && c.f.is_single_block()
                && c.f.blocks()[0].1 == 1
                && (c.w.iter().all(|&l| l != Letter::Y && l != Letter::Zero)
                    || c.w.iter().all(|&l| l != Letter::X && l != Letter::Zero))
        }
    }
}

fn simple_segment(cfg: &OrbitConfig, t: &TParam, a: i64, b: i64) -> Module {
    Module::Path(PathModule {
        cfg: *cfg,
        t: t.clone(),
        i: cfg.weight(a),
        w: vec![Letter::One; (b - a - 1) as usize],
    })
}

/// Composition factors as a multiset of simple modules.
pub fn composition_factors(m: &Module) -> Result<Decomposition> {
    let mut out = Decomposition::new();
    if m.has_zero() {
        for (s, k) in decompose(m)?.iter() {
            out.extend(&composition_factors(s)?, k);
        }
        return Ok(out);
    }
    match m {
        Module::Path(pm) => {
            let mut a = pm.i as i64;
            for (s, &l) in pm.w.iter().enumerate() {
                let k = pm.i as i64 + 1 + s as i64;
                if l.is_directional() {
                    out.push(simple_segment(&pm.cfg, &pm.t, a, k), 1);
                    a = k;
                }
            }
            out.push(simple_segment(&pm.cfg, &pm.t, a, pm.end()), 1);
        }
        Module::Cycle(c) if c.w.contains(&Letter::X) && c.w.contains(&Letter::Y) => {
            out.extend(&cycle_factors(c), 1);
        }
        Module::Cycle(c) => {
            let parts = split_cycle(c)?;
            for (s, k) in parts.iter() {
                let Module::Cycle(sc) = s else {
                    unreachable!("zero-free cycles split into cycles")
                };
                out.extend(&cycle_factors(sc), k);
            }
        }
    }
    Ok(out)
}

fn cycle_factors(c: &CycleModule) -> Decomposition {
    let mut out = Decomposition::new();
    let has_x = c.w.contains(&Letter::X);
    let has_y = c.w.contains(&Letter::Y);
    if has_x && has_y {
        let n = c.w.len() as i64;
        let dirs: Vec<i64> = (1..=n).filter(|&k| c.w[(k - 1) as usize].is_directional()).collect();
        for (idx, &a) in dirs.iter().enumerate() {
            let b = if idx + 1 < dirs.len() {
                dirs[idx + 1]
            } else {
                dirs[0] + n
            };
            out.push(simple_segment(&c.cfg, &c.t, a, b), c.d());
        }
        return out;
    }
    for (lambda, a) in c.f.blocks() {
        out.push(
            Module::Cycle(CycleModule {
                cfg: c.cfg,
                t: c.t.clone(),
                w: c.w.clone(),
                f: JordanType::single(lambda.clone(), 1),
            }),
            *a,
        );
    }
    out
}

/// Isomorphism of modules, compared through their decompositions.
pub fn is_isomorphic(m1: &Module, m2: &Module) -> Result<bool> {
    decompositions_isomorphic(&Decomposition::single(m1.clone()), &Decomposition::single(m2.clone()))
}

/// Monodromy of `V(u^e, F)` seen as a cycle on the primitive word `u`: the
/// block matrix sending copy `j` to copy `j + 1` and the last copy to the
/// first through `F`.
fn primitive_monodromy(f: &Matrix, e: usize) -> Matrix {
    let n = f.conductor();
    let d = f.rows();
    let mut m = Matrix::zeros(e * d, e * d, n);
    for j in 0..e - 1 {
        for s in 0..d {
            m.set((j + 1) * d + s, j * d + s, CycloScalar::one(n));
        }
    }
    for a in 0..d {
        for b in 0..d {
            m.set(a, (e - 1) * d + b, f.get(a, b).clone());
        }
    }
    m
}

type CycleBuckets = BTreeMap<(TParam, Vec<Letter>), Vec<Matrix>>;

/// Isomorphism invariants of a direct sum: path summands with
/// multiplicities, and for each canonical primitive cycle word the
/// monodromies of the cycle summands living on it. Monodromies are kept as
/// matrices, so no eigenvalues need to exist in the field.
#[derive(Clone, Debug, Default)]
pub struct IsoData {
    paths: BTreeMap<Module, usize>,
    cycles: CycleBuckets,
}

impl IsoData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of(d: &Decomposition) -> Result<Self> {
        let mut out = Self::new();
        for (m, k) in d.iter() {
            for (s, j) in decompose_lenient(m)?.iter() {
                match s {
                    Module::Path(_) => out.push_path(s.clone(), k * j),
                    Module::Cycle(c) => {
                        let r0 = primitive_period(&c.cfg, &c.w)?;
                        let u = c.w[..r0 * c.cfg.p() as usize].to_vec();
                        let m = primitive_monodromy(&c.f.to_matrix(c.cfg.conductor()), c.r() / r0);
                        for _ in 0..k * j {
                            out.push_cycle(&c.cfg, &c.t, &u, m.clone())?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn push_path(&mut self, m: Module, mult: usize) {
        if mult > 0 {
            *self.paths.entry(m.canonical()).or_insert(0) += mult;
        }
    }

    /// Adds a cycle on the primitive word `u` whose monodromy, read from the
    /// start of `u`, is `mono`. Rotating the word conjugates the monodromy,
    /// so the canonical rotation serves as key.
    pub fn push_cycle(&mut self, cfg: &OrbitConfig, t: &TParam, u: &[Letter], mono: Matrix) -> Result<()> {
        let (u, _) = canonical_shift(cfg, u)?;
        self.cycles.entry((t.clone(), u)).or_default().push(mono);
        Ok(())
    }

    pub fn isomorphic(&self, other: &IsoData) -> bool {
        if self.paths != other.paths || self.cycles.len() != other.cycles.len() {
            return false;
        }
        for (key, ma) in &self.cycles {
            let Some(mb) = other.cycles.get(key) else {
                return false;
            };
            let n = ma[0].conductor();
            if !matrices_similar(&Matrix::block_diag(ma, n), &Matrix::block_diag(mb, n)) {
                return false;
            }
        }
        true
    }
}

/// Dimension of `{X : A X = X B}`.
fn intertwiner_dim(a: &Matrix, b: &Matrix) -> usize {
    let n = a.conductor();
    let op = Matrix::identity(b.rows(), n)
        .kron(a)
        .sub(&b.transpose().kron(&Matrix::identity(a.rows(), n)));
    op.cols() - op.rank()
}

/// Similarity over the coefficient field, by comparing dimensions of
/// intertwiner spaces.
pub fn matrices_similar(a: &Matrix, b: &Matrix) -> bool {
    if a.rows() != b.rows() || a.charpoly() != b.charpoly() {
        return false;
    }
    if a == b {
        return true;
    }
    let ab = intertwiner_dim(a, b);
    ab == intertwiner_dim(a, a) && ab == intertwiner_dim(b, b)
}

/// Isomorphism of direct sums. Cycle summands are compared on their
/// primitive words through similarity of monodromies, so summands that
/// cannot be split over the field are handled exactly.
pub fn decompositions_isomorphic(a: &Decomposition, b: &Decomposition) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    Ok(IsoData::of(a)?.isomorphic(&IsoData::of(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::parse_letters;

    fn lw(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    fn path(p: u32, t: &str, i: u32, w: &str) -> PathModule {
        PathModule::new(OrbitConfig::with_p(p), TParam::parse(t, p).unwrap(), i, lw(w)).unwrap()
    }

    #[test]
    fn generator_modules_validate() {
        path(3, "0:1", 0, "11");
        let c3 = OrbitConfig::with_p(3);
        let xi = c3.q();
        CycleModule::with_eigenvalue(c3, TParam::one(3), lw("111"), xi).unwrap();
        let bad = CycleModule::with_eigenvalue(c3, TParam::single(3, 0, 1), lw("111"), c3.scalar(1));
        assert!(matches!(bad, Err(GwaError::InvalidWord(_))));
    }

    #[test]
    fn bad_break_index() {
        let c3 = OrbitConfig::with_p(3);
        let r = PathModule::new(c3, TParam::parse("0:1", 3).unwrap(), 1, lw("1"));
        assert!(matches!(r, Err(GwaError::InvalidBreakIndex(_))));
    }

    #[test]
    fn dimension_vectors() {
        let m = Module::Path(path(3, "0:1,2:1", 2, "x1x"));
        assert_eq!(dimension_vector(&m), vec![2, 1, 1]);
        let c2 = OrbitConfig::with_p(2);
        let c = CycleModule::new(
            c2,
            TParam::single(2, 0, 1),
            lw("1x1y"),
            JordanType::single(c2.scalar(1), 3),
        )
        .unwrap();
        assert_eq!(dimension_vector(&Module::Cycle(c)), vec![6, 6]);
    }

    #[test]
    fn path_split_at_zeros() {
        let m = path(3, "1:1,2:1", 2, "1yx10x1");
        let d = split_path_at_zeros(&m);
        let mut e = Decomposition::new();
        e.push(Module::Path(path(3, "1:1,2:1", 2, "1yx1")), 1);
        e.push(Module::Path(path(3, "1:1,2:1", 1, "x1")), 1);
        assert_eq!(d, e);
    }

    #[test]
    fn single_zero_letter() {
        let m = path(2, "0:1,1:1", 0, "0");
        let d = split_path_at_zeros(&m);
        let mut e = Decomposition::new();
        e.push(Module::Path(path(2, "0:1,1:1", 0, "")), 1);
        e.push(Module::Path(path(2, "0:1,1:1", 1, "")), 1);
        assert_eq!(d, e);
    }

    #[test]
    fn cycle_with_zero_becomes_paths() {
        let c2 = OrbitConfig::with_p(2);
        let t = TParam::parse("0:2", 2).unwrap();
        let c = CycleModule::new(c2, t.clone(), lw("10"), JordanType::single(c2.scalar(3), 2)).unwrap();
        let d = split_cycle(&c).unwrap();
        let mut e = Decomposition::new();
        e.push(Module::Path(PathModule::new(c2, t, 0, lw("1")).unwrap()), 2);
        assert_eq!(d, e);
    }

    #[test]
    fn breakless_jordan_split() {
        let c2 = OrbitConfig::with_p(2);
        let f = JordanType::from_poly(&Poly::from_ints(&[-1, 0, 1], 2)).unwrap();
        let c = CycleModule::new(c2, TParam::one(2), lw("11"), f).unwrap();
        let d = split_cycle(&c).unwrap();
        assert_eq!(d.count(), 2);
        for (m, _) in d.iter() {
            assert!(is_indecomposable(m));
        }
    }

    #[test]
    fn periodic_word_splits_by_roots() {
        let c2 = OrbitConfig::with_p(2);
        let t = TParam::single(2, 0, 1);
        let c = CycleModule::new(c2, t.clone(), lw("1x1x"), JordanType::single(c2.scalar(1), 1)).unwrap();
        assert!(!is_indecomposable(&Module::Cycle(c.clone())));
        let d = split_cycle(&c).unwrap();
        let mut e = Decomposition::new();
        e.push(
            Module::Cycle(CycleModule::with_eigenvalue(c2, t.clone(), lw("1x"), c2.scalar(1)).unwrap()),
            1,
        );
        e.push(
            Module::Cycle(CycleModule::with_eigenvalue(c2, t, lw("1x"), c2.scalar(-1)).unwrap()),
            1,
        );
        assert_eq!(d, e);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&Module::Path(path(3, "0:1", 0, "11"))));
        let c3 = OrbitConfig::with_p(3);
        let c = CycleModule::new(c3, TParam::one(3), lw("111"), JordanType::single(c3.scalar(2), 2)).unwrap();
        let m = Module::Cycle(c);
        assert!(is_indecomposable(&m));
        assert!(!is_simple(&m));
    }

    #[test]
    fn composition_factors_of_mixed_path() {
        let m = Module::Path(path(3, "0:1,1:1,2:2", 2, "xyx"));
        let f = composition_factors(&m).unwrap();
        assert_eq!(f.count(), 4);
        assert_eq!(f.dim(), m.dim());
        for (s, _) in f.iter() {
            assert!(is_simple(s));
        }
    }

    #[test]
    fn rotated_cycles_are_isomorphic() {
        let c2 = OrbitConfig::with_p(2);
        let t = TParam::single(2, 0, 1);
        let f = JordanType::single(c2.scalar(5), 1);
        let a = Module::Cycle(CycleModule::new(c2, t.clone(), lw("1x1y"), f.clone()).unwrap());
        let b = Module::Cycle(CycleModule::new(c2, t, lw("1y1x"), f).unwrap());
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(is_isomorphic(&a, &a).unwrap());
        let p1 = Module::Path(path(3, "0:1,2:1", 0, "1x"));
        let p2 = Module::Path(path(3, "0:1,2:1", 2, ""));
        assert!(!is_isomorphic(&p1, &p2).unwrap());
    }

    #[test]
    fn isomorphism_without_splitting() {
        let c = OrbitConfig::new(2, 2).unwrap();
        let cyc = |w: &str, xi: i64| {
            Module::Cycle(CycleModule::with_eigenvalue(c, TParam::one(2), lw(w), c.scalar(xi)).unwrap())
        };
        let single = |m: Module| Decomposition::single(m);
        assert!(decompose(&cyc("1111", -1)).is_err());
        let mut parts = Decomposition::new();
        parts.push(cyc("11", 1), 1);
        parts.push(cyc("11", -1), 1);
        parts.push(cyc("1111", -1), 1);
        assert!(decompositions_isomorphic(&single(cyc("11111111", 1)), &parts).unwrap());
        let mut twice = Decomposition::new();
        twice.push(cyc("1111", -1), 2);
        assert!(!decompositions_isomorphic(&single(cyc("11111111", 1)), &twice).unwrap());
        assert!(!decompositions_isomorphic(&single(cyc("11111111", -1)), &twice).unwrap());
        assert!(is_isomorphic(&cyc("1111", -1), &cyc("1111", -1)).unwrap());
    }
}
