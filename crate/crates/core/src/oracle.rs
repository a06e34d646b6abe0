//! Explicit matrix realizations of weight modules, used as an independent
//! check on every symbolic computation.
//!
//! A module is stored as weight-space dimensions together with the matrices
//! of `X: V_i -> V_{i+1}` and `Y: V_i -> V_{i-1}`. Decomposition works on
//! the realization alone: basis vectors are grouped into blocks until each
//! block talks to at most one block on either side, then paths and cycles of
//! blocks are read off and normalized.

use crate::error::{GwaError, Result};
use crate::modules::{CycleModule, Decomposition, IsoData, Module, PathModule};
use crate::orbit::{Letter, OrbitConfig, TParam};
use crate::scalars::{jordan_decompose, roots_in_field, CycloScalar, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitModule {
    pub cfg: OrbitConfig,
    pub t: TParam,
    pub dims: Vec<usize>,
    /// `x[i]` has shape `dims[i+1] x dims[i]`.
    pub x: Vec<Matrix>,
    /// `y[i]` has shape `dims[i-1] x dims[i]`.
    pub y: Vec<Matrix>,
}

impl ExplicitModule {
    pub fn p(&self) -> usize {
        self.dims.len()
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.p()
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.p() - 1) % self.p()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Checks `YX = t` and `XY = sigma(t)` on every weight space.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.cfg.conductor();
        for i in 0..self.p() {
            let yx = self.y[self.next(i)].mul(&self.x[i]);
            let expect = Matrix::scalar(self.dims[i], &self.t.eval_at(&self.cfg, i as i64));
            if yx != expect {
                return Err(GwaError::UnsupportedShape(format!("YX differs from t on weight {}", i)));
            }
            let xy = self.x[self.prev(i)].mul(&self.y[i]);
            let expect = Matrix::scalar(self.dims[i], &self.t.eval_at(&self.cfg, i as i64 - 1));
            if xy != expect {
                return Err(GwaError::UnsupportedShape(format!(
                    "XY differs from sigma(t) on weight {}",
                    i
                )));
            }
            let _ = n;
        }
        Ok(())
    }
}

/// Basis bookkeeping: each basis vector has a weight and an index inside
/// its weight space.
struct BasisBuilder {
    p: usize,
    dims: Vec<usize>,
}

impl BasisBuilder {
    fn new(p: usize) -> Self {
        BasisBuilder { p, dims: vec![0; p] }
    }

    fn add(&mut self, weight: usize) -> (usize, usize) {
        let idx = self.dims[weight];
        self.dims[weight] += 1;
        (weight, idx)
    }

    fn zero_maps(&self, n: u32) -> (Vec<Matrix>, Vec<Matrix>) {
        let p = self.p;
        let x = (0..p)
            .map(|i| Matrix::zeros(self.dims[(i + 1) % p], self.dims[i], n))
            .collect();
        let y = (0..p)
            .map(|i| Matrix::zeros(self.dims[(i + p - 1) % p], self.dims[i], n))
            .collect();
        (x, y)
    }
}

/// Matrix realization transcribing the action formulas of the two families.
pub fn realize(m: &Module) -> ExplicitModule {
    let e = match m {
        Module::Cycle(c) => realize_cycle(c),
        Module::Path(pm) => realize_path(pm),
    };
    e.check_relations()
        .expect("realization satisfies the defining relations");
    e
}

fn realize_cycle(c: &CycleModule) -> ExplicitModule {
    let cfg = c.cfg;
    let n = cfg.conductor();
    let p = cfg.p() as usize;
    let len = c.w.len();
    let d = c.d();
    let f = c.f.to_matrix(n);
    let finv = f.inverse().expect("invertible monodromy");
    let mut bb = BasisBuilder::new(p);
    // idx[k-1][s] for basis vector e_{k,s}
    let idx: Vec<Vec<(usize, usize)>> = (1..=len).map(|k| (0..d).map(|_| bb.add(k % p)).collect()).collect();
    let (mut x, mut y) = bb.zero_maps(n);
    for k in 1..=len {
        let wk = c.w[k - 1];
        let coef = match wk {
            Letter::One => Some(c.t.eval_at(&cfg, k as i64)),
            Letter::X => Some(cfg.scalar(1)),
            _ => None,
        };
        if let Some(coef) = coef {
            for s in 0..d {
                let (wt, col) = idx[k - 1][s];
                if k != len {
                    let (_, row) = idx[k][s];
                    x[wt].set(row, col, coef.clone());
                } else {
                    for s2 in 0..d {
                        let v = f.get(s2, s);
                        if !v.is_zero() {
                            let (_, row) = idx[0][s2];
                            x[wt].set(row, col, &coef * v);
                        }
                    }
                }
            }
        }
        // Y e_{k+1} = e_k when w_k is 1 or y; Y e_1 = F^{-1} e_{rp}
        if matches!(wk, Letter::One | Letter::Y) {
            let kn = k % len + 1;
            for s in 0..d {
                let (wt, col) = idx[kn - 1][s];
                if kn != 1 {
                    let (_, row) = idx[k - 1][s];
                    y[wt].set(row, col, cfg.scalar(1));
                } else {
                    for s2 in 0..d {
                        let v = finv.get(s2, s);
                        if !v.is_zero() {
                            let (_, row) = idx[len - 1][s2];
                            y[wt].set(row, col, v.clone());
                        }
                    }
                }
            }
        }
    }
    ExplicitModule {
        cfg,
        t: c.t.clone(),
        dims: bb.dims,
        x,
        y,
    }
}

fn realize_path(pm: &PathModule) -> ExplicitModule {
    let cfg = pm.cfg;
    let n = cfg.conductor();
    let p = cfg.p() as usize;
    let start = pm.i as i64 + 1;
    let end = pm.end();
    let mut bb = BasisBuilder::new(p);
    let idx: Vec<(usize, usize)> = (start..=end).map(|k| bb.add(cfg.weight(k) as usize)).collect();
    let (mut x, mut y) = bb.zero_maps(n);
    for k in start..end {
        let wk = pm.letter(k);
        let (wt, col) = idx[(k - start) as usize];
        let (wt2, row2) = idx[(k - start + 1) as usize];
        match wk {
            Letter::One => x[wt].set(row2, col, pm.t.eval_at(&cfg, k)),
            Letter::X => x[wt].set(row2, col, cfg.scalar(1)),
            _ => {}
        }
        if matches!(wk, Letter::One | Letter::Y) {
            y[wt2].set(col, row2, cfg.scalar(1));
        }
    }
    ExplicitModule {
        cfg,
        t: pm.t.clone(),
        dims: bb.dims,
        x,
        y,
    }
}

/// Weightwise Kronecker product; the parameter becomes `t t'`.
pub fn kronecker_tensor(a: &ExplicitModule, b: &ExplicitModule) -> Result<ExplicitModule> {
    a.cfg.check_same(&b.cfg)?;
    let p = a.p();
    Ok(ExplicitModule {
        cfg: a.cfg,
        t: a.t.mul(&b.t),
        dims: (0..p).map(|i| a.dims[i] * b.dims[i]).collect(),
        x: (0..p).map(|i| a.x[i].kron(&b.x[i])).collect(),
        y: (0..p).map(|i| a.y[i].kron(&b.y[i])).collect(),
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = a;
        while self.parent[c] != r {
            let nx = self.parent[c];
            self.parent[c] = r;
            c = nx;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Blocks of each weight space as sorted lists of basis indices.
fn stable_blocks(e: &ExplicitModule) -> Vec<Vec<Vec<usize>>> {
    let p = e.p();
    let mut ufs: Vec<UnionFind> = e.dims.iter().map(|&d| UnionFind::new(d)).collect();
    loop {
        let mut changed = false;
        for i in 0..p {
            let j = e.next(i);
            let (di, dj) = (e.dims[i], e.dims[j]);
            // nodes: 0..di for weight i, di..di+dj for weight j
            let mut uf = UnionFind::new(di + dj);
            for r in 0..dj {
                for c in 0..di {
                    if !e.x[i].get(r, c).is_zero() || !e.y[j].get(c, r).is_zero() {
                        let a = ufs[i].find(c);
                        let b = ufs[j].find(r);
                        uf.union(a, di + b);
                    }
                }
            }
            // merge blocks of the same side lying in one component
            let mut rep_i: Vec<Option<usize>> = vec![None; di + dj];
            for c in 0..di {
                let b = ufs[i].find(c);
                let comp = uf.find(b);
                match rep_i[comp] {
                    None => rep_i[comp] = Some(b),
                    Some(o) => {
                        if ufs[i].union(o, b) {
                            changed = true;
                        }
                    }
                }
            }
            let mut rep_j: Vec<Option<usize>> = vec![None; di + dj];
            for r in 0..dj {
                let b = ufs[j].find(r);
                let comp = uf.find(di + b);
                match rep_j[comp] {
                    None => rep_j[comp] = Some(b),
                    Some(o) => {
                        if ufs[j].union(o, b) {
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    ufs.iter_mut()
        .zip(&e.dims)
        .map(|(uf, &d)| {
            let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for v in 0..d {
                groups.entry(uf.find(v)).or_default().push(v);
            }
            groups.into_values().collect()
        })
        .collect()
}

#[derive(Clone)]
struct Edge {
    to: usize,
    label: Letter,
    x: Matrix,
    y: Matrix,
}

fn block_state(m: &Matrix) -> Result<Option<bool>> {
    if m.is_zero() {
        return Ok(Some(false));
    }
    if m.is_square() && m.rank() == m.rows() {
        return Ok(Some(true));
    }
    Ok(None)
}

/// From-scratch decomposition of a realization into indecomposables.
pub fn oracle_decompose(e: &ExplicitModule) -> Result<Decomposition> {
    let (mut out, cycles) = oracle_components(e)?;
    for (w0, mono) in cycles {
        let jt = jordan_decompose(&mono)?;
        for (lambda, a) in jt.blocks() {
            let cm = CycleModule::new(
                e.cfg,
                e.t.clone(),
                w0.clone(),
                crate::scalars::JordanType::single(lambda.clone(), *a),
            )?;
            out.push(Module::Cycle(cm), 1);
        }
    }
    Ok(out)
}

/// Isomorphism invariants read off the explicit matrices. Cycle monodromies
/// are kept whole, so this works even when their eigenvalues lie outside
/// the coefficient field.
pub fn oracle_iso_data(e: &ExplicitModule) -> Result<IsoData> {
    let (paths, cycles) = oracle_components(e)?;
    let mut out = IsoData::of(&paths)?;
    for (w0, mono) in cycles {
        out.push_cycle(&e.cfg, &e.t, &w0, mono)?;
    }
    Ok(out)
}

/// Path summands, and each cycle component as its primitive word together
/// with the monodromy along that word.
fn oracle_components(e: &ExplicitModule) -> Result<(Decomposition, Vec<(Vec<Letter>, Matrix)>)> {
    let p = e.p();
    let cfg = e.cfg;
    let blocks = stable_blocks(e);
    // global block ids
    let mut ids: Vec<(usize, usize)> = Vec::new();
    let mut base = vec![0; p];
    for i in 0..p {
        base[i] = ids.len();
        for b in 0..blocks[i].len() {
            ids.push((i, b));
        }
    }
    let nb = ids.len();
    let mut out_edge: Vec<Option<Edge>> = vec![None; nb];
    let mut has_in = vec![false; nb];
    for (gid, &(i, b)) in ids.iter().enumerate() {
        let j = e.next(i);
        let src = &blocks[i][b];
        for (c, dst) in blocks[j].iter().enumerate() {
            let xm = e.x[i].submatrix(dst, src);
            let ym = e.y[j].submatrix(src, dst);
            if xm.is_zero() && ym.is_zero() {
                continue;
            }
            let (Some(xs), Some(ys)) = (block_state(&xm)?, block_state(&ym)?) else {
                return Err(GwaError::UnsupportedShape(
                    "block map neither invertible nor zero".into(),
                ));
            };
            let label = match (xs, ys) {
                (true, true) => Letter::One,
                (true, false) => Letter::X,
                (false, true) => Letter::Y,
                (false, false) => unreachable!(),
            };
            if out_edge[gid].is_some() {
                return Err(GwaError::UnsupportedShape("block with two successors".into()));
            }
            let to = base[j] + c;
            out_edge[gid] = Some(Edge {
                to,
                label,
                x: xm,
                y: ym,
            });
            has_in[to] = true;
        }
    }
    let mut out = Decomposition::new();
    let mut seen = vec![false; nb];
    // paths start at blocks without a predecessor
    for start in 0..nb {
        if has_in[start] {
            continue;
        }
        let mut labels = Vec::new();
        let mut cur = start;
        seen[cur] = true;
        while let Some(edge) = &out_edge[cur] {
            labels.push(edge.label);
            cur = edge.to;
            seen[cur] = true;
        }
        let (w0, b0) = ids[start];
        let i = cfg.weight(w0 as i64 - 1);
        let pm = PathModule::new(cfg, e.t.clone(), i, labels)?;
        out.push(Module::Path(pm), blocks[w0][b0].len());
    }
    // remaining blocks lie on cycles
    let mut cycles = Vec::new();
    for start in 0..nb {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = out_edge[start]
            .as_ref()
            .ok_or_else(|| GwaError::UnsupportedShape("broken cycle".into()))?
            .to;
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            cur = out_edge[cur]
                .as_ref()
                .ok_or_else(|| GwaError::UnsupportedShape("broken cycle".into()))?
                .to;
        }
        // rotate so that the first block sits at weight 1 (weight 0 if p = 1)
        let target = 1 % p;
        let rot = cyc
            .iter()
            .position(|&g| ids[g].0 == target)
            .ok_or_else(|| GwaError::UnsupportedShape("cycle misses weight 1".into()))?;
        cyc.rotate_left(rot);
        cycles.push(cycle_component(e, &cyc, &out_edge)?);
    }
    Ok((out, cycles))
}

fn cycle_component(e: &ExplicitModule, cyc: &[usize], edges: &[Option<Edge>]) -> Result<(Vec<Letter>, Matrix)> {
    let cfg = e.cfg;
    let n = cfg.conductor();
    let len = cyc.len();
    let word: Vec<Letter> = cyc.iter().map(|&g| edges[g].as_ref().unwrap().label).collect();
    let p = cfg.p() as usize;
    if len % p != 0 {
        return Err(GwaError::UnsupportedShape("cycle length not a multiple of p".into()));
    }
    // primitive period of the word, in letters
    let mut l0 = len;
    for cand in (p..=len).step_by(p) {
        if len % cand == 0 && (0..len).all(|k| word[k] == word[k % cand]) {
            l0 = cand;
            break;
        }
    }
    let reps = len / l0;
    // step maps: X for x, inverse of Y for 1 and y
    let step = |k: usize| -> Matrix {
        let edge = edges[cyc[k]].as_ref().unwrap();
        match edge.label {
            Letter::X => edge.x.clone(),
            _ => edge.y.inverse().expect("invertible block"),
        }
    };
    let bd = step(0).cols();
    let mut partial = Vec::with_capacity(reps);
    for m in 0..reps {
        let mut acc = Matrix::identity(bd, n);
        for k in m * l0..(m + 1) * l0 {
            acc = step(k).mul(&acc);
        }
        partial.push(acc);
    }
    // block-cyclic monodromy on the super-block at position 0
    let mut mono = Matrix::zeros(bd * reps, bd * reps, n);
    for (m, pm) in partial.iter().enumerate() {
        let to = (m + 1) % reps;
        for r in 0..bd {
            for c in 0..bd {
                mono.set(to * bd + r, m * bd + c, pm.get(r, c).clone());
            }
        }
    }
    Ok((word[..l0].to_vec(), mono))
}

/// Subspace of each weight space, stored as column bases.
type Graded = Vec<Vec<Vec<CycloScalar>>>;

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vec<CycloScalar>], n: u32) -> Vec<CycloScalar> {
    let len = basis[0].len();
    let mut v = vec![CycloScalar::zero(n); len];
    loop {
        for b in basis {
            let c = CycloScalar::from_int(rng.gen_range(-3..=3), n);
            if c.is_zero() {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = &*vi + &(&c * bi);
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Finds one simple submodule: its spanning vectors per weight and its
/// isomorphism type.
fn find_simple(e: &ExplicitModule, rng: &mut ChaCha8Rng) -> Result<(Graded, Module)> {
    let cfg = e.cfg;
    let n = cfg.conductor();
    let p = e.p();
    let breaks = e.t.breaks();
    let mut order: Vec<u32> = breaks.clone();
    order.shuffle(rng);
    // path simples V(b, 1^s) between consecutive breaks
    for &b in &order {
        let nb = breaks
            .iter()
            .map(|&c| {
                let d = (c as i64 - b as i64).rem_euclid(p as i64);
                if d == 0 {
                    p as i64
                } else {
                    d
                }
            })
            .min()
            .unwrap();
        let s = (nb - 1) as usize;
        let w1 = (b as usize + 1) % p;
        if e.dims[w1] == 0 {
            continue;
        }
        let mut xs = Matrix::identity(e.dims[w1], n);
        let mut wt = w1;
        for _ in 0..=s {
            xs = e.x[wt].mul(&xs);
            wt = e.next(wt);
        }
        let yk = &e.y[w1];
        let mut stacked = Matrix::zeros(yk.rows() + xs.rows(), e.dims[w1], n);
        for r in 0..yk.rows() {
            for c in 0..e.dims[w1] {
                stacked.set(r, c, yk.get(r, c).clone());
            }
        }
        for r in 0..xs.rows() {
            for c in 0..e.dims[w1] {
                stacked.set(yk.rows() + r, c, xs.get(r, c).clone());
            }
        }
        let ker = stacked.nullspace();
        if ker.is_empty() {
            continue;
        }
        let v = random_combination(rng, &ker, n);
        let mut sub: Graded = vec![Vec::new(); p];
        let mut cur = v;
        let mut wt = w1;
        for _ in 0..=s {
            sub[wt].push(cur.clone());
            cur = e.x[wt].mul_vec(&cur);
            wt = e.next(wt);
        }
        let m = PathModule::new(cfg, e.t.clone(), b, vec![Letter::One; s])?;
        return Ok((sub, Module::Path(m)));
    }
    // loop simples: eigenvectors of X^p, then of Y^p, on weight 0
    for use_x in [true, false] {
        if e.dims[0] == 0 {
            break;
        }
        let mut loop_m = Matrix::identity(e.dims[0], n);
        let mut wt = 0usize;
        for _ in 0..p {
            if use_x {
                loop_m = e.x[wt].mul(&loop_m);
                wt = e.next(wt);
            } else {
                loop_m = e.y[wt].mul(&loop_m);
                wt = e.prev(wt);
            }
        }
        let cp = loop_m.charpoly();
        let mut roots: Vec<CycloScalar> = roots_in_field(&cp).into_iter().filter(|r| !r.is_zero()).collect();
        if roots.is_empty() {
            continue;
        }
        roots.shuffle(rng);
        let mu = roots[0].clone();
        let ker = loop_m.sub(&Matrix::scalar(e.dims[0], &mu)).nullspace();
        let v = random_combination(rng, &ker, n);
        let mut sub: Graded = vec![Vec::new(); p];
        let mut cur = v;
        let mut wt = 0usize;
        for _ in 0..p {
            sub[wt].push(cur.clone());
            if use_x {
                cur = e.x[wt].mul_vec(&cur);
                wt = e.next(wt);
            } else {
                cur = e.y[wt].mul_vec(&cur);
                wt = e.prev(wt);
            }
        }
        let word: Vec<Letter> = (1..=p)
            .map(|k| {
                if e.t.is_break(k as i64) {
                    if use_x {
                        Letter::X
                    } else {
                        Letter::Y
                    }
                } else {
                    Letter::One
                }
            })
            .collect();
        let lambda = if use_x {
            let mut norm = cfg.scalar(1);
            for k in 0..p {
                if !e.t.is_break(k as i64) {
                    norm = &norm * &e.t.eval_at(&cfg, k as i64);
                }
            }
            &mu / &norm
        } else {
            mu.inv().expect("nonzero eigenvalue")
        };
        let m = CycleModule::with_eigenvalue(cfg, e.t.clone(), word, lambda)?;
        return Ok((sub, Module::Cycle(m)));
    }
    Err(GwaError::NonSplitSpectrum {
        factor: "no simple submodule with eigenvalues in the field".into(),
        conductor: n,
    })
}

/// Quotient of `e` by the graded subspace `sub`.
fn quotient(e: &ExplicitModule, sub: &Graded) -> ExplicitModule {
    let p = e.p();
    let n = e.cfg.conductor();
    // basis [S | C] per weight, C chosen among unit vectors
    let mut comp: Vec<Vec<usize>> = Vec::with_capacity(p);
    let mut change: Vec<Matrix> = Vec::with_capacity(p);
    for i in 0..p {
        let d = e.dims[i];
        let mut cols: Vec<Vec<CycloScalar>> = sub[i].clone();
        let k = cols.len();
        for u in 0..d {
            let mut v = vec![CycloScalar::zero(n); d];
            v[u] = CycloScalar::one(n);
            cols.push(v);
        }
        let mat = Matrix::from_columns(&cols, d, n);
        let indep = mat.independent_columns();
        let units: Vec<usize> = indep.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
        let chosen: Vec<Vec<CycloScalar>> = indep.iter().map(|&c| cols[c].clone()).collect();
        let basis = Matrix::from_columns(&chosen, d, n);
        change.push(basis.inverse().expect("basis"));
        comp.push(units);
    }
    let dims: Vec<usize> = comp.iter().map(|c| c.len()).collect();
    let induced = |maps: &Vec<Matrix>, i: usize, j: usize| -> Matrix {
        let k_j = sub[j].len();
        let mut out = Matrix::zeros(dims[j], dims[i], n);
        for (col, &u) in comp[i].iter().enumerate() {
            let img = maps[i].column(u);
            let coords = change[j].mul_vec(&img);
            for r in 0..dims[j] {
                out.set(r, col, coords[k_j + r].clone());
            }
        }
        out
    };
    let x = (0..p).map(|i| induced(&e.x, i, (i + 1) % p)).collect();
    let y = (0..p).map(|i| induced(&e.y, i, (i + p - 1) % p)).collect();
    ExplicitModule {
        cfg: e.cfg,
        t: e.t.clone(),
        dims,
        x,
        y,
    }
}

/// Composition factors found by peeling off simple submodules one at a
/// time; the random choices are driven by `seed`.
pub fn oracle_composition_series(e: &ExplicitModule, seed: u64) -> Result<Decomposition> {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut cur = e.clone();
    let mut out = Decomposition::new();
    while cur.dim() > 0 {
        let (sub, simple) = find_simple(&cur, &mut rng)?;
        out.push(simple, 1);
        cur = quotient(&cur, &sub);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{composition_factors, decompose};
    use crate::orbit::parse_letters;
    use crate::scalars::JordanType;

    fn lw(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    fn path(p: u32, t: &str, i: u32, w: &str) -> Module {
        Module::Path(PathModule::new(OrbitConfig::with_p(p), TParam::parse(t, p).unwrap(), i, lw(w)).unwrap())
    }

    #[test]
    fn empty_path_is_one_dimensional() {
        let e = realize(&path(3, "0:1,1:1", 0, ""));
        assert_eq!(e.dims, vec![0, 1, 0]);
        assert!(e.x.iter().all(|m| m.is_zero()));
        assert!(e.y.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn unit_cycle_realization() {
        let cfg = OrbitConfig::with_p(3);
        let xi = cfg.q();
        let m = Module::Cycle(CycleModule::with_eigenvalue(cfg, TParam::one(3), lw("111"), xi.clone()).unwrap());
        let e = realize(&m);
        assert_eq!(e.dims, vec![1, 1, 1]);
        assert_eq!(e.x[0].get(0, 0), &xi);
        assert!(e.x[1].get(0, 0).is_one());
    }

    #[test]
    fn six_dimensional_cycle() {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::parse("1:1,2:1", 3).unwrap();
        let m = Module::Cycle(CycleModule::with_eigenvalue(cfg, t, lw("yx1xx1"), cfg.scalar(2)).unwrap());
        let e = realize(&m);
        assert_eq!(e.dim(), 6);
        assert_eq!(oracle_decompose(&e).unwrap(), decompose(&m).unwrap());
    }

    #[test]
    fn round_trips() {
        let cfg = OrbitConfig::with_p(2);
        let t = TParam::single(2, 0, 1);
        let cases = vec![
            path(3, "0:1,2:1", 2, "x1x"),
            path(3, "1:1,2:1", 2, "1yx10x1"),
            Module::Cycle(CycleModule::new(cfg, t.clone(), lw("1x1x"), JordanType::single(cfg.scalar(4), 2)).unwrap()),
            Module::Cycle(CycleModule::new(cfg, t.clone(), lw("1x1y"), JordanType::single(cfg.scalar(-3), 2)).unwrap()),
            Module::Cycle(
                CycleModule::new(cfg, TParam::one(2), lw("1111"), JordanType::single(cfg.scalar(1), 1)).unwrap(),
            ),
        ];
        for m in cases {
            let e = realize(&m);
            assert_eq!(oracle_decompose(&e).unwrap(), decompose(&m).unwrap(), "{}", m);
        }
    }

    #[test]
    fn kronecker_multiplies_dimensions() {
        let a = realize(&path(3, "0:1,2:1", 2, "x1x"));
        let b = realize(&path(3, "1:1,2:1", 2, "1yx10x1"));
        let k = kronecker_tensor(&a, &b).unwrap();
        assert_eq!(k.dims, vec![6, 3, 2]);
        k.check_relations().unwrap();
    }

    #[test]
    fn composition_series_of_mixed_cycle() {
        let cfg = OrbitConfig::with_p(2);
        let t = TParam::single(2, 0, 1);
        let m = Module::Cycle(CycleModule::new(cfg, t, lw("1x1y"), JordanType::single(cfg.scalar(3), 2)).unwrap());
        let e = realize(&m);
        let expect = composition_factors(&m).unwrap();
        for seed in 0..4 {
            assert_eq!(oracle_composition_series(&e, seed).unwrap(), expect);
        }
    }

    #[test]
    fn composition_series_of_loops() {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::single(3, 1, 1);
        let m = Module::Cycle(CycleModule::new(cfg, t, lw("x11"), JordanType::single(cfg.q(), 2)).unwrap());
        let e = realize(&m);
        assert_eq!(
            oracle_composition_series(&e, 7).unwrap(),
            composition_factors(&m).unwrap()
        );
        let u = Module::Cycle(
            CycleModule::new(cfg, TParam::one(3), lw("111"), JordanType::single(cfg.scalar(5), 3)).unwrap(),
        );
        assert_eq!(
            oracle_composition_series(&realize(&u), 1).unwrap(),
            composition_factors(&u).unwrap()
        );
    }
}
