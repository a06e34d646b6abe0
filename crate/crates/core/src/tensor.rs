//! Tensor products of weight modules over the coproduct, decomposed into
//! indecomposables by explicit word combinatorics.
//!
//! Every product is described by diagonal chains of basis pairs
//! `(e_k, e'_k')` with `k = k' mod p`: along a chain the letters multiply
//! positionwise, and a closed chain picks up a scalar monodromy.

use crate::error::{GwaError, Result};
use crate::modules::{
    decompose_lenient, split_cycle_lenient, split_path_at_zeros, CycleModule, Decomposition, Module, PathModule,
};
use crate::orbit::{letter_mul, scalar_twist_product, word_shift, word_tensor, Letter, TParam};
use crate::scalars::jordan_decompose;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorResult {
    pub product_t: TParam,
    pub decomposition: Decomposition,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn require_breakless(t: &TParam) -> Result<()> {
    if t.has_breaks() {
        return Err(GwaError::PreconditionBreaks(format!(
            "parameter {} has breaks {:?}",
            t,
            t.breaks()
        )));
    }
    Ok(())
}

/// Product of two breakless cycles: `V(1^p, F) (x) V(1^p, G) = V(1^p, F (x) G)`.
pub fn tensor_cycle_cycle_nobreak(m1: &CycleModule, m2: &CycleModule) -> Result<TensorResult> {
    require_breakless(&m1.t)?;
    require_breakless(&m2.t)?;
    tensor_cycle_cycle(m1, m2)
}

/// Product of a breakless cycle `V(1^p, F)` with `V^t(w, x - 1)`, which is
/// `V^t(w, F^r)` with `|w| = r p`.
pub fn tensor_unit_cycle(m1: &CycleModule, m2: &CycleModule) -> Result<TensorResult> {
    require_breakless(&m1.t)?;
    if m1.r() != 1 || !m2.f.is_trivial() {
        return tensor_cycle_cycle(m1, m2);
    }
    let f = m1.f.power(m2.r() as u32)?;
    let t = m1.t.mul(&m2.t);
    let c = CycleModule::new(m2.cfg, t.clone(), m2.w.clone(), f)?;
    Ok(TensorResult {
        product_t: t,
        decomposition: split_cycle_lenient(&c)?,
    })
}

/// Product of two cycle modules with arbitrary eigen-data.
///
/// The `d = gcd(r, r')` closed chains start at `(e_1, e'_{1+jp})`. Walking
/// once around chain `j` gives `c_j F^{r'/d} (x) G^{r/d}` where `c_j`
/// collects the values of `t` and `t'` at positions where one letter is `1`
/// and the other is `x`. No roots of eigenvalues are needed.
pub fn tensor_cycle_cycle(m1: &CycleModule, m2: &CycleModule) -> Result<TensorResult> {
    let cfg = m1.cfg;
    cfg.check_same(&m2.cfg)?;
    let n = cfg.conductor();
    let t = m1.t.mul(&m2.t);
    let (r1, r2) = (m1.r(), m2.r());
    let d = gcd(r1, r2);
    let fm = m1.f.to_matrix(n).pow((r2 / d) as u32);
    let gm = m2.f.to_matrix(n).pow((r1 / d) as u32);
    let k = fm.kron(&gm);
    let mut out = Decomposition::new();
    for j in 0..d {
        let w2j = word_shift(&cfg, &m2.w, j as i64)?;
        let word = word_tensor(&cfg, &m1.w, &w2j)?;
        let c = &scalar_twist_product(&cfg, &m1.t, &m1.w, &w2j)? * &scalar_twist_product(&cfg, &m2.t, &w2j, &m1.w)?;
        let jt = jordan_decompose(&k.scale(&c))?;
        let summand = CycleModule::new(cfg, t.clone(), word, jt)?;
        out.extend(&split_cycle_lenient(&summand)?, 1);
    }
    Ok(TensorResult {
        product_t: t,
        decomposition: out,
    })
}

/// Product of two path modules.
///
/// With `i <= i'`, chains begin either at `e'_{i'+1}` paired with
/// `e_{i'+1+jp}` for `j < c`, or at `e_{i+1}` paired with `e'_{i+1+jp}` for
/// `1 <= j <= c' - [i = i']`.
pub fn tensor_path_path(m1: &PathModule, m2: &PathModule) -> Result<TensorResult> {
    m1.cfg.check_same(&m2.cfg)?;
    if m1.i > m2.i {
        return tensor_path_path(m2, m1);
    }
    let cfg = m1.cfg;
    let p = cfg.p() as i64;
    let t = m1.t.mul(&m2.t);
    let (i, l) = (m1.i as i64, m1.len() as i64);
    let (i2, l2) = (m2.i as i64, m2.len() as i64);
    let mut out = Decomposition::new();
    let mut emit = |start: i64, word: Vec<Letter>| -> Result<()> {
        let pm = PathModule::new(cfg, t.clone(), cfg.weight(start), word)?;
        out.extend(&split_path_at_zeros(&pm), 1);
        Ok(())
    };
    // c = #{j >= 0 : i' + 1 + jp <= i + l + 1}
    let c = if i2 <= i + l { (i + l - i2) / p + 1 } else { 0 };
    for j in 0..c {
        let len = (i + l - i2 - j * p).min(l2);
        let word = (1..=len)
            .map(|s| letter_mul(m1.letter(i2 + s + j * p), m2.letter(i2 + s)))
            .collect();
        emit(i2, word)?;
    }
    // c' = #{k in [i'+1, i'+l'+1] : k = i + 1 mod p}
    let c2 = (i2 + 1..=i2 + l2 + 1)
        .filter(|k| (k - i - 1).rem_euclid(p) == 0)
        .count() as i64;
    let delta = i64::from(m1.i == m2.i);
    for j in 1..=c2 - delta {
        let len = l.min(i2 + l2 - i - j * p);
        let word = (1..=len)
            .map(|s| letter_mul(m1.letter(i + s), m2.letter(i + s + j * p)))
            .collect();
        emit(i, word)?;
    }
    Ok(TensorResult {
        product_t: t,
        decomposition: out,
    })
}

/// Product of a path module with a cycle module: `r'` chains start at
/// `(e_{i+1}, e'_{i+1+jp})`, each repeated `dim F` times.
pub fn tensor_path_cycle(m1: &PathModule, m2: &CycleModule) -> Result<TensorResult> {
    let cfg = m1.cfg;
    cfg.check_same(&m2.cfg)?;
    let p = cfg.p() as i64;
    let t = m1.t.mul(&m2.t);
    let len2 = m2.w.len() as i64;
    let i = m1.i as i64;
    let mut out = Decomposition::new();
    for j in 0..m2.r() as i64 {
        let word = (1..=m1.len() as i64)
            .map(|s| {
                let k2 = (i + s + j * p - 1).rem_euclid(len2) as usize;
                letter_mul(m1.letter(i + s), m2.w[k2])
            })
            .collect();
        let pm = PathModule::new(cfg, t.clone(), m1.i, word)?;
        out.extend(&split_path_at_zeros(&pm), m2.d());
    }
    Ok(TensorResult {
        product_t: t,
        decomposition: out,
    })
}

/// Product of a path module with a breakless cycle: `dim` copies of the
/// path.
pub fn tensor_path_nobreak(m1: &PathModule, m2: &CycleModule) -> Result<TensorResult> {
    m1.cfg.check_same(&m2.cfg)?;
    require_breakless(&m2.t)?;
    let t = m1.t.mul(&m2.t);
    let pm = PathModule::new(m1.cfg, t.clone(), m1.i, m1.w.clone())?;
    let mut out = Decomposition::new();
    out.extend(&split_path_at_zeros(&pm), m2.d() * m2.r());
    Ok(TensorResult {
        product_t: t,
        decomposition: out,
    })
}

fn tensor_indecomposables(a: &Module, b: &Module) -> Result<TensorResult> {
    match (a, b) {
        (Module::Path(x), Module::Path(y)) => tensor_path_path(x, y),
        (Module::Path(x), Module::Cycle(c)) | (Module::Cycle(c), Module::Path(x)) => {
            if c.t.has_breaks() {
                tensor_path_cycle(x, c)
            } else {
                tensor_path_nobreak(x, c)
            }
        }
        (Module::Cycle(x), Module::Cycle(y)) => match (x.t.has_breaks(), y.t.has_breaks()) {
            (false, false) => tensor_cycle_cycle_nobreak(x, y),
            (false, true) => tensor_unit_cycle(x, y),
            (true, false) => tensor_unit_cycle(y, x),
            (true, true) => tensor_cycle_cycle(x, y),
        },
    }
}

/// Tensor product of two modules, decomposed into indecomposables. Both
/// inputs are decomposed first and the pieces are multiplied pairwise.
pub fn tensor(m1: &Module, m2: &Module) -> Result<TensorResult> {
    m1.cfg().check_same(m2.cfg())?;
    let (a, b) = (pieces(m1)?, pieces(m2)?);
    let mut out = Decomposition::new();
    for (x, kx) in &a {
        for (y, ky) in &b {
            out.extend(&tensor_indecomposables(x, y)?.decomposition, kx * ky);
        }
    }
    Ok(TensorResult {
        product_t: m1.t().mul(m2.t()),
        decomposition: out,
    })
}

/// Summands to multiply. A periodic cycle whose splitting needs roots
/// outside the field is kept whole; the chain formulas do not need it split.
fn pieces(m: &Module) -> Result<Vec<(Module, usize)>> {
    Ok(decompose_lenient(m)?.iter().map(|(x, k)| (x.clone(), k)).collect())
}

/// Bilinear extension of [`tensor`] to multisets of modules.
pub fn tensor_decompositions(a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
    let mut out = Decomposition::new();
    for (x, kx) in a.iter() {
        for (y, ky) in b.iter() {
            out.extend(&tensor(x, y)?.decomposition, kx * ky);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::dimension_vector;
    use crate::orbit::{parse_letters, OrbitConfig};
    use crate::scalars::JordanType;

    fn lw(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    fn path(p: u32, t: &str, i: u32, w: &str) -> Module {
        Module::Path(PathModule::new(OrbitConfig::with_p(p), TParam::parse(t, p).unwrap(), i, lw(w)).unwrap())
    }

    fn expected(p: u32, t: &str, items: &[(u32, &str, usize)]) -> Decomposition {
        let mut d = Decomposition::new();
        for &(i, w, k) in items {
            d.push(path(p, t, i, w), k);
        }
        d
    }

    #[test]
    fn worked_example_direct_and_presplit() {
        let a = path(3, "0:1,2:1", 2, "x1x");
        let b = path(3, "1:1,2:1", 2, "1yx10x1");
        let want = expected(3, "0:1,1:1,2:2", &[(2, "xyx", 1), (2, "", 1), (2, "x", 2), (1, "x", 1)]);
        let r = tensor(&a, &b).unwrap();
        assert_eq!(r.decomposition, want);
        assert_eq!(r.product_t, TParam::parse("0:1,1:1,2:2", 3).unwrap());
        let b1 = path(3, "1:1,2:1", 2, "1yx1");
        let b2 = path(3, "1:1,2:1", 1, "x1");
        let mut pre = tensor(&a, &b1).unwrap().decomposition;
        pre.extend(&tensor(&a, &b2).unwrap().decomposition, 1);
        assert_eq!(pre, want);
    }

    #[test]
    fn one_dimensional_paths() {
        let a = path(3, "1:1,2:1", 1, "");
        assert_eq!(
            tensor(&a, &a).unwrap().decomposition,
            expected(3, "1:2,2:2", &[(1, "", 1)])
        );
    }

    #[test]
    fn jordan_blocks_multiply() {
        let cfg = OrbitConfig::with_p(2);
        let one = cfg.scalar(1);
        let u12 = CycleModule::new(cfg, TParam::one(2), lw("11"), JordanType::single(one.clone(), 2)).unwrap();
        let r = tensor_cycle_cycle_nobreak(&u12, &u12).unwrap();
        let mut want = Decomposition::new();
        for a in [3, 1] {
            want.push(
                Module::Cycle(
                    CycleModule::new(cfg, TParam::one(2), lw("11"), JordanType::single(one.clone(), a)).unwrap(),
                ),
                1,
            );
        }
        assert_eq!(r.decomposition, want);
    }

    #[test]
    fn unit_cycle_raises_to_power() {
        let cfg = OrbitConfig::with_p(2);
        let xi = CycloScalar::from_int(3, 2);
        let u = CycleModule::with_eigenvalue(cfg, TParam::one(2), lw("11"), xi.clone()).unwrap();
        let t = TParam::single(2, 0, 1);
        let m = CycleModule::new(cfg, t.clone(), lw("1x1y"), JordanType::trivial(2)).unwrap();
        let r = tensor_unit_cycle(&u, &m).unwrap();
        let want = CycleModule::with_eigenvalue(cfg, t, lw("1x1y"), CycloScalar::from_int(9, 2)).unwrap();
        assert_eq!(r.decomposition, Decomposition::single(Module::Cycle(want)));
        let generic = tensor_cycle_cycle(&u, &m).unwrap();
        assert_eq!(generic, r);
    }

    #[test]
    fn fake_cycle_becomes_path() {
        let cfg = OrbitConfig::with_p(2);
        let t = TParam::single(2, 0, 1);
        let a = CycleModule::new(cfg, t.clone(), lw("1x"), JordanType::trivial(2)).unwrap();
        let b = CycleModule::new(cfg, t, lw("1y"), JordanType::trivial(2)).unwrap();
        let r = tensor_cycle_cycle(&a, &b).unwrap();
        assert_eq!(r.decomposition, expected(2, "0:2", &[(0, "1", 1)]));
    }

    #[test]
    fn squares_of_z_minus_one() {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::single(3, 0, 1);
        let a = CycleModule::new(cfg, t.clone(), lw("11x"), JordanType::trivial(3)).unwrap();
        let r = tensor_cycle_cycle(&a, &a).unwrap();
        let want = CycleModule::new(cfg, t.mul(&t), lw("11x"), JordanType::trivial(3)).unwrap();
        assert_eq!(r.decomposition, Decomposition::single(Module::Cycle(want)));
    }

    #[test]
    fn path_against_cycle() {
        let cfg = OrbitConfig::with_p(2);
        let t = TParam::single(2, 0, 1);
        let pm = path(2, "0:1", 0, "1");
        let c = Module::Cycle(CycleModule::new(cfg, t, lw("1x"), JordanType::trivial(2)).unwrap());
        let r = tensor(&pm, &c).unwrap();
        assert_eq!(r.decomposition, expected(2, "0:2", &[(0, "1", 1)]));
        assert_eq!(r.decomposition.dimension_vector(2), vec![1, 1]);
        assert_eq!(tensor(&c, &pm).unwrap(), r);
    }

    #[test]
    fn two_break_product_is_indecomposable() {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::single(3, 0, 1);
        let a = Module::Cycle(CycleModule::new(cfg, t, lw("11x"), JordanType::trivial(3)).unwrap());
        let b = path(3, "1:1,2:1", 2, "1");
        let r = tensor(&a, &b).unwrap();
        assert_eq!(r.decomposition, expected(3, "0:1,1:1,2:1", &[(2, "x", 1)]));
        let dims: Vec<usize> = dimension_vector(&a)
            .iter()
            .zip(dimension_vector(&b))
            .map(|(x, y)| x * y)
            .collect();
        assert_eq!(r.decomposition.dimension_vector(3), dims);
    }

    use crate::scalars::CycloScalar;
}
