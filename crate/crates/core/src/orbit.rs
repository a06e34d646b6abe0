//! The finite orbit `{(z - q^k)}` of size `p`, parameters `t`, letters and
//! the word calculus used by cycle and path modules.
//!
//! Weight `k` is the maximal ideal `(z - q^k)`. A parameter `t` is evaluated
//! at weight `k` by substituting `z = q^k`; `sigma^k(t)` read at the base
//! weight is `t(q^{-k})`.

use crate::error::{GwaError, Result};
use crate::scalars::CycloScalar;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Orbit size `p` and the conductor `N` of the scalar field, `p | N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitConfig {
    p: u32,
    conductor: u32,
}

impl OrbitConfig {
    pub fn new(p: u32, conductor: u32) -> Result<Self> {
        if p == 0 || conductor == 0 || conductor % p != 0 {
            return Err(GwaError::ContextMismatch(format!(
                "orbit size {} must divide conductor {}",
                p, conductor
            )));
        }
        Ok(OrbitConfig { p, conductor })
    }

    /// Orbit of size `p` over `Q(zeta_p)`.
    pub fn with_p(p: u32) -> Self {
        Self::new(p, p).expect("p divides p")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `q^k` for the primitive p-th root `q = zeta_N^{N/p}`.
    pub fn q_pow(&self, k: i64) -> CycloScalar {
        let step = (self.conductor / self.p) as i64;
        CycloScalar::root_of_unity(k.rem_euclid(self.p as i64) * step, self.conductor)
    }

    pub fn q(&self) -> CycloScalar {
        self.q_pow(1)
    }

    pub fn scalar(&self, v: i64) -> CycloScalar {
        CycloScalar::from_int(v, self.conductor)
    }

    /// Reduces an integer position to a weight in `0..p`.
    pub fn weight(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(GwaError::ContextMismatch(format!(
                "orbit (p={}, N={}) vs (p={}, N={})",
                self.p, self.conductor, other.p, other.conductor
            )));
        }
        Ok(())
    }
}

/// `t = prod_i (z - q^i)^{k_i}`, stored by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TParam {
    exps: Vec<u32>,
}

impl TParam {
    pub fn one(p: u32) -> Self {
        TParam {
            exps: vec![0; p as usize],
        }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        TParam { exps }
    }

    /// `(z - q^i)^a`.
    pub fn single(p: u32, i: u32, a: u32) -> Self {
        let mut t = Self::one(p);
        t.exps[(i % p) as usize] = a;
        t
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn p(&self) -> u32 {
        self.exps.len() as u32
    }

    pub fn is_break(&self, k: i64) -> bool {
        let p = self.exps.len() as i64;
        self.exps[k.rem_euclid(p) as usize] > 0
    }

    pub fn breaks(&self) -> Vec<u32> {
        (0..self.exps.len() as u32)
            .filter(|&i| self.exps[i as usize] > 0)
            .collect()
    }

    pub fn has_breaks(&self) -> bool {
        self.exps.iter().any(|&e| e > 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        TParam {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `t(q^k)`, the value of `t` on weight `k`.
    pub fn eval_at(&self, cfg: &OrbitConfig, k: i64) -> CycloScalar {
        let z = cfg.q_pow(k);
        let mut acc = cfg.scalar(1);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                let f = &z - &cfg.q_pow(i as i64);
                acc = &acc * &f.pow(e as i64);
            }
        }
        acc
    }

    /// `sigma^k(t)` read at the base weight, i.e. `t(q^{-k})`.
    pub fn sigma_eval(&self, cfg: &OrbitConfig, k: i64) -> CycloScalar {
        self.eval_at(cfg, -k)
    }

    /// Parses `"0:1,2:2"`; the empty string is `t = 1`.
    pub fn parse(s: &str, p: u32) -> Result<Self> {
        let mut t = Self::one(p);
        let s = s.trim();
        if s.is_empty() {
            return Ok(t);
        }
        let mut offset = 0;
        for part in s.split(',') {
            let (a, b) = part.split_once(':').ok_or_else(|| GwaError::Parse {
                offset,
                msg: format!("expected index:exponent, got {:?}", part),
            })?;
            let i: u32 = a.trim().parse().map_err(|_| GwaError::Parse {
                offset,
                msg: format!("bad index {:?}", a),
            })?;
            let e: u32 = b.trim().parse().map_err(|_| GwaError::Parse {
                offset: offset + a.len() + 1,
                msg: format!("bad exponent {:?}", b),
            })?;
            if i >= p {
                return Err(GwaError::Parse {
                    offset,
                    msg: format!("index {} outside orbit of size {}", i, p),
                });
            }
            t.exps[i as usize] += e;
            offset += part.len() + 1;
        }
        Ok(t)
    }
}

impl fmt::Display for TParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, e)| format!("{}:{}", i, e))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for TParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}]", self)
    }
}

/// A letter of the monoid `{0, 1, x, y}`, ordered `0 < 1 < x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Zero,
    One,
    X,
    Y,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            '0' => Some(Letter::Zero),
            '1' => Some(Letter::One),
            'x' => Some(Letter::X),
            'y' => Some(Letter::Y),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    /// Directional letters `x` and `y`.
    pub fn is_directional(self) -> bool {
        matches!(self, Letter::X | Letter::Y)
    }
}

/// Product in the letter monoid.
pub fn letter_mul(a: Letter, b: Letter) -> Letter {
    use Letter::*;
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (One, z) | (z, One) => z,
        (X, Y) | (Y, X) => Zero,
        (z, _) => z,
    }
}

/// Parses a string over `01xy`; errors carry the offending offset.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| {
            Letter::from_char(c).ok_or_else(|| GwaError::Parse {
                offset: i,
                msg: format!("letter {:?} is not one of 0,1,x,y", c),
            })
        })
        .collect()
}

pub fn letters_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_char()).collect()
}

/// Indexed word `w_j w_{j+1} ... ` starting at position `start`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub start: i64,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(start: i64, letters: Vec<Letter>) -> Self {
        Word { start, letters }
    }

    /// A p-word starting at position 1.
    pub fn cyclic(letters: Vec<Letter>) -> Self {
        Word { start: 1, letters }
    }

    pub fn parse(s: &str, start: i64) -> Result<Self> {
        Ok(Word::new(start, parse_letters(s)?))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at absolute position `k`, read cyclically.
    pub fn at(&self, k: i64) -> Letter {
        let n = self.letters.len() as i64;
        self.letters[(k - self.start).rem_euclid(n) as usize]
    }

    /// Checks membership in the valid words for `t`: position `k` carries a
    /// `1` exactly when `k mod p` is not a break.
    pub fn validate(&self, t: &TParam) -> Result<()> {
        for (s, &l) in self.letters.iter().enumerate() {
            let k = self.start + s as i64;
            let brk = t.is_break(k);
            if brk == (l == Letter::One) {
                return Err(GwaError::InvalidWord(format!(
                    "position {} (weight {}) is {} but carries letter {}",
                    k,
                    k.rem_euclid(t.p() as i64),
                    if brk { "a break" } else { "not a break" },
                    l.to_char()
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, t: &TParam) -> bool {
        self.validate(t).is_ok()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", letters_to_string(&self.letters), self.start)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn check_pword(cfg: &OrbitConfig, w: &[Letter]) -> Result<usize> {
    let p = cfg.p() as usize;
    if w.is_empty() || w.len() % p != 0 {
        return Err(GwaError::InvalidWord(format!(
            "length {} is not a positive multiple of p = {}",
            w.len(),
            p
        )));
    }
    Ok(w.len() / p)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Positionwise product of two p-words, read cyclically, of length
/// `r r' p / gcd(r, r')`.
pub fn word_tensor(cfg: &OrbitConfig, w: &[Letter], w2: &[Letter]) -> Result<Vec<Letter>> {
    let r = check_pword(cfg, w)?;
    let r2 = check_pword(cfg, w2)?;
    let len = r * r2 * cfg.p() as usize / gcd(r, r2);
    Ok((0..len).map(|k| letter_mul(w[k % w.len()], w2[k % w2.len()])).collect())
}

/// Cyclic shift by `j p` positions: `z_k = w_{k + jp}`.
pub fn word_shift(cfg: &OrbitConfig, w: &[Letter], j: i64) -> Result<Vec<Letter>> {
    check_pword(cfg, w)?;
    let n = w.len() as i64;
    let off = (j * cfg.p() as i64).rem_euclid(n) as usize;
    Ok((0..w.len()).map(|k| w[(k + off) % w.len()]).collect())
}

/// Smallest `r0` dividing `r` with `w` the `(r / r0)`-th power of its prefix
/// of length `r0 p`.
pub fn primitive_period(cfg: &OrbitConfig, w: &[Letter]) -> Result<usize> {
    let r = check_pword(cfg, w)?;
    let p = cfg.p() as usize;
    for r0 in 1..=r {
        if r % r0 == 0 && (0..w.len()).all(|k| w[k] == w[k % (r0 * p)]) {
            return Ok(r0);
        }
    }
    Ok(r)
}

/// True when `w` equals a nontrivial p-shift of itself.
pub fn word_is_periodic(cfg: &OrbitConfig, w: &[Letter]) -> Result<bool> {
    let r = check_pword(cfg, w)?;
    Ok(primitive_period(cfg, w)? < r)
}

/// Lexicographically least p-shift and the least shift achieving it.
pub fn canonical_shift(cfg: &OrbitConfig, w: &[Letter]) -> Result<(Vec<Letter>, usize)> {
    let r = check_pword(cfg, w)?;
    let mut best = w.to_vec();
    let mut best_j = 0;
    for j in 1..r {
        let s = word_shift(cfg, w, j as i64)?;
        if s < best {
            best = s;
            best_j = j;
        }
    }
    Ok((best, best_j))
}

/// `u^{w,w'}`: the product of `u(q^j)` over `1 <= j <= r r' p / d` with
/// `w_j = 1` and `w'_j = x`, indices read cyclically.
///
/// Position `j` is the weight at which the extra factor of `u` is picked
/// up when walking around the tensor cycle, so `u` is evaluated at `q^j`.
pub fn scalar_twist_product(cfg: &OrbitConfig, u: &TParam, w: &[Letter], w2: &[Letter]) -> Result<CycloScalar> {
    let r = check_pword(cfg, w)?;
    let r2 = check_pword(cfg, w2)?;
    let len = r * r2 * cfg.p() as usize / gcd(r, r2);
    let mut acc = cfg.scalar(1);
    for j in 1..=len {
        if w[(j - 1) % w.len()] == Letter::One && w2[(j - 1) % w2.len()] == Letter::X {
            acc = &acc * &u.eval_at(cfg, j as i64);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn lw(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn letter_products() {
        assert_eq!(letter_mul(One, X), X);
        assert_eq!(letter_mul(X, Y), Zero);
        assert_eq!(letter_mul(Y, Y), Y);
        assert_eq!(letter_mul(Zero, One), Zero);
    }

    #[test]
    fn tensor_of_words() {
        let c3 = OrbitConfig::with_p(3);
        assert_eq!(word_tensor(&c3, &lw("x1x"), &lw("1yx")).unwrap(), lw("xyx"));
        let c2 = OrbitConfig::with_p(2);
        assert_eq!(word_tensor(&c2, &lw("1x"), &lw("1y")).unwrap(), lw("10"));
        assert_eq!(word_tensor(&c2, &lw("1x1y"), &lw("11")).unwrap(), lw("1x1y"));
        assert_eq!(word_tensor(&c2, &lw("1x1y"), &lw("1x1x1x")).unwrap().len(), 12);
    }

    #[test]
    fn shifts_and_periodicity() {
        let c2 = OrbitConfig::with_p(2);
        let w = lw("x1y1");
        assert_eq!(word_shift(&c2, &w, 0).unwrap(), w);
        assert_eq!(word_shift(&c2, &w, 2).unwrap(), w);
        assert_eq!(word_shift(&c2, &w, 1).unwrap(), lw("y1x1"));
        assert!(word_is_periodic(&c2, &lw("x1x1")).unwrap());
        assert!(!word_is_periodic(&c2, &w).unwrap());
        assert!(!word_is_periodic(&c2, &lw("11")).unwrap());
    }

    #[test]
    fn canonical_shifts() {
        let c2 = OrbitConfig::with_p(2);
        assert_eq!(canonical_shift(&c2, &lw("x1y1")).unwrap(), (lw("x1y1"), 0));
        assert_eq!(canonical_shift(&c2, &lw("y1x1")).unwrap(), (lw("x1y1"), 1));
        assert_eq!(canonical_shift(&c2, &lw("1111")).unwrap(), (lw("1111"), 0));
    }

    #[test]
    fn twist_product_trivial_cases() {
        let c2 = OrbitConfig::with_p(2);
        let u = TParam::single(2, 0, 1);
        let w = lw("1x1x");
        assert!(scalar_twist_product(&c2, &u, &w, &w).unwrap().is_one());
        assert!(scalar_twist_product(&c2, &TParam::one(2), &w, &lw("x1x1"))
            .unwrap()
            .is_one());
    }

    #[test]
    fn twist_product_frozen_value() {
        // p = 2, u = z - 1, positions j = 1, 3 give (q - 1)(q^3 - 1) = (-2)(-2)
        let c2 = OrbitConfig::with_p(2);
        let u = TParam::single(2, 0, 1);
        let v = scalar_twist_product(&c2, &u, &lw("1x1x"), &lw("x1x1")).unwrap();
        assert_eq!(v, CycloScalar::from_int(4, 2));
    }

    #[test]
    fn tparam_parse_and_eval() {
        let c3 = OrbitConfig::with_p(3);
        let t = TParam::parse("0:1,2:2", 3).unwrap();
        assert_eq!(t.exps(), &[1, 0, 2]);
        assert_eq!(t.to_string(), "0:1,2:2");
        assert!(t.eval_at(&c3, 0).is_zero());
        assert!(!t.eval_at(&c3, 1).is_zero());
        assert_eq!(t.sigma_eval(&c3, 1), t.eval_at(&c3, 2));
        assert!(TParam::parse("5:1", 3).is_err());
    }

    #[test]
    fn word_validity() {
        let t = TParam::parse("0:1,2:1", 3).unwrap();
        assert!(Word::parse("x1x", 3).unwrap().is_valid(&t));
        assert!(!Word::parse("111", 3).unwrap().is_valid(&t));
    }
}
