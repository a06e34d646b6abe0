//! Exact elements of the cyclotomic field Q(zeta_N).
//!
//! An element is stored by its coordinates in the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)` as integer numerators over one common
//! positive denominator, always reduced modulo the N-th cyclotomic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            while n % f == 0 {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

static CYCLOTOMIC: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (lowest degree first) of the N-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    let cache = CYCLOTOMIC.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().expect("cyclotomic cache").get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_poly(d);
        poly = exact_div_monic(&poly, &div);
    }
    let arc = Arc::new(poly);
    cache.write().expect("cyclotomic cache").insert(n, arc.clone());
    arc
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        q[k] = c;
        if c != 0 {
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= c * bi;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An exact element of Q(zeta_N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    pub fn zero(conductor: u32) -> Self {
        CycloScalar {
            conductor,
            num: vec![BigInt::zero(); euler_phi(conductor)],
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(1, conductor)
    }

    pub fn from_int(v: i64, conductor: u32) -> Self {
        let mut s = Self::zero(conductor);
        s.num[0] = BigInt::from(v);
        s
    }

    pub fn from_bigint(v: BigInt, conductor: u32) -> Self {
        let mut s = Self::zero(conductor);
        s.num[0] = v;
        s
    }

    pub fn from_rational(r: &BigRational, conductor: u32) -> Self {
        let mut s = Self::zero(conductor);
        s.num[0] = r.numer().clone();
        s.den = r.denom().clone();
        s.normalize();
        s
    }

    /// Builds an element from power-basis coordinates of any length; the
    /// coordinates are reduced modulo the cyclotomic polynomial.
    pub fn from_coeffs(coeffs: &[BigRational], conductor: u32) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_raw(num, den, conductor)
    }

    fn from_raw(mut num: Vec<BigInt>, den: BigInt, conductor: u32) -> Self {
        reduce_mod_cyclotomic(&mut num, conductor);
        let mut s = CycloScalar { conductor, num, den };
        s.normalize();
        s
    }

    /// The root of unity zeta_N^k.
    pub fn root_of_unity(k: i64, conductor: u32) -> Self {
        let n = conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        Self::from_raw(num, BigInt::one(), conductor)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates as rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|n| n.is_zero())
    }

    fn is_rational_repr(&self) -> bool {
        self.num[1..].iter().all(|n| n.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational_repr() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Common denominator of the coordinates.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Integer numerators of the coordinates over [`Self::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for n in self.num.iter_mut() {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Re-expresses the element in Q(zeta_M) for a multiple M of the conductor.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        assert!(
            target % self.conductor == 0,
            "cannot lift conductor {} into {}",
            self.conductor,
            target
        );
        let step = (target / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (j, c) in self.num.iter().enumerate() {
            num[j * step] = c.clone();
        }
        Self::from_raw(num, self.den.clone(), target)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = (a.conductor as u64).lcm(&(b.conductor as u64)) as u32;
        (a.lift(l), b.lift(l))
    }

    /// Image under the Galois automorphism zeta -> zeta^k (k coprime to N).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        let kk = k.rem_euclid(n) as usize;
        let len = (self.num.len().max(1) - 1) * kk.max(1) + 1;
        let mut num = vec![BigInt::zero(); len.max(1)];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let e = (j * kk) % (n as usize);
                if e >= num.len() {
                    num.resize(e + 1, BigInt::zero());
                }
                num[e] += c;
            }
        }
        Self::from_raw(num, self.den.clone(), self.conductor)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for k in 2..self.conductor as i64 {
            if (k as u64).gcd(&(self.conductor as u64)) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.to_rational().expect("norm is rational")
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational_repr() {
            let r = BigRational::new(self.den.clone(), self.num[0].clone());
            return Some(Self::from_rational(&r, self.conductor));
        }
        let mut others = Self::one(self.conductor);
        for k in 2..self.conductor as i64 {
            if (k as u64).gcd(&(self.conductor as u64)) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (&others * self).to_rational().expect("norm is rational");
        let inv_norm = Self::from_rational(&norm.recip(), self.conductor);
        Some(&others * &inv_norm)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|n| n * r.numer()).collect();
        let mut s = CycloScalar {
            conductor: self.conductor,
            num,
            den: &self.den * r.denom(),
        };
        s.normalize();
        s
    }

    /// Writes the element as `c * zeta^k` with rational `c` when possible.
    pub fn as_monomial(&self) -> Option<(BigRational, u32)> {
        if let Some(r) = self.to_rational() {
            return Some((r, 0));
        }
        for k in 1..self.conductor {
            let shifted = self * &Self::root_of_unity(-(k as i64), self.conductor);
            if let Some(r) = shifted.to_rational() {
                return Some((r, k));
            }
        }
        None
    }

    /// Text literal: products of rationals and `z^k` when possible,
    /// otherwise a sum of such terms.
    pub fn to_literal(&self) -> String {
        if let Some((c, k)) = self.as_monomial() {
            return monomial_literal(&c, k);
        }
        self.to_string()
    }
}

fn monomial_literal(c: &BigRational, k: u32) -> String {
    if k == 0 {
        return c.to_string();
    }
    let z = if k == 1 { "z".to_string() } else { format!("z^{}", k) };
    if c.is_one() {
        z
    } else if (-c).is_one() {
        format!("-{}", z)
    } else {
        format!("{}*{}", c, z)
    }
}

fn reduce_mod_cyclotomic(num: &mut Vec<BigInt>, conductor: u32) {
    let phi = cyclotomic_poly(conductor);
    let d = phi.len() - 1;
    if num.len() > d {
        for deg in (d..num.len()).rev() {
            if num[deg].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut num[deg]);
            for (i, pi) in phi.iter().enumerate().take(d) {
                if *pi != 0 {
                    num[deg - d + i] -= &c * *pi;
                }
            }
        }
        num.truncate(d);
    }
    num.resize(d, BigInt::zero());
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push(monomial_literal(c, k as u32));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self, self.conductor)
    }
}

impl PartialOrd for CycloScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycloScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| {
            for (a, b) in self.num.iter().zip(other.num.iter()) {
                let o = (a * &other.den).cmp(&(b * &self.den));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &'a CycloScalar) -> CycloScalar {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloScalar::common(self, rhs);
            return &a + &b;
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (num, den) = if self.den == rhs.den {
            (
                self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect(),
                self.den.clone(),
            )
        } else {
            (
                self.num
                    .iter()
                    .zip(&rhs.num)
                    .map(|(a, b)| a * &rhs.den + b * &self.den)
                    .collect(),
                &self.den * &rhs.den,
            )
        };
        let mut s = CycloScalar {
            conductor: self.conductor,
            num,
            den,
        };
        s.normalize();
        s
    }
}

impl<'a> Neg for &'a CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            conductor: self.conductor,
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &'a CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &'a CycloScalar) -> CycloScalar {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloScalar::common(self, rhs);
            return &a * &b;
        }
        if self.is_zero() || rhs.is_zero() {
            return CycloScalar::zero(self.conductor);
        }
        if rhs.is_rational_repr() {
            return self.scale(&BigRational::new(rhs.num[0].clone(), rhs.den.clone()));
        }
        if self.is_rational_repr() {
            return rhs.scale(&BigRational::new(self.num[0].clone(), self.den.clone()));
        }
        let n = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloScalar::from_raw(prod, &self.den * &rhs.den, self.conductor)
    }
}

impl<'a> Div<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn div(self, rhs: &'a CycloScalar) -> CycloScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &'a CycloScalar) -> CycloScalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

/// `zeta_N^k` as an exact element.
pub fn cyclo_embed(n_root: i64, conductor: u32) -> CycloScalar {
    CycloScalar::root_of_unity(n_root, conductor)
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson {
            conductor: self.conductor,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        if j.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for c in &j.coeffs {
            let r: BigRational = c
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad rational {:?}", c)))?;
            coeffs.push(r);
        }
        Ok(CycloScalar::from_coeffs(&coeffs, j.conductor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn embed_identity_and_minus_one() {
        assert!(cyclo_embed(0, 12).is_one());
        assert_eq!(cyclo_embed(6, 12), CycloScalar::from_int(-1, 12));
    }

    #[test]
    fn embed_cube_root_satisfies_phi3() {
        let w = cyclo_embed(4, 12);
        let val = &(&w * &w) + &(&w + &CycloScalar::one(12));
        assert!(val.is_zero());
        assert!(!(&w - &CycloScalar::one(12)).is_zero());
    }

    #[test]
    fn inverse_and_norm() {
        let a = CycloScalar::from_coeffs(&[q(2, 1), q(-1, 3), q(0, 1), q(5, 7)], 12);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let z = cyclo_embed(1, 5);
        assert_eq!(z.norm(), q(1, 1));
        let one_minus = &CycloScalar::one(5) - &z;
        assert_eq!(one_minus.norm(), q(5, 1));
    }

    #[test]
    fn lifting_preserves_value() {
        let a = cyclo_embed(1, 3);
        let b = a.lift(12);
        assert_eq!(b, cyclo_embed(4, 12));
        let sum = &a + &cyclo_embed(3, 12);
        assert_eq!(sum.conductor(), 12);
        assert_eq!(sum, &cyclo_embed(4, 12) + &cyclo_embed(3, 12));
    }

    #[test]
    fn monomial_literals() {
        let a = cyclo_embed(5, 12).scale(&q(-3, 2));
        let (c, k) = a.as_monomial().unwrap();
        assert_eq!(c, q(-3, 2));
        assert_eq!(k, 5);
        assert_eq!(a.to_literal(), "-3/2*z^5");
        assert_eq!(CycloScalar::from_int(-1, 4).to_literal(), "-1");
    }

    #[test]
    fn json_round_trip() {
        let a = CycloScalar::from_coeffs(&[q(1, 2), q(-3, 1)], 3);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"conductor":3,"coeffs":["1/2","-3"]}"#);
        let b: CycloScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
