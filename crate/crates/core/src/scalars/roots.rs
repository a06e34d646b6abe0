//! Roots in Q(zeta_N) of polynomials over Q(zeta_N).
//!
//! The polynomial is scaled to a monic one with coefficients in Z[zeta_N],
//! reduced modulo a prime `P = 1 (mod N)` where zeta_N becomes an integer,
//! its roots modulo `P` are lifted P-adically, and each lifted root is turned
//! back into an element of Z[zeta_N] by lattice reduction. Every candidate is
//! verified exactly, so a returned root is always a root.

use super::cyclo::{cyclotomic_poly, euler_phi, CycloScalar};
use super::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Distinct roots of `f` lying in its coefficient field, sorted.
pub fn roots_in_field(f: &Poly) -> Vec<CycloScalar> {
    roots_with_margin(f, 0)
}

/// Same as [`roots_in_field`] with extra P-adic precision; used for retries.
pub fn roots_with_margin(f: &Poly, extra_bits: u32) -> Vec<CycloScalar> {
    let n_cond = f.conductor();
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let g = f.squarefree_part();
    let deg = g.degree().unwrap();
    let mut out = if deg == 1 {
        vec![-g.coeff(0)]
    } else {
        let mut roots = Vec::new();
        let mut rest = g.clone();
        // cheap candidates first: signed roots of unity
        for k in 0..n_cond as i64 {
            for sign in [1i64, -1] {
                let c = CycloScalar::root_of_unity(k, n_cond).scale(&BigRational::from_integer(sign.into()));
                if rest.degree().unwrap_or(0) >= 1 && rest.eval(&c).is_zero() {
                    rest = rest.divrem(&Poly::linear(&c)).0;
                    roots.push(c);
                }
            }
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(1) => roots.push(-rest.monic().coeff(0)),
            Some(_) => roots.extend(padic_roots(&rest.monic(), extra_bits)),
        }
        roots
    };
    out.sort();
    out.dedup();
    out
}

fn padic_roots(g: &Poly, extra_bits: u32) -> Vec<CycloScalar> {
    let n_cond = g.conductor();
    let phi = euler_phi(n_cond);
    let deg = g.degree().unwrap();
    // common denominator and integral scaling h(y) = D^deg g(y / D)
    let mut den = BigInt::one();
    for c in g.coeffs() {
        den = den.lcm(c.denominator());
    }
    let h: Vec<Vec<BigInt>> = (0..=deg)
        .map(|i| {
            let c = g.coeff(i);
            let scale = den.pow((deg - i) as u32);
            let factor = &scale / c.denominator();
            c.numerators().iter().map(|x| x * &factor).collect()
        })
        .collect();
    let bound = h
        .iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<BigInt>())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let coord_bound = &bound * BigInt::from(2 * n_cond as u64);
    let phi_poly = cyclotomic_poly(n_cond);

    // Screen several good primes: a field root reduces to a root modulo each
    // of them, so one prime without roots proves there are none. Lift from
    // the prime with the fewest candidates.
    let mut p = (n_cond as u64) * ((1000 / n_cond as u64) + 1) + 1;
    let mut attempts = 0;
    let mut best: Option<(u64, u64, Vec<u64>)> = None;
    let mut screened = 0;
    while screened < 6 {
        attempts += 1;
        if attempts > 200 {
            break;
        }
        while !is_prime(p) {
            p += n_cond as u64;
        }
        let prime = p;
        p += n_cond as u64;
        if (&den % BigInt::from(prime)).is_zero() {
            continue;
        }
        let Some(c0) = primitive_root_of_unity(prime, n_cond as u64) else {
            continue;
        };
        let hbar: Vec<u64> = h.iter().map(|co| eval_mod(co, c0, prime)).collect();
        if hbar[deg] == 0 || !squarefree_mod(&hbar, prime) {
            continue;
        }
        let roots_mod: Vec<u64> = (0..prime).filter(|&y| horner_mod(&hbar, y, prime) == 0).collect();
        if roots_mod.is_empty() {
            return Vec::new();
        }
        screened += 1;
        if best.as_ref().map_or(true, |b| roots_mod.len() < b.2.len()) {
            best = Some((prime, c0, roots_mod));
        }
    }
    let Some((prime, c0, roots_mod)) = best else {
        return Vec::new();
    };
    {
        // precision: M^{1/phi} > 2^{phi/2 + 3} * phi * coord_bound, plus margin
        let target_bits = (phi as u64) * (phi as u64 / 2 + 4 + bits(&coord_bound) + bits(&BigInt::from(phi as u64)))
            + 16
            + extra_bits as u64;
        let mut k = 1u32;
        while (k as f64) * (prime as f64).log2() < target_bits as f64 {
            k += 1;
        }
        let modulus = BigInt::from(prime).pow(k);
        let c_lift = hensel_lift_root(
            &phi_poly.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
            BigInt::from(c0),
            &modulus,
            k,
        );
        let hm: Vec<BigInt> = h.iter().map(|co| eval_big(co, &c_lift, &modulus)).collect();
        let powers: Vec<BigInt> = (0..phi)
            .map(|j| c_lift.modpow(&BigInt::from(j as u64), &modulus))
            .collect();
        let basis = lattice_basis(&powers, &modulus);
        let reduced = lll(basis);
        let mut found = Vec::new();
        for r in roots_mod {
            let beta = hensel_lift_root(&hm, BigInt::from(r), &modulus, k);
            let mut target = vec![BigInt::zero(); phi];
            target[0] = beta;
            let small = babai(&reduced, &target);
            let coeffs: Vec<BigRational> = small.iter().map(|a| BigRational::new(a.clone(), den.clone())).collect();
            let cand = CycloScalar::from_coeffs(&coeffs, n_cond);
            if g.eval(&cand).is_zero() {
                found.push(cand);
            }
        }
        return found;
    }
}

fn bits(x: &BigInt) -> u64 {
    x.bits().max(1)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root_of_unity(p: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let factors = prime_factors(n);
    for a in 2..p {
        let c = pow_mod(a, (p - 1) / n, p);
        if factors.iter().all(|&l| pow_mod(c, n / l, p) != 1) {
            return Some(c);
        }
    }
    None
}

fn eval_mod(coeffs: &[BigInt], c: u64, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut acc = 0u128;
    let mut pw = 1u128;
    for co in coeffs {
        let v = co.mod_floor(&pb).to_u64().unwrap() as u128;
        acc = (acc + v * pw) % p as u128;
        pw = pw * c as u128 % p as u128;
    }
    acc as u64
}

fn eval_big(coeffs: &[BigInt], c: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut pw = BigInt::one();
    for co in coeffs {
        acc = (acc + co * &pw).mod_floor(m);
        pw = (&pw * c).mod_floor(m);
    }
    acc
}

fn horner_mod(coeffs: &[u64], y: u64, p: u64) -> u64 {
    let mut acc = 0u128;
    for &c in coeffs.iter().rev() {
        acc = (acc * y as u128 + c as u128) % p as u128;
    }
    acc as u64
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (*r.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u128 * bi as u128 % p as u128) as u64;
            r[k + i] = (r[k + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn squarefree_mod(a: &[u64], p: u64) -> bool {
    let mut x: Vec<u64> = a.to_vec();
    trim(&mut x);
    let mut y: Vec<u64> = x
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (c as u128 * (i as u128 % p as u128) % p as u128) as u64)
        .collect();
    trim(&mut y);
    if y.is_empty() {
        return false;
    }
    while !y.is_empty() {
        let r = poly_rem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    x.len() == 1
}

/// Newton iteration lifting a simple root modulo `p` to a root modulo
/// `modulus = p^k`.
fn hensel_lift_root(coeffs: &[BigInt], root: BigInt, modulus: &BigInt, k: u32) -> BigInt {
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i as u64))
        .collect();
    let mut x = root;
    let mut steps = 1;
    let mut prec = 1u32;
    while prec < k {
        prec *= 2;
        steps += 1;
    }
    for _ in 0..steps + 1 {
        let fx = eval_big(coeffs, &x, modulus);
        if fx.is_zero() {
            break;
        }
        let dfx = eval_big(&deriv, &x, modulus);
        let inv = mod_inverse(&dfx, modulus).expect("simple root");
        x = (x - fx * inv).mod_floor(modulus);
    }
    x
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn lattice_basis(powers: &[BigInt], modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let n = powers.len();
    let mut basis = Vec::with_capacity(n);
    let mut v0 = vec![BigInt::zero(); n];
    v0[0] = modulus.clone();
    basis.push(v0);
    for j in 1..n {
        let mut v = vec![BigInt::zero(); n];
        v[0] = (-&powers[j]).mod_floor(modulus);
        v[j] = BigInt::one();
        basis.push(v);
    }
    basis
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let bi = to_rat(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = dot(&bi, &bstar[j]) / &norms[j];
            for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                *vk = &*vk - &mu[i][j] * bk;
            }
        }
        norms.push(dot(&v, &v));
        bstar.push(v);
    }
    (bstar, mu, norms)
}

fn round_rat(r: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let num = r.numer() * &two + r.denom();
    num.div_floor(&(r.denom() * &two))
}

/// LLL reduction with parameter 3/4.
fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let delta = BigRational::new(3.into(), 4.into());
    let (mut _bstar, mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_rat(&mu[k][j]);
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x = &*x - &q * y;
                }
                let (bs, m, nm) = gram_schmidt(&b);
                _bstar = bs;
                mu = m;
                norms = nm;
            }
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (bs, m, nm) = gram_schmidt(&b);
            _bstar = bs;
            mu = m;
            norms = nm;
            k = k.max(2) - 1;
        }
    }
    b
}

/// Babai nearest plane: returns `target - v` for the lattice vector `v` found.
fn babai(b: &[Vec<BigInt>], target: &[BigInt]) -> Vec<BigInt> {
    let (bstar, _, norms) = gram_schmidt(b);
    let mut t = target.to_vec();
    for j in (0..b.len()).rev() {
        let c = round_rat(&(dot(&to_rat(&t), &bstar[j]) / &norms[j]));
        if !c.is_zero() {
            for (x, y) in t.iter_mut().zip(&b[j]) {
                *x = &*x - &c * y;
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        let f = Poly::from_ints(&[6, -5, 1], 1);
        let r = roots_in_field(&f);
        assert_eq!(r, vec![CycloScalar::from_int(2, 1), CycloScalar::from_int(3, 1)]);
    }

    #[test]
    fn roots_of_unity_found() {
        let f = Poly::from_ints(&[-1, 0, 0, 1], 3);
        assert_eq!(roots_in_field(&f).len(), 3);
    }

    #[test]
    fn generic_field_roots() {
        let n = 12;
        let a = &CycloScalar::from_int(2, n) + &CycloScalar::root_of_unity(1, n);
        let b = CycloScalar::from_coeffs(
            &[
                BigRational::new(3.into(), 2.into()),
                BigRational::from_integer((-1).into()),
                BigRational::from_integer(0.into()),
                BigRational::new(5.into(), 3.into()),
            ],
            n,
        );
        let f = Poly::linear(&a)
            .mul(&Poly::linear(&b))
            .mul(&Poly::from_ints(&[-2, 0, 1], n));
        let r = roots_in_field(&f);
        assert_eq!(r.len(), 2);
        assert!(r.contains(&a));
        assert!(r.contains(&b));
    }

    #[test]
    fn irreducible_has_no_roots() {
        let f = Poly::from_ints(&[-3, 0, 1], 4);
        assert!(roots_in_field(&f).is_empty());
        let g = Poly::from_ints(&[-2, 0, 1], 8);
        // sqrt(2) = zeta_8 + zeta_8^7 lies in Q(zeta_8)
        assert_eq!(roots_in_field(&g).len(), 2);
    }
}
