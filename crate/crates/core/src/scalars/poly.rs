//! Univariate polynomials over a cyclotomic field.

use super::cyclo::CycloScalar;
use std::fmt;

/// Polynomial with coefficients lowest degree first. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    conductor: u32,
    coeffs: Vec<CycloScalar>,
}

impl Poly {
    pub fn zero(conductor: u32) -> Self {
        Poly {
            conductor,
            coeffs: Vec::new(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::constant(CycloScalar::one(conductor))
    }

    pub fn constant(c: CycloScalar) -> Self {
        let conductor = c.conductor();
        Self::new(vec![c], conductor)
    }

    /// The monomial `x`.
    pub fn x(conductor: u32) -> Self {
        Self::new(
            vec![CycloScalar::zero(conductor), CycloScalar::one(conductor)],
            conductor,
        )
    }

    /// `x - c`.
    pub fn linear(c: &CycloScalar) -> Self {
        let n = c.conductor();
        Self::new(vec![-c, CycloScalar::one(n)], n)
    }

    pub fn new(coeffs: Vec<CycloScalar>, conductor: u32) -> Self {
        let mut coeffs: Vec<CycloScalar> = coeffs
            .into_iter()
            .map(|c| {
                if c.conductor() == conductor {
                    c
                } else {
                    c.lift(conductor)
                }
            })
            .collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { conductor, coeffs }
    }

    pub fn from_ints(c: &[i64], conductor: u32) -> Self {
        Self::new(
            c.iter().map(|&v| CycloScalar::from_int(v, conductor)).collect(),
            conductor,
        )
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycloScalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycloScalar::zero(self.conductor))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> CycloScalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| CycloScalar::zero(self.conductor))
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.conductor)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(), self.conductor)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect(), self.conductor)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.conductor);
        }
        let mut out = vec![CycloScalar::zero(self.conductor); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out, self.conductor)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.conductor);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = d.lead().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.conductor), self.clone());
        }
        let mut quot = vec![CycloScalar::zero(self.conductor); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                if !di.is_zero() {
                    rem[k + i] = &rem[k + i] - &(&c * di);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot, self.conductor), Self::new(rem, self.conductor))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &CycloScalar::from_int(i as i64, self.conductor))
                .collect(),
            self.conductor,
        )
    }

    pub fn eval(&self, x: &CycloScalar) -> CycloScalar {
        let mut acc = CycloScalar::zero(self.conductor);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Monic squarefree part `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Resultant of `self` and `other`, computed by the Euclidean algorithm.
    pub fn resultant(&self, other: &Self) -> CycloScalar {
        let n = self.conductor;
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return CycloScalar::zero(n);
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = CycloScalar::one(n);
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                Some(d) => d,
                None => return CycloScalar::zero(n),
            };
            if db == 0 {
                return &acc * &b.lead().pow(da as i64);
            }
            if da < db {
                if (da * db) % 2 == 1 {
                    acc = -acc;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            // Res(a, b) = (-1)^{da db} Res(b, a) and Res(b, a) = lc(b)^{da - dr} Res(b, r)
            let (_, r) = a.divrem(&b);
            let dr = match r.degree() {
                Some(d) => d,
                None => return CycloScalar::zero(n),
            };
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = &acc * &b.lead().pow((da - dr) as i64);
            a = b;
            b = r;
        }
    }

    /// Lagrange interpolation through `(x_k, y_k)`.
    pub fn interpolate(points: &[(CycloScalar, CycloScalar)], conductor: u32) -> Self {
        let mut out = Self::zero(conductor);
        for (k, (xk, yk)) in points.iter().enumerate() {
            let mut basis = Self::one(conductor);
            let mut denom = CycloScalar::one(conductor);
            for (m, (xm, _)) in points.iter().enumerate() {
                if m != k {
                    basis = basis.mul(&Self::linear(xm));
                    denom = &denom * &(xk - xm);
                }
            }
            out = out.add(&basis.scale(&(yk / &denom)));
        }
        out
    }

    /// Substitutes `x^n` for `x`.
    pub fn compose_power(&self, n: usize) -> Self {
        let mut out = vec![CycloScalar::zero(self.conductor); (self.coeffs.len().max(1) - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * n] = c.clone();
        }
        Self::new(out, self.conductor)
    }

    pub fn lift(&self, conductor: u32) -> Self {
        Self::new(self.coeffs.clone(), conductor)
    }
}

/// `f^[n]`: the polynomial with leading coefficient `a^n` whose roots are the
/// n-th powers of the roots of `f`, obtained from `Res_y(f(y), x - y^n)`.
pub fn poly_power_bracket(f: &Poly, n: u32) -> Poly {
    assert!(n >= 1, "exponent must be positive");
    let cond = f.conductor();
    let Some(m) = f.degree() else {
        return f.clone();
    };
    if n == 1 || m == 0 {
        return f.clone();
    }
    // Res_y(f(y), x0 - y^n) = a^n prod(x0 - alpha_i^n)
    let points: Vec<(CycloScalar, CycloScalar)> = (0..=m)
        .map(|k| {
            let x0 = CycloScalar::from_int(k as i64, cond);
            let mut g = vec![CycloScalar::zero(cond); n as usize + 1];
            g[0] = x0.clone();
            g[n as usize] = CycloScalar::from_int(-1, cond);
            let r = f.resultant(&Poly::new(g, cond));
            (x0, r)
        })
        .collect();
    Poly::interpolate(&points, cond)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_literal();
            let term = match i {
                0 => cs,
                _ => {
                    let xp = if i == 1 { "x".to_string() } else { format!("x^{}", i) };
                    if c.is_one() {
                        xp
                    } else {
                        format!("({})*{}", cs, xp)
                    }
                }
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_identity_exponent() {
        let f = Poly::from_ints(&[3, -2, 5], 4);
        assert_eq!(poly_power_bracket(&f, 1), f);
    }

    #[test]
    fn bracket_of_x_squared_minus_one() {
        let f = Poly::from_ints(&[-1, 0, 1], 2);
        let g = Poly::from_ints(&[1, -2, 1], 2);
        assert_eq!(poly_power_bracket(&f, 2), g);
    }

    #[test]
    fn bracket_of_linear_power() {
        let xi = CycloScalar::root_of_unity(1, 6);
        let f = Poly::linear(&xi).pow(3);
        let expect = Poly::linear(&xi.pow(4)).pow(3);
        assert_eq!(poly_power_bracket(&f, 4), expect);
    }

    #[test]
    fn bracket_keeps_leading_power() {
        let f = Poly::from_ints(&[1, 3], 1);
        // 3x + 1 = 3 (x + 1/3); squared roots give 9 (x - 1/9)
        let g = poly_power_bracket(&f, 2);
        assert_eq!(g, Poly::from_ints(&[-1, 9], 1));
    }

    #[test]
    fn gcd_and_division() {
        let a = Poly::from_ints(&[-1, 0, 1], 1);
        let b = Poly::from_ints(&[1, 2, 1], 1);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1], 1));
        let (q, r) = a.divrem(&Poly::from_ints(&[1, 1], 1));
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_ints(&[-1, 1], 1));
    }

    #[test]
    fn resultant_of_linears() {
        let a = Poly::from_ints(&[-2, 1], 1);
        let b = Poly::from_ints(&[-5, 1], 1);
        assert_eq!(a.resultant(&b), CycloScalar::from_int(-3, 1));
    }
}
