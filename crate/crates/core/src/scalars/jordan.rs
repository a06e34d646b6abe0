//! Jordan data of invertible operators.

use super::cyclo::CycloScalar;
use super::matrix::{companion, jordan_block, Matrix};
use super::poly::{poly_power_bracket, Poly};
use super::roots::roots_with_margin;
use crate::error::{GwaError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Multiset of Jordan blocks `(eigenvalue, size)`, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanType {
    blocks: Vec<(CycloScalar, usize)>,
}

impl JordanType {
    pub fn new(mut blocks: Vec<(CycloScalar, usize)>) -> Self {
        blocks.retain(|(_, a)| *a > 0);
        blocks.sort();
        JordanType { blocks }
    }

    pub fn single(xi: CycloScalar, size: usize) -> Self {
        Self::new(vec![(xi, size)])
    }

    /// The trivial eigen-data `x - 1` of size one.
    pub fn trivial(conductor: u32) -> Self {
        Self::single(CycloScalar::one(conductor), 1)
    }

    pub fn blocks(&self) -> &[(CycloScalar, usize)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, a)| a).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].0.is_one() && self.blocks[0].1 == 1
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(|(x, _)| !x.is_zero())
    }

    pub fn to_matrix(&self, conductor: u32) -> Matrix {
        let blocks: Vec<Matrix> = self
            .blocks
            .iter()
            .map(|(x, a)| jordan_block(&x.lift(conductor), *a))
            .collect();
        Matrix::block_diag(&blocks, conductor)
    }

    pub fn lift(&self, conductor: u32) -> Self {
        Self::new(self.blocks.iter().map(|(x, a)| (x.lift(conductor), *a)).collect())
    }

    /// Jordan data of `F^r`, computed blockwise from `((x - xi)^a)^[r]`.
    pub fn power(&self, r: u32) -> Result<Self> {
        let mut out = Vec::new();
        for (xi, a) in &self.blocks {
            let f = Poly::linear(xi).pow(*a as u32);
            let fr = poly_power_bracket(&f, r);
            let j = jordan_decompose(&companion(&fr)?)?;
            out.extend(j.blocks);
        }
        Ok(Self::new(out))
    }

    /// Jordan data of the companion matrix of `f`.
    pub fn from_poly(f: &Poly) -> Result<Self> {
        jordan_decompose(&companion(f)?)
    }

    /// Scales every eigenvalue by `c`.
    pub fn scale(&self, c: &CycloScalar) -> Self {
        Self::new(self.blocks.iter().map(|(x, a)| (x * c, *a)).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut b = self.blocks.clone();
        b.extend(other.blocks.iter().cloned());
        Self::new(b)
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(x, a)| format!("({},{})", x.to_literal(), a))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Jordan type of an invertible square matrix whose spectrum lies in its
/// field of entries.
pub fn jordan_decompose(m: &Matrix) -> Result<JordanType> {
    assert!(m.is_square(), "jordan_decompose needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return Ok(JordanType::new(Vec::new()));
    }
    let cond = m.conductor();
    let eigen: Vec<(CycloScalar, usize)> = if m.is_upper_triangular() {
        let mut diag: Vec<CycloScalar> = (0..n).map(|i| m.get(i, i).clone()).collect();
        diag.sort();
        let mut out: Vec<(CycloScalar, usize)> = Vec::new();
        for d in diag {
            match out.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    } else {
        spectrum(m)?
    };
    let mut blocks = Vec::new();
    for (lambda, mult) in eigen {
        if lambda.is_zero() {
            return Err(GwaError::SingularF);
        }
        let a = m.sub(&Matrix::scalar(n, &lambda));
        // rank profile r_k = rank (M - lambda)^k until it drops by the multiplicity
        let mut ranks = vec![n];
        let mut pw = Matrix::identity(n, cond);
        while *ranks.last().unwrap() > n - mult {
            pw = pw.mul(&a);
            ranks.push(pw.rank());
            let l = ranks.len();
            if ranks[l - 1] == ranks[l - 2] {
                break;
            }
        }
        ranks.push(*ranks.last().unwrap());
        for k in 1..ranks.len() - 1 {
            let ge_k = ranks[k - 1] - ranks[k];
            let ge_k1 = ranks[k] - ranks[k + 1];
            for _ in 0..(ge_k - ge_k1) {
                blocks.push((lambda.clone(), k));
            }
        }
    }
    Ok(JordanType::new(blocks))
}

fn spectrum(m: &Matrix) -> Result<Vec<(CycloScalar, usize)>> {
    let n = m.rows();
    let cp = m.charpoly();
    let mut out = Vec::new();
    for margin in [0u32, 64, 256] {
        out.clear();
        let mut rest = cp.clone();
        for r in roots_with_margin(&cp, margin) {
            let lin = Poly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.divrem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            out.push((r, mult));
        }
        let total: usize = out.iter().map(|(_, k)| k).sum();
        if total == n {
            return Ok(out);
        }
        if margin == 256 {
            return Err(GwaError::NonSplitSpectrum {
                factor: rest.to_string(),
                conductor: m.conductor(),
            });
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(n: u32) -> CycloScalar {
        CycloScalar::one(n)
    }

    #[test]
    fn identity_has_unit_blocks() {
        let j = jordan_decompose(&Matrix::identity(2, 1)).unwrap();
        assert_eq!(j, JordanType::new(vec![(one(1), 1), (one(1), 1)]));
    }

    #[test]
    fn companion_of_square_is_single_block() {
        let m = companion(&Poly::from_ints(&[1, -2, 1], 1)).unwrap();
        assert_eq!(jordan_decompose(&m).unwrap(), JordanType::single(one(1), 2));
    }

    #[test]
    fn companion_of_x2_minus_1_splits() {
        let m = companion(&Poly::from_ints(&[-1, 0, 1], 2)).unwrap();
        let j = jordan_decompose(&m).unwrap();
        assert_eq!(j, JordanType::new(vec![(one(2), 1), (CycloScalar::from_int(-1, 2), 1)]));
        // rank(M - I) = 1
        assert_eq!(m.sub(&Matrix::identity(2, 2)).rank(), 1);
    }

    #[test]
    fn non_split_spectrum_is_reported() {
        let m = companion(&Poly::from_ints(&[-2, 0, 1], 3)).unwrap();
        assert!(matches!(jordan_decompose(&m), Err(GwaError::NonSplitSpectrum { .. })));
    }

    #[test]
    fn power_of_block() {
        let xi = CycloScalar::root_of_unity(1, 4);
        let j = JordanType::single(xi.clone(), 2).power(2).unwrap();
        assert_eq!(j, JordanType::single(xi.pow(2), 2));
    }

    #[test]
    fn round_trip_through_matrix() {
        let j = JordanType::new(vec![
            (CycloScalar::from_int(2, 3), 2),
            (CycloScalar::root_of_unity(1, 3), 1),
            (CycloScalar::from_int(2, 3), 1),
        ]);
        assert_eq!(jordan_decompose(&j.to_matrix(3)).unwrap(), j);
    }
}
