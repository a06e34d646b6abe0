//! Dense matrices over a cyclotomic field.

use super::cyclo::CycloScalar;
use super::poly::Poly;
use crate::error::{GwaError, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<CycloScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Matrix {
            rows,
            cols,
            conductor,
            data: vec![CycloScalar::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::scalar(n, &CycloScalar::one(conductor))
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &CycloScalar) -> Self {
        let mut m = Self::zeros(n, n, c.conductor());
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>, conductor: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.into_iter().map(|x| {
                if x.conductor() == conductor {
                    x
                } else {
                    x.lift(conductor)
                }
            }));
        }
        Matrix {
            rows: r,
            cols: c,
            conductor,
            data,
        }
    }

    pub fn from_ints(rows: &[&[i64]], conductor: u32) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| CycloScalar::from_int(v, conductor)).collect())
                .collect(),
            conductor,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        let v = if v.conductor() == self.conductor {
            v
        } else {
            v.lift(self.conductor)
        };
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<CycloScalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<CycloScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<CycloScalar>], rows: usize, conductor: u32) -> Self {
        let mut m = Self::zeros(rows, cols.len(), conductor);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloScalar::zero(self.conductor);
                for (k, vk) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !vk.is_zero() {
                        acc = &acc + &(a * vk);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows, self.conductor);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[Matrix], conductor: u32) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c, conductor);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len(), self.conductor);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let pv = m.get(row, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * pv);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // forward elimination only
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m.get(rank, col).inv().expect("nonzero pivot");
            for i in rank + 1..m.rows {
                let f = m.get(i, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let pv = m.get(rank, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * pv);
                    m.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<CycloScalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycloScalar::zero(self.conductor); self.cols];
                v[f] = CycloScalar::one(self.conductor);
                for (pi, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(pi, f);
                }
                v
            })
            .collect()
    }

    /// Indices of a maximal linearly independent set of columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn det(&self) -> CycloScalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = CycloScalar::one(self.conductor);
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                return CycloScalar::zero(self.conductor);
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in col + 1..m.rows {
                let f = m.get(i, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(col, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::zeros(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycloScalar::one(self.conductor));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let cond = self.conductor;
        let mut h = self.clone();
        for col in 0..n.saturating_sub(2) {
            let Some(p) = (col + 1..n).find(|&i| !h.get(i, col).is_zero()) else {
                continue;
            };
            if p != col + 1 {
                h.swap_rows(p, col + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + col + 1);
                }
            }
            let inv = h.get(col + 1, col).inv().expect("nonzero pivot");
            for i in col + 2..n {
                let f = h.get(i, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h.get(i, j) - &(&f * h.get(col + 1, j));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, col + 1) + &(&f * h.get(r, i));
                    h.set(r, col + 1, v);
                }
            }
        }
        // p_0 = 1, p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} prod_{i<m<=k} h_{m,m-1} p_{i-1}
        let mut ps: Vec<Poly> = vec![Poly::one(cond)];
        for k in 0..n {
            let mut pk = Poly::linear(h.get(k, k)).mul(&ps[k]);
            let mut prod = CycloScalar::one(cond);
            for i in (0..k).rev() {
                prod = &prod * h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i, k);
                if !c.is_zero() {
                    pk = pk.sub(&ps[i].scale(&c));
                }
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    pub fn lift(&self, conductor: u32) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            conductor,
            data: self.data.iter().map(|x| x.lift(conductor)).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_literal()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Companion matrix of `f`: ones on the subdiagonal and `-a_i / a_d` in the
/// last column.
pub fn companion(f: &Poly) -> Result<Matrix> {
    let d = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| GwaError::UnsupportedShape("companion of a constant".into()))?;
    if f.coeff(0).is_zero() {
        return Err(GwaError::ZeroConstantTerm);
    }
    let cond = f.conductor();
    let lead_inv = f.lead().inv().expect("nonzero lead");
    let mut m = Matrix::zeros(d, d, cond);
    for i in 1..d {
        m.set(i, i - 1, CycloScalar::one(cond));
    }
    for i in 0..d {
        m.set(i, d - 1, -(&f.coeff(i) * &lead_inv));
    }
    Ok(m)
}

/// Matrix of `sigma^k(M)`. The automorphism fixes every scalar of the ground
/// field, so the entries are unchanged.
pub fn matrix_sigma_twist(m: &Matrix, _p: u32, _k: i64) -> Matrix {
    m.clone()
}

/// Jordan block `J_a(xi)`, upper triangular.
pub fn jordan_block(xi: &CycloScalar, a: usize) -> Matrix {
    let mut m = Matrix::scalar(a, xi);
    for i in 0..a.saturating_sub(1) {
        m.set(i, i + 1, CycloScalar::one(xi.conductor()));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_of_linear() {
        let one = CycloScalar::one(3);
        let m = companion(&Poly::linear(&one)).unwrap();
        assert!(m.is_identity());
        let xi = CycloScalar::root_of_unity(1, 3);
        let m = companion(&Poly::linear(&xi)).unwrap();
        assert_eq!(m.get(0, 0), &xi);
    }

    #[test]
    fn companion_of_square() {
        let f = Poly::from_ints(&[1, -2, 1], 1);
        let m = companion(&f).unwrap();
        assert_eq!(m, Matrix::from_ints(&[&[0, -1], &[1, 2]], 1));
        assert_eq!(m.charpoly(), f);
    }

    #[test]
    fn companion_rejects_zero_constant() {
        let f = Poly::from_ints(&[0, 1, 1], 1);
        assert_eq!(companion(&f), Err(GwaError::ZeroConstantTerm));
    }

    #[test]
    fn charpoly_matches_determinant() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[4, 0, 5]], 1);
        let cp = m.charpoly();
        for x in -3..4 {
            let xs = CycloScalar::from_int(x, 1);
            let d = Matrix::scalar(3, &xs).sub(&m).det();
            assert_eq!(cp.eval(&xs), d);
        }
    }

    #[test]
    fn inverse_and_rank() {
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]], 1);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]], 1).rank(), 1);
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]], 1).inverse().is_none());
        let ns = Matrix::from_ints(&[&[1, 2], &[2, 4]], 1).nullspace();
        assert_eq!(ns.len(), 1);
    }

    #[test]
    fn sigma_twist_is_identity_on_entries() {
        let f = Poly::from_ints(&[1, -2, 1], 1);
        let m = companion(&f).unwrap();
        assert_eq!(matrix_sigma_twist(&m, 3, 0), m);
        assert_eq!(matrix_sigma_twist(&m, 3, 1), m);
    }
}
