//! Dense matrices over `Q(ζ_n)` with exact elimination.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cyclotomic::Cyclotomic;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<Cyclotomic>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(ζ_{}):", self.rows, self.cols, self.conductor)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                let c = self.get(i, j);
                match c.as_rational() {
                    Some(r) => write!(f, "{r}")?,
                    None => write!(f, "{c:?}")?,
                }
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Self {
            rows,
            cols,
            conductor,
            data: vec![Cyclotomic::zero(conductor); rows * cols],
        }
    }

    pub fn identity(k: usize, conductor: u32) -> Self {
        Self::scalar(k, &Cyclotomic::one(conductor))
    }

    pub fn scalar(k: usize, c: &Cyclotomic) -> Self {
        let mut m = Self::zeros(k, k, c.conductor());
        for i in 0..k {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> Cyclotomic,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            conductor,
            data,
        }
    }

    pub fn from_rationals(rows: usize, cols: usize, conductor: u32, entries: &[BigRational]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, conductor, |i, j| {
            Cyclotomic::from_rational(conductor, entries[i * cols + j].clone())
        })
    }

    pub fn from_ints(rows: usize, cols: usize, conductor: u32, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, conductor, |i, j| {
            Cyclotomic::from_int(conductor, entries[i * cols + j])
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
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
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect();
        Self { data, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect();
        Self { data, ..*self }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg_ref()).collect();
        Self { data, ..*self }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let data = self.data.iter().map(|a| a.mul_ref(c)).collect();
        Self { data, ..*self }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let data = self.data.iter().map(|a| a.scale(r)).collect();
        Self { data, ..*self }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.conductor);
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let c = self.get(i, j);
                    if i == j {
                        c.is_one()
                    } else {
                        c.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.conductor, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, `self` as the outer factor.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, self.conductor, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if a.is_zero() {
                return Cyclotomic::zero(self.conductor);
            }
            a.mul_ref(other.get(i % other.rows, j % other.cols))
        })
    }

    /// Block-diagonal matrix.
    pub fn block_diagonal(blocks: &[Matrix], conductor: u32) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols, conductor);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, self.conductor, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hstack(parts: &[&Matrix], rows: usize, conductor: u32) -> Self {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols, conductor);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix], cols: usize, conductor: u32) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols, conductor);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), self.conductor, |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, self.conductor, |i, j| self.get(rows[i], j).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j).mul_ref(&inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in col..m.cols {
                    let pv = m.get(row, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, j).sub_ref(&f.mul_ref(pv));
                    m.set(r, j, v);
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
        self.rref().1.len()
    }

    /// Basis of the null space, as columns.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len(), self.conductor);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, Cyclotomic::one(self.conductor));
            for (i, &p) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                if !v.is_zero() {
                    out.set(p, k, v.neg_ref());
                }
            }
        }
        out
    }

    /// A basis of the column space made of columns of `self`.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n, self.conductor)], n, self.conductor);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.get(n.wrapping_sub(1)).is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Some `x` with `self·x = rhs`, if one exists.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Self::hstack(&[self, rhs], self.rows, self.conductor);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols, self.conductor);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// `exp(self)` for a nilpotent matrix.
    pub fn exp_nilpotent(&self) -> Matrix {
        let n = self.rows;
        let mut acc = Self::identity(n, self.conductor);
        let mut term = Self::identity(n, self.conductor);
        for k in 1..=n as i64 {
            term = term.mul(self).scale_rational(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(self)` for a unipotent matrix.
    pub fn log_unipotent(&self) -> Matrix {
        let n = self.rows;
        let nil = self.sub(&Self::identity(n, self.conductor));
        let mut acc = Self::zeros(n, n, self.conductor);
        let mut term = Self::identity(n, self.conductor);
        for k in 1..=n as i64 {
            term = term.mul(&nil);
            if term.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.scale_rational(&BigRational::new(BigInt::from(sign), BigInt::from(k))));
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    /// Entries as rationals, if all are rational.
    pub fn as_rationals(&self) -> Option<Vec<BigRational>> {
        self.data.iter().map(|c| c.as_rational().cloned()).collect()
    }

    pub fn from_int_matrix(m: &crate::rootdata::IntMatrix, conductor: u32) -> Self {
        let n = m.dim();
        Self::from_fn(n, n, conductor, |i, j| Cyclotomic::from_int(conductor, m.get(i, j)))
    }
}

/// `op` restricted to the span of the columns of `basis`, assumed invariant:
/// the matrix `y` with `basis·y = op·basis`.
pub fn restrict(op: &Matrix, basis: &Matrix) -> Option<Matrix> {
    basis.solve(&op.mul(basis))
}

/// A quotient `Z / B` of column spans with `B ⊆ Z`, with coordinates on a
/// chosen complement.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// Basis of `B` followed by the complement, as columns.
    combined: Matrix,
    sub_dim: usize,
}

impl Subquotient {
    pub fn new(ambient_dim: usize, sub: &Matrix, space: &Matrix, conductor: u32) -> Self {
        let sub_basis = sub.column_basis();
        let stacked = Matrix::hstack(&[&sub_basis, space], ambient_dim, conductor);
        let (_, pivots) = stacked.rref();
        let combined = stacked.select_columns(&pivots);
        Self {
            combined,
            sub_dim: sub_basis.cols(),
        }
    }

    pub fn dim(&self) -> usize {
        self.combined.cols() - self.sub_dim
    }

    /// Representatives of a quotient basis, as columns.
    pub fn representatives(&self) -> Matrix {
        self.combined.block(0, self.sub_dim, self.combined.rows(), self.dim())
    }

    /// Matrix of the map induced on the quotient by `op`, which must preserve
    /// both spaces.
    pub fn induced(&self, op: &Matrix) -> Option<Matrix> {
        let image = op.mul(&self.representatives());
        let coords = self.combined.solve(&image)?;
        Some(coords.block(self.sub_dim, 0, self.dim(), self.dim()))
    }

    /// Quotient coordinates of vectors (columns) lying in the space.
    pub fn coordinates(&self, vectors: &Matrix) -> Option<Matrix> {
        let coords = self.combined.solve(vectors)?;
        Some(coords.block(self.sub_dim, 0, self.dim(), vectors.cols()))
    }
}
