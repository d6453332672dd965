//! Dense linear algebra over F_q (scalar encoding of [`ScalarField`]).

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::gf::ScalarField;

/// Row-major matrix with entries in F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: u32) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_vec(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Row-major entries.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, sf: &ScalarField) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(i, t)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(t, j)];
                    if b != 0 {
                        let cur = out[(i, j)];
                        out[(i, j)] = sf.add(cur, sf.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, sf: &ScalarField) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sf.add(a, b))
            .collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix, sf: &ScalarField) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sf.sub(a, b))
            .collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u32, sf: &ScalarField) -> Matrix {
        let data = self.data.iter().map(|&a| sf.mul(a, c)).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    /// Entrywise a ↦ a^{p^rho}.
    pub fn frobenius(&self, rho: u32, sf: &ScalarField) -> Matrix {
        let data = self.data.iter().map(|&a| sf.frobenius(a, rho)).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn rank(&self, sf: &ScalarField) -> usize {
        let mut work = self.clone();
        work.rref_in_place(sf).len()
    }

    /// Reduces to reduced row echelon form, returning the pivot columns.
    pub fn rref_in_place(&mut self, sf: &ScalarField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = sf.inv(self[(r, c)]).expect("nonzero pivot");
            for j in c..self.cols {
                self[(r, j)] = sf.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f == 0 {
                    continue;
                }
                let nf = sf.neg(f);
                for j in c..self.cols {
                    let v = self[(r, j)];
                    if v != 0 {
                        self[(i, j)] = sf.add(self[(i, j)], sf.mul(nf, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of {x : self · x = 0}.
    pub fn nullspace(&self, sf: &ScalarField) -> Vec<Vec<u32>> {
        let mut work = self.clone();
        let pivots = work.rref_in_place(sf);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = sf.neg(work[(r, f)]);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, sf: &ScalarField) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let pivots = aug.rref_in_place(sf);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, sf: &ScalarField) -> bool {
        self.rows == self.cols && self.rank(sf) == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        &mut self.data[i * self.cols + j]
    }
}

/// An F_q-subspace of F_q^len held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(len: usize) -> Self {
        Subspace {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span<I, V>(len: usize, vectors: I, sf: &ScalarField) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut s = Subspace::new(len);
        for v in vectors {
            s.insert(v.as_ref(), sf);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn reduce(&self, v: &[u32], sf: &ScalarField) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                let nf = sf.neg(f);
                for (x, &r) in w.iter_mut().zip(row) {
                    if r != 0 {
                        *x = sf.add(*x, sf.mul(nf, r));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32], sf: &ScalarField) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(v, sf).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u32], sf: &ScalarField) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = self.reduce(v, sf);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = sf.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = sf.mul(*x, inv);
        }
        // keep rows fully reduced
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                let nf = sf.neg(f);
                for (x, &r) in row.iter_mut().zip(&w) {
                    if r != 0 {
                        *x = sf.add(*x, sf.mul(nf, r));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, pc);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace, sf: &ScalarField) -> bool {
        self.rows.iter().all(|r| other.contains(r, sf))
    }

    pub fn same_as(&self, other: &Subspace, sf: &ScalarField) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other, sf)
    }

    /// Enumerates all q^dim vectors of the span.
    pub fn elements<'a>(&'a self, sf: &'a ScalarField) -> impl Iterator<Item = Vec<u32>> + 'a {
        let q = sf.q() as u64;
        let total = q.pow(self.dim() as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; self.len];
            for row in &self.rows {
                let c = (idx % q) as u32;
                idx /= q;
                if c != 0 {
                    for (x, &r) in v.iter_mut().zip(row) {
                        if r != 0 {
                            *x = sf.add(*x, sf.mul(c, r));
                        }
                    }
                }
            }
            v
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    #[test]
    fn rank_and_nullspace() {
        let f = Field::new(3, 1, 1, None).unwrap();
        let sf = f.scalars();
        let m = Matrix::from_rows(&[vec![1, 2, 0, 1], vec![2, 1, 1, 2], vec![0, 0, 1, 0]]);
        assert_eq!(m.rank(sf), 2);
        let ns = m.nullspace(sf);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = Matrix::from_vec(4, 1, v);
            assert!(m.mul(&col, sf).is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(5, 1, 1, None).unwrap();
        let sf = f.scalars();
        let m = Matrix::from_rows(&[vec![2, 1, 0], vec![0, 3, 4], vec![1, 0, 2]]);
        let inv = m.inverse(sf).unwrap();
        assert_eq!(m.mul(&inv, sf), Matrix::identity(3));
        let sing = Matrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse(sf).is_none());
    }

    #[test]
    fn subspace_membership() {
        let f = Field::new(2, 1, 1, None).unwrap();
        let sf = f.scalars();
        let s = Subspace::span(3, [vec![1, 1, 0], vec![0, 1, 1]], sf);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 1], sf));
        assert!(!s.contains(&[1, 0, 0], sf));
        assert_eq!(s.elements(sf).count(), 4);
    }
}
