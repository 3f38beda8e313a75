//! Dense matrices over a finite field. The field is passed to each operation.

use std::fmt;

use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(n: usize, s: Elem) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_vecs(cols: usize, vs: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(vs.len() * cols);
        for v in vs {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        Matrix { rows: vs.len(), cols, data }
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

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), o.shape());
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let base = i * o.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = f.mul_add(out.data[base + j], a, b);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if b != 0 {
                    *o = f.mul_add(*o, a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &Field, s: Elem) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, f: &Field) -> Matrix {
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn map(&self, g: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| g(a)).collect() }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            out.data[i * out.cols..i * out.cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * out.cols + self.cols..(i + 1) * out.cols].copy_from_slice(o.row(i));
        }
        out
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + o.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, o);
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self, f: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let fac = m.get(i, c);
                if fac == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v != 0 {
                        let w = m.get(i, j);
                        m.set(i, j, f.sub(w, f.mul(fac, v)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).pivots.len()
    }

    /// Basis of the row space (nonzero rows of the rref).
    pub fn row_space(&self, f: &Field) -> Matrix {
        let r = self.rref(f);
        let k = r.pivots.len();
        r.matrix.block(0, 0, k, self.cols)
    }

    /// Rows form a basis of `{x : A x = 0}`.
    pub fn nullspace(&self, f: &Field) -> Matrix {
        let r = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (pi, &pc) in r.pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.matrix.get(pi, fc)));
            }
        }
        out
    }

    /// Rows form a basis of `{v : v A = 0}`.
    pub fn left_kernel(&self, f: &Field) -> Matrix {
        self.transpose().nullspace(f)
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, f: &Field, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_rows(self.rows, 1, b.to_vec()));
        let r = aug.rref(f);
        if r.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (pi, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.matrix.get(pi, self.cols);
        }
        Some(x)
    }

    /// Some `X` with `X A = B`, if one exists.
    pub fn solve_left(&self, f: &Field, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.cols, self.cols);
        let at = self.transpose();
        let mut out = Matrix::zeros(b.rows, self.rows);
        for i in 0..b.rows {
            let x = at.solve(f, b.row(i))?;
            out.data[i * self.rows..(i + 1) * self.rows].copy_from_slice(&x);
        }
        Some(out)
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let r = self.hstack(&Matrix::identity(n)).rref(f);
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    /// Rows extending the (independent) rows of `self` to a basis of the ambient space.
    pub fn complement(&self, f: &Field) -> Matrix {
        let r = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &c) in free.iter().enumerate() {
            out.set(k, c, 1);
        }
        out
    }

    /// Coordinates of the rows of `v` in the basis given by the rows of `self`.
    pub fn coordinates(&self, f: &Field, v: &Matrix) -> Option<Matrix> {
        self.solve_left(f, v)
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &Field, p: &Poly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self).add(f, &Matrix::scalar(n, c));
        }
        acc
    }

    /// Minimal polynomial (monic), via Krylov sequences of the unit vectors.
    pub fn minpoly(&self, f: &Field) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Poly::one();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            // skip e if acc(A) already kills it
            let annihilated = acc_kills(f, self, &acc, &e);
            if annihilated {
                continue;
            }
            let local = krylov_minpoly(f, self, &e);
            let g = acc.gcd(f, &local);
            acc = acc.mul(f, &local).divrem(f, &g).0.monic(f);
        }
        acc
    }

    pub fn trace(&self, f: &Field) -> Elem {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }
}

fn acc_kills(f: &Field, a: &Matrix, p: &Poly, v: &[Elem]) -> bool {
    // v * p(A) == 0, evaluated with Horner on the vector
    let mut w = vec![0; v.len()];
    for &c in p.coeffs().iter().rev() {
        w = a.vec_mul(f, &w);
        for (wi, &vi) in w.iter_mut().zip(v) {
            *wi = f.mul_add(*wi, c, vi);
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Minimal polynomial of `v` under right multiplication by `a`.
fn krylov_minpoly(f: &Field, a: &Matrix, v: &[Elem]) -> Poly {
    let n = v.len();
    let mut seq: Vec<Vec<Elem>> = vec![v.to_vec()];
    loop {
        let k = seq.len();
        let next = a.vec_mul(f, seq.last().unwrap());
        // solve next = sum c_i seq[i]
        let basis = Matrix::from_vecs(n, &seq);
        if let Some(c) = basis.transpose().solve(f, &next) {
            let mut coeffs: Vec<Elem> = c.iter().map(|&x| f.neg(x)).collect();
            coeffs.push(1);
            return Poly::from_coeffs(f, coeffs);
        }
        assert!(k <= n, "Krylov sequence longer than dimension");
        seq.push(next);
    }
}

/// Particular solution plus a basis (rows) of the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Elem>,
    pub nullspace: Matrix,
}

/// Solves `A x = b` for a column `b`; `Ok(None)` if inconsistent.
pub fn solve_system(f: &Field, a: &Matrix, b: &Matrix) -> Result<Option<AffineSolution>> {
    if a.rows() != b.rows() || b.cols() != 1 {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    Ok(a.solve(f, &b.col(0)).map(|particular| AffineSolution { particular, nullspace: a.nullspace(f) }))
}

/// Incrementally built row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                vec_axpy(f, &mut v, f.neg(c), r);
            }
        }
        v
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns true if the rank grew.
    pub fn insert(&mut self, f: &Field, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(f, v);
        let Some(p) = r.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(r[p]);
        self.rows.push((p, vec_scale(f, &r, inv)));
        true
    }

    pub fn to_matrix(&self) -> Matrix {
        let vs: Vec<Vec<Elem>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        Matrix::from_vecs(self.dim, &vs)
    }
}

/// Vector helpers.
pub fn vec_add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(f: &Field, a: &[Elem], s: Elem) -> Vec<Elem> {
    a.iter().map(|&x| f.mul(x, s)).collect()
}

pub fn vec_axpy(f: &Field, y: &mut [Elem], s: Elem, x: &[Elem]) {
    if s == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.mul_add(*yi, s, xi);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(7);
        let a = Matrix::from_rows(3, 3, vec![1, 2, 3, 0, 1, 4, 5, 6, 0]);
        let ai = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &ai), Matrix::identity(3));
        let s = Matrix::from_rows(2, 2, vec![1, 2, 2, 4]);
        assert!(s.inverse(&f).is_none());
    }

    #[test]
    fn kernels() {
        let f = gf(5);
        let a = Matrix::from_rows(2, 3, vec![1, 2, 3, 2, 4, 1]);
        let n = a.nullspace(&f);
        assert_eq!(n.rows(), 3 - a.rank(&f));
        assert!(a.mul(&f, &n.transpose()).is_zero());
        let l = a.left_kernel(&f);
        assert!(l.mul(&f, &a).is_zero());
    }

    #[test]
    fn solve_and_solve_left() {
        let f = gf(11);
        let a = Matrix::from_rows(2, 2, vec![3, 1, 4, 1]);
        let x = a.solve(&f, &[5, 9]).unwrap();
        assert_eq!(a.mul(&f, &Matrix::from_rows(2, 1, x)).data(), &[5, 9]);
        let b = Matrix::from_rows(1, 2, vec![7, 2]);
        let y = a.solve_left(&f, &b).unwrap();
        assert_eq!(y.mul(&f, &a), b);
        let z = Matrix::from_rows(2, 2, vec![1, 1, 1, 1]);
        assert!(z.solve(&f, &[1, 0]).is_none());
    }

    #[test]
    fn minpoly_of_jordan_block() {
        let f = gf(3);
        // J_2(1) (+) [1]: minimal polynomial (x-1)^2
        let a = Matrix::from_rows(3, 3, vec![1, 1, 0, 0, 1, 0, 0, 0, 1]);
        let mp = a.minpoly(&f);
        assert_eq!(mp, Poly::linear(&f, 1).pow(&f, 2));
        assert!(a.eval_poly(&f, &mp).is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn rank_nullity(data in proptest::collection::vec(0u64..5, 12)) {
                let f = gf(5);
                let a = Matrix::from_rows(3, 4, data);
                prop_assert_eq!(a.rank(&f) + a.nullspace(&f).rows(), 4);
                prop_assert_eq!(a.rank(&f), a.transpose().rank(&f));
            }

            #[test]
            fn minpoly_annihilates(data in proptest::collection::vec(0u64..3, 16)) {
                let f = gf(3);
                let a = Matrix::from_rows(4, 4, data);
                let mp = a.minpoly(&f);
                prop_assert!(a.eval_poly(&f, &mp).is_zero());
                // no proper divisor annihilates
                for (g, _) in mp.factor(&f).unwrap() {
                    let q = mp.divrem(&f, &g).0;
                    prop_assert!(!a.eval_poly(&f, &q).is_zero());
                }
            }
        }
    }
}
