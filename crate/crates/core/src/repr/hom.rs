use crate::error::{Error, Result};
use crate::linalg::{Elem, Matrix};

use super::module::{ModMap, Module};

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: Module,
    pub tgt: Module,
    pub basis: Vec<ModMap>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum c_k basis[k]`.
    pub fn combination(&self, coeffs: &[Elem]) -> ModMap {
        let mut acc = ModMap::zero(&self.src, &self.tgt);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Offsets of the per-vertex blocks `F_v` in the unknown vector.
fn var_offsets(m: &Module, n: &Module) -> Vec<usize> {
    let mut off = vec![0];
    for v in 0..m.dims().len() {
        off.push(off[v] + m.dim_at(v) * n.dim_at(v));
    }
    off
}

/// Constraint matrix (one row per scalar equation) of `M_a F_t = F_s N_a`.
pub(crate) fn hom_constraints(m: &Module, n: &Module) -> (Matrix, Vec<usize>) {
    let f = m.field();
    let q = m.algebra().quiver();
    let off = var_offsets(m, n);
    let nvars = *off.last().unwrap();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for a in 0..q.num_arrows() {
        let ar = q.arrow(a);
        let (s, t) = (ar.source, ar.target);
        let (ma, na) = (m.mat(a), n.mat(a));
        for i in 0..m.dim_at(s) {
            for j in 0..n.dim_at(t) {
                let mut row = vec![0; nvars];
                for k in 0..m.dim_at(t) {
                    let c = ma.get(i, k);
                    if c != 0 {
                        let idx = off[t] + k * n.dim_at(t) + j;
                        row[idx] = f.add(row[idx], c);
                    }
                }
                for k in 0..n.dim_at(s) {
                    let c = na.get(k, j);
                    if c != 0 {
                        let idx = off[s] + i * n.dim_at(s) + k;
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    (Matrix::from_vecs(nvars, &rows), off)
}

pub(crate) fn unpack(m: &Module, n: &Module, off: &[usize], x: &[Elem]) -> Vec<Matrix> {
    (0..m.dims().len())
        .map(|v| Matrix::from_rows(m.dim_at(v), n.dim_at(v), x[off[v]..off[v + 1]].to_vec()))
        .collect()
}

pub fn hom(m: &Module, n: &Module) -> Result<HomSpace> {
    if !m.same_algebra(n) {
        return Err(Error::InvalidInput("modules over different algebras".into()));
    }
    let f = m.field();
    let (c, off) = hom_constraints(m, n);
    let ns = c.nullspace(f);
    let basis = ns
        .row_vecs()
        .iter()
        .map(|x| ModMap { src: m.clone(), tgt: n.clone(), mats: unpack(m, n, &off, x) })
        .collect();
    Ok(HomSpace { src: m.clone(), tgt: n.clone(), basis })
}

pub fn end(m: &Module) -> HomSpace {
    hom(m, m).expect("same algebra")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{projective, simple, Algebra, AlgebraPresentation, Quiver};
    use crate::linalg::Field;

    fn a2() -> Arc<Algebra> {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap())
    }

    #[test]
    fn yoneda_and_simples() {
        let a = a2();
        let p0 = projective(&a, 0).unwrap();
        let p1 = projective(&a, 1).unwrap();
        let s0 = simple(&a, 0).unwrap();
        let s1 = simple(&a, 1).unwrap();
        for m in [&p0, &p1, &s0, &s1] {
            for i in 0..2 {
                let p = projective(&a, i).unwrap();
                assert_eq!(hom(&p, m).unwrap().dim(), m.dim_at(i));
            }
        }
        assert_eq!(hom(&s0, &s1).unwrap().dim(), 0);
        // the arrow gives the only map between the two projectives
        assert_eq!(hom(&p1, &p0).unwrap().dim(), 1);
        assert_eq!(hom(&p0, &p1).unwrap().dim(), 0);
        for b in &hom(&p1, &p0).unwrap().basis {
            assert!(b.is_homomorphism());
        }
    }
}
