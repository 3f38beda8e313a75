//! Length-stratified normal forms for `kQ / (relations)`.

use std::collections::HashMap;

use super::quiver::{AlgebraPresentation, Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Elem, Field, Matrix};

/// Sparse vector over the path basis: `(basis index, coefficient)`, sorted by index.
pub type SparseVec = Vec<(usize, Elem)>;

pub const DEFAULT_LENGTH_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct Algebra {
    pres: AlgebraPresentation,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `prefix[p] = (b, a)` with `basis[p] = basis[b] * a`; `None` for idempotents.
    prefix: Vec<Option<(usize, usize)>>,
    right_mul: Vec<Vec<SparseVec>>,
    mul: Vec<Vec<SparseVec>>,
    minimal: Vec<usize>,
    pair: Vec<Vec<Vec<usize>>>,
}

fn add_into(f: &Field, acc: &mut HashMap<usize, Elem>, k: usize, c: Elem) {
    if c == 0 {
        return;
    }
    let e = acc.entry(k).or_insert(0);
    *e = f.add(*e, c);
}

fn finish(acc: HashMap<usize, Elem>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort_unstable();
    v
}

/// Builds the algebra, stratifying by arrow weight.
pub fn build_algebra(pres: &AlgebraPresentation, length_cap: usize) -> Result<Algebra> {
    pres.validate()?;
    let f = &pres.field;
    let q = &pres.quiver;
    let nv = q.num_vertices();
    let na = q.num_arrows();
    let maxw = q.arrows().iter().map(|a| a.weight).max().unwrap_or(1) as usize;

    let mut basis: Vec<Path> = (0..nv).map(Path::trivial).collect();
    let mut prefix: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut right_mul: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); na]; nv];
    let mut strata: Vec<Vec<usize>> = vec![(0..nv).collect()];
    let mut minimal = Vec::new();

    let rel_w: Vec<usize> = pres.relations.iter().map(|r| r.terms[0].1.weight(q) as usize).collect();

    let mut zero_run = 0usize;
    let mut ell = 0usize;
    while zero_run < maxw {
        ell += 1;
        if ell > length_cap {
            return Err(Error::NotFiniteDimensional(length_cap));
        }
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for a in 0..na {
            let w = q.arrow(a).weight as usize;
            if w > ell {
                continue;
            }
            for &b in &strata[ell - w] {
                if basis[b].target == q.arrow(a).source {
                    cands.push((b, a));
                }
            }
        }
        cands.sort_unstable();
        let col: HashMap<(usize, usize), usize> = cands.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        // b * r in candidate coordinates; multiplication below weight ell is already known
        let gen_vector = |b: usize, r: &Relation, right_mul: &Vec<Vec<SparseVec>>| -> Vec<Elem> {
            let mut out = vec![0; cands.len()];
            for (c, path) in &r.terms {
                let mut cur: SparseVec = vec![(b, *c)];
                let (last, init) = path.arrows.split_last().unwrap();
                for &a in init {
                    let mut acc = HashMap::new();
                    for &(bi, cb) in &cur {
                        for &(k, ck) in &right_mul[bi][a] {
                            add_into(f, &mut acc, k, f.mul(cb, ck));
                        }
                    }
                    cur = finish(acc);
                }
                for &(bi, cb) in &cur {
                    let j = col[&(bi, *last)];
                    out[j] = f.add(out[j], cb);
                }
            }
            out
        };

        let mut ech = Echelon::new(cands.len());
        for (ri, r) in pres.relations.iter().enumerate() {
            let w = rel_w[ri];
            if w >= ell || cands.is_empty() {
                continue;
            }
            for &b in &strata[ell - w] {
                if basis[b].target == r.source() {
                    ech.insert(f, &gen_vector(b, r, &right_mul));
                }
            }
        }
        for (ri, r) in pres.relations.iter().enumerate() {
            if rel_w[ri] == ell && ech.insert(f, &gen_vector(r.source(), r, &right_mul)) {
                minimal.push(ri);
            }
        }

        let red = ech.to_matrix().rref(f);
        let pivots = &red.pivots;
        let mut stratum = Vec::new();
        let mut new_index = vec![usize::MAX; cands.len()];
        for (j, &(b, a)) in cands.iter().enumerate() {
            if pivots.binary_search(&j).is_ok() {
                continue;
            }
            let mut p = basis[b].clone();
            p.arrows.push(a);
            p.target = q.arrow(a).target;
            let k = basis.len();
            basis.push(p);
            prefix.push(Some((b, a)));
            right_mul.push(vec![Vec::new(); na]);
            new_index[j] = k;
            stratum.push(k);
            right_mul[b][a] = vec![(k, 1)];
        }
        for (ri, &pc) in pivots.iter().enumerate() {
            let (b, a) = cands[pc];
            let mut v: SparseVec = Vec::new();
            for j in 0..cands.len() {
                let c = red.matrix.get(ri, j);
                if c != 0 && j != pc {
                    v.push((new_index[j], f.neg(c)));
                }
            }
            v.sort_unstable();
            right_mul[b][a] = v;
        }
        if stratum.is_empty() {
            zero_run += 1;
        } else {
            zero_run = 0;
        }
        strata.push(stratum);
    }

    let dim = basis.len();
    let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    // mul[x][p] = x * basis[p], by induction on the prefix of p
    let mut mul: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for (x, row) in mul.iter_mut().enumerate() {
        for p in 0..dim {
            row[p] = match prefix[p] {
                None => {
                    if basis[x].target == basis[p].source {
                        vec![(x, 1)]
                    } else {
                        Vec::new()
                    }
                }
                Some((b, a)) => {
                    let mut acc = HashMap::new();
                    for &(bi, cb) in &row[b] {
                        for &(k, ck) in &right_mul[bi][a] {
                            add_into(f, &mut acc, k, f.mul(cb, ck));
                        }
                    }
                    finish(acc)
                }
            };
        }
    }

    let mut pair = vec![vec![Vec::new(); nv]; nv];
    for (i, p) in basis.iter().enumerate() {
        pair[p.source][p.target].push(i);
    }

    let alg = Algebra { pres: pres.clone(), basis, index, prefix, right_mul, mul, minimal, pair };
    debug_assert!(dim > 12 || alg.is_associative());
    Ok(alg)
}

impl Algebra {
    pub fn new(pres: &AlgebraPresentation) -> Result<Algebra> {
        build_algebra(pres, DEFAULT_LENGTH_CAP)
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    pub fn field(&self) -> &Field {
        &self.pres.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.pres.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.pres.relations
    }

    /// Indices of a minimal generating subset of the relations.
    pub fn minimal_relations(&self) -> &[usize] {
        &self.minimal
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.pres.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn prefix(&self, i: usize) -> Option<(usize, usize)> {
        self.prefix[i]
    }

    /// Basis paths from `s` to `t`.
    pub fn paths_between(&self, s: usize, t: usize) -> &[usize] {
        &self.pair[s][t]
    }

    pub fn paths_from(&self, s: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == s).collect()
    }

    pub fn paths_to(&self, t: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].target == t).collect()
    }

    pub fn source(&self, i: usize) -> usize {
        self.basis[i].source
    }

    pub fn target(&self, i: usize) -> usize {
        self.basis[i].target
    }

    /// Grading degree of a basis path.
    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree(&self.pres.quiver)
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.dim()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn is_graded_trivially(&self) -> bool {
        self.max_degree() == 0
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i][j]
    }

    pub fn right_mul_arrow(&self, i: usize, a: usize) -> &SparseVec {
        &self.right_mul[i][a]
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn idempotent(&self, v: usize) -> Vec<Elem> {
        self.unit(v)
    }

    pub fn one(&self) -> Vec<Elem> {
        let mut v = self.zero();
        for i in 0..self.num_vertices() {
            v[i] = 1;
        }
        v
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.mul[i][j] {
                    out[k] = f.mul_add(out[k], ab, c);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[Elem], s: Elem) -> Vec<Elem> {
        let f = self.field();
        x.iter().map(|&a| f.mul(a, s)).collect()
    }

    /// Image of an arbitrary path of the quiver.
    pub fn path_element(&self, p: &Path) -> Vec<Elem> {
        let f = self.field();
        let mut cur = self.unit(p.source);
        for &a in &p.arrows {
            let mut next = self.zero();
            for (i, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &(k, ck) in &self.right_mul[i][a] {
                    next[k] = f.mul_add(next[k], c, ck);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn relation_element(&self, r: &Relation) -> Vec<Elem> {
        let mut out = self.zero();
        for (c, p) in &r.terms {
            out = self.add(&out, &self.scale(&self.path_element(p), *c));
        }
        out
    }

    /// True when the coefficients at all trivial paths vanish.
    pub fn in_radical(&self, x: &[Elem]) -> bool {
        x[..self.num_vertices()].iter().all(|&c| c == 0)
    }

    /// Radical layer of a basis element: its path length.
    pub fn length(&self, i: usize) -> usize {
        self.basis[i].len()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.unit(i), &self.unit(j));
                for k in 0..n {
                    let l = self.mul(&ij, &self.unit(k));
                    let jk = self.mul(&self.unit(j), &self.unit(k));
                    let r = self.mul(&self.unit(i), &jk);
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Structure constants of left multiplication by `x`, as a matrix on row vectors:
    /// row `j` is `x * basis[j]`.
    pub fn left_mul_matrix(&self, x: &[Elem]) -> Matrix {
        let n = self.dim();
        let rows: Vec<Vec<Elem>> = (0..n).map(|j| self.mul(x, &self.unit(j))).collect();
        Matrix::from_vecs(n, &rows)
    }

    pub fn element_display(&self, x: &[Elem]) -> String {
        let q = self.quiver();
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let p = self.basis[i].display(q);
                if c == 1 {
                    p
                } else {
                    format!("{c}{p}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Algebra {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(3, &[("alpha", 0, 1), ("beta", 1, 2), ("gamma", 2, 0)]).unwrap();
        let r = Relation::monomial(q.parse_path("alpha*beta").unwrap());
        Algebra::new(&AlgebraPresentation::new(f, q, vec![r]).unwrap()).unwrap()
    }

    #[test]
    fn a2_has_dimension_three() {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        let a = Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.is_associative());
    }

    #[test]
    fn three_cycle_basis() {
        let a = three_cycle();
        let shown: Vec<String> = a.basis().iter().map(|p| p.display(a.quiver())).collect();
        assert_eq!(
            shown,
            vec!["e0", "e1", "e2", "alpha", "beta", "gamma", "beta*gamma", "gamma*alpha", "beta*gamma*alpha"]
        );
        assert!(a.is_associative());
        assert_eq!(a.minimal_relations(), &[0]);
    }

    #[test]
    fn loop_is_infinite() {
        let f = Field::prime(7).unwrap();
        let q = Quiver::from_parts(1, &[("x", 0, 0)]).unwrap();
        let pres = AlgebraPresentation::new(f, q, vec![]).unwrap();
        assert_eq!(build_algebra(&pres, 10).unwrap_err(), Error::NotFiniteDimensional(10));
    }

    #[test]
    fn commutative_square() {
        let f = Field::prime(5).unwrap();
        let q = Quiver::from_parts(4, &[("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)]).unwrap();
        let r = Relation::new(vec![(1, q.parse_path("a*b").unwrap()), (4, q.parse_path("c*d").unwrap())]);
        let redundant = Relation::new(vec![(2, q.parse_path("a*b").unwrap()), (3, q.parse_path("c*d").unwrap())]);
        let alg = Algebra::new(&AlgebraPresentation::new(f, q.clone(), vec![r, redundant]).unwrap()).unwrap();
        assert_eq!(alg.dim(), 9);
        assert_eq!(alg.minimal_relations(), &[0]);
        let ab = alg.path_element(&q.parse_path("a*b").unwrap());
        let cd = alg.path_element(&q.parse_path("c*d").unwrap());
        assert_eq!(ab, cd);
        assert!(alg.is_associative());
    }
}
