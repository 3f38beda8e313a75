//! `A`-`A` bimodules on vertex-pair components, the bimodule `Ext^2(DA, A)`,
//! and tensor products over `A`.

use std::sync::Arc;

use crate::algebra::{
    global_dimension, injective, min_proj_resolution, vector_to_elements, Algebra, GlobalDimension, Path, ProjMap,
    Resolution,
};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Field, Matrix};
use crate::repr::ModMap;
use crate::serre::functor::nakayama_block;

/// Basis vector `k` lies in `e_{left[k]} B e_{right[k]}`. Actions on row vectors:
/// coordinates of `a x` are `x lact[a]`, those of `x a` are `x ract[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub lact: Vec<Matrix>,
    pub ract: Vec<Matrix>,
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.left.len()
    }

    /// `dims[l][r] = dim e_l B e_r`.
    pub fn pair_dims(&self, nv: usize) -> Vec<Vec<usize>> {
        let mut d = vec![vec![0; nv]; nv];
        for (&l, &r) in self.left.iter().zip(&self.right) {
            d[l][r] += 1;
        }
        d
    }

    /// `A` itself.
    pub fn regular(alg: &Algebra) -> Bimodule {
        let n = alg.dim();
        let q = alg.quiver();
        let mut lact = Vec::new();
        let mut ract = Vec::new();
        for a in 0..q.num_arrows() {
            let ael = alg.path_element(&Path::new(q, vec![a]).expect("arrow"));
            let mut l = Matrix::zeros(n, n);
            let mut r = Matrix::zeros(n, n);
            for i in 0..n {
                let ai = alg.mul(&ael, &alg.unit(i));
                let ia = alg.mul(&alg.unit(i), &ael);
                for j in 0..n {
                    l.set(i, j, ai[j]);
                    r.set(i, j, ia[j]);
                }
            }
            lact.push(l);
            ract.push(r);
        }
        Bimodule { left: (0..n).map(|i| alg.source(i)).collect(), right: (0..n).map(|i| alg.target(i)).collect(), lact, ract }
    }

    fn path_left(&self, f: &Field, arrows: &[usize]) -> Matrix {
        arrows.iter().rev().fold(Matrix::identity(self.dim()), |m, &a| m.mul(f, &self.lact[a]))
    }

    fn path_right(&self, f: &Field, arrows: &[usize]) -> Matrix {
        arrows.iter().fold(Matrix::identity(self.dim()), |m, &a| m.mul(f, &self.ract[a]))
    }

    /// Actions respect the vertex grading, satisfy the relations, and commute.
    pub fn is_bimodule(&self, alg: &Algebra) -> bool {
        let f = alg.field();
        let q = alg.quiver();
        let n = self.dim();
        for (a, ar) in q.arrows().iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let (l, r) = (self.lact[a].get(i, j), self.ract[a].get(i, j));
                    let lok = l == 0 || (self.left[i] == ar.target && self.left[j] == ar.source && self.right[i] == self.right[j]);
                    let rok = r == 0 || (self.right[i] == ar.source && self.right[j] == ar.target && self.left[i] == self.left[j]);
                    if !lok || !rok {
                        return false;
                    }
                }
            }
            for b in 0..q.num_arrows() {
                if self.lact[a].mul(f, &self.ract[b]) != self.ract[b].mul(f, &self.lact[a]) {
                    return false;
                }
            }
        }
        alg.relations().iter().all(|rel| {
            let mut l = Matrix::zeros(n, n);
            let mut r = Matrix::zeros(n, n);
            for (c, p) in &rel.terms {
                l = l.add(f, &self.path_left(f, &p.arrows).scale(f, *c));
                r = r.add(f, &self.path_right(f, &p.arrows).scale(f, *c));
            }
            l.is_zero() && r.is_zero()
        })
    }

    /// `B (x)_A C`, the cokernel of `(x a) (x) y - x (x) (a y)` on `(+)_v B e_v (x) e_v C`.
    pub fn tensor(&self, alg: &Algebra, c: &Bimodule) -> Bimodule {
        let f = alg.field();
        let q = alg.quiver();
        let mut index = vec![vec![usize::MAX; c.dim()]; self.dim()];
        let mut pairs = Vec::new();
        for b in 0..self.dim() {
            for g in 0..c.dim() {
                if self.right[b] == c.left[g] {
                    index[b][g] = pairs.len();
                    pairs.push((b, g));
                }
            }
        }
        let n = pairs.len();
        let mut rels = Vec::new();
        for (a, ar) in q.arrows().iter().enumerate() {
            for b in (0..self.dim()).filter(|&b| self.right[b] == ar.source) {
                for g in (0..c.dim()).filter(|&g| c.left[g] == ar.target) {
                    let mut v = vec![0; n];
                    for b2 in 0..self.dim() {
                        let s = self.ract[a].get(b, b2);
                        if s != 0 {
                            let k = index[b2][g];
                            v[k] = f.add(v[k], s);
                        }
                    }
                    for g2 in 0..c.dim() {
                        let s = c.lact[a].get(g, g2);
                        if s != 0 {
                            let k = index[b][g2];
                            v[k] = f.sub(v[k], s);
                        }
                    }
                    rels.push(v);
                }
            }
        }
        let quot = Quotient::new(f, n, &rels);
        let lifts: Vec<(usize, usize)> = quot.free.iter().map(|&k| pairs[k]).collect();
        let act = |left: bool, a: usize| -> Matrix {
            let rows: Vec<Vec<Elem>> = lifts
                .iter()
                .map(|&(b, g)| {
                    let mut v = vec![0; n];
                    if left {
                        for b2 in 0..self.dim() {
                            let s = self.lact[a].get(b, b2);
                            if s != 0 {
                                v[index[b2][g]] = f.add(v[index[b2][g]], s);
                            }
                        }
                    } else {
                        for g2 in 0..c.dim() {
                            let s = c.ract[a].get(g, g2);
                            if s != 0 {
                                v[index[b][g2]] = f.add(v[index[b][g2]], s);
                            }
                        }
                    }
                    quot.project(f, &v)
                })
                .collect();
            Matrix::from_vecs(lifts.len(), &rows)
        };
        Bimodule {
            left: lifts.iter().map(|&(b, _)| self.left[b]).collect(),
            right: lifts.iter().map(|&(_, g)| c.right[g]).collect(),
            lact: (0..q.num_arrows()).map(|a| act(true, a)).collect(),
            ract: (0..q.num_arrows()).map(|a| act(false, a)).collect(),
        }
    }
}

/// `V / R` with the non-pivot coordinates of the reduced row echelon form as basis.
pub(crate) struct Quotient {
    rref: Matrix,
    pivots: Vec<usize>,
    pub free: Vec<usize>,
}

impl Quotient {
    pub(crate) fn new(f: &Field, n: usize, rels: &[Vec<Elem>]) -> Quotient {
        let r = Matrix::from_vecs(n, rels).rref(f);
        let free = (0..n).filter(|c| !r.pivots.contains(c)).collect();
        Quotient { rref: r.matrix, pivots: r.pivots, free }
    }

    pub(crate) fn project(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                crate::linalg::matrix::vec_axpy(f, &mut v, f.neg(c), self.rref.row(i));
            }
        }
        self.free.iter().map(|&k| v[k]).collect()
    }
}

/// The vector of `e_u` in the fiber of `(+)_w P_{verts[w]}` at `verts[u]`.
fn generator_vector(alg: &Algebra, verts: &[usize], u: usize) -> Vec<Elem> {
    let v = verts[u];
    let mut off = 0;
    for &w in &verts[..u] {
        off += alg.paths_between(w, v).len();
    }
    let total: usize = verts.iter().map(|&w| alg.paths_between(w, v).len()).sum();
    let pos = alg.paths_between(v, v).iter().position(|&i| i == v).expect("idempotent");
    let mut x = vec![0; total];
    x[off + pos] = 1;
    x
}

/// Components `F_k: P_k -> P'_k` of a chain map over `phi: M -> M'`.
fn lift_chain_map(alg: &Arc<Algebra>, src: &Resolution, tgt: &Resolution, phi: &ModMap) -> Result<Vec<ProjMap>> {
    let f = alg.field();
    let mut out: Vec<ProjMap> = Vec::new();
    for k in 0..src.terms.len() {
        let s = &src.terms[k];
        let t: Vec<usize> = tgt.terms.get(k).cloned().unwrap_or_default();
        let mut fk = ProjMap::zero(alg, s, &t);
        if !t.is_empty() {
            let tmap = if k == 0 { tgt.augmentation.clone() } else { tgt.differentials[k - 1].to_modmap(alg) };
            let smap = if k == 0 { src.augmentation.clone() } else { src.differentials[k - 1].to_modmap(alg) };
            let prev = if k == 0 { phi.clone() } else { out[k - 1].to_modmap(alg) };
            for u in 0..s.len() {
                let v = s[u];
                let g = generator_vector(alg, s, u);
                let y = prev.mats[v].vec_mul(f, &smap.mats[v].vec_mul(f, &g));
                let x = tmap.mats[v]
                    .solve_left(f, &Matrix::from_vecs(y.len(), &[y]))
                    .ok_or_else(|| Error::Inconsistent("chain map does not lift".into()))?;
                for (w, e) in vector_to_elements(alg, &t, v, x.row(0)).into_iter().enumerate() {
                    fk.entries[w][u] = e;
                }
            }
        }
        out.push(fk);
    }
    Ok(out)
}

/// Coordinates on `Hom((+)_u P_{verts[u]}, A) = (+)_u A e_{verts[u]}`.
fn hom_to_regular_index(alg: &Algebra, verts: &[usize]) -> Vec<(usize, usize)> {
    let mut idx = Vec::new();
    for (u, &v) in verts.iter().enumerate() {
        for p in alg.paths_to(v) {
            idx.push((u, p));
        }
    }
    idx
}

/// `E = Ext^2(DA, A)` from minimal resolutions of the indecomposable injectives.
/// `E e_i = Ext^2(I_i, A)`; the left action comes from `A`, the right one from
/// lifting `I_t -> I_s` (induced by an arrow `s -> t`) to the resolutions.
pub fn ext_bimodule(alg: &Arc<Algebra>) -> Result<Bimodule> {
    match global_dimension(alg, 3) {
        GlobalDimension::Finite(d) if d <= 2 => {}
        _ => return Err(Error::GlobalDimensionTooLarge(2)),
    }
    let f = alg.field();
    let q = alg.quiver();
    let nv = alg.num_vertices();
    let res: Vec<Resolution> = (0..nv).map(|i| min_proj_resolution(&injective(alg, i).unwrap(), 3)).collect();
    // per vertex i: coordinates of Hom(Q_2, A), the quotient, and offsets
    let mut idx = Vec::new();
    let mut quots = Vec::new();
    let mut offsets = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, r) in res.iter().enumerate() {
        let q2: Vec<usize> = r.terms.get(2).cloned().unwrap_or_default();
        let ix = hom_to_regular_index(alg, &q2);
        let mut rels = Vec::new();
        if let Some(d2) = r.differentials.get(1) {
            let q1 = &r.terms[1];
            for (w, &vw) in q1.iter().enumerate() {
                for z in alg.paths_to(vw) {
                    let v: Vec<Elem> = ix.iter().map(|&(u, p)| alg.mul(&alg.unit(z), &d2.entries[w][u])[p]).collect();
                    rels.push(v);
                }
            }
        }
        let qt = Quotient::new(f, ix.len(), &rels);
        offsets.push(left.len());
        for &k in &qt.free {
            left.push(alg.source(ix[k].1));
            right.push(i);
        }
        idx.push(ix);
        quots.push(qt);
    }
    let n = left.len();
    let embed = |i: usize, v: &[Elem], out: &mut Matrix, row: usize| {
        for (j, &c) in quots[i].project(f, v).iter().enumerate() {
            out.set(row, offsets[i] + j, c);
        }
    };
    let mut lact = Vec::new();
    let mut ract = Vec::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        let ael = alg.path_element(&Path::new(q, vec![a]).unwrap());
        let mut l = Matrix::zeros(n, n);
        for i in 0..nv {
            for (j, &k) in quots[i].free.iter().enumerate() {
                let (u0, p0) = idx[i][k];
                let prod = alg.mul(&ael, &alg.unit(p0));
                let v: Vec<Elem> = idx[i].iter().map(|&(u, p)| if u == u0 { prod[p] } else { 0 }).collect();
                embed(i, &v, &mut l, offsets[i] + j);
            }
        }
        lact.push(l);
        // x = a in e_s A e_t induces I_t -> I_s; Ext^2(I_s, A) -> Ext^2(I_t, A)
        let (s, t) = (ar.source, ar.target);
        let it = injective(alg, t).unwrap();
        let is = injective(alg, s).unwrap();
        let mats = (0..nv).map(|v| nakayama_block(alg, &ael, t, s, v)).collect();
        let phi = ModMap { src: it, tgt: is, mats };
        let lift = lift_chain_map(alg, &res[t], &res[s], &phi)?;
        let mut r = Matrix::zeros(n, n);
        if let Some(f2) = lift.get(2) {
            for (j, &k) in quots[s].free.iter().enumerate() {
                let (u0, p0) = idx[s][k];
                // the class of the map with single component e_{p0} on summand u0 of Q(s)_2
                let v: Vec<Elem> = idx[t]
                    .iter()
                    .map(|&(u, p)| alg.mul(&alg.unit(p0), &f2.entries[u0][u])[p])
                    .collect();
                embed(t, &v, &mut r, offsets[s] + j);
            }
        }
        ract.push(r);
    }
    Ok(Bimodule { left, right, lact, ract })
}

/// Dimensions of `E^{(x) d}` per vertex pair for `d = 1..=max_degree`, stopping after the first zero power.
pub fn tensor_power_dims(alg: &Algebra, e: &Bimodule, max_degree: usize) -> Vec<Vec<Vec<usize>>> {
    let nv = alg.num_vertices();
    let mut out = Vec::new();
    let mut cur = e.clone();
    for d in 1..=max_degree {
        if d > 1 {
            cur = cur.tensor(alg, e);
        }
        out.push(cur.pair_dims(nv));
        if cur.dim() == 0 {
            break;
        }
    }
    out
}
