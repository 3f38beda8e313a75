//! Indecomposable projectives, injectives and simples; minimal projective
//! resolutions; global dimension; Ext.

use std::sync::Arc;

use super::build::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Elem, Matrix};
use crate::repr::{ModMap, Module};

/// Position of each basis path inside `paths_between(s, t)`.
fn position(alg: &Algebra, s: usize, t: usize, i: usize) -> usize {
    alg.paths_between(s, t).iter().position(|&j| j == i).expect("path lies in the block")
}

/// `P_i = e_i A`, with basis the paths starting at `i`.
pub fn projective(alg: &Arc<Algebra>, i: usize) -> Result<Module> {
    check_vertex(alg, i)?;
    Ok(proj_module(alg, &[i]))
}

/// `I_i = D(A e_i)`; its fiber at `v` is dual to the paths `v -> i`.
pub fn injective(alg: &Arc<Algebra>, i: usize) -> Result<Module> {
    check_vertex(alg, i)?;
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| alg.paths_between(v, i).len()).collect();
    let mats = (0..q.num_arrows())
        .map(|a| {
            let ar = q.arrow(a);
            let rows = alg.paths_between(ar.source, i);
            let cols = alg.paths_between(ar.target, i);
            let ael = alg.path_element(&super::Path::new(q, vec![a]).unwrap());
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (cj, &qq) in cols.iter().enumerate() {
                let prod = alg.mul(&ael, &alg.unit(qq));
                for (ri, &p) in rows.iter().enumerate() {
                    m.set(ri, cj, prod[p]);
                }
            }
            m
        })
        .collect();
    Ok(Module::new_unchecked(alg, dims, mats))
}

pub fn simple(alg: &Arc<Algebra>, i: usize) -> Result<Module> {
    check_vertex(alg, i)?;
    let q = alg.quiver();
    let mut dims = vec![0; q.num_vertices()];
    dims[i] = 1;
    let mats = q.arrows().iter().map(|ar| Matrix::zeros(dims[ar.source], dims[ar.target])).collect();
    Ok(Module::new_unchecked(alg, dims, mats))
}

fn check_vertex(alg: &Algebra, i: usize) -> Result<()> {
    if i >= alg.num_vertices() {
        return Err(Error::UnknownName(format!("vertex {i}")));
    }
    Ok(())
}

/// `(+)_u P_{verts[u]}`; the fiber at `v` lists, for each summand in turn, the paths `verts[u] -> v`.
pub fn proj_module(alg: &Arc<Algebra>, verts: &[usize]) -> Module {
    let q = alg.quiver();
    let f = alg.field();
    let dims: Vec<usize> =
        (0..q.num_vertices()).map(|v| verts.iter().map(|&u| alg.paths_between(u, v).len()).sum()).collect();
    let mats = (0..q.num_arrows())
        .map(|a| {
            let ar = q.arrow(a);
            let mut m = Matrix::zeros(dims[ar.source], dims[ar.target]);
            let (mut r0, mut c0) = (0, 0);
            for &u in verts {
                let rows = alg.paths_between(u, ar.source);
                let cols = alg.paths_between(u, ar.target);
                for (ri, &p) in rows.iter().enumerate() {
                    for &(k, c) in alg.right_mul_arrow(p, a) {
                        let cj = position(alg, u, ar.target, k);
                        m.set(r0 + ri, c0 + cj, f.add(m.get(r0 + ri, c0 + cj), c));
                    }
                }
                r0 += rows.len();
                c0 += cols.len();
            }
            m
        })
        .collect();
    Module::new_unchecked(alg, dims, mats)
}

/// A map `(+)_u P_{src[u]} -> (+)_w P_{tgt[w]}`; `entries[w][u]` lies in
/// `e_{tgt[w]} A e_{src[u]}` and is the `w`-component of the image of `e_{src[u]}`.
/// Composition is matrix multiplication with algebra multiplication in the usual order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub entries: Vec<Vec<Vec<Elem>>>,
}

impl ProjMap {
    pub fn zero(alg: &Algebra, src: &[usize], tgt: &[usize]) -> ProjMap {
        ProjMap { src: src.to_vec(), tgt: tgt.to_vec(), entries: vec![vec![alg.zero(); src.len()]; tgt.len()] }
    }

    pub fn identity(alg: &Algebra, verts: &[usize]) -> ProjMap {
        let mut m = ProjMap::zero(alg, verts, verts);
        for (u, &v) in verts.iter().enumerate() {
            m.entries[u][u] = alg.idempotent(v);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.iter().all(|&c| c == 0))
    }

    /// `self` followed by `g`, i.e. `g . self` as matrices.
    pub fn then(&self, alg: &Algebra, g: &ProjMap) -> ProjMap {
        assert_eq!(self.tgt, g.src, "incomposable maps");
        let mut out = ProjMap::zero(alg, &self.src, &g.tgt);
        for z in 0..g.tgt.len() {
            for u in 0..self.src.len() {
                let mut acc = alg.zero();
                for w in 0..self.tgt.len() {
                    acc = alg.add(&acc, &alg.mul(&g.entries[z][w], &self.entries[w][u]));
                }
                out.entries[z][u] = acc;
            }
        }
        out
    }

    pub fn add(&self, alg: &Algebra, o: &ProjMap) -> ProjMap {
        let mut out = self.clone();
        for (ro, r) in out.entries.iter_mut().zip(&o.entries) {
            for (x, y) in ro.iter_mut().zip(r) {
                *x = alg.add(x, y);
            }
        }
        out
    }

    pub fn scale(&self, alg: &Algebra, s: Elem) -> ProjMap {
        let mut out = self.clone();
        for x in out.entries.iter_mut().flatten() {
            *x = alg.scale(x, s);
        }
        out
    }

    /// All entries lie in the radical.
    pub fn is_radical(&self, alg: &Algebra) -> bool {
        self.entries.iter().flatten().all(|x| alg.in_radical(x))
    }

    /// Entries lie in the right blocks `e_{tgt} A e_{src}`.
    pub fn is_well_formed(&self, alg: &Algebra) -> bool {
        self.entries.len() == self.tgt.len()
            && self.entries.iter().enumerate().all(|(w, row)| {
                row.len() == self.src.len()
                    && row.iter().enumerate().all(|(u, x)| {
                        x.iter().enumerate().all(|(i, &c)| {
                            c == 0 || (alg.source(i) == self.tgt[w] && alg.target(i) == self.src[u])
                        })
                    })
            })
    }

    pub fn to_modmap(&self, alg: &Arc<Algebra>) -> ModMap {
        let src = proj_module(alg, &self.src);
        let tgt = proj_module(alg, &self.tgt);
        let f = alg.field();
        let nv = alg.num_vertices();
        let mats = (0..nv)
            .map(|v| {
                let mut m = Matrix::zeros(src.dim_at(v), tgt.dim_at(v));
                let mut r0 = 0;
                for (u, &su) in self.src.iter().enumerate() {
                    let rows = alg.paths_between(su, v);
                    for (ri, &p) in rows.iter().enumerate() {
                        let mut c0 = 0;
                        for (w, &tw) in self.tgt.iter().enumerate() {
                            let x = &self.entries[w][u];
                            let cols = alg.paths_between(tw, v);
                            for (i, &c) in x.iter().enumerate() {
                                if c == 0 {
                                    continue;
                                }
                                for &(k, ck) in alg.mul_basis(i, p) {
                                    let cj = position(alg, tw, v, k);
                                    let cur = m.get(r0 + ri, c0 + cj);
                                    m.set(r0 + ri, c0 + cj, f.mul_add(cur, c, ck));
                                }
                            }
                            c0 += cols.len();
                        }
                    }
                    r0 += rows.len();
                }
                m
            })
            .collect();
        ModMap { src, tgt, mats }
    }
}

/// Coordinates of an element of `(+)_w P_{verts[w]}` at vertex `v` as algebra elements.
pub fn vector_to_elements(alg: &Algebra, verts: &[usize], v: usize, vec: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = Vec::with_capacity(verts.len());
    let mut off = 0;
    for &w in verts {
        let mut x = alg.zero();
        for &i in alg.paths_between(w, v) {
            x[i] = vec[off];
            off += 1;
        }
        out.push(x);
    }
    out
}

/// Generators of a minimal projective cover: `(vertex, vector in M_vertex)`.
pub fn top_generators(m: &Module) -> Vec<(usize, Vec<Elem>)> {
    let f = m.field();
    let rad = m.radical();
    let mut gens = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for row in r.complement(f).row_vecs() {
            gens.push((v, row));
        }
    }
    gens
}

/// Projective cover `P -> M` from generators.
pub fn cover_map(m: &Module, gens: &[(usize, Vec<Elem>)]) -> ModMap {
    let alg = m.algebra();
    let f = alg.field();
    let verts: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let p = proj_module(alg, &verts);
    let acts = m.basis_actions();
    let mats = (0..alg.num_vertices())
        .map(|v| {
            let mut rows = Vec::new();
            for (u, g) in gens {
                for &pi in alg.paths_between(*u, v) {
                    rows.push(acts[pi].vec_mul(f, g));
                }
            }
            Matrix::from_vecs(m.dim_at(v), &rows)
        })
        .collect();
    ModMap { src: p, tgt: m.clone(), mats }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    /// `terms[t]` lists the vertices of the indecomposable summands of `P_t`.
    pub terms: Vec<Vec<usize>>,
    /// `differentials[t-1]: P_t -> P_{t-1}`.
    pub differentials: Vec<ProjMap>,
    pub augmentation: ModMap,
    /// True when the resolution ends (the last syzygy vanished).
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn module(&self, alg: &Arc<Algebra>, t: usize) -> Module {
        proj_module(alg, &self.terms[t])
    }
}

/// Minimal projective resolution computed through `P_length`.
pub fn min_proj_resolution(m: &Module, length: usize) -> Resolution {
    let alg = m.algebra();
    let gens = top_generators(m);
    let aug = cover_map(m, &gens);
    let mut terms = vec![gens.iter().map(|(v, _)| *v).collect::<Vec<_>>()];
    let mut diffs = Vec::new();
    let mut cur_map = aug.clone();
    let mut complete = false;
    if m.is_zero() {
        return Resolution { terms: vec![], differentials: vec![], augmentation: aug, complete: true };
    }
    loop {
        let (k, emb) = cur_map.kernel();
        if k.is_zero() {
            complete = true;
            break;
        }
        if terms.len() > length {
            break;
        }
        let prev = terms.last().unwrap().clone();
        let kg = top_generators(&k);
        let f = alg.field();
        let mut d = ProjMap::zero(alg, &[], &prev);
        d.src = kg.iter().map(|(v, _)| *v).collect();
        d.entries = vec![Vec::with_capacity(kg.len()); prev.len()];
        for (v, g) in &kg {
            let coords = emb[*v].vec_mul(f, g);
            let els = vector_to_elements(alg, &prev, *v, &coords);
            for (w, x) in els.into_iter().enumerate() {
                d.entries[w].push(x);
            }
        }
        terms.push(d.src.clone());
        cur_map = d.to_modmap(alg);
        diffs.push(d);
    }
    Resolution { terms, differentials: diffs, augmentation: aug, complete }
}

pub const DEFAULT_GLDIM_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Finite(usize),
    ExceedsCap(usize),
}

pub fn projective_dimension(m: &Module, cap: usize) -> Option<usize> {
    let r = min_proj_resolution(m, cap);
    r.complete.then(|| r.length())
}

pub fn global_dimension(alg: &Arc<Algebra>, cap: usize) -> GlobalDimension {
    let mut best = 0;
    for i in 0..alg.num_vertices() {
        match projective_dimension(&simple(alg, i).unwrap(), cap) {
            Some(d) => best = best.max(d),
            None => return GlobalDimension::ExceedsCap(cap),
        }
    }
    GlobalDimension::Finite(best)
}

/// `Ext^d(M, N)` with cocycle representatives in `Hom(P_d, N) = (+)_u N_{P_d[u]}`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub degree: usize,
    pub dim: usize,
    /// Rows: cocycles whose classes form a basis.
    pub cocycles: Matrix,
    /// Vertices of `P_d`.
    pub term: Vec<usize>,
}

/// Matrix of `Hom(P_{t-1}, N) -> Hom(P_t, N)`, `phi -> phi . d_t`, on row vectors.
fn coboundary(n: &Module, acts: &[Matrix], d: &ProjMap) -> Matrix {
    let f = n.field();
    let rows: usize = d.tgt.iter().map(|&w| n.dim_at(w)).sum();
    let cols: usize = d.src.iter().map(|&u| n.dim_at(u)).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (w, &tw) in d.tgt.iter().enumerate() {
        let mut c0 = 0;
        for (u, &su) in d.src.iter().enumerate() {
            let blk = n.element_action(&d.entries[w][u], tw, su, acts);
            let cur = m.block(r0, c0, blk.rows(), blk.cols()).add(f, &blk);
            m.set_block(r0, c0, &cur);
            c0 += n.dim_at(su);
        }
        r0 += n.dim_at(tw);
    }
    m
}

pub fn ext(m: &Module, n: &Module, d: usize) -> Result<ExtSpace> {
    if !m.same_algebra(n) {
        return Err(Error::InvalidInput("modules over different algebras".into()));
    }
    let f = m.field();
    let res = min_proj_resolution(m, d + 1);
    let acts = n.basis_actions();
    let Some(term) = res.terms.get(d).cloned() else {
        return Ok(ExtSpace { degree: d, dim: 0, cocycles: Matrix::zeros(0, 0), term: Vec::new() });
    };
    let hom_dim: usize = term.iter().map(|&u| n.dim_at(u)).sum();
    let cocycles = match res.differentials.get(d) {
        Some(dn) => coboundary(n, &acts, dn).left_kernel(f),
        None => Matrix::identity(hom_dim),
    };
    let coboundaries = if d == 0 {
        Matrix::zeros(0, hom_dim)
    } else {
        let dp = &res.differentials[d - 1];
        coboundary(n, &acts, dp).row_space(f)
    };
    let mut ech = Echelon::new(hom_dim);
    for r in coboundaries.row_vecs() {
        ech.insert(f, &r);
    }
    let mut reps = Vec::new();
    for r in cocycles.row_vecs() {
        if ech.insert(f, &r) {
            reps.push(r);
        }
    }
    Ok(ExtSpace { degree: d, dim: reps.len(), cocycles: Matrix::from_vecs(hom_dim, &reps), term })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraPresentation, Quiver, Relation};
    use crate::linalg::Field;

    fn alg(n: usize, arrows: &[(&str, usize, usize)], rels: &[&str]) -> Arc<Algebra> {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(n, arrows).unwrap();
        let rs = rels.iter().map(|r| Relation::monomial(q.parse_path(r).unwrap())).collect();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, rs).unwrap()).unwrap())
    }

    #[test]
    fn projectives_sum_to_regular() {
        let a = alg(3, &[("alpha", 0, 1), ("beta", 1, 2), ("gamma", 2, 0)], &["alpha*beta"]);
        let total: usize = (0..3).map(|i| projective(&a, i).unwrap().dim()).sum();
        assert_eq!(total, a.dim());
        assert_eq!(projective(&a, 0).unwrap().dims(), &[1, 1, 0]);
        assert!(projective(&a, 5).is_err());
    }

    #[test]
    fn a2_resolutions() {
        let a = alg(2, &[("a", 0, 1)], &[]);
        let s0 = simple(&a, 0).unwrap();
        let r = min_proj_resolution(&s0, 4);
        assert!(r.complete);
        assert_eq!(r.terms, vec![vec![0], vec![1]]);
        assert_eq!(global_dimension(&a, 16), GlobalDimension::Finite(1));
        let p = projective(&a, 0).unwrap();
        assert_eq!(min_proj_resolution(&p, 4).length(), 0);
    }

    #[test]
    fn injectives_are_modules() {
        let a = alg(3, &[("alpha", 0, 1), ("beta", 1, 2), ("gamma", 2, 0)], &["alpha*beta"]);
        for i in 0..3 {
            let inj = injective(&a, i).unwrap();
            assert!(Module::new(a_ref(&inj), inj.dims().to_vec(), inj.mats().to_vec()).is_ok());
            // socle is simple at i
            assert_eq!(inj.dims().iter().sum::<usize>(), a.paths_to(i).len());
        }
    }

    fn a_ref(m: &Module) -> &Arc<Algebra> {
        m.algebra()
    }
}
