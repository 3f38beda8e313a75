//! Nakayama functor, projective replacement, and the Serre functor with its inverse.

use std::sync::Arc;

use super::complex::ProjComplex;
use crate::algebra::{
    cover_map, injective, proj_module, vector_to_elements, Algebra, AlgebraPresentation, Path, ProjMap, Quiver,
    Relation, DEFAULT_GLDIM_CAP,
};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::repr::{ModMap, Module};

/// A bounded complex of arbitrary modules, graded like [`ProjComplex`].
#[derive(Clone, Debug)]
pub struct ModComplex {
    pub low: i64,
    pub terms: Vec<Module>,
    pub diffs: Vec<ModMap>,
}

impl ModComplex {
    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    fn term(&self, alg: &Arc<Algebra>, n: i64) -> Module {
        if n < self.low || n > self.high() {
            return Module::zero(alg);
        }
        self.terms[(n - self.low) as usize].clone()
    }

    fn diff(&self, alg: &Arc<Algebra>, n: i64) -> ModMap {
        if n < self.low || n >= self.high() {
            return ModMap::zero(&self.term(alg, n), &self.term(alg, n + 1));
        }
        self.diffs[(n - self.low) as usize].clone()
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].then(&w[1]).is_zero())
    }

    /// The complex of modules underlying a complex of projectives.
    pub fn from_proj(alg: &Arc<Algebra>, c: &ProjComplex) -> ModComplex {
        ModComplex {
            low: c.low,
            terms: c.terms.iter().map(|t| proj_module(alg, t)).collect(),
            diffs: c.diffs.iter().map(|d| d.to_modmap(alg)).collect(),
        }
    }

    /// A module placed in degree 0.
    pub fn stalk(m: &Module) -> ModComplex {
        ModComplex { low: 0, terms: vec![m.clone()], diffs: vec![] }
    }
}

/// `I_{src} -> I_{tgt}` induced by `x` in `e_tgt A e_src`: at `v`, row `p` (a path
/// `v -> src`) and column `q` (a path `v -> tgt`) hold the coefficient of `p` in `q x`.
pub(crate) fn nakayama_block(alg: &Algebra, x: &[u64], src: usize, tgt: usize, v: usize) -> Matrix {
    let rows = alg.paths_between(v, src);
    let cols = alg.paths_between(v, tgt);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (cj, &q) in cols.iter().enumerate() {
        let prod = alg.mul(&alg.unit(q), x);
        for (ri, &p) in rows.iter().enumerate() {
            m.set(ri, cj, prod[p]);
        }
    }
    m
}

/// `I = (+)_u I_{verts[u]}`.
pub fn injective_sum(alg: &Arc<Algebra>, verts: &[usize]) -> Module {
    let parts: Vec<Module> = verts.iter().map(|&i| injective(alg, i).expect("vertex in range")).collect();
    Module::direct_sum_all(alg, &parts)
}

/// Termwise Nakayama functor `P_i -> I_i`.
pub fn nakayama(alg: &Arc<Algebra>, c: &ProjComplex) -> ModComplex {
    let terms: Vec<Module> = c.terms.iter().map(|t| injective_sum(alg, t)).collect();
    let nv = alg.num_vertices();
    let diffs = c
        .diffs
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let mats = (0..nv)
                .map(|v| {
                    let mut rows = Vec::new();
                    for (u, &su) in d.src.iter().enumerate() {
                        let mut row = Matrix::zeros(alg.paths_between(v, su).len(), 0);
                        for (w, &tw) in d.tgt.iter().enumerate() {
                            row = row.hstack(&nakayama_block(alg, &d.entries[w][u], su, tw, v));
                        }
                        rows.push(row);
                    }
                    let mut m = Matrix::zeros(0, terms[k + 1].dim_at(v));
                    for r in rows {
                        m = m.vstack(&r);
                    }
                    m
                })
                .collect();
            ModMap { src: terms[k].clone(), tgt: terms[k + 1].clone(), mats }
        })
        .collect();
    ModComplex { low: c.low, terms, diffs }
}

/// Block matrix `[[a, b], [c, d]]`; any block may be empty.
fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    a.hstack(b).vstack(&c.hstack(d))
}

/// A bounded complex of projectives quasi-isomorphic to `x`, built from the top
/// degree down so that the mapping cone stays exact.
pub fn projective_replacement(alg: &Arc<Algebra>, x: &ModComplex) -> Result<ProjComplex> {
    let f = alg.field();
    let nv = alg.num_vertices();
    if x.terms.is_empty() {
        return Ok(ProjComplex::zero());
    }
    let floor = x.low - DEFAULT_GLDIM_CAP as i64 - 2;
    // state for degree n + 1
    let mut p1: Vec<usize> = vec![];
    let mut p1mod = proj_module(alg, &p1);
    let mut dp1 = ModMap::zero(&p1mod, &proj_module(alg, &[]));
    let mut phi1 = ModMap::zero(&p1mod, &Module::zero(alg));
    let mut terms_desc: Vec<Vec<usize>> = Vec::new();
    let mut diffs_desc: Vec<ProjMap> = Vec::new();
    let mut n = x.high();
    loop {
        if n < floor {
            return Err(Error::GlobalDimensionTooLarge(DEFAULT_GLDIM_CAP));
        }
        let xn = x.term(alg, n);
        let dxn = x.diff(alg, n);
        let dxprev = x.diff(alg, n - 1);
        let cone = p1mod.direct_sum(&xn);
        let cone_next = dp1.tgt.direct_sum(&phi1.tgt);
        let mats = (0..nv)
            .map(|v| {
                let zero = Matrix::zeros(xn.dim_at(v), dp1.tgt.dim_at(v));
                block2(&dp1.mats[v].neg(f), &phi1.mats[v], &zero, &dxn.mats[v])
            })
            .collect();
        let cd = ModMap { src: cone.clone(), tgt: cone_next, mats };
        let (w, wbasis) = cd.kernel();
        if w.is_zero() && n < x.low {
            break;
        }
        let rad = w.radical();
        let mut gens: Vec<(usize, Vec<u64>)> = Vec::new();
        for v in 0..nv {
            let mut ech = Echelon::new(cone.dim_at(v));
            for r in rad[v].mul(f, &wbasis[v]).row_vecs() {
                ech.insert(f, &r);
            }
            let pad = Matrix::zeros(dxprev.src.dim_at(v), p1mod.dim_at(v));
            for r in pad.hstack(&dxprev.mats[v]).row_vecs() {
                ech.insert(f, &r);
            }
            for r in wbasis[v].row_vecs() {
                if ech.insert(f, &r) {
                    gens.push((v, r));
                }
            }
        }
        let pn: Vec<usize> = gens.iter().map(|g| g.0).collect();
        let split = |v: usize, g: &[u64]| -> (Vec<u64>, Vec<u64>) {
            let k = p1mod.dim_at(v);
            (g[..k].to_vec(), g[k..].to_vec())
        };
        let mut d = ProjMap::zero(alg, &pn, &p1);
        let mut xgens = Vec::new();
        for (u, (v, g)) in gens.iter().enumerate() {
            let (pp, xp) = split(*v, g);
            let els = vector_to_elements(alg, &p1, *v, &pp);
            for (wi, e) in els.into_iter().enumerate() {
                d.entries[wi][u] = alg.scale(&e, f.neg(1));
            }
            xgens.push((*v, xp));
        }
        let phi = cover_map(&xn, &xgens);
        let dmod = d.to_modmap(alg);
        terms_desc.push(pn.clone());
        diffs_desc.push(d);
        p1 = pn;
        p1mod = dmod.src.clone();
        dp1 = dmod;
        phi1 = phi;
        n -= 1;
    }
    // terms_desc[j] sits in degree high - j; diffs_desc[j] leaves it upward (unused for j = 0)
    let high = x.high();
    let len = terms_desc.len();
    let low = high - len as i64 + 1;
    let terms: Vec<Vec<usize>> = terms_desc.iter().rev().cloned().collect();
    let diffs: Vec<ProjMap> = diffs_desc.iter().rev().take(len.saturating_sub(1)).cloned().collect();
    Ok(ProjComplex { low, terms, diffs }.trimmed())
}

/// `S = DA (x)^L -`: Nakayama termwise, replaced by projectives, minimized.
pub fn serre(alg: &Arc<Algebra>, c: &ProjComplex) -> Result<ProjComplex> {
    let c = c.minimize(alg);
    Ok(projective_replacement(alg, &nakayama(alg, &c))?.minimize(alg))
}

/// `S_2 = S[-2]`.
pub fn s2(alg: &Arc<Algebra>, c: &ProjComplex) -> Result<ProjComplex> {
    Ok(serre(alg, c)?.shift(alg, -2))
}

/// The algebra together with its opposite and the anti-isomorphism between them.
#[derive(Clone, Debug)]
pub struct Opposite {
    pub alg: Arc<Algebra>,
    pub op: Arc<Algebra>,
    to_op: Matrix,
    from_op: Matrix,
}

fn reversed_presentation(p: &AlgebraPresentation) -> Result<AlgebraPresentation> {
    let q = &p.quiver;
    let mut r = Quiver::new();
    for v in q.vertex_names() {
        r.add_vertex(v)?;
    }
    for a in q.arrows() {
        r.add_arrow_with(&a.name, a.target, a.source, a.degree, a.weight)?;
    }
    let rels = p
        .relations
        .iter()
        .map(|rel| {
            let terms = rel
                .terms
                .iter()
                .map(|(c, path)| Ok((*c, reverse_path(&r, path)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Relation { name: rel.name.clone(), terms })
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraPresentation::new(p.field.clone(), r, rels)
}

fn reverse_path(rq: &Quiver, p: &Path) -> Result<Path> {
    if p.is_trivial() {
        return Ok(Path::trivial(p.source));
    }
    Path::new(rq, p.arrows.iter().rev().copied().collect())
}

/// Row `i`: image of basis path `i` of `a` under path reversal, in the basis of `b`.
fn reversal_matrix(a: &Algebra, b: &Algebra) -> Result<Matrix> {
    let mut rows = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        rows.push(b.path_element(&reverse_path(b.quiver(), a.basis_path(i))?));
    }
    Ok(Matrix::from_vecs(b.dim(), &rows))
}

impl Opposite {
    pub fn new(alg: &Arc<Algebra>) -> Result<Opposite> {
        let op = Arc::new(Algebra::new(&reversed_presentation(alg.presentation())?)?);
        if op.dim() != alg.dim() {
            return Err(Error::InvalidInput("opposite algebra has a different dimension".into()));
        }
        let to_op = reversal_matrix(alg, &op)?;
        let from_op = reversal_matrix(&op, alg)?;
        Ok(Opposite { alg: alg.clone(), op, to_op, from_op })
    }

    /// The opposite of the opposite, with roles swapped.
    pub fn flipped(&self) -> Opposite {
        Opposite { alg: self.op.clone(), op: self.alg.clone(), to_op: self.from_op.clone(), from_op: self.to_op.clone() }
    }

    /// `Hom(-, A)` on complexes of projectives: degrees negate, entries are transposed and reversed.
    pub fn dual(&self, c: &ProjComplex) -> ProjComplex {
        let f = self.alg.field();
        let n = c.terms.len();
        let terms: Vec<Vec<usize>> = c.terms.iter().rev().cloned().collect();
        let diffs = (0..n.saturating_sub(1))
            .map(|k| {
                // new diff k comes from old diff n - 2 - k
                let d = &c.diffs[n - 2 - k];
                let mut e = ProjMap::zero(&self.op, &d.tgt, &d.src);
                for (w, row) in d.entries.iter().enumerate() {
                    for (u, x) in row.iter().enumerate() {
                        e.entries[u][w] = self.to_op.vec_mul(f, x);
                    }
                }
                e
            })
            .collect();
        ProjComplex { low: -c.high(), terms, diffs }.trimmed()
    }

    /// `S^{-1} C = (S_op (C^dual))^dual`.
    pub fn serre_inverse(&self, c: &ProjComplex) -> Result<ProjComplex> {
        let d = self.dual(&c.minimize(&self.alg));
        let s = serre(&self.op, &d)?;
        Ok(self.flipped().dual(&s).minimize(&self.alg))
    }

    /// `S_2^{-1} = S^{-1}[2]`.
    pub fn s2_inverse(&self, c: &ProjComplex) -> Result<ProjComplex> {
        Ok(self.serre_inverse(c)?.shift(&self.alg, 2))
    }
}
