//! The total Hom complex between complexes of projectives: derived Hom and
//! isomorphism of minimal complexes.

use rand::Rng;

use super::complex::ProjComplex;
use crate::algebra::{Algebra, ProjMap};
use crate::error::Result;
use crate::linalg::{Echelon, Elem, Matrix};

/// Coordinates on `Hom^n(C, D) = prod_k Hom(C^k, D^{k+n})`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub n: i64,
    /// `(k, w, u, paths, offset)`: the entry `(w, u)` of the component in degree `k`.
    blocks: Vec<(i64, usize, usize, Vec<usize>, usize)>,
    pub dim: usize,
}

impl Layout {
    pub(crate) fn new(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, n: i64) -> Layout {
        let mut blocks = Vec::new();
        let mut off = 0;
        for k in c.low..=c.high() {
            let ck = c.term(k);
            let dk = d.term(k + n);
            for (w, &tw) in dk.iter().enumerate() {
                for (u, &su) in ck.iter().enumerate() {
                    let paths = alg.paths_between(tw, su).to_vec();
                    let len = paths.len();
                    blocks.push((k, w, u, paths, off));
                    off += len;
                }
            }
        }
        Layout { n, blocks, dim: off }
    }

    /// The components `(k, C^k -> D^{k+n})` of a coordinate vector.
    pub(crate) fn unpack(&self, alg: &Algebra, c: &ProjComplex, d: &ProjComplex, x: &[Elem]) -> Vec<(i64, ProjMap)> {
        let mut out: Vec<(i64, ProjMap)> = Vec::new();
        for k in c.low..=c.high() {
            out.push((k, ProjMap::zero(alg, c.term(k), d.term(k + self.n))));
        }
        for (k, w, u, paths, off) in &self.blocks {
            let m = &mut out[(k - c.low) as usize].1;
            for (j, &i) in paths.iter().enumerate() {
                m.entries[*w][*u][i] = x[off + j];
            }
        }
        out
    }

    fn pack(&self, comps: &[(i64, ProjMap)]) -> Vec<Elem> {
        let mut x = vec![0; self.dim];
        for (k, w, u, paths, off) in &self.blocks {
            if let Some((_, m)) = comps.iter().find(|(kk, _)| kk == k) {
                for (j, &i) in paths.iter().enumerate() {
                    x[off + j] = m.entries[*w][*u][i];
                }
            }
        }
        x
    }
}

/// `delta(f) = d_D f - (-1)^n f d_C` evaluated on the components of `f`.
fn delta(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, n: i64, f: &[(i64, ProjMap)]) -> Vec<(i64, ProjMap)> {
    let fld = alg.field();
    let sign = if n.rem_euclid(2) == 0 { fld.neg(1) } else { 1 };
    let mut out = Vec::new();
    for k in c.low..=c.high() {
        let fk = f.iter().find(|(kk, _)| *kk == k).map(|x| &x.1);
        let mut acc = ProjMap::zero(alg, c.term(k), d.term(k + n + 1));
        if let (Some(fk), Some(dd)) = (fk, d.diff(k + n)) {
            acc = acc.add(alg, &fk.then(alg, dd));
        }
        let fk1 = f.iter().find(|(kk, _)| *kk == k + 1).map(|x| &x.1);
        if let (Some(fk1), Some(dc)) = (fk1, c.diff(k)) {
            acc = acc.add(alg, &dc.then(alg, fk1).scale(alg, sign));
        }
        out.push((k, acc));
    }
    out
}

/// Matrix of `delta: Hom^n -> Hom^{n+1}` acting on row vectors.
pub(crate) fn delta_matrix(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, n: i64) -> (Layout, Layout, Matrix) {
    let src = Layout::new(alg, c, d, n);
    let tgt = Layout::new(alg, c, d, n + 1);
    let mut rows = Vec::with_capacity(src.dim);
    for i in 0..src.dim {
        let mut e = vec![0; src.dim];
        e[i] = 1;
        let comps = src.unpack(alg, c, d, &e);
        rows.push(tgt.pack(&delta(alg, c, d, n, &comps)));
    }
    (src, tgt.clone(), Matrix::from_vecs(tgt.dim, &rows))
}

/// `Hom_D(C, D[n])` with representative cocycles.
#[derive(Clone, Debug)]
pub struct DerivedHom {
    pub shift: i64,
    pub dim: usize,
    /// Each representative as components `C^k -> D^{k+n}`.
    pub basis: Vec<Vec<(i64, ProjMap)>>,
}

/// `H^n` of the total Hom complex; exact in the derived category since `C` is projective.
pub fn derived_hom(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, n: i64) -> DerivedHom {
    let f = alg.field();
    let (lay, _, dm) = delta_matrix(alg, c, d, n);
    let z = dm.left_kernel(f);
    let (_, _, prev) = delta_matrix(alg, c, d, n - 1);
    let mut ech = Echelon::new(lay.dim);
    for r in prev.row_vecs() {
        ech.insert(f, &r);
    }
    let mut basis = Vec::new();
    for r in z.row_vecs() {
        if ech.insert(f, &r) {
            basis.push(lay.unpack(alg, c, d, &r));
        }
    }
    DerivedHom { shift: n, dim: basis.len(), basis }
}

/// Degree-0 coefficients of an entry block between summands at the same vertex.
fn top_blocks(alg: &Algebra, m: &ProjMap) -> Vec<Matrix> {
    (0..alg.num_vertices())
        .map(|v| {
            let ws: Vec<usize> = (0..m.tgt.len()).filter(|&w| m.tgt[w] == v).collect();
            let us: Vec<usize> = (0..m.src.len()).filter(|&u| m.src[u] == v).collect();
            let mut t = Matrix::zeros(ws.len(), us.len());
            for (i, &w) in ws.iter().enumerate() {
                for (j, &u) in us.iter().enumerate() {
                    t.set(i, j, m.entries[w][u][v]);
                }
            }
            t
        })
        .collect()
}

/// A map of projectives is invertible iff its top is.
pub fn proj_map_is_iso(alg: &Algebra, m: &ProjMap) -> bool {
    top_blocks(alg, m).iter().all(|t| t.is_square() && (t.rows() == 0 || t.is_invertible(alg.field())))
}

/// Block-diagonal top of a degree-0 chain map.
pub(crate) fn chain_map_top(alg: &Algebra, comps: &[(i64, ProjMap)]) -> Matrix {
    let mut acc = Matrix::zeros(0, 0);
    for (_, m) in comps {
        for t in top_blocks(alg, m) {
            acc = acc.direct_sum(&t);
        }
    }
    acc
}

pub fn is_chain_map(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, comps: &[(i64, ProjMap)]) -> bool {
    delta(alg, c, d, 0, comps).iter().all(|(_, m)| m.is_zero())
}

#[derive(Clone, Debug)]
pub enum ComplexIso {
    /// A degreewise invertible chain map from the minimized first complex to the minimized second.
    Isomorphic(Vec<(i64, ProjMap)>),
    /// The minimal complexes differ in some degree.
    DifferentTerms,
    /// No chain maps with invertible top exist among `tries` random samples of the chain-map space.
    NoChainIsomorphism { chain_maps: usize, tries: usize },
}

impl ComplexIso {
    pub fn is_iso(&self) -> bool {
        matches!(self, ComplexIso::Isomorphic(_))
    }
}

pub const ISO_TRIES: usize = 32;

/// Isomorphism in the homotopy category, decided on minimal representatives.
pub fn complexes_isomorphic<R: Rng>(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, rng: &mut R) -> Result<ComplexIso> {
    let c = c.minimize(alg);
    let d = d.minimize(alg);
    Ok(minimal_complexes_isomorphic(alg, &c, &d, rng))
}

pub(crate) fn minimal_complexes_isomorphic<R: Rng>(alg: &Algebra, c: &ProjComplex, d: &ProjComplex, rng: &mut R) -> ComplexIso {
    if c.profile() != d.profile() {
        return ComplexIso::DifferentTerms;
    }
    if c.is_zero() {
        return ComplexIso::Isomorphic(vec![]);
    }
    let f = alg.field();
    let (lay, _, dm) = delta_matrix(alg, c, d, 0);
    let z = dm.left_kernel(f);
    if z.rows() == 0 {
        return ComplexIso::NoChainIsomorphism { chain_maps: 0, tries: 0 };
    }
    for _ in 0..ISO_TRIES {
        let coeffs: Vec<Elem> = (0..z.rows()).map(|_| rng.gen_range(0..f.order())).collect();
        let v = Matrix::from_vecs(z.rows(), &[coeffs]).mul(f, &z).row(0).to_vec();
        let comps = lay.unpack(alg, c, d, &v);
        if comps.iter().all(|(_, m)| proj_map_is_iso(alg, m)) {
            debug_assert!(is_chain_map(alg, c, d, &comps));
            return ComplexIso::Isomorphic(comps);
        }
    }
    ComplexIso::NoChainIsomorphism { chain_maps: z.rows(), tries: ISO_TRIES }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{simple, AlgebraPresentation, Quiver};
    use crate::linalg::Field;
    use crate::serre::complex::proj_resolve;

    fn a2() -> Arc<Algebra> {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap())
    }

    #[test]
    fn yoneda_and_ext() {
        let a = a2();
        let p0 = ProjComplex::stalk(&[0], 0);
        let p1 = ProjComplex::stalk(&[1], 0);
        assert_eq!(derived_hom(&a, &p0, &p0, 0).dim, 1);
        // Hom(P_1, P_0) = e_0 A e_1 holds the arrow
        assert_eq!(derived_hom(&a, &p1, &p0, 0).dim, 1);
        assert_eq!(derived_hom(&a, &p0, &p1, 0).dim, 0);
        let s0 = proj_resolve(&simple(&a, 0).unwrap()).unwrap();
        let s1 = proj_resolve(&simple(&a, 1).unwrap()).unwrap();
        assert_eq!(derived_hom(&a, &s0, &s1, 1).dim, 1);
        assert_eq!(derived_hom(&a, &s1, &s0, 1).dim, 0);
        assert_eq!(derived_hom(&a, &s0, &s0, 0).dim, 1);
    }

    #[test]
    fn iso_of_shifted_and_self() {
        let a = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s0 = proj_resolve(&simple(&a, 0).unwrap()).unwrap();
        assert!(complexes_isomorphic(&a, &s0, &s0, &mut rng).unwrap().is_iso());
        assert!(!complexes_isomorphic(&a, &s0, &s0.shift(&a, 1), &mut rng).unwrap().is_iso());
        let scaled = s0.shift(&a, 1).shift(&a, -1);
        assert!(complexes_isomorphic(&a, &s0, &scaled, &mut rng).unwrap().is_iso());
    }
}
