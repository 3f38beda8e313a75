use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Field, Matrix};

/// A right module: one space per vertex and a matrix per arrow, acting on row
/// vectors (`m . a = m M_a`, shape `dim(source) x dim(target)`).
#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, o: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg) && self.dims == o.dims && self.mats == o.mats
    }
}

impl Module {
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Module> {
        let m = Module { alg: alg.clone(), dims, mats };
        m.check()?;
        Ok(m)
    }

    /// Skips the relation check; for internal constructions that satisfy it by design.
    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, dims: Vec<usize>, mats: Vec<Matrix>) -> Module {
        let m = Module { alg: alg.clone(), dims, mats };
        debug_assert!(m.check().is_ok(), "{:?}", m.check());
        m
    }

    fn check(&self) -> Result<()> {
        let q = self.alg.quiver();
        if self.dims.len() != q.num_vertices() || self.mats.len() != q.num_arrows() {
            return Err(Error::DimensionMismatch("module data does not match the quiver".into()));
        }
        for (a, m) in self.mats.iter().enumerate() {
            let ar = q.arrow(a);
            if m.shape() != (self.dims[ar.source], self.dims[ar.target]) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix of {} is {:?}, expected {:?}",
                    ar.name,
                    m.shape(),
                    (self.dims[ar.source], self.dims[ar.target])
                )));
            }
        }
        let f = self.field();
        if m_has_bad_entries(f, &self.mats) {
            return Err(Error::InvalidInput("matrix entry outside the field".into()));
        }
        for r in self.alg.relations() {
            let mut acc = Matrix::zeros(self.dims[r.source()], self.dims[r.target()]);
            for (c, p) in &r.terms {
                acc = acc.add(f, &self.path_action(&p.arrows, p.source).scale(f, *c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "relation {} does not vanish on the module",
                    r.display(f, self.alg.quiver())
                )));
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<Algebra>) -> Module {
        let q = alg.quiver();
        let mats = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Module { alg: alg.clone(), dims: vec![0; q.num_vertices()], mats }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn same_algebra(&self, o: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg)
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn mat(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    /// Offset of vertex `v` in the total space `(+)_v M_v`.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    /// Matrix of a composable arrow sequence starting at `source`.
    pub fn path_action(&self, arrows: &[usize], source: usize) -> Matrix {
        let f = self.field();
        let mut acc = Matrix::identity(self.dims[source]);
        for &a in arrows {
            acc = acc.mul(f, &self.mats[a]);
        }
        acc
    }

    /// Action of every basis element of the algebra (indexed like the basis).
    pub fn basis_actions(&self) -> Vec<Matrix> {
        let alg = &self.alg;
        let f = self.field();
        let mut out: Vec<Matrix> = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let m = match alg.prefix(i) {
                None => Matrix::identity(self.dims[i]),
                Some((b, a)) => out[b].mul(f, &self.mats[a]),
            };
            out.push(m);
        }
        out
    }

    /// Action of `x` restricted to `e_s x e_t`, a `dim(s) x dim(t)` matrix.
    pub fn element_action(&self, x: &[Elem], s: usize, t: usize, actions: &[Matrix]) -> Matrix {
        let f = self.field();
        let mut acc = Matrix::zeros(self.dims[s], self.dims[t]);
        for &i in self.alg.paths_between(s, t) {
            if x[i] != 0 {
                acc = acc.add(f, &actions[i].scale(f, x[i]));
            }
        }
        acc
    }

    pub fn direct_sum(&self, o: &Module) -> Module {
        assert!(self.same_algebra(o));
        let dims = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&o.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Module { alg: self.alg.clone(), dims, mats }
    }

    pub fn direct_sum_all(alg: &Arc<Algebra>, ms: &[Module]) -> Module {
        ms.iter().fold(Module::zero(alg), |acc, m| acc.direct_sum(m))
    }

    /// `M'` with `M'_a = g_s M_a g_t^{-1}`; `g` must be invertible per vertex.
    pub fn conjugate(&self, g: &[Matrix]) -> Module {
        let f = self.field();
        let q = self.alg.quiver();
        let inv: Vec<Matrix> = g.iter().map(|m| m.inverse(f).expect("conjugating matrix not invertible")).collect();
        let mats = (0..q.num_arrows())
            .map(|a| {
                let ar = q.arrow(a);
                g[ar.source].mul(f, &self.mats[a]).mul(f, &inv[ar.target])
            })
            .collect();
        Module { alg: self.alg.clone(), dims: self.dims.clone(), mats }
    }

    /// The submodule spanned per vertex by the rows of `basis[v]`, which must be
    /// independent and closed under the action.
    pub fn submodule(&self, basis: &[Matrix]) -> Result<Module> {
        let f = self.field();
        let q = self.alg.quiver();
        let dims: Vec<usize> = basis.iter().map(|b| b.rows()).collect();
        let mut mats = Vec::with_capacity(q.num_arrows());
        for a in 0..q.num_arrows() {
            let ar = q.arrow(a);
            let img = basis[ar.source].mul(f, &self.mats[a]);
            let x = basis[ar.target]
                .solve_left(f, &img)
                .ok_or_else(|| Error::InvalidInput("subspace not closed under the action".into()))?;
            mats.push(x);
        }
        Ok(Module { alg: self.alg.clone(), dims, mats })
    }

    /// Quotient by the submodule spanned by `basis[v]`; also returns, per vertex,
    /// the rows of `M_v` that map to the quotient basis (a section of the projection).
    pub fn quotient(&self, basis: &[Matrix]) -> (Module, Vec<Matrix>) {
        let f = self.field();
        let q = self.alg.quiver();
        let comps: Vec<Matrix> = basis.iter().map(|b| b.complement(f)).collect();
        // full[v] = [sub; comp] is a basis of M_v; coordinates split accordingly
        let full_inv: Vec<Matrix> =
            basis.iter().zip(&comps).map(|(b, c)| b.vstack(c).inverse(f).expect("complement is a basis")).collect();
        let dims: Vec<usize> = comps.iter().map(|c| c.rows()).collect();
        let mut mats = Vec::with_capacity(q.num_arrows());
        for a in 0..q.num_arrows() {
            let ar = q.arrow(a);
            let img = comps[ar.source].mul(f, &self.mats[a]).mul(f, &full_inv[ar.target]);
            let k = basis[ar.target].rows();
            mats.push(img.block(0, k, img.rows(), dims[ar.target]));
        }
        (Module { alg: self.alg.clone(), dims, mats }, comps)
    }

    /// Radical `M J` at each vertex, as row bases.
    pub fn radical(&self) -> Vec<Matrix> {
        let f = self.field();
        let q = self.alg.quiver();
        (0..q.num_vertices())
            .map(|v| {
                let mut acc = Matrix::zeros(0, self.dims[v]);
                for a in q.arrows_to(v) {
                    acc = acc.vstack(&self.mats[a]);
                }
                acc.row_space(f)
            })
            .collect()
    }

    /// Dimension vector of the top `M / M J`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical().iter().zip(&self.dims).map(|(r, d)| d - r.rows()).collect()
    }

    pub fn is_semisimple(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    /// The module over the same algebra whose arrows act by `scale(a) * M_a`.
    pub fn rescale(&self, scale: impl Fn(usize) -> Elem) -> Module {
        let f = self.field();
        let mats = self.mats.iter().enumerate().map(|(a, m)| m.scale(f, scale(a))).collect();
        Module { alg: self.alg.clone(), dims: self.dims.clone(), mats }
    }

    /// Coerces the module onto another algebra with the same presentation data.
    pub fn with_algebra(&self, alg: &Arc<Algebra>) -> Result<Module> {
        Module::new(alg, self.dims.clone(), self.mats.clone())
    }
}

fn m_has_bad_entries(f: &Field, mats: &[Matrix]) -> bool {
    mats.iter().any(|m| m.data().iter().any(|&x| x >= f.order()))
}

/// A module homomorphism: per-vertex matrices with `M_a F_t = F_s N_a`.
#[derive(Clone, Debug)]
pub struct ModMap {
    pub src: Module,
    pub tgt: Module,
    pub mats: Vec<Matrix>,
}

impl ModMap {
    pub fn new(src: &Module, tgt: &Module, mats: Vec<Matrix>) -> Result<ModMap> {
        let m = ModMap { src: src.clone(), tgt: tgt.clone(), mats };
        if !src.same_algebra(tgt) {
            return Err(Error::InvalidInput("modules over different algebras".into()));
        }
        if !m.is_homomorphism() {
            return Err(Error::NotAHomomorphism("arrow actions do not commute".into()));
        }
        Ok(m)
    }

    pub fn identity(m: &Module) -> ModMap {
        let mats = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        ModMap { src: m.clone(), tgt: m.clone(), mats }
    }

    pub fn zero(src: &Module, tgt: &Module) -> ModMap {
        let mats = src.dims().iter().zip(tgt.dims()).map(|(&a, &b)| Matrix::zeros(a, b)).collect();
        ModMap { src: src.clone(), tgt: tgt.clone(), mats }
    }

    pub fn is_homomorphism(&self) -> bool {
        let f = self.src.field();
        let q = self.src.algebra().quiver();
        if self.mats.len() != q.num_vertices() {
            return false;
        }
        for v in 0..q.num_vertices() {
            if self.mats[v].shape() != (self.src.dim_at(v), self.tgt.dim_at(v)) {
                return false;
            }
        }
        (0..q.num_arrows()).all(|a| {
            let ar = q.arrow(a);
            self.src.mat(a).mul(f, &self.mats[ar.target]) == self.mats[ar.source].mul(f, self.tgt.mat(a))
        })
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ModMap) -> ModMap {
        let f = self.src.field();
        let mats = self.mats.iter().zip(&g.mats).map(|(a, b)| a.mul(f, b)).collect();
        ModMap { src: self.src.clone(), tgt: g.tgt.clone(), mats }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        let f = self.src.field();
        self.mats.iter().all(|m| m.is_invertible(f))
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let f = self.src.field();
        let mats: Option<Vec<Matrix>> = self.mats.iter().map(|m| m.inverse(f)).collect();
        Some(ModMap { src: self.tgt.clone(), tgt: self.src.clone(), mats: mats? })
    }

    pub fn add(&self, o: &ModMap) -> ModMap {
        let f = self.src.field();
        let mats = self.mats.iter().zip(&o.mats).map(|(a, b)| a.add(f, b)).collect();
        ModMap { src: self.src.clone(), tgt: self.tgt.clone(), mats }
    }

    pub fn scale(&self, s: Elem) -> ModMap {
        let f = self.src.field();
        ModMap { src: self.src.clone(), tgt: self.tgt.clone(), mats: self.mats.iter().map(|m| m.scale(f, s)).collect() }
    }

    /// Kernel as per-vertex row bases in source coordinates.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let f = self.src.field();
        self.mats.iter().map(|m| m.left_kernel(f)).collect()
    }

    pub fn image_basis(&self) -> Vec<Matrix> {
        let f = self.src.field();
        self.mats.iter().map(|m| m.row_space(f)).collect()
    }

    pub fn kernel(&self) -> (Module, Vec<Matrix>) {
        let b = self.kernel_basis();
        (self.src.submodule(&b).expect("kernel is a submodule"), b)
    }

    pub fn cokernel(&self) -> (Module, Vec<Matrix>) {
        self.tgt.quotient(&self.image_basis())
    }

    pub fn rank(&self) -> usize {
        let f = self.src.field();
        self.mats.iter().map(|m| m.rank(f)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraPresentation, Quiver};

    fn a2() -> Arc<Algebra> {
        let f = Field::prime(7).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap())
    }

    #[test]
    fn shapes_are_checked() {
        let alg = a2();
        assert!(Module::new(&alg, vec![1, 1], vec![Matrix::from_rows(1, 1, vec![3])]).is_ok());
        assert!(Module::new(&alg, vec![1, 2], vec![Matrix::from_rows(1, 1, vec![3])]).is_err());
    }

    #[test]
    fn kernel_and_cokernel_of_inclusion() {
        let alg = a2();
        let s2 = Module::new(&alg, vec![0, 1], vec![Matrix::zeros(0, 1)]).unwrap();
        let p1 = Module::new(&alg, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        let inc = ModMap::new(&s2, &p1, vec![Matrix::zeros(0, 1), Matrix::identity(1)]).unwrap();
        assert_eq!(inc.kernel().0.dim(), 0);
        let (c, _) = inc.cokernel();
        assert_eq!(c.dims(), &[1, 0]);
        assert_eq!(p1.top_dims(), vec![1, 0]);
    }
}
