//! The twist `M_alpha` and extension of scalars.

use std::sync::Arc;

use crate::algebra::{build_algebra, Algebra, AlgebraPresentation, Relation, DEFAULT_LENGTH_CAP};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Embedding, Matrix};
use crate::repr::{ModMap, Module};

/// `M_alpha`: each arrow `a` acts by `alpha^{deg a} M_a`.
pub fn twist(m: &Module, alpha: Elem) -> Result<Module> {
    let f = m.field();
    if alpha == 0 {
        return Err(Error::InvalidInput("twist by zero".into()));
    }
    let q = m.algebra().quiver();
    Ok(m.rescale(|a| f.pow(alpha, q.arrow(a).degree as u64)))
}

/// The canonical isomorphism `M_alpha -> M`, `m -> alpha^{-deg m} m`, of a graded module.
pub fn canonical_twist_iso(m: &crate::tilde::GradedModule, alpha: Elem) -> Result<ModMap> {
    let f = m.module.field();
    let inv = f.inv(alpha);
    let scal = |d: i64| if d >= 0 { f.pow(inv, d as u64) } else { f.pow(alpha, (-d) as u64) };
    let mats = m
        .degrees
        .iter()
        .map(|ds| {
            let mut x = Matrix::zeros(ds.len(), ds.len());
            for (k, &d) in ds.iter().enumerate() {
                x.set(k, k, scal(d));
            }
            x
        })
        .collect();
    ModMap::new(&twist(&m.module, alpha)?, &m.module, mats)
}

fn map_matrix(m: &Matrix, emb: &Embedding) -> Matrix {
    m.map(|x| emb.map(x))
}

/// The same presentation read over `emb.to`.
pub fn extend_algebra(alg: &Algebra, emb: &Embedding) -> Result<Arc<Algebra>> {
    let p = alg.presentation();
    let rels = p
        .relations
        .iter()
        .map(|r| Relation { name: r.name.clone(), terms: r.terms.iter().map(|(c, w)| (emb.map(*c), w.clone())).collect() })
        .collect();
    let pres = AlgebraPresentation::new(emb.to.clone(), p.quiver.clone(), rels)?;
    let longest = (0..alg.dim()).map(|i| alg.length(i)).max().unwrap_or(0);
    let ext = build_algebra(&pres, DEFAULT_LENGTH_CAP.max(longest + 2))?;
    if ext.dim() != alg.dim() {
        return Err(Error::Inconsistent(format!("extension of scalars changed dimension {} -> {}", alg.dim(), ext.dim())));
    }
    Ok(Arc::new(ext))
}

pub fn extend_module(m: &Module, alg: &Arc<Algebra>, emb: &Embedding) -> Result<Module> {
    Module::new(alg, m.dims().to_vec(), m.mats().iter().map(|x| map_matrix(x, emb)).collect())
}

pub fn extend_map(g: &ModMap, src: &Module, tgt: &Module, emb: &Embedding) -> Result<ModMap> {
    ModMap::new(src, tgt, g.mats.iter().map(|x| map_matrix(x, emb)).collect())
}
