//! The graded algebra `T_A Ext^2(DA, A)`.
//!
//! Degree dimensions come from `Hom(A, S_2^{-d} A)` computed with complexes of
//! projectives. The multiplication is realised by a quiver with relations: one
//! degree-1 arrow `t(r) -> s(r)` per minimal relation `r` and the cyclic
//! derivatives of `W = sum_r r rho_r`; its graded pieces are checked against the
//! derived dimensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{
    build_algebra, global_dimension, Algebra, AlgebraPresentation, GlobalDimension, Path, Quiver, Relation,
    DEFAULT_LENGTH_CAP,
};
use crate::error::{Error, Result};
use crate::linalg::Elem;
use crate::serre::{derived_hom, Opposite, ProjComplex};

pub const DEFAULT_DEGREE_CAP: usize = 32;

/// `dims[d][i][j]`: dimension of the degree-`d` part between paths `j -> i`.
pub type PairDims = Vec<Vec<Vec<usize>>>;

fn check_gldim(alg: &Arc<Algebra>) -> Result<()> {
    match global_dimension(alg, 3) {
        GlobalDimension::Finite(d) if d <= 2 => Ok(()),
        _ => Err(Error::GlobalDimensionTooLarge(2)),
    }
}

/// `dim Hom(P_i, S_2^{-d} P_j)` for `d = 0, 1, ...` up to the first zero degree.
/// `Ok(None)` if degree `cap` is still nonzero.
pub fn derived_degree_dims(alg: &Arc<Algebra>, cap: usize) -> Result<Option<PairDims>> {
    check_gldim(alg)?;
    let nv = alg.num_vertices();
    let op = Opposite::new(alg)?;
    let mut cur: Vec<ProjComplex> = (0..nv).map(|j| ProjComplex::stalk(&[j], 0)).collect();
    let stalks: Vec<ProjComplex> = (0..nv).map(|i| ProjComplex::stalk(&[i], 0)).collect();
    let mut out = Vec::new();
    for d in 0..=cap {
        if d > 0 {
            cur = cur.iter().map(|c| op.s2_inverse(c)).collect::<Result<Vec<_>>>()?;
        }
        let dims: Vec<Vec<usize>> =
            (0..nv).map(|i| (0..nv).map(|j| derived_hom(alg, &stalks[i], &cur[j], 0).dim).collect()).collect();
        let zero = dims.iter().flatten().all(|&x| x == 0);
        if zero {
            return Ok(Some(out));
        }
        out.push(dims);
    }
    Ok(None)
}

/// Quiver with relations whose path algebra quotient is the graded algebra.
pub fn tilde_presentation(alg: &Algebra) -> Result<AlgebraPresentation> {
    let pres = alg.presentation();
    let q = &pres.quiver;
    let mut tq = Quiver::new();
    for v in q.vertex_names() {
        tq.add_vertex(v)?;
    }
    for a in q.arrows() {
        tq.add_arrow_with(&a.name, a.source, a.target, 0, a.weight)?;
    }
    let minimal: Vec<&Relation> = alg.minimal_relations().iter().map(|&k| &pres.relations[k]).collect();
    let weights: Vec<u32> = minimal.iter().map(|r| r.terms[0].1.weight(q)).collect();
    let top = weights.iter().copied().max().unwrap_or(0) + 1;
    let mut rho = Vec::new();
    for (k, r) in minimal.iter().enumerate() {
        let name = match &r.name {
            Some(n) => format!("rho_{n}"),
            None => format!("rho{}", k + 1),
        };
        rho.push(tq.add_arrow_with(&name, r.target(), r.source(), 1, top - weights[k])?);
    }
    let mut rels: Vec<Relation> = pres.relations.clone();
    let f = &pres.field;
    for (a, ar) in q.arrows().iter().enumerate() {
        let mut terms: BTreeMap<Vec<usize>, Elem> = BTreeMap::new();
        for (k, r) in minimal.iter().enumerate() {
            for (c, p) in &r.terms {
                for (j, &b) in p.arrows.iter().enumerate() {
                    if b != a {
                        continue;
                    }
                    // p = u a v contributes v rho u
                    let mut w: Vec<usize> = p.arrows[j + 1..].to_vec();
                    w.push(rho[k]);
                    w.extend_from_slice(&p.arrows[..j]);
                    let e = terms.entry(w).or_insert(0);
                    *e = f.add(*e, *c);
                }
            }
        }
        let terms: Vec<(Elem, Path)> = terms
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(w, c)| Ok((c, Path::new(&tq, w)?)))
            .collect::<Result<Vec<_>>>()?;
        if !terms.is_empty() {
            rels.push(Relation::named(&format!("d_{}", ar.name), terms));
        }
    }
    AlgebraPresentation::new(f.clone(), tq, rels)
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub base: Arc<Algebra>,
    /// Arrows of the base quiver in degree 0 followed by one degree-1 arrow per minimal relation.
    pub tilde: Arc<Algebra>,
    pub top_degree: usize,
    pub derived_dims: PairDims,
}

impl GradedAlgebra {
    pub fn degree_dims(&self) -> Vec<usize> {
        self.derived_dims.iter().map(|m| m.iter().flatten().sum()).collect()
    }

    /// `counts[d][i][j]`: basis paths `j -> i` of degree `d` in the presentation.
    pub fn presentation_dims(&self) -> PairDims {
        presentation_dims(&self.tilde, self.top_degree)
    }

    /// Basis indices of the degree-`d` part.
    pub fn degree_part(&self, d: usize) -> Vec<usize> {
        (0..self.tilde.dim()).filter(|&i| self.tilde.degree(i) as usize == d).collect()
    }

    /// Degree-1 arrows.
    pub fn rho_arrows(&self) -> Vec<usize> {
        let q = self.tilde.quiver();
        (0..q.num_arrows()).filter(|&a| q.arrow(a).degree == 1).collect()
    }
}

fn presentation_dims(t: &Algebra, top: usize) -> PairDims {
    let nv = t.num_vertices();
    let mut out = vec![vec![vec![0; nv]; nv]; top + 1];
    for i in 0..t.dim() {
        let d = t.degree(i) as usize;
        if d <= top {
            out[d][t.target(i)][t.source(i)] += 1;
        }
    }
    out
}

/// Builds the graded algebra; `Tau2Inconclusive` if degree `cap` is still nonzero.
pub fn build_tilde(alg: &Arc<Algebra>, cap: usize) -> Result<GradedAlgebra> {
    let dims = derived_degree_dims(alg, cap)?
        .ok_or_else(|| Error::Tau2Inconclusive(format!("degree {cap} is still nonzero")))?;
    let top = dims.len() - 1;
    let pres = tilde_presentation(alg)?;
    let length_cap = DEFAULT_LENGTH_CAP.max((top + 2) * alg.dim() * 4);
    let tilde = Arc::new(build_algebra(&pres, length_cap)?);
    if tilde.max_degree() as usize != top || presentation_dims(&tilde, top) != dims {
        return Err(Error::Inconsistent(format!(
            "graded pieces of the presentation {:?} differ from derived dimensions {:?}",
            presentation_dims(&tilde, tilde.max_degree() as usize),
            dims
        )));
    }
    Ok(GradedAlgebra { base: alg.clone(), tilde, top_degree: top, derived_dims: dims })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tau2Verdict {
    Finite { top_degree: usize },
    NotFinite { reason: String },
    Inconclusive { cap: usize },
}

pub fn is_tau2_finite(alg: &Arc<Algebra>, cap: usize) -> Result<Tau2Verdict> {
    if check_gldim(alg).is_err() {
        return Ok(Tau2Verdict::NotFinite { reason: "global dimension exceeds 2".into() });
    }
    Ok(match derived_degree_dims(alg, cap)? {
        Some(d) => Tau2Verdict::Finite { top_degree: d.len() - 1 },
        None => Tau2Verdict::Inconclusive { cap },
    })
}

/// Compares the derived-Hom degree dimensions with the tensor powers of the `Ext^2` bimodule,
/// degree by degree up to one past the top.
pub fn tensor_dims_agree(g: &GradedAlgebra) -> Result<bool> {
    let e = super::bimodule::ext_bimodule(&g.base)?;
    let tp = super::bimodule::tensor_power_dims(&g.base, &e, g.top_degree + 1);
    let nv = g.base.num_vertices();
    let transpose = |m: &Vec<Vec<usize>>| (0..nv).map(|i| (0..nv).map(|j| m[j][i]).collect::<Vec<_>>()).collect::<Vec<_>>();
    let mut ok = (1..=g.top_degree).all(|d| tp.get(d - 1).map(transpose).as_ref() == Some(&g.derived_dims[d]));
    if let Some(above) = tp.get(g.top_degree) {
        ok &= above.iter().flatten().all(|&x| x == 0);
    }
    Ok(ok)
}
