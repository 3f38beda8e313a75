//! Minimal relations between simples and along paths.

use std::sync::Arc;

use crate::algebra::{ext, global_dimension, simple, Algebra, GlobalDimension, Path};
use crate::error::{Error, Result};

/// `(i, j, dim)` for every pair of simples with `Ext^2(S_i, S_j) != 0`. A relation
/// from `s` to `t` shows up as `Ext^2(S_s, S_t)`.
pub fn minimal_relation_pairs(alg: &Arc<Algebra>) -> Result<Vec<(usize, usize, usize)>> {
    match global_dimension(alg, 3) {
        GlobalDimension::Finite(d) if d <= 2 => {}
        _ => return Err(Error::GlobalDimensionTooLarge(2)),
    }
    let nv = alg.num_vertices();
    let simples = (0..nv).map(|i| simple(alg, i)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..nv {
        for j in 0..nv {
            let d = ext(&simples[i], &simples[j], 2)?.dim;
            if d > 0 {
                out.push((i, j, d));
            }
        }
    }
    Ok(out)
}

/// A minimal relation carrying the subpath `arrows[start..end]` as a summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOnPath {
    pub start: usize,
    pub end: usize,
    /// Position in `Algebra::minimal_relations`.
    pub relation: usize,
}

/// Position of the minimal relation with `arrows` as a summand, if any.
pub(crate) fn relation_with_summand(alg: &Algebra, arrows: &[usize]) -> Option<usize> {
    let rels = alg.relations();
    alg.minimal_relations()
        .iter()
        .position(|&k| rels[k].terms.iter().any(|(c, p)| *c != 0 && p.arrows == arrows))
}

/// Locates a minimal relation on a path whose product vanishes: the subpath
/// `start..end` appears with nonzero coefficient in a minimal relation.
pub fn find_relation_on_path(alg: &Algebra, arrows: &[usize]) -> Result<RelationOnPath> {
    let path = Path::new(alg.quiver(), arrows.to_vec())?;
    if alg.path_element(&path).iter().any(|&c| c != 0) {
        return Err(Error::PathNotVanishing(path.display(alg.quiver())));
    }
    for end in 2..=arrows.len() {
        for start in (0..end - 1).rev() {
            if let Some(relation) = relation_with_summand(alg, &arrows[start..end]) {
                return Ok(RelationOnPath { start, end, relation });
            }
        }
    }
    Err(Error::Inconsistent(format!("no minimal relation lies on the vanishing path {}", path.display(alg.quiver()))))
}

/// Simples `S_0, ..., S_l` with `Ext^2(S_k, S_{k-1}) != 0`, and the minimal relations used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSequence {
    pub simples: Vec<usize>,
    /// `relations[k-1]` runs from `S_k` to `S_{k-1}`.
    pub relations: Vec<usize>,
}

impl RelationSequence {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Re-checks every consecutive `Ext^2` against the minimal relations of `alg`.
    pub fn verify(&self, alg: &Arc<Algebra>) -> Result<bool> {
        if self.relations.is_empty() || self.simples.len() != self.relations.len() + 1 {
            return Ok(false);
        }
        let pres = alg.presentation();
        for k in 1..self.simples.len() {
            let r = &pres.relations[alg.minimal_relations()[self.relations[k - 1]]];
            if r.source() != self.simples[k] || r.target() != self.simples[k - 1] {
                return Ok(false);
            }
            let e = ext(&simple(alg, self.simples[k])?, &simple(alg, self.simples[k - 1])?, 2)?;
            if e.dim == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
