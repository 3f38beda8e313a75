use rand::Rng;

use super::decompose::{decompose, indecomposable_iso, Decomposition};
use super::hom::hom;
use super::module::{ModMap, Module};
use crate::algebra::ext;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Matrix};

/// Outcome of an isomorphism test. A positive verdict carries a checked isomorphism.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(ModMap),
    NotIsomorphic(Refutation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    DimensionVectors { left: Vec<usize>, right: Vec<usize> },
    /// The multisets of indecomposable summands differ; the unmatched summand's dimension vector.
    Summands { unmatched: Vec<usize> },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&ModMap> {
        match self {
            IsoVerdict::Isomorphic(w) => Some(w),
            IsoVerdict::NotIsomorphic(_) => None,
        }
    }
}

const QUICK_TRIES: usize = 4;

pub fn is_isomorphic<R: Rng>(m: &Module, n: &Module, rng: &mut R) -> Result<IsoVerdict> {
    if !m.same_algebra(n) {
        return Err(Error::InvalidInput("modules over different algebras".into()));
    }
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic(Refutation::DimensionVectors {
            left: m.dims().to_vec(),
            right: n.dims().to_vec(),
        }));
    }
    let f = m.field();
    let h = hom(m, n)?;
    if h.dim() == 0 {
        if m.is_zero() {
            return Ok(IsoVerdict::Isomorphic(ModMap::identity(m)));
        }
        return Ok(IsoVerdict::NotIsomorphic(Refutation::Summands { unmatched: m.dims().to_vec() }));
    }
    // a random combination is usually invertible when an isomorphism exists
    for _ in 0..QUICK_TRIES {
        let c: Vec<Elem> = (0..h.dim()).map(|_| rng.gen_range(0..f.order())).collect();
        let g = h.combination(&c);
        if g.is_iso() {
            return Ok(IsoVerdict::Isomorphic(g));
        }
    }
    let dm = decompose(m, rng)?;
    let dn = decompose(n, rng)?;
    match match_summands(&dm, &dn) {
        Ok(pairs) => {
            let w = assemble(m, n, &dm, &dn, &pairs);
            if !w.is_homomorphism() || !w.is_iso() {
                return Err(Error::NoConvergence("assembled isomorphism failed verification".into()));
            }
            Ok(IsoVerdict::Isomorphic(w))
        }
        Err(r) => Ok(IsoVerdict::NotIsomorphic(r)),
    }
}

/// Pairs `(i, j, iso)` of summand indices of `dm` and `dn`.
fn match_summands(dm: &Decomposition, dn: &Decomposition) -> std::result::Result<Vec<(usize, usize, ModMap)>, Refutation> {
    let mut used = vec![false; dn.summands.len()];
    let mut pairs = Vec::new();
    for (i, s) in dm.summands.iter().enumerate() {
        let mut found = None;
        for (j, t) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = indecomposable_iso(&s.module, &t.module) {
                found = Some((j, iso));
                break;
            }
        }
        match found {
            Some((j, iso)) => {
                used[j] = true;
                pairs.push((i, j, iso));
            }
            None => return Err(Refutation::Summands { unmatched: s.module.dims().to_vec() }),
        }
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(Refutation::Summands { unmatched: dn.summands[j].module.dims().to_vec() });
    }
    Ok(pairs)
}

fn assemble(m: &Module, n: &Module, dm: &Decomposition, dn: &Decomposition, pairs: &[(usize, usize, ModMap)]) -> ModMap {
    let f = m.field();
    let nv = m.dims().len();
    let mats = (0..nv)
        .map(|v| {
            let mut bu = Matrix::zeros(0, m.dim_at(v));
            let mut bv = Matrix::zeros(0, n.dim_at(v));
            let mut blocks = Matrix::zeros(0, 0);
            for (i, j, iso) in pairs {
                bu = bu.vstack(&dm.summands[*i].basis[v]);
                bv = bv.vstack(&dn.summands[*j].basis[v]);
                blocks = blocks.direct_sum(&iso.mats[v]);
            }
            bu.inverse(f).expect("summand bases span").mul(f, &blocks).mul(f, &bv)
        })
        .collect();
    ModMap { src: m.clone(), tgt: n.clone(), mats }
}

pub fn is_rigid(m: &Module) -> Result<bool> {
    Ok(ext(m, m, 1)?.dim == 0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{projective, simple, Algebra, AlgebraPresentation, Quiver};
    use crate::linalg::Field;

    fn a2() -> Arc<Algebra> {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap())
    }

    #[test]
    fn iso_basics() {
        let a = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p0 = projective(&a, 0).unwrap();
        let p1 = projective(&a, 1).unwrap();
        assert!(is_isomorphic(&p0, &p0, &mut rng).unwrap().is_iso());
        assert!(!is_isomorphic(&p0, &p1, &mut rng).unwrap().is_iso());
        // P0 versus S0 + S1: same dimension vector, different modules
        let s = simple(&a, 0).unwrap().direct_sum(&simple(&a, 1).unwrap());
        let v = is_isomorphic(&p0, &s, &mut rng).unwrap();
        assert!(matches!(v, IsoVerdict::NotIsomorphic(Refutation::Summands { .. })));
    }

    #[test]
    fn conjugates_are_isomorphic() {
        let a = a2();
        let f = a.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p0 = projective(&a, 0).unwrap();
        let m = p0.direct_sum(&simple(&a, 1).unwrap());
        let g = vec![Matrix::identity(1).scale(&f, 5), Matrix::from_rows(2, 2, vec![1, 2, 3, 4])];
        let c = m.conjugate(&g);
        let v = is_isomorphic(&m, &c, &mut rng).unwrap();
        let w = v.witness().unwrap();
        assert!(w.is_homomorphism() && w.is_iso());
    }

    #[test]
    fn rigidity_over_a2() {
        let a = a2();
        assert!(is_rigid(&projective(&a, 0).unwrap()).unwrap());
        assert!(is_rigid(&simple(&a, 1).unwrap()).unwrap());
        let s = simple(&a, 0).unwrap().direct_sum(&simple(&a, 1).unwrap());
        assert!(!is_rigid(&s).unwrap());
    }
}
