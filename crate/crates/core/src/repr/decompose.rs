//! Radical of endomorphism rings and Krull-Schmidt decomposition.

use rand::Rng;

use super::hom::{end, HomSpace};
use super::module::{ModMap, Module};
use crate::error::{Error, Result};
use crate::linalg::{next_prime, Elem, Field, Matrix, Poly};

pub const DEFAULT_RETRIES: usize = 64;

/// A map as one block-diagonal matrix on the total space.
pub fn total_matrix(m: &ModMap) -> Matrix {
    let mut acc = Matrix::zeros(0, 0);
    for b in &m.mats {
        acc = acc.direct_sum(b);
    }
    acc
}

/// Smallest admissible characteristic for the trace-form radical on `m`.
fn check_characteristic(m: &Module) -> Result<()> {
    let p = m.field().characteristic();
    let n = m.dim() as u64;
    if p <= n {
        return Err(Error::CharacteristicTooSmall { have: p, needed: next_prime(n) });
    }
    Ok(())
}

/// Basis (coefficient rows over `end.basis`) of the Jacobson radical of `End(M)`,
/// as the radical of the trace form `(x, y) -> tr(xy)` on `M`.
pub fn end_radical_coeffs(m: &Module, e: &HomSpace) -> Result<Matrix> {
    check_characteristic(m)?;
    let f = m.field();
    let tot: Vec<Matrix> = e.basis.iter().map(total_matrix).collect();
    let tr: Vec<Matrix> = tot.iter().map(|x| x.transpose()).collect();
    let k = tot.len();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = tot[i].data().iter().zip(tr[j].data()).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b));
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    Ok(g.nullspace(f))
}

/// Basis of `Rad End(M)`.
pub fn end_radical(m: &Module) -> Result<Vec<ModMap>> {
    let e = end(m);
    let c = end_radical_coeffs(m, &e)?;
    Ok(c.row_vecs().iter().map(|r| e.combination(r)).collect())
}

/// Whether `End(M)` is local, i.e. `M` is indecomposable over the field of computation.
pub fn is_local<R: Rng>(m: &Module, rng: &mut R) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let e = end(m);
    let j = end_radical_coeffs(m, &e)?;
    let top = e.dim() - j.rows();
    if top == 1 {
        return Ok(true);
    }
    for _ in 0..DEFAULT_RETRIES {
        match probe(m, &e, top, rng)? {
            Probe::Split(_) => return Ok(false),
            Probe::Field => return Ok(true),
            Probe::Unknown => {}
        }
    }
    Err(Error::NoConvergence("no idempotent found within the retry budget".into()))
}

enum Probe {
    /// Per-vertex row bases of two complementary nonzero submodules.
    Split((Vec<Matrix>, Vec<Matrix>)),
    /// `End/J` is a field.
    Field,
    Unknown,
}

fn random_combination<R: Rng>(e: &HomSpace, f: &Field, rng: &mut R) -> ModMap {
    let c: Vec<Elem> = (0..e.dim()).map(|_| rng.gen_range(0..f.order())).collect();
    e.combination(&c)
}

fn probe<R: Rng>(m: &Module, e: &HomSpace, top: usize, rng: &mut R) -> Result<Probe> {
    let f = m.field();
    let x = random_combination(e, f, rng);
    let mp = total_matrix(&x).minpoly(f);
    let factors = mp.factor(f)?;
    if factors.len() >= 2 {
        let (g0, e0) = &factors[0];
        let g = g0.pow(f, *e0 as u32);
        let h = mp.divrem(f, &g).0;
        let a = kernel_of_poly(m, &x, &g);
        let b = kernel_of_poly(m, &x, &h);
        return Ok(Probe::Split((a, b)));
    }
    let (g0, _) = &factors[0];
    if g0.degree() == Some(top) {
        return Ok(Probe::Field);
    }
    Ok(Probe::Unknown)
}

fn kernel_of_poly(m: &Module, x: &ModMap, g: &Poly) -> Vec<Matrix> {
    let f = m.field();
    x.mats.iter().map(|a| a.eval_poly(f, g).left_kernel(f)).collect()
}

/// An indecomposable summand with its basis (rows, per vertex) in the coordinates of the parent.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub basis: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `classes[k]` lists indices into `summands` of mutually isomorphic summands.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Representative modules with multiplicities.
    pub fn with_multiplicities(&self) -> Vec<(Module, usize)> {
        self.classes.iter().map(|c| (self.summands[c[0]].module.clone(), c.len())).collect()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

fn split_rec<R: Rng>(m: &Module, basis: Vec<Matrix>, rng: &mut R, out: &mut Vec<Summand>) -> Result<()> {
    let f = m.field();
    let e = end(m);
    let j = end_radical_coeffs(m, &e)?;
    let top = e.dim() - j.rows();
    if top == 1 {
        out.push(Summand { module: m.clone(), basis });
        return Ok(());
    }
    for _ in 0..DEFAULT_RETRIES {
        match probe(m, &e, top, rng)? {
            Probe::Field => {
                out.push(Summand { module: m.clone(), basis });
                return Ok(());
            }
            Probe::Split((a, b)) => {
                for part in [a, b] {
                    let sub = m.submodule(&part)?;
                    let composed: Vec<Matrix> = part.iter().zip(&basis).map(|(p, bb)| p.mul(f, bb)).collect();
                    split_rec(&sub, composed, rng, out)?;
                }
                return Ok(());
            }
            Probe::Unknown => {}
        }
    }
    Err(Error::NoConvergence("no idempotent found within the retry budget".into()))
}

/// Splits `M` into indecomposables and groups them into isomorphism classes.
pub fn decompose<R: Rng>(m: &Module, rng: &mut R) -> Result<Decomposition> {
    let mut summands = Vec::new();
    if !m.is_zero() {
        check_characteristic(m)?;
        let basis = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        split_rec(m, basis, rng, &mut summands)?;
    }
    summands.sort_by_key(|s| (std::cmp::Reverse(s.module.dim()), s.module.dims().to_vec()));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let hit = classes.iter_mut().find(|c| indecomposable_iso(&summands[c[0]].module, &s.module).is_some());
        match hit {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    Ok(Decomposition { summands, classes })
}

/// For indecomposables: an isomorphism if one exists. Some basis element of
/// `Hom(U, V)` is invertible whenever `U` and `V` are isomorphic.
pub fn indecomposable_iso(u: &Module, v: &Module) -> Option<ModMap> {
    if u.dims() != v.dims() {
        return None;
    }
    let h = super::hom::hom(u, v).ok()?;
    h.basis.into_iter().find(|b| b.is_iso())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{projective, simple, Algebra, AlgebraPresentation, Quiver};

    fn a2() -> Arc<Algebra> {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap())
    }

    #[test]
    fn radicals() {
        let a = a2();
        assert!(end_radical(&simple(&a, 0).unwrap()).unwrap().is_empty());
        let s = simple(&a, 1).unwrap();
        assert!(end_radical(&s.direct_sum(&s)).unwrap().is_empty());
        let p = projective(&a, 0).unwrap();
        assert!(end_radical(&p).unwrap().iter().all(|x| total_matrix(x).pow(p.field(), 2).is_zero()));
    }

    #[test]
    fn decompose_constructed_sum() {
        let a = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p0 = projective(&a, 0).unwrap();
        let s1 = simple(&a, 1).unwrap();
        let m = p0.direct_sum(&p0).direct_sum(&s1);
        let d = decompose(&m, &mut rng).unwrap();
        let mult: Vec<(Vec<usize>, usize)> =
            d.with_multiplicities().iter().map(|(u, k)| (u.dims().to_vec(), *k)).collect();
        assert_eq!(mult, vec![(vec![1, 1], 2), (vec![0, 1], 1)]);
    }

    #[test]
    fn small_characteristic_is_reported() {
        let f = Field::prime(2).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        let a = Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap());
        let p = projective(&a, 0).unwrap();
        assert_eq!(end_radical(&p).unwrap_err(), Error::CharacteristicTooSmall { have: 2, needed: 3 });
    }
}
