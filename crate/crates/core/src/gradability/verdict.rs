//! Deciding gradability by comparing `M` with `M_alpha`.

use std::collections::HashMap;
use rand::Rng;

use super::twist::{extend_algebra, extend_map, extend_module, twist};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{element_of_order_exceeding, Elem, Embedding, Field, Matrix};
use crate::repr::{is_isomorphic, is_rigid, IsoVerdict, ModMap, Module, Refutation};
use crate::tilde::GradedModule;

/// Largest arrow degree, at least 1.
fn generation_degree(alg: &Algebra) -> u64 {
    alg.quiver().arrows().iter().map(|a| a.degree as u64).max().unwrap_or(1).max(1)
}

#[derive(Clone, Debug)]
pub enum Gradability {
    /// A graded lift together with the isomorphism from its push-down to `M` (both over `field`).
    Gradable { lift: GradedModule, iso: ModMap },
    NotGradable { alpha: Elem, order: u64, refutation: Refutation },
}

#[derive(Clone, Debug)]
pub struct GradabilityVerdict {
    pub decision: Gradability,
    pub field: Field,
}

impl GradabilityVerdict {
    pub fn is_gradable(&self) -> bool {
        matches!(self.decision, Gradability::Gradable { .. })
    }
}

/// `k` with `base^k = x`, `0 <= k < ord`, by baby-step giant-step.
fn dlog(f: &Field, base: Elem, x: Elem, ord: u64) -> Option<u64> {
    let m = (ord as f64).sqrt().ceil() as u64 + 1;
    let mut baby = HashMap::new();
    let mut cur = f.one();
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = f.mul(cur, base);
    }
    let giant = f.inv(f.pow(base, m));
    let mut y = x;
    for i in 0..=m {
        if let Some(&j) = baby.get(&y) {
            let k = i * m + j;
            if k < ord {
                return Some(k);
            }
        }
        y = f.mul(y, giant);
    }
    None
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Everything needed to move a computation to a larger field.
struct Extended {
    m: Module,
    psi: ModMap,
    alpha: Elem,
}

fn extend_all(m: &Module, psi: &ModMap, alpha: Elem, emb: &Embedding) -> Result<Extended> {
    let alg = extend_algebra(m.algebra(), emb)?;
    let m2 = extend_module(m, &alg, emb)?;
    let src = twist(&m2, emb.map(alpha))?;
    let psi2 = extend_map(psi, &src, &m2, emb)?;
    Ok(Extended { m: m2, psi: psi2, alpha: emb.map(alpha) })
}

/// A grading of `M` from an isomorphism `psi: M_alpha -> M`.
///
/// The generalized eigenspaces of `psi` are permuted by the arrows: an arrow of
/// degree `d` sends eigenvalue `l` to `alpha^{-d} l`. Eigenvalue `l0 alpha^{-k}`
/// gets degree `k`, cutting each coset of `<alpha>` at its widest gap. Returns the
/// graded lift (possibly over an extension splitting `psi`) and the isomorphism
/// from its push-down to `M` read over the same field.
pub fn extract_grading(m: &Module, psi: &ModMap, alpha: Elem, order: u64) -> Result<(GradedModule, ModMap)> {
    let f0 = m.field().clone();
    let g = generation_degree(m.algebra());
    if order <= g * m.dim() as u64 {
        return Err(Error::InvalidInput(format!("alpha has order {order}, need more than {}", g * m.dim() as u64)));
    }
    let nv = m.dims().len();
    let mut k = 1;
    for v in 0..nv {
        if m.dim_at(v) > 0 {
            for (p, _) in psi.mats[v].minpoly(&f0).factor(&f0)? {
                k = lcm(k, p.degree().unwrap_or(1));
            }
        }
    }
    let ext = if k == 1 {
        Extended { m: m.clone(), psi: psi.clone(), alpha }
    } else {
        let deg = f0.degree() as u64 * k as u64;
        if deg > 64 {
            return Err(Error::SplittingFieldTooLarge { p: f0.characteristic(), m: deg });
        }
        let big = Field::new(f0.characteristic(), deg as u32).map_err(|_| Error::SplittingFieldTooLarge {
            p: f0.characteristic(),
            m: deg,
        })?;
        extend_all(m, psi, alpha, &Embedding::find(&f0, &big)?)?
    };
    let f = ext.m.field().clone();
    // generalized eigenspaces per vertex
    let mut spaces: Vec<Vec<(Elem, Matrix)>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let n = ext.m.dim_at(v);
        let mut here = Vec::new();
        if n > 0 {
            let pv = &ext.psi.mats[v];
            for lam in pv.minpoly(&f).roots(&f) {
                let shifted = pv.sub(&f, &Matrix::scalar(n, lam)).pow(&f, n as u64);
                here.push((lam, shifted.left_kernel(&f)));
            }
        }
        spaces.push(here);
    }
    // cosets of <alpha>: representative and offset k with l = rep * alpha^{-k}
    let ainv = f.inv(ext.alpha);
    let mut reps: Vec<Elem> = Vec::new();
    let mut pos: HashMap<Elem, (usize, u64)> = HashMap::new();
    for (lam, _) in spaces.iter().flatten() {
        if pos.contains_key(lam) {
            continue;
        }
        let found = reps.iter().enumerate().find_map(|(c, &r)| dlog(&f, ainv, f.div(*lam, r), order).map(|k| (c, k)));
        let entry = found.unwrap_or_else(|| {
            reps.push(*lam);
            (reps.len() - 1, 0)
        });
        pos.insert(*lam, entry);
    }
    // cut each coset at its widest gap
    let mut start = vec![0u64; reps.len()];
    for (c, s) in start.iter_mut().enumerate() {
        let mut ks: Vec<u64> = pos.values().filter(|(cc, _)| *cc == c).map(|&(_, k)| k).collect();
        ks.sort_unstable();
        ks.dedup();
        let mut best = (order - ks[ks.len() - 1] + ks[0], ks[0]);
        for w in ks.windows(2) {
            if w[1] - w[0] > best.0 {
                best = (w[1] - w[0], w[1]);
            }
        }
        *s = best.1;
    }
    let mut basis = Vec::with_capacity(nv);
    let mut degrees = Vec::with_capacity(nv);
    for (v, here) in spaces.iter().enumerate() {
        let mut b = Matrix::zeros(0, ext.m.dim_at(v));
        let mut d = Vec::new();
        for (lam, sp) in here {
            let (c, k) = pos[lam];
            let deg = ((k + order - start[c]) % order) as i64;
            b = b.vstack(sp);
            d.extend(std::iter::repeat(deg).take(sp.rows()));
        }
        if b.rows() != ext.m.dim_at(v) {
            return Err(Error::Inconsistent("generalized eigenspaces do not span".into()));
        }
        basis.push(b);
        degrees.push(d);
    }
    let lift = GradedModule::new(ext.m.conjugate(&basis), degrees)?;
    let base = lift.support().map(|s| s.0).unwrap_or(0);
    let lift = lift.shift(-base);
    let iso = ModMap::new(&lift.module, &ext.m, basis)?;
    Ok((lift, iso))
}

/// Gradability of `M` over a graded algebra, decided by `M ~ M_alpha` for `alpha` of large order.
pub fn is_gradable<R: Rng>(m: &Module, rng: &mut R) -> Result<GradabilityVerdict> {
    let f = m.field();
    let bound = generation_degree(m.algebra()) * m.dim() as u64;
    let (big, alpha, order, emb) = element_of_order_exceeding(f, bound)?;
    let mm = if emb.is_identity() { m.clone() } else { extend_module(m, &extend_algebra(m.algebra(), &emb)?, &emb)? };
    let decision = match is_isomorphic(&twist(&mm, alpha)?, &mm, rng)? {
        IsoVerdict::Isomorphic(psi) => {
            let (lift, iso) = extract_grading(&mm, &psi, alpha, order)?;
            if !iso.is_iso() || lift.push_down().dims() != mm.dims() {
                return Err(Error::Inconsistent("extracted grading does not push down to M".into()));
            }
            Gradability::Gradable { lift, iso }
        }
        IsoVerdict::NotIsomorphic(refutation) => Gradability::NotGradable { alpha, order, refutation },
    };
    let field = match &decision {
        Gradability::Gradable { lift, .. } => lift.module.field().clone(),
        _ => big,
    };
    Ok(GradabilityVerdict { decision, field })
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub rigid: bool,
    pub gradable: bool,
}

impl RigidityReport {
    /// Rigid modules must be gradable.
    pub fn consistent(&self) -> bool {
        !self.rigid || self.gradable
    }
}

pub fn rigid_implies_gradable_check<R: Rng>(m: &Module, rng: &mut R) -> Result<RigidityReport> {
    Ok(RigidityReport { rigid: is_rigid(m)?, gradable: is_gradable(m, rng)?.is_gradable() })
}
